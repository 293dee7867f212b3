#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsc/complex.hpp"

namespace rsc {

struct Ring {
    enum class Kind { PrimeField, Integers, IntegersMod };
    Kind kind = Kind::PrimeField;
    std::int64_t modulus = 2;  // p or m; unused for Integers

    static Ring f2() { return {Kind::PrimeField, 2}; }
    static Ring fp(std::int64_t p);
    static Ring z() { return {Kind::Integers, 0}; }
    static Ring zmod(std::int64_t m);
    // Accepts "f2", "fp:<p>", "z", "zmod:<m>".
    static Ring parse(const std::string& s);

    bool is_field() const { return kind == Kind::PrimeField; }
    std::int64_t reduce(std::int64_t x) const;
    std::string str() const;

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.kind == b.kind && a.modulus == b.modulus;
    }
};

bool is_prime(std::int64_t p);

// Sparse j-cochain keyed by canonical (ascending) simplices. Zero values are never stored.
class Cochain {
public:
    Cochain(int j, Ring ring) : j_(j), ring_(ring) {}

    int degree() const { return j_; }
    const Ring& ring() const { return ring_; }

    void set(const Simplex& s, std::int64_t value);
    void add(const Simplex& s, std::int64_t value);
    std::int64_t get(const Simplex& s) const;
    // Value on an arbitrary ordering of the vertices of a j-simplex: sign(perm) * stored value.
    std::int64_t value_on(const std::vector<int>& ordered) const;

    std::size_t support_size() const { return values_.size(); }
    std::vector<Simplex> support() const;
    const std::map<Simplex, std::int64_t>& values() const { return values_; }
    bool is_zero() const { return values_.empty(); }

    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.j_ == b.j_ && a.ring_ == b.ring_ && a.values_ == b.values_;
    }

private:
    int j_;
    Ring ring_;
    std::map<Simplex, std::int64_t> values_;
};

struct SparseMatrix {
    std::size_t rows = 0, cols = 0;
    // entries[r] holds (column, value) pairs sorted by column.
    std::vector<std::vector<std::pair<std::uint32_t, std::int8_t>>> entries;
};

// Rows: canonical (j+1)-simplices, columns: canonical j-simplices. j = -1 and j = top
// give the zero maps of the right shape.
SparseMatrix coboundary_matrix(const Complex& c, int j);

Cochain apply_coboundary(const Complex& c, const Cochain& f);

struct CohomologySummary {
    int j = 0;
    std::size_t free_rank = 0;
    std::vector<std::string> torsion;  // invariant factors as decimal strings

    bool vanishes() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const CohomologySummary&, const CohomologySummary&) = default;
};

CohomologySummary cohomology(const Complex& c, int j, const Ring& ring);

// Rank of the j-th coboundary map over the given prime field.
std::size_t coboundary_rank_fp(const Complex& c, int j, std::int64_t p);
// Nonzero Smith diagonal of the j-th coboundary map over Z.
std::vector<std::string> coboundary_elementary_divisors(const Complex& c, int j);

bool is_cohom_connected(const Complex& c, int j, const Ring& ring);

bool is_cocycle(const Complex& c, const Cochain& f);

// A j-shell meeting supp(f) in exactly one j-simplex, lexicographically smallest.
std::optional<Simplex> shell_certificate(const Complex& c, const Cochain& f);

inline constexpr std::uint64_t kCosetGuard = std::uint64_t(1) << 24;

// Minimum-support representative of f + im(delta^{j-1}); exhaustive over the coboundaries.
Cochain min_support_in_class(const Complex& c, const Cochain& f);

struct MeshulamWallachResult {
    std::size_t support = 0;
    std::size_t coboundary_support = 0;  // |D(f)|
    double bound = 0;                    // n |supp f| / (j+2)
    bool holds = false;
};

// f is a j-cochain on the full simplex on [n]; f should already be minimal in its class.
MeshulamWallachResult meshulam_wallach(int n, const Cochain& f);
inline bool meshulam_wallach_check(int n, const Cochain& f) { return meshulam_wallach(n, f).holds; }

// Full simplex on [n] truncated at dimension d.
Complex full_complex(int n, int d);

}  // namespace rsc
