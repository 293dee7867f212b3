#pragma once

// Internal linear algebra used by the cohomology code: bit-packed GF(2), dense GF(p),
// sparse GF(2) column reduction, and an exact integer Smith form.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rsc::linalg {

using BigInt = boost::multiprecision::cpp_int;

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }
    void xor_with(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }
    bool any() const;
    std::size_t popcount() const;
    // Lowest set bit index, or size() if none.
    std::size_t first() const;

    const std::vector<std::uint64_t>& words() const { return w_; }
    friend bool operator==(const BitVec& a, const BitVec& b) { return a.w_ == b.w_; }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> w_;
};

// Rank of the GF(2) matrix whose rows are given. Destroys the input.
std::size_t f2_rank(std::vector<BitVec>& rows);

// Incrementally maintained GF(2) row space with pivots on lowest set bits.
class F2Span {
public:
    explicit F2Span(std::size_t bits) : bits_(bits), pivot_(bits, -1) {}
    // Reduces v against the span; returns true and stores it if it was independent.
    bool insert(BitVec v);
    BitVec reduce(BitVec v) const;
    bool contains(const BitVec& v) const { return !reduce(v).any(); }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BitVec>& basis() const { return basis_; }

private:
    std::size_t bits_;
    std::vector<int> pivot_;
    std::vector<BitVec> basis_;
};

// Row-major dense matrix with int64 entries.
struct DenseMat {
    std::size_t rows = 0, cols = 0;
    std::vector<std::int64_t> a;
    DenseMat() = default;
    DenseMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    std::int64_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

std::int64_t mod_inverse(std::int64_t x, std::int64_t p);

// Rank over GF(p), p an odd or even prime. Copies the input.
std::size_t fp_rank(DenseMat m, std::int64_t p);

// Same incremental span as F2Span but over GF(p), vectors stored reduced mod p.
class FpSpan {
public:
    FpSpan(std::size_t len, std::int64_t p) : len_(len), p_(p), pivot_(len, -1) {}
    bool insert(std::vector<std::int64_t> v);
    std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const;
    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::vector<std::int64_t>>& basis() const { return basis_; }

private:
    std::size_t len_;
    std::int64_t p_;
    std::vector<int> pivot_;
    std::vector<std::vector<std::int64_t>> basis_;
};

// Rank over GF(2) of a sparse matrix given as columns of sorted row indices, by
// lowest-one column reduction.
std::size_t f2_sparse_rank(std::vector<std::vector<std::uint32_t>> cols, std::size_t nrows);

// Nonzero diagonal entries of the Smith normal form of an integer matrix (absolute
// values, normalized so each divides the next).
std::vector<BigInt> smith_diagonal(const DenseMat& m);

// Turns an arbitrary list of cyclic orders into invariant factors (each divides the
// next), dropping 1s.
std::vector<BigInt> invariant_factors(std::vector<BigInt> orders);

}  // namespace rsc::linalg
