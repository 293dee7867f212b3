#pragma once

#include <unordered_map>
#include <vector>

#include "rsc/simplex.hpp"

namespace rsc {

struct Hypergraph {
    int n = 0;
    int d = 0;
    std::vector<Simplex> edges;
};

// Downward-closed family of simplices on [n] with dimension at most d. All n singletons
// are always present. Values are immutable once built.
class Complex {
public:
    Complex() = default;
    Complex(int n, int d);  // singletons only

    static Complex from_generators(int n, int d, const std::vector<Simplex>& gens);

    int n() const { return n_; }
    int d() const { return d_; }
    // Highest dimension that actually holds a simplex.
    int top_dim() const;

    bool contains(const Simplex& s) const;
    int index_of(const Simplex& s) const;  // -1 when absent

    // i-simplices in lexicographic order; empty for i outside [0, d].
    const std::vector<Simplex>& simplices(int i) const;
    std::size_t count(int i) const { return simplices(i).size(); }
    std::size_t total_count() const;

    // For every i-simplex (in simplices(i) order) the number of (i+1)-simplices containing it.
    std::vector<int> coface_degrees(int i) const;

    // Inclusion-maximal simplices, sorted by dimension then lexicographically.
    std::vector<Simplex> facets() const;

    Complex add_simplex(const Simplex& b) const;
    Complex skeleton(int j) const;

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.n_ == b.n_ && a.layers_ == b.layers_;
    }

private:
    void check_simplex(const Simplex& s) const;
    void insert_closure(const Simplex& s);
    void finalize();

    int n_ = 0;
    int d_ = 0;
    std::vector<std::vector<Simplex>> layers_;
    std::vector<std::unordered_map<Simplex, int, SimplexHash>> index_;
};

Complex downward_closure(const Hypergraph& h);

// True iff every (j+1)-subset of A (|A| = j+2) is a j-simplex.
bool is_shell(const Complex& c, const Simplex& a, int j);

// All a outside B such that B + a is a j-shell, with j = dim B.
std::vector<int> shells_containing(const Complex& c, const Simplex& b);

// Classes of the vertex partition induced by shared simplices, each sorted, ordered by
// smallest element.
std::vector<std::vector<int>> connected_components(const Complex& c);

// All subsets of [n] with the given size, in lexicographic order.
std::vector<Simplex> all_subsets(int n, int size);

inline Complex skeleton(const Complex& c, int j) { return c.skeleton(j); }
inline Complex add_simplex(const Complex& c, const Simplex& b) { return c.add_simplex(b); }

}  // namespace rsc
