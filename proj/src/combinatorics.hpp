#pragma once

// Binomial tables and colexicographic ranking of vertex sets, shared by the samplers and
// the counting routines.

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "rsc/simplex.hpp"

namespace rsc::comb {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

class BinomTable {
public:
    BinomTable(int n, int kmax) : n_(n), kmax_(kmax), t_(static_cast<std::size_t>(n + 1) * (kmax + 1), 0) {
        for (int c = 0; c <= n; ++c) {
            at_ref(c, 0) = 1;
            for (int i = 1; i <= kmax && i <= c; ++i) {
                const std::uint64_t a = at(c - 1, i - 1), b = (i <= c - 1) ? at(c - 1, i) : 0;
                at_ref(c, i) = (a > kSaturated - b) ? kSaturated : a + b;
            }
        }
    }
    std::uint64_t at(int c, int i) const {
        if (c < 0 || i < 0 || i > kmax_ || c < i) return 0;
        return t_[static_cast<std::size_t>(c) * (kmax_ + 1) + i];
    }
    int n() const { return n_; }

private:
    std::uint64_t& at_ref(int c, int i) { return t_[static_cast<std::size_t>(c) * (kmax_ + 1) + i]; }
    int n_, kmax_;
    std::vector<std::uint64_t> t_;
};

// Rank among all subsets of [n] of the same size; vertices are 1-based.
inline std::uint64_t rank(const BinomTable& b, const Vertex* v, int size) {
    std::uint64_t r = 0;
    for (int i = 0; i < size; ++i) r += b.at(v[i] - 1, i + 1);
    return r;
}

inline std::uint64_t rank(const BinomTable& b, const Simplex& s) { return rank(b, s.begin(), s.size()); }

inline Simplex unrank(const BinomTable& b, std::uint64_t r, int size) {
    std::array<Vertex, kMaxVertices> v{};
    int hi = b.n() - 1;
    for (int i = size; i >= 1; --i) {
        if (i == 1) {
            v[0] = static_cast<Vertex>(r + 1);
            break;
        }
        // Largest c in [i-1, hi] with C(c, i) <= r.
        int lo = i - 1, top = hi;
        while (lo < top) {
            int mid = (lo + top + 1) / 2;
            if (b.at(mid, i) <= r)
                lo = mid;
            else
                top = mid - 1;
        }
        r -= b.at(lo, i);
        v[i - 1] = static_cast<Vertex>(lo + 1);
        hi = lo - 1;
    }
    return Simplex::from_sorted(v.data(), size);
}

// Unranks a nondecreasing sequence of ranks, reusing the upper vertices of the previous
// set whenever they still apply.
class ColexWalker {
public:
    ColexWalker(const BinomTable& b, int size) : b_(b), size_(size) {}

    Simplex seek(std::uint64_t r) {
        std::uint64_t rem = r;
        int hi = b_.n() - 1;
        bool stable = valid_;
        for (int i = size_; i >= 1; --i) {
            int c;
            if (i == 1) {
                c = static_cast<int>(rem);
            } else if (stable && rem >= b_.at(c_[i - 1], i) && rem < b_.at(c_[i - 1] + 1, i)) {
                c = c_[i - 1];
            } else {
                int lo = stable ? c_[i - 1] : i - 1, top = hi;
                while (lo < top) {
                    const int mid = (lo + top + 1) / 2;
                    if (b_.at(mid, i) <= rem)
                        lo = mid;
                    else
                        top = mid - 1;
                }
                c = lo;
                stable = false;
            }
            c_[i - 1] = c;
            v_[i - 1] = static_cast<Vertex>(c + 1);
            rem -= b_.at(c, i);
            hi = c - 1;
        }
        valid_ = true;
        return Simplex::from_sorted(v_.data(), size_);
    }

private:
    const BinomTable& b_;
    int size_;
    bool valid_ = false;
    std::array<int, kMaxVertices> c_{};
    std::array<Vertex, kMaxVertices> v_{};
};

}  // namespace rsc::comb
