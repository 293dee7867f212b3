#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace rsc {

using Vertex = std::uint16_t;

// Vertex sets of size at most kMaxVertices; enough for d <= 7.
inline constexpr int kMaxVertices = 8;

class Simplex {
public:
    Simplex() = default;
    Simplex(std::initializer_list<int> vs);
    explicit Simplex(const std::vector<int>& vs);

    // Caller guarantees strictly increasing input.
    static Simplex from_sorted(const Vertex* vs, int size);

    int size() const { return size_; }
    int dim() const { return size_ - 1; }
    bool empty() const { return size_ == 0; }
    Vertex operator[](int i) const { return v_[i]; }
    const Vertex* begin() const { return v_.data(); }
    const Vertex* end() const { return v_.data() + size_; }

    bool contains(Vertex x) const;
    bool is_subset_of(const Simplex& other) const;

    Simplex with(Vertex x) const;
    Simplex without(Vertex x) const;
    Simplex face(int i) const;  // drop the i-th vertex

    std::vector<int> to_vector() const;
    std::string str() const;

    friend bool operator==(const Simplex& a, const Simplex& b) {
        return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
    }
    friend bool operator<(const Simplex& a, const Simplex& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
    friend bool operator!=(const Simplex& a, const Simplex& b) { return !(a == b); }

    std::size_t hash() const;

private:
    std::array<Vertex, kMaxVertices> v_{};
    std::uint8_t size_ = 0;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const { return s.hash(); }
};

Simplex set_union(const Simplex& a, const Simplex& b);
Simplex set_difference(const Simplex& a, const Simplex& b);

// Calls fn(face) for every subset of s with exactly `size` elements, in lexicographic order.
template <class Fn>
void for_each_subset(const Simplex& s, int size, Fn&& fn) {
    const int m = s.size();
    if (size < 0 || size > m) return;
    std::array<int, kMaxVertices> idx{};
    for (int i = 0; i < size; ++i) idx[i] = i;
    std::array<Vertex, kMaxVertices> buf{};
    while (true) {
        for (int i = 0; i < size; ++i) buf[i] = s[idx[i]];
        fn(Simplex::from_sorted(buf.data(), size));
        int i = size - 1;
        while (i >= 0 && idx[i] == m - size + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int t = i + 1; t < size; ++t) idx[t] = idx[t - 1] + 1;
    }
}

}  // namespace rsc
