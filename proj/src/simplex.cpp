#include "rsc/simplex.hpp"

#include "rsc/error.hpp"

namespace rsc {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::InvalidAtThisN: return "invalid-at-this-n";
        case ErrorKind::ArithmeticOverflow: return "arithmetic-overflow";
        case ErrorKind::SearchSpaceTooLarge: return "search-space-too-large";
        case ErrorKind::GuardExceeded: return "guard-exceeded";
        case ErrorKind::Infeasible: return "infeasible";
    }
    return "unknown";
}

Simplex::Simplex(std::initializer_list<int> vs) : Simplex(std::vector<int>(vs)) {}

Simplex::Simplex(const std::vector<int>& vs) {
    std::vector<int> s(vs);
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        fail(ErrorKind::InvalidInput, "simplex has repeated vertices");
    if (static_cast<int>(s.size()) > kMaxVertices)
        fail(ErrorKind::InvalidInput, "simplex has more than 8 vertices");
    for (int x : s) {
        if (x < 1 || x > 65535) fail(ErrorKind::InvalidInput, "vertex id out of range");
    }
    size_ = static_cast<std::uint8_t>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v_[i] = static_cast<Vertex>(s[i]);
}

Simplex Simplex::from_sorted(const Vertex* vs, int size) {
    Simplex s;
    s.size_ = static_cast<std::uint8_t>(size);
    std::copy(vs, vs + size, s.v_.begin());
    return s;
}

bool Simplex::contains(Vertex x) const {
    return std::binary_search(begin(), end(), x);
}

bool Simplex::is_subset_of(const Simplex& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
}

Simplex Simplex::with(Vertex x) const {
    if (contains(x)) return *this;
    if (size_ >= kMaxVertices) fail(ErrorKind::InvalidInput, "simplex too large");
    Simplex s;
    auto it = std::merge(begin(), end(), &x, &x + 1, s.v_.begin());
    s.size_ = static_cast<std::uint8_t>(it - s.v_.begin());
    return s;
}

Simplex Simplex::without(Vertex x) const {
    Simplex s;
    auto it = std::remove_copy(begin(), end(), s.v_.begin(), x);
    s.size_ = static_cast<std::uint8_t>(it - s.v_.begin());
    return s;
}

Simplex Simplex::face(int i) const {
    Simplex s;
    int t = 0;
    for (int k = 0; k < size_; ++k)
        if (k != i) s.v_[t++] = v_[k];
    s.size_ = static_cast<std::uint8_t>(t);
    return s;
}

std::vector<int> Simplex::to_vector() const { return std::vector<int>(begin(), end()); }

std::string Simplex::str() const {
    std::string out = "{";
    for (int i = 0; i < size_; ++i) {
        if (i) out += ',';
        out += std::to_string(v_[i]);
    }
    return out + "}";
}

std::size_t Simplex::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (int i = 0; i < size_; ++i) {
        h ^= v_[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
}

Simplex set_union(const Simplex& a, const Simplex& b) {
    std::array<Vertex, 2 * kMaxVertices> buf{};
    auto it = std::set_union(a.begin(), a.end(), b.begin(), b.end(), buf.begin());
    int size = static_cast<int>(it - buf.begin());
    if (size > kMaxVertices) fail(ErrorKind::InvalidInput, "union exceeds simplex capacity");
    return Simplex::from_sorted(buf.data(), size);
}

Simplex set_difference(const Simplex& a, const Simplex& b) {
    std::array<Vertex, kMaxVertices> buf{};
    auto it = std::set_difference(a.begin(), a.end(), b.begin(), b.end(), buf.begin());
    return Simplex::from_sorted(buf.data(), static_cast<int>(it - buf.begin()));
}

}  // namespace rsc
