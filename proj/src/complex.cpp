#include "rsc/complex.hpp"

#include <numeric>
#include <string>

#include "rsc/error.hpp"

namespace rsc {

namespace {

const std::vector<Simplex> kEmptyLayer;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

Complex::Complex(int n, int d) : n_(n), d_(d) {
    if (n < 1 || n > 65535) fail(ErrorKind::InvalidInput, "n out of range");
    if (d < 0 || d >= kMaxVertices) fail(ErrorKind::InvalidInput, "d out of range");
    layers_.resize(d + 1);
    index_.resize(d + 1);
    for (int v = 1; v <= n; ++v) layers_[0].push_back(Simplex{v});
    finalize();
}

Complex Complex::from_generators(int n, int d, const std::vector<Simplex>& gens) {
    Complex c(n, d);
    for (const auto& g : gens) c.check_simplex(g);
    for (const auto& g : gens) c.insert_closure(g);
    c.finalize();
    return c;
}

void Complex::check_simplex(const Simplex& s) const {
    if (s.empty()) fail(ErrorKind::InvalidInput, "empty simplex");
    if (s.dim() > d_)
        fail(ErrorKind::InvalidInput, "simplex " + s.str() + " exceeds dimension cap " + std::to_string(d_));
    if (s[s.size() - 1] > n_ || s[0] < 1)
        fail(ErrorKind::InvalidInput, "simplex " + s.str() + " has a vertex outside [n]");
}

void Complex::insert_closure(const Simplex& s) {
    if (index_[s.dim()].count(s)) return;
    for (int size = s.size(); size >= 2; --size) {
        auto& idx = index_[size - 1];
        for_each_subset(s, size, [&](const Simplex& f) {
            if (idx.emplace(f, -1).second) layers_[size - 1].push_back(f);
        });
    }
}

void Complex::finalize() {
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        auto& layer = layers_[i];
        std::sort(layer.begin(), layer.end());
        auto& idx = index_[i];
        idx.clear();
        idx.reserve(layer.size());
        for (std::size_t k = 0; k < layer.size(); ++k) idx.emplace(layer[k], static_cast<int>(k));
    }
}

int Complex::top_dim() const {
    for (int i = d_; i >= 0; --i)
        if (!layers_[i].empty()) return i;
    return 0;
}

bool Complex::contains(const Simplex& s) const { return index_of(s) >= 0; }

int Complex::index_of(const Simplex& s) const {
    if (s.empty() || s.dim() > d_) return -1;
    const auto& idx = index_[s.dim()];
    auto it = idx.find(s);
    return it == idx.end() ? -1 : it->second;
}

const std::vector<Simplex>& Complex::simplices(int i) const {
    if (i < 0 || i > d_) return kEmptyLayer;
    return layers_[i];
}

std::size_t Complex::total_count() const {
    std::size_t t = 0;
    for (const auto& l : layers_) t += l.size();
    return t;
}

std::vector<int> Complex::coface_degrees(int i) const {
    std::vector<int> deg(simplices(i).size(), 0);
    for (const auto& s : simplices(i + 1)) {
        for (int f = 0; f < s.size(); ++f) ++deg[index_of(s.face(f))];
    }
    return deg;
}

std::vector<Simplex> Complex::facets() const {
    std::vector<Simplex> out;
    for (int i = 0; i <= d_; ++i) {
        auto deg = coface_degrees(i);
        for (std::size_t k = 0; k < deg.size(); ++k)
            if (deg[k] == 0) out.push_back(layers_[i][k]);
    }
    return out;
}

Complex Complex::add_simplex(const Simplex& b) const {
    check_simplex(b);
    if (contains(b)) return *this;
    Complex c = *this;
    c.insert_closure(b);
    c.finalize();
    return c;
}

Complex Complex::skeleton(int j) const {
    if (j < 0) fail(ErrorKind::InvalidInput, "negative skeleton degree");
    Complex c = *this;
    if (j >= d_) return c;
    c.d_ = j;
    c.layers_.resize(static_cast<std::size_t>(j) + 1);
    c.index_.resize(static_cast<std::size_t>(j) + 1);
    return c;
}

Complex downward_closure(const Hypergraph& h) {
    return Complex::from_generators(h.n, h.d, h.edges);
}

bool is_shell(const Complex& c, const Simplex& a, int j) {
    if (a.size() != j + 2) return false;
    bool ok = true;
    for_each_subset(a, j + 1, [&](const Simplex& f) { ok = ok && c.contains(f); });
    return ok;
}

std::vector<int> shells_containing(const Complex& c, const Simplex& b) {
    std::vector<int> out;
    if (!c.contains(b)) return out;
    const int j = b.dim();
    for (int a = 1; a <= c.n(); ++a) {
        if (b.contains(static_cast<Vertex>(a))) continue;
        if (is_shell(c, b.with(static_cast<Vertex>(a)), j)) out.push_back(a);
    }
    return out;
}

std::vector<Simplex> all_subsets(int n, int size) {
    std::vector<Simplex> out;
    if (size < 1 || size > n || size > kMaxVertices) return out;
    std::array<Vertex, kMaxVertices> v{};
    for (int i = 0; i < size; ++i) v[i] = static_cast<Vertex>(i + 1);
    while (true) {
        out.push_back(Simplex::from_sorted(v.data(), size));
        int i = size - 1;
        while (i >= 0 && v[i] == n - size + i + 1) --i;
        if (i < 0) return out;
        ++v[i];
        for (int t = i + 1; t < size; ++t) v[t] = static_cast<Vertex>(v[t - 1] + 1);
    }
}

std::vector<std::vector<int>> connected_components(const Complex& c) {
    UnionFind uf(c.n() + 1);
    // Edges suffice: every higher simplex is connected through its 1-faces.
    for (const auto& e : c.simplices(1)) uf.unite(e[0], e[1]);
    std::vector<std::vector<int>> classes;
    std::vector<int> slot(c.n() + 1, -1);
    for (int v = 1; v <= c.n(); ++v) {
        int r = uf.find(v);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(classes.size());
            classes.emplace_back();
        }
        classes[slot[r]].push_back(v);
    }
    return classes;
}

}  // namespace rsc
