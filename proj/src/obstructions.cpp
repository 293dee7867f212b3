#include "rsc/obstructions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "linalg.hpp"
#include "rsc/error.hpp"

namespace rsc {

Flower make_flower(const Simplex& K, const Simplex& C) {
    Flower f{K, C, {}};
    for (Vertex w : K)
        if (!C.contains(w)) f.petals.push_back(C.with(w));
    return f;
}

bool is_K_localised(const Complex& c, const Simplex& J, const Simplex& K) {
    if (!c.contains(J)) return true;
    for (int x = 1; x <= c.n(); ++x) {
        const Vertex v = static_cast<Vertex>(x);
        if (K.contains(v)) continue;
        if (c.contains(J.with(v))) return false;
    }
    return true;
}

namespace {

Simplex first_vertices(const Simplex& K, int count) {
    return Simplex::from_sorted(K.begin(), count);
}

// Centres C of K (|C| = j) whose petals all have exactly k - j cofaces, i.e. are K-localised.
template <class Fn>
void scan_M(const Complex& c, int j, int k, Fn&& emit) {
    if (j < 0 || k < j || k > c.d()) return;
    const auto deg = c.coface_degrees(j);
    for (const auto& K : c.simplices(k)) {
        if (k == j) {
            if (deg[c.index_of(K)] == 0) emit(K, first_vertices(K, j));
            continue;
        }
        for_each_subset(K, j, [&](const Simplex& C) {
            for (Vertex w : K) {
                if (C.contains(w)) continue;
                if (deg[c.index_of(C.with(w))] != k - j) return;
            }
            emit(K, C);
        });
    }
}

}  // namespace

std::vector<ObstructionCopy> find_M_copies(const Complex& c, int j, int k) {
    std::vector<ObstructionCopy> out;
    scan_M(c, j, k, [&](const Simplex& K, const Simplex& C) {
        out.push_back({ObstructionCopy::Kind::M, j, k, K, C, 0, 0});
    });
    return out;
}

std::vector<ObstructionCopy> find_Mhat_copies(const Complex& c, int j, int k) {
    std::vector<ObstructionCopy> out;
    scan_M(c, j, k, [&](const Simplex& K, const Simplex& C) {
        for (Vertex w : K) {
            if (C.contains(w)) continue;
            const Simplex base = C.with(w);
            for (int a = 1; a <= c.n(); ++a) {
                const Vertex av = static_cast<Vertex>(a);
                if (K.contains(av)) continue;
                if (is_shell(c, base.with(av), j))
                    out.push_back({ObstructionCopy::Kind::Mhat, j, k, K, C, w, a});
            }
        }
    });
    return out;
}

Cochain build_f_M_r(const ObstructionCopy& m, std::int64_t r, const Ring& ring) {
    Cochain f(m.j, ring);
    for (const auto& petal : make_flower(m.K, m.C).petals) {
        // Petal ordered as (C ascending, w); sorting w into place costs one transposition
        // per element of C above it.
        const Vertex w = set_difference(petal, m.C)[0];
        const auto above = std::count_if(m.C.begin(), m.C.end(), [&](Vertex x) { return x > w; });
        f.set(petal, (above % 2) ? -r : r);
    }
    return f;
}

std::vector<LocalObstacle> find_local_obstacles(const Complex& c, int j) {
    std::vector<LocalObstacle> out;
    if (j < 0) return out;
    const auto deg = c.coface_degrees(j);
    for (int k = j; k <= c.d(); ++k) {
        for (const auto& K : c.simplices(k)) {
            LocalObstacle ob{K, {}};
            for_each_subset(K, j + 1, [&](const Simplex& P) {
                if (deg[c.index_of(P)] == k - j) ob.localised.push_back(P);
            });
            if (static_cast<int>(ob.localised.size()) >= k - j + 1) out.push_back(std::move(ob));
        }
    }
    return out;
}

bool TraversalWitness::satisfies_bounds() const {
    if (S.empty()) return false;
    const int j = S[0].dim();
    if (T.size() > S.size()) return false;
    long budget = j + 1;
    for (std::size_t i = 0; i < t_vector.size(); ++i) budget += static_cast<long>(i + 1) * t_vector[i];
    return vertex_count <= budget;
}

namespace {

bool connects(const std::vector<Simplex>& S, const std::vector<Simplex>& T) {
    std::vector<int> parent(S.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t groups = S.size();
    for (const auto& sigma : T) {
        int first = -1;
        for (std::size_t i = 0; i < S.size(); ++i) {
            if (!S[i].is_subset_of(sigma)) continue;
            if (first < 0) {
                first = static_cast<int>(i);
                continue;
            }
            int a = find(first), b = find(static_cast<int>(i));
            if (a != b) {
                parent[b] = a;
                --groups;
            }
        }
    }
    return groups == 1;
}

}  // namespace

std::optional<TraversalWitness> is_traversable(const Complex& c, std::vector<Simplex> S) {
    if (S.empty()) fail(ErrorKind::InvalidInput, "empty set of simplices");
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    const int j = S[0].dim();
    for (const auto& s : S) {
        if (s.dim() != j) fail(ErrorKind::InvalidInput, "mixed dimensions in S");
        if (!c.contains(s)) fail(ErrorKind::InvalidInput, s.str() + " is not a simplex");
    }

    // Breadth-first exploration: from each reached J, reveal J + J' for every still
    // unreached J' whose union with J is a simplex.
    const std::size_t m = S.size();
    std::vector<char> reached(m, 0);
    std::deque<std::size_t> queue{0};
    reached[0] = 1;
    std::vector<Simplex> T;
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t other = 0; other < m; ++other) {
            if (reached[other]) continue;
            Simplex sigma;
            try {
                sigma = set_union(S[cur], S[other]);
            } catch (const Error&) {
                continue;
            }
            if (!c.contains(sigma)) continue;
            T.push_back(sigma);
            for (std::size_t t = 0; t < m; ++t) {
                if (!reached[t] && S[t].is_subset_of(sigma)) {
                    reached[t] = 1;
                    queue.push_back(t);
                }
            }
        }
    }
    if (std::find(reached.begin(), reached.end(), 0) != reached.end()) return std::nullopt;

    // Greedy pruning to a minimal collection.
    for (std::size_t i = 0; i < T.size();) {
        std::vector<Simplex> trial(T);
        trial.erase(trial.begin() + static_cast<long>(i));
        if (connects(S, trial))
            T = std::move(trial);
        else
            ++i;
    }

    TraversalWitness w;
    w.S = S;
    w.T = T;
    w.t_vector.assign(static_cast<std::size_t>(std::max(0, c.d() - j)), 0);
    for (const auto& sigma : T) ++w.t_vector[static_cast<std::size_t>(sigma.dim() - j - 1)];

    std::vector<char> seen(m, 0);
    std::vector<char> used(T.size(), 0);
    std::deque<std::size_t> q{0};
    seen[0] = 1;
    while (!q.empty()) {
        const std::size_t cur = q.front();
        q.pop_front();
        w.exploration.push_back(S[cur]);
        for (std::size_t t = 0; t < T.size(); ++t) {
            if (used[t] || !S[cur].is_subset_of(T[t])) continue;
            used[t] = 1;
            for (std::size_t o = 0; o < m; ++o)
                if (!seen[o] && S[o].is_subset_of(T[t])) {
                    seen[o] = 1;
                    q.push_back(o);
                }
        }
    }

    std::set<Vertex> verts;
    for (const auto& s : S) verts.insert(s.begin(), s.end());
    w.vertex_count = static_cast<int>(verts.size());
    return w;
}

namespace {

// Basis of the kernel of a dense matrix over GF(p).
std::vector<std::vector<std::int64_t>> nullspace(linalg::DenseMat a, std::int64_t p) {
    for (auto& x : a.a) x = ((x % p) + p) % p;
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols && rank < a.rows; ++col) {
        std::size_t piv = rank;
        while (piv < a.rows && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows) continue;
        for (std::size_t k = 0; k < a.cols; ++k) std::swap(a.at(piv, k), a.at(rank, k));
        const std::int64_t inv = linalg::mod_inverse(a.at(rank, col), p);
        for (std::size_t k = 0; k < a.cols; ++k) a.at(rank, k) = a.at(rank, k) * inv % p;
        for (std::size_t r = 0; r < a.rows; ++r) {
            if (r == rank || a.at(r, col) == 0) continue;
            const std::int64_t f = a.at(r, col);
            for (std::size_t k = 0; k < a.cols; ++k)
                a.at(r, k) = ((a.at(r, k) - f * a.at(rank, k)) % p + p) % p;
        }
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    std::vector<char> is_pivot(a.cols, 0);
    for (int col : pivot_col) is_pivot[col] = 1;
    std::vector<std::vector<std::int64_t>> basis;
    for (std::size_t free = 0; free < a.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::int64_t> v(a.cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = (p - a.at(r, free)) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

std::optional<Cochain> minimal_bad_support(const Complex& c, int j, const Ring& ring) {
    if (!ring.is_field()) fail(ErrorKind::InvalidInput, "minimal_bad_support needs a prime field");
    const auto& js = c.simplices(j);
    const std::size_t len = js.size();
    const std::int64_t p = ring.modulus;
    if (len > kMaxBadSupportSimplices && p == 2)
        fail(ErrorKind::SearchSpaceTooLarge, "too many j-simplices for exhaustive enumeration");

    const SparseMatrix dj = coboundary_matrix(c, j);
    linalg::DenseMat a(dj.rows, len);
    for (std::size_t r = 0; r < dj.rows; ++r)
        for (auto [col, v] : dj.entries[r]) a.at(r, col) = v;
    const auto cocycles = nullspace(std::move(a), p);
    if (std::pow(static_cast<double>(p), static_cast<double>(cocycles.size())) > static_cast<double>(kCosetGuard))
        fail(ErrorKind::SearchSpaceTooLarge, "cocycle space too large for exhaustive enumeration");

    linalg::FpSpan good(len, p);
    const SparseMatrix dlo = coboundary_matrix(c, j - 1);
    std::vector<std::vector<std::int64_t>> cols(dlo.cols, std::vector<std::int64_t>(len, 0));
    for (std::size_t r = 0; r < dlo.rows; ++r)
        for (auto [col, v] : dlo.entries[r]) cols[col][r] = v;
    for (auto& col : cols) good.insert(col);
    for (int k = j; k <= c.d(); ++k) {
        for (const auto& m : find_M_copies(c, j, k)) {
            std::vector<std::int64_t> v(len, 0);
            const Cochain f = build_f_M_r(m, 1, ring);
            for (const auto& [s, val] : f.values()) v[static_cast<std::size_t>(c.index_of(s))] = val;
            good.insert(std::move(v));
        }
    }
    // Coboundaries and f_{M,1} cochains are cocycles, so equal dimension means G = Z.
    if (good.dim() == cocycles.size()) return std::nullopt;

    std::vector<std::int64_t> cur(len, 0), best;
    std::size_t best_w = len + 1;
    auto visit = [&](auto&& self, std::size_t level) -> void {
        if (level == cocycles.size()) {
            const auto w = static_cast<std::size_t>(std::count_if(cur.begin(), cur.end(), [](auto x) { return x != 0; }));
            if (w == 0 || w >= best_w) return;
            const auto res = good.reduce(cur);
            if (std::all_of(res.begin(), res.end(), [](auto x) { return x == 0; })) return;
            best_w = w;
            best = cur;
            return;
        }
        for (std::int64_t t = 0; t < p; ++t) {
            self(self, level + 1);
            for (std::size_t k = 0; k < len; ++k) cur[k] = (cur[k] + cocycles[level][k]) % p;
        }
    };
    visit(visit, 0);
    if (best.empty()) return std::nullopt;
    Cochain out(j, ring);
    for (std::size_t k = 0; k < len; ++k)
        if (best[k]) out.set(js[k], best[k]);
    return out;
}

}  // namespace rsc
