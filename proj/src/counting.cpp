#include <algorithm>

#include "combinatorics.hpp"
#include "rsc/error.hpp"
#include "rsc/obstructions.hpp"
#include "rsc/process.hpp"

namespace rsc {

namespace {

constexpr std::uint64_t kDenseRankLimit = std::uint64_t(1) << 28;

ObstructionCounts count_by_complex(int n, int d, int j, const std::vector<Simplex>& gens) {
    const Complex c = Complex::from_generators(n, d, gens);
    ObstructionCounts out{std::vector<long>(static_cast<std::size_t>(d) + 1, 0),
                          std::vector<long>(static_cast<std::size_t>(d) + 1, 0)};
    for (int k = j; k <= d; ++k) {
        out.X[k] = static_cast<long>(find_M_copies(c, j, k).size());
        out.Xhat[k] = static_cast<long>(find_Mhat_copies(c, j, k).size());
    }
    return out;
}

}  // namespace

ObstructionCounts count_obstructions(int n, int d, int j, const std::vector<Simplex>& gens) {
    if (j < 0 || j > d) fail(ErrorKind::InvalidInput, "need 0 <= j <= d");
    const comb::BinomTable b(n, std::min(d + 1, kMaxVertices));
    const std::uint64_t jsets = b.at(n, j + 1);
    if (jsets > kDenseRankLimit || (j + 2 <= kMaxVertices && b.at(n, j + 2) == comb::kSaturated))
        return count_by_complex(n, d, j, gens);

    std::vector<char> member(jsets, j == 0 ? 1 : 0);
    std::vector<std::uint32_t> deg(jsets, 0);
    std::vector<std::uint64_t> upper;  // ranks of (j+1)-simplices when deduplication is needed
    bool need_dedup = false;
    for (const auto& g : gens) {
        if (g.size() >= j + 1) for_each_subset(g, j + 1, [&](const Simplex& s) { member[comb::rank(b, s)] = 1; });
        if (g.size() > j + 2) need_dedup = true;
    }
    auto bump = [&](const Simplex& up) {
        for (int f = 0; f < up.size(); ++f) ++deg[comb::rank(b, up.face(f))];
    };
    if (need_dedup) {
        for (const auto& g : gens)
            if (g.size() >= j + 2) for_each_subset(g, j + 2, [&](const Simplex& s) { upper.push_back(comb::rank(b, s)); });
        std::sort(upper.begin(), upper.end());
        upper.erase(std::unique(upper.begin(), upper.end()), upper.end());
        for (auto r : upper) bump(comb::unrank(b, r, j + 2));
    } else {
        for (const auto& g : gens)
            if (g.size() == j + 2) bump(g);
    }

    ObstructionCounts out{std::vector<long>(static_cast<std::size_t>(d) + 1, 0),
                          std::vector<long>(static_cast<std::size_t>(d) + 1, 0)};
    auto count_hats = [&](const Simplex& K, const Simplex& C) {
        long hats = 0;
        for (Vertex w : K) {
            if (C.contains(w)) continue;
            const Simplex base = C.with(w);
            for (int a = 1; a <= n; ++a) {
                const Vertex av = static_cast<Vertex>(a);
                if (K.contains(av)) continue;
                const Simplex shell = base.with(av);
                bool ok = true;
                for (int f = 0; f < shell.size() && ok; ++f) ok = member[comb::rank(b, shell.face(f))];
                hats += ok;
            }
        }
        return hats;
    };
    // Only generators can carry copies: a localised petal forces K to be maximal.
    for (const auto& K : gens) {
        const int k = K.dim();
        if (k < j || k > d) continue;
        if (k == j) {
            if (deg[comb::rank(b, K)] == 0) {
                ++out.X[k];
                out.Xhat[k] += count_hats(K, Simplex::from_sorted(K.begin(), j));
            }
            continue;
        }
        for_each_subset(K, j, [&](const Simplex& C) {
            for (Vertex w : K)
                if (!C.contains(w) && deg[comb::rank(b, C.with(w))] != static_cast<std::uint32_t>(k - j)) return;
            ++out.X[k];
            out.Xhat[k] += count_hats(K, C);
        });
    }
    return out;
}

}  // namespace rsc
