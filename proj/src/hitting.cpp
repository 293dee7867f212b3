#include <algorithm>
#include <cmath>
#include <limits>

#include "combinatorics.hpp"
#include "rsc/error.hpp"
#include "rsc/obstructions.hpp"
#include "rsc/process.hpp"

namespace rsc {

double tau_prime(int n, int d) {
    const double logn = std::log(static_cast<double>(n));
    return 1.0 - std::log(logn) / (10.0 * d * logn);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kRankLimit = std::uint64_t(1) << 28;

struct Candidate {
    double born;
    double destroyed;
    Simplex K;
    Simplex C;
};

// Per j-set data over the whole trace: first appearance time and the time-ordered list of
// births of strictly larger sets containing it.
struct JSetIndex {
    const comb::BinomTable& b;
    int j;
    std::vector<double> appear;
    std::vector<std::uint64_t> offset;
    std::vector<std::uint32_t> cofaces;

    JSetIndex(const comb::BinomTable& table, int j, const std::vector<Event>& ev) : b(table), j(j) {
        const std::uint64_t m = b.at(b.n(), j + 1);
        appear.assign(m, j == 0 ? 0.0 : kInf);
        offset.assign(m + 1, 0);
        for (const auto& e : ev) {
            if (e.K.size() < j + 2) continue;
            for_each_subset(e.K, j + 1, [&](const Simplex& s) { ++offset[comb::rank(b, s) + 1]; });
        }
        for (std::uint64_t r = 0; r < m; ++r) offset[r + 1] += offset[r];
        cofaces.resize(offset[m]);
        std::vector<std::uint64_t> fill(offset.begin(), offset.end() - 1);
        for (std::uint32_t i = 0; i < ev.size(); ++i) {
            const auto& e = ev[i];
            if (e.K.size() < j + 1) continue;
            const bool larger = e.K.size() >= j + 2;
            for_each_subset(e.K, j + 1, [&](const Simplex& s) {
                const auto r = comb::rank(b, s);
                appear[r] = std::min(appear[r], e.tau);
                if (larger) cofaces[fill[r]++] = i;
            });
        }
    }

    double first_foreign(const Simplex& P, const Simplex& K, const std::vector<Event>& ev) const {
        const auto r = comb::rank(b, P);
        for (auto it = offset[r]; it < offset[r + 1]; ++it) {
            const auto& e = ev[cofaces[it]];
            if (!e.K.is_subset_of(K)) return e.tau;
        }
        return kInf;
    }
};

}  // namespace

HittingReport hitting_time(const ProcessTrace& tr, int j) {
    if (j < 0 || j >= tr.d) fail(ErrorKind::InvalidInput, "need 0 <= j < d");
    const int n = tr.n;
    const comb::BinomTable b(n, std::min(tr.d + 1, kMaxVertices));
    if (b.at(n, j + 1) > kRankLimit) fail(ErrorKind::GuardExceeded, "too many j-sets for the hitting-time index");
    const auto& ev = tr.events;
    const JSetIndex idx(b, j, ev);

    std::vector<Candidate> cands;
    for (std::uint32_t i = 0; i < ev.size(); ++i) {
        const Simplex& K = ev[i].K;
        const int k = K.dim();
        if (k < j) continue;
        auto consider = [&](const Simplex& C) {
            double destroyed = kInf;
            if (k == j) {
                destroyed = idx.first_foreign(K, K, ev);
            } else {
                for (Vertex w : K) {
                    if (C.contains(w)) continue;
                    destroyed = std::min(destroyed, idx.first_foreign(C.with(w), K, ev));
                    if (destroyed <= ev[i].tau) return;
                }
            }
            if (destroyed > ev[i].tau) cands.push_back({ev[i].tau, destroyed, K, C});
        };
        if (k == j)
            consider(Simplex::from_sorted(K.begin(), j));
        else
            for_each_subset(K, j, consider);
    }

    // Vertices carry no events: each one is a copy of M_{0,0} until its first edge arrives.
    if (j == 0)
        for (int v = 1; v <= n; ++v) {
            const Simplex K{static_cast<Vertex>(v)};
            const double destroyed = idx.first_foreign(K, K, ev);
            if (destroyed > 0) cands.push_back({0.0, destroyed, K, Simplex{}});
        }

    // Earliest time at which some (w, a) completes a shell over the copy.
    auto shell_time = [&](const Candidate& c) {
        const Simplex& K = c.K;
        double best = kInf;
        for (Vertex w : K) {
            if (c.C.contains(w)) continue;
            const Simplex base = c.C.with(w);
            for (int a = 1; a <= n; ++a) {
                const Vertex av = static_cast<Vertex>(a);
                if (K.contains(av)) continue;
                const Simplex shell = base.with(av);
                double t = 0;
                for (int f = 0; f < shell.size() && t < best; ++f)
                    t = std::max(t, idx.appear[comb::rank(b, shell.face(f))]);
                best = std::min(best, t);
            }
        }
        return std::max(best, c.born);
    };

    HittingReport rep;
    rep.tau_prime = tau_prime(n, tr.d);
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& c) {
        return a.destroyed != c.destroyed ? a.destroyed > c.destroyed : a.K.dim() > c.K.dim();
    });
    rep.no_copy = true;
    std::vector<Interval> windows;
    for (const auto& c : cands) {
        const bool past_prime = c.destroyed > rep.tau_prime;
        if (!rep.no_copy && !past_prime) break;
        const double start = shell_time(c);
        if (start >= c.destroyed) continue;
        // Candidates vanishing together are sorted by dimension, so ell is the largest.
        if (rep.no_copy) {
            rep.no_copy = false;
            rep.tau_star = c.destroyed;
            rep.ell = c.K.dim();
            rep.censored = !std::isfinite(c.destroyed);
        }
        if (past_prime) windows.push_back({start, c.destroyed});
    }
    if (rep.no_copy) rep.tau_star = 0;

    std::sort(windows.begin(), windows.end(), [](const Interval& a, const Interval& c) { return a.begin < c.begin; });
    auto first = std::upper_bound(ev.begin(), ev.end(), rep.tau_prime,
                                  [](double t, const Event& e) { return t < e.tau; });
    std::size_t w = 0;
    double covered_to = -kInf;
    for (auto it = first; it != ev.end(); ++it) {
        const double t = it->tau;
        while (w < windows.size() && windows[w].begin <= t) covered_to = std::max(covered_to, windows[w++].end);
        if (t >= covered_to) {
            rep.tau_doubleprime = t;
            break;
        }
    }
    return rep;
}

HittingReport hitting_time_replay(const ProcessTrace& tr, int j) {
    if (j < 0 || j >= tr.d) fail(ErrorKind::InvalidInput, "need 0 <= j < d");
    if (tr.events.size() > kReplayEventGuard) fail(ErrorKind::GuardExceeded, "trace too long for a full replay");
    HittingReport rep;
    rep.tau_prime = tau_prime(tr.n, tr.d);
    // state[0] is the complex before any event, state[i + 1] the one after event i.
    const std::size_t m = tr.events.size();
    std::vector<int> copy_dim(m + 1, -1);
    Complex c(tr.n, tr.d);
    for (std::size_t i = 0; i <= m; ++i) {
        if (i > 0) c = c.add_simplex(tr.events[i - 1].K);
        for (int k = tr.d; k >= std::max(j, 0) && copy_dim[i] < 0; --k)
            if ((k > 0 || j == 0) && !find_Mhat_copies(c, j, k).empty()) copy_dim[i] = k;
    }
    long last = -1;
    for (std::size_t i = 0; i <= m; ++i)
        if (copy_dim[i] >= 0) last = static_cast<long>(i);
    rep.no_copy = last < 0;
    if (!rep.no_copy) {
        rep.ell = copy_dim[static_cast<std::size_t>(last)];
        if (static_cast<std::size_t>(last) < m) {
            rep.tau_star = tr.events[static_cast<std::size_t>(last)].tau;
        } else {
            rep.tau_star = kInf;
            rep.censored = true;
        }
    }
    for (std::size_t i = 0; i < tr.events.size(); ++i) {
        if (tr.events[i].tau > rep.tau_prime && copy_dim[i + 1] < 0) {
            rep.tau_doubleprime = tr.events[i].tau;
            break;
        }
    }
    return rep;
}

std::vector<Interval> connectedness_intervals(const ProcessTrace& tr, int j, const Ring& ring) {
    if (tr.events.size() > kReplayEventGuard || tr.n > 24)
        fail(ErrorKind::GuardExceeded, "trace too large for per-event cohomology");
    std::vector<Interval> out;
    Complex c(tr.n, tr.d);
    bool state = is_cohom_connected(c, j, ring);
    double since = 0;
    for (const auto& e : tr.events) {
        c = c.add_simplex(e.K);
        const bool now = is_cohom_connected(c, j, ring);
        if (now == state) continue;
        if (state) out.push_back({since, e.tau});
        state = now;
        since = e.tau;
    }
    if (state) out.push_back({since, kInf});
    return out;
}

}  // namespace rsc
