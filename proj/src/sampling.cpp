#include <algorithm>
#include <cmath>
#include <string>

#include "combinatorics.hpp"
#include "rsc/error.hpp"
#include "rsc/process.hpp"

namespace rsc {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CounterRng CounterRng::stream(std::uint64_t seed, std::uint64_t index) {
    return CounterRng(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t CounterRng::next() { return mix64(key_ + 0xd1b54a32d192ed03ULL * ++ctr_); }

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double CounterRng::uniform_open0() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

namespace {

// Visits every (size)-set kept independently with probability q, in colex rank order,
// using geometric gaps between kept ranks.
template <class Fn>
void bernoulli_subsets(const comb::BinomTable& b, int n, int size, double q, CounterRng& rng, Fn&& fn) {
    const std::uint64_t total = b.at(n, size);
    if (q <= 0 || total == 0) return;
    if (total == comb::kSaturated) fail(ErrorKind::GuardExceeded, "too many candidate sets");
    if (q >= 1) {
        for (const auto& s : all_subsets(n, size)) fn(s);
        return;
    }
    const double log_fail = std::log1p(-q);
    comb::ColexWalker walk(b, size);
    std::uint64_t r = 0;
    bool first = true;
    while (true) {
        const double gap = std::floor(std::log(rng.uniform_open0()) / log_fail);
        if (gap >= static_cast<double>(total)) return;
        const std::uint64_t step = static_cast<std::uint64_t>(gap) + (first ? 0 : 1);
        first = false;
        if (step >= total - r) return;
        r += step;
        fn(walk.seek(r));
    }
}

void check_guard(int n, const std::vector<double>& q, double guard) {
    double expected = 0;
    for (std::size_t k = 1; k < q.size(); ++k) {
        double count = 1;
        for (std::size_t t = 0; t <= k; ++t) count = count * (n - static_cast<double>(t)) / static_cast<double>(t + 1);
        expected += std::max(count, 0.0) * q[k];
    }
    if (expected > guard)
        fail(ErrorKind::GuardExceeded, "expected number of generators " + std::to_string(expected) +
                                           " exceeds the configured cap");
}

}  // namespace

std::vector<Simplex> sample_generators(int n, const std::vector<double>& p, CounterRng& rng, double guard) {
    check_guard(n, p, guard);
    const int d = static_cast<int>(p.size()) - 1;
    comb::BinomTable b(n, d + 1);
    std::vector<Simplex> out;
    for (int k = 1; k <= d; ++k)
        bernoulli_subsets(b, n, k + 1, p[k], rng, [&](const Simplex& s) { out.push_back(s); });
    std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& c) {
        return a.size() != c.size() ? a.size() < c.size() : a < c;
    });
    return out;
}

namespace {

void sort_events(std::vector<Event>& ev) {
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
        return a.tau != b.tau ? a.tau < b.tau : a.K < b.K;
    });
}

}  // namespace

ProcessTrace sample_process(int n, const DirectionParams& dp, std::uint64_t seed,
                            std::optional<double> tau_cap, double guard) {
    dp.validate();
    const ProbabilityVector pv = evaluate_pbar(dp, n);
    ProcessTrace tr;
    tr.n = n;
    tr.d = dp.d;
    tr.direction = dp;
    tr.pbar = pv.raw;
    tr.seed = seed;
    tr.tau_max = pv.raw[dp.d] > 0 ? 1.0 / pv.raw[dp.d] : INFINITY;
    // An infinite cap asks for every birth time, including those past tau_max.
    const bool full = tau_cap && std::isinf(*tau_cap) && *tau_cap > 0;
    tr.tau_cap = full ? INFINITY : std::min(tau_cap.value_or(tr.tau_max), tr.tau_max);
    if (!std::isfinite(tr.tau_cap) && !full)
        fail(ErrorKind::InvalidInput, "p-bar_d is zero; a finite tau cap is required");
    if (tr.tau_cap < 0) fail(ErrorKind::InvalidInput, "tau cap must be nonnegative");

    std::vector<double> q(pv.raw.size(), 0.0);
    for (std::size_t k = 1; k < q.size(); ++k)
        q[k] = pv.raw[k] == 0 ? 0.0 : full ? 1.0 : std::min(1.0, tr.tau_cap * pv.raw[k]);
    if (tr.tau_cap >= tr.tau_max) q[dp.d] = 1.0;
    check_guard(n, q, guard);

    comb::BinomTable b(n, dp.d + 1);
    CounterRng rng = CounterRng::stream(seed, 0);
    for (int k = 1; k <= dp.d; ++k) {
        if (q[k] <= 0) continue;
        const double pk = pv.raw[k];
        bernoulli_subsets(b, n, k + 1, q[k], rng, [&](const Simplex& s) {
            // Conditioned on t_K <= q, the birth time is uniform on [0, q].
            const double t = q[k] * rng.uniform();
            tr.events.push_back({s, t / pk});
        });
    }
    sort_events(tr.events);
    return tr;
}

ProcessTrace scripted_trace(int n, int d, std::vector<Event> events) {
    ProcessTrace tr;
    tr.n = n;
    tr.d = d;
    tr.pbar.assign(static_cast<std::size_t>(d) + 1, 0.0);
    tr.tau_max = INFINITY;
    tr.tau_cap = INFINITY;
    Complex(n, d);  // validates n and d
    for (const auto& e : events) {
        if (e.K.size() < 2 || e.K.dim() > d || e.K[e.K.size() - 1] > n)
            fail(ErrorKind::InvalidInput, "scripted event " + e.K.str() + " is invalid");
    }
    tr.events = std::move(events);
    sort_events(tr.events);
    return tr;
}

std::vector<Simplex> generators_up_to(const ProcessTrace& tr, double tau) {
    if (tau > tr.tau_cap && tr.truncated())
        fail(ErrorKind::InvalidInput, "snapshot time lies beyond the sampled horizon");
    std::vector<Simplex> gens;
    for (const auto& e : tr.events) {
        if (e.tau > tau) break;
        gens.push_back(e.K);
    }
    return gens;
}

Complex snapshot(const ProcessTrace& tr, double tau) {
    return Complex::from_generators(tr.n, tr.d, generators_up_to(tr, tau));
}

}  // namespace rsc
