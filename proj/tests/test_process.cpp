#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rsc/error.hpp"
#include "rsc/obstructions.hpp"
#include "rsc/process.hpp"

using namespace rsc;

namespace {

ProcessTrace example_trace() {
    return scripted_trace(4, 2,
                          {{Simplex{1, 2}, 0.1}, {Simplex{2, 3}, 0.2}, {Simplex{3, 4}, 0.3}, {Simplex{1, 3, 4}, 0.4},
                           {Simplex{1, 2, 3}, 0.5}});
}

DirectionParams two_level() {
    return DirectionParams::parse("d = 2\nj = 1\nk1.alpha = 0\nk1.gamma = 0\nk1.beta_form = constant\nk1.beta_value = 0.3\n"
                                  "k2.alpha = 1\nk2.gamma = 0\n");
}

bool same_set(const Complex& a, const Complex& b) { return oracle::simplex_set(a) == oracle::simplex_set(b); }

}  // namespace

TEST_CASE("counter rng") {
    CounterRng a = CounterRng::stream(5, 9), b = CounterRng::stream(5, 9), c = CounterRng::stream(5, 10);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        CHECK(x == b.next());
        CHECK(x != c.next());
    }
    CounterRng u(1);
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
        const double v = u.uniform();
        CHECK(v >= 0);
        CHECK(v < 1);
        sum += v;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("sampling") {
    const auto dp = default_critical_direction(2, 1);
    const ProcessTrace t1 = sample_process(30, dp, 7, 2.0), t2 = sample_process(30, dp, 7, 2.0);
    REQUIRE(t1.events.size() == t2.events.size());
    for (std::size_t i = 0; i < t1.events.size(); ++i) {
        CHECK(t1.events[i].K == t2.events[i].K);
        CHECK(t1.events[i].tau == t2.events[i].tau);
    }
    // Only the top dimension is active, so only 3-sets are born.
    for (const auto& e : t1.events) CHECK(e.K.size() == 3);
    for (std::size_t i = 1; i < t1.events.size(); ++i) CHECK(t1.events[i - 1].tau <= t1.events[i].tau);
    CHECK(t1.truncated());

    // Every set gets a birth time when the cap is infinite.
    const ProcessTrace all = sample_process(4, two_level(), 3, INFINITY);
    CHECK(all.events.size() == 10);
    CHECK(!all.truncated());
    for (const auto& e : all.events) {
        const double t = all.birth_time(e);
        CHECK(t >= 0);
        CHECK(t <= 1);
    }

    CHECK_THROWS_AS(sample_process(2000, dp, 1, std::nullopt, 1e3), Error);
    CHECK_THROWS_AS(sample_process(30, dp, 1, -1.0), Error);
}

TEST_CASE("snapshots") {
    const auto dp = two_level();
    const ProcessTrace tr = sample_process(12, dp, 11);
    CHECK(snapshot(tr, 0).total_count() == 12);
    const Complex top = snapshot(tr, tr.tau_max);
    CHECK(top.count(2) == 220);  // every 2-simplex is present at tau_max

    double prev = 0;
    Complex before = snapshot(tr, 0);
    for (double tau : {0.3, 0.9, 1.5, 4.0, tr.tau_max}) {
        CHECK(tau >= prev);
        const Complex now = snapshot(tr, tau);
        const auto a = oracle::simplex_set(before), b = oracle::simplex_set(now);
        CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        before = now;
        prev = tau;
    }

    const ProcessTrace capped = sample_process(12, dp, 11, 1.0);
    CHECK(same_set(snapshot(capped, 0.7), Complex::from_generators(12, 2, generators_up_to(capped, 0.7))));
    CHECK_THROWS_AS(generators_up_to(capped, 1.5), Error);
}

TEST_CASE("marginal law of a generator") {
    // Birth times are independent, so each size class is a sum of independent Bernoulli
    // indicators with mean min(1, tau * p-bar_k).
    const auto dp = two_level();
    const int n = 6;
    const auto pv = evaluate_pbar(dp, n);
    const double tau = 0.8;
    const int trials = 4000;
    long edges = 0, triangles = 0;
    for (int t = 0; t < trials; ++t) {
        const ProcessTrace tr = sample_process(n, dp, 1000 + t, 1.0);
        for (const auto& g : generators_up_to(tr, tau)) (g.size() == 2 ? edges : triangles) += 1;
    }
    for (auto [count, sets, k] : {std::tuple{edges, 15, 1}, std::tuple{triangles, 20, 2}}) {
        const double p = std::min(1.0, tau * pv.raw[k]);
        const double draws = static_cast<double>(sets) * trials;
        const double se = std::sqrt(p * (1 - p) / draws);
        CHECK(std::fabs(static_cast<double>(count) / draws - p) <= 4 * se);
    }
}

TEST_CASE("hitting time on scripted traces") {
    SUBCASE("the non-monotone example") {
        const ProcessTrace tr = example_trace();
        std::vector<std::size_t> copies;
        Complex c(4, 2);
        for (const auto& e : tr.events) {
            c = c.add_simplex(e.K);
            std::size_t total = 0;
            for (int k = 1; k <= 2; ++k) total += find_Mhat_copies(c, 1, k).size();
            copies.push_back(total);
        }
        CHECK(copies[0] == 0);
        CHECK(copies[2] == 0);
        CHECK(copies[3] > 0);
        CHECK(copies[4] == 0);
        bool found = false;
        for (const auto& m : find_Mhat_copies(snapshot(tr, 0.45), 1, 2))
            found = found || (m.K == Simplex{1, 3, 4} && m.C == Simplex{3} && m.w == 1 && m.a == 2);
        CHECK(found);

        for (const auto& rep : {hitting_time(tr, 1), hitting_time_replay(tr, 1)}) {
            CHECK(!rep.no_copy);
            CHECK(rep.tau_star == 0.5);
            CHECK(rep.ell == 2);
            CHECK(!rep.censored);
            CHECK(!rep.tau_doubleprime.has_value());
        }

        const auto iv = connectedness_intervals(tr, 1, Ring::f2());
        REQUIRE(iv.size() == 2);
        CHECK(iv[0].begin == 0.3);
        CHECK(iv[0].end == 0.4);
        CHECK(iv[1].begin == 0.5);
        CHECK(std::isinf(iv[1].end));
    }
    SUBCASE("an isolated edge under a shell") {
        const ProcessTrace tr = scripted_trace(
            4, 2, {{Simplex{1, 2}, 0.1}, {Simplex{1, 3}, 0.2}, {Simplex{2, 3}, 0.3}, {Simplex{1, 2, 3}, 0.4}});
        const auto rep = hitting_time(tr, 1);
        CHECK(rep.tau_star == 0.4);
        CHECK(rep.ell == 1);
        CHECK(hitting_time_replay(tr, 1).tau_star == 0.4);
    }
    SUBCASE("no obstruction ever forms") {
        const ProcessTrace tr = scripted_trace(4, 2, {{Simplex{1, 2, 3}, 0.5}});
        const auto rep = hitting_time(tr, 1);
        CHECK(rep.no_copy);
        CHECK(rep.tau_star == 0);
        CHECK(hitting_time_replay(tr, 1).no_copy);
    }
    SUBCASE("a copy that outlives the trace") {
        const ProcessTrace tr =
            scripted_trace(4, 2, {{Simplex{1, 2}, 0.1}, {Simplex{1, 3}, 0.2}, {Simplex{2, 3}, 0.3}});
        const auto rep = hitting_time(tr, 1);
        CHECK(rep.censored);
        CHECK(std::isinf(rep.tau_star));
        CHECK(hitting_time_replay(tr, 1).censored);
    }
    SUBCASE("a trace that never connects") {
        DirectionParams dp(2, 1);
        dp.at(2) = {false, 1, 1, BetaSpec::zero()};
        CHECK_THROWS_AS(dp.validate(), Error);  // alpha and gamma both nonzero
        const ProcessTrace empty = scripted_trace(5, 2, {});
        CHECK(connectedness_intervals(empty, 1, Ring::f2()).empty());
    }
}

TEST_CASE("interval method matches the replay") {
    long compared = 0, with_dp = 0;
    for (int t = 0; t < 120; ++t) {
        const int n = 6 + t % 4;
        const int d = 2 + (t % 5 == 0);
        DirectionParams dp = default_critical_direction(d, 1);
        if (t % 3 == 0) {
            dp.at(1) = {false, 0, 0, BetaSpec::constant(0.25)};
        }
        const ProcessTrace tr = sample_process(n, dp, 500 + t, t % 2 ? 2.5 : std::optional<double>{});
        if (tr.events.size() > 400) continue;
        for (int j = 0; j < d; ++j) {
            if (j == 0 && t % 4) continue;
            const auto a = hitting_time(tr, j), b = hitting_time_replay(tr, j);
            CHECK(a.no_copy == b.no_copy);
            CHECK(a.censored == b.censored);
            CHECK(a.tau_star == b.tau_star);
            CHECK(a.tau_prime == b.tau_prime);
            CHECK(a.tau_doubleprime.has_value() == b.tau_doubleprime.has_value());
            if (a.tau_doubleprime && b.tau_doubleprime) CHECK(*a.tau_doubleprime == *b.tau_doubleprime);
            with_dp += a.tau_doubleprime.has_value();
            if (a.tau_doubleprime && !a.no_copy && a.tau_star > a.tau_prime) CHECK(*a.tau_doubleprime <= a.tau_star);
            ++compared;
        }
        // After tau_star no copy is ever present again.
        const auto rep = hitting_time_replay(tr, 1);
        if (!rep.no_copy && !rep.censored) {
            Complex c(tr.n, tr.d);
            for (const auto& e : tr.events) {
                c = c.add_simplex(e.K);
                if (e.tau < rep.tau_star) continue;
                for (int k = 1; k <= d; ++k) CHECK(find_Mhat_copies(c, 1, k).empty());
            }
        }
    }
    CHECK(compared > 100);
    CHECK(with_dp > 0);
}

TEST_CASE("an obstruction rules out connectedness along a trace") {
    for (int t = 0; t < 25; ++t) {
        const ProcessTrace tr = sample_process(7, default_critical_direction(2, 1), 40 + t, 3.0);
        Complex c(tr.n, tr.d);
        for (const auto& e : tr.events) {
            c = c.add_simplex(e.K);
            bool copy = false;
            for (int k = 1; k <= 2; ++k) copy = copy || !find_Mhat_copies(c, 1, k).empty();
            if (copy)
                for (const auto& ring : {Ring::f2(), Ring::fp(3), Ring::z()}) CHECK(!is_cohom_connected(c, 1, ring));
        }
    }
}

TEST_CASE("fast counts match the complex scan") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 150; ++t) {
        const int n = 5 + t % 5, d = 2 + t % 3;
        std::vector<double> p(d + 1, 0);
        for (int k = 1; k <= d; ++k) p[k] = 0.05 + 0.4 * std::uniform_real_distribution<double>(0, 1)(rng) / k;
        CounterRng r(t);
        const auto gens = sample_generators(n, p, r);
        const Complex c = Complex::from_generators(n, d, gens);
        for (int j = 0; j <= d; ++j) {
            const auto counts = count_obstructions(n, d, j, gens);
            for (int k = j; k <= d; ++k) {
                if (k == 0) continue;
                CHECK(counts.X[k] == static_cast<long>(find_M_copies(c, j, k).size()));
                CHECK(counts.Xhat[k] == static_cast<long>(find_Mhat_copies(c, j, k).size()));
            }
        }
    }
    // Every j-simplex is isolated when nothing larger is present.
    CounterRng r(3);
    const auto edges = sample_generators(9, {0, 1.0, 0}, r);
    CHECK(count_obstructions(9, 2, 1, edges).X[1] == 36);
}

TEST_CASE("Monte Carlo harness") {
    const auto dp = two_level();
    const auto zero = mc_expectations(12, dp, 0.0, 50, 1);
    for (int k = 1; k <= 2; ++k) {
        CHECK(zero.mean_X[k] == 0);
        CHECK(zero.mean_Xhat[k] == 0);
    }

    const auto s1 = mc_expectations(15, dp, 1.0, 3000, 42, 1);
    const auto s2 = mc_expectations(15, dp, 1.0, 3000, 42, 3);
    CHECK(s1.X == s2.X);  // trial streams do not depend on the thread count
    for (int k = 1; k <= 2; ++k) {
        CHECK(s1.exact_mean[k] > 0);
        CHECK(std::fabs(s1.mean_X[k] - s1.exact_mean[k]) <= 4 * s1.se_X[k]);
    }

    const auto w = mc_poisson_window(60, default_critical_direction(2, 1), 0.0, 300, 5, 2, true);
    CHECK(w.k_bar == 2);
    CHECK(w.theory_mean[2] > 0);
    CHECK(w.tv_exact[2] >= 0);
    CHECK(w.tv_exact[2] <= 1);
    CHECK(w.pr_no_M >= 0);
    CHECK(w.pr_no_M <= 1);
    REQUIRE(w.pr_connected.has_value());
    CHECK(*w.pr_connected <= w.pr_no_M + 1e-12 + 1.0);
    CHECK_THROWS_AS(mc_expectations(12, dp, 1.0, 0, 1), Error);

    std::vector<long> all_zero(1000, 0);
    CHECK(tv_to_poisson(all_zero, 0.0) == doctest::Approx(0));
    CHECK(tv_to_poisson(all_zero, 1.0) == doctest::Approx(1 - std::exp(-1.0)));
}

TEST_CASE("threshold sweep") {
    const auto dp = default_critical_direction(2, 1);
    const std::vector<double> grid{0.5, 1.0, 1.5};
    const auto rows = threshold_sweep({40, 60}, dp, 20, 9, grid, 2);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].n == 40);
    CHECK(rows[3].n == 60);
    CHECK(rows[2].tau == 1.5);
    for (const auto& r : rows) {
        CHECK(r.trials == 20);
        REQUIRE(r.pr_Hj_zero.has_value());
        CHECK(r.pr_top_connected >= *r.pr_Hj_zero);
    }
    CHECK(*rows[3].pr_Hj_zero <= *rows[5].pr_Hj_zero);
    CHECK_THROWS_AS(threshold_sweep({40}, dp, 0, 1, grid), Error);
}
