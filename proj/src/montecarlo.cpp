#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

#include "rsc/error.hpp"
#include "rsc/process.hpp"

namespace rsc {

void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max(1L, count))));
    if (threads == 1) {
        for (long t = 0; t < count; ++t) fn(t);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            (void)w;
            try {
                for (long t; !failed && (t = next.fetch_add(1)) < count;) fn(t);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

double tv_to_poisson(const std::vector<long>& sample, double mean) {
    if (sample.empty()) return 0;
    std::map<long, double> emp;
    for (long x : sample) emp[x] += 1.0 / static_cast<double>(sample.size());
    const long top = std::max(emp.rbegin()->first, static_cast<long>(mean + 20 * std::sqrt(mean) + 20));
    double tv = 0, mass = 0;
    double pmf = std::exp(-mean);
    for (long x = 0; x <= top; ++x) {
        if (x > 0) pmf *= mean / static_cast<double>(x);
        mass += pmf;
        auto it = emp.find(x);
        tv += std::fabs((it == emp.end() ? 0.0 : it->second) - pmf);
    }
    tv += std::max(0.0, 1.0 - mass);
    return tv / 2;
}

namespace {

double poisson_pmf(long x, double mean) {
    if (mean <= 0) return x == 0 ? 1.0 : 0.0;
    return std::exp(static_cast<double>(x) * std::log(mean) - mean - std::lgamma(static_cast<double>(x) + 1));
}

// TV between the empirical joint law of the count vectors and a product of Poissons.
double tv_joint(const std::vector<std::vector<long>>& rows, int from, const std::vector<double>& means) {
    std::map<std::vector<long>, double> emp;
    for (const auto& r : rows)
        emp[std::vector<long>(r.begin() + from, r.end())] += 1.0 / static_cast<double>(rows.size());
    double tv = 0, covered = 0;
    for (const auto& [x, pe] : emp) {
        double pp = 1;
        for (std::size_t i = 0; i < x.size(); ++i) pp *= poisson_pmf(x[i], means[from + i]);
        covered += pp;
        tv += std::fabs(pe - pp);
    }
    tv += std::max(0.0, 1.0 - covered);
    return tv / 2;
}

void summarize(WindowStats& s) {
    const std::size_t K = static_cast<std::size_t>(s.d) + 1;
    s.mean_X.assign(K, 0);
    s.var_X.assign(K, 0);
    s.se_X.assign(K, 0);
    s.mean_Xhat.assign(K, 0);
    s.se_Xhat.assign(K, 0);
    const double T = static_cast<double>(s.trials);
    for (std::size_t k = static_cast<std::size_t>(s.j); k < K; ++k) {
        double m = 0, mh = 0;
        for (long t = 0; t < s.trials; ++t) {
            m += static_cast<double>(s.X[t][k]);
            mh += static_cast<double>(s.Xhat[t][k]);
        }
        m /= T;
        mh /= T;
        double v = 0, vh = 0;
        for (long t = 0; t < s.trials; ++t) {
            v += (s.X[t][k] - m) * (s.X[t][k] - m);
            vh += (s.Xhat[t][k] - mh) * (s.Xhat[t][k] - mh);
        }
        v = s.trials > 1 ? v / (T - 1) : 0;
        vh = s.trials > 1 ? vh / (T - 1) : 0;
        s.mean_X[k] = m;
        s.var_X[k] = v;
        s.se_X[k] = std::sqrt(v / T);
        s.mean_Xhat[k] = mh;
        s.se_Xhat[k] = std::sqrt(vh / T);
    }
}

WindowStats run_snapshots(int n, const DirectionParams& dp, double tau, long trials, std::uint64_t seed,
                          int threads, bool with_cohomology, std::vector<char>* connected) {
    if (trials < 1) fail(ErrorKind::InvalidInput, "trials must be at least 1");
    dp.validate();
    const ProbabilityVector pv = probabilities_at(dp, n, tau);
    WindowStats s;
    s.n = n;
    s.d = dp.d;
    s.j = dp.j;
    s.tau = tau;
    s.trials = trials;
    s.seed = seed;
    s.X.assign(trials, {});
    s.Xhat.assign(trials, {});
    if (connected) connected->assign(trials, 0);
    parallel_for(trials, threads, [&](long t) {
        CounterRng rng = CounterRng::stream(seed, static_cast<std::uint64_t>(t));
        const auto gens = sample_generators(n, pv.p, rng);
        auto counts = count_obstructions(n, dp.d, dp.j, gens);
        s.X[t] = std::move(counts.X);
        s.Xhat[t] = std::move(counts.Xhat);
        if (with_cohomology && connected)
            (*connected)[t] = is_cohom_connected(Complex::from_generators(n, dp.d, gens), dp.j, Ring::f2());
    });
    summarize(s);
    s.exact_mean.assign(static_cast<std::size_t>(dp.d) + 1, 0);
    for (int k = std::max(dp.j, 1); k <= dp.d; ++k) s.exact_mean[k] = exact_expected_Xjk(pv, dp.j, k);
    return s;
}

}  // namespace

WindowStats mc_expectations(int n, const DirectionParams& dp, double tau, long trials, std::uint64_t seed,
                            int threads) {
    return run_snapshots(n, dp, tau, trials, seed, threads, false, nullptr);
}

WindowStats mc_poisson_window(int n, const DirectionParams& dp, double c, long trials, std::uint64_t seed,
                              int threads, bool with_cohomology) {
    const double tau = 1.0 + c / std::log(static_cast<double>(n));
    std::vector<char> connected;
    WindowStats s = run_snapshots(n, dp, tau, trials, seed, threads, with_cohomology, &connected);
    const auto rep = lambda_mu_nu(dp, n);
    s.k_bar = rep.k_bar;
    s.theory_mean = critical_window_expectation(dp, n, c);
    const std::size_t K = static_cast<std::size_t>(dp.d) + 1;
    s.tv_exact.assign(K, 0);
    s.tv_theory.assign(K, 0);
    for (std::size_t k = static_cast<std::size_t>(dp.j); k < K; ++k) {
        std::vector<long> col(trials);
        for (long t = 0; t < trials; ++t) col[t] = s.X[t][k];
        s.tv_exact[k] = tv_to_poisson(col, s.exact_mean[k]);
        s.tv_theory[k] = tv_to_poisson(col, s.theory_mean[k]);
    }
    s.tv_joint_exact = tv_joint(s.X, dp.j, s.exact_mean);
    s.tv_joint_theory = tv_joint(s.X, dp.j, s.theory_mean);
    long none = 0;
    for (long t = 0; t < trials; ++t)
        none += std::all_of(s.X[t].begin() + dp.j, s.X[t].end(), [](long x) { return x == 0; });
    s.pr_no_M = static_cast<double>(none) / static_cast<double>(trials);
    double total = 0;
    for (std::size_t k = static_cast<std::size_t>(dp.j); k < K; ++k) total += s.exact_mean[k];
    s.pr_no_M_predicted = std::exp(-total);
    if (with_cohomology) {
        const long conn = std::count(connected.begin(), connected.end(), 1);
        s.pr_connected = static_cast<double>(conn) / static_cast<double>(trials);
        s.pr_connected_predicted = std::exp(-E_constant(dp, n, c));
    }
    return s;
}

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return NAN;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

bool top_connected(int n, const std::vector<Simplex>& gens) {
    std::vector<int> parent(static_cast<std::size_t>(n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int groups = n;
    for (const auto& g : gens)
        for (int i = 1; i < g.size(); ++i) {
            int a = find(g[0]), b = find(g[i]);
            if (a != b) {
                parent[b] = a;
                --groups;
            }
        }
    return groups == 1;
}

constexpr std::size_t kSweepCohomologyLimit = 1500000000;  // (#j-simplices) x (#(j+1)-simplices)

}  // namespace

std::vector<SweepRow> threshold_sweep(const std::vector<int>& n_list, const DirectionParams& dp, long trials,
                                      std::uint64_t seed, const std::vector<double>& tau_grid, int threads) {
    if (trials < 1) fail(ErrorKind::InvalidInput, "trials must be at least 1");
    if (tau_grid.empty()) fail(ErrorKind::InvalidInput, "empty tau grid");
    dp.validate();
    std::vector<SweepRow> rows;
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const int n = n_list[ni];
        const double logn = std::log(static_cast<double>(n));
        const double cap = std::max(*std::max_element(tau_grid.begin(), tau_grid.end()), 1.0 + 6.0 / logn);
        const std::size_t G = tau_grid.size();
        std::vector<std::vector<signed char>> top(trials, std::vector<signed char>(G, 0));
        std::vector<std::vector<signed char>> hz(trials, std::vector<signed char>(G, -1));
        std::vector<double> tstar(trials, NAN);
        parallel_for(trials, threads, [&](long t) {
            const std::uint64_t s = mix64(seed ^ mix64(static_cast<std::uint64_t>(ni) * 0x9e37ULL + 17));
            const ProcessTrace tr = sample_process(n, dp, CounterRng::stream(s, static_cast<std::uint64_t>(t)).next(), cap);
            const auto rep = hitting_time(tr, dp.j);
            tstar[t] = rep.tau_star;
            for (std::size_t g = 0; g < G; ++g) {
                const auto gens = generators_up_to(tr, std::min(tau_grid[g], tr.tau_cap));
                top[t][g] = top_connected(n, gens);
                // An Mhat copy certifies nonvanishing cohomology without elimination.
                const auto counts = count_obstructions(n, dp.d, dp.j, gens);
                long hats = 0;
                for (long x : counts.Xhat) hats += x;
                if (hats > 0) {
                    hz[t][g] = 0;
                    continue;
                }
                const Complex c = Complex::from_generators(n, dp.d, gens);
                if (c.count(dp.j) * std::max<std::size_t>(1, c.count(dp.j + 1)) > kSweepCohomologyLimit) continue;
                hz[t][g] = cohomology(c, dp.j, Ring::f2()).vanishes();
            }
        });
        const double med = median(tstar);
        for (std::size_t g = 0; g < G; ++g) {
            SweepRow r;
            r.n = n;
            r.tau = tau_grid[g];
            r.trials = trials;
            long tc = 0, hzero = 0, known = 0;
            for (long t = 0; t < trials; ++t) {
                tc += top[t][g];
                if (hz[t][g] >= 0) {
                    ++known;
                    hzero += hz[t][g];
                }
            }
            r.pr_top_connected = static_cast<double>(tc) / static_cast<double>(trials);
            if (known == trials) r.pr_Hj_zero = static_cast<double>(hzero) / static_cast<double>(trials);
            r.median_tau_star = med;
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace rsc
