#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rsc/cohomology.hpp"
#include "rsc/complex.hpp"
#include "rsc/parametrisation.hpp"

namespace rsc {

// Counter-based generator: output i of stream s is a fixed mix of (key(s), i), so any
// trial can be regenerated independently of the others.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}
    static CounterRng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next();
    double uniform();          // [0, 1)
    double uniform_open0();    // (0, 1]

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

inline constexpr double kDefaultEventGuard = 6e7;

// Generators of G(n, p) for the given clamped probabilities: every (k+1)-set is kept
// independently with probability p[k]. Output sorted by size then lexicographically.
std::vector<Simplex> sample_generators(int n, const std::vector<double>& p, CounterRng& rng,
                                       double guard = kDefaultEventGuard);

struct Event {
    Simplex K;
    double tau;
};

struct ProcessTrace {
    int n = 0;
    int d = 0;
    DirectionParams direction;
    std::vector<double> pbar;  // indexed by k
    std::uint64_t seed = 0;
    double tau_max = 0;
    double tau_cap = 0;  // only sets with tau_K <= tau_cap were sampled
    std::vector<Event> events;

    bool truncated() const { return tau_cap < tau_max; }
    double birth_time(const Event& e) const { return e.tau * pbar[static_cast<std::size_t>(e.K.dim())]; }
};

// tau_cap defaults to tau_max = 1/pbar_d; a smaller cap samples only the births that can
// matter up to that time, which is exact for every snapshot with tau <= tau_cap. An infinite
// cap records a birth time for every set.
ProcessTrace sample_process(int n, const DirectionParams& dp, std::uint64_t seed,
                            std::optional<double> tau_cap = std::nullopt,
                            double guard = kDefaultEventGuard);

// Trace from an explicit event list (sorted here; ties broken lexicographically).
ProcessTrace scripted_trace(int n, int d, std::vector<Event> events);

Complex snapshot(const ProcessTrace& tr, double tau);
std::vector<Simplex> generators_up_to(const ProcessTrace& tr, double tau);

struct HittingReport {
    double tau_prime = 0;
    double tau_star = 0;
    int ell = -1;
    bool no_copy = false;   // no copy of Mhat ever appeared
    bool censored = false;  // a copy survives past the sampled horizon
    std::optional<double> tau_doubleprime;
};

// Interval method: each (K, C) carries the time window on which it is a copy of M and the
// later window on which a shell makes it a copy of Mhat.
HittingReport hitting_time(const ProcessTrace& tr, int j);
// Reference method: rebuild the complex after every event and rescan. Small traces only.
HittingReport hitting_time_replay(const ProcessTrace& tr, int j);

double tau_prime(int n, int d);

struct Interval {
    double begin;
    double end;  // +inf for the final interval
};

inline constexpr std::size_t kReplayEventGuard = 20000;

std::vector<Interval> connectedness_intervals(const ProcessTrace& tr, int j, const Ring& ring);

// Copies of M and Mhat in the complex generated by gens, counted without building it.
struct ObstructionCounts {
    std::vector<long> X;     // indexed by k, j <= k <= d
    std::vector<long> Xhat;
};

ObstructionCounts count_obstructions(int n, int d, int j, const std::vector<Simplex>& gens);

struct WindowStats {
    int n = 0, d = 0, j = 0;
    double tau = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<long>> X, Xhat;  // [trial][k]
    std::vector<double> mean_X, var_X, se_X, mean_Xhat, se_Xhat;  // indexed by k
    std::vector<double> exact_mean;  // exact finite-n expectation of X_{j,k}
    // Window-only fields.
    std::vector<double> theory_mean;  // critical-window limits
    std::vector<double> tv_exact, tv_theory;  // per-k marginal TV distances
    double tv_joint_exact = 0, tv_joint_theory = 0;
    double pr_no_M = 0, pr_no_M_predicted = 0;
    std::optional<double> pr_connected;
    std::optional<double> pr_connected_predicted;
    std::optional<int> k_bar;
};

WindowStats mc_expectations(int n, const DirectionParams& dp, double tau, long trials,
                            std::uint64_t seed, int threads = 1);

WindowStats mc_poisson_window(int n, const DirectionParams& dp, double c, long trials,
                              std::uint64_t seed, int threads = 1, bool with_cohomology = false);

// Total variation between an empirical sample and Poisson(mean).
double tv_to_poisson(const std::vector<long>& sample, double mean);

struct SweepRow {
    int n = 0;
    double tau = 0;
    long trials = 0;
    double pr_top_connected = 0;
    std::optional<double> pr_Hj_zero;
    double median_tau_star = 0;
};

std::vector<SweepRow> threshold_sweep(const std::vector<int>& n_list, const DirectionParams& dp,
                                      long trials, std::uint64_t seed,
                                      const std::vector<double>& tau_grid, int threads = 1);

// Runs fn(t) for t in [0, count) over the requested number of threads.
void parallel_for(long count, int threads, const std::function<void(long)>& fn);

}  // namespace rsc
