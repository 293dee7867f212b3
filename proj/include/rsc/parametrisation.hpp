#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace rsc {

using Rational = boost::rational<long long>;

Rational parse_rational(const std::string& s);  // "3", "-1/2", "0.25"
std::string to_string(const Rational& r);
double to_double(const Rational& r);

// beta(n) = value                         for Constant
//         = scale * log log n + offset    for LogLog
struct BetaSpec {
    enum class Form { Zero, Constant, LogLog };
    Form form = Form::Zero;
    double value = 0;
    double scale = 0;
    double offset = 0;

    static BetaSpec zero() { return {}; }
    static BetaSpec constant(double v) { return {Form::Constant, v, 0, 0}; }
    static BetaSpec loglog(double scale, double offset = 0) { return {Form::LogLog, 0, scale, offset}; }

    double eval(double n) const;
    BetaSpec scaled(double f) const;
    // Coefficient of log log n in beta(n).
    double loglog_coefficient() const { return form == Form::LogLog ? scale : 0.0; }
    bool is_zero() const;
};

struct DirectionComponent {
    bool zero = true;
    Rational alpha{0};
    Rational gamma{0};
    BetaSpec beta;
};

// Exponents of p-bar_k = (alpha_k log n + beta_k(n)) (k-j)! / n^(k-j+gamma_k), k = 1..d.
// Components with k < j must be zero.
struct DirectionParams {
    int d = 0;
    int j = 0;
    std::vector<DirectionComponent> comp;  // comp[k], k = 1..d; comp[0] unused

    DirectionParams() = default;
    DirectionParams(int d, int j) : d(d), j(j), comp(static_cast<std::size_t>(d) + 1) {}

    DirectionComponent& at(int k) { return comp.at(static_cast<std::size_t>(k)); }
    const DirectionComponent& at(int k) const { return comp.at(static_cast<std::size_t>(k)); }
    bool active(int k) const { return !at(k).zero; }

    // Throws InvalidInput when the admissibility conditions fail.
    void validate() const;

    // Key-value text: "d = 2", "j = 1", "k2.alpha = 1", "k2.gamma = 0",
    // "k2.beta_form = loglog", "k2.beta_scale = 0.5", "k2.beta_offset = -0.3", "k1.zero = true".
    static DirectionParams parse(const std::string& text);
    std::string to_config() const;
};

// The standard critical direction in which only the top dimension is active, tuned so
// that mu + nu = 0 exactly for every n.
DirectionParams default_critical_direction(int d, int j);

struct ProbabilityVector {
    double n = 0;
    std::vector<double> p;    // p[k], clamped to [0,1]; p[0] unused
    std::vector<double> raw;  // unclamped values
};

ProbabilityVector evaluate_pbar(const DirectionParams& dp, double n);
ProbabilityVector probabilities_at(const DirectionParams& dp, double n, double tau);
ProbabilityVector make_probabilities(double n, std::vector<double> p);

struct KTerms {
    int k = 0;
    Rational lambda{0};
    double mu = 0;
    double nu = 0;
    bool mu_bounded = false;
    double value = 0;  // lambda log n + mu + nu
};

struct CriticalityReport {
    double n = 0;
    int j = 0;
    std::vector<KTerms> terms;  // one entry per active k with j <= k <= d
    std::vector<int> critical_set;
    std::optional<int> k_bar;
    std::optional<int> k0;
    bool satisfies_C1 = false;
    bool satisfies_C2 = false;
    bool is_critical = false;

    const KTerms* find(int k) const;
};

CriticalityReport lambda_mu_nu(const DirectionParams& dp, double n);
inline CriticalityReport is_critical_direction(const DirectionParams& dp, double n) {
    return lambda_mu_nu(dp, n);
}

double q_bar(const ProbabilityVector& pv, int j);

double log_expected_Xjk(const ProbabilityVector& pv, int j, int k);
double exact_expected_Xjk(const ProbabilityVector& pv, int j, int k);

// Entries indexed by k (size d+1); zero outside the critical set.
std::vector<double> critical_window_expectation(const DirectionParams& dp, double n, double c);
double E_constant(const DirectionParams& dp, double n, double c);

struct ScaledParameters {
    std::vector<double> alpha, beta, gamma, mu, nu;  // indexed by k
    std::vector<Rational> lambda;
};

ScaledParameters scale_parameters(const DirectionParams& dp, double n, double xi);

struct Rescaled {
    std::vector<Rational> etas;  // one per degree step, from j down to the target
    DirectionParams params;
};

Rescaled rescale_to_lower_critical(const DirectionParams& dp, int target_degree);

}  // namespace rsc
