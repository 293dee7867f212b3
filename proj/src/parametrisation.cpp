#include "rsc/parametrisation.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "rsc/error.hpp"

namespace rsc {

namespace {

constexpr double kCriticalTol = 1e-9;

// Neumaier summation.
struct Accumulator {
    long double sum = 0, comp = 0;
    void add(long double x) {
        long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    long double value() const { return sum + comp; }
};

long double binom_ld(long double n, int k) {
    if (k < 0 || n < k) return 0;
    long double r = 1;
    for (int t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
    return std::round(r);
}

double log_binom(double n, int k) {
    long double r = 0;
    for (int t = 0; t < k; ++t) r += std::log(static_cast<long double>(n - t)) - std::log(static_cast<long double>(t + 1));
    return static_cast<double>(r);
}

double log_factorial(int m) {
    double r = 0;
    for (int t = 2; t <= m; ++t) r += std::log(static_cast<double>(t));
    return r;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(ErrorKind::InvalidInput, "cannot parse " + what + " from '" + s + "'");
    }
}

}  // namespace

Rational parse_rational(const std::string& raw) {
    const std::string s = trim(raw);
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            std::size_t u1 = 0, u2 = 0;
            const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
            long long num = std::stoll(a, &u1), den = std::stoll(b, &u2);
            if (u1 != a.size() || u2 != b.size() || den == 0) throw std::invalid_argument(s);
            return Rational(num, den);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            const std::string frac = s.substr(dot + 1);
            if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument(s);
            long long den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            std::string whole = s.substr(0, dot);
            const bool neg = !whole.empty() && whole[0] == '-';
            if (whole.empty() || whole == "-" || whole == "+") whole += "0";
            std::size_t u = 0;
            long long w = std::stoll(whole, &u);
            if (u != whole.size()) throw std::invalid_argument(s);
            long long f = frac.empty() ? 0 : std::stoll(frac);
            long long num = std::llabs(w) * den + f;
            return Rational(neg ? -num : num, den);
        }
        std::size_t u = 0;
        long long v = std::stoll(s, &u);
        if (u != s.size()) throw std::invalid_argument(s);
        return Rational(v);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorKind::InvalidInput, "cannot parse rational from '" + raw + "'");
    }
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

double BetaSpec::eval(double n) const {
    switch (form) {
        case Form::Zero: return 0;
        case Form::Constant: return value;
        case Form::LogLog: return scale * std::log(std::log(n)) + offset;
    }
    return 0;
}

BetaSpec BetaSpec::scaled(double f) const {
    BetaSpec b = *this;
    b.value *= f;
    b.scale *= f;
    b.offset *= f;
    return b;
}

bool BetaSpec::is_zero() const {
    switch (form) {
        case Form::Zero: return true;
        case Form::Constant: return value == 0;
        case Form::LogLog: return scale == 0 && offset == 0;
    }
    return true;
}

void DirectionParams::validate() const {
    if (d < 1 || d >= 8) fail(ErrorKind::InvalidInput, "d must lie in [1, 7]");
    if (j < 0 || j > d) fail(ErrorKind::InvalidInput, "j must lie in [0, d]");
    if (comp.size() != static_cast<std::size_t>(d) + 1) fail(ErrorKind::InvalidInput, "component count does not match d");
    bool has_k0 = false;
    for (int k = 1; k <= d; ++k) {
        const auto& c = at(k);
        if (c.zero) continue;
        const std::string where = "component k=" + std::to_string(k) + ": ";
        if (k < j) fail(ErrorKind::InvalidInput, where + "only k >= j may be active");
        if (c.alpha < 0 || c.gamma < 0) fail(ErrorKind::InvalidInput, where + "alpha and gamma must be nonnegative");
        if (c.alpha != Rational(0) && c.gamma != Rational(0)) fail(ErrorKind::InvalidInput, where + "one of alpha, gamma must be zero");
        if (c.alpha == Rational(0)) {
            const bool positive = (c.beta.form == BetaSpec::Form::Constant && c.beta.value > 0) ||
                                  (c.beta.form == BetaSpec::Form::LogLog &&
                                   (c.beta.scale > 0 || (c.beta.scale == 0 && c.beta.offset > 0)));
            if (!positive) fail(ErrorKind::InvalidInput, where + "alpha = 0 needs a positive beta");
        }
        if (k > j && c.alpha > 0) has_k0 = true;
    }
    if (!has_k0) fail(ErrorKind::InvalidInput, "no k in [j+1, d] with alpha_k > 0");
}

DirectionParams DirectionParams::parse(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::InvalidInput, "direction line " + std::to_string(lineno) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    if (!kv.count("d") || !kv.count("j")) fail(ErrorKind::InvalidInput, "direction needs d and j");
    const int d = static_cast<int>(parse_double(kv["d"], "d"));
    const int j = static_cast<int>(parse_double(kv["j"], "j"));
    if (d < 1 || d >= 8) fail(ErrorKind::InvalidInput, "d must lie in [1, 7]");
    DirectionParams dp(d, j);
    std::vector<char> touched(static_cast<std::size_t>(d) + 1, 0);
    std::vector<char> explicit_zero(static_cast<std::size_t>(d) + 1, 0);
    std::vector<std::string> forms(static_cast<std::size_t>(d) + 1);
    for (const auto& [key, value] : kv) {
        if (key == "d" || key == "j") continue;
        auto dot = key.find('.');
        if (key.size() < 3 || key[0] != 'k' || dot == std::string::npos)
            fail(ErrorKind::InvalidInput, "unknown direction key '" + key + "'");
        const int k = static_cast<int>(parse_double(key.substr(1, dot - 1), "component index"));
        if (k < 1 || k > d) fail(ErrorKind::InvalidInput, "component index out of range in '" + key + "'");
        const std::string field = key.substr(dot + 1);
        auto& c = dp.at(k);
        touched[k] = 1;
        if (field == "alpha")
            c.alpha = parse_rational(value);
        else if (field == "gamma")
            c.gamma = parse_rational(value);
        else if (field == "beta_form")
            forms[k] = value;
        else if (field == "beta_scale")
            c.beta.scale = parse_double(value, key);
        else if (field == "beta_value")
            c.beta.value = parse_double(value, key);
        else if (field == "beta_offset")
            c.beta.offset = parse_double(value, key);
        else if (field == "zero")
            explicit_zero[k] = (value == "true" || value == "1");
        else
            fail(ErrorKind::InvalidInput, "unknown direction key '" + key + "'");
    }
    for (int k = 1; k <= d; ++k) {
        auto& c = dp.at(k);
        const std::string& f = forms[k];
        if (f.empty() || f == "zero") {
            c.beta = BetaSpec::zero();
        } else if (f == "constant") {
            // The constant may be given either as beta_value or as beta_scale.
            c.beta = BetaSpec::constant(c.beta.value != 0 ? c.beta.value : c.beta.scale);
        } else if (f == "loglog") {
            c.beta = BetaSpec::loglog(c.beta.scale, c.beta.offset);
        } else {
            fail(ErrorKind::InvalidInput, "unknown beta_form '" + f + "'");
        }
        c.zero = !touched[k] || explicit_zero[k] || (c.alpha == Rational(0) && c.beta.is_zero());
    }
    dp.validate();
    return dp;
}

std::string DirectionParams::to_config() const {
    std::ostringstream out;
    out.precision(17);
    out << "d = " << d << "\nj = " << j << "\n";
    for (int k = 1; k <= d; ++k) {
        const auto& c = at(k);
        const std::string p = "k" + std::to_string(k) + ".";
        if (c.zero) {
            out << p << "zero = true\n";
            continue;
        }
        out << p << "alpha = " << to_string(c.alpha) << "\n" << p << "gamma = " << to_string(c.gamma) << "\n";
        switch (c.beta.form) {
            case BetaSpec::Form::Zero: out << p << "beta_form = zero\n"; break;
            case BetaSpec::Form::Constant:
                out << p << "beta_form = constant\n" << p << "beta_value = " << c.beta.value << "\n";
                break;
            case BetaSpec::Form::LogLog:
                out << p << "beta_form = loglog\n"
                    << p << "beta_scale = " << c.beta.scale << "\n"
                    << p << "beta_offset = " << c.beta.offset << "\n";
                break;
        }
    }
    return out.str();
}

DirectionParams default_critical_direction(int d, int j) {
    if (j < 0 || j >= d) fail(ErrorKind::InvalidInput, "default direction needs 0 <= j < d");
    DirectionParams dp(d, j);
    auto& top = dp.at(d);
    top.zero = false;
    const int m = d - j + 1;
    top.alpha = Rational(j + 1, m);  // lambda_d = j + 1 - m * alpha_d = 0
    top.gamma = 0;
    // mu_d = -m beta + log log n, nu_d = -log j! - log m + log alpha_d; choose beta to cancel.
    const double nu = -log_factorial(j) - std::log(static_cast<double>(m)) + std::log(to_double(top.alpha));
    top.beta = BetaSpec::loglog(1.0 / m, nu / m);
    dp.validate();
    return dp;
}

ProbabilityVector evaluate_pbar(const DirectionParams& dp, double n) {
    if (n < dp.d + 2) fail(ErrorKind::InvalidInput, "n must be at least d + 2");
    ProbabilityVector pv;
    pv.n = n;
    pv.p.assign(static_cast<std::size_t>(dp.d) + 1, 0.0);
    pv.raw = pv.p;
    const double logn = std::log(n);
    for (int k = 1; k <= dp.d; ++k) {
        const auto& c = dp.at(k);
        if (c.zero) continue;
        const double base = to_double(c.alpha) * logn + c.beta.eval(n);
        const double val = base * std::exp(log_factorial(k - dp.j) - (k - dp.j + to_double(c.gamma)) * logn);
        if (val < 0)
            fail(ErrorKind::InvalidAtThisN, "p-bar_" + std::to_string(k) + " is negative at this n");
        pv.raw[k] = val;
        pv.p[k] = std::min(val, 1.0);
    }
    return pv;
}

ProbabilityVector probabilities_at(const DirectionParams& dp, double n, double tau) {
    if (tau < 0) fail(ErrorKind::InvalidInput, "tau must be nonnegative");
    ProbabilityVector pv = evaluate_pbar(dp, n);
    for (std::size_t k = 1; k < pv.p.size(); ++k) {
        pv.raw[k] *= tau;
        pv.p[k] = std::min(pv.raw[k], 1.0);
    }
    return pv;
}

ProbabilityVector make_probabilities(double n, std::vector<double> p) {
    ProbabilityVector pv;
    pv.n = n;
    for (double x : p)
        if (x < 0 || x > 1) fail(ErrorKind::InvalidInput, "probabilities must lie in [0, 1]");
    pv.p = p;
    pv.raw = std::move(p);
    return pv;
}

const KTerms* CriticalityReport::find(int k) const {
    for (const auto& t : terms)
        if (t.k == k) return &t;
    return nullptr;
}

CriticalityReport lambda_mu_nu(const DirectionParams& dp, double n) {
    dp.validate();
    const int j = dp.j;
    const ProbabilityVector pv = evaluate_pbar(dp, n);
    const double logn = std::log(n), loglogn = std::log(logn);

    Rational alpha_sum(0);
    Accumulator beta_sum;
    double beta_loglog = 0;  // log log n coefficient of sum beta_i / n^gamma_i
    for (int i = j + 1; i <= dp.d; ++i) {
        const auto& c = dp.at(i);
        if (c.zero) continue;
        alpha_sum += c.alpha;
        beta_sum.add(c.beta.eval(n) * std::exp(-to_double(c.gamma) * logn));
        if (c.gamma == Rational(0)) beta_loglog += c.beta.loglog_coefficient();
    }

    CriticalityReport rep;
    rep.n = n;
    rep.j = j;
    for (int k = j; k <= dp.d; ++k) {
        const auto& c = dp.at(k);
        if (k == 0 || c.zero) continue;
        const int m = k - j + 1;
        KTerms t;
        t.k = k;
        t.lambda = Rational(j + 1) - c.gamma - Rational(m) * alpha_sum;

        double case_term = 0, case_loglog = 0;
        bool unbounded_case = false;
        if (pv.raw[k] > 1) {
            case_term = 0;
        } else if (c.alpha != Rational(0)) {
            case_term = loglogn;
            case_loglog = 1;
        } else {
            const double b = c.beta.eval(n);
            if (b <= 0) fail(ErrorKind::InvalidInput, "log of nonpositive beta_" + std::to_string(k));
            case_term = std::log(b);
            unbounded_case = c.beta.loglog_coefficient() != 0;
        }
        t.mu = -m * static_cast<double>(beta_sum.value()) + case_term;
        const double loglog_coef = -m * beta_loglog + case_loglog;
        t.mu_bounded = !unbounded_case && std::fabs(loglog_coef) < 1e-12;

        if (k == j)
            t.nu = -log_factorial(j + 1);
        else if (c.alpha != Rational(0))
            t.nu = -log_factorial(j) - std::log(static_cast<double>(m)) + std::log(to_double(c.alpha));
        else
            t.nu = -log_factorial(j) - std::log(static_cast<double>(m));

        t.value = to_double(t.lambda) * logn + t.mu + t.nu;
        rep.terms.push_back(t);
    }

    rep.satisfies_C1 = true;
    Rational max_lambda(-1000000);
    for (const auto& t : rep.terms) {
        if (t.value / logn > kCriticalTol) rep.satisfies_C1 = false;
        if (std::fabs(t.value) / logn <= kCriticalTol && !rep.k_bar) rep.k_bar = t.k;
        if (t.lambda == Rational(0) && t.mu_bounded) rep.critical_set.push_back(t.k);
        max_lambda = std::max(max_lambda, t.lambda);
    }
    rep.satisfies_C2 = rep.k_bar.has_value();
    for (int k = j + 1; k <= dp.d; ++k)
        if (dp.active(k) && dp.at(k).alpha > 0) {
            rep.k0 = k;
            break;
        }
    rep.is_critical = rep.satisfies_C1 && rep.satisfies_C2 && max_lambda == Rational(0) && !rep.critical_set.empty();
    return rep;
}

double q_bar(const ProbabilityVector& pv, int j) {
    const int d = static_cast<int>(pv.p.size()) - 1;
    Accumulator acc;
    for (int k = j + 1; k <= d; ++k) {
        const double p = pv.p[k];
        if (p == 0) continue;
        const long double count = binom_ld(pv.n - j - 1, k - j);
        if (count == 0) continue;
        if (p >= 1) return 0.0;
        acc.add(count * std::log1p(-static_cast<long double>(p)));
    }
    return static_cast<double>(std::exp(acc.value()));
}

double log_expected_Xjk(const ProbabilityVector& pv, int j, int k) {
    const int d = static_cast<int>(pv.p.size()) - 1;
    if (j < 0 || k < j || k > d || k < 1) fail(ErrorKind::InvalidInput, "need j <= k <= d");
    const double n = pv.n;
    const double pk = pv.p[k];
    if (pk == 0 || n < k + 1) return -INFINITY;
    Accumulator acc;
    acc.add(log_binom(n, k + 1));
    if (k > j) acc.add(log_binom(k + 1, j));
    acc.add(std::log(static_cast<long double>(pk)));
    const int petals = (k == j) ? 1 : k - j + 1;
    for (int i = j + 1; i <= d; ++i) {
        const double p = pv.p[i];
        if (p == 0) continue;
        // (i+1)-sets containing some petal and not inside K, by inclusion-exclusion over
        // petal subsets: a union of m petals has j + m vertices (or j + 1 when k = j).
        long double count = 0;
        for (int m = 1; m <= petals; ++m) {
            const int u = (k == j) ? j + 1 : j + m;
            const long double term =
                binom_ld(petals, m) * (binom_ld(n - u, i + 1 - u) - binom_ld(k + 1 - u, i + 1 - u));
            count += (m % 2) ? term : -term;
        }
        if (count == 0) continue;
        if (p >= 1) return -INFINITY;
        acc.add(count * std::log1p(-static_cast<long double>(p)));
    }
    return static_cast<double>(acc.value());
}

double exact_expected_Xjk(const ProbabilityVector& pv, int j, int k) {
    return std::exp(log_expected_Xjk(pv, j, k));
}

std::vector<double> critical_window_expectation(const DirectionParams& dp, double n, double c) {
    const auto rep = lambda_mu_nu(dp, n);
    std::vector<double> out(static_cast<std::size_t>(dp.d) + 1, 0.0);
    for (int k : rep.critical_set) {
        const auto* t = rep.find(k);
        out[k] = std::exp(t->mu + t->nu + c * (to_double(dp.at(k).gamma) - dp.j - 1));
    }
    return out;
}

double E_constant(const DirectionParams& dp, double n, double c) {
    const auto rep = lambda_mu_nu(dp, n);
    long double sum = 0;
    for (int k : rep.critical_set) {
        const auto* t = rep.find(k);
        sum += std::exp(static_cast<long double>(t->mu + t->nu + c * to_double(dp.at(k).gamma)));
    }
    return static_cast<double>(std::exp(-static_cast<long double>(c) * (dp.j + 1)) * sum);
}

ScaledParameters scale_parameters(const DirectionParams& dp, double n, double xi) {
    if (std::fabs(xi) >= 1) fail(ErrorKind::InvalidInput, "|xi| must be below 1");
    const auto rep = lambda_mu_nu(dp, n);
    const double logn = std::log(n);
    double alpha_sum = 0;
    for (int i = dp.j + 1; i <= dp.d; ++i)
        if (dp.active(i)) alpha_sum += to_double(dp.at(i).alpha);
    ScaledParameters s;
    const std::size_t sz = static_cast<std::size_t>(dp.d) + 1;
    s.alpha.assign(sz, 0);
    s.beta.assign(sz, 0);
    s.gamma.assign(sz, 0);
    s.mu.assign(sz, 0);
    s.nu.assign(sz, 0);
    s.lambda.assign(sz, Rational(0));
    for (int k = 1; k <= dp.d; ++k) {
        if (!dp.active(k)) continue;
        const auto& c = dp.at(k);
        s.alpha[k] = to_double(c.alpha);
        s.gamma[k] = to_double(c.gamma);
        s.beta[k] = (1 + xi) * c.beta.eval(n) + s.alpha[k] * xi * logn;
        if (const auto* t = rep.find(k)) {
            s.lambda[k] = t->lambda;
            s.nu[k] = t->nu;
            s.mu[k] = t->mu - (k - dp.j + 1) * xi * alpha_sum * logn;
        }
    }
    return s;
}

Rescaled rescale_to_lower_critical(const DirectionParams& dp, int target_degree) {
    dp.validate();
    if (target_degree < 0 || target_degree >= dp.j)
        fail(ErrorKind::InvalidInput, "target degree must lie below j");
    Rescaled out;
    DirectionParams cur = dp;
    while (cur.j > target_degree) {
        const int j = cur.j;
        Rational S(0);
        for (int i = std::max(j, 1); i <= cur.d; ++i)
            if (cur.active(i)) S += cur.at(i).alpha / Rational(i - j + 1);
        if (S <= 0) fail(ErrorKind::Infeasible, "no positive alpha to rescale with");
        // lambda'_k(eta) = j - gamma_k - eta (k - j + 2) S decreases in eta; the largest root
        // makes the maximum over k vanish.
        std::optional<Rational> eta;
        for (int k = std::max(j - 1, 1); k <= cur.d; ++k) {
            if (!cur.active(k)) continue;
            const Rational root = (Rational(j) - cur.at(k).gamma) / (Rational(k - j + 2) * S);
            if (!eta || root > *eta) eta = root;
        }
        if (!eta || *eta <= 0) fail(ErrorKind::Infeasible, "no positive eta solves the rescaling");
        DirectionParams next(cur.d, j - 1);
        for (int k = 1; k <= cur.d; ++k) {
            if (!cur.active(k)) continue;
            const auto& c = cur.at(k);
            auto& nc = next.at(k);
            nc.zero = false;
            nc.alpha = *eta * c.alpha / Rational(k - j + 1);
            nc.gamma = c.gamma;
            nc.beta = c.beta.scaled(to_double(*eta) / (k - j + 1));
        }
        next.validate();
        out.etas.push_back(*eta);
        cur = next;
    }
    out.params = cur;
    return out;
}

}  // namespace rsc
