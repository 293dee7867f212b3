// rsc: sample, analyse and run experiments on the random simplicial complex process.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsc/cohomology.hpp"
#include "rsc/error.hpp"
#include "rsc/io.hpp"
#include "rsc/obstructions.hpp"
#include "rsc/parametrisation.hpp"
#include "rsc/process.hpp"

using namespace rsc;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

struct Options {
    std::vector<int> n;
    int d = 2;
    int j = 1;
    std::string ring = "f2";
    std::vector<double> tau;
    std::optional<double> c;
    long trials = 1;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string direction_file;
    std::vector<std::string> sets;
    std::string out;
    std::string format = "jsonl";
    std::optional<double> cap;
    std::string complex_file;
    bool cohomology = false;
    bool events = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Direction from --direction (if any), then --set overrides; otherwise the default
// critical direction for --d and --j.
DirectionParams load_direction(const Options& o, bool d_given, bool j_given) {
    std::string text;
    if (!o.direction_file.empty()) {
        text = read_file(o.direction_file);
    } else {
        text = default_critical_direction(o.d, o.j).to_config();
    }
    for (const auto& s : o.sets) {
        if (s.find('=') == std::string::npos) fail(ErrorKind::InvalidInput, "--set expects key=value, got '" + s + "'");
        text += "\n" + s;
    }
    DirectionParams dp = DirectionParams::parse(text);
    if ((d_given && dp.d != o.d) || (j_given && dp.j != o.j))
        fail(ErrorKind::InvalidInput, "--d/--j disagree with the direction file");
    dp.validate();
    return dp;
}

int single_n(const Options& o) {
    if (o.n.size() != 1) fail(ErrorKind::InvalidInput, "this command takes exactly one --n");
    if (o.n[0] < 1) fail(ErrorKind::InvalidInput, "--n must be positive");
    return o.n[0];
}

double single_tau(const Options& o, double fallback) {
    if (o.tau.empty()) return fallback;
    if (o.tau.size() != 1) fail(ErrorKind::InvalidInput, "this command takes one --tau");
    if (!(o.tau[0] >= 0)) fail(ErrorKind::InvalidInput, "--tau must be nonnegative");
    return o.tau[0];
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) fail(ErrorKind::InvalidInput, "cannot write " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

Json config_echo(const std::string& command, const Options& o, const std::optional<DirectionParams>& dp) {
    Json cfg = {{"command", command}, {"seed", o.seed}, {"format", o.format}};
    if (!o.n.empty()) cfg["n"] = o.n.size() == 1 ? Json(o.n[0]) : Json(o.n);
    if (!o.tau.empty()) cfg["tau"] = o.tau.size() == 1 ? Json(o.tau[0]) : Json(o.tau);
    if (o.c) cfg["c"] = *o.c;
    if (o.cap) cfg["cap"] = *o.cap;
    cfg["trials"] = o.trials;
    cfg["threads"] = o.threads;
    cfg["ring"] = o.ring;
    if (dp) {
        cfg["d"] = dp->d;
        cfg["j"] = dp->j;
        cfg["direction"] = dp->to_config();
    }
    if (!o.complex_file.empty()) cfg["complex_file"] = o.complex_file;
    return cfg;
}

// JSON-lines files open with a config record; CSV files with a commented copy of it.
void write_header(std::ostream& os, const Options& o, const Json& cfg) {
    if (o.format == "csv")
        os << "# config " << cfg.dump() << "\n";
    else
        os << Json{{"record", "config"}, {"config", cfg}}.dump() << "\n";
}

std::string csv_num(double x) {
    if (std::isnan(x)) return "";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream ss;
    ss.precision(10);
    ss << x;
    return ss.str();
}

std::string rational_str(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string csv_opt(const std::optional<double>& x) { return x ? csv_num(*x) : ""; }

Json opt_json(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

// ---------------------------------------------------------------------------------------

int cmd_gen(const Options& o, const DirectionParams& dp) {
    const int n = single_n(o);
    const double tau = single_tau(o, 1.0);
    const ProcessTrace tr = sample_process(n, dp, o.seed, tau);
    Json out = to_json(snapshot(tr, tau));
    out["config"] = config_echo("gen", o, dp);
    Output dst(o.out);
    dst.os() << out.dump() << "\n";
    return 0;
}

int cmd_analyze(const Options& o) {
    const Complex c = parse_complex(read_file(o.complex_file));
    const Ring ring = Ring::parse(o.ring);
    if (o.j < 0 || o.j > c.d()) fail(ErrorKind::InvalidInput, "--j must lie in [0, d]");
    Json rep;
    Options echo = o;
    echo.n = {c.n()};
    rep["config"] = config_echo("analyze", echo, std::nullopt);
    rep["config"]["j"] = o.j;
    rep["n"] = c.n();
    rep["d"] = c.d();
    Json coh = Json::array();
    for (int i = 0; i <= o.j; ++i) coh.push_back(to_json(cohomology(c, i, ring)));
    rep["cohomology"] = coh;
    rep["cohom_connected"] = is_cohom_connected(c, o.j, ring);
    Json M = Json::array(), Mhat = Json::array();
    for (int k = std::max(o.j, 1); k <= c.d(); ++k) {
        for (const auto& m : find_M_copies(c, o.j, k)) M.push_back(to_json(m));
        for (const auto& m : find_Mhat_copies(c, o.j, k)) Mhat.push_back(to_json(m));
    }
    rep["M_copies"] = M;
    rep["Mhat_copies"] = Mhat;
    Json local = Json::array();
    for (const auto& l : find_local_obstacles(c, o.j)) {
        Json ls = Json::array();
        for (const auto& s : l.localised) ls.push_back(to_json(s));
        local.push_back({{"K", to_json(l.K)}, {"localised", ls}});
    }
    rep["local_obstacles"] = local;
    rep["components"] = connected_components(c);
    if (ring.is_field() && c.count(o.j) <= kMaxBadSupportSimplices && o.j >= 1) {
        const auto bad = minimal_bad_support(c, o.j, ring);
        rep["minimal_bad_support"] = bad ? to_json(*bad) : Json(nullptr);
        if (bad) {
            const auto w = is_traversable(c, bad->support());
            rep["traversal"] = w ? to_json(*w) : Json(nullptr);
        }
    }
    Output dst(o.out);
    dst.os() << rep.dump() << "\n";
    return 0;
}

int cmd_process(const Options& o, const DirectionParams& dp) {
    const int n = single_n(o);
    const double cap = o.cap.value_or(1.0 + 6.0 / std::log(std::max(n, 3)));
    Options echo = o;
    echo.cap = cap;
    Output dst(o.out);
    auto& os = dst.os();
    write_header(os, o, config_echo("process", echo, dp));
    if (o.format == "csv")
        os << "trial,seed,events,tau_prime,tau_star,ell,tau_doubleprime,no_copy,censored\n";
    for (long t = 0; t < o.trials; ++t) {
        const std::uint64_t seed = o.trials == 1 ? o.seed : mix64(o.seed ^ mix64(static_cast<std::uint64_t>(t)));
        const ProcessTrace tr = sample_process(n, dp, seed, cap);
        const HittingReport r = hitting_time(tr, dp.j);
        if (o.format == "csv") {
            os << t << "," << seed << "," << tr.events.size() << "," << csv_num(r.tau_prime) << ","
               << csv_num(r.tau_star) << "," << r.ell << "," << csv_opt(r.tau_doubleprime) << "," << r.no_copy << ","
               << r.censored << "\n";
            continue;
        }
        if (o.events)
            for (const auto& e : tr.events)
                os << Json{{"record", "event"}, {"trial", t}, {"tau", e.tau}, {"K", to_json(e.K)}}.dump() << "\n";
        Json rec = {{"record", "hitting"}, {"trial", t}, {"seed", seed}, {"events", tr.events.size()},
                    {"tau_cap", tr.tau_cap}};
        rec.update(to_json(r));
        os << rec.dump() << "\n";
    }
    return 0;
}

int cmd_critical(const Options& o, const DirectionParams& dp) {
    const double n = single_n(o);
    const double c = o.c.value_or(0.0);
    const CriticalityReport r = lambda_mu_nu(dp, n);
    const auto window = r.is_critical ? critical_window_expectation(dp, n, c) : std::vector<double>{};
    const std::optional<double> E = r.is_critical ? std::optional<double>(E_constant(dp, n, c)) : std::nullopt;
    Options echo = o;
    echo.c = c;
    Output dst(o.out);
    auto& os = dst.os();
    write_header(os, o, config_echo("critical", echo, dp));
    if (o.format == "csv") {
        os << "k,lambda,mu,nu,value,window_expectation\n";
        for (const auto& t : r.terms)
            os << t.k << "," << rational_str(t.lambda) << "," << csv_num(t.mu) << "," << csv_num(t.nu) << "," << csv_num(t.value)
               << "," << (window.empty() ? "" : csv_num(window[t.k])) << "\n";
        return 0;
    }
    Json rec = to_json(r);
    rec["record"] = "critical";
    rec["c"] = c;
    rec["E"] = opt_json(E);
    rec["window_expectation"] = window;
    os << rec.dump() << "\n";
    return 0;
}

int cmd_mc(const Options& o, const DirectionParams& dp) {
    const int n = single_n(o);
    if (o.trials < 1) fail(ErrorKind::InvalidInput, "--trials must be at least 1");
    const bool window = o.c.has_value();
    if (window && !o.tau.empty()) fail(ErrorKind::InvalidInput, "give either --tau or --c, not both");
    const double tau = single_tau(o, 1.0);
    const WindowStats s = window ? mc_poisson_window(n, dp, *o.c, o.trials, o.seed, o.threads, o.cohomology)
                                 : mc_expectations(n, dp, tau, o.trials, o.seed, o.threads);
    Options echo = o;
    if (!window) echo.tau = {tau};
    Output dst(o.out);
    auto& os = dst.os();
    write_header(os, o, config_echo("mc", echo, dp));
    auto at = [](const std::vector<double>& v, int k) { return k < static_cast<int>(v.size()) ? v[k] : NAN; };
    if (o.format == "csv") {
        os << "k,mean_X,se_X,var_X,mean_Xhat,se_Xhat,exact_mean,theory_mean,tv_exact,tv_theory\n";
        for (int k = dp.j; k <= dp.d; ++k)
            os << k << "," << csv_num(at(s.mean_X, k)) << "," << csv_num(at(s.se_X, k)) << ","
               << csv_num(at(s.var_X, k)) << "," << csv_num(at(s.mean_Xhat, k)) << "," << csv_num(at(s.se_Xhat, k))
               << "," << csv_num(at(s.exact_mean, k)) << "," << csv_num(at(s.theory_mean, k)) << ","
               << csv_num(at(s.tv_exact, k)) << "," << csv_num(at(s.tv_theory, k)) << "\n";
        return 0;
    }
    for (long t = 0; t < s.trials; ++t)
        os << Json{{"record", "trial"}, {"trial", t}, {"X", s.X[t]}, {"Xhat", s.Xhat[t]}}.dump() << "\n";
    Json sum = {{"record", "summary"},   {"n", n},           {"tau", s.tau},          {"trials", s.trials},
                {"mean_X", s.mean_X},   {"se_X", s.se_X},   {"var_X", s.var_X},      {"mean_Xhat", s.mean_Xhat},
                {"se_Xhat", s.se_Xhat}, {"exact_mean", s.exact_mean}};
    if (window) {
        sum["c"] = *o.c;
        sum["theory_mean"] = s.theory_mean;
        sum["tv_exact"] = s.tv_exact;
        sum["tv_theory"] = s.tv_theory;
        sum["tv_joint_exact"] = s.tv_joint_exact;
        sum["tv_joint_theory"] = s.tv_joint_theory;
        sum["pr_no_M"] = s.pr_no_M;
        sum["pr_no_M_predicted"] = s.pr_no_M_predicted;
        sum["pr_connected"] = opt_json(s.pr_connected);
        sum["pr_connected_predicted"] = opt_json(s.pr_connected_predicted);
        sum["k_bar"] = s.k_bar ? Json(*s.k_bar) : Json(nullptr);
    }
    for (auto& [key, value] : sum.items())
        if (value.is_array())
            for (auto& x : value)
                if (x.is_number_float() && !std::isfinite(x.get<double>())) x = nullptr;
    os << sum.dump() << "\n";
    return 0;
}

int cmd_sweep(const Options& o, const DirectionParams& dp) {
    if (o.n.empty()) fail(ErrorKind::InvalidInput, "sweep needs at least one --n");
    if (o.trials < 1) fail(ErrorKind::InvalidInput, "--trials must be at least 1");
    std::vector<double> grid = o.tau;
    if (grid.empty())
        for (int i = 5; i <= 15; ++i) grid.push_back(i / 10.0);
    const auto rows = threshold_sweep(o.n, dp, o.trials, o.seed, grid, o.threads);
    Options echo = o;
    echo.tau = grid;
    Output dst(o.out);
    auto& os = dst.os();
    write_header(os, o, config_echo("sweep", echo, dp));
    if (o.format == "csv") os << "n,tau,trials,pr_top_connected,pr_Hj_zero,median_tau_star\n";
    for (const auto& r : rows) {
        if (o.format == "csv") {
            os << r.n << "," << csv_num(r.tau) << "," << r.trials << "," << csv_num(r.pr_top_connected) << ","
               << csv_opt(r.pr_Hj_zero) << "," << csv_num(r.median_tau_star) << "\n";
        } else {
            os << Json{{"record", "sweep"},
                       {"n", r.n},
                       {"tau", r.tau},
                       {"trials", r.trials},
                       {"pr_top_connected", r.pr_top_connected},
                       {"pr_Hj_zero", opt_json(r.pr_Hj_zero)},
                       {"median_tau_star", std::isfinite(r.median_tau_star) ? Json(r.median_tau_star) : Json("inf")}}
                      .dump()
               << "\n";
        }
    }
    return 0;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput:
        case ErrorKind::InvalidAtThisN: return kExitUsage;
        case ErrorKind::GuardExceeded:
        case ErrorKind::SearchSpaceTooLarge: return kExitGuard;
        default: return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random simplicial complexes: sampling, cohomology, obstructions and experiments"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool multi_n, bool multi_tau) {
        if (multi_n)
            sub->add_option("--n", o.n, "number of vertices (comma separated list allowed)")->delimiter(',');
        else
            sub->add_option("--n", o.n, "number of vertices")->expected(1);
        sub->add_option("--d", o.d, "top dimension");
        sub->add_option("--j", o.j, "cohomological degree");
        sub->add_option("--direction", o.direction_file, "direction parameter file");
        sub->add_option("--set", o.sets, "direction override key=value (repeatable)");
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--out", o.out, "output path (default stdout)");
        sub->add_option("--format", o.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
        if (multi_tau)
            sub->add_option("--tau", o.tau, "process time(s)")->delimiter(',');
        else
            sub->add_option("--tau", o.tau, "process time")->expected(1);
    };

    auto* gen = app.add_subcommand("gen", "sample one snapshot and write its facets as JSON");
    common(gen, false, false);
    gen->add_option("--ring", o.ring, "ignored; accepted for uniformity");

    auto* analyze = app.add_subcommand("analyze", "cohomology and obstruction report for a complex file");
    analyze->add_option("complex", o.complex_file, "facet JSON file")->required();
    analyze->add_option("--j", o.j, "cohomological degree");
    analyze->add_option("--ring", o.ring, "f2 | fp:<p> | z | zmod:<m>");
    analyze->add_option("--out", o.out, "output path");
    analyze->add_option("--format", o.format, "jsonl")->check(CLI::IsMember({"jsonl"}));

    auto* process = app.add_subcommand("process", "sample traces and report hitting times");
    common(process, false, false);
    process->add_option("--trials", o.trials, "number of traces")->check(CLI::PositiveNumber);
    process->add_option("--cap", o.cap, "sampled horizon in tau (default 1 + 6/log n)");
    process->add_flag("--events", o.events, "also stream every birth event");

    auto* critical = app.add_subcommand("critical", "criticality calculus at a given n");
    common(critical, false, false);
    critical->add_option("--c", o.c, "window offset");

    auto* mc = app.add_subcommand("mc", "Monte Carlo counts of M and Mhat");
    common(mc, false, false);
    mc->add_option("--trials", o.trials, "number of trials");
    mc->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    mc->add_option("--c", o.c, "critical-window offset (switches to window mode)");
    mc->add_flag("--cohomology", o.cohomology, "also estimate Pr(H^j = 0) in window mode");
    mc->add_option("--ring", o.ring, "accepted for uniformity; window cohomology is over F2");

    auto* sweep = app.add_subcommand("sweep", "threshold sweep over n and tau");
    common(sweep, true, true);
    sweep->add_option("--trials", o.trials, "trials per (n, tau)");
    sweep->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
        if (*analyze) return cmd_analyze(o);
        CLI::App* sub = app.get_subcommands().front();
        if (o.n.empty() && sub != sweep) fail(ErrorKind::InvalidInput, "--n is required");
        const DirectionParams dp = load_direction(o, given(sub, "--d"), given(sub, "--j"));
        if (*gen) return cmd_gen(o, dp);
        if (*process) return cmd_process(o, dp);
        if (*critical) return cmd_critical(o, dp);
        if (*mc) return cmd_mc(o, dp);
        if (*sweep) return cmd_sweep(o, dp);
    } catch (const Error& e) {
        std::cerr << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
