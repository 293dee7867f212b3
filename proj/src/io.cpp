#include "rsc/io.hpp"

#include <cmath>

#include "rsc/error.hpp"

namespace rsc {

namespace {

Json number_or_null(double x) {
    if (std::isfinite(x)) return x;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return nullptr;
}

}  // namespace

Json to_json(const Simplex& s) { return s.to_vector(); }

Json to_json(const Complex& c) {
    Json facets = Json::array();
    for (const auto& f : c.facets()) facets.push_back(to_json(f));
    return {{"n", c.n()}, {"d", c.d()}, {"facets", facets}};
}

Json to_json(const CohomologySummary& s) {
    return {{"j", s.j}, {"free_rank", s.free_rank}, {"torsion", s.torsion}};
}

Json to_json(const ObstructionCopy& m) {
    Json out = {{"kind", m.kind == ObstructionCopy::Kind::M ? "M" : "Mhat"},
                {"j", m.j},
                {"k", m.k},
                {"K", to_json(m.K)},
                {"C", to_json(m.C)}};
    if (m.kind == ObstructionCopy::Kind::Mhat) {
        out["w"] = m.w;
        out["a"] = m.a;
    } else {
        out["w"] = nullptr;
        out["a"] = nullptr;
    }
    return out;
}

Json to_json(const Cochain& f) {
    Json vals = Json::array();
    for (const auto& [s, v] : f.values()) vals.push_back({{"simplex", to_json(s)}, {"value", v}});
    return {{"degree", f.degree()}, {"ring", f.ring().str()}, {"values", vals}};
}

Json to_json(const CriticalityReport& r) {
    Json terms = Json::array();
    for (const auto& t : r.terms)
        terms.push_back({{"k", t.k},
                         {"lambda", to_string(t.lambda)},
                         {"mu", number_or_null(t.mu)},
                         {"nu", number_or_null(t.nu)},
                         {"mu_bounded", t.mu_bounded},
                         {"value", number_or_null(t.value)}});
    Json out = {{"n", r.n},
                {"j", r.j},
                {"terms", terms},
                {"critical_set", r.critical_set},
                {"C1", r.satisfies_C1},
                {"C2", r.satisfies_C2},
                {"is_critical", r.is_critical}};
    out["k_bar"] = r.k_bar ? Json(*r.k_bar) : Json(nullptr);
    out["k0"] = r.k0 ? Json(*r.k0) : Json(nullptr);
    return out;
}

Json to_json(const HittingReport& r) {
    Json out = {{"tau_prime", r.tau_prime},
                {"tau_star", number_or_null(r.tau_star)},
                {"ell", r.ell},
                {"no_copy", r.no_copy},
                {"censored", r.censored}};
    out["tau_doubleprime"] = r.tau_doubleprime ? number_or_null(*r.tau_doubleprime) : Json(nullptr);
    return out;
}

Json to_json(const TraversalWitness& w) {
    Json S = Json::array(), T = Json::array(), ex = Json::array();
    for (const auto& s : w.S) S.push_back(to_json(s));
    for (const auto& s : w.T) T.push_back(to_json(s));
    for (const auto& s : w.exploration) ex.push_back(to_json(s));
    return {{"S", S},
            {"T", T},
            {"t_vector", w.t_vector},
            {"exploration", ex},
            {"vertex_count", w.vertex_count},
            {"satisfies_bounds", w.satisfies_bounds()}};
}

Complex complex_from_json(const Json& j) {
    try {
        if (!j.is_object() || !j.contains("n") || !j.contains("d") || !j.contains("facets"))
            fail(ErrorKind::InvalidInput, "complex JSON needs n, d and facets");
        const int n = j.at("n").get<int>();
        const int d = j.at("d").get<int>();
        std::vector<Simplex> gens;
        for (const auto& f : j.at("facets")) gens.emplace_back(f.get<std::vector<int>>());
        return Complex::from_generators(n, d, gens);
    } catch (const Json::exception& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed complex JSON: ") + e.what());
    }
}

Complex parse_complex(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        fail(ErrorKind::InvalidInput, std::string("not valid JSON: ") + e.what());
    }
    return complex_from_json(j);
}

std::string dump_complex(const Complex& c) { return to_json(c).dump(); }

}  // namespace rsc
