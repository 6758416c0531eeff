#include "serialize.hpp"

#include "errors.hpp"
#include "expression.hpp"

namespace bvkit {

namespace {

Json poly_list(const std::vector<Polynomial>& ps, const std::vector<std::string>& names) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(p.to_string(names));
    return a;
}

std::vector<Polynomial> read_polys(const Json& a, const std::vector<std::string>& names) {
    std::vector<Polynomial> out;
    for (const auto& s : a) out.push_back(parse_polynomial(s.get<std::string>(), names));
    return out;
}

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw invalid(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

}  // namespace

Json to_json(const TateResolution& r) {
    Json j;
    j["coords"] = r.coords();
    j["s0"] = r.s0() ? Json(r.s0()->to_string(r.coords())) : Json(nullptr);
    j["partials"] = poly_list(r.partials(), r.coords());
    j["depth"] = r.depth();
    j["counts"] = r.counts();
    Json gens = Json::array();
    for (const auto& g : r.generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}, {"delta", g.delta.to_string()}});
    j["generators"] = gens;
    return j;
}

TateResolution resolution_from_json(const Json& j) {
    return guarded("resolution", [&] {
        auto coords = j.at("coords").get<std::vector<std::string>>();
        std::optional<Polynomial> s0;
        if (!j.at("s0").is_null()) s0 = parse_polynomial(j.at("s0").get<std::string>(), coords);
        TateResolution r(coords, read_polys(j.at("partials"), coords), s0);
        for (const auto& g : j.at("generators"))
            r.add_generator(g.at("name").get<std::string>(), g.at("degree").get<int>(),
                            parse_graded(g.at("delta").get<std::string>(), r.table()));
        r.set_depth(j.at("depth").get<int>());
        return r;
    });
}

Json to_json(const MasterSolution& s) {
    Json j;
    j["resolution"] = to_json(*s.resolution);
    j["S"] = s.S.to_string();
    j["one_form"] = poly_list(s.one_form, s.resolution->coords());
    j["order"] = s.order;
    j["exact"] = s.exact;
    Json w = Json::array();
    for (const auto& [p, wt] : s.residual_weights) w.push_back({p, wt});
    j["residual_weights"] = w;
    j["log"] = s.log;
    return j;
}

MasterSolution solution_from_json(const Json& j) {
    return guarded("solution", [&] {
        MasterSolution s;
        s.resolution = std::make_shared<TateResolution>(resolution_from_json(j.at("resolution")));
        s.table = bv_table(*s.resolution);
        s.S = parse_graded(j.at("S").get<std::string>(), s.table);
        s.one_form = read_polys(j.at("one_form"), s.resolution->coords());
        s.order = j.at("order").get<int>();
        s.exact = j.at("exact").get<bool>();
        for (const auto& pw : j.at("residual_weights")) s.residual_weights.push_back({pw.at(0).get<int>(), pw.at(1).get<int>()});
        s.log = j.at("log").get<std::vector<std::string>>();
        return s;
    });
}

Json to_json(const CohomologyReport& r) {
    Json j;
    j["p"] = r.p;
    j["bound"] = r.bound;
    j["dim"] = r.dim;
    j["basis"] = r.basis;
    j["stable"] = r.stable;
    return j;
}

CohomologyReport report_from_json(const Json& j) {
    return guarded("report", [&] {
        CohomologyReport r;
        r.p = j.at("p").get<int>();
        r.bound = j.at("bound").get<int>();
        r.dim = j.at("dim").get<size_t>();
        r.basis = j.at("basis").get<std::vector<std::string>>();
        r.stable = j.at("stable").get<bool>();
        return r;
    });
}

Json to_json(const VerifyReport& v) {
    Json j;
    j["order"] = v.order;
    j["exact"] = v.exact;
    j["restricts_to_s0"] = v.restricts_to_s0;
    j["associated"] = v.associated;
    j["failure_weight"] = v.failure_weight;
    j["failure"] = v.failure ? Json(v.failure->to_string()) : Json(nullptr);
    return j;
}

Json to_json(const GaugeWord& w) {
    Json a = Json::array();
    for (const auto& u : w.u) a.push_back(u.to_string());
    return {{"length", w.u.size()}, {"u", a}};
}

Json to_json(const ProblemSpec& p) {
    Json j;
    j["coords"] = p.coords;
    j["s0"] = p.s0 ? Json(p.s0->to_string(p.coords)) : Json(nullptr);
    j["partials"] = poly_list(p.partials, p.coords);
    j["options"] = p.options;
    return j;
}

Json to_json(const AcyclicityReport& a) {
    Json j;
    j["ok"] = a.ok;
    j["failed_degree"] = a.failed_degree;
    j["witness"] = a.witness ? Json(a.witness->to_string()) : Json(nullptr);
    return j;
}

Json to_json(const SymmetryPresentation& p) {
    Json j;
    Json tau = Json::array();
    for (const auto& t : p.tau) tau.push_back(poly_list(t, p.coords));
    j["tau"] = tau;
    Json rel = Json::array();
    for (const auto& r : p.relations) rel.push_back(poly_list(r, p.coords));
    j["relations"] = rel;
    Json bv = Json::array();
    for (const auto& v : p.bivectors) bv.push_back(v.to_string());
    j["bivectors"] = bv;
    Json f = Json::array();
    for (const auto& fi : p.f) {
        Json row = Json::array();
        for (const auto& fij : fi) row.push_back(poly_list(fij, p.coords));
        f.push_back(row);
    }
    j["structure_f"] = f;
    return j;
}

}  // namespace bvkit
