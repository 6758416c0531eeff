#include "bvkit/bvkit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "bvkit/brst.hpp"
#include "bvkit/bv_solver.hpp"
#include "bvkit/errors.hpp"
#include "bvkit/expression.hpp"
#include "bvkit/problem.hpp"
#include "bvkit/registry.hpp"
#include "bvkit/serialize.hpp"
#include "bvkit/tate.hpp"

struct bvkit_problem {
    bvkit::ProblemSpec spec;
};
struct bvkit_resolution {
    std::shared_ptr<const bvkit::TateResolution> r;
};
struct bvkit_solution {
    bvkit::MasterSolution s;
};

namespace {

thread_local std::string last_error;

bvkit_status fail(bvkit_status st, const std::string& msg) {
    last_error = msg;
    return st;
}

template <class F>
bvkit_status guard(F&& f) {
    try {
        return f();
    } catch (const bvkit::Error& e) {
        return fail(static_cast<bvkit_status>(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(BVKIT_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BVKIT_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void put(char** out, const bvkit::Json& j) { *out = dup(j.dump(2)); }

bvkit::MonomialOrder to_order(bvkit_order o) {
    if (o == BVKIT_ORDER_GREVLEX) return bvkit::MonomialOrder::Grevlex;
    if (o == BVKIT_ORDER_LEX) return bvkit::MonomialOrder::Lex;
    throw bvkit::invalid("unknown monomial order");
}

#define NEED(ptr, name) \
    if (!(ptr)) return fail(BVKIT_ERR_INVALID_ARGUMENT, std::string(name) + " is null")

}  // namespace

extern "C" {

const char* bvkit_version(void) { return "1.0.0"; }
const char* bvkit_last_error(void) { return last_error.c_str(); }
void bvkit_string_free(char* s) { std::free(s); }

bvkit_status bvkit_problem_parse(const char* text, bvkit_problem** out) {
    NEED(text, "text");
    NEED(out, "out");
    return guard([&] {
        *out = new bvkit_problem{bvkit::parse_problem(text)};
        return BVKIT_OK;
    });
}

bvkit_status bvkit_problem_to_json(const bvkit_problem* p, char** json) {
    NEED(p, "problem");
    NEED(json, "json");
    return guard([&] {
        put(json, bvkit::to_json(p->spec));
        return BVKIT_OK;
    });
}

int bvkit_problem_option(const bvkit_problem* p, const char* key, int fallback) {
    if (!p || !key) return fallback;
    return p->spec.option_int(key, fallback);
}

bvkit_order bvkit_problem_order(const bvkit_problem* p) {
    if (!p) return BVKIT_ORDER_GREVLEX;
    return p->spec.order() == bvkit::MonomialOrder::Lex ? BVKIT_ORDER_LEX : BVKIT_ORDER_GREVLEX;
}

void bvkit_problem_free(bvkit_problem* p) { delete p; }

bvkit_status bvkit_resolution_build(const bvkit_problem* p, int depth, bvkit_resolution** out) {
    NEED(p, "problem");
    NEED(out, "out");
    if (depth < 0) return fail(BVKIT_ERR_INVALID_ARGUMENT, "depth must be nonnegative");
    return guard([&] {
        auto r = bvkit::build_resolution(p->spec.coords, p->spec.partials, p->spec.s0, depth);
        *out = new bvkit_resolution{std::make_shared<const bvkit::TateResolution>(std::move(r))};
        return BVKIT_OK;
    });
}

bvkit_status bvkit_resolution_check(const bvkit_resolution* r, int depth, char** report) {
    NEED(r, "resolution");
    NEED(report, "report");
    if (depth < 0) return fail(BVKIT_ERR_INVALID_ARGUMENT, "depth must be nonnegative");
    return guard([&] {
        put(report, bvkit::to_json(bvkit::check_acyclic(*r->r, depth)));
        return BVKIT_OK;
    });
}

bvkit_status bvkit_resolution_to_json(const bvkit_resolution* r, char** json) {
    NEED(r, "resolution");
    NEED(json, "json");
    return guard([&] {
        put(json, bvkit::to_json(*r->r));
        return BVKIT_OK;
    });
}

bvkit_status bvkit_resolution_from_json(const char* json, bvkit_resolution** out) {
    NEED(json, "json");
    NEED(out, "out");
    return guard([&] {
        auto j = bvkit::Json::parse(json, nullptr, false);
        if (j.is_discarded()) throw bvkit::invalid("resolution JSON does not parse");
        auto r = bvkit::resolution_from_json(j);
        *out = new bvkit_resolution{std::make_shared<const bvkit::TateResolution>(std::move(r))};
        return BVKIT_OK;
    });
}

void bvkit_resolution_free(bvkit_resolution* r) { delete r; }

bvkit_status bvkit_solve(const bvkit_resolution* r, int p_max, int use_seed, uint64_t seed, bvkit_solution** out) {
    NEED(r, "resolution");
    NEED(out, "out");
    if (p_max < 0) return fail(BVKIT_ERR_INVALID_ARGUMENT, "p_max must be nonnegative");
    return guard([&] {
        bvkit::SolveOptions opt{p_max, {}};
        if (use_seed) opt.perturbation_seed = seed;
        *out = new bvkit_solution{bvkit::solve_master(r->r, opt)};
        return BVKIT_OK;
    });
}

bvkit_status bvkit_solution_to_json(const bvkit_solution* s, char** json) {
    NEED(s, "solution");
    NEED(json, "json");
    return guard([&] {
        put(json, bvkit::to_json(s->s));
        return BVKIT_OK;
    });
}

bvkit_status bvkit_solution_from_json(const char* json, bvkit_solution** out) {
    NEED(json, "json");
    NEED(out, "out");
    return guard([&] {
        auto j = bvkit::Json::parse(json, nullptr, false);
        if (j.is_discarded()) throw bvkit::invalid("solution JSON does not parse");
        *out = new bvkit_solution{bvkit::solution_from_json(j)};
        return BVKIT_OK;
    });
}

void bvkit_solution_free(bvkit_solution* s) { delete s; }

bvkit_status bvkit_verify(const bvkit_solution* s, int p, char** report) {
    NEED(s, "solution");
    NEED(report, "report");
    if (p < 0) return fail(BVKIT_ERR_INVALID_ARGUMENT, "order must be nonnegative");
    return guard([&] {
        auto v = bvkit::verify_master(s->s, p);
        auto j = bvkit::to_json(v);
        j["ok"] = v.ok(p);
        j["requested"] = p;
        put(report, j);
        return BVKIT_OK;
    });
}

bvkit_status bvkit_gauge(const bvkit_solution* a, const bvkit_solution* b, int p_max, char** report) {
    NEED(a, "first solution");
    NEED(b, "second solution");
    NEED(report, "report");
    if (p_max < 0) return fail(BVKIT_ERR_INVALID_ARGUMENT, "p_max must be nonnegative");
    return guard([&] {
        auto w = bvkit::gauge_relate(a->s, b->s, p_max);
        auto j = bvkit::to_json(w);
        auto moved = bvkit::transport(w, a->s, p_max);
        j["p_max"] = p_max;
        j["confirmed"] = moved == bvkit::truncate(bvkit::retable(b->s.S, a->s.table), p_max);
        put(report, j);
        return BVKIT_OK;
    });
}

bvkit_status bvkit_brst_h0(const bvkit_problem* p, int bound, bvkit_order order, char** report) {
    NEED(p, "problem");
    NEED(report, "report");
    if (bound < 0) return fail(BVKIT_ERR_INVALID_ARGUMENT, "bound must be nonnegative");
    return guard([&] {
        auto pres = bvkit::symmetry_presentation(p->spec.coords, p->spec.partials, to_order(order));
        put(report, bvkit::to_json(bvkit::h0(pres, bound)));
        return BVKIT_OK;
    });
}

bvkit_status bvkit_brst_h1(const bvkit_problem* p, int bound, bvkit_order order, char** report) {
    NEED(p, "problem");
    NEED(report, "report");
    if (bound < 0) return fail(BVKIT_ERR_INVALID_ARGUMENT, "bound must be nonnegative");
    return guard([&] {
        auto pres = bvkit::symmetry_presentation(p->spec.coords, p->spec.partials, to_order(order));
        put(report, bvkit::to_json(bvkit::h1(pres, bound)));
        return BVKIT_OK;
    });
}

bvkit_status bvkit_brst_bracket(const bvkit_problem* p, const char* f, const char* g, int bound, bvkit_order order,
                                char** report) {
    NEED(p, "problem");
    NEED(f, "f");
    NEED(g, "g");
    NEED(report, "report");
    if (bound < 0) return fail(BVKIT_ERR_INVALID_ARGUMENT, "bound must be nonnegative");
    return guard([&] {
        const auto& names = p->spec.coords;
        auto pf = bvkit::parse_polynomial(f, names);
        auto pg = bvkit::parse_polynomial(g, names);
        auto pres = bvkit::symmetry_presentation(names, p->spec.partials, to_order(order));
        auto b = bvkit::h0_bracket(pf, pg, pres);
        int maxdeg = 0;
        for (const auto& c : b)
            if (!c.is_zero()) maxdeg = std::max(maxdeg, c.degree());
        bvkit::Json j;
        j["f"] = pf.to_string(names);
        j["g"] = pg.to_string(names);
        bvkit::Json vals = bvkit::Json::array();
        for (const auto& c : b) vals.push_back(c.to_string(names));
        j["cochain"] = vals;
        int D = std::max(bound, maxdeg);
        bvkit::H1Space space(pres, D);
        j["bound"] = D;
        j["coboundary"] = space.is_coboundary(b);
        put(report, j);
        return BVKIT_OK;
    });
}

bvkit_status bvkit_brst_e2(const bvkit_solution* s, int p, int bound, bvkit_order order, char** report) {
    NEED(s, "solution");
    NEED(report, "report");
    if (bound < 0) return fail(BVKIT_ERR_INVALID_ARGUMENT, "bound must be nonnegative");
    return guard([&] {
        put(report, bvkit::to_json(bvkit::e2_page(s->s, p, bound, to_order(order))));
        return BVKIT_OK;
    });
}

bvkit_status bvkit_symmetries(const bvkit_problem* p, char** json) {
    NEED(p, "problem");
    NEED(json, "json");
    return guard([&] {
        auto pres = bvkit::symmetry_presentation(p->spec.coords, p->spec.partials, p->spec.order());
        put(json, bvkit::to_json(pres));
        return BVKIT_OK;
    });
}

int bvkit_example_count(void) { return static_cast<int>(bvkit::example_ids().size()); }

const char* bvkit_example_id(int i) {
    const auto& ids = bvkit::example_ids();
    if (i < 0 || i >= static_cast<int>(ids.size())) return nullptr;
    return ids[i].c_str();
}

bvkit_status bvkit_example_run(const char* id, char** report) {
    NEED(id, "id");
    NEED(report, "report");
    return guard([&] {
        auto rep = bvkit::run_example(id);
        bvkit::Json j;
        j["id"] = rep.id;
        j["title"] = rep.title;
        j["ok"] = rep.ok();
        bvkit::Json checks = bvkit::Json::array();
        std::string first_failure;
        for (const auto& c : rep.checks) {
            checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
            if (!c.ok && first_failure.empty()) first_failure = c.name + (c.detail.empty() ? "" : ": " + c.detail);
        }
        j["checks"] = checks;
        j["notes"] = rep.notes;
        j["seconds"] = rep.seconds;
        put(report, j);
        if (!rep.ok()) return fail(BVKIT_ERR_CHECK_FAILED, rep.id + ": " + first_failure);
        return BVKIT_OK;
    });
}

bvkit_status bvkit_example_problem(const char* id, char** text) {
    NEED(id, "id");
    NEED(text, "text");
    return guard([&] {
        auto t = bvkit::example_problem(id);
        if (!t) throw bvkit::invalid(std::string("example '") + id + "' has no problem file form");
        *text = dup(*t);
        return BVKIT_OK;
    });
}

}  // extern "C"
