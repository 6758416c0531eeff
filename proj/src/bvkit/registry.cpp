#include "registry.hpp"

#include <chrono>
#include <functional>
#include <map>

#include "brst.hpp"
#include "bv_solver.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "problem.hpp"

namespace bvkit {

bool ExampleReport::ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

namespace {

using Coords = std::vector<std::string>;
using Structure = std::vector<std::vector<std::vector<Polynomial>>>;
using PMat = std::vector<std::vector<Polynomial>>;

class Checker {
public:
    explicit Checker(ExampleReport& rep) : rep_(rep) {}
    void expect(const std::string& name, bool ok, const std::string& detail = "") {
        rep_.checks.push_back({name, ok, detail});
    }
    // Runs f; an exception becomes a failed check carrying its message.
    void run(const std::string& name, const std::function<std::string()>& f, bool expect_ok = true) {
        try {
            std::string d = f();
            rep_.checks.push_back({name, expect_ok, d});
        } catch (const std::exception& e) {
            rep_.checks.push_back({name, !expect_ok, e.what()});
        }
    }
    void note(const std::string& s) { rep_.notes.push_back(s); }

private:
    ExampleReport& rep_;
};

std::string dims(const std::string& what, size_t got, size_t want) {
    return what + " = " + std::to_string(got) + " (expected " + std::to_string(want) + ")";
}

ResolutionPtr resolve(const Coords& c, const std::string& s0, int depth) {
    return std::make_shared<TateResolution>(build_resolution(c, {}, parse_polynomial(s0, c), depth));
}

std::vector<Polynomial> grad(const Polynomial& s0) {
    std::vector<Polynomial> d;
    for (int i = 0; i < s0.nvars(); ++i) d.push_back(s0.derivative(i));
    return d;
}

Structure zero_structure(size_t m, int n) {
    return Structure(m, std::vector<std::vector<Polynomial>>(m, std::vector<Polynomial>(m, Polynomial(n))));
}

// Exact master equation, verification at order p and residual-weight bookkeeping.
void check_solution(Checker& ck, const MasterSolution& sol, int p, const std::string& tag) {
    auto v = verify_master(sol, p);
    ck.expect(tag + ": verify order " + std::to_string(p), v.ok(p),
              "order " + std::to_string(v.order) + (v.exact ? ", exact" : ""));
    bool weights = true;
    for (auto [q, w] : sol.residual_weights) weights = weights && w >= q + 1;
    ck.expect(tag + ": residual weight >= p+1 at every step", weights);
}

void check_cohomology(Checker& ck, const SymmetryPresentation& pres, int D, size_t want0, size_t want1) {
    auto a = h0(pres, D), b = h1(pres, D);
    ck.expect("h0 at bound " + std::to_string(D), a.dim == want0, dims("dim", a.dim, want0));
    ck.expect("h1 at bound " + std::to_string(D), b.dim == want1, dims("dim", b.dim, want1));
}

void check_e2(Checker& ck, const MasterSolution& sol, int p, int D, size_t want) {
    ck.run("e2 page p=" + std::to_string(p) + " at bound " + std::to_string(D), [&] {
        auto r = e2_page(sol, p, D);
        if (r.dim != want) throw Error(ErrorKind::CheckFailed, dims("dim", r.dim, want));
        return "dim " + std::to_string(r.dim);
    });
}

PMat pmul(const PMat& a, const PMat& b) {
    size_t n = a.size();
    PMat c(n, std::vector<Polynomial>(n, Polynomial(a[0][0].nvars())));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

PMat ptrans(const PMat& a) {
    PMat c = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) c[i][j] = a[j][i];
    return c;
}

BundleData empty_bundle(Coords base, Coords fiber) {
    BundleData b;
    size_t m = base.size(), r = fiber.size();
    int n = static_cast<int>(m + r);
    b.base = std::move(base);
    b.fiber = std::move(fiber);
    b.g.assign(r, std::vector<Polynomial>(r, Polynomial(n)));
    b.A.assign(r, std::vector<std::vector<Polynomial>>(r, std::vector<Polynomial>(m, Polynomial(n))));
    b.F.assign(r, std::vector<std::vector<std::vector<Polynomial>>>(
                      r, std::vector<std::vector<Polynomial>>(m, std::vector<Polynomial>(m, Polynomial(n)))));
    return b;
}

BundleData rank1_flat() {
    auto b = empty_bundle({"y"}, {"v"});
    b.g[0][0] = Polynomial::constant(2, 1);
    return b;
}

// g = h^T h and A = h^-1 dh for h = [[1, y], [0, 1]]: the trivial flat connection in a
// non-orthonormal frame.
BundleData rank2_gauge_flat() {
    auto b = empty_bundle({"y"}, {"v1", "v2"});
    Coords c = {"y", "v1", "v2"};
    auto P = [&](const char* s) { return parse_polynomial(s, c); };
    PMat h = {{P("1"), P("y")}, {P("0"), P("1")}};
    PMat hinv = {{P("1"), P("-y")}, {P("0"), P("1")}};
    PMat dh = {{P("0"), P("1")}, {P("0"), P("0")}};
    b.g = pmul(ptrans(h), h);
    PMat A = pmul(hinv, dh);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b.A[i][j][0] = A[i][j];
    return b;
}

// Orthonormal frame over A^2 with A_2 = y1 J and curvature F_12 = J, moved by the same h.
BundleData rank2_gauge_curved() {
    auto b = empty_bundle({"y1", "y2"}, {"v1", "v2"});
    Coords c = {"y1", "y2", "v1", "v2"};
    auto P = [&](const char* s) { return parse_polynomial(s, c); };
    PMat J = {{P("0"), P("1")}, {P("-1"), P("0")}};
    PMat h = {{P("1"), P("y1")}, {P("0"), P("1")}};
    PMat hinv = {{P("1"), P("-y1")}, {P("0"), P("1")}};
    PMat d1h = {{P("0"), P("1")}, {P("0"), P("0")}};
    PMat A1 = pmul(hinv, d1h);
    PMat A2 = pmul(pmul(hinv, pmul({{P("y1"), P("0")}, {P("0"), P("y1")}}, J)), h);
    PMat F12 = pmul(pmul(hinv, J), ptrans(hinv));
    b.g = pmul(ptrans(h), h);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            b.A[i][j][0] = A1[i][j];
            b.A[i][j][1] = A2[i][j];
            b.F[i][j][0][1] = F12[i][j];
            b.F[i][j][1][0] = -F12[i][j];
        }
    return b;
}

// Flat metric with a nonzero curvature term: violates the structure equation.
BundleData rank2_bad_curvature() {
    auto b = empty_bundle({"y1", "y2"}, {"v1", "v2"});
    b.g[0][0] = b.g[1][1] = Polynomial::constant(4, 1);
    b.F[0][1][0][1] = b.F[1][0][1][0] = Polynomial::constant(4, 1);
    b.F[1][0][0][1] = b.F[0][1][1][0] = Polynomial::constant(4, -1);
    return b;
}

void bundle_checks(Checker& ck, bool with_curved) {
    ck.run("rank-1 flat: S = v^2/2 + y* beta, [S,S] = 0", [] {
        auto sol = bundle_solution(rank1_flat());
        if (sol.S != parse_graded("v^2/2 + ys*b1", sol.table))
            throw Error(ErrorKind::CheckFailed, "unexpected S = " + sol.S.to_string());
        return "S = " + sol.S.to_string();
    });
    ck.run("gauge-transformed flat rank 2: [S,S] = 0", [] {
        auto sol = bundle_solution(rank2_gauge_flat());
        if (!bracket(sol.S, sol.S).is_zero()) throw Error(ErrorKind::CheckFailed, "[S,S] != 0");
        return "S = " + sol.S.to_string();
    });
    if (!with_curved) return;
    ck.run("gauge-transformed curved rank 2 over A^2: [S,S] = 0", [] {
        auto sol = bundle_solution(rank2_gauge_curved());
        if (!bracket(sol.S, sol.S).is_zero()) throw Error(ErrorKind::CheckFailed, "[S,S] != 0");
        return std::string("exact");
    });
    ck.run("curvature violating the structure equation is rejected", [] {
        try {
            bundle_solution(rank2_bad_curvature());
        } catch (const Error& e) {
            std::string m = e.what();
            if (m.find("(b) structure equation") == std::string::npos)
                throw Error(ErrorKind::CheckFailed, "rejected without naming (b): " + m);
            return m;
        }
        throw Error(ErrorKind::CheckFailed, "accepted");
    });
}

// de Rham complex of A^n as the tangent Lie algebroid in the coordinate frame.
MasterSolution de_rham(const Coords& c) {
    int n = static_cast<int>(c.size());
    std::vector<ModuleVector> th;
    for (int i = 0; i < n; ++i) {
        ModuleVector v(n, Polynomial(n));
        v[i] = Polynomial::constant(n, 1);
        th.push_back(v);
    }
    return faddeev_popov(c, Polynomial(n), th, zero_structure(n, n));
}

void exa1(Checker& ck) {
    Coords c = {"x1", "x2", "x3"};
    auto r = resolve(c, "x1^2 + 2*x2^2", 3);
    ck.expect("resolution: one generator of degree -2", r->counts() == std::vector<int>{1});
    auto sol = solve_master(r, 3);
    ck.expect("S = S0 + x3* beta", sol.S == parse_graded("x1^2 + 2*x2^2 + x3s*b1", sol.table), sol.S.to_string());
    check_solution(ck, sol, 3, "solution");
    auto pres = symmetry_presentation(c, r->partials());
    for (int D : {0, 2, 4}) check_cohomology(ck, pres, D, 1, 0);

    Coords xy = {"x", "y"};
    auto full = resolve(xy, "x^2 - 3*y^2", 3);
    auto s2 = solve_master(full, 3);
    ck.expect("nondegenerate form: S = S0", s2.S == parse_graded("x^2 - 3*y^2", s2.table));
    check_cohomology(ck, symmetry_presentation(xy, full->partials()), 3, 1, 0);
}

void exa2(Checker& ck) {
    Coords c = {"x", "y"};
    auto r = resolve(c, "x^3 + y^3", 4);
    ck.expect("Koszul resolution: no generators beyond x*", r->generators().empty());
    auto sol = solve_master(r, 3);
    ck.expect("S = S0", sol.S == parse_graded("x^3 + y^3", sol.table));
    auto gb = jacobian_ring(2, r->partials());
    size_t dimJ = gb.standard_monomials(6).size();
    ck.expect("J is 4-dimensional", dimJ == 4, std::to_string(dimJ));
    auto pres = symmetry_presentation(c, r->partials());
    check_cohomology(ck, pres, 4, 4, 0);
    check_e2(ck, sol, 0, 4, 4);
    check_e2(ck, sol, 1, 4, 0);
}

void exa3(Checker& ck) {
    // g = k acting by d_y on A^2 -> A^1, S0 pulled back from x^2
    Coords c = {"x", "y"};
    std::vector<ModuleVector> th = {{Polynomial(2), Polynomial::constant(2, 1)}};
    auto sol = faddeev_popov(c, parse_polynomial("x^2", c), th, zero_structure(1, 2));
    ck.expect("[S,S] = 0", bracket(sol.S, sol.S).is_zero(), sol.S.to_string());
    check_solution(ck, sol, 4, "Faddeev-Popov");
    check_e2(ck, sol, 0, 4, 1);
    check_e2(ck, sol, 1, 4, 0);
    check_cohomology(ck, symmetry_presentation(c, grad(parse_polynomial("x^2", c))), 4, 1, 0);
}

void exa4(Checker& ck) {
    // tangent algebroid of A^2 in the frame (d_x, d_y + x^2 d_x): [t1, t2] = 2x t1
    Coords c = {"x", "y"};
    auto P = [&](const char* s) { return parse_polynomial(s, c); };
    std::vector<ModuleVector> th = {{P("1"), P("0")}, {P("x^2"), P("1")}};
    Structure cs = zero_structure(2, 2);
    cs[0][0][1] = P("2*x");
    cs[0][1][0] = P("-2*x");
    auto sol = faddeev_popov(c, Polynomial(2), th, cs);
    ck.expect("[S,S] = 0 with function-valued structure constants", bracket(sol.S, sol.S).is_zero(),
              sol.S.to_string());
    check_e2(ck, sol, 0, 3, 1);
    check_e2(ck, sol, 1, 3, 0);
    ck.run("wrong structure constants are rejected", [&] {
        Structure bad = zero_structure(2, 2);
        faddeev_popov(c, Polynomial(2), th, bad);
        return std::string("accepted");
    }, false);
}

void exa5(Checker& ck) {
    Coords c = {"x", "y"};
    auto sol = de_rham(c);
    ck.expect("[S,S] = 0", bracket(sol.S, sol.S).is_zero(), sol.S.to_string());
    check_e2(ck, sol, 0, 3, 1);
    check_e2(ck, sol, 1, 3, 0);
    check_cohomology(ck, symmetry_presentation(c, {Polynomial(2), Polynomial(2)}), 3, 1, 0);
}

void derham_a1(Checker& ck) {
    Coords c = {"x"};
    auto sol = de_rham(c);
    ck.expect("[S,S] = 0", bracket(sol.S, sol.S).is_zero(), sol.S.to_string());
    check_e2(ck, sol, 0, 4, 1);
    check_e2(ck, sol, 1, 4, 0);
    auto pres = symmetry_presentation(c, {Polynomial(1)});
    check_cohomology(ck, pres, 4, 1, 0);
    // the solver on the same support gives the same S after naming
    auto r = resolve(c, "0", 3);
    auto solved = solve_master(r, 3);
    ck.expect("solver output for S0 = 0 is x* beta", solved.S == parse_graded("xs*b1", solved.table),
              solved.S.to_string());
}

void exa6(Checker& ck) { bundle_checks(ck, true); }
void bundle_flat(Checker& ck) { bundle_checks(ck, false); }

void exa7(Checker& ck) {
    Coords c = {"x", "y"};
    const std::string s0 = "(x^2+y^2-1)^2/4";
    auto r5 = resolve(c, s0, 5);
    auto counts = r5->counts();
    counts.resize(4, 0);
    ck.expect("generator counts at -2..-5 are (1,1,2,3)", counts == std::vector<int>{1, 1, 2, 3},
              "counts (" + [&] {
                  std::string s;
                  for (size_t i = 0; i < counts.size(); ++i) s += (i ? "," : "") + std::to_string(counts[i]);
                  return s;
              }() + ")");
    ck.note("the paper lists four generators in degree -5; one of them (rho) is redundant, see the decisions ledger");
    auto ac = check_acyclic(*r5, 5);
    ck.expect("check_acyclic to depth 5", ac.ok);

    auto r = resolve(c, s0, 4);
    auto sol = solve_master(r, 4);
    check_solution(ck, sol, 4, "solution");
    ck.expect("S = S0 + (x y* - y x*) beta mod F^2",
              truncate(sol.S, 1) == parse_graded(s0 + " + (x*ys - y*xs)*b1", sol.table));

    auto pres = symmetry_presentation(c, r->partials());
    check_cohomology(ck, pres, 6, 2, 1);
    check_e2(ck, sol, 0, 6, 2);
    check_e2(ck, sol, 1, 6, 1);

    ck.run("gauge equivalence of a perturbed solution", [&] {
        auto other = solve_master(r, {4, 11});
        auto w = gauge_relate(sol, other, 4);
        if (transport(w, sol, 4) != truncate(retable(other.S, sol.table), 4))
            throw Error(ErrorKind::CheckFailed, "transported S differs from the target mod F^5");
        return "word of length " + std::to_string(w.u.size());
    });
}

void exa8(Checker& ck) {
    Coords c = {"x", "y", "z", "w"};
    auto s0 = parse_polynomial("x^3+y^3+z^3-3*w*x*y*z", c);
    auto pres = symmetry_presentation(c, grad(s0));
    auto gb = jacobian_ring(4, pres.partials);
    auto rep = h0(pres, 11);
    // span membership via a rank test on normal-form coefficients
    auto in_span = [&](const Polynomial& f) {
        std::map<std::vector<int>, size_t> rows;
        auto key = [](const Monomial& m) {
            std::vector<int> e;
            for (int i = 0; i < m.nvars(); ++i) e.push_back(m[i]);
            return e;
        };
        Polynomial nf = gb.normal_form(f);
        for (const auto& g : rep.functions)
            for (const auto& t : g.terms()) rows.emplace(key(t.mono), rows.size());
        for (const auto& t : nf.terms()) rows.emplace(key(t.mono), rows.size());
        Matrix a(rows.size(), rep.functions.size()), b(rows.size(), rep.functions.size() + 1);
        for (size_t j = 0; j < rep.functions.size(); ++j)
            for (const auto& t : rep.functions[j].terms()) a(rows[key(t.mono)], j) = b(rows[key(t.mono)], j) = t.coeff;
        for (const auto& t : nf.terms()) b(rows[key(t.mono)], rep.functions.size()) = t.coeff;
        return a.rank() == b.rank();
    };
    for (const char* m : {"x^2", "y^2", "z^2", "x*y", "x*z", "y*z"}) {
        Polynomial f = parse_polynomial("(w^3-1)^2*" + std::string(m), c);
        bool inv = true;
        for (const auto& t : pres.tau) inv = inv && gb.contains(apply_field(t, f));
        ck.expect(std::string("(w^3-1)^2*") + m + " is an exact invariant in the bound-11 slice", inv && in_span(f));
    }
    auto later = h0(pres, 14);
    ck.expect("dim h0 grows from bound 11 to 14", later.dim > rep.dim,
              std::to_string(rep.dim) + " -> " + std::to_string(later.dim));
}

void fp_so3(Checker& ck) {
    Coords c = {"x", "y", "z"};
    auto P = [&](const char* s) { return parse_polynomial(s, c); };
    std::vector<ModuleVector> th = {{P("0"), P("-z"), P("y")}, {P("z"), P("0"), P("-x")}, {P("-y"), P("x"), P("0")}};
    Structure cs = zero_structure(3, 3);
    auto eps = [](int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; };
    for (int l = 0; l < 3; ++l)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) cs[l][i][j] = Polynomial::constant(3, -eps(i, j, l));
    auto sol = faddeev_popov(c, P("(x^2+y^2+z^2-1)^2"), th, cs);
    ck.expect("[S,S] = 0 identically", bracket(sol.S, sol.S).is_zero());
    check_solution(ck, sol, 6, "Faddeev-Popov");
}

struct Entry {
    const char* id;
    const char* title;
    const char* problem;  // nullptr if not a single-action example
    void (*run)(Checker&);
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {"exa1", "quadratic forms with free directions", "vars x1 x2 x3;\nS0 = x1^2 + 2*x2^2;\n", exa1},
        {"exa2", "isolated critical point: Koszul resolution", "vars x y;\nS0 = x^3 + y^3;\n", exa2},
        {"exa3", "Faddeev-Popov action of a translation", nullptr, exa3},
        {"exa4", "Lie algebroid with function-valued structure constants", nullptr, exa4},
        {"exa5", "de Rham algebra of A^2", nullptr, exa5},
        {"exa6", "quadratic forms on vector bundles with orthogonal connections", nullptr, exa6},
        {"exa7", "S0 = (x^2+y^2-1)^2/4", "vars x y;\nS0 = (x^2+y^2-1)^2/4;\n", exa7},
        {"exa8", "S0 = x^3+y^3+z^3-3wxyz: infinite-dimensional H0",
         "vars x y z w;\nS0 = x^3+y^3+z^3-3*w*x*y*z;\n", exa8},
        {"fp-so3", "Faddeev-Popov for so(3) on A^3", nullptr, fp_so3},
        {"bundle-flat", "flat orthogonal connections", nullptr, bundle_flat},
        {"derham-a1", "de Rham algebra of A^1", nullptr, derham_a1},
    };
    return e;
}

const Entry& find(const std::string& id) {
    for (const auto& e : entries())
        if (id == e.id) return e;
    throw invalid("unknown example '" + id + "'");
}

}  // namespace

const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& e : entries()) v.push_back(e.id);
        return v;
    }();
    return ids;
}

std::string example_title(const std::string& id) { return find(id).title; }

std::optional<std::string> example_problem(const std::string& id) {
    const auto& e = find(id);
    if (!e.problem) return std::nullopt;
    return std::string(e.problem);
}

ExampleReport run_example(const std::string& id) {
    const auto& e = find(id);
    ExampleReport rep;
    rep.id = e.id;
    rep.title = e.title;
    Checker ck(rep);
    auto t0 = std::chrono::steady_clock::now();
    try {
        e.run(ck);
    } catch (const std::exception& ex) {
        ck.expect("example ran to completion", false, ex.what());
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace bvkit
