#include <doctest.h>

#include "bvkit/bv_solver.hpp"
#include "bvkit/expression.hpp"

using namespace bvkit;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const char* kEx7 = "(x^2+y^2-1)^2/4";

ResolutionPtr resolve(const std::vector<std::string>& coords, const char* s0, int depth) {
    return std::make_shared<TateResolution>(build_resolution(coords, {}, parse_polynomial(s0, coords), depth));
}

GradedPolynomial G(const std::string& s, const MasterSolution& sol) { return parse_graded(s, sol.table); }
GradedPolynomial G(const std::string& s, const TablePtr& t) { return parse_graded(s, t); }

using PMat = std::vector<std::vector<Polynomial>>;

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

}  // namespace

TEST_CASE("s_lin") {
    SUBCASE("quadratic form has no beta generators") {
        std::vector<std::string> x = {"x"};
        auto r = resolve(x, "x^2", 3);
        CHECK(s_lin(*r) == G("x^2", bv_table(*r)));
    }
    SUBCASE("S0 = 0 on A^1") {
        std::vector<std::string> x = {"x"};
        auto r = resolve(x, "0", 3);
        CHECK(s_lin(*r) == G("xs*b1", bv_table(*r)));
    }
    SUBCASE("Example 7 underlined linear terms") {
        auto r = resolve(XY, kEx7, 4);
        auto t = bv_table(*r);
        auto s = s_lin(*r);
        CHECK(truncate(s, 2) == G("(x^2+y^2-1)^2/4 + (x*ys - y*xs)*b1 + ((x^2+y^2-1)*b1s - xs*ys)*g1", t));
        CHECK(gr_project(s, 3) == G("(x*g1s - xs*b1s)*c2 + (y*g1s - ys*b1s)*c1", t));
    }
}

TEST_CASE("solve_master on small examples") {
    std::vector<std::string> x = {"x"};
    SUBCASE("x^2") {
        auto sol = solve_master(resolve(x, "x^2", 5), 5);
        CHECK(sol.S == G("x^2", sol));
        CHECK(sol.exact);
        CHECK(verify_master(sol, 5).ok(5));
    }
    SUBCASE("S0 = 0") {
        auto sol = solve_master(resolve(x, "0", 3), 3);
        CHECK(sol.S == G("xs*b1", sol));
        CHECK(bracket(sol.S, sol.S).is_zero());
    }
    SUBCASE("depth precondition") { CHECK_THROWS_AS(solve_master(resolve(x, "0", 2), 3), Error); }
}

TEST_CASE("Example 7 solution to order 4") {
    auto r = resolve(XY, kEx7, 5);
    auto sol = solve_master(r, 4);
    auto rep = verify_master(sol, 4);
    CHECK(rep.order >= 4);
    CHECK(rep.restricts_to_s0);
    CHECK(rep.associated);
    CHECK(truncate(sol.S, 1) == G("(x^2+y^2-1)^2/4 + (x*ys - y*xs)*b1", sol));
    // the gr-differential never changes
    CHECK(gr_project(sol.S, 1) == gr_project(s_lin(*r), 1));
    for (auto [p, w] : sol.residual_weights) CHECK(w >= p + 1);
    // d_S^2 vanishes modulo F^4 on low-weight generators
    auto act = sol.action();
    for (const char* a : {"x", "y", "xs", "ys", "b1s", "g1s", "b1", "g1"}) {
        auto dd = act.apply(act.apply(G(a, sol)));
        CHECK(dd.min_weight() >= 4);
    }
    SUBCASE("sign mutation of the gamma term is detected") {
        MasterSolution bad = sol;
        auto t = sol.table;
        auto gterm = G("((x^2+y^2-1)*b1s - xs*ys)*g1", t);
        bad.S = s_lin(*r) - gterm * Rational(2);
        auto rb = verify_master(bad, 4);
        CHECK(rb.order < 4);
        CHECK_FALSE(rb.ok(4));
        REQUIRE(rb.failure);
        CHECK_FALSE(rb.failure->is_zero());
        CHECK(rb.failure_weight <= 3);
    }
}

TEST_CASE("multivalued input reproduces the single-valued solution") {
    auto single = solve_master(resolve(XY, kEx7, 4), 3);
    auto s0 = parse_polynomial(kEx7, XY);
    auto r = std::make_shared<TateResolution>(build_resolution(XY, {s0.derivative(0), s0.derivative(1)}, std::nullopt, 4));
    auto multi = solve_master(r, 3);
    CHECK(multi.multivalued());
    CHECK(retable(multi.S, single.table) + G(kEx7, single) == single.S);
    CHECK(verify_master(multi, 3).ok(3));
}

TEST_CASE("gauge_relate") {
    auto r = resolve(XY, kEx7, 5);
    auto a = solve_master(r, 4);
    SUBCASE("identical solutions") { CHECK(gauge_relate(a, a, 4).u.empty()); }
    SUBCASE("perturbed lifts") {
        auto b = solve_master(r, {4, 11});
        REQUIRE(b.S != a.S);
        CHECK(verify_master(b, 4).ok(4));
        auto w = gauge_relate(a, b, 4);
        CHECK_FALSE(w.u.empty());
        for (const auto& u : w.u) {
            CHECK(u.homogeneous(-1));
            CHECK(u.in_I2());
        }
        CHECK(transport(w, a, 4) == truncate(retable(b.S, a.table), 4));
    }
    SUBCASE("quadratic S0: unique solution") {
        std::vector<std::string> x = {"x"};
        auto q = resolve(x, "x^2", 3);
        CHECK(gauge_relate(solve_master(q, 3), solve_master(q, {3, 5}), 3).u.empty());
    }
}

TEST_CASE("trivial solutions and products") {
    Matrix id(2, 2);
    id(1, 0) = 1;  // e1 (degree -2) -> e2 (degree -1)
    auto triv = trivial_solution({{-2, 1}, {-1, 1}}, id);
    CHECK(triv.exact);
    CHECK(triv.S.terms().size() == 1);
    CHECK(triv.S == G("w2s*w1", triv));
    auto zero = trivial_solution({}, Matrix());
    CHECK(zero.S.is_zero());
    Matrix none(2, 2);
    CHECK_THROWS_AS(trivial_solution({{-2, 1}, {-1, 1}}, none), Error);

    std::vector<std::string> x = {"x"}, y = {"y"};
    auto sx = solve_master(resolve(x, "x^2", 2), 2);
    auto sy = solve_master(resolve(y, "y^2", 2), 2);
    auto p = product_solution(sx, sy);
    CHECK(p.S == G("x^2 + y^2", p));
    CHECK(product_solution(sx, zero).S == G("x^2", sx));
    CHECK_THROWS_AS(product_solution(sx, sx), Error);

    auto e7 = solve_master(resolve(XY, kEx7, 3), 3);
    auto pt = product_solution(e7, triv);
    CHECK(verify_master(pt, 3).order == verify_master(e7, 3).order);
}

TEST_CASE("add_square") {
    std::vector<std::string> x = {"x"};
    auto sx = solve_master(resolve(x, "x^2", 2), 2);
    auto s = add_square(sx, 1);
    CHECK(s.S == G("x^2 + t^2", s));
    CHECK(s.resolution->partials()[1] == parse_polynomial("2*t", {"x", "t"}));
    auto s2 = add_square(s, 3);
    CHECK(s2.S == G("x^2 + t^2 + 3*t1^2", s2));
    CHECK_THROWS_AS(add_square(sx, 0), Error);
}

TEST_CASE("Faddeev-Popov") {
    SUBCASE("abelian rotation") {
        auto th = std::vector<ModuleVector>{{parse_polynomial("y", XY), parse_polynomial("-x", XY)}};
        std::vector<std::vector<std::vector<Polynomial>>> c(1, {{Polynomial(2)}});
        auto sol = faddeev_popov(XY, parse_polynomial(kEx7, XY), th, c);
        CHECK(sol.S == G("(x^2+y^2-1)^2/4 + (x*ys - y*xs)*b1", sol));
    }
    SUBCASE("so(3)") {
        std::vector<std::string> X = {"x", "y", "z"};
        auto P = [&](const char* s) { return parse_polynomial(s, X); };
        std::vector<ModuleVector> th = {{P("0"), P("-z"), P("y")}, {P("z"), P("0"), P("-x")}, {P("-y"), P("x"), P("0")}};
        auto eps = [](int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; };
        std::vector<std::vector<std::vector<Polynomial>>> c(3, std::vector<std::vector<Polynomial>>(3, std::vector<Polynomial>(3, Polynomial(3))));
        for (int l = 0; l < 3; ++l)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) c[l][i][j] = Polynomial::constant(3, -eps(i, j, l));
        // c is read off the commutators: [theta_i, theta_j] = c_ij^l theta_l
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    Polynomial comm(3);
                    for (int l = 0; l < 3; ++l)
                        comm += th[i][l] * th[j][k].derivative(l) - th[j][l] * th[i][k].derivative(l);
                    for (int l = 0; l < 3; ++l) comm -= c[l][i][j] * th[l][k];
                    CHECK(comm.is_zero());
                }
        auto sol = faddeev_popov(X, P("(x^2+y^2+z^2-1)^2"), th, c);
        CHECK(bracket(sol.S, sol.S).is_zero());
        CHECK(verify_master(sol, 6).ok(6));
        // the opposite structure constants violate the Jacobi/equivariance conditions
        for (auto& a : c)
            for (auto& b : a)
                for (auto& p : b) p = -p;
        CHECK_THROWS_AS(faddeev_popov(X, P("(x^2+y^2+z^2-1)^2"), th, c), Error);
    }
    SUBCASE("trivial algebra") {
        auto sol = faddeev_popov(XY, parse_polynomial(kEx7, XY), {}, {});
        CHECK(sol.S == G(kEx7, sol));
    }
    SUBCASE("invariance failure") {
        auto th = std::vector<ModuleVector>{{parse_polynomial("1", XY), parse_polynomial("0", XY)}};
        std::vector<std::vector<std::vector<Polynomial>>> c(1, {{Polynomial(2)}});
        CHECK_THROWS_WITH_AS(faddeev_popov(XY, parse_polynomial(kEx7, XY), th, c),
                             doctest::Contains("invariance"), Error);
    }
}

namespace {

BundleData bundle(std::vector<std::string> base, std::vector<std::string> fiber) {
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

}  // namespace

TEST_CASE("bundle quadratic forms") {
    SUBCASE("rank 1 flat") {
        auto b = bundle({"y"}, {"v"});
        b.g[0][0] = Polynomial::constant(2, 1);
        auto sol = bundle_solution(b);
        CHECK(sol.S == G("v^2/2 + ys*b1", sol));
        CHECK(sol.exact);
    }
    SUBCASE("degenerate g") {
        auto b = bundle({"y"}, {"v"});
        auto sol = bundle_solution(b);
        CHECK(sol.S == G("ys*b1", sol));
    }
    SUBCASE("gauge-transformed flat rank 2") {
        auto b = bundle({"y"}, {"v1", "v2"});
        std::vector<std::string> c = {"y", "v1", "v2"};
        auto P = [&](const char* s) { return parse_polynomial(s, c); };
        PMat h = {{P("1"), P("y")}, {P("0"), P("1")}};
        PMat hinv = {{P("1"), P("-y")}, {P("0"), P("1")}};
        PMat dh = {{P("0"), P("1")}, {P("0"), P("0")}};
        b.g = pmul(ptrans(h), h);
        PMat A = pmul(hinv, dh);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b.A[i][j][0] = A[i][j];
        CHECK(bundle_conditions(b).empty());
        auto sol = bundle_solution(b);
        CHECK(bracket(sol.S, sol.S).is_zero());
        CHECK_FALSE(b.A[0][1][0].is_zero());
    }
    SUBCASE("gauge-transformed curved rank 2 over A^2") {
        auto b = bundle({"y1", "y2"}, {"v1", "v2"});
        std::vector<std::string> c = {"y1", "y2", "v1", "v2"};
        auto P = [&](const char* s) { return parse_polynomial(s, c); };
        // orthonormal frame: A_2 = y1 J, curvature F_12 = J
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
        CHECK(bundle_conditions(b).empty());
        CHECK(bracket(bundle_solution(b).S, bundle_solution(b).S).is_zero());
    }
    SUBCASE("curvature violating the structure equation") {
        auto b = bundle({"y1", "y2"}, {"v1", "v2"});
        b.g[0][0] = b.g[1][1] = Polynomial::constant(4, 1);
        b.F[0][1][0][1] = b.F[1][0][1][0] = Polynomial::constant(4, 1);
        b.F[1][0][0][1] = b.F[0][1][1][0] = Polynomial::constant(4, -1);
        auto bad = bundle_conditions(b);
        REQUIRE_FALSE(bad.empty());
        CHECK(bad[0].find("(b) structure equation") != std::string::npos);
        CHECK_THROWS_WITH_AS(bundle_solution(b), doctest::Contains("(b) structure equation"), Error);
    }
    SUBCASE("non-orthogonal connection") {
        auto b = bundle({"y"}, {"v"});
        b.g[0][0] = Polynomial::constant(2, 1);
        b.A[0][0][0] = Polynomial::constant(2, 1);
        CHECK_THROWS_WITH_AS(bundle_solution(b), doctest::Contains("(a) orthogonality"), Error);
    }
}
