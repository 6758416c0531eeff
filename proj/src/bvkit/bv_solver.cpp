#include "bv_solver.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <random>
#include <set>

namespace bvkit {

TablePtr bv_table(const TateResolution& r) {
    std::vector<std::pair<std::string, int>> negs;
    for (const auto& g : r.generators()) negs.push_back({g.name, g.degree});
    return GeneratorTable::make(r.coords(), negs, true);
}

namespace {

int partner_index(const TateResolution& r, size_t k) {
    return r.ncoords() + static_cast<int>(r.generators().size() + k);
}

// Splits x = sum_mu x_mu * mu by the positive part mu of each monomial. Negative
// generators precede positive ones in table order, so a monomial is (neg)(pos)
// without a sign. The blocks x_mu are expressed over rt.
std::map<GMono, GradedPolynomial> positive_blocks(const GradedPolynomial& x, const TablePtr& rt) {
    std::map<GMono, GradedPolynomial> out;
    const auto& t = *x.table();
    for (const auto& [m, f] : x.terms()) {
        GMono neg, pos;
        for (const auto& ge : m) (t[ge.first].degree > 0 ? pos : neg).push_back(ge);
        auto it = out.try_emplace(pos, GradedPolynomial(rt)).first;
        it->second.add_term(neg, f);
    }
    return out;
}

class Lifts {
public:
    explicit Lifts(const TateResolution& r) : r_(r) {}
    // Some b of degree d-1 with delta(b) = a, for a of degree d.
    GradedPolynomial lift(const GradedPolynomial& a, int d, const std::string& what) {
        auto& bm = module(d);
        auto b = bm.lift(a);
        if (!b)
            throw LiftError(what + ": degree " + std::to_string(d) + " cocycle is not a boundary: " +
                            a.to_string());
        return *b;
    }
    const BoundaryModule& module(int d) {
        auto it = cache_.find(d);
        if (it == cache_.end())
            it = cache_.emplace(d, std::make_unique<BoundaryModule>(r_, r_.table(), d)).first;
        return *it->second;
    }

private:
    const TateResolution& r_;
    std::map<int, std::unique_ptr<BoundaryModule>> cache_;
};

// A random delta-exact element of degree d (zero when R^{d-1} is empty).
GradedPolynomial random_boundary(const TateResolution& r, Lifts& lifts, int d, std::mt19937_64& rng) {
    const auto& basis = lifts.module(d).source().basis();
    const TablePtr& t = r.table();
    GradedPolynomial w(t);
    if (basis.empty()) return w;
    int n = t->ncoords();
    std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> num(-2, 2), var(-1, n - 1);
    for (int k = 0; k < 2; ++k) {
        int c = num(rng);
        if (c == 0) c = 1;
        Polynomial f = Polynomial::constant(n, Rational(c) / 2);
        int v = var(rng);
        if (v >= 0) f = f * Polynomial::variable(n, v);
        w.add_term(basis[pick(rng)], f);
    }
    return tate_delta(r, w);
}

GradedPolynomial s0_element(const TateResolution& r, const TablePtr& t) {
    GradedPolynomial s(t);
    if (r.s0()) s.add_term({}, *r.s0());
    return s;
}

}  // namespace

GradedPolynomial s_lin(const TateResolution& r) {
    TablePtr t = bv_table(r);
    GradedPolynomial s = s0_element(r, t);
    const auto& gens = r.generators();
    for (size_t k = 0; k < gens.size(); ++k)
        s += retable(gens[k].delta, t) * GradedPolynomial::generator(t, partner_index(r, k));
    return s;
}

MasterSolution solve_master(ResolutionPtr r, const SolveOptions& opt) {
    if (opt.p_max < 0) throw invalid("p_max must be non-negative");
    if (r->depth() < opt.p_max)
        throw precondition("resolution depth " + std::to_string(r->depth()) + " is below p_max " +
                           std::to_string(opt.p_max));
    MasterSolution sol;
    sol.resolution = r;
    sol.table = bv_table(*r);
    sol.S = s_lin(*r);
    if (!r->s0()) sol.one_form = r->partials();
    Lifts lifts(*r);
    std::mt19937_64 rng(opt.perturbation_seed.value_or(0));
    const TablePtr& T = sol.table;
    for (int p = 1; p <= opt.p_max; ++p) {
        GradedPolynomial res = sol.action().self_bracket();
        int w = res.min_weight();
        sol.residual_weights.push_back({p, w});
        if (res.is_zero()) {
            sol.log.push_back("p=" + std::to_string(p) + ": residual vanishes");
            continue;
        }
        if (!res.in_I2()) throw Error(ErrorKind::Internal, "residual left I^(2) at p=" + std::to_string(p));
        if (w < p + 1)
            throw Error(ErrorKind::Internal, "residual weight " + std::to_string(w) + " below " +
                                                 std::to_string(p + 1));
        auto blocks = positive_blocks(gr_project(res, p + 1), r->table());
        GradedPolynomial v(T);
        for (const auto& [mu, rmu] : blocks) {
            GradedPolynomial b = lifts.lift(rmu * Rational(-1, 2), -p, "obstruction at weight " + std::to_string(p + 1));
            if (opt.perturbation_seed) b += random_boundary(*r, lifts, -p - 1, rng);
            v += retable(b, T) * GradedPolynomial::term(T, mu, Polynomial::constant(T->ncoords(), 1));
        }
        sol.S += v;
        sol.log.push_back("p=" + std::to_string(p) + ": " + std::to_string(blocks.size()) + " blocks at weight " +
                          std::to_string(p + 1));
    }
    GradedPolynomial res = sol.action().self_bracket();
    if (!res.is_zero() && (!res.in_I2() || res.min_weight() <= opt.p_max))
        throw Error(ErrorKind::Internal, "final residual is not in F^" + std::to_string(opt.p_max + 1));
    sol.exact = res.is_zero();
    sol.order = opt.p_max;
    return sol;
}

VerifyReport verify_master(const MasterSolution& sol, int p) {
    VerifyReport rep;
    GradedPolynomial res = sol.action().self_bracket();
    rep.exact = res.is_zero();
    int bad_weight = INT_MAX;  // lowest weight of a term outside I^(2)
    for (const auto& [m, f] : res.terms()) {
        auto g = grading(*res.table(), m);
        if (g.positive_count < 2) bad_weight = std::min(bad_weight, g.weight);
    }
    if (bad_weight != INT_MAX) {
        rep.order = -1;
        rep.failure_weight = bad_weight;
        GradedPolynomial f(res.table());
        for (const auto& [m, c] : res.terms()) {
            auto g = grading(*res.table(), m);
            if (g.positive_count < 2 && g.weight == bad_weight) f.add_term(m, c);
        }
        rep.failure = f;
    } else {
        int w = res.min_weight();
        rep.order = res.is_zero() ? p : std::min(p, w - 1);
        if (rep.order < p) {
            rep.failure_weight = w;
            rep.failure = gr_project(res, w);
        }
    }
    const auto& r = *sol.resolution;
    rep.restricts_to_s0 = truncate(sol.S, 0) == s0_element(r, sol.table);
    rep.associated = (sol.S - retable(s_lin(r), sol.table)).in_I2();
    return rep;
}

namespace {

// exp(ad_u) applied to body + S0, where S0 is known through its one-form.
GradedPolynomial transport_step(const GradedPolynomial& u, const GradedPolynomial& body,
                                const std::vector<Polynomial>& one_form, int P) {
    GradedPolynomial out = exp_ad(u, body, P);
    if (one_form.empty()) return out;
    // ad_u(S0) = [u, S0] = -[S0, u]
    GradedPolynomial term = -truncate(Action{GradedPolynomial(body.table()), one_form}.apply(u), P);
    for (int k = 1; !term.is_zero(); ++k) {
        out += term;
        term = truncate(bracket(u, term), P) * Rational(1, k + 1);
    }
    return out;
}

}  // namespace

GradedPolynomial transport(const GaugeWord& w, const MasterSolution& sol, int P) {
    GradedPolynomial cur = truncate(sol.S, P);
    for (const auto& u : w.u) cur = transport_step(u, cur, sol.one_form, P);
    return cur;
}

GaugeWord gauge_relate(const MasterSolution& a, const MasterSolution& b, int p_max) {
    const auto& r = *a.resolution;
    if (a.resolution != b.resolution) {
        const auto& ga = r.generators();
        const auto& gb = b.resolution->generators();
        bool same = r.coords() == b.resolution->coords() && ga.size() == gb.size();
        for (size_t k = 0; same && k < ga.size(); ++k)
            same = ga[k].name == gb[k].name && ga[k].delta == retable(gb[k].delta, r.table());
        if (!same) throw precondition("gauge_relate: solutions use different resolutions");
    }
    if (a.multivalued() != b.multivalued()) throw precondition("gauge_relate: mixed multivalued input");
    for (const auto* s : {&a, &b})
        if (!s->exact && s->order < p_max)
            throw precondition("gauge_relate: a solution is certified only to order " + std::to_string(s->order));
    if (r.depth() < p_max) throw precondition("gauge_relate: resolution depth below p_max");
    const TablePtr& T = a.table;
    GradedPolynomial target = truncate(retable(b.S, T), p_max);
    GradedPolynomial cur = truncate(a.S, p_max);
    Lifts lifts(r);
    GaugeWord word;
    int last = 0;
    for (;;) {
        GradedPolynomial diff = target - cur;
        if (diff.is_zero()) break;
        if (!diff.in_I2()) throw precondition("gauge_relate: solutions differ outside I^(2)");
        int w = diff.min_weight();
        if (w <= last) throw Error(ErrorKind::Internal, "gauge step did not raise the filtration weight");
        last = w;
        GradedPolynomial u(T);
        for (const auto& [mu, d] : positive_blocks(gr_project(diff, w), r.table())) {
            GradedPolynomial c = lifts.lift(-d, -w, "gauge step at weight " + std::to_string(w));
            u += retable(c, T) * GradedPolynomial::term(T, mu, Polynomial::constant(T->ncoords(), 1));
        }
        word.u.push_back(u);
        cur = transport_step(u, cur, a.one_form, p_max);
    }
    return word;
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

MasterSolution finish_exact(ResolutionPtr r, GradedPolynomial S, std::vector<Polynomial> one_form,
                            const std::string& what) {
    MasterSolution sol;
    sol.resolution = std::move(r);
    sol.table = S.table();
    sol.S = std::move(S);
    sol.one_form = std::move(one_form);
    GradedPolynomial res = sol.action().self_bracket();
    if (!res.is_zero()) {
        int w = res.min_weight();
        throw Error(ErrorKind::CheckFailed,
                    what + ": [S,S] != 0; lowest part at weight " + std::to_string(w) + ": " +
                        gr_project(res, w).to_string());
    }
    sol.exact = true;
    sol.order = std::max(sol.S.max_weight(), 0);
    sol.log.push_back(what + ": [S,S] = 0");
    return sol;
}

}  // namespace

MasterSolution trivial_solution(const std::vector<std::pair<int, int>>& W, const Matrix& d) {
    std::vector<int> deg;
    for (const auto& [i, dim] : W) {
        if (i > -1) throw invalid("trivial_solution: W must live in degrees <= -1");
        if (dim < 0) throw invalid("trivial_solution: negative dimension");
        for (int k = 0; k < dim; ++k) deg.push_back(i);
    }
    size_t N = deg.size();
    if (d.rows() != N || d.cols() != N) throw invalid("trivial_solution: differential has the wrong size");
    for (size_t k = 0; k < N; ++k)
        for (size_t j = 0; j < N; ++j)
            if (d(k, j) != 0 && deg[k] != deg[j] + 1)
                throw invalid("trivial_solution: differential must raise degree by one");
    Matrix d2 = d * d;
    for (size_t k = 0; k < N; ++k)
        for (size_t j = 0; j < N; ++j)
            if (d2(k, j) != 0) throw invalid("trivial_solution: d^2 != 0");
    // acyclic: in each degree i, dim ker(d on W^i) = rank(d: W^{i-1} -> W^i)
    std::set<int> degrees(deg.begin(), deg.end());
    auto block = [&](int from, int to) {
        std::vector<size_t> rows, cols;
        for (size_t k = 0; k < N; ++k) {
            if (deg[k] == to) rows.push_back(k);
            if (deg[k] == from) cols.push_back(k);
        }
        Matrix m(rows.size(), cols.size());
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = 0; b < cols.size(); ++b) m(a, b) = d(rows[a], cols[b]);
        return std::make_pair(m, cols.size());
    };
    for (int i : degrees) {
        auto [out, dim] = block(i, i + 1);
        auto [in, dim_in] = block(i - 1, i);
        size_t ker = dim - (out.rows() ? out.rank() : 0);
        size_t im = in.cols() && in.rows() ? in.rank() : 0;
        if (ker != im)
            throw invalid("trivial_solution: W is not acyclic in degree " + std::to_string(i));
    }
    auto r = std::make_shared<TateResolution>(std::vector<std::string>{}, std::vector<Polynomial>{},
                                              Polynomial(0));
    std::vector<size_t> order(N);
    for (size_t k = 0; k < N; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return deg[a] > deg[b]; });
    std::vector<int> position(N);
    std::vector<std::pair<std::string, int>> negs;
    for (size_t k = 0; k < N; ++k) {
        position[order[k]] = static_cast<int>(k);
        negs.push_back({"w" + std::to_string(order[k] + 1) + "s", deg[order[k]] - 1});
    }
    TablePtr full = GeneratorTable::make({}, negs, false);
    for (size_t k = 0; k < N; ++k) {
        size_t j = order[k];
        GradedPolynomial delta(full);
        for (size_t l = 0; l < N; ++l)
            if (d(l, j) != 0)
                delta.add_term({{static_cast<uint16_t>(position[l]), 1}}, Polynomial::constant(0, d(l, j)));
        r->add_generator(negs[k].first, negs[k].second, delta);
    }
    int lowest = 0;
    for (int i : deg) lowest = std::min(lowest, i - 1);
    if (!check_acyclic(*r, -lowest + 1).ok) throw Error(ErrorKind::Internal, "trivial resolution is not acyclic");
    r->set_depth(-lowest + 1);
    GradedPolynomial S = s_lin(*r);
    return finish_exact(r, S, {}, "trivial solution");
}

MasterSolution product_solution(const MasterSolution& a, const MasterSolution& b) {
    const auto& ra = *a.resolution;
    const auto& rb = *b.resolution;
    std::set<std::string> names;
    auto claim = [&](const std::string& s) {
        if (!names.insert(s).second) throw invalid("product_solution: name clash on '" + s + "'");
    };
    for (const auto* r : {&ra, &rb}) {
        for (const auto& c : r->coords()) claim(c);
        for (const auto& c : r->coords()) claim(c + "s");
        for (const auto& g : r->generators()) {
            claim(g.name);
            claim(g.name.substr(0, g.name.size() - 1));
        }
    }
    int na = ra.ncoords(), nb = rb.ncoords(), n = na + nb;
    std::vector<std::string> coords = ra.coords();
    coords.insert(coords.end(), rb.coords().begin(), rb.coords().end());
    std::vector<int> cmap_a(na), cmap_b(nb);
    for (int i = 0; i < na; ++i) cmap_a[i] = i;
    for (int i = 0; i < nb; ++i) cmap_b[i] = na + i;
    bool multi = a.multivalued() || b.multivalued();
    std::vector<Polynomial> partials;
    for (const auto& p : ra.partials()) partials.push_back(p.embed(n, cmap_a));
    for (const auto& p : rb.partials()) partials.push_back(p.embed(n, cmap_b));
    std::optional<Polynomial> s0;
    if (!multi) s0 = ra.s0()->embed(n, cmap_a) + rb.s0()->embed(n, cmap_b);
    auto r = std::make_shared<TateResolution>(coords, partials, s0);

    // generators of both factors, by descending degree
    struct Item {
        const TateResolution* src;
        size_t k;
    };
    std::vector<Item> items;
    for (size_t k = 0; k < ra.generators().size(); ++k) items.push_back({&ra, k});
    for (size_t k = 0; k < rb.generators().size(); ++k) items.push_back({&rb, k});
    std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        return x.src->generators()[x.k].degree > y.src->generators()[y.k].degree;
    });
    std::vector<std::pair<std::string, int>> negs;
    for (const auto& it : items) negs.push_back({it.src->generators()[it.k].name, it.src->generators()[it.k].degree});
    TablePtr bvT = GeneratorTable::make(coords, negs, true);
    TablePtr rT = GeneratorTable::make(coords, negs, false);
    // generator index maps from each factor's BV table into bvT
    auto gen_map = [&](const TateResolution& src, const std::vector<int>& cmap) {
        size_t ng = src.generators().size();
        std::vector<int> m(src.ncoords() + 2 * ng);
        for (int i = 0; i < src.ncoords(); ++i) m[i] = bvT->dual_of_coord(cmap[i]);
        for (size_t k = 0; k < ng; ++k) {
            int idx = bvT->index_of(src.generators()[k].name);
            m[src.ncoords() + k] = idx;
            m[src.ncoords() + ng + k] = (*bvT)[idx].partner;
        }
        return m;
    };
    auto map_a = gen_map(ra, cmap_a), map_b = gen_map(rb, cmap_b);
    for (const auto& it : items) {
        const auto& g = it.src->generators()[it.k];
        bool first = it.src == &ra;
        GradedPolynomial delta = embed(g.delta, bvT, first ? cmap_a : cmap_b, first ? map_a : map_b);
        r->add_generator(g.name, g.degree, retable(delta, rT));
    }
    r->set_depth(std::min(ra.depth(), rb.depth()));

    GradedPolynomial Sa = embed(a.S, bvT, cmap_a, map_a), Sb = embed(b.S, bvT, cmap_b, map_b);
    MasterSolution sol;
    sol.resolution = r;
    sol.table = bvT;
    sol.S = Sa + Sb;
    if (multi) sol.one_form = partials;
    // residual additivity across the disjoint tables
    GradedPolynomial ra_res = embed(a.action().self_bracket(), bvT, cmap_a, map_a);
    GradedPolynomial rb_res = embed(b.action().self_bracket(), bvT, cmap_b, map_b);
    if (sol.action().self_bracket() != ra_res + rb_res)
        throw Error(ErrorKind::Internal, "product residual is not the sum of the factor residuals");
    sol.exact = a.exact && b.exact;
    if (a.exact && b.exact)
        sol.order = std::max(a.order, b.order);
    else if (a.exact)
        sol.order = b.order;
    else if (b.exact)
        sol.order = a.order;
    else
        sol.order = std::min(a.order, b.order);
    sol.log.push_back("product");
    return sol;
}

MasterSolution add_square(const MasterSolution& a, const Rational& c, const std::string& name) {
    if (c == 0) throw invalid("add_square: coefficient must be nonzero");
    std::set<std::string> used;
    for (const auto& g : a.table->generators()) used.insert(g.name);
    for (const auto& x : a.table->coords()) used.insert(x);
    std::string t = name;
    if (t.empty()) {
        t = "t";
        for (int k = 1; used.count(t) || used.count(t + "s"); ++k) t = "t" + std::to_string(k);
    }
    std::vector<std::string> coords = {t};
    Polynomial sq = Polynomial::variable(1, 0) * Polynomial::variable(1, 0) * c;
    auto r = std::make_shared<TateResolution>(coords, std::vector<Polynomial>{}, sq);
    r->set_depth(std::max(a.resolution->depth(), 1));
    TablePtr T = bv_table(*r);
    MasterSolution b = finish_exact(r, GradedPolynomial::scalar(T, sq), {}, "square");
    if (a.multivalued()) {
        // keep the product multivalued: the square enters through its differential
        b.one_form = r->partials();
        b.S = GradedPolynomial(T);
        auto r2 = std::make_shared<TateResolution>(coords, r->partials(), std::nullopt);
        r2->set_depth(r->depth());
        b.resolution = r2;
    }
    MasterSolution out = product_solution(a, b);
    out.log.push_back("added square " + to_string(c) + "*" + t + "^2");
    return out;
}

MasterSolution faddeev_popov(const std::vector<std::string>& coords, const Polynomial& s0,
                             const std::vector<ModuleVector>& theta,
                             const std::vector<std::vector<std::vector<Polynomial>>>& structure) {
    int n = static_cast<int>(coords.size());
    size_t m = theta.size();
    for (size_t i = 0; i < m; ++i) {
        if (theta[i].size() != coords.size()) throw invalid("faddeev_popov: vector field has wrong length");
        Polynomial act(n);
        for (int k = 0; k < n; ++k) act += theta[i][k] * s0.derivative(k);
        if (!act.is_zero())
            throw invalid("faddeev_popov: invariance failure theta_" + std::to_string(i + 1) +
                          "(S0) = " + act.to_string(coords));
    }
    if (structure.size() != m) throw invalid("faddeev_popov: structure constants have wrong size");
    for (size_t l = 0; l < m; ++l) {
        if (structure[l].size() != m) throw invalid("faddeev_popov: structure constants have wrong size");
        for (size_t i = 0; i < m; ++i) {
            if (structure[l][i].size() != m) throw invalid("faddeev_popov: structure constants have wrong size");
            for (size_t j = 0; j < m; ++j)
                if (structure[l][i][j] != -structure[l][j][i])
                    throw invalid("faddeev_popov: structure constants are not antisymmetric");
        }
    }
    auto r = std::make_shared<TateResolution>(coords, std::vector<Polynomial>{}, s0);
    for (size_t i = 0; i < m; ++i)
        r->add_generator(level_prefix(1) + std::to_string(i + 1) + "s", -2,
                         vector_field_element(r->table(), theta[i]));
    TablePtr T = bv_table(*r);
    GradedPolynomial S = GradedPolynomial::scalar(T, s0);
    auto gen = [&](int idx) { return GradedPolynomial::generator(T, idx); };
    int neg0 = n, pos0 = n + static_cast<int>(m);
    for (size_t i = 0; i < m; ++i) S += vector_field_element(T, theta[i]) * gen(pos0 + static_cast<int>(i));
    for (size_t l = 0; l < m; ++l)
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                if (structure[l][i][j].is_zero()) continue;
                S += gen(neg0 + static_cast<int>(l)) * gen(pos0 + static_cast<int>(i)) *
                     gen(pos0 + static_cast<int>(j)) * (structure[l][i][j] * Rational(-1, 2));
            }
    return finish_exact(r, S, {}, "Faddeev-Popov action");
}

namespace {

std::string idx(std::initializer_list<size_t> ks) {
    std::string s;
    for (size_t k : ks) s += (s.empty() ? "" : ",") + std::to_string(k + 1);
    return s;
}

}  // namespace

std::vector<std::string> bundle_conditions(const BundleData& b) {
    size_t m = b.base.size(), r = b.fiber.size();
    std::vector<std::string> coords = b.base;
    coords.insert(coords.end(), b.fiber.begin(), b.fiber.end());
    int n = static_cast<int>(coords.size());
    if (b.g.size() != r || b.A.size() != r || b.F.size() != r) throw invalid("bundle: data has the wrong rank");
    for (size_t i = 0; i < r; ++i) {
        if (b.g[i].size() != r || b.A[i].size() != r || b.F[i].size() != r)
            throw invalid("bundle: data has the wrong rank");
        for (size_t j = 0; j < r; ++j) {
            if (b.A[i][j].size() != m || b.F[i][j].size() != m) throw invalid("bundle: data has the wrong base dimension");
            for (const auto& row : b.F[i][j])
                if (row.size() != m) throw invalid("bundle: data has the wrong base dimension");
        }
    }
    auto on_base = [&](const Polynomial& p, const std::string& what) {
        if (p.nvars() != n) throw invalid("bundle: " + what + " has the wrong number of variables");
        for (int k = static_cast<int>(m); k < n; ++k)
            if (!p.derivative(k).is_zero()) throw invalid("bundle: " + what + " depends on a fiber coordinate");
    };
    std::vector<std::string> bad;
    auto report = [&](const std::string& label, const Polynomial& v) {
        if (!v.is_zero()) bad.push_back(label + " = " + v.to_string(coords) + " != 0");
    };
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            on_base(b.g[i][j], "g");
            if (b.g[i][j] != b.g[j][i]) throw invalid("bundle: g is not symmetric");
            for (size_t mu = 0; mu < m; ++mu) {
                on_base(b.A[i][j][mu], "A");
                for (size_t nu = 0; nu < m; ++nu) {
                    on_base(b.F[i][j][mu][nu], "F");
                    if (b.F[i][j][mu][nu] != -b.F[j][i][mu][nu] || b.F[i][j][mu][nu] != -b.F[i][j][nu][mu])
                        throw invalid("bundle: F must be antisymmetric in both index pairs");
                }
            }
        }
    const auto& A = b.A;
    const auto& F = b.F;
    const auto& g = b.g;
    // (a) d_mu g_ij = A^k_{i mu} g_kj + A^k_{j mu} g_ik
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i; j < r; ++j) {
                Polynomial v = g[i][j].derivative(static_cast<int>(mu));
                for (size_t k = 0; k < r; ++k) v -= A[k][i][mu] * g[k][j] + A[k][j][mu] * g[i][k];
                report("(a) orthogonality [mu,i,j=" + idx({mu, i, j}) + "]", v);
            }
    // (b) dA + A^A = F g
    for (size_t mu = 0; mu < m; ++mu)
        for (size_t nu = mu + 1; nu < m; ++nu)
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < r; ++j) {
                    Polynomial v = A[i][j][nu].derivative(static_cast<int>(mu)) - A[i][j][mu].derivative(static_cast<int>(nu));
                    for (size_t k = 0; k < r; ++k)
                        v += A[i][k][mu] * A[k][j][nu] - A[i][k][nu] * A[k][j][mu] - F[i][k][mu][nu] * g[k][j];
                    report("(b) structure equation [i,j,mu,nu=" + idx({i, j, mu, nu}) + "]", v);
                }
    // (c) dF^ij + A^i_l ^ F^lj - A^j_l ^ F^li = 0
    for (size_t a = 0; a < m; ++a)
        for (size_t c = a + 1; c < m; ++c)
            for (size_t e = c + 1; e < m; ++e)
                for (size_t i = 0; i < r; ++i)
                    for (size_t j = i + 1; j < r; ++j) {
                        Polynomial v(n);
                        const size_t cyc[3][3] = {{a, c, e}, {c, e, a}, {e, a, c}};
                        for (const auto& q : cyc) {
                            v += F[i][j][q[1]][q[2]].derivative(static_cast<int>(q[0]));
                            for (size_t l = 0; l < r; ++l)
                                v += A[i][l][q[0]] * F[l][j][q[1]][q[2]] - A[j][l][q[0]] * F[l][i][q[1]][q[2]];
                        }
                        report("(c) Bianchi identity [i,j,mu,nu,lambda=" + idx({i, j, a, c, e}) + "]", v);
                    }
    return bad;
}

MasterSolution bundle_solution(const BundleData& b) {
    auto bad = bundle_conditions(b);
    if (!bad.empty()) {
        std::string msg = "bundle: hypotheses violated:";
        for (const auto& s : bad) msg += "\n  " + s;
        throw Error(ErrorKind::CheckFailed, msg);
    }
    size_t m = b.base.size(), r = b.fiber.size();
    std::vector<std::string> coords = b.base;
    coords.insert(coords.end(), b.fiber.begin(), b.fiber.end());
    int n = static_cast<int>(coords.size());
    auto v = [&](size_t i) { return Polynomial::variable(n, static_cast<int>(m + i)); };
    Polynomial s0(n);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) s0 += b.g[i][j] * v(i) * v(j) * Rational(1, 2);
    auto res = std::make_shared<TateResolution>(coords, std::vector<Polynomial>{}, s0);
    for (size_t mu = 0; mu < m; ++mu) {
        const TablePtr& t = res->table();
        auto gen = [&](int k) { return GradedPolynomial::generator(t, k); };
        GradedPolynomial d = gen(t->dual_of_coord(static_cast<int>(mu)));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j)
                if (!b.A[i][j][mu].is_zero())
                    d -= gen(t->dual_of_coord(static_cast<int>(m + i))) * (b.A[i][j][mu] * v(j));
        res->add_generator(level_prefix(1) + std::to_string(mu + 1) + "s", -2, d);
    }
    GradedPolynomial S = s_lin(*res);
    const TablePtr& T = S.table();
    auto gen = [&](int k) { return GradedPolynomial::generator(T, k); };
    auto beta = [&](size_t mu) { return gen((*T)[n + static_cast<int>(mu)].partner); };
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            for (size_t mu = 0; mu < m; ++mu)
                for (size_t nu = 0; nu < m; ++nu) {
                    if (b.F[i][j][mu][nu].is_zero()) continue;
                    S += beta(mu) * beta(nu) * gen(T->dual_of_coord(static_cast<int>(m + i))) *
                         gen(T->dual_of_coord(static_cast<int>(m + j))) * (b.F[i][j][mu][nu] * Rational(1, 4));
                }
    return finish_exact(res, S, {}, "bundle quadratic form");
}

}  // namespace bvkit
