#include "brst.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "errors.hpp"

namespace bvkit {

namespace {

Error check_failed(const std::string& msg) { return Error(ErrorKind::CheckFailed, msg); }

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.compare(b, MonomialOrder::Grevlex) < 0; }
};

// Sparse vector over Q indexed by (component, monomial).
using Key = std::pair<int, Monomial>;
struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
        if (a.first != b.first) return a.first < b.first;
        return MonoLess()(a.second, b.second);
    }
};
using SVec = std::map<Key, Rational, KeyLess>;
using Coeffs = std::vector<Rational>;

void add_poly(SVec& v, int comp, const Polynomial& p, const Rational& c = 1) {
    for (const auto& t : p.terms()) {
        Key k{comp, t.mono};
        Rational x = v[k] + t.coeff * c;
        if (x == 0)
            v.erase(k);
        else
            v[k] = x;
    }
}

SVec combine(const std::vector<SVec>& cols, const Coeffs& y) {
    SVec out;
    for (size_t j = 0; j < cols.size(); ++j) {
        if (y[j] == 0) continue;
        for (const auto& [k, c] : cols[j]) {
            Rational x = out[k] + c * y[j];
            if (x == 0)
                out.erase(k);
            else
                out[k] = x;
        }
    }
    return out;
}

// Matrix whose columns are cols restricted to the keys accepted by keep.
Matrix columns_matrix(const std::vector<SVec>& cols, const std::function<bool(const Key&)>& keep) {
    std::map<Key, size_t, KeyLess> rows;
    for (const auto& c : cols)
        for (const auto& kv : c)
            if (keep(kv.first)) rows.emplace(kv.first, 0);
    size_t i = 0;
    for (auto& kv : rows) kv.second = i++;
    Matrix m(rows.size(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [k, c] : cols[j]) {
            auto it = rows.find(k);
            if (it != rows.end()) m(it->second, j) = c;
        }
    return m;
}

std::vector<Coeffs> kernel_of(const std::vector<SVec>& cols, const std::function<bool(const Key&)>& keep) {
    Matrix m = columns_matrix(cols, keep);
    if (m.rows() == 0) {
        std::vector<Coeffs> id;
        for (size_t j = 0; j < cols.size(); ++j) {
            Coeffs e(cols.size());
            e[j] = 1;
            id.push_back(e);
        }
        return id;
    }
    return m.kernel();
}

bool all_keys(const Key&) { return true; }

// Basis of span(images) intersected with the vectors whose keys all have degree <= D.
std::vector<SVec> boundaries_in_slice(const std::vector<SVec>& images, int D) {
    auto high = [D](const Key& k) { return k.second.degree() > D; };
    std::vector<SVec> out;
    for (const auto& y : kernel_of(images, high)) {
        SVec v = combine(images, y);
        if (!v.empty()) out.push_back(v);
    }
    return out;
}

struct Quotient {
    size_t rank_b = 0;
    std::vector<size_t> reps;  // indices into Z
};

// Z is linearly independent and should contain span(B).
Quotient quotient(const std::vector<SVec>& Z, const std::vector<SVec>& B) {
    std::vector<SVec> all = B;
    all.insert(all.end(), Z.begin(), Z.end());
    Matrix m = columns_matrix(all, all_keys);
    Quotient q;
    for (size_t piv : m.rref()) {
        if (piv < B.size())
            ++q.rank_b;
        else
            q.reps.push_back(piv - B.size());
    }
    if (q.rank_b + q.reps.size() != Z.size()) throw check_failed("coboundary slice is not contained in the cocycles");
    return q;
}

bool in_span(const std::vector<SVec>& span, const SVec& v) {
    if (v.empty()) return true;
    std::vector<SVec> all = span;
    size_t r0 = columns_matrix(all, all_keys).rank();
    all.push_back(v);
    return columns_matrix(all, all_keys).rank() == r0;
}

Polynomial zero_poly(int n) { return Polynomial(n); }

bool is_zero_vector(const ModuleVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool module_contains(int n, int rank, const std::vector<ModuleVector>& gens, const ModuleVector& v) {
    if (is_zero_vector(v)) return true;
    if (gens.empty()) return false;
    return ModuleBasis(n, rank, gens).contains(v);
}

std::string cochain_string(const ModuleVector& g, const std::vector<std::string>& names) {
    std::string s = "(";
    for (size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + g[i].to_string(names);
    return s + ")";
}

int max_coefficient_degree(const std::vector<ModuleVector>& fields) {
    int d = 0;
    for (const auto& v : fields)
        for (const auto& p : v) d = std::max(d, p.degree());
    return d;
}

}  // namespace

GroebnerBasis jacobian_ring(int nvars, const std::vector<Polynomial>& partials, MonomialOrder order) {
    return GroebnerBasis(nvars, partials, order);
}

Polynomial apply_field(const ModuleVector& v, const Polynomial& f) {
    int n = static_cast<int>(v.size());
    Polynomial out(f.nvars());
    for (int k = 0; k < n; ++k)
        if (!v[k].is_zero()) out += v[k] * f.derivative(k);
    return out;
}

ModuleVector commutator(const ModuleVector& a, const ModuleVector& b) {
    ModuleVector out;
    for (size_t k = 0; k < a.size(); ++k) out.push_back(apply_field(a, b[k]) - apply_field(b, a[k]));
    return out;
}

SymmetryPresentation symmetry_presentation(const std::vector<std::string>& coords,
                                           const std::vector<Polynomial>& partials, MonomialOrder order) {
    SymmetryPresentation P;
    P.order = order;
    P.coords = coords;
    P.partials = partials;
    int n = static_cast<int>(coords.size());
    TateResolution r0(coords, partials, std::nullopt);
    P.partials = r0.partials();
    P.table = r0.table();
    if (n == 0) return P;
    const auto& dS = P.partials;

    std::vector<ModuleVector> koszul;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            if (dS[p].is_zero() && dS[q].is_zero()) continue;
            ModuleVector k(n, zero_poly(n));
            k[p] = dS[q];
            k[q] = -dS[p];
            koszul.push_back(k);
        }

    std::vector<ModuleVector> rank1;
    for (const auto& d : dS) rank1.push_back({d});
    for (const auto& s : syzygy_basis(n, 1, rank1)) {
        std::vector<ModuleVector> span = koszul;
        span.insert(span.end(), P.tau.begin(), P.tau.end());
        if (!module_contains(n, n, span, s)) P.tau.push_back(s);
    }
    size_t r = P.tau.size();

    std::vector<ModuleVector> gens = P.tau;
    gens.insert(gens.end(), koszul.begin(), koszul.end());
    BoundaryModule bm(r0, P.table, -1);
    auto hat = [&](const ModuleVector& v) { return vector_field_element(P.table, v); };
    auto lift2 = [&](const GradedPolynomial& a, const std::string& what) {
        auto b = bm.lift(a);
        if (!b) throw check_failed("symmetry presentation: " + what + " is not a Koszul field");
        if (tate_delta(r0, *b) != a) throw check_failed("symmetry presentation: bad certificate for " + what);
        return *b;
    };

    // relations: second syzygies projected to the tau part
    if (r > 0) {
        std::vector<ModuleVector> kept;
        for (const auto& s : syzygy_basis(n, n, gens)) {
            ModuleVector rel(s.begin(), s.begin() + r);
            if (module_contains(n, static_cast<int>(r), kept, rel)) continue;
            kept.push_back(rel);
        }
        for (const auto& rel : kept) {
            GradedPolynomial w(P.table);
            for (size_t j = 0; j < r; ++j) w += hat(P.tau[j]) * rel[j];
            P.relations.push_back(rel);
            P.bivectors.push_back(lift2(-w, "relation"));
        }
    }

    P.f.assign(r, std::vector<std::vector<Polynomial>>(r, std::vector<Polynomial>(r, zero_poly(n))));
    P.g.assign(r, std::vector<GradedPolynomial>(r, GradedPolynomial(P.table)));
    if (r > 0) {
        ModuleBasis tracked(n, n, gens, MonomialOrder::Grevlex, true);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i + 1; j < r; ++j) {
                ModuleVector c = commutator(P.tau[i], P.tau[j]);
                auto coef = tracked.lift(c);
                if (!coef) throw check_failed("symmetry presentation: commutator outside the symmetry module");
                ModuleVector rem = c;
                for (size_t k = 0; k < r; ++k) {
                    P.f[i][j][k] = (*coef)[k];
                    P.f[j][i][k] = -(*coef)[k];
                    for (int m = 0; m < n; ++m) rem[m] -= (*coef)[k] * P.tau[k][m];
                }
                P.g[i][j] = lift2(hat(rem), "commutator remainder");
                P.g[j][i] = -P.g[i][j];
            }
    }

    // invariants, checked exactly
    for (const auto& t : P.tau) {
        Polynomial s(n);
        for (int k = 0; k < n; ++k) s += t[k] * dS[k];
        if (!s.is_zero()) throw check_failed("symmetry presentation: tau does not annihilate S0");
    }
    for (size_t a = 0; a < P.relations.size(); ++a) {
        GradedPolynomial w = tate_delta(r0, P.bivectors[a]);
        for (size_t j = 0; j < r; ++j) w += hat(P.tau[j]) * P.relations[a][j];
        if (!w.is_zero()) throw check_failed("symmetry presentation: relation certificate fails");
    }
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            GradedPolynomial w = hat(commutator(P.tau[i], P.tau[j])) - tate_delta(r0, P.g[i][j]);
            for (size_t k = 0; k < r; ++k) w -= hat(P.tau[k]) * P.f[i][j][k];
            if (!w.is_zero()) throw check_failed("symmetry presentation: bracket certificate fails");
            for (size_t k = 0; k < r; ++k)
                if (P.f[i][j][k] != -P.f[j][i][k]) throw check_failed("symmetry presentation: f not antisymmetric");
        }
    return P;
}

// ---- H0 ----

namespace {

CohomologyReport h0_at(const SymmetryPresentation& P, const GroebnerBasis& gb, int D) {
    if (D < 0) throw invalid("degree bound must be >= 0");
    CohomologyReport rep;
    rep.p = 0;
    rep.bound = D;
    int n = P.nvars();
    auto stdm = gb.standard_monomials(D);
    std::vector<SVec> cols;
    for (const auto& m : stdm) {
        SVec col;
        Polynomial f = Polynomial::monomial(m, 1);
        for (size_t i = 0; i < P.tau.size(); ++i) add_poly(col, static_cast<int>(i), gb.normal_form(apply_field(P.tau[i], f)));
        cols.push_back(col);
    }
    for (const auto& y : kernel_of(cols, all_keys)) {
        std::vector<Term> terms;
        for (size_t k = 0; k < stdm.size(); ++k)
            if (y[k] != 0) terms.push_back({stdm[k], y[k]});
        Polynomial f = Polynomial::from_terms(n, terms);
        for (const auto& t : P.tau)
            if (!gb.normal_form(apply_field(t, f)).is_zero()) throw check_failed("h0: basis element is not invariant");
        rep.functions.push_back(f);
        rep.basis.push_back(f.to_string(P.coords));
    }
    rep.dim = rep.functions.size();
    return rep;
}

}  // namespace

CohomologyReport h0(const SymmetryPresentation& P, int D) {
    GroebnerBasis gb = jacobian_ring(P.nvars(), P.partials, P.order);
    CohomologyReport rep = h0_at(P, gb, D);
    rep.stable = h0_at(P, gb, D + 1).dim == rep.dim;
    return rep;
}

CohomologyReport h0(const std::vector<std::string>& coords, const std::vector<Polynomial>& partials, int D) {
    return h0(symmetry_presentation(coords, partials), D);
}

// ---- H1 ----

H1Space::H1Space(const SymmetryPresentation& P, int D)
    : pres_(P), gb_(jacobian_ring(P.nvars(), P.partials, P.order)), D_(D) {
    if (D < 0) throw invalid("degree bound must be >= 0");
    int n = P.nvars();
    size_t r = P.tau.size();
    std_ = gb_.standard_monomials(D);
    size_t N = std_.size();

    // cocycle conditions, one column per cell (i, m): g_i = m
    int npairs = static_cast<int>(r * (r - (r ? 1 : 0)) / 2);
    std::vector<SVec> cond;
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < N; ++k) {
            Polynomial m = Polynomial::monomial(std_[k], 1);
            SVec col;
            int pair = 0;
            for (size_t p = 0; p < r; ++p)
                for (size_t q = p + 1; q < r; ++q, ++pair) {
                    Polynomial e(n);
                    if (i == q) e += apply_field(P.tau[p], m);
                    if (i == p) e -= apply_field(P.tau[q], m);
                    e -= P.f[p][q][i] * m;
                    add_poly(col, pair, gb_.normal_form(e));
                }
            for (size_t a = 0; a < P.relations.size(); ++a)
                add_poly(col, npairs + static_cast<int>(a), gb_.normal_form(P.relations[a][i] * m));
            cond.push_back(col);
        }
    z_ = kernel_of(cond, all_keys);

    // coboundaries (tau_i(f))_i for f of degree <= D + slack, restricted to the slice
    int slack = std::max(0, max_coefficient_degree(P.tau) - 1) + 2;
    auto big = gb_.standard_monomials(D + slack);
    std::vector<SVec> images;
    for (const auto& mm : big) {
        Polynomial f = Polynomial::monomial(mm, 1);
        SVec col;
        for (size_t i = 0; i < r; ++i) add_poly(col, static_cast<int>(i), gb_.normal_form(apply_field(P.tau[i], f)));
        images.push_back(col);
    }
    std::map<Monomial, size_t, MonoLess> index;
    for (size_t k = 0; k < N; ++k) index[std_[k]] = k;
    for (const auto& b : boundaries_in_slice(images, D)) {
        Coeffs c(r * N);
        for (const auto& [key, v] : b) c[key.first * N + index.at(key.second)] = v;
        b_.push_back(c);
    }

    auto to_svec = [](const Coeffs& c) {
        SVec v;
        for (size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) v[{static_cast<int>(j), Monomial()}] = c[j];
        return v;
    };
    std::vector<SVec> Z, B;
    for (const auto& z : z_) Z.push_back(to_svec(z));
    for (const auto& b : b_) B.push_back(to_svec(b));
    Quotient q = quotient(Z, B);
    dim_ = q.reps.size();
    for (size_t idx : q.reps) {
        ModuleVector g(r, zero_poly(n));
        for (size_t i = 0; i < r; ++i) {
            std::vector<Term> terms;
            for (size_t k = 0; k < N; ++k)
                if (z_[idx][i * N + k] != 0) terms.push_back({std_[k], z_[idx][i * N + k]});
            g[i] = Polynomial::from_terms(n, terms);
        }
        if (!is_cocycle(g)) throw check_failed("h1: basis element fails the cocycle conditions");
        basis_.push_back(g);
    }
}

std::vector<Rational> H1Space::cells(const ModuleVector& g) const {
    size_t r = pres_.tau.size(), N = std_.size();
    if (g.size() != r) throw invalid("cochain needs one value per symmetry generator");
    std::map<Monomial, size_t, MonoLess> index;
    for (size_t k = 0; k < N; ++k) index[std_[k]] = k;
    Coeffs c(r * N);
    for (size_t i = 0; i < r; ++i) {
        Polynomial nf = gb_.normal_form(g[i]);
        for (const auto& t : nf.terms()) {
            auto it = index.find(t.mono);
            if (it == index.end()) throw invalid("cochain value exceeds the degree bound " + std::to_string(D_));
            c[i * N + it->second] = t.coeff;
        }
    }
    return c;
}

bool H1Space::is_cocycle(const ModuleVector& g) const {
    const auto& P = pres_;
    size_t r = P.tau.size();
    if (g.size() != r) throw invalid("cochain needs one value per symmetry generator");
    for (size_t p = 0; p < r; ++p)
        for (size_t q = p + 1; q < r; ++q) {
            Polynomial e = apply_field(P.tau[p], g[q]) - apply_field(P.tau[q], g[p]);
            for (size_t k = 0; k < r; ++k) e -= P.f[p][q][k] * g[k];
            if (!gb_.normal_form(e).is_zero()) return false;
        }
    for (const auto& rel : P.relations) {
        Polynomial e(P.nvars());
        for (size_t k = 0; k < r; ++k) e += rel[k] * g[k];
        if (!gb_.normal_form(e).is_zero()) return false;
    }
    return true;
}

bool H1Space::is_coboundary(const ModuleVector& g) const {
    Coeffs c = cells(g);
    auto to_svec = [](const Coeffs& x) {
        SVec v;
        for (size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0) v[{static_cast<int>(j), Monomial()}] = x[j];
        return v;
    };
    std::vector<SVec> B;
    for (const auto& b : b_) B.push_back(to_svec(b));
    return in_span(B, to_svec(c));
}

CohomologyReport h1(const SymmetryPresentation& P, int D) {
    H1Space s(P, D);
    CohomologyReport rep;
    rep.p = 1;
    rep.bound = D;
    rep.dim = s.dim();
    rep.cochains = s.basis();
    for (const auto& g : rep.cochains) rep.basis.push_back(cochain_string(g, P.coords));
    rep.stable = H1Space(P, D + 1).dim() == rep.dim;
    return rep;
}

CohomologyReport h1(const std::vector<std::string>& coords, const std::vector<Polynomial>& partials, int D) {
    return h1(symmetry_presentation(coords, partials), D);
}

ModuleVector h0_bracket(const Polynomial& f, const Polynomial& g, const SymmetryPresentation& P) {
    int n = P.nvars();
    GroebnerBasis gb = jacobian_ring(n, P.partials, P.order);
    auto field = [&](const Polynomial& a, size_t i, const char* which) {
        Polynomial t = apply_field(P.tau[i], a);
        if (t.is_zero()) return ModuleVector(n, zero_poly(n));
        auto cert = lift_membership(n, t, P.partials);
        if (!cert)
            throw precondition(std::string("h0_bracket: ") + which + " is not invariant: tau_" + std::to_string(i + 1) +
                               " of it is not in the Jacobian ideal");
        return cert->coefficients;
    };
    ModuleVector out;
    for (size_t i = 0; i < P.tau.size(); ++i) {
        ModuleVector xi = field(f, i, "f"), eta = field(g, i, "g");
        out.push_back(gb.normal_form(apply_field(xi, g) + apply_field(eta, f)));
    }
    return out;
}

// ---- E2 ----

namespace {

// Monomials in the positive generators of t with weight exactly w.
std::vector<GMono> positive_monomials(const GeneratorTable& t, int w) {
    std::vector<int> pos;
    for (int i = 0; i < t.size(); ++i)
        if (t[i].degree > 0) pos.push_back(i);
    std::vector<GMono> out;
    GMono cur;
    std::function<void(size_t, int)> rec = [&](size_t k, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (k == pos.size()) return;
        int g = pos[k], d = t[g].degree;
        int maxe = t.odd(g) ? 1 : left / d;
        for (int e = 0; e <= maxe && e * d <= left; ++e) {
            if (e > 0) cur.push_back({static_cast<uint16_t>(g), static_cast<uint16_t>(e)});
            rec(k + 1, left - e * d);
            if (e > 0) cur.pop_back();
        }
    };
    if (w >= 0) rec(0, w);
    std::sort(out.begin(), out.end());
    return out;
}

struct D1 {
    const MasterSolution& sol;
    const GroebnerBasis& gb;
    Action act;
    std::map<GMono, int> target;  // positive monomials of weight p+1

    SVec operator()(const GMono& mu, const Monomial& m, int w) const {
        GradedPolynomial a = GradedPolynomial::term(sol.table, mu, Polynomial::monomial(m, 1));
        GradedPolynomial img = gr_project(act.apply(a), w + 1);
        SVec v;
        for (const auto& [nu, c] : img.terms()) {
            auto it = target.find(nu);
            if (it == target.end()) throw check_failed("e2_page: d1 image leaves the positive part");
            add_poly(v, it->second, gb.normal_form(c));
        }
        return v;
    }
};

}  // namespace

CohomologyReport e2_page(const MasterSolution& sol, int p, int D, MonomialOrder order) {
    if (D < 0) throw invalid("degree bound must be >= 0");
    if (p < 0) {
        CohomologyReport rep;
        rep.p = p;
        rep.bound = D;
        rep.stable = true;
        return rep;
    }
    if (!sol.exact && sol.order < p + 1)
        throw precondition("e2_page: solution order " + std::to_string(sol.order) + " is below the required " +
                           std::to_string(p + 1));
    const auto& T = *sol.table;
    int n = T.ncoords();
    GroebnerBasis gb = jacobian_ring(n, sol.resolution->partials(), order);
    GradedPolynomial body = truncate(sol.S, p + 1);
    auto src = positive_monomials(T, p), prev = positive_monomials(T, p - 1), tgt = positive_monomials(T, p + 1);

    int slack = 1;
    for (const auto& [m, c] : body.terms()) slack = std::max(slack, c.degree() + 1);

    auto compute = [&](int bound) {
        CohomologyReport rep;
        rep.p = p;
        rep.bound = bound;
        D1 d1{sol, gb, Action{body, sol.one_form}, {}};
        for (size_t k = 0; k < tgt.size(); ++k) d1.target[tgt[k]] = static_cast<int>(k);
        auto stdm = gb.standard_monomials(bound);
        std::vector<SVec> cols;
        std::vector<std::pair<size_t, size_t>> cells;
        for (size_t a = 0; a < src.size(); ++a)
            for (size_t k = 0; k < stdm.size(); ++k) {
                cols.push_back(d1(src[a], stdm[k], p));
                cells.push_back({a, k});
            }
        std::vector<SVec> Z;
        auto ker = kernel_of(cols, all_keys);
        for (const auto& y : ker) {
            SVec z;
            for (size_t j = 0; j < y.size(); ++j)
                if (y[j] != 0) z[{static_cast<int>(cells[j].first), stdm[cells[j].second]}] = y[j];
            Z.push_back(z);
        }
        std::vector<SVec> B;
        if (!prev.empty()) {
            D1 dprev{sol, gb, Action{body, sol.one_form}, {}};
            for (size_t k = 0; k < src.size(); ++k) dprev.target[src[k]] = static_cast<int>(k);
            std::vector<SVec> images;
            for (const auto& mu : prev)
                for (const auto& m : gb.standard_monomials(bound + slack)) images.push_back(dprev(mu, m, p - 1));
            B = boundaries_in_slice(images, bound);
        }
        Quotient q = quotient(Z, B);
        for (size_t idx : q.reps) {
            GradedPolynomial e(sol.table);
            std::map<size_t, std::vector<Term>> per;
            for (const auto& [key, c] : Z[idx]) per[key.first].push_back({key.second, c});
            for (auto& [a, terms] : per) e.add_term(src[a], Polynomial::from_terms(n, terms));
            rep.elements.push_back(e);
            rep.basis.push_back(e.to_string());
        }
        rep.dim = rep.elements.size();
        return rep;
    };
    CohomologyReport rep = compute(D);
    rep.stable = compute(D + 1).dim == rep.dim;
    return rep;
}

}  // namespace bvkit
