#include "antibracket.hpp"

namespace bvkit {

namespace {

void add_product(GradedPolynomial& r, const GeneratorTable& t, const GMono& a, const GMono& b,
                 int sign, const Polynomial& coeff, GMono& scratch) {
    // sign carries the multiplicity of an even factor as well
    if (sign == 0 || coeff.is_zero()) return;
    int s = gmono_multiply(t, a, b, scratch);
    if (s == 0) return;
    r.add_term(scratch, coeff * Rational(s * sign));
}

}  // namespace

GradedPolynomial bracket(const GradedPolynomial& a, const GradedPolynomial& b) {
    const TablePtr& tp = a.table() ? a.table() : b.table();
    GradedPolynomial r(tp);
    if (a.is_zero() || b.is_zero()) return r;
    const GeneratorTable& t = *tp;
    GMono da, db, scratch;
    for (const auto& [ma, fa] : a.terms()) {
        for (const auto& [mb, fb] : b.terms()) {
            // (a d^R_{x_i}) (d^L_{x*_i} b)
            for (const auto& [g, e] : mb) {
                int i = t[g].coord;
                if (i < 0) continue;
                Polynomial dfa = fa.derivative(i);
                if (dfa.is_zero()) continue;
                int s = gmono_derive(t, mb, g, true, db);
                add_product(r, t, ma, db, s, dfa * fb, scratch);
            }
            // -(a d^R_{x*_i}) (d^L_{x_i} b)
            for (const auto& [g, e] : ma) {
                int i = t[g].coord;
                if (i < 0) continue;
                Polynomial dfb = fb.derivative(i);
                if (dfb.is_zero()) continue;
                int s = gmono_derive(t, ma, g, false, da);
                add_product(r, t, da, mb, -s, fa * dfb, scratch);
            }
            // paired generators: [beta, beta*] = 1, [beta*, beta] = -1
            for (const auto& [g, e] : ma) {
                int q = t[g].partner;
                if (q < 0 || gmono_exponent(mb, q) == 0) continue;
                int val = t[g].degree > 0 ? 1 : -1;
                int s1 = gmono_derive(t, ma, g, false, da);
                int s2 = gmono_derive(t, mb, q, true, db);
                add_product(r, t, da, db, val * s1 * s2, fa * fb, scratch);
            }
        }
    }
    return r;
}

GradedPolynomial exp_ad(const GradedPolynomial& u, const GradedPolynomial& a, int P) {
    if (!u.homogeneous(-1)) throw invalid("exp_ad: u must have degree -1");
    if (!u.in_I2()) throw invalid("exp_ad: u must lie in I^(2)");
    GradedPolynomial result = truncate(a, P);
    GradedPolynomial term = result;
    for (int k = 1; !term.is_zero(); ++k) {
        term = truncate(bracket(u, term), P) * Rational(1, k);
        result += term;
    }
    return result;
}

GradedPolynomial left_derivative(const GradedPolynomial& a, int gen) {
    GradedPolynomial r(a.table());
    GMono out;
    for (const auto& [m, f] : a.terms()) {
        int s = gmono_derive(*a.table(), m, gen, true, out);
        if (s) r.add_term(out, f * Rational(s));
    }
    return r;
}

GradedPolynomial vector_field_element(const TablePtr& t, const ModuleVector& c) {
    GradedPolynomial r(t);
    for (int k = 0; k < t->ncoords() && k < static_cast<int>(c.size()); ++k)
        r.add_term({{static_cast<uint16_t>(t->dual_of_coord(k)), 1}}, -c[k]);
    return r;
}

ModuleVector element_vector_field(const GradedPolynomial& a) {
    const auto& t = *a.table();
    ModuleVector c(t.ncoords(), Polynomial(t.ncoords()));
    for (const auto& [m, f] : a.terms()) {
        if (m.size() != 1 || m[0].second != 1 || t[m[0].first].coord < 0)
            throw invalid("element is not a vector field");
        c[t[m[0].first].coord] = -f;
    }
    return c;
}

GradedPolynomial Action::apply(const GradedPolynomial& a) const {
    GradedPolynomial r = bracket(body, a);
    const auto& t = body.table();
    for (size_t i = 0; i < one_form.size(); ++i) {
        if (one_form[i].is_zero()) continue;
        r += left_derivative(a, t->dual_of_coord(static_cast<int>(i))) * one_form[i];
    }
    return r;
}

GradedPolynomial Action::self_bracket() const {
    GradedPolynomial r = bracket(body, body);
    const auto& t = body.table();
    for (size_t i = 0; i < one_form.size(); ++i) {
        if (one_form[i].is_zero()) continue;
        r += left_derivative(body, t->dual_of_coord(static_cast<int>(i))) * (one_form[i] * Rational(2));
    }
    return r;
}

}  // namespace bvkit
