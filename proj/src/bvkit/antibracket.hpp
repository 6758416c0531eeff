#pragma once

#include <vector>

#include "graded.hpp"

namespace bvkit {

// Odd Poisson bracket of degree +1 with [f, x*_i] = d_i f and [beta, beta*] = 1;
// a right derivation in the first slot and a left derivation in the second.
GradedPolynomial bracket(const GradedPolynomial& a, const GradedPolynomial& b);

// sum_k ad_u^k(a)/k!, truncated at filtration weight P. Requires |u| = -1, u in I^(2).
GradedPolynomial exp_ad(const GradedPolynomial& u, const GradedPolynomial& a, int P);

// Left derivative with respect to a generator.
GradedPolynomial left_derivative(const GradedPolynomial& a, int gen);

// Vector field sum_k c_k d_k as the element -sum_k c_k x*_k.
GradedPolynomial vector_field_element(const TablePtr& t, const ModuleVector& c);
// Inverse: coefficients of a degree -1, weight 0 element linear in the x*_k.
ModuleVector element_vector_field(const GradedPolynomial& a);

// S = body (+ a possibly multivalued S0 given only by its differential one_form).
// When one_form is empty, body contains S0 itself.
struct Action {
    GradedPolynomial body;
    std::vector<Polynomial> one_form;

    GradedPolynomial apply(const GradedPolynomial& a) const;  // d_S a = [S, a]
    GradedPolynomial self_bracket() const;                    // [S, S]
};

inline GradedPolynomial d_S(const Action& s, const GradedPolynomial& a) { return s.apply(a); }

}  // namespace bvkit
