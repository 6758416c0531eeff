#pragma once

#include <optional>
#include <vector>

#include "polynomial.hpp"

namespace bvkit {

// Submodule of the free module Q[x]^rank with a reduced Groebner basis in
// position-over-term order (lower position index is more significant).
// With tracking, transform()[k] expresses basis()[k] in the original generators.
class ModuleBasis {
public:
    struct MTerm {
        int pos;
        Monomial mono;
        Rational coeff;
    };
    using MVec = std::vector<MTerm>;

    ModuleBasis(int nvars, int rank, std::vector<ModuleVector> gens,
                MonomialOrder order = MonomialOrder::Grevlex, bool track = false);

    int nvars() const { return n_; }
    int rank() const { return rank_; }
    MonomialOrder order() const { return order_; }
    const std::vector<ModuleVector>& generators() const { return gens_; }
    const std::vector<ModuleVector>& basis() const { return basis_; }
    const std::vector<ModuleVector>& transform() const { return transform_; }
    bool tracked() const { return track_; }

    ModuleVector normal_form(const ModuleVector& v) const;
    bool contains(const ModuleVector& v) const;
    // Coefficients c with v = sum_i c_i * generators()[i]; requires tracking.
    std::optional<std::vector<Polynomial>> lift(const ModuleVector& v) const;
    // Leading (position, monomial) of each basis element.
    std::vector<std::pair<int, Monomial>> leading_terms() const;

private:
    int n_, rank_;
    MonomialOrder order_;
    bool track_;
    std::vector<ModuleVector> gens_;
    std::vector<MVec> internal_;  // reduced GB in augmented form
    std::vector<ModuleVector> basis_;
    std::vector<ModuleVector> transform_;
};

// Ideal of Q[x_1..x_n] with reduced Groebner basis and transformation matrix.
class GroebnerBasis {
public:
    GroebnerBasis(int nvars, std::vector<Polynomial> gens,
                  MonomialOrder order = MonomialOrder::Grevlex, bool track = true);

    int nvars() const { return mb_.nvars(); }
    MonomialOrder order() const { return mb_.order(); }
    const std::vector<Polynomial>& generators() const { return gens_; }
    const std::vector<Polynomial>& basis() const { return basis_; }
    // basis()[k] = sum_i transform()[k][i] * generators()[i].
    const std::vector<ModuleVector>& transform() const { return mb_.transform(); }
    bool is_unit() const;

    Polynomial normal_form(const Polynomial& f) const;
    bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
    std::optional<std::vector<Polynomial>> lift(const Polynomial& f) const;
    // A monomial is standard when no leading monomial of the basis divides it.
    bool is_standard(const Monomial& m) const;
    // Standard monomials of total degree <= bound, ascending in grevlex.
    std::vector<Monomial> standard_monomials(int bound) const;

private:
    ModuleBasis mb_;
    std::vector<Polynomial> gens_;
    std::vector<Polynomial> basis_;
    std::vector<Monomial> leads_;
};

GroebnerBasis groebner_basis(int nvars, const std::vector<Polynomial>& gens,
                             MonomialOrder order = MonomialOrder::Grevlex);
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb);

struct MembershipCertificate {
    std::vector<Polynomial> coefficients;  // f = sum_i coefficients[i] * gens[i]
};
std::optional<MembershipCertificate> lift_membership(int nvars, const Polynomial& f,
                                                     const std::vector<Polynomial>& gens);
std::optional<MembershipCertificate> lift_membership(int nvars, int rank, const ModuleVector& v,
                                                     const std::vector<ModuleVector>& gens);

// Generators of { c : sum_i c_i gens[i] = 0 } (a reduced Groebner basis of the
// syzygy module in position-over-term order).
std::vector<ModuleVector> syzygy_basis(int nvars, int rank, const std::vector<ModuleVector>& gens);

}  // namespace bvkit
