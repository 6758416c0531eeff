#pragma once

#include <string>
#include <vector>

#include "bv_solver.hpp"
#include "groebner.hpp"

namespace bvkit {

// Groebner basis of the Jacobian ideal (d_1 S0, ..., d_n S0).
GroebnerBasis jacobian_ring(int nvars, const std::vector<Polynomial>& partials,
                            MonomialOrder order = MonomialOrder::Grevlex);

// Generators tau_i of L/L0 (vector fields killing S0 modulo the Koszul fields
// dS0 -| (xi ^ eta)), a generating system of relations among them, and the lifted
// bracket data. Bivectors are stored as degree -2 elements over table(), with
// xi ^ eta represented by -xi^ eta^ (xi^ = -sum xi_k x*_k), so that delta(v)
// represents dS0 -| v.
struct SymmetryPresentation {
    std::vector<std::string> coords;
    std::vector<Polynomial> partials;
    TablePtr table;
    std::vector<ModuleVector> tau;                          // r fields
    std::vector<std::vector<Polynomial>> relations;         // s x r
    std::vector<GradedPolynomial> bivectors;                // v_a
    std::vector<std::vector<std::vector<Polynomial>>> f;    // f[i][j][k]
    std::vector<std::vector<GradedPolynomial>> g;           // g[i][j]
    MonomialOrder order = MonomialOrder::Grevlex;           // normal forms in J
    int nvars() const { return static_cast<int>(coords.size()); }
};

SymmetryPresentation symmetry_presentation(const std::vector<std::string>& coords,
                                           const std::vector<Polynomial>& partials,
                                           MonomialOrder order = MonomialOrder::Grevlex);

// Commutator of vector fields.
ModuleVector commutator(const ModuleVector& a, const ModuleVector& b);
Polynomial apply_field(const ModuleVector& v, const Polynomial& f);

struct CohomologyReport {
    int p = 0;
    int bound = 0;
    size_t dim = 0;
    bool stable = false;  // same dimension at bound + 1
    std::vector<std::string> basis;            // printable representatives
    std::vector<Polynomial> functions;         // h0: invariant functions
    std::vector<ModuleVector> cochains;        // h1: values on tau_1..tau_r
    std::vector<GradedPolynomial> elements;    // e2_page: cocycles in J (x) O_V
};

// J(S0)^L in the span of standard monomials of degree <= D.
CohomologyReport h0(const SymmetryPresentation& pres, int D);
// Z^1 / B^1 of the de Rham complex of (J, L/L0) on cochains of degree <= D.
CohomologyReport h1(const SymmetryPresentation& pres, int D);
CohomologyReport h0(const std::vector<std::string>& coords, const std::vector<Polynomial>& partials, int D);
CohomologyReport h1(const std::vector<std::string>& coords, const std::vector<Polynomial>& partials, int D);

// Cocycles and coboundaries of degree-1 de Rham cochains with values of degree <= D.
class H1Space {
public:
    H1Space(const SymmetryPresentation& pres, int D);
    size_t dim() const { return dim_; }
    // Values are reduced to normal form first; they must have degree <= D afterwards.
    bool is_cocycle(const ModuleVector& g) const;
    bool is_coboundary(const ModuleVector& g) const;
    const std::vector<ModuleVector>& basis() const { return basis_; }

private:
    const SymmetryPresentation& pres_;
    GroebnerBasis gb_;
    int D_;
    std::vector<Monomial> std_;
    std::vector<std::vector<Rational>> z_, b_;  // in cell coordinates
    std::vector<ModuleVector> basis_;
    size_t dim_ = 0;
    std::vector<Rational> cells(const ModuleVector& g) const;
    friend CohomologyReport h1(const SymmetryPresentation& pres, int D);
};

// B(f,g)(tau_i) = xi_i(g) + eta_i(f) with tau_i(f) = xi_i(S0), tau_i(g) = eta_i(S0);
// values reduced to normal form. Throws if f or g is not an exact invariant.
ModuleVector h0_bracket(const Polynomial& f, const Polynomial& g, const SymmetryPresentation& pres);

// E_2^{p,0}: cohomology of d_1 on J (x) O_V in the degree <= D slice.
CohomologyReport e2_page(const MasterSolution& sol, int p, int D, MonomialOrder order = MonomialOrder::Grevlex);

}  // namespace bvkit
