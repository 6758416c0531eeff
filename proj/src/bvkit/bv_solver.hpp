#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "antibracket.hpp"
#include "linalg.hpp"
#include "tate.hpp"

namespace bvkit {

using ResolutionPtr = std::shared_ptr<const TateResolution>;

// Coordinates, duals, the negative generators of r and a positive partner for each.
// Its prefix coincides with r.table().
TablePtr bv_table(const TateResolution& r);

struct MasterSolution {
    ResolutionPtr resolution;
    TablePtr table;
    GradedPolynomial S;               // contains S0 unless multivalued
    std::vector<Polynomial> one_form;  // the partials, only in multivalued mode
    int order = 0;                    // [S,S] in F^{order+1} and I^(2)
    bool exact = false;               // [S,S] = 0 identically
    std::vector<std::string> log;
    // (p, lowest filtration weight of [S,S]) observed before each solver step
    std::vector<std::pair<int, int>> residual_weights;

    bool multivalued() const { return !one_form.empty(); }
    Action action() const { return {S, one_form}; }
};

// S0 + sum_j delta(beta*_j) beta^j; the S0 summand is omitted for multivalued input.
GradedPolynomial s_lin(const TateResolution& r);

struct SolveOptions {
    int p_max = 1;
    // When set, every lift is shifted by a random delta-exact term (a different
    // but equally valid choice).
    std::optional<uint64_t> perturbation_seed;
};

MasterSolution solve_master(ResolutionPtr r, const SolveOptions& opt);
inline MasterSolution solve_master(ResolutionPtr r, int p_max) { return solve_master(std::move(r), {p_max, {}}); }

struct VerifyReport {
    int order = -1;            // largest p' <= p with [S,S] in F^{p'+1} and I^(2); -1 if none
    bool exact = false;        // [S,S] = 0
    bool restricts_to_s0 = false;
    bool associated = false;   // S = S_lin mod I^(2)
    int failure_weight = -1;   // lowest weight of an offending term
    std::optional<GradedPolynomial> failure;  // offending part of [S,S] at that weight
    bool ok(int p) const { return order >= p && restricts_to_s0 && associated; }
};

VerifyReport verify_master(const MasterSolution& sol, int p);

struct GaugeWord {
    std::vector<GradedPolynomial> u;
};

// The image of S (with S0 from the one-form in multivalued mode) under
// exp(ad_u_m) ... exp(ad_u_1), truncated at filtration weight P.
GradedPolynomial transport(const GaugeWord& w, const MasterSolution& sol, int P);

GaugeWord gauge_relate(const MasterSolution& a, const MasterSolution& b, int p_max);

// Constructors with closed-form solutions.

// W given by (degree <= -1, dimension) blocks and a differential d on the direct sum
// (d(e_j) = sum_k d[k][j] e_k, raising degree by one).
MasterSolution trivial_solution(const std::vector<std::pair<int, int>>& W, const Matrix& d);
MasterSolution product_solution(const MasterSolution& a, const MasterSolution& b);
MasterSolution add_square(const MasterSolution& a, const Rational& c, const std::string& name = "");
// theta[i] are the fundamental vector fields (n components each); structure[l][i][j]
// are c_ij^l with [theta_i, theta_j] = sum_l c_ij^l theta_l.
MasterSolution faddeev_popov(const std::vector<std::string>& coords, const Polynomial& s0,
                             const std::vector<ModuleVector>& theta,
                             const std::vector<std::vector<std::vector<Polynomial>>>& structure);

struct BundleData {
    std::vector<std::string> base;   // y^mu
    std::vector<std::string> fiber;  // v^i
    std::vector<std::vector<Polynomial>> g;                             // g[i][j]
    std::vector<std::vector<std::vector<Polynomial>>> A;                // A[i][j][mu]
    std::vector<std::vector<std::vector<std::vector<Polynomial>>>> F;   // F[i][j][mu][nu]
};
// Violated bundle conditions, one message per failing identity component.
std::vector<std::string> bundle_conditions(const BundleData& b);
MasterSolution bundle_solution(const BundleData& b);

}  // namespace bvkit
