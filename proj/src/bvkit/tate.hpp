#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graded.hpp"
#include "groebner.hpp"

namespace bvkit {

// Koszul-Tate resolution R of J = O_X/(dS0) over O_X = Q[coords].
// Generators: x*_i (degree -1, delta = partials[i]) and the listed negative
// generators (degree <= -2) with delta images over table(). Generators of degree
// -d only involve generators of degree > -d in their images.
class TateResolution {
public:
    TateResolution(std::vector<std::string> coords, std::vector<Polynomial> partials,
                   std::optional<Polynomial> s0);

    const std::vector<std::string>& coords() const { return coords_; }
    int ncoords() const { return static_cast<int>(coords_.size()); }
    const std::vector<Polynomial>& partials() const { return partials_; }
    const std::optional<Polynomial>& s0() const { return s0_; }
    // Exactness is certified in degrees -1..-depth (0: not certified).
    int depth() const { return depth_; }
    void set_depth(int d) { depth_ = d; }

    struct Gen {
        std::string name;
        int degree;
        GradedPolynomial delta;
    };
    const std::vector<Gen>& generators() const { return gens_; }
    // Appends a generator; delta is given over any table whose prefix matches table().
    void add_generator(const std::string& name, int degree, const GradedPolynomial& delta);
    // Table of coordinates, duals and negative generators (no partners).
    const TablePtr& table() const { return table_; }
    // Count of generators per degree -2, -3, ...
    std::vector<int> counts() const;
    // Drops a generator and every generator whose delta (transitively) involves it.
    TateResolution without_generator(const std::string& name) const;

private:
    std::vector<std::string> coords_;
    std::vector<Polynomial> partials_;
    std::optional<Polynomial> s0_;
    std::vector<Gen> gens_;
    int depth_ = 0;
    TablePtr table_;
    void rebuild_table();
};

// The Koszul-Tate differential as a left derivation. The element may live over any
// table extending table() (extra positive generators are delta-closed).
GradedPolynomial tate_delta(const TateResolution& r, const GradedPolynomial& a);

// Canonical monomials of total degree d (<= 0) in the negative generators of t with
// degree >= min_gen_degree; sorted.
std::vector<GMono> negative_monomials(const GeneratorTable& t, int d, int min_gen_degree = -1000);

// Linear algebra of R^d over O_X in the monomial basis.
class DegreeSlice {
public:
    DegreeSlice(const TablePtr& t, int degree);
    int degree() const { return degree_; }
    const std::vector<GMono>& basis() const { return basis_; }
    size_t size() const { return basis_.size(); }
    // Coordinates of a homogeneous element; throws if a monomial is outside the basis.
    ModuleVector coords(const GradedPolynomial& a) const;
    GradedPolynomial element(const ModuleVector& v) const;

private:
    TablePtr t_;
    int degree_;
    std::vector<GMono> basis_;
};

// Tracked membership data for the image delta(R^{d-1}) inside R^d.
class BoundaryModule {
public:
    BoundaryModule(const TateResolution& r, const TablePtr& t, int degree);
    const DegreeSlice& target() const { return target_; }
    const DegreeSlice& source() const { return source_; }
    bool contains(const GradedPolynomial& a) const;
    // Some b in R^{degree-1} with delta(b) = a, if a is a boundary.
    std::optional<GradedPolynomial> lift(const GradedPolynomial& a) const;

private:
    DegreeSlice target_, source_;
    std::vector<ModuleVector> images_;
    std::unique_ptr<ModuleBasis> mb_;
};

TateResolution build_resolution(const std::vector<std::string>& coords, const std::vector<Polynomial>& partials,
                                const std::optional<Polynomial>& s0, int depth);

struct AcyclicityReport {
    bool ok = true;
    int failed_degree = 0;  // the degree -j where a cocycle is not a boundary
    std::optional<GradedPolynomial> witness;
};
AcyclicityReport check_acyclic(const TateResolution& r, int d);

// Algebra morphism E -> F over O_X, identity on coordinates and x*_i.
struct TateMorphism {
    // images[k] is the image of source generator k (in source.generators() order).
    std::vector<GradedPolynomial> images;
    GradedPolynomial apply(const TateResolution& source, const TateResolution& target,
                           const GradedPolynomial& a) const;
};

// Extends given images (by generator name) to all generators of degree >= -depth by
// lifting; supplied images are checked to commute with delta.
TateMorphism extend_morphism(const TateResolution& source, const TateResolution& target,
                             const std::vector<std::pair<std::string, GradedPolynomial>>& partial_images,
                             int depth);

struct Stabilization {
    TateResolution padded_source;  // E (x) Sym(V + V[1])
    TateResolution padded_target;  // F (x) Sym(W + W[1])
    TateMorphism forward, backward;
    std::vector<int> v_counts, w_counts;  // padding pairs added at degree -2, -3, ...
};
Stabilization stabilize(const TateResolution& e, const TateResolution& f, int d);

// Generator-name prefix for the resolution level (degree -level-1).
std::string level_prefix(int level);

}  // namespace bvkit
