#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace bvkit {

struct Generator {
    std::string name;
    int degree = 0;
    int partner = -1;  // paired generator (beta <-> beta*), -1 if none
    int coord = -1;    // for x*_i: the coordinate index i
};

// Generators of O_M over O_X = Q[coords]. Order: coordinate duals x*_i (degree -1),
// then negative generators, then positive partners. Table order is the canonical
// factor order inside monomials.
class GeneratorTable {
public:
    GeneratorTable(std::vector<std::string> coords, std::vector<Generator> gens);

    // Coordinates, their duals (name + "s"), the given negative generators and, when
    // with_partners, a positive partner of degree -d-1 for each (name minus trailing 's').
    static std::shared_ptr<const GeneratorTable> make(std::vector<std::string> coords,
                                                      const std::vector<std::pair<std::string, int>>& negatives,
                                                      bool with_partners);

    int ncoords() const { return static_cast<int>(coords_.size()); }
    int size() const { return static_cast<int>(gens_.size()); }
    const std::vector<std::string>& coords() const { return coords_; }
    const Generator& operator[](int i) const { return gens_[i]; }
    const std::vector<Generator>& generators() const { return gens_; }
    int index_of(const std::string& name) const;  // -1 if absent
    int coord_index(const std::string& name) const;
    int dual_of_coord(int i) const { return dual_[i]; }
    bool odd(int i) const { return (gens_[i].degree & 1) != 0; }

private:
    std::vector<std::string> coords_;
    std::vector<Generator> gens_;
    std::vector<int> dual_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

// Sorted (generator index, exponent) pairs; exponents of odd generators are 1.
using GMono = std::vector<std::pair<uint16_t, uint16_t>>;

struct GradingData {
    int degree = 0;
    int weight = 0;       // filtration weight: sum of exponent*degree over positive generators
    int positive_count = 0;  // sum of exponents of positive generators
};

GradingData grading(const GeneratorTable& t, const GMono& m);

// Product of canonical monomials: returns sign (+1, -1, or 0 when an odd factor repeats).
int gmono_multiply(const GeneratorTable& t, const GMono& a, const GMono& b, GMono& out);
int gmono_exponent(const GMono& m, int gen);
// Removes one factor of gen moved to the left end (left=true) or right end; returns the
// signed multiplicity (0 if absent).
int gmono_derive(const GeneratorTable& t, const GMono& m, int gen, bool left, GMono& out);

// Element of O_M = O_X[generators], stored as monomial -> coefficient in O_X.
class GradedPolynomial {
public:
    using TermMap = std::map<GMono, Polynomial>;

    GradedPolynomial() = default;
    explicit GradedPolynomial(TablePtr t) : t_(std::move(t)) {}
    static GradedPolynomial scalar(TablePtr t, const Polynomial& f);
    static GradedPolynomial generator(TablePtr t, int gen);
    static GradedPolynomial coordinate(TablePtr t, int i);
    static GradedPolynomial term(TablePtr t, const GMono& m, const Polynomial& f);

    const TablePtr& table() const { return t_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int nvars() const { return t_->ncoords(); }

    void add_term(const GMono& m, const Polynomial& f);
    GradedPolynomial operator+(const GradedPolynomial& o) const;
    GradedPolynomial operator-(const GradedPolynomial& o) const;
    GradedPolynomial operator-() const;
    GradedPolynomial operator*(const GradedPolynomial& o) const;
    GradedPolynomial operator*(const Polynomial& f) const;
    GradedPolynomial operator*(const Rational& c) const;
    GradedPolynomial& operator+=(const GradedPolynomial& o);
    GradedPolynomial& operator-=(const GradedPolynomial& o);
    bool operator==(const GradedPolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const GradedPolynomial& o) const { return !(*this == o); }

    // Weight-0 part with no generators at all (the O_X component).
    Polynomial scalar_part() const;
    // Each term's grading; empty polynomial has no terms.
    std::vector<GradingData> term_gradings() const;
    bool homogeneous(int degree) const;
    int min_weight() const;  // INT_MAX for zero
    int max_weight() const;  // -1 for zero
    bool in_I2() const;      // every term has at least two positive factors

    std::string to_string() const;

private:
    TablePtr t_;
    TermMap terms_;
};

GradedPolynomial truncate(const GradedPolynomial& a, int p);    // weight <= p
GradedPolynomial gr_project(const GradedPolynomial& a, int p);  // weight == p
GradingData grading_data(const GradedPolynomial& a, const GMono& m);

// Same terms over another table sharing the generator-index prefix used by a.
GradedPolynomial retable(const GradedPolynomial& a, const TablePtr& t);

GradedPolynomial parse_graded(const std::string& text, const TablePtr& t);
// Re-expresses a in a larger table; gen_map[i] / coord_map[i] give new indices.
GradedPolynomial embed(const GradedPolynomial& a, const TablePtr& target, const std::vector<int>& coord_map,
                       const std::vector<int>& gen_map);

}  // namespace bvkit
