#pragma once

#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace bvkit {

struct Term {
    Monomial mono;
    Rational coeff;
};

// Element of Q[x_1..x_n]. Terms are nonzero and strictly descending in grevlex;
// this storage order is also the canonical printing order.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int nvars) : n_(nvars) {}
    static Polynomial constant(int nvars, const Rational& c);
    static Polynomial variable(int nvars, int i);
    static Polynomial monomial(const Monomial& m, const Rational& c);

    int nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    Rational constant_term() const;
    const std::vector<Term>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    const Term& leading() const { return terms_.front(); }
    int degree() const;  // -1 for zero

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial& operator*=(const Rational& c) { return *this = *this * c; }
    Polynomial mul_term(const Monomial& m, const Rational& c) const;
    // *this += c * m * q.
    void add_scaled(const Polynomial& q, const Rational& c, const Monomial& m);
    Polynomial pow(unsigned k) const;
    Polynomial derivative(int i) const;
    // Re-index into a ring with nvars variables; old variable i becomes map[i].
    Polynomial embed(int nvars, const std::vector<int>& map) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::string to_string(const std::vector<std::string>& names) const;

    // Builds from arbitrary terms (combines duplicates, drops zeros, sorts).
    static Polynomial from_terms(int nvars, std::vector<Term> terms);

private:
    int n_ = 0;
    std::vector<Term> terms_;
};

using ModuleVector = std::vector<Polynomial>;

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names);

}  // namespace bvkit
