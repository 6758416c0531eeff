#include "polynomial.hpp"

#include <algorithm>
#include <map>

namespace bvkit {

namespace {

bool grevlex_greater(const Monomial& a, const Monomial& b) {
    return a.compare(b, MonomialOrder::Grevlex) > 0;
}

}  // namespace

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.push_back({Monomial(nvars), c});
    return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
    Polynomial p(nvars);
    p.terms_.push_back({Monomial::variable(nvars, i), Rational(1)});
    return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
    Polynomial p(m.nvars());
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(int nvars, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grevlex_greater(a.mono, b.mono); });
    Polynomial p(nvars);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff == 0) p.terms_.pop_back();
        } else if (t.coeff != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

void Polynomial::add_scaled(const Polynomial& q, const Rational& c, const Monomial& m) {
    if (c == 0 || q.is_zero()) return;
    std::vector<Term> out;
    out.reserve(terms_.size() + q.terms_.size());
    size_t i = 0, j = 0;
    Rational tmp;
    while (i < terms_.size() || j < q.terms_.size()) {
        if (j == q.terms_.size()) {
            out.push_back(std::move(terms_[i++]));
            continue;
        }
        Monomial qm = q.terms_[j].mono * m;
        int cmp = i == terms_.size() ? -1 : terms_[i].mono.compare(qm, MonomialOrder::Grevlex);
        if (cmp > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (cmp < 0) {
            out.push_back({qm, q.terms_[j].coeff * c});
            ++j;
        } else {
            tmp = q.terms_[j].coeff * c;
            tmp += terms_[i].coeff;
            if (tmp != 0) out.push_back({qm, tmp});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    if (r.n_ == 0 && o.n_ != 0 && r.is_zero()) r.n_ = o.n_;
    r.add_scaled(o, Rational(1), Monomial(o.n_));
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    if (r.n_ == 0 && o.n_ != 0 && r.is_zero()) r.n_ = o.n_;
    r.add_scaled(o, Rational(-1), Monomial(o.n_));
    return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
    Polynomial r(n_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial(std::max(n_, o.n_));
    if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
    std::vector<Term> all;
    all.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) all.push_back({a.mono * b.mono, a.coeff * b.coeff});
    return from_terms(n_, std::move(all));
}

Polynomial Polynomial::operator*(const Rational& c) const {
    if (c == 0) return Polynomial(n_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial r = constant(n_, 1);
    Polynomial b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

Polynomial Polynomial::derivative(int i) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        int e = t.mono[i];
        if (e == 0) continue;
        Monomial m = t.mono;
        m.set(i, e - 1);
        out.push_back({m, t.coeff * e});
    }
    return from_terms(n_, std::move(out));
}

Polynomial Polynomial::embed(int nvars, const std::vector<int>& map) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        Monomial m(nvars);
        for (int i = 0; i < n_; ++i)
            if (t.mono[i]) m.set(map[i], m[map[i]] + t.mono[i]);
        out.push_back({m, t.coeff});
    }
    return from_terms(nvars, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
    std::string s;
    for (int i = 0; i < m.nvars(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += names.at(i);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        std::string mono = monomial_to_string(t.mono, names);
        if (mono.empty()) {
            s += c.get_str();
        } else if (c == 1) {
            s += mono;
        } else {
            s += c.get_str() + "*" + mono;
        }
    }
    return s;
}

}  // namespace bvkit
