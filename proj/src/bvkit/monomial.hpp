#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "errors.hpp"

namespace bvkit {

enum class MonomialOrder { Grevlex, Lex };

// Exponent vector over at most kMaxVars commuting variables.
class Monomial {
public:
    static constexpr int kMaxVars = 12;

    Monomial() { e_.fill(0); }
    explicit Monomial(int nvars) : n_(static_cast<uint8_t>(nvars)) {
        if (nvars < 0 || nvars > kMaxVars) throw invalid("too many coordinates (max 12)");
        e_.fill(0);
    }
    static Monomial variable(int nvars, int i, int power = 1) {
        Monomial m(nvars);
        m.set(i, power);
        return m;
    }

    int nvars() const { return n_; }
    int operator[](int i) const { return e_[i]; }
    int degree() const { return deg_; }
    bool is_one() const { return deg_ == 0; }

    void set(int i, int v) {
        deg_ += v - e_[i];
        e_[i] = static_cast<uint16_t>(v);
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (int i = 0; i < n_; ++i) r.e_[i] += o.e_[i];
        r.deg_ += o.deg_;
        return r;
    }
    // Requires o | *this.
    Monomial operator/(const Monomial& o) const {
        Monomial r = *this;
        for (int i = 0; i < n_; ++i) r.e_[i] -= o.e_[i];
        r.deg_ -= o.deg_;
        return r;
    }
    bool divides(const Monomial& o) const {
        if (deg_ > o.deg_) return false;
        for (int i = 0; i < n_; ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }
    Monomial lcm(const Monomial& o) const {
        Monomial r(n_);
        for (int i = 0; i < n_; ++i) r.set(i, e_[i] > o.e_[i] ? e_[i] : o.e_[i]);
        return r;
    }
    bool coprime(const Monomial& o) const {
        for (int i = 0; i < n_; ++i)
            if (e_[i] && o.e_[i]) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return deg_ == o.deg_ && e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    // Three-way comparison in the given order: >0 if *this is larger.
    int compare(const Monomial& o, MonomialOrder ord) const {
        if (ord == MonomialOrder::Grevlex) {
            if (deg_ != o.deg_) return deg_ > o.deg_ ? 1 : -1;
            for (int i = n_ - 1; i >= 0; --i)
                if (e_[i] != o.e_[i]) return e_[i] < o.e_[i] ? 1 : -1;
            return 0;
        }
        for (int i = 0; i < n_; ++i)
            if (e_[i] != o.e_[i]) return e_[i] > o.e_[i] ? 1 : -1;
        return 0;
    }

    size_t hash() const {
        size_t h = 1469598103934665603ull;
        for (int i = 0; i < n_; ++i) h = (h ^ e_[i]) * 1099511628211ull;
        return h;
    }

private:
    std::array<uint16_t, kMaxVars> e_{};
    uint8_t n_ = 0;
    int deg_ = 0;
};

}  // namespace bvkit
