#pragma once

#include <gmpxx.h>

#include <string>

namespace bvkit {

// Exact rational; mpq_class keeps numerator/denominator canonical after every operation.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s) {
    Rational q(s, 10);
    q.canonicalize();
    return q;
}

}  // namespace bvkit
