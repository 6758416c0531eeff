#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace bvkit {

// A problem file:
//   vars x y;
//   S0 = (x^2+y^2-1)^2/4;        or   dS0 = p1, p2;   (closed one-form, multivalued mode)
//   option depth=4;
// Statements end with ';'; '#' starts a comment running to the end of the line.
struct ProblemSpec {
    std::vector<std::string> coords;
    std::optional<Polynomial> s0;
    std::vector<Polynomial> partials;  // always filled
    std::map<std::string, std::string> options;

    bool multivalued() const { return !s0.has_value(); }
    int option_int(const std::string& key, int fallback) const;
    MonomialOrder order() const;
    std::string to_text() const;
};

ProblemSpec parse_problem(const std::string& text);

// Recognized option keys and their checks.
bool known_option(const std::string& key);
MonomialOrder parse_order(const std::string& name);

}  // namespace bvkit
