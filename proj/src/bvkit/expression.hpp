#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace bvkit {

// Arithmetic expression over integers, '/', identifiers, + - * ^ and parentheses.
// Implicit multiplication is rejected.
struct Expr {
    enum class Kind { Number, Ident, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind;
    Rational value;
    std::string name;
    unsigned exponent = 0;
    std::vector<std::unique_ptr<Expr>> args;
    int line = 1, column = 1;
};

// Parses a whole expression; line/column offsets locate `text` inside a larger source.
std::unique_ptr<Expr> parse_expression(const std::string& text, int line0 = 1, int column0 = 1);

template <class V>
struct ExprAlgebra {
    std::function<V(const std::string&, int line, int column)> ident;
    std::function<V(const Rational&)> constant;
    std::function<std::optional<Rational>(const V&)> as_constant;
};

template <class V>
V evaluate(const Expr& e, const ExprAlgebra<V>& alg) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return alg.constant(e.value);
        case Expr::Kind::Ident:
            return alg.ident(e.name, e.line, e.column);
        case Expr::Kind::Add:
            return evaluate(*e.args[0], alg) + evaluate(*e.args[1], alg);
        case Expr::Kind::Sub:
            return evaluate(*e.args[0], alg) - evaluate(*e.args[1], alg);
        case Expr::Kind::Mul:
            return evaluate(*e.args[0], alg) * evaluate(*e.args[1], alg);
        case Expr::Kind::Neg:
            return evaluate(*e.args[0], alg) * alg.constant(Rational(-1));
        case Expr::Kind::Div: {
            V den = evaluate(*e.args[1], alg);
            auto c = alg.as_constant(den);
            if (!c || *c == 0)
                throw ParseError("division only by a nonzero constant", e.args[1]->line,
                                 e.args[1]->column);
            return evaluate(*e.args[0], alg) * alg.constant(1 / *c);
        }
        case Expr::Kind::Pow: {
            V base = evaluate(*e.args[0], alg);
            V r = alg.constant(Rational(1));
            for (unsigned k = 0; k < e.exponent; ++k) r = r * base;
            return r;
        }
    }
    throw Error(ErrorKind::Internal, "bad expression node");
}

}  // namespace bvkit

namespace bvkit {
class Polynomial;
// Parses a polynomial in the named variables; unknown identifiers are errors.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                            int line0 = 1, int column0 = 1);
}  // namespace bvkit
