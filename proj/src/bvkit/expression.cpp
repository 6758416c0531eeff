#include "expression.hpp"

#include <cctype>

namespace bvkit {

namespace {

class Parser {
public:
    Parser(const std::string& s, int line0, int col0) : s_(s), line_(line0), col_(col0) {}

    std::unique_ptr<Expr> parse() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        auto e = sum();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
    int line_, col_;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    std::unique_ptr<Expr> node(Expr::Kind k, int line, int col) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->line = line;
        e->column = col;
        return e;
    }
    std::unique_ptr<Expr> binary(Expr::Kind k, std::unique_ptr<Expr> a, std::unique_ptr<Expr> b) {
        auto e = node(k, a->line, a->column);
        e->args.push_back(std::move(a));
        e->args.push_back(std::move(b));
        return e;
    }

    std::unique_ptr<Expr> sum() {
        auto lhs = product();
        for (;;) {
            if (peek('+')) {
                advance();
                lhs = binary(Expr::Kind::Add, std::move(lhs), product());
            } else if (peek('-')) {
                advance();
                lhs = binary(Expr::Kind::Sub, std::move(lhs), product());
            } else {
                return lhs;
            }
        }
    }

    std::unique_ptr<Expr> product() {
        auto lhs = unary();
        for (;;) {
            if (peek('*')) {
                advance();
                lhs = binary(Expr::Kind::Mul, std::move(lhs), unary());
            } else if (peek('/')) {
                advance();
                lhs = binary(Expr::Kind::Div, std::move(lhs), unary());
            } else {
                if (pos_ < s_.size()) {
                    char c = s_[pos_];
                    if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_')
                        fail("implicit multiplication is not allowed");
                }
                return lhs;
            }
        }
    }

    std::unique_ptr<Expr> unary() {
        skip();
        int l = line_, c = col_;
        if (peek('-')) {
            advance();
            auto e = node(Expr::Kind::Neg, l, c);
            e->args.push_back(unary());
            return e;
        }
        if (peek('+')) {
            advance();
            return unary();
        }
        return power();
    }

    std::unique_ptr<Expr> power() {
        auto base = atom();
        if (peek('^')) {
            advance();
            skip();
            int l = line_, c = col_;
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
            if (start == pos_) throw ParseError("exponent must be a nonnegative integer", l, c);
            auto e = node(Expr::Kind::Pow, base->line, base->column);
            e->exponent = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
            e->args.push_back(std::move(base));
            return e;
        }
        return base;
    }

    std::unique_ptr<Expr> atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        int l = line_, c = col_;
        char ch = s_[pos_];
        if (ch == '(') {
            advance();
            auto e = sum();
            if (!peek(')')) fail("expected ')'");
            advance();
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
            auto e = node(Expr::Kind::Number, l, c);
            e->value = Rational(s_.substr(start, pos_ - start), 10);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                advance();
            auto e = node(Expr::Kind::Ident, l, c);
            e->name = s_.substr(start, pos_ - start);
            return e;
        }
        fail(std::string("unexpected character '") + ch + "'");
    }
};

}  // namespace

std::unique_ptr<Expr> parse_expression(const std::string& text, int line0, int column0) {
    return Parser(text, line0, column0).parse();
}

}  // namespace bvkit

#include "polynomial.hpp"

namespace bvkit {

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars, int line0,
                            int column0) {
    int n = static_cast<int>(vars.size());
    ExprAlgebra<Polynomial> alg;
    alg.ident = [&](const std::string& name, int line, int col) {
        for (int i = 0; i < n; ++i)
            if (vars[i] == name) return Polynomial::variable(n, i);
        throw ParseError("unbound variable '" + name + "'", line, col);
    };
    alg.constant = [n](const Rational& c) { return Polynomial::constant(n, c); };
    alg.as_constant = [](const Polynomial& p) -> std::optional<Rational> {
        if (!p.is_constant()) return std::nullopt;
        return p.constant_term();
    };
    return evaluate(*parse_expression(text, line0, column0), alg);
}

}  // namespace bvkit
