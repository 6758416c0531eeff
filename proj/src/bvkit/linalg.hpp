#pragma once

#include <optional>
#include <vector>

#include "rational.hpp"

namespace bvkit {

// Dense row-major matrix over Q.
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Rational& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Rational& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<size_t> rref();
    size_t rank() const;
    Matrix operator*(const Matrix& o) const;
    // Basis of { v : A v = 0 }.
    std::vector<std::vector<Rational>> kernel() const;
    // Some x with A x = b, if one exists.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

}  // namespace bvkit
