#include "linalg.hpp"

#include "errors.hpp"

namespace bvkit {

std::vector<size_t> Matrix::rref() {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < c_ && row < r_; ++col) {
        size_t p = row;
        while (p < r_ && (*this)(p, col) == 0) ++p;
        if (p == r_) continue;
        if (p != row)
            for (size_t j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
        Rational inv = 1 / (*this)(row, col);
        for (size_t j = col; j < c_; ++j) (*this)(row, j) *= inv;
        for (size_t i = 0; i < r_; ++i) {
            if (i == row || (*this)(i, col) == 0) continue;
            Rational f = (*this)(i, col);
            for (size_t j = col; j < c_; ++j) (*this)(i, j) -= f * (*this)(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t Matrix::rank() const {
    Matrix m = *this;
    return m.rref().size();
}

std::vector<std::vector<Rational>> Matrix::kernel() const {
    Matrix m = *this;
    auto piv = m.rref();
    std::vector<bool> is_pivot(c_, false);
    for (size_t p : piv) is_pivot[p] = true;
    std::vector<std::vector<Rational>> out;
    for (size_t f = 0; f < c_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(c_);
        v[f] = 1;
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<std::vector<Rational>> Matrix::solve(const std::vector<Rational>& b) const {
    Matrix m(r_, c_ + 1);
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
        m(i, c_) = b[i];
    }
    auto piv = m.rref();
    if (!piv.empty() && piv.back() == c_) return std::nullopt;
    std::vector<Rational> x(c_);
    for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = m(k, c_);
    return x;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (c_ != o.r_) throw invalid("matrix dimensions do not match");
    Matrix m(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Rational& x = (*this)(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
        }
    return m;
}

}  // namespace bvkit
