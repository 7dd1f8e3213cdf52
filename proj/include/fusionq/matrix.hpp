#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fusionq/ratfunc.hpp"

namespace fusionq {

/// Dense matrix over an exact field (Rational or RatFunc).
template <class S>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<S> column(std::size_t j) const {
        std::vector<S> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    std::vector<S> row(std::size_t i) const {
        return std::vector<S>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!fusionq::is_zero(x)) return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& x = a(i, k);
                if (fusionq::is_zero(x)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!fusionq::is_zero(b(k, j))) r(i, j) += x * b(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
        return a;
    }
    Matrix scaled(const S& c) const {
        Matrix r = *this;
        for (auto& x : r.data_) x *= c;
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const S&>()))> {
        Matrix<decltype(f(std::declval<const S&>()))> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(to_string((*this)(i, j)));
        return out;
    }

private:
    void check_same(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    }
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> data_;
};

template <class S>
struct RowEchelon {
    Matrix<S> reduced;                 // reduced row-echelon form
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination; the pivot of each column is the first row
/// (in index order) with a nonzero entry.
template <class S>
RowEchelon<S> rref(Matrix<S> m) {
    RowEchelon<S> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const S inv = S(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            const S f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

template <class S>
std::size_t rank(const Matrix<S>& m) {
    return rref(m).pivots.size();
}

/// Basis of {v : m v = 0}, one vector per free column, with a 1 in that
/// column (deterministic).
template <class S>
std::vector<std::vector<S>> nullspace(const Matrix<S>& m) {
    const auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<S>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<S> v(m.cols(), S(0));
        v[f] = S(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Inverse via Gauss-Jordan on [m | I]; throws std::domain_error if singular.
template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
    Matrix<S> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = S(1);
    }
    const auto e = rref(std::move(aug));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
    Matrix<S> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

/// Determinant by Bareiss fraction-free elimination: every division is exact
/// in the coefficient ring, so entries stay polynomial when the input is.
template <class S>
S determinant(Matrix<S> m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("determinant of non-square matrix");
    if (n == 0) return S(1);
    S prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m(k, k))) {
            std::size_t p = k + 1;
            while (p < n && is_zero(m(p, k))) ++p;
            if (p == n) return S(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = S(0);
        }
        prev = m(k, k);
    }
    S d = m(n - 1, n - 1);
    if (negate) d = -d;
    return d;
}

/// True iff every vector of `vs` lies in the span of `basis` (all of length n).
template <class S>
bool in_span(const std::vector<std::vector<S>>& basis, const std::vector<std::vector<S>>& vs, std::size_t n) {
    auto stack = [n](const std::vector<std::vector<S>>& a, const std::vector<std::vector<S>>& b) {
        Matrix<S> m(a.size() + b.size(), n);
        std::size_t r = 0;
        for (const auto* part : {&a, &b})
            for (const auto& v : *part) {
                for (std::size_t j = 0; j < n; ++j) m(r, j) = v[j];
                ++r;
            }
        return m;
    };
    return rank(stack(basis, {})) == rank(stack(basis, vs));
}

template <class S>
std::size_t span_dim(const std::vector<std::vector<S>>& vs, std::size_t n) {
    Matrix<S> m(vs.size(), n);
    for (std::size_t r = 0; r < vs.size(); ++r)
        for (std::size_t j = 0; j < n; ++j) m(r, j) = vs[r][j];
    return rank(m);
}

}  // namespace fusionq
