#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalars.hpp"

namespace braidforms {

// Dense row-major matrix over an exact field. Elements may not be default
// constructible, so constructors take an explicit zero.
template <class K>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<K> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const K& zero)
        : rows(r), cols(c), a(r * c, zero) {}

    K& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const K& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static Matrix identity(std::size_t n, const K& zero, const K& one) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <class K>
Matrix<K> matmul(const Matrix<K>& x, const Matrix<K>& y, const K& zero) {
    if (x.cols != y.rows) throw MalformedInputError("matrix shape mismatch");
    Matrix<K> r(x.rows, y.cols, zero);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const K& v = x.at(i, k);
            if (is_zero(v)) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                K t = v * y.at(k, j);
                if (!is_zero(t)) r.at(i, j) += t;
            }
        }
    return r;
}

// In-place reduced row echelon form, processing columns in the given order.
// Returns the pivot columns, one per nonzero row. With a descending column
// order each pivot is the largest column of its row, which is how quotient
// bases eliminate the lexicographically largest labels.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& m, const std::vector<std::size_t>& col_order) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col : col_order) {
        if (r == m.rows) break;
        std::size_t sel = m.rows;
        for (std::size_t i = r; i < m.rows; ++i)
            if (!is_zero(m.at(i, col))) {
                sel = i;
                break;
            }
        if (sel == m.rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols; ++j)
                std::swap(m.at(sel, j), m.at(r, j));
        K inv = inverse(m.at(r, col));
        for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m.at(i, col))) continue;
            K f = m.at(i, col);
            for (std::size_t j = 0; j < m.cols; ++j) {
                K t = f * m.at(r, j);
                if (!is_zero(t)) m.at(i, j) -= t;
            }
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

// Gauss-Jordan inverse. Throws SingularBlockError when no inverse exists.
template <class K>
Matrix<K> inverse_matrix(Matrix<K> m, const K& zero, const K& one) {
    if (m.rows != m.cols) throw MalformedInputError("inverse of a non-square matrix");
    std::size_t n = m.rows;
    Matrix<K> inv = Matrix<K>::identity(n, zero, one);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = n;
        for (std::size_t i = col; i < n; ++i)
            if (!is_zero(m.at(i, col))) {
                sel = i;
                break;
            }
        if (sel == n)
            throw SingularBlockError("singular block matrix (column " +
                                     std::to_string(col) + ")");
        if (sel != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(sel, j), m.at(col, j));
                std::swap(inv.at(sel, j), inv.at(col, j));
            }
        K piv = inverse(m.at(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            m.at(col, j) *= piv;
            inv.at(col, j) *= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || is_zero(m.at(i, col))) continue;
            K f = m.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                K t1 = f * m.at(col, j);
                if (!is_zero(t1)) m.at(i, j) -= t1;
                K t2 = f * inv.at(col, j);
                if (!is_zero(t2)) inv.at(i, j) -= t2;
            }
        }
    }
    return inv;
}

}  // namespace braidforms
