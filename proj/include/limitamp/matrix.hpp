#pragma once

// Small dense matrices over an exact field (Rat) or doubles. Everything here
// is sized by k <= 4ish, so plain Gaussian elimination with exact fractions is
// the right tool; no attempt at sparsity or blocking.

#include "limitamp/scalar.hpp"

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace limitamp {

template <class T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        data_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& row : init) {
            require(static_cast<int>(row.size()) == cols_, "ragged matrix initializer");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    Matrix transposed() const {
        Matrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Matrix operator*(const Matrix& o) const {
        require(cols_ == o.rows_, "matrix product shape mismatch");
        Matrix m(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int l = 0; l < cols_; ++l) {
                const T& a = (*this)(i, l);
                if (ScalarTraits<T>::is_zero(a)) continue;
                for (int j = 0; j < o.cols_; ++j) m(i, j) += a * o(l, j);
            }
        return m;
    }

    std::vector<T> row(int i) const {
        std::vector<T> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void set_row(int i, const std::vector<T>& r) {
        require(static_cast<int>(r.size()) == cols_, "row length mismatch");
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
    }

    // rows of a on top of rows of b
    static Matrix stack(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.cols_, "stack width mismatch");
        Matrix m(a.rows_ + b.rows_, a.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) m(a.rows_ + i, j) = b(i, j);
        return m;
    }

    Matrix with_row(const std::vector<T>& r) const {
        Matrix b(1, cols_);
        b.set_row(0, r);
        return stack(*this, b);
    }

    Matrix columns(const std::vector<int>& idx) const {
        Matrix m(rows_, static_cast<int>(idx.size()));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < m.cols_; ++j) m(i, j) = (*this)(i, idx[j]);
        return m;
    }

  private:
    int rows_, cols_;
    std::vector<T> data_;
};

template <class T>
T det(Matrix<T> m) {
    require(m.rows() == m.cols(), "det of non-square matrix");
    const int n = m.rows();
    T d(1);
    int sign = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        if constexpr (ScalarTraits<T>::exact) {
            for (int r = c; r < n && piv < 0; ++r)
                if (m(r, c) != 0) piv = r;
        } else {
            T best(0);
            for (int r = c; r < n; ++r) {
                T a = ScalarTraits<T>::abs(m(r, c));
                if (a > best) { best = a; piv = r; }
            }
        }
        if (piv < 0) return T(0);
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            sign = -sign;
        }
        d *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (ScalarTraits<T>::is_zero(m(r, c))) continue;
            T f = m(r, c) / m(c, c);
            for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return sign < 0 ? T(-d) : d;
}

// In-place reduced row echelon form; returns pivot column indices. Pivot
// columns are chosen leftmost, pivots normalized to 1, cleared above and
// below, so the result is the canonical representative of the row span.
template <class T>
std::vector<int> rref_in_place(Matrix<T>& m, const T& zero_tol = T(0)) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        if constexpr (ScalarTraits<T>::exact) {
            for (int i = r; i < m.rows() && piv < 0; ++i)
                if (m(i, c) != 0) piv = i;
        } else {
            T best = zero_tol;
            for (int i = r; i < m.rows(); ++i) {
                T a = ScalarTraits<T>::abs(m(i, c));
                if (a > best) { best = a; piv = i; }
            }
        }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        T inv = m(r, c);
        for (int j = c; j < m.cols(); ++j) m(r, j) /= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || ScalarTraits<T>::is_zero(m(i, c), zero_tol)) continue;
            T f = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
int rank(Matrix<T> m, const T& zero_tol = T(0)) {
    return static_cast<int>(rref_in_place(m, zero_tol).size());
}

// Canonical basis of the right null space {w : m w = 0}, returned as the RREF
// of the standard free-column basis, one row per kernel dimension.
template <class T>
Matrix<T> null_space_rows(Matrix<T> m, const T& zero_tol = T(0)) {
    const int n = m.cols();
    std::vector<int> pivots = rref_in_place(m, zero_tol);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;

    Matrix<T> basis(n - static_cast<int>(pivots.size()), n);
    int bi = 0;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        basis(bi, f) = T(1);
        for (int pi = 0; pi < static_cast<int>(pivots.size()); ++pi) basis(bi, pivots[pi]) = -m(pi, f);
        ++bi;
    }
    rref_in_place(basis, zero_tol);
    return basis;
}

// Solve m^T c = v for c when v lies in the row span of m (used to express a
// vector in a plane's row basis). Throws if v is not in the span.
template <class T>
std::vector<T> coordinates_in_row_span(const Matrix<T>& m, const std::vector<T>& v,
                                       const T& zero_tol = T(0)) {
    // solve c^T m = v^T via RREF of [m^T | v^T]
    Matrix<T> sys(m.cols(), m.rows() + 1);
    for (int i = 0; i < m.cols(); ++i) {
        for (int j = 0; j < m.rows(); ++j) sys(i, j) = m(j, i);
        sys(i, m.rows()) = v[i];
    }
    std::vector<int> pivots = rref_in_place(sys, zero_tol);
    std::vector<T> c(m.rows(), T(0));
    for (int pi = 0; pi < static_cast<int>(pivots.size()); ++pi) {
        require(pivots[pi] < m.rows(), "vector not in row span");
        c[pivots[pi]] = sys(pi, m.rows());
    }
    return c;
}

template <class T>
Matrix<double> to_double_matrix(const Matrix<T>& m) {
    Matrix<double> d(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) d(i, j) = to_double(m(i, j));
    return d;
}

}  // namespace limitamp
