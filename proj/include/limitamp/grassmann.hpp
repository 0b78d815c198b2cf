#pragma once

// Points of Gr(k, k+2) carried in both representations at once: a primal
// k x (k+2) spanning matrix and the canonical 2 x (k+2) dual (cokernel) pair,
// whose rows are the coefficient vectors of the polynomials f, g.

#include "limitamp/matrix.hpp"
#include "limitamp/poly.hpp"
#include "limitamp/scalar.hpp"

#include <utility>
#include <vector>

namespace limitamp {

template <class T>
class KPlane {
  public:
    KPlane() = default;

    int k() const { return primal_.rows(); }
    int ambient() const { return primal_.cols(); }  // k + 2
    const Matrix<T>& primal() const { return primal_; }
    const Matrix<T>& dual() const { return dual_; }

    // Only zero/nonzero and sign patterns relative to a fixed primal
    // representative are contractual for scalar-valued functions of a plane;
    // the dual is always the canonical RREF representative.
    static KPlane from_primal(Matrix<T> rows, const T& zero_tol = T(0)) {
        require(rows.rows() >= 1 && rows.cols() == rows.rows() + 2, "KPlane needs a k x (k+2) matrix");
        Matrix<T> copy = rows;
        require(static_cast<int>(rref_in_place(copy, zero_tol).size()) == rows.rows(),
                "degenerate input: primal matrix is rank-deficient");
        KPlane p;
        p.primal_ = std::move(rows);
        p.dual_ = null_space_rows(p.primal_, zero_tol);
        return p;
    }

    UniPoly<T> dual_f() const { return UniPoly<T>(dual_.row(0)); }
    UniPoly<T> dual_g() const { return UniPoly<T>(dual_.row(1)); }

  private:
    Matrix<T> primal_;
    Matrix<T> dual_;
};

template <class T>
KPlane<T> plane_from_primal(const Matrix<T>& rows, const T& zero_tol = T(0)) {
    return KPlane<T>::from_primal(rows, zero_tol);
}

template <class T>
KPlane<T> plane_from_rows(const std::vector<std::vector<T>>& rows, const T& zero_tol = T(0)) {
    require(!rows.empty(), "plane needs at least one row");
    Matrix<T> m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) m.set_row(i, rows[i]);
    return KPlane<T>::from_primal(m, zero_tol);
}

// V contains gamma_{k+1}(t) iff f(t) = g(t) = 0
template <class T>
std::pair<UniPoly<T>, UniPoly<T>> dual_polynomials(const KPlane<T>& v) {
    return {v.dual_f(), v.dual_g()};
}

// det of the (k+2) x (k+2) matrix stacking the primal rows, q1 and q2. The
// sign depends on the primal representative; callers rely on vanishing and on
// sign patterns at a fixed representative only.
template <class T>
T bracket(const KPlane<T>& v, const std::vector<T>& q1, const std::vector<T>& q2) {
    require(static_cast<int>(q1.size()) == v.ambient() && static_cast<int>(q2.size()) == v.ambient(),
            "bracket vector dimension mismatch");
    Matrix<T> m(v.ambient(), v.ambient());
    for (int i = 0; i < v.k(); ++i)
        for (int j = 0; j < v.ambient(); ++j) m(i, j) = v.primal()(i, j);
    for (int j = 0; j < v.ambient(); ++j) {
        m(v.k(), j) = q1[j];
        m(v.k() + 1, j) = q2[j];
    }
    return det(m);
}

// Plucker coordinates of the dual pair: all 2x2 minors p_{ij} = u_i v_j - u_j v_i
// of a 2 x n matrix with rows u, v.
template <class T>
struct PluckerDual {
    int n = 0;  // ambient dimension k+2
    std::vector<T> p;  // packed upper triangle, i < j

    static int index(int i, int j, int n) {
        // row-major upper triangle offset for 0 <= i < j < n
        return i * (2 * n - i - 1) / 2 + (j - i - 1);
    }
    // sign convention p(i,j) = -p(j,i)
    T operator()(int i, int j) const {
        if (i == j) return T(0);
        if (i < j) return p[index(i, j, n)];
        return -p[index(j, i, n)];
    }
};

template <class T>
PluckerDual<T> pair_minors(const Matrix<T>& two_rows) {
    require(two_rows.rows() == 2, "pair_minors expects 2 rows");
    const int n = two_rows.cols();
    PluckerDual<T> out;
    out.n = n;
    out.p.resize(static_cast<size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out.p[PluckerDual<T>::index(i, j, n)] =
                two_rows(0, i) * two_rows(1, j) - two_rows(0, j) * two_rows(1, i);
    return out;
}

template <class T>
PluckerDual<T> plucker_dual(const KPlane<T>& v) {
    return pair_minors(v.dual());
}

// true iff rowspan(W) is contained in the plane
template <class T>
bool contains_subspace(const KPlane<T>& v, const Matrix<T>& w, const T& zero_tol = T(0)) {
    require(w.cols() == v.ambient(), "subspace ambient dimension mismatch");
    return rank(Matrix<T>::stack(v.primal(), w), zero_tol) == v.k();
}

template <class T>
bool contains_vector(const KPlane<T>& v, const std::vector<T>& w, const T& zero_tol = T(0)) {
    Matrix<T> m(1, static_cast<int>(w.size()));
    m.set_row(0, w);
    return contains_subspace(v, m, zero_tol);
}

// Independent route to CH(S01)-type incidence: the bracket <A q1 q2> expands
// as a linear form in the dual Plucker coordinates. Used as a cross-check of
// bracket(); the two agree up to a plane-dependent nonzero constant.
template <class T>
T bracket_via_dual_pluckers(const KPlane<T>& v, const std::vector<T>& q1, const std::vector<T>& q2) {
    PluckerDual<T> pd = plucker_dual(v);
    const int n = v.ambient();
    T acc(0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            T term = (q1[i] * q2[j] - q1[j] * q2[i]) * pd(i, j);
            if ((i + j) % 2) term = -term;
            acc += term;
        }
    return acc;
}

}  // namespace limitamp
