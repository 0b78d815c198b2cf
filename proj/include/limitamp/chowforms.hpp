#pragma once

// The rational normal curve gamma(t) = (1, t, ..., t^{k+1}), its derivative
// flags, and the two Chow forms cutting out the algebraic boundary: the
// Bezout-matrix determinant for CH(C_{k+1}) and the linear bracket form for
// CH(S01).

#include "limitamp/grassmann.hpp"
#include "limitamp/matrix.hpp"
#include "limitamp/poly.hpp"
#include "limitamp/scalar.hpp"

#include <vector>

namespace limitamp {

// gamma_{k+1}(t) as a vector of length k+2
template <class T>
std::vector<T> curve_point(const T& t, int k) {
    std::vector<T> v(k + 2);
    v[0] = T(1);
    for (int i = 1; i <= k + 1; ++i) v[i] = v[i - 1] * t;
    return v;
}

// componentwise `order`-th derivative of gamma_{k+1} at t
template <class T>
std::vector<T> curve_derivative(const T& t, int order, int k) {
    require(order >= 0 && order <= k + 1, "derivative order out of range");
    std::vector<T> v(k + 2, T(0));
    for (int i = order; i <= k + 1; ++i) {
        T c(1);
        for (int z = 0; z < order; ++z) c *= T(i - z);
        v[i] = c * scalar_pow(t, i - order);
    }
    return v;
}

template <class T>
struct OsculatingPlane {
    T base_t;
    int order = 0;              // m: rows are derivative orders 0 .. m-1
    Matrix<T> rows;             // m x (k+2), full rank m
};

// m-th osculating plane at gamma(t); rank m is automatic for m <= k+2
// (generalized Vandermonde nonvanishing).
template <class T>
OsculatingPlane<T> osculating_plane(const T& t, int m, int k) {
    require(m >= 1 && m <= k + 2, "osculating order out of range");
    OsculatingPlane<T> o;
    o.base_t = t;
    o.order = m;
    o.rows = Matrix<T>(m, k + 2);
    for (int r = 0; r < m; ++r) o.rows.set_row(r, curve_derivative(t, r, k));
    return o;
}

// The special lines of the stratification: L_{0,i} = rowspan(gamma(1); gamma^{(i)}(0))
// and L_{1,i} = rowspan(gamma(0); gamma^{(i)}(1)).
template <class T>
Matrix<T> special_line_L0(int i, int k) {
    Matrix<T> m(2, k + 2);
    m.set_row(0, curve_point(T(1), k));
    m.set_row(1, curve_derivative(T(0), i, k));
    return m;
}

template <class T>
Matrix<T> special_line_L1(int i, int k) {
    Matrix<T> m(2, k + 2);
    m.set_row(0, curve_point(T(0), k));
    m.set_row(1, curve_derivative(T(1), i, k));
    return m;
}

template <class T>
struct BezoutMatrix {
    Matrix<T> entries;           // (k+1) x (k+1), symmetric
    PluckerDual<T> source_pluckers;
};

// Entries follow the index formula B_ij = sum_{K=max(0,i-j)}^{min(i,k-j)}
// p_{(j+K+1),(i-K)} with p_{a,b} = u_a v_b - u_b v_a on the canonical dual
// pair (u, v). Equivalently B is the Bezoutian of (f, g): det B equals the
// interleaved-Sylvester resultant of f and g at formal degree k+1, with no
// extra sign for any k.
template <class T>
BezoutMatrix<T> bezout_matrix(const KPlane<T>& v) {
    const int k = v.k();
    const int n = k + 1;
    BezoutMatrix<T> b;
    b.source_pluckers = plucker_dual(v);
    b.entries = Matrix<T>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T acc(0);
            for (int K = std::max(0, i - j); K <= std::min(i, n - 1 - j); ++K)
                acc += b.source_pluckers(j + K + 1, i - K);
            b.entries(i, j) = acc;
        }
    return b;
}

// Chow form of the rational normal curve, evaluated at the canonical dual
// representative; zero iff the plane meets C_{k+1} over the complex numbers.
template <class T>
T chow_form_curve(const KPlane<T>& v) {
    return det(bezout_matrix(v).entries);
}

// Chow form of the secant line S01 = span(gamma(0), gamma(1)): the bracket
// <A gamma(0) gamma(1)>, linear in the Plucker coordinates.
template <class T>
T chow_form_secant(const KPlane<T>& v) {
    return bracket(v, curve_point(T(0), v.k()), curve_point(T(1), v.k()));
}

// corank of B(f,g) = number of common roots of f and g on the projective
// line, counted with multiplicity (deg gcd(f,g) plus the common root at
// infinity when both degrees drop).
template <class T>
int bezout_corank(const KPlane<T>& v, const T& zero_tol = T(0)) {
    BezoutMatrix<T> b = bezout_matrix(v);
    return b.entries.rows() - rank(b.entries, zero_tol);
}

// Direct determinant of the confluent Vandermonde matrix whose column blocks
// are gamma^{(0)}(t_i), ..., gamma^{(mults_i - 1)}(t_i). The ambient dimension
// is sum(mults), i.e. the curve degree is sum(mults) - 1.
template <class T>
T generalized_vandermonde_det(const std::vector<T>& nodes, const std::vector<int>& mults) {
    require(nodes.size() == mults.size(), "nodes/mults length mismatch");
    int n = 0;
    for (int m : mults) {
        require(m >= 1, "multiplicities must be positive");
        n += m;
    }
    require(n >= 1, "empty configuration");
    const int k = n - 2;  // gamma_{k+1} lives in dimension k+2 = n
    Matrix<T> m(n, n);
    int col = 0;
    for (size_t b = 0; b < nodes.size(); ++b)
        for (int o = 0; o < mults[b]; ++o) {
            std::vector<T> d = curve_derivative(nodes[b], o, k);
            for (int r = 0; r < n; ++r) m(r, col) = d[r];
            ++col;
        }
    return det(m);
}

// Closed form frozen against the direct determinant:
//   prod_i prod_{m < mults_i} m!  *  prod_{i<j} (t_j - t_i)^{mults_i * mults_j}
template <class T>
T generalized_vandermonde_closed_form(const std::vector<T>& nodes, const std::vector<int>& mults) {
    require(nodes.size() == mults.size(), "nodes/mults length mismatch");
    T value(1);
    for (int m : mults)
        for (int z = 2; z < m; ++z) value *= scalar_pow(T(z), m - z);
    // the factorial product prod_{m<mu} m! written as prod z^{mu-z} above
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            value *= scalar_pow(nodes[j] - nodes[i], mults[i] * mults[j]);
    return value;
}

}  // namespace limitamp
