#pragma once

// Univariate polynomial algebra over the rationals (default) or doubles.
// Exact mode carries the load-bearing guarantees: Euclidean gcd, Yun
// square-free decomposition, Sturm-certified root isolation. Multiplicities
// always come from gcd chains, never from numeric deflation.

#include "limitamp/matrix.hpp"
#include "limitamp/scalar.hpp"

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace limitamp {

template <class T>
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const T& v) { return UniPoly(std::vector<T>{v}); }
    // (t - r)
    static UniPoly linear_root(const T& r) { return UniPoly(std::vector<T>{-r, T(1)}); }

    // degree of the zero polynomial is -1 (stands in for -infinity)
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const T& operator[](int i) const { return c_[i]; }
    // coefficient access that treats indices above the degree as 0
    T coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : T(0); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& leading() const { return c_.back(); }

    T eval(const T& x) const {
        T acc(0);
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    UniPoly derivative() const {
        if (degree() < 1) return UniPoly();
        std::vector<T> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<int>(i));
        return UniPoly(std::move(d));
    }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return UniPoly(std::move(r));
    }

    UniPoly operator-(const UniPoly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return UniPoly(std::move(r));
    }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return UniPoly(std::move(r));
    }

    UniPoly operator*(const T& s) const {
        std::vector<T> r(c_);
        for (T& v : r) v *= s;
        return UniPoly(std::move(r));
    }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    UniPoly monic() const {
        require(!is_zero(), "monic of zero polynomial");
        return *this * (T(1) / leading());
    }

    // field division with remainder: *this = q * d + r, deg r < deg d
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        require(!d.is_zero(), "division by zero polynomial");
        std::vector<T> rem(c_);
        std::vector<T> quo;
        const int dd = d.degree();
        if (degree() >= dd) quo.assign(degree() - dd + 1, T(0));
        for (int i = degree(); i >= dd; --i) {
            T f = rem[i] / d.leading();
            if (!ScalarTraits<T>::is_zero(f)) {
                quo[i - dd] = f;
                for (int j = 0; j < dd; ++j) rem[i - dd + j] -= f * d[j];
            }
            rem[i] = T(0);
        }
        return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
    }

  private:
    void trim() {
        while (!c_.empty() && ScalarTraits<T>::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

using RatPoly = UniPoly<Rat>;

// Monic gcd via the Euclidean algorithm over the rational field.
inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
    require(!(a.is_zero() && b.is_zero()), "gcd of two zero polynomials");
    while (!b.is_zero()) {
        RatPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Yun square-free decomposition: p = lc * prod_i f_i^i with the f_i monic,
// square-free and pairwise coprime. Returns (f_i, i) for the nontrivial f_i.
inline std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& p) {
    require(!p.is_zero(), "square-free decomposition of zero polynomial");
    std::vector<std::pair<RatPoly, int>> out;
    if (p.degree() == 0) return out;
    RatPoly a = p.monic();
    RatPoly g = poly_gcd(a, a.derivative());
    RatPoly w = a.divmod(g).first;
    RatPoly y = a.derivative().divmod(g).first;
    int mult = 1;
    while (w.degree() > 0) {
        RatPoly z = y - w.derivative();
        RatPoly f = z.is_zero() ? w : poly_gcd(w, z);
        if (f.degree() > 0) out.emplace_back(f.monic(), mult);
        w = w.divmod(f).first;
        y = z.divmod(f).first;
        ++mult;
    }
    return out;
}

inline RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() <= 1) return p.is_zero() ? p : p.monic();
    RatPoly g = poly_gcd(p, p.derivative());
    return p.divmod(g).first.monic();
}

// ---- Sturm machinery ----

inline std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
    std::vector<RatPoly> seq;
    seq.push_back(p);
    if (p.degree() >= 1) seq.push_back(p.derivative());
    while (seq.back().degree() >= 1) {
        RatPoly r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(r * Rat(-1));
    }
    return seq;
}

inline int sign_variations_at(const std::vector<RatPoly>& seq, const Rat& x) {
    int count = 0;
    int prev = 0;
    for (const RatPoly& q : seq) {
        Rat v = q.eval(x);
        int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
        if (s != 0) {
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
    }
    return count;
}

// Number of distinct real roots of p in the open interval (lo, hi).
inline int count_distinct_roots_open(const RatPoly& p, const Rat& lo, const Rat& hi) {
    if (p.degree() <= 0) return 0;
    RatPoly q = squarefree_part(p);
    // peel endpoint roots so the variation bound applies cleanly
    while (q.eval(lo) == 0) q = q.divmod(RatPoly::linear_root(lo)).first;
    while (q.eval(hi) == 0) q = q.divmod(RatPoly::linear_root(hi)).first;
    if (q.degree() <= 0) return 0;
    auto seq = sturm_sequence(q);
    return sign_variations_at(seq, lo) - sign_variations_at(seq, hi);
}

// Number of distinct real roots of p in the closed interval [lo, hi].
inline int count_distinct_roots_closed(const RatPoly& p, const Rat& lo, const Rat& hi) {
    int n = count_distinct_roots_open(p, lo, hi);
    if (p.eval(lo) == 0) ++n;
    if (hi != lo && p.eval(hi) == 0) ++n;
    return n;
}

inline Rat cauchy_root_bound(const RatPoly& p) {
    require(p.degree() >= 0, "root bound of zero polynomial");
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rat a = ScalarTraits<Rat>::abs(p[i] / p.leading());
        if (a > m) m = a;
    }
    return m + 1;
}

template <class T>
struct RealRoot {
    T lo, hi;  // lo == hi exactly when the root is known in closed form
    int multiplicity = 1;
    bool exact() const { return lo == hi; }
    double approx() const { return (to_double(lo) + to_double(hi)) / 2.0; }
};

struct ComplexPair {
    std::complex<double> approx;  // representative with positive imaginary part
    int multiplicity = 1;
};

template <class T>
struct RootMultiset {
    std::vector<RealRoot<T>> roots;  // real roots inside the requested window
    std::vector<ComplexPair> complex_pairs;
    int outside_window = 0;  // multiplicity-weighted count of real roots outside
    int degree = 0;

    int window_weight() const {
        int s = 0;
        for (const auto& r : roots) s += r.multiplicity;
        return s;
    }
    int complex_weight() const {
        int s = 0;
        for (const auto& cp : complex_pairs) s += 2 * cp.multiplicity;
        return s;
    }
};

namespace detail {

// Isolating intervals for the distinct real roots of a square-free q,
// restricted to (lo, hi); exact rational roots found at bisection midpoints
// collapse to [r, r].
inline void isolate_squarefree(const RatPoly& q, const std::vector<RatPoly>& seq, const Rat& lo,
                               const Rat& hi, std::vector<RealRoot<Rat>>& out) {
    int n = sign_variations_at(seq, lo) - sign_variations_at(seq, hi);
    if (n == 0) return;
    if (n == 1) {
        out.push_back(RealRoot<Rat>{lo, hi, 1});
        return;
    }
    Rat mid = (lo + hi) / 2;
    if (q.eval(mid) == 0) out.push_back(RealRoot<Rat>{mid, mid, 1});
    isolate_squarefree(q, seq, lo, mid, out);
    isolate_squarefree(q, seq, mid, hi, out);
}

inline void refine_once(const RatPoly& q, RealRoot<Rat>& r) {
    if (r.exact()) return;
    Rat mid = (r.lo + r.hi) / 2;
    Rat v = q.eval(mid);
    if (v == 0) {
        r.lo = r.hi = mid;
        return;
    }
    Rat vlo = q.eval(r.lo);
    if (vlo == 0) {  // endpoint root, tighten to it
        r.hi = r.lo;
        return;
    }
    if ((vlo > 0) != (v > 0))
        r.hi = mid;
    else
        r.lo = mid;
}

}  // namespace detail

// Refine an isolating interval of the square-free factor q until its width is
// at most `width`.
inline void refine_root(const RatPoly& q, RealRoot<Rat>& r, const Rat& width) {
    while (!r.exact() && r.hi - r.lo > width) detail::refine_once(q, r);
}

// All real roots of q (square-free) on the whole line, as isolating intervals
// with q(lo), q(hi) != 0 or exact points.
inline std::vector<RealRoot<Rat>> isolate_squarefree_roots(const RatPoly& q) {
    std::vector<RealRoot<Rat>> out;
    if (q.degree() <= 0) return out;
    Rat bound = cauchy_root_bound(q);
    auto seq = sturm_sequence(q);
    if (q.eval(-bound) == 0 || q.eval(bound) == 0)
        bound += 1;  // Cauchy bound is strict, so this cannot recur
    detail::isolate_squarefree(q, seq, -bound, bound, out);
    std::sort(out.begin(), out.end(),
              [](const RealRoot<Rat>& a, const RealRoot<Rat>& b) { return a.lo < b.lo; });
    return out;
}

inline std::vector<std::complex<double>> poly_roots(const UniPoly<double>& p);

// Real roots of p inside [lo, hi] with multiplicities from the square-free
// decomposition; complex pairs and out-of-window roots are tallied so the
// total weight accounts for deg p. Intervals are refined until pairwise
// disjoint and decidable against the window endpoints.
inline RootMultiset<Rat> isolate_real_roots(const RatPoly& p, const Rat& lo, const Rat& hi) {
    require(!p.is_zero(), "root isolation of zero polynomial");
    require(lo <= hi, "empty isolation window");
    RootMultiset<Rat> out;
    out.degree = p.degree();
    if (p.degree() == 0) return out;

    auto factors = squarefree_decomposition(p);
    std::vector<RealRoot<Rat>> all;
    std::vector<int> factor_of;  // index into `factors` per entry of `all`
    for (size_t fi = 0; fi < factors.size(); ++fi) {
        const RatPoly& f = factors[fi].first;
        const int mult = factors[fi].second;
        auto roots = isolate_squarefree_roots(f);
        for (auto& r : roots) {
            r.multiplicity = mult;
            // shrink until the interval is inside the window, outside it, or
            // pinned exactly to a window endpoint
            while (!r.exact()) {
                if ((r.lo > lo && r.hi < hi) || r.hi < lo || r.lo > hi) break;
                if (f.eval(lo) == 0 && r.lo <= lo && lo <= r.hi) { r.lo = r.hi = lo; break; }
                if (f.eval(hi) == 0 && r.lo <= hi && hi <= r.hi) { r.lo = r.hi = hi; break; }
                detail::refine_once(f, r);
            }
            all.push_back(r);
            factor_of.push_back(static_cast<int>(fi));
        }
        int pairs = (f.degree() - static_cast<int>(roots.size())) / 2;
        if (pairs > 0) {
            std::vector<double> dc(f.degree() + 1);
            for (int i = 0; i <= f.degree(); ++i) dc[i] = to_double(f[i]);
            auto cplx = poly_roots(UniPoly<double>(std::move(dc)));
            std::vector<std::complex<double>> upper;
            for (const auto& z : cplx)
                if (z.imag() > 1e-9) upper.push_back(z);
            std::sort(upper.begin(), upper.end(), [](const auto& a, const auto& b) {
                return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
            });
            for (int i = 0; i < pairs; ++i)
                out.complex_pairs.push_back(ComplexPair{
                    i < static_cast<int>(upper.size()) ? upper[i] : std::complex<double>(0, 0), mult});
        }
    }

    // intervals for roots of distinct square-free factors may overlap; refine
    // until pairwise disjoint (distinct reals, so this terminates)
    auto overlaps = [](const RealRoot<Rat>& a, const RealRoot<Rat>& b) {
        return !(a.hi < b.lo || b.hi < a.lo);
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < all.size(); ++i)
            for (size_t j = i + 1; j < all.size(); ++j) {
                if (!overlaps(all[i], all[j])) continue;
                changed = true;
                for (size_t v : {i, j}) {
                    RealRoot<Rat>& r = all[v];
                    if (r.exact()) continue;
                    Rat w = (r.hi - r.lo) / 4;
                    refine_root(factors[factor_of[v]].first, r, w);
                }
                require(!(all[i].exact() && all[j].exact() && all[i].lo == all[j].lo),
                        "duplicate root across square-free factors");
            }
    }

    std::sort(all.begin(), all.end(),
              [](const RealRoot<Rat>& a, const RealRoot<Rat>& b) { return a.lo < b.lo; });
    for (const auto& r : all) {
        bool inside = r.exact() ? (r.lo >= lo && r.lo <= hi) : (r.lo >= lo && r.hi <= hi);
        if (inside)
            out.roots.push_back(r);
        else
            out.outside_window += r.multiplicity;
    }
    return out;
}

inline RootMultiset<Rat> isolate_all_real_roots(const RatPoly& p) {
    Rat b = p.degree() >= 1 ? cauchy_root_bound(p) + 1 : Rat(1);
    return isolate_real_roots(p, -b, b);
}

// Resultant as the determinant of the 2D x 2D Sylvester matrix at formal
// degree D, rows interleaved (f-shift, g-shift, f-shift, ...) with descending
// coefficients. The interleaving makes det(Sylvester) coincide with
// det(Bezout) for every degree, which is the normalization the Chow-form
// cross-checks assume.
template <class T>
T sylvester_resultant(const UniPoly<T>& a, const UniPoly<T>& b, int formal_degree) {
    require(formal_degree >= std::max(a.degree(), b.degree()), "formal degree too small");
    require(formal_degree >= 1, "formal degree must be positive");
    const int D = formal_degree;
    Matrix<T> m(2 * D, 2 * D);
    for (int r = 0; r < D; ++r)
        for (int j = 0; j <= D; ++j) {
            if (r + j >= 2 * D) continue;
            m(2 * r, r + j) = a.coeff(D - j);
            m(2 * r + 1, r + j) = b.coeff(D - j);
        }
    return det(m);
}

// ---- double-precision helpers ----

inline std::vector<std::complex<double>> poly_roots(const UniPoly<double>& p) {
    std::vector<std::complex<double>> out;
    int d = p.degree();
    while (d > 0 && std::fabs(p.coeff(d)) < 1e-300) --d;
    if (d < 1) return out;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        comp(i, d - 1) = -p.coeff(i) / p.coeff(d);
        if (i + 1 < d) comp(i + 1, i) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

// Approximate gcd for double mode: roots of a and b are matched within
// tol_root and the shared cluster is rebuilt as a monic polynomial.
inline UniPoly<double> poly_gcd(const UniPoly<double>& a, const UniPoly<double>& b,
                                double tol_root = 1e-9) {
    require(!(a.is_zero() && b.is_zero()), "gcd of two zero polynomials");
    if (a.is_zero() || a.degree() == 0 || b.is_zero() || b.degree() == 0)
        return UniPoly<double>::constant(1.0);
    auto ra = poly_roots(a);
    auto rb = poly_roots(b);
    std::vector<bool> used(rb.size(), false);
    UniPoly<double> g = UniPoly<double>::constant(1.0);
    for (const auto& x : ra) {
        for (size_t j = 0; j < rb.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(x - rb[j]) <= tol_root) {
                used[j] = true;
                std::complex<double> r = (x + rb[j]) / 2.0;
                if (std::fabs(r.imag()) <= tol_root) {
                    g = g * UniPoly<double>(std::vector<double>{-r.real(), 1.0});
                } else if (r.imag() > 0) {
                    // keep coefficients real: fold the conjugate in directly
                    g = g * UniPoly<double>(std::vector<double>{std::norm(r), -2.0 * r.real(), 1.0});
                }
                break;
            }
        }
    }
    return g;
}

}  // namespace limitamp
