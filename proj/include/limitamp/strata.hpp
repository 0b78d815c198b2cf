#pragma once

// The boundary stratification: intersection divisors D_V, classification of a
// plane by secant degree / osculation orders / special-line incidences, exact
// samplers for every stratum type, and tangent-space dimension checks for the
// secant varieties.

#include "limitamp/chowforms.hpp"
#include "limitamp/grassmann.hpp"
#include "limitamp/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace limitamp {

struct DivisorPoint {
    enum class Kind { InUnitInterval, RealOutside, ComplexPair };
    Kind kind = Kind::RealOutside;
    RealRoot<Rat> root;      // real kinds; root.lo == root.hi when exact
    bool at_infinity = false;  // RealOutside only: common root of the homogenized pair at t = infinity
    ComplexPair pair;        // ComplexPair kind
    int multiplicity = 1;
};

struct IntersectionDivisor {
    std::vector<DivisorPoint> points;
    int total_degree = 0;  // = corank of the Bezout matrix
};

// Straightforward simplest-fraction search inside a closed interval
// (Stern-Brocot walk). Used to recognize exact rational divisor points.
inline Rat simplest_rational_in(const Rat& lo, const Rat& hi) {
    require(lo <= hi, "empty interval");
    if (lo == hi) return lo;
    if (lo <= 0 && 0 <= hi) return Rat(0);
    if (hi < 0) return -simplest_rational_in(-hi, -lo);
    // 0 < lo < hi: peel integer parts
    BigInt fl = numerator(lo) / denominator(lo);
    if (Rat(fl) == lo) return lo;
    if (hi >= Rat(fl + 1)) return Rat(fl + 1);
    Rat flo = lo - Rat(fl), fhi = hi - Rat(fl);
    // recurse on reciprocals: simplest in [1/fhi, 1/flo]
    Rat inner = simplest_rational_in(Rat(1) / fhi, Rat(1) / flo);
    return Rat(fl) + Rat(1) / inner;
}

// The divisor of curve parameters at which the plane meets C_{k+1}: the gcd
// of the dual pair factored over the reals, plus the common projective root
// at infinity when both polynomial degrees drop below k+1.
template <class T>
IntersectionDivisor intersection_divisor(const KPlane<T>& v);

template <>
inline IntersectionDivisor intersection_divisor(const KPlane<Rat>& v) {
    const int d = v.k() + 1;
    auto [f, g] = dual_polynomials(v);
    IntersectionDivisor out;

    RatPoly common;
    if (f.is_zero() || g.is_zero())
        common = (f.is_zero() ? g : f).monic();
    else
        common = poly_gcd(f, g);
    int inf_mult = std::min(d - f.degree(), d - g.degree());

    if (common.degree() > 0) {
        const Rat lo(0), hi(1);
        for (const auto& [fac, mult] : squarefree_decomposition(common)) {
            auto roots = isolate_squarefree_roots(fac);
            for (auto& r : roots) {
                // refine until the interval is decidable against [0,1]
                while (!r.exact()) {
                    if ((r.lo > lo && r.hi < hi) || r.hi < lo || r.lo > hi) break;
                    if (fac.eval(lo) == 0 && r.lo <= lo && lo <= r.hi) { r.lo = r.hi = lo; break; }
                    if (fac.eval(hi) == 0 && r.lo <= hi && hi <= r.hi) { r.lo = r.hi = hi; break; }
                    detail::refine_once(fac, r);
                }
                DivisorPoint p;
                bool in01 = r.exact() ? (r.lo >= lo && r.lo <= hi) : (r.lo >= lo && r.hi <= hi);
                p.kind = in01 ? DivisorPoint::Kind::InUnitInterval : DivisorPoint::Kind::RealOutside;
                p.root = r;
                p.root.multiplicity = mult;
                p.multiplicity = mult;
                out.points.push_back(p);
            }
            int pairs = (fac.degree() - static_cast<int>(roots.size())) / 2;
            for (int i = 0; i < pairs; ++i) {
                DivisorPoint p;
                p.kind = DivisorPoint::Kind::ComplexPair;
                p.pair.multiplicity = mult;
                p.multiplicity = mult;
                out.points.push_back(p);
            }
        }
    }
    if (inf_mult > 0) {
        DivisorPoint p;
        p.kind = DivisorPoint::Kind::RealOutside;
        p.at_infinity = true;
        p.multiplicity = inf_mult;
        out.points.push_back(p);
    }
    for (const auto& p : out.points)
        out.total_degree +=
            p.kind == DivisorPoint::Kind::ComplexPair ? 2 * p.multiplicity : p.multiplicity;
    return out;
}

struct StratumLabel {
    int secant_degree = 0;  // ell = deg D_V
    int osc0 = 0;           // largest m with O^(m)(gamma(0)) inside V
    int osc1 = 0;
    bool meets_S01 = false;
    bool meets_L0 = false;  // V meets L_{0,osc0} (only defined when osc0 >= 1)
    bool meets_L1 = false;
    int claimed_codim = 0;

    bool operator==(const StratumLabel& o) const {
        return secant_degree == o.secant_degree && osc0 == o.osc0 && osc1 == o.osc1 &&
               meets_S01 == o.meets_S01 && meets_L0 == o.meets_L0 && meets_L1 == o.meets_L1 &&
               claimed_codim == o.claimed_codim;
    }
};

// Codimension bookkeeping matching the stratification table: Sec^l is codim l
// (dimension 2k - l), an S01 incidence without curve-end osculation adds 1,
// O^l_{0,j} has codim l+j+1, O^l(i,j) has codim l+i+j.
inline int stratum_codim(int ell, int osc0, int osc1, bool s01, bool l0, bool l1) {
    if (osc0 > 0 && osc1 > 0) return ell + osc0 + osc1;
    if (osc0 > 0) return ell + osc0 + (l0 ? 1 : 0);
    if (osc1 > 0) return ell + osc1 + (l1 ? 1 : 0);
    return ell + (s01 ? 1 : 0);
}

inline std::string stratum_name(const StratumLabel& s, int k) {
    auto sec = [&](int l) { return "Sec" + std::to_string(l); };
    std::string base;
    if (s.osc0 > 0 && s.osc1 > 0)
        base = "O" + std::to_string(s.secant_degree) + "(" + std::to_string(s.osc0) + "," +
               std::to_string(s.osc1) + ")";
    else if (s.osc0 > 0)
        base = s.meets_L0 ? "O" + std::to_string(s.secant_degree) + "_{0," + std::to_string(s.osc0) + "}"
                          : sec(s.secant_degree) + "+osc0=" + std::to_string(s.osc0);
    else if (s.osc1 > 0)
        base = s.meets_L1 ? "O" + std::to_string(s.secant_degree) + "_{1," + std::to_string(s.osc1) + "}"
                          : sec(s.secant_degree) + "+osc1=" + std::to_string(s.osc1);
    else if (s.secant_degree == 0)
        base = s.meets_S01 ? "CH(S01)" : "generic";
    else
        base = s.meets_S01 ? sec(s.secant_degree) + "&S01" : sec(s.secant_degree);
    if (k == 2) {
        // Table-1 dictionary for the twisted cubic
        const StratumLabel& L = s;
        auto is = [&](int l, int o0, int o1, bool b01, bool b0, bool b1) {
            return L.secant_degree == l && L.osc0 == o0 && L.osc1 == o1 && L.meets_S01 == b01 &&
                   L.meets_L0 == b0 && L.meets_L1 == b1;
        };
        if (is(1, 0, 0, false, false, false)) return "CH(C3)";
        if (is(0, 0, 0, true, false, false)) return "CH(S01)";
        if (is(2, 0, 0, false, false, false)) return "Sing(CH(C3))";
        if (is(1, 1, 0, true, false, false)) return "S_0";
        if (is(1, 0, 1, true, false, false)) return "S_1";
        if (is(1, 0, 0, true, false, false)) return "S_01";
        if (is(1, 1, 0, true, true, false)) return "L_0";
        if (is(1, 0, 1, true, false, true)) return "L_1";
        if (is(2, 1, 0, true, false, false)) return "C_0";
        if (is(2, 0, 1, true, false, false)) return "C_1";
        if (is(2, 1, 1, true, true, true)) return "S_01-vertex";
        if (is(2, 2, 0, true, false, false)) return "T_0";
        if (is(2, 0, 2, true, false, false)) return "T_1";
    }
    return base;
}

template <class T>
StratumLabel classify(const KPlane<T>& v, const T& zero_tol = T(0)) {
    const int k = v.k();
    StratumLabel s;
    s.secant_degree = bezout_corank(v, zero_tol);
    for (int m = 1; m <= k; ++m) {
        if (!contains_subspace(v, osculating_plane(T(0), m, k).rows, zero_tol)) break;
        s.osc0 = m;
    }
    for (int m = 1; m <= k; ++m) {
        if (!contains_subspace(v, osculating_plane(T(1), m, k).rows, zero_tol)) break;
        s.osc1 = m;
    }
    s.meets_S01 = ScalarTraits<T>::is_zero(chow_form_secant(v), zero_tol);
    if (s.osc0 >= 1)
        s.meets_L0 = ScalarTraits<T>::is_zero(
            bracket(v, curve_point(T(1), k), curve_derivative(T(0), s.osc0, k)), zero_tol);
    if (s.osc1 >= 1)
        s.meets_L1 = ScalarTraits<T>::is_zero(
            bracket(v, curve_point(T(0), k), curve_derivative(T(1), s.osc1, k)), zero_tol);
    s.claimed_codim = stratum_codim(s.secant_degree, s.osc0, s.osc1, s.meets_S01, s.meets_L0, s.meets_L1);
    return s;
}

// ---- samplers ----
//
// Samplers plant exact rational structure, complete with random rational rows
// and reject completions that change the classification (probability zero for
// generic draws; a retry cap guards pathological seeds).

inline constexpr int kSamplerRetryCap = 16;

namespace detail {

inline std::vector<Rat> random_row(Rng& rng, int len) {
    std::vector<Rat> r(len);
    for (auto& v : r) v = rng.rat_small(8, 8);
    return r;
}

inline KPlane<Rat> complete_and_verify(std::vector<std::vector<Rat>> rows, int k,
                                       const StratumLabel& expect, Rng& rng) {
    const int need = k - static_cast<int>(rows.size());
    require(need >= 0, "sampler planted more rows than k");
    for (int attempt = 0; attempt < kSamplerRetryCap; ++attempt) {
        std::vector<std::vector<Rat>> full = rows;
        for (int i = 0; i < need; ++i) full.push_back(random_row(rng, k + 2));
        Matrix<Rat> m(k, k + 2);
        for (int i = 0; i < k; ++i) m.set_row(i, full[i]);
        Matrix<Rat> probe = m;
        if (static_cast<int>(rref_in_place(probe).size()) != k) continue;
        KPlane<Rat> v = KPlane<Rat>::from_primal(m);
        if (classify(v) == expect) return v;
    }
    throw std::runtime_error("sampler retry cap exceeded");
}

}  // namespace detail

inline StratumLabel make_label(int ell, int osc0, int osc1, bool s01, bool l0, bool l1) {
    StratumLabel s;
    s.secant_degree = ell;
    s.osc0 = osc0;
    s.osc1 = osc1;
    s.meets_S01 = s01;
    s.meets_L0 = l0;
    s.meets_L1 = l1;
    s.claimed_codim = stratum_codim(ell, osc0, osc1, s01, l0, l1);
    return s;
}

// plane through ell distinct interior curve points, random completion
inline KPlane<Rat> sample_secant(int k, int ell, Rng& rng) {
    require(ell >= 0 && ell <= k, "sample_secant needs 0 <= ell <= k");
    std::vector<std::vector<Rat>> rows;
    for (const Rat& s : rng.distinct_in_01(ell)) rows.push_back(curve_point(s, k));
    return detail::complete_and_verify(std::move(rows), k,
                                       make_label(ell, 0, 0, false, false, false), rng);
}

// plane meeting C in ell interior points and the segment of S01 in one point
inline KPlane<Rat> sample_secant_s01(int k, int ell, Rng& rng) {
    require(ell >= 0 && ell + 1 <= k, "sample_secant_s01 needs ell + 1 <= k");
    std::vector<std::vector<Rat>> rows;
    for (const Rat& s : rng.distinct_in_01(ell)) rows.push_back(curve_point(s, k));
    const Rat lam(rng.int_in(1, 9), rng.int_in(1, 9));
    std::vector<Rat> q = curve_point(Rat(0), k);
    std::vector<Rat> g1 = curve_point(Rat(1), k);
    for (int i = 0; i < k + 2; ++i) q[i] = q[i] * lam + g1[i];
    rows.push_back(q);
    return detail::complete_and_verify(std::move(rows), k,
                                       make_label(ell, 0, 0, true, false, false), rng);
}

// O^ell_{0,j}: contains the j-th osculating plane at gamma(0), meets L_{0,j},
// and meets C to total order ell (j at 0 plus ell-j interior points)
inline KPlane<Rat> sample_O0(int k, int ell, int j, Rng& rng) {
    require(j >= 1 && j <= ell && ell <= k - 1, "sample_O0 needs 1 <= j <= ell <= k-1");
    std::vector<std::vector<Rat>> rows;
    OsculatingPlane<Rat> osc = osculating_plane(Rat(0), j, k);
    for (int r = 0; r < j; ++r) rows.push_back(osc.rows.row(r));
    // a point of L_{0,j} off the curve and off the osculating flag
    std::vector<Rat> q = curve_point(Rat(1), k);
    std::vector<Rat> dj = curve_derivative(Rat(0), j, k);
    const Rat beta = rng.rat_nonzero(6, 6);
    for (int i = 0; i < k + 2; ++i) q[i] += beta * dj[i];
    rows.push_back(q);
    for (const Rat& s : rng.distinct_in_01(ell - j)) rows.push_back(curve_point(s, k));
    return detail::complete_and_verify(std::move(rows), k, make_label(ell, j, 0, true, true, false),
                                       rng);
}

inline KPlane<Rat> sample_O1(int k, int ell, int j, Rng& rng) {
    require(j >= 1 && j <= ell && ell <= k - 1, "sample_O1 needs 1 <= j <= ell <= k-1");
    std::vector<std::vector<Rat>> rows;
    OsculatingPlane<Rat> osc = osculating_plane(Rat(1), j, k);
    for (int r = 0; r < j; ++r) rows.push_back(osc.rows.row(r));
    std::vector<Rat> q = curve_point(Rat(0), k);
    std::vector<Rat> dj = curve_derivative(Rat(1), j, k);
    const Rat beta = rng.rat_nonzero(6, 6);
    for (int i = 0; i < k + 2; ++i) q[i] += beta * dj[i];
    rows.push_back(q);
    for (const Rat& s : rng.distinct_in_01(ell - j)) rows.push_back(curve_point(s, k));
    return detail::complete_and_verify(std::move(rows), k, make_label(ell, 0, j, true, false, true),
                                       rng);
}

// O^ell(i,j): contains the i-th osculating plane at gamma(0) and the j-th at
// gamma(1), meeting C to total order ell
inline KPlane<Rat> sample_Oij(int k, int ell, int i, int j, Rng& rng) {
    require(i >= 1 && j >= 1 && i + j <= ell && ell <= k, "sample_Oij parameter violation");
    std::vector<std::vector<Rat>> rows;
    OsculatingPlane<Rat> o0 = osculating_plane(Rat(0), i, k);
    OsculatingPlane<Rat> o1 = osculating_plane(Rat(1), j, k);
    for (int r = 0; r < i; ++r) rows.push_back(o0.rows.row(r));
    for (int r = 0; r < j; ++r) rows.push_back(o1.rows.row(r));
    for (const Rat& s : rng.distinct_in_01(ell - i - j)) rows.push_back(curve_point(s, k));
    return detail::complete_and_verify(std::move(rows), k, make_label(ell, i, j, true, true, true),
                                       rng);
}

// plane meeting the curve once at a parameter outside [0,1] (and nowhere in
// it): on CH(C_{k+1}) but not in the Euclidean boundary
inline KPlane<Rat> sample_secant_outside(int k, Rng& rng) {
    std::vector<std::vector<Rat>> rows;
    Rat s = rng.int_in(0, 1) ? Rat(rng.int_in(2, 9), rng.int_in(1, 3))
                             : -Rat(rng.int_in(1, 9), rng.int_in(1, 9));
    if (s >= 0 && s <= 1) s += 2;
    rows.push_back(curve_point(s, k));
    return detail::complete_and_verify(std::move(rows), k, make_label(1, 0, 0, false, false, false),
                                       rng);
}

// ---- tangent spaces ----

struct TangentReport {
    StratumLabel stratum;
    int numeric_dimension = 0;
    int expected_dimension = 0;
};

namespace detail {

// Exact rational value of an isolated divisor root, recognized by refining
// the isolating interval around the simplest fraction it contains.
inline Rat exact_rational_root(const RatPoly& sf_factor, RealRoot<Rat> r) {
    if (r.exact()) return r.lo;
    for (int i = 0; i < 80; ++i) {
        Rat cand = simplest_rational_in(r.lo, r.hi);
        if (sf_factor.eval(cand) == 0) return cand;
        detail::refine_once(sf_factor, r);
        if (r.exact()) return r.lo;
    }
    throw std::domain_error("divisor point is not a small rational; tangent check unsupported");
}

}  // namespace detail

// Dimension of the solution space of the linear conditions
// phi(O^(m_i)(p_i)) in O^(m_i+1)(p_i) + V on phi in Hom(V, C^{k+2}/V),
// computed as 2k minus the exact rank of the condition system.
inline TangentReport tangent_dimension_secant(const KPlane<Rat>& v) {
    const int k = v.k();
    IntersectionDivisor div = intersection_divisor(v);
    StratumLabel label = classify(v);
    require(label.secant_degree == div.total_degree, "corank/divisor disagreement");

    // recover exact rational parameters with multiplicities
    auto [f, g] = dual_polynomials(v);
    RatPoly common = (f.is_zero() || g.is_zero()) ? (f.is_zero() ? g : f).monic() : poly_gcd(f, g);
    std::vector<std::pair<Rat, int>> pts;
    for (const auto& p : div.points) {
        require(p.kind != DivisorPoint::Kind::ComplexPair, "complex divisor point unsupported");
        require(!p.at_infinity, "divisor point at infinity unsupported");
        // find the square-free factor this root belongs to
        Rat val;
        bool found = false;
        for (const auto& [fac, mult] : squarefree_decomposition(common)) {
            if (mult != p.multiplicity) continue;
            if (p.root.exact() ? fac.eval(p.root.lo) == 0
                               : count_distinct_roots_closed(fac, p.root.lo, p.root.hi) == 1) {
                val = detail::exact_rational_root(fac, p.root);
                found = true;
                break;
            }
        }
        require(found, "could not match divisor point to a square-free factor");
        pts.emplace_back(val, p.multiplicity);
    }

    const int ell = div.total_degree;
    // unknowns: 2x k matrix Phi; conditions: one row per basis vector of each
    // osculating plane O^(m)(p) inside V
    int rows_needed = 0;
    for (const auto& [p, m] : pts) rows_needed += m;
    Matrix<Rat> sys(std::max(rows_needed, 1), 2 * k);
    int row = 0;
    for (const auto& [p, m] : pts) {
        std::vector<Rat> gm = curve_derivative(p, m, k);
        Rat w0(0), w1(0);
        for (int i = 0; i < k + 2; ++i) {
            w0 += v.dual()(0, i) * gm[i];
            w1 += v.dual()(1, i) * gm[i];
        }
        require(!(w0 == 0 && w1 == 0), "next derivative unexpectedly inside V");
        for (int o = 0; o < m; ++o) {
            std::vector<Rat> u = curve_derivative(p, o, k);
            std::vector<Rat> c = coordinates_in_row_span(v.primal(), u);
            for (int a = 0; a < k; ++a) {
                sys(row, a) = c[a] * w1;          // coefficient of Phi_{0,a}
                sys(row, k + a) = -c[a] * w0;     // coefficient of Phi_{1,a}
            }
            ++row;
        }
    }

    TangentReport rep;
    rep.stratum = label;
    rep.numeric_dimension = 2 * k - (rows_needed == 0 ? 0 : rank(sys));
    rep.expected_dimension = 2 * k - ell;
    return rep;
}

// Prop-style singularity test: V in Sec^ell is singular there iff it already
// lies on Sec^{ell+1}, i.e. the Bezout corank exceeds ell.
template <class T>
bool singularity_witness(const KPlane<T>& v, int ell, const T& zero_tol = T(0)) {
    int corank = bezout_corank(v, zero_tol);
    require(corank >= ell, "plane is not on the claimed secant variety");
    return corank >= ell + 1;
}

}  // namespace limitamp
