#pragma once

// Partitions of [0,1], the curve-sampling matrices Z(I), the amplituhedron
// map, totally nonnegative sampling, and the membership oracle for the limit
// set. Boundary membership is decided exactly (curve parameter in [0,1] or a
// segment point of S01); interior vs exterior is decided by float path
// tracking toward a certified interior reference plane, counting genuine
// boundary crossings.

#include "limitamp/chowforms.hpp"
#include "limitamp/grassmann.hpp"
#include "limitamp/rng.hpp"
#include "limitamp/strata.hpp"

#include <array>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace limitamp {

// ---- partitions and Z matrices ----

struct Partition {
    std::vector<Rat> values;  // 0 = t_1 < ... < t_n = 1

    int n() const { return static_cast<int>(values.size()); }

    static Partition validated(std::vector<Rat> vals) {
        require(vals.size() >= 2, "partition needs at least 2 points");
        require(vals.front() == 0 && vals.back() == 1, "partition must start at 0 and end at 1");
        for (size_t i = 1; i < vals.size(); ++i) require(vals[i - 1] < vals[i], "partition not increasing");
        Partition p;
        p.values = std::move(vals);
        return p;
    }

    static Partition uniform(int n) {
        require(n >= 2, "partition needs at least 2 points");
        std::vector<Rat> v(n);
        for (int i = 0; i < n; ++i) v[i] = Rat(i, n - 1);
        return validated(std::move(v));
    }

    // refinement containing all of *this plus the given midpoints
    Partition refined_with(const std::vector<Rat>& extra) const {
        std::vector<Rat> v = values;
        for (const Rat& e : extra) v.push_back(e);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return validated(std::move(v));
    }
};

struct ZMatrix {
    Matrix<Rat> rows;  // n x (k+2), row i = gamma_{k+1}(t_i)
    Partition partition;
    int k = 0;
};

inline ZMatrix z_matrix(const Partition& I, int k) {
    require(I.n() >= k + 2, "partition too short for Z(I)");
    ZMatrix z;
    z.partition = I;
    z.k = k;
    z.rows = Matrix<Rat>(I.n(), k + 2);
    for (int i = 0; i < I.n(); ++i) z.rows.set_row(i, curve_point(I.values[i], k));
    return z;
}

// ---- totally nonnegative points ----

enum class PositivityLevel { StrictlyPositive, Nonnegative };

struct TNNPoint {
    Matrix<Rat> m;  // k x n
    PositivityLevel level = PositivityLevel::StrictlyPositive;
};

namespace detail {

inline void enumerate_subsets(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) return;
        ++idx[pos];
        for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

// minor signs of a k x n matrix: returns {all > 0, all >= 0 and not all zero}
inline std::pair<bool, bool> minor_positivity(const Matrix<Rat>& m) {
    bool all_pos = true, all_nonneg = true, any_nonzero = false;
    detail::enumerate_subsets(m.cols(), m.rows(), [&](const std::vector<int>& cols) {
        Rat d = det(m.columns(cols));
        if (d <= 0) all_pos = false;
        if (d < 0) all_nonneg = false;
        if (d != 0) any_nonzero = true;
    });
    return {all_pos, all_nonneg && any_nonzero};
}

// Strictly positive level: a Vandermonde-type matrix at random increasing
// rational nodes, optionally perturbed, with exact minor re-verification.
// Nonnegative level: a strictly positive sample with random zero patterns,
// re-verified.
inline TNNPoint sample_tnn(int k, int n, PositivityLevel level, Rng& rng) {
    require(k >= 1 && k <= n, "sample_tnn needs 1 <= k <= n");
    for (int attempt = 0; attempt < kSamplerRetryCap; ++attempt) {
        std::vector<Rat> nodes;
        Rat t(0);
        for (int j = 0; j < n; ++j) {
            t += Rat(rng.int_in(1, 9), rng.int_in(1, 4));
            nodes.push_back(t);
        }
        Matrix<Rat> m(k, n);
        for (int j = 0; j < n; ++j) {
            Rat p(1);
            for (int i = 0; i < k; ++i) {
                m(i, j) = p;
                p *= nodes[j];
            }
        }
        if (rng.int_in(0, 1)) {  // perturb roughly half the samples
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < n; ++j) m(i, j) += Rat(rng.int_in(0, 1), 100);
        }
        if (level == PositivityLevel::Nonnegative) {
            const int zeros = rng.int_in(0, std::max(1, (k * n) / 4));
            for (int z = 0; z < zeros; ++z) m(rng.int_in(0, k - 1), rng.int_in(0, n - 1)) = Rat(0);
        }
        auto [pos, nonneg] = minor_positivity(m);
        if (level == PositivityLevel::StrictlyPositive ? pos : nonneg) {
            TNNPoint p;
            p.m = std::move(m);
            p.level = level;
            return p;
        }
    }
    throw std::runtime_error("sample_tnn retry cap exceeded");
}

// V |-> VZ. Rank drop cannot occur for strictly positive V; for merely
// nonnegative input it is reported as a map-undefined error.
inline KPlane<Rat> amplituhedron_map(const TNNPoint& v, const ZMatrix& z) {
    require(v.m.cols() == z.rows.rows(), "TNN point width must match partition length");
    Matrix<Rat> image = v.m * z.rows;
    Matrix<Rat> probe = image;
    if (static_cast<int>(rref_in_place(probe).size()) != v.m.rows())
        throw std::domain_error("amplituhedron map undefined: rank drop");
    return KPlane<Rat>::from_primal(image);
}

// Lemma-style projection/minor identity: the 2x2 minors of (A_perp Z_i)_i
// agree with the brackets <A Z_i Z_j> up to one plane-dependent constant.
// Returns the maximal relative spread of the ratio over all pairs; exact mode
// returns an exact 0 when the identity holds.
template <class T>
T projection_minor_identity_check(const KPlane<T>& a, const Matrix<T>& zrows,
                                  const T& zero_tol = T(0)) {
    const int n = zrows.rows();
    std::vector<std::array<T, 2>> zproj(n);
    for (int i = 0; i < n; ++i) {
        T z0(0), z1(0);
        for (int c = 0; c < zrows.cols(); ++c) {
            z0 += a.dual()(0, c) * zrows(i, c);
            z1 += a.dual()(1, c) * zrows(i, c);
        }
        zproj[i] = {z0, z1};
    }
    bool have = false;
    T lo(0), hi(0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            T br = bracket(a, zrows.row(i), zrows.row(j));
            if (ScalarTraits<T>::is_zero(br, zero_tol)) continue;
            T minor = zproj[i][0] * zproj[j][1] - zproj[i][1] * zproj[j][0];
            T ratio = minor / br;
            if (!have) {
                lo = hi = ratio;
                have = true;
            } else {
                if (ratio < lo) lo = ratio;
                if (ratio > hi) hi = ratio;
            }
        }
    require(have, "all brackets vanish; identity check degenerate");
    T denom = ScalarTraits<T>::abs(hi) > ScalarTraits<T>::abs(lo) ? ScalarTraits<T>::abs(hi)
                                                                  : ScalarTraits<T>::abs(lo);
    require(!ScalarTraits<T>::is_zero(denom, zero_tol), "identity ratio is zero");
    return (hi - lo) / denom;
}

// ---- boundary incidence certificates ----

struct BoundaryCertificate {
    enum class Kind { Curve, Segment } kind = Kind::Curve;
    // Curve: an isolated real root of gcd(f,g) in [0,1]
    RealRoot<Rat> curve_root;
    // Segment: V meets S01 at lambda*gamma(0) + mu*gamma(1) with lambda*mu >= 0;
    // whole_line set when S01 itself is contained in V
    Rat lambda, mu;
    bool whole_line = false;
};

// Exact test of the Euclidean-boundary characterization: a plane is a
// boundary point iff it meets the curve at a parameter in [0,1] or meets the
// closed segment between gamma(0) and gamma(1).
inline std::optional<BoundaryCertificate> boundary_incidence(const KPlane<Rat>& v) {
    IntersectionDivisor div = intersection_divisor(v);
    for (const auto& p : div.points) {
        if (p.kind != DivisorPoint::Kind::InUnitInterval) continue;
        BoundaryCertificate c;
        c.kind = BoundaryCertificate::Kind::Curve;
        c.curve_root = p.root;
        return c;
    }
    if (chow_form_secant(v) == 0) {
        const int k = v.k();
        std::vector<Rat> g0 = curve_point(Rat(0), k), g1 = curve_point(Rat(1), k);
        Rat a0(0), a1(0), b0(0), b1(0);
        for (int i = 0; i < k + 2; ++i) {
            a0 += v.dual()(0, i) * g0[i];
            a1 += v.dual()(1, i) * g0[i];
            b0 += v.dual()(0, i) * g1[i];
            b1 += v.dual()(1, i) * g1[i];
        }
        BoundaryCertificate c;
        c.kind = BoundaryCertificate::Kind::Segment;
        if (a0 == 0 && a1 == 0 && b0 == 0 && b1 == 0) {
            c.whole_line = true;
            c.lambda = c.mu = Rat(1);
            return c;
        }
        // kernel of the 2x2 system [a b]; rows are proportional since det = 0
        Rat lam, mu;
        if (a0 != 0 || b0 != 0) {
            lam = b0;
            mu = -a0;
        } else {
            lam = b1;
            mu = -a1;
        }
        if (lam * mu >= 0) {
            c.lambda = lam;
            c.mu = mu;
            return c;
        }
    }
    return std::nullopt;
}

// ---- membership ----

struct MembershipConfig {
    int path_retries = 8;
    int steps = 1 << 10;
    double bisect_width = 1e-12;   // tau-width for crossing refinement
    double incidence_band = 1e-8;  // ambiguity band around t in {0,1} / lambda*mu = 0
    std::uint64_t seed = 0;        // detour randomness
};

struct PathCrossing {
    double tau = 0;     // position along the path in [0,1]
    char hypersurface = 'C';  // 'C' = CH(curve), 'S' = CH(S01)
    double curve_parameter = 0;  // 'C': the incidence parameter t*
    double lambda = 0, mu = 0;   // 'S': the segment coordinates
};

struct MembershipVerdict {
    enum class Status { Interior, Boundary, Exterior, Undetermined } status =
        Status::Undetermined;
    std::optional<BoundaryCertificate> certificate;  // Boundary
    std::vector<PathCrossing> crossings;             // Exterior: genuine crossings found
    int retries_used = 0;
    double tolerance_used = 0;
    std::string note;
};

namespace detail {

// plane in chart coordinates: primal has the identity on `chart_cols` and the
// free k x 2 block on the complementary two columns
struct ChartFrame {
    int k = 0;
    std::vector<int> chart_cols;   // size k
    std::vector<int> free_cols;    // size 2
};

inline Matrix<double> chart_plane(const ChartFrame& f, const std::vector<double>& coords) {
    Matrix<double> m(f.k, f.k + 2);
    for (int i = 0; i < f.k; ++i) {
        m(i, f.chart_cols[i]) = 1.0;
        m(i, f.free_cols[0]) = coords[2 * i];
        m(i, f.free_cols[1]) = coords[2 * i + 1];
    }
    return m;
}

inline double minor_det(const Matrix<double>& m, const std::vector<int>& cols) {
    return det(m.columns(cols));
}

// chart coordinates of a plane with a nonzero minor on f.chart_cols
inline std::vector<double> chart_coords(const ChartFrame& f, const Matrix<double>& primal) {
    Matrix<double> a = primal.columns(f.chart_cols);
    // solve a * x = primal[:, free] by Gaussian elimination (k <= 4)
    const int k = f.k;
    Matrix<double> rhs = primal.columns(f.free_cols);
    Matrix<double> aug(k, k + 2);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) aug(i, j) = a(i, j);
        aug(i, k) = rhs(i, 0);
        aug(i, k + 1) = rhs(i, 1);
    }
    rref_in_place(aug, 0.0);
    std::vector<double> coords(2 * k);
    for (int i = 0; i < k; ++i) {
        coords[2 * i] = aug(i, k);
        coords[2 * i + 1] = aug(i, k + 1);
    }
    return coords;
}

// Chow-form indicators along the path, computed from primal k x k minors via
// Plucker duality (no null-space extraction needed): the dual Plucker p_{ij}
// is (-1)^{i+j} times the complementary primal minor, up to one global factor
// that cancels in sign tracking.
struct Indicators {
    double h_curve;
    double h_secant;
};

inline Indicators indicators(const Matrix<double>& primal) {
    const int k = primal.rows();
    const int n = k + 2;
    PluckerDual<double> pd;
    pd.n = n;
    pd.p.resize(static_cast<size_t>(n) * (n - 1) / 2);
    std::vector<int> comp(k);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            comp.clear();
            for (int c = 0; c < n; ++c)
                if (c != i && c != j) comp.push_back(c);
            double m = det(primal.columns(comp));
            pd.p[PluckerDual<double>::index(i, j, n)] = ((i + j) % 2) ? -m : m;
        }
    // Bezout matrix from the dual Pluckers
    Matrix<double> b(k + 1, k + 1);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
            double acc = 0;
            for (int K = std::max(0, i - j); K <= std::min(i, k - j); ++K)
                acc += pd(j + K + 1, i - K);
            b(i, j) = acc;
        }
    Indicators out;
    out.h_curve = det(b);
    // bracket <A gamma(0) gamma(1)> via the same Pluckers
    std::vector<double> g0(n, 0.0), g1(n, 1.0);
    g0[0] = 1.0;
    double acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double term = (g0[i] * g1[j] - g0[j] * g1[i]) * pd(i, j);
            if ((i + j) % 2) term = -term;
            acc += term;
        }
    out.h_secant = acc;
    return out;
}

// where does the plane meet the curve / the S01 line, in doubles
inline double nearest_common_root(const Matrix<double>& primal) {
    // dual pair via null space: for k x (k+2) use the Plucker route to build
    // f and g directly from two rows of the RREF null basis
    Matrix<double> copy = primal;
    Matrix<double> dual = null_space_rows(copy, 1e-300);
    UniPoly<double> f(dual.row(0)), g(dual.row(1));
    const UniPoly<double>& lead = f.degree() >= g.degree() ? f : g;
    const UniPoly<double>& other = f.degree() >= g.degree() ? g : f;
    auto roots = poly_roots(lead);
    double best = std::numeric_limits<double>::infinity();
    double best_score = std::numeric_limits<double>::infinity();
    for (const auto& z : roots) {
        double score = std::abs(other.eval(z.real())) + 1e3 * std::fabs(z.imag());
        if (score < best_score) {
            best_score = score;
            best = z.real();
        }
    }
    return best;
}

inline std::pair<double, double> segment_coordinates(const Matrix<double>& primal) {
    Matrix<double> copy = primal;
    Matrix<double> dual = null_space_rows(copy, 1e-300);
    const int n = primal.cols();
    double a0 = dual(0, 0), a1 = dual(1, 0);  // dual . gamma(0) = first column
    double b0 = 0, b1 = 0;                    // dual . gamma(1) = row sums
    for (int c = 0; c < n; ++c) {
        b0 += dual(0, c);
        b1 += dual(1, c);
    }
    if (std::fabs(a0) + std::fabs(b0) >= std::fabs(a1) + std::fabs(b1)) return {b0, -a0};
    return {b1, -a1};
}

}  // namespace detail

// Deterministic strictly positive reference point: the k x n Vandermonde at
// nodes 1..n (for k = 1 this is the all-ones row). Its image under Z at the
// uniform partition with n = k+3 is the cached interior reference plane.
inline Matrix<Rat> reference_positive_point(int k, int n) {
    Matrix<Rat> m(k, n);
    for (int j = 0; j < n; ++j) {
        Rat p(1);
        for (int i = 0; i < k; ++i) {
            m(i, j) = p;
            p *= Rat(j + 1);
        }
    }
    return m;
}

inline const KPlane<Rat>& reference_interior_plane(int k) {
    static std::map<int, KPlane<Rat>> cache;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    TNNPoint v;
    v.m = reference_positive_point(k, k + 3);
    v.level = PositivityLevel::StrictlyPositive;
    KPlane<Rat> r = amplituhedron_map(v, z_matrix(Partition::uniform(k + 3), k));
    require(!boundary_incidence(r).has_value(),
            "reference plane unexpectedly touches the boundary set");
    return cache.emplace(k, std::move(r)).first->second;
}

// Membership oracle. Boundary incidence is decided exactly; otherwise a
// piecewise-linear path in an affine chart is tracked from V to the reference
// plane. Sign changes of either Chow form are bisected; a crossing is genuine
// only when the incidence lands in [0,1] (curve) or on the segment (S01).
// The parity of genuine crossings decides interior/exterior, since the
// incidence set is exactly the Euclidean boundary; ambiguous crossings force
// a detour retry and, past the retry budget, an undetermined verdict.
class MembershipOracle {
  public:
    explicit MembershipOracle(int k, MembershipConfig cfg = {}) : k_(k), cfg_(cfg) {}

    MembershipVerdict decide(const KPlane<Rat>& v) const {
        MembershipVerdict verdict;
        verdict.tolerance_used = cfg_.incidence_band;
        if (auto cert = boundary_incidence(v)) {
            verdict.status = MembershipVerdict::Status::Boundary;
            verdict.certificate = *cert;
            return verdict;
        }

        const KPlane<Rat>& ref = reference_interior_plane(k_);
        Matrix<double> from = to_double_matrix(v.primal());
        Matrix<double> to = to_double_matrix(ref.primal());

        detail::ChartFrame frame = pick_chart(from);
        if (std::fabs(detail::minor_det(to, frame.chart_cols)) < 1e-12) {
            verdict.status = MembershipVerdict::Status::Undetermined;
            verdict.note = "reference plane degenerate in the query chart";
            return verdict;
        }
        std::vector<double> x0 = detail::chart_coords(frame, from);
        std::vector<double> x1 = detail::chart_coords(frame, to);

        std::uint64_t vhash = hash_coords(x0);
        for (int attempt = 0; attempt <= cfg_.path_retries; ++attempt) {
            std::vector<std::vector<double>> waypoints;
            waypoints.push_back(x0);
            if (attempt > 0) {
                Rng rng = derive_rng(cfg_.seed ^ vhash, "membership-detour",
                                     static_cast<std::uint64_t>(attempt));
                std::vector<double> mid(x0.size());
                for (size_t i = 0; i < mid.size(); ++i) {
                    double span = std::fabs(x1[i] - x0[i]) + 1.0;
                    mid[i] = 0.5 * (x0[i] + x1[i]) + (rng.uniform01() * 2.0 - 1.0) * span;
                }
                waypoints.push_back(mid);
            }
            waypoints.push_back(x1);

            bool ambiguous = false;
            std::vector<PathCrossing> genuine;
            for (size_t s = 0; s + 1 < waypoints.size() && !ambiguous; ++s)
                track_segment(frame, waypoints[s], waypoints[s + 1], genuine, ambiguous);
            if (ambiguous) continue;

            verdict.retries_used = attempt;
            verdict.crossings = genuine;
            if (genuine.empty()) {
                verdict.status = MembershipVerdict::Status::Interior;
                verdict.note = "path to reference plane avoids the boundary set";
            } else if (genuine.size() % 2 == 1) {
                verdict.status = MembershipVerdict::Status::Exterior;
                verdict.note = "path to reference plane crosses the boundary set";
            } else {
                verdict.status = MembershipVerdict::Status::Interior;
                verdict.note = "path re-enters: even number of boundary crossings";
            }
            return verdict;
        }
        verdict.retries_used = cfg_.path_retries;
        verdict.status = MembershipVerdict::Status::Undetermined;
        verdict.note = "all path retries hit ambiguous incidences";
        return verdict;
    }

  private:
    static std::uint64_t hash_coords(const std::vector<double>& x) {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (double v : x) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, sizeof bits);
            h ^= bits + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }

    detail::ChartFrame pick_chart(const Matrix<double>& primal) const {
        detail::ChartFrame best;
        double best_minor = -1;
        std::vector<int> cols(k_);
        detail::enumerate_subsets(k_ + 2, k_, [&](const std::vector<int>& sub) {
            double m = std::fabs(detail::minor_det(primal, sub));
            if (m > best_minor) {
                best_minor = m;
                best.chart_cols = sub;
            }
        });
        best.k = k_;
        for (int c = 0; c < k_ + 2; ++c)
            if (std::find(best.chart_cols.begin(), best.chart_cols.end(), c) == best.chart_cols.end())
                best.free_cols.push_back(c);
        return best;
    }

    std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b,
                             double t) const {
        std::vector<double> r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = (1 - t) * a[i] + t * b[i];
        return r;
    }

    void track_segment(const detail::ChartFrame& frame, const std::vector<double>& a,
                       const std::vector<double>& b, std::vector<PathCrossing>& genuine,
                       bool& ambiguous) const {
        auto eval = [&](double t) {
            return detail::indicators(detail::chart_plane(frame, lerp(a, b, t)));
        };
        const int steps = cfg_.steps;
        detail::Indicators prev = eval(0.0);
        for (int s = 1; s <= steps && !ambiguous; ++s) {
            double t = static_cast<double>(s) / steps;
            detail::Indicators cur = eval(t);
            double t0 = static_cast<double>(s - 1) / steps;
            if (sign_changed(prev.h_curve, cur.h_curve))
                handle_curve_crossing(frame, a, b, t0, t, genuine, ambiguous);
            if (!ambiguous && sign_changed(prev.h_secant, cur.h_secant))
                handle_secant_crossing(frame, a, b, t0, t, genuine, ambiguous);
            prev = cur;
        }
    }

    static bool sign_changed(double x, double y) {
        return (x < 0 && y > 0) || (x > 0 && y < 0) || (x == 0) != (y == 0);
    }

    void handle_curve_crossing(const detail::ChartFrame& frame, const std::vector<double>& a,
                               const std::vector<double>& b, double lo, double hi,
                               std::vector<PathCrossing>& genuine, bool& ambiguous) const {
        auto h = [&](double t) {
            return detail::indicators(detail::chart_plane(frame, lerp(a, b, t))).h_curve;
        };
        double flo = h(lo);
        while (hi - lo > cfg_.bisect_width) {
            double mid = 0.5 * (lo + hi);
            double fm = h(mid);
            if ((flo < 0) == (fm < 0) && fm != 0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        double tau = 0.5 * (lo + hi);
        double tstar = detail::nearest_common_root(detail::chart_plane(frame, lerp(a, b, tau)));
        if (!std::isfinite(tstar)) {
            ambiguous = true;
            return;
        }
        const double band = cfg_.incidence_band;
        if (tstar > band && tstar < 1.0 - band) {
            genuine.push_back(PathCrossing{tau, 'C', tstar, 0, 0});
        } else if (tstar < -band || tstar > 1.0 + band) {
            // harmless: crosses CH(C) with incidence outside [0,1]
        } else {
            ambiguous = true;  // incidence parameter too close to an endpoint
        }
    }

    void handle_secant_crossing(const detail::ChartFrame& frame, const std::vector<double>& a,
                                const std::vector<double>& b, double lo, double hi,
                                std::vector<PathCrossing>& genuine, bool& ambiguous) const {
        auto h = [&](double t) {
            return detail::indicators(detail::chart_plane(frame, lerp(a, b, t))).h_secant;
        };
        double flo = h(lo);
        while (hi - lo > cfg_.bisect_width) {
            double mid = 0.5 * (lo + hi);
            double fm = h(mid);
            if ((flo < 0) == (fm < 0) && fm != 0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        double tau = 0.5 * (lo + hi);
        auto [lam, mu] = detail::segment_coordinates(detail::chart_plane(frame, lerp(a, b, tau)));
        double denom = lam * lam + mu * mu;
        if (denom == 0) {
            ambiguous = true;
            return;
        }
        double s = lam * mu / denom;
        if (s > cfg_.incidence_band) {
            genuine.push_back(PathCrossing{tau, 'S', 0, lam, mu});
        } else if (s < -cfg_.incidence_band) {
            // harmless: meets the S01 line outside the segment
        } else {
            ambiguous = true;
        }
    }

    int k_;
    MembershipConfig cfg_;
};

inline MembershipVerdict membership(const KPlane<Rat>& v, const MembershipConfig& cfg = {}) {
    return MembershipOracle(v.k(), cfg).decide(v);
}

// ---- boundary facet families ----

// The nonnegative family whose image under Z lands on the facet
// <A Z_i Z_{i+1}> = 0 (cyclically, facet n pairing Z_n with Z_1): row 1 is
// supported on columns {1,2}, row j > 1 on columns {j, j+1, j+2}, then the
// twisted cyclic shift is applied i-1 times. Nonnegativity of all maximal
// minors is re-verified exactly; draws violating it are rejected.
inline KPlane<Rat> boundary_family_sample(int facet, const ZMatrix& z, Rng& rng) {
    const int k = z.k;
    const int n = z.partition.n();
    require(n > k + 2, "partition too short for the facet family");
    require(facet >= 1 && facet <= n, "facet index out of range");
    for (int attempt = 0; attempt < kSamplerRetryCap; ++attempt) {
        Matrix<Rat> y(k, n);
        y(0, 0) = Rat(1);
        y(0, 1) = Rat(rng.int_in(1, 9), rng.int_in(1, 9));
        for (int j = 1; j < k; ++j) {
            require(j + 2 < n, "facet family needs n >= k + 3");
            y(j, j) = Rat(rng.int_in(0, 9), rng.int_in(1, 9));
            y(j, j + 1) = Rat(rng.int_in(0, 9), rng.int_in(1, 9));
            y(j, j + 2) = Rat(1);
        }
        // twisted cyclic shift: columns move right, the wrapped column picks
        // up the sign (-1)^{k-1}
        for (int shift = 0; shift < facet - 1; ++shift) {
            Matrix<Rat> shifted(k, n);
            for (int c = 0; c < n; ++c)
                for (int r = 0; r < k; ++r) shifted(r, (c + 1) % n) = y(r, c);
            if (k % 2 == 0)
                for (int r = 0; r < k; ++r) shifted(r, 0) = -shifted(r, 0);
            y = shifted;
        }
        auto [pos, nonneg] = minor_positivity(y);
        (void)pos;
        if (!nonneg) continue;
        Matrix<Rat> image = y * z.rows;
        Matrix<Rat> probe = image;
        if (static_cast<int>(rref_in_place(probe).size()) != k) continue;
        return KPlane<Rat>::from_primal(image);
    }
    throw std::runtime_error("boundary_family_sample retry cap exceeded");
}

}  // namespace limitamp
