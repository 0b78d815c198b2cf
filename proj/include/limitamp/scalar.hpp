#pragma once

// Exact rational / double dual-mode scalar layer. Exact mode is the default
// everywhere; doubles appear only in the numeric paths (membership path
// tracking, pole-drift measurements, Jacobian dimension probes).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace limitamp {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
    static constexpr bool exact = true;
    static bool is_zero(const Rat& v, const Rat& /*tol*/ = Rat(0)) { return v == 0; }
    static Rat abs(const Rat& v) { return v < 0 ? Rat(-v) : v; }
    static double to_double(const Rat& v) { return v.convert_to<double>(); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static bool is_zero(double v, double tol = 1e-12) { return std::fabs(v) <= tol; }
    static double abs(double v) { return std::fabs(v); }
    static double to_double(double v) { return v; }
};

inline double to_double(const Rat& v) { return v.convert_to<double>(); }
inline double to_double(double v) { return v; }

template <class T>
T scalar_pow(const T& base, int e) {
    T r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

inline BigInt factorial_int(int n) {
    BigInt r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Plane-grid I/O uses plain "a/b" fractions so exact inputs survive the CLI
// boundary untouched.
inline std::string format_rat(const Rat& v) {
    std::ostringstream os;
    os << numerator(v);
    if (denominator(v) != 1) os << "/" << denominator(v);
    return os.str();
}

inline std::optional<Rat> parse_rat(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(BigInt(s));
        }
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rat(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline void require(bool cond, const char* what) {
    if (!cond) throw std::domain_error(what);
}

}  // namespace limitamp
