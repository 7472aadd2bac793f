#pragma once

// Special functions needed by the oscillator formulas, evaluated without
// forming n!, 2^n or raw Hermite/Laguerre polynomials at large order.
//
// Every routine is a pure function of its arguments.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "macroqm/errors.hpp"

namespace macroqm::specfun {

using PolyOrder = unsigned;

/// sign * exp(log_magnitude). Exact zero is log_magnitude == -inf.
struct LogScaledValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    double sign = 1.0;

    static LogScaledValue zero() { return {}; }

    static LogScaledValue from(double v)
    {
        if (v == 0.0) return {};
        return {std::log(std::abs(v)), v < 0.0 ? -1.0 : 1.0};
    }

    bool is_zero() const { return log_magnitude == -std::numeric_limits<double>::infinity(); }

    double value() const { return is_zero() ? 0.0 : sign * std::exp(log_magnitude); }

    friend LogScaledValue operator*(LogScaledValue a, LogScaledValue b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        return {a.log_magnitude + b.log_magnitude, a.sign * b.sign};
    }
};

namespace detail {

// Mantissas of the scaled recurrences are renormalised once they exceed this.
constexpr double kRescaleAbove = 1e150;

// Keeps a two-term recurrence state (prev, cur) as mantissas times
// exp(log_scale).
struct ScaledPair {
    double prev = 0.0;
    double cur = 1.0;
    double log_scale = 0.0;

    void renormalise()
    {
        const double a = std::abs(cur);
        if (a > kRescaleAbove) {
            prev /= a;
            cur /= a;
            log_scale += std::log(a);
        }
    }

    double value() const
    {
        if (cur == 0.0) return 0.0;
        const double factor = std::exp(log_scale);
        if (std::isnormal(factor)) return cur * factor;
        return std::copysign(std::exp(log_scale + std::log(std::abs(cur))), cur);
    }
};

} // namespace detail

/// Orthonormal Hermite function h_n(xi) = H_n(xi) exp(-xi^2/2) / sqrt(2^n n! sqrt(pi)).
///
/// Forward recurrence h_{k+1} = xi sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}
/// seeded with h_0 = pi^{-1/4} exp(-xi^2/2). The seed is carried in log form,
/// so large |xi| (where exp(-xi^2/2) underflows but h_n does not) stays exact.
inline double hermite_function(PolyOrder n, double xi)
{
    macroqm::detail::require_finite(xi, "hermite_function");
    detail::ScaledPair s;
    s.log_scale = -0.5 * xi * xi - 0.25 * std::log(std::numbers::pi);
    for (PolyOrder k = 0; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double next = xi * std::sqrt(2.0 / (kd + 1.0)) * s.cur - std::sqrt(kd / (kd + 1.0)) * s.prev;
        s.prev = s.cur;
        s.cur = next;
        s.renormalise();
    }
    return s.value();
}

/// Writes h_0(xi) .. h_{out.size()-1}(xi) into out.
inline void hermite_functions(double xi, std::span<double> out)
{
    macroqm::detail::require_finite(xi, "hermite_functions");
    if (out.empty()) return;
    detail::ScaledPair s;
    s.log_scale = -0.5 * xi * xi - 0.25 * std::log(std::numbers::pi);
    // exp(log_scale) is cached per rescale epoch; it may underflow while the
    // product with the mantissa is still representable.
    double factor = std::exp(s.log_scale);
    bool direct = !std::isnormal(factor);
    out[0] = direct ? s.value() : s.cur * factor;
    for (std::size_t k = 0; k + 1 < out.size(); ++k) {
        const double kd = static_cast<double>(k);
        const double next = xi * std::sqrt(2.0 / (kd + 1.0)) * s.cur - std::sqrt(kd / (kd + 1.0)) * s.prev;
        s.prev = s.cur;
        s.cur = next;
        const double before = s.log_scale;
        s.renormalise();
        if (s.log_scale != before) {
            factor = std::exp(s.log_scale);
            direct = !std::isnormal(factor);
        }
        out[k + 1] = direct ? s.value() : s.cur * factor;
    }
}

inline std::vector<double> hermite_functions(PolyOrder nmax, double xi)
{
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
    hermite_functions(xi, out);
    return out;
}

/// Associated Laguerre polynomial L_m^k(x) by the three-term recurrence in m.
/// Plain polynomial value; may overflow for very large x or m.
inline double assoc_laguerre(PolyOrder m, PolyOrder k, double x)
{
    macroqm::detail::require_finite(x, "assoc_laguerre");
    double prev = 1.0;
    if (m == 0) return prev;
    const double kd = static_cast<double>(k);
    double cur = 1.0 + kd - x;
    for (PolyOrder j = 1; j < m; ++j) {
        const double jd = static_cast<double>(j);
        const double next = ((2.0 * jd + 1.0 + kd - x) * cur - (jd + kd) * prev) / (jd + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// ln(m!/n!) for n >= m.
inline double log_ratio_factorial(PolyOrder n, PolyOrder m)
{
    if (n < m) {
        throw ContractViolation("log_ratio_factorial: requires n >= m");
    }
    if (n - m <= 64) {
        double s = 0.0;
        for (PolyOrder j = m + 1; j <= n; ++j) s -= std::log(static_cast<double>(j));
        return s;
    }
    return std::lgamma(static_cast<double>(m) + 1.0) - std::lgamma(static_cast<double>(n) + 1.0);
}

/// Normalised Laguerre function sqrt(m!/(m+k)!) exp(-x/2) x^{k/2} L_m^k(x)
/// for x >= 0, in log-scaled form.
///
/// This is the modulus-carrying part of the oscillator Fourier coefficients;
/// the recurrence runs on the normalised functions directly:
///   l_{j+1} = ((2j+k+1-x) l_j - sqrt(j(j+k)) l_{j-1}) / sqrt((j+1)(j+k+1)).
inline LogScaledValue laguerre_function(PolyOrder m, PolyOrder k, double x)
{
    macroqm::detail::require_finite(x, "laguerre_function");
    if (x < 0.0) throw DomainError("laguerre_function: x must be non-negative");
    if (x == 0.0) return k == 0 ? LogScaledValue{0.0, 1.0} : LogScaledValue::zero();

    const double kd = static_cast<double>(k);
    detail::ScaledPair s;
    s.log_scale = -0.5 * x + 0.5 * kd * std::log(x) + 0.5 * log_ratio_factorial(k, 0);
    for (PolyOrder j = 0; j < m; ++j) {
        const double jd = static_cast<double>(j);
        const double next = ((2.0 * jd + kd + 1.0 - x) * s.cur - std::sqrt(jd * (jd + kd)) * s.prev)
                            / std::sqrt((jd + 1.0) * (jd + kd + 1.0));
        s.prev = s.cur;
        s.cur = next;
        s.renormalise();
    }
    if (s.cur == 0.0) return LogScaledValue::zero();
    return {s.log_scale + std::log(std::abs(s.cur)), s.cur < 0.0 ? -1.0 : 1.0};
}

namespace detail {

inline double bessel_j_series(PolyOrder v, double x)
{
    const double half = 0.5 * x;
    const double q = -half * half;
    const double vd = static_cast<double>(v);
    const double lead = std::exp(vd * std::log(half) - std::lgamma(vd + 1.0));
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (k * (vd + k));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return lead * sum;
}

// Hankel expansion; only called with x >= max(25, v^2), where the terms
// shrink fast enough for full double precision.
inline double bessel_j_hankel(PolyOrder v, double x)
{
    const double mu = 4.0 * static_cast<double>(v) * static_cast<double>(v);
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::abs(term);
        if (mag > last) break;
        last = mag;
        // a_k contributes to P for even k and to Q for odd k, with sign (-1)^{floor(k/2)}
        const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
        if (k % 2 == 0) {
            p += signed_term;
        } else {
            q += signed_term;
        }
        if (mag < 1e-17) break;
    }
    const double phase = x - (0.5 * static_cast<double>(v) + 0.25) * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(phase) - q * std::sin(phase));
}

// Miller: downward recurrence from a start index far above max(v, x),
// normalised with J_0 + 2 sum_k J_{2k} = 1.
inline double bessel_j_miller(PolyOrder v, double x)
{
    const double base = std::max(static_cast<double>(v), x);
    auto start = static_cast<std::uint64_t>(base + 30.0 + 15.0 * std::cbrt(base));
    start += start % 2;

    double above = 0.0;
    double cur = 1.0;
    double sum = 2.0; // start is even and positive
    double result = (start == v) ? cur : 0.0;
    for (std::uint64_t k = start; k >= 1; --k) {
        const double below = 2.0 * static_cast<double>(k) / x * cur - above;
        above = cur;
        cur = below;
        const std::uint64_t idx = k - 1;
        if (idx == v) result = cur;
        if (idx % 2 == 0 && idx > 0) sum += 2.0 * cur;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            above *= 1e-250;
            sum *= 1e-250;
            result *= 1e-250;
        }
    }
    sum += cur;
    return result / sum;
}

} // namespace detail

/// Integer-order Bessel function of the first kind J_v(x).
///
/// Power series while x^2/4 <= v+1, Hankel expansion for
/// x >= max(25, v^2), Miller's downward recurrence otherwise.
inline double bessel_j(PolyOrder v, double x)
{
    macroqm::detail::require_finite(x, "bessel_j");
    const double sign = (x < 0.0 && v % 2 == 1) ? -1.0 : 1.0;
    x = std::abs(x);
    if (x == 0.0) return v == 0 ? 1.0 : 0.0;

    const double vd = static_cast<double>(v);
    if (0.25 * x * x <= vd + 1.0) return sign * detail::bessel_j_series(v, x);
    if (x >= 25.0 && x >= vd * vd) return sign * detail::bessel_j_hankel(v, x);
    return sign * detail::bessel_j_miller(v, x);
}

/// Chebyshev polynomial of the first kind, trigonometric/hyperbolic form.
inline double chebyshev_t(PolyOrder v, double x)
{
    macroqm::detail::require_finite(x, "chebyshev_t");
    const double vd = static_cast<double>(v);
    const double a = std::abs(x);
    const double c = a <= 1.0 ? std::cos(vd * std::acos(a)) : std::cosh(vd * std::acosh(a));
    return (x < 0.0 && v % 2 == 1) ? -c : c;
}

/// Rectangular window; 1/2 exactly on |u| = 1/2.
inline double rect(double u)
{
    const double a = std::abs(u);
    if (a < 0.5) return 1.0;
    if (a == 0.5) return 0.5;
    return 0.0;
}

} // namespace macroqm::specfun
