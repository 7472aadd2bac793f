#pragma once

// Test-only reference implementations. They share no code path with the
// library: explicit series in 100-digit arithmetic, plain recurrences in
// long double, direct sums.

#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_100;

inline Big factorial(unsigned n)
{
    Big f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

/// h_n(xi) from the explicit Hermite polynomial series.
inline double hermite_function_series(unsigned n, double xi_d)
{
    const Big xi = xi_d;
    Big sum = 0;
    const Big nf = factorial(n);
    for (unsigned k = 0; 2 * k <= n; ++k) {
        Big term = nf / (factorial(k) * factorial(n - 2 * k)) * pow(Big(2) * xi, n - 2 * k);
        sum += (k % 2 == 0) ? term : Big(-term);
    }
    const Big pi = boost::math::constants::pi<Big>();
    const Big norm = sqrt(pow(Big(2), n) * nf * sqrt(pi));
    return static_cast<double>(sum * exp(-xi * xi / 2) / norm);
}

/// L_m^k(x) from its coefficient expansion.
inline double laguerre_coefficients(unsigned m, unsigned k, double x_d)
{
    const Big x = x_d;
    Big sum = 0;
    for (unsigned j = 0; j <= m; ++j) {
        Big binom = factorial(m + k) / (factorial(m - j) * factorial(k + j));
        Big term = binom * pow(x, j) / factorial(j);
        sum += (j % 2 == 0) ? term : Big(-term);
    }
    return static_cast<double>(sum);
}

/// J_v(x) from the ascending power series.
inline double bessel_series(unsigned v, double x_d)
{
    const Big half = Big(x_d) / 2;
    Big sum = 0;
    Big term = pow(half, v) / factorial(v);
    for (unsigned j = 0; j < 400; ++j) {
        sum += term;
        term *= -half * half / (Big(j + 1) * Big(j + 1 + v));
        if (abs(term) < Big("1e-60") * abs(sum) && j > 2) break;
    }
    return static_cast<double>(sum);
}

/// T_v(x) from T_{k+1} = 2x T_k - T_{k-1}.
inline double chebyshev_recurrence(unsigned v, double x)
{
    long double prev = 1.0L;
    if (v == 0) return 1.0;
    long double cur = x;
    for (unsigned k = 1; k < v; ++k) {
        const long double next = 2.0L * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return static_cast<double>(cur);
}

/// ln(m!/n!) as -sum_{j=m+1}^{n} ln j.
inline double log_ratio_sum(unsigned n, unsigned m)
{
    long double s = 0.0L;
    for (unsigned j = m + 1; j <= n; ++j) s -= std::log(static_cast<long double>(j));
    return static_cast<double>(s);
}

/// Composite Simpson rule on [a, b] with `intervals` (even) subintervals.
template <class F>
double simpson(const F& f, double a, double b, int intervals)
{
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * i);
    return s * h / 3.0;
}

/// Trapezoidal rule with step h on [a, b]; spectrally accurate for smooth
/// integrands that decay at both ends.
template <class F>
double trapezoid(const F& f, double a, double b, double h)
{
    const int steps = static_cast<int>(std::ceil((b - a) / h));
    const double dx = (b - a) / steps;
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < steps; ++i) s += f(a + dx * i);
    return s * dx;
}

} // namespace oracle
