#pragma once

// Fourier coefficients of the spatial density components.
//
// Convention: f(p) = integral rho(x) exp(-i p x / hbar) dx and
// rho(x) = 1/(2 pi hbar) integral f(p) exp(+i p x / hbar) dp. With this
// placement f_{n,n}(0) = 1 and the Gaussian pair maps to exp(-xi0^2 / 2).

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "macroqm/errors.hpp"
#include "macroqm/oscillator.hpp"
#include "macroqm/quadrature.hpp"
#include "macroqm/specfun.hpp"

namespace macroqm {

/// Momentum p with its dimensionless form xi0 = p / sqrt(2 m omega hbar).
struct MomentumAbscissa {
    double p = 0.0;

    double xi0(const OscillatorParams& prm) const { return p / std::sqrt(2.0 * prm.mass * prm.omega * prm.hbar); }

    static MomentumAbscissa from_xi0(double xi0, const OscillatorParams& prm)
    {
        return {xi0 * std::sqrt(2.0 * prm.mass * prm.omega * prm.hbar)};
    }
};

/// Fixed transform constants.
struct TransformConvention {
    static constexpr double forward_kernel_sign = -1.0;
    static constexpr double forward_prefactor = 1.0;

    static double inverse_prefactor(const OscillatorParams& prm) { return 1.0 / (2.0 * std::numbers::pi * prm.hbar); }
};

namespace detail {

// (-i)^k
inline Complex minus_i_power(std::uint64_t k)
{
    switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
    }
}

} // namespace detail

/// Closed form for n >= m:
///   f_{n,m}(p) = (-i)^{n-m} sqrt(m!/n!) exp(-xi0^2/2) xi0^{n-m} L_m^{n-m}(xi0^2).
/// rho~ is symmetric in (n, m), so f_{m,n} = f_{n,m}.
inline Complex fourier_exact(ModePair pair, MomentumAbscissa p, const OscillatorParams& prm)
{
    detail::require_finite(p.p, "fourier_exact");
    const ModePair c = pair.canonical().pair;
    const auto v = static_cast<specfun::PolyOrder>(c.n - c.m);
    const double xi = p.xi0(prm);
    double modulus = specfun::laguerre_function(c.m, v, xi * xi).value();
    if (xi < 0.0 && v % 2 == 1) modulus = -modulus;
    return detail::minus_i_power(v) * modulus;
}

/// Half-width of the default oracle domain, x_n (1 + 10/sqrt(n)) + 10/sqrt(alpha)
/// for the higher quantum number n of the pair.
inline double oracle_cutoff(ModePair pair, const OscillatorParams& prm)
{
    const QuantumNumber n = pair.high();
    const double nn = std::max(1.0, static_cast<double>(n));
    return classical_amplitude(n, prm) * (1.0 + 10.0 / std::sqrt(nn)) + 10.0 / std::sqrt(prm.alpha());
}

/// Shortest oscillation length of rho~_{n,m}(x) exp(-i p x / hbar).
inline double oracle_wavelength(ModePair pair, MomentumAbscissa p, const OscillatorParams& prm)
{
    const double k = classical_peak_momentum(pair.n, prm) + classical_peak_momentum(pair.m, prm) + std::abs(p.p);
    return 2.0 * std::numbers::pi * prm.hbar / k;
}

/// Quadrature for fourier_oracle at the given density of nodes per shortest wavelength.
inline QuadratureSpec oracle_quadrature(ModePair pair, MomentumAbscissa p, const OscillatorParams& prm,
                                        double nodes_per_wavelength = 16.0)
{
    const double cut = oracle_cutoff(pair, prm);
    return QuadratureSpec::resolving({-cut, cut}, oracle_wavelength(pair, p, prm), nodes_per_wavelength);
}

namespace detail {

// Density values in the outer tenth of [lo, hi] on both sides must be below
// this, relative to sqrt(alpha).
constexpr double kTailBound = 1e-12;

inline void require_truncated_tail(ModePair pair, Interval dom, const OscillatorParams& prm, const char* who)
{
    const double band = 0.1 * dom.length();
    double worst = 0.0;
    for (int i = 0; i <= 16; ++i) {
        const double s = band * static_cast<double>(i) / 16.0;
        worst = std::max(worst, std::abs(density_component(pair, dom.lo + s, prm)));
        worst = std::max(worst, std::abs(density_component(pair, dom.hi - s, prm)));
    }
    if (worst > kTailBound * std::sqrt(prm.alpha())) {
        throw NumericRefusal(std::string(who) + ": integrand tail " + std::to_string(worst)
                             + " is not negligible at the domain edge");
    }
}

} // namespace detail

/// Direct forward transform of rho~_{n,m} by composite Gauss-Legendre.
/// Independent of the closed form; used to validate it. The node density is
/// checked against the integrand's shortest wavelength and the truncated
/// tails against 1e-12, and either failure is a NumericRefusal.
inline Complex fourier_oracle(ModePair pair, MomentumAbscissa p, const OscillatorParams& prm,
                              const QuadratureSpec& quad)
{
    detail::require_finite(p.p, "fourier_oracle");
    QuadratureSpec q = quad;
    if (!q.domain) {
        const double cut = oracle_cutoff(pair, prm);
        q.domain = Interval{-cut, cut};
    }
    q.shortest_wavelength = oracle_wavelength(pair, p, prm);
    detail::require_truncated_tail(pair, *q.domain, prm, "fourier_oracle");

    const double sa = std::sqrt(prm.alpha());
    std::vector<double> h(static_cast<std::size_t>(pair.high()) + 1);
    const double k = TransformConvention::forward_kernel_sign * p.p / prm.hbar;
    auto integrand = [&](double x) {
        specfun::hermite_functions(sa * x, h);
        const double rho = sa * h[pair.n] * h[pair.m];
        return Complex{rho * std::cos(k * x), rho * std::sin(k * x)};
    };
    return TransformConvention::forward_prefactor * quadrature::integrate(integrand, q, std::nullopt, "fourier_oracle");
}

inline Complex fourier_oracle(ModePair pair, MomentumAbscissa p, const OscillatorParams& prm)
{
    return fourier_oracle(pair, p, prm, oracle_quadrature(pair, p, prm));
}

using CoefficientFunction = std::function<Complex(double /*p*/)>;

/// rho(x) = 1/(2 pi hbar) integral f(p) exp(+i p x / hbar) dp on each grid
/// point, over the momentum domain of `quad` (required).
///
/// `source_extent` is the half-width of the spatial support the coefficients
/// describe; f then oscillates in p on the scale 2 pi hbar / source_extent.
/// The node density is checked against the faster of that and the kernel.
inline SampledField inverse_transform_field(const CoefficientFunction& coeff, std::span<const double> grid,
                                            const OscillatorParams& prm, const QuadratureSpec& quad,
                                            double source_extent = 0.0)
{
    if (!quad.domain || !(quad.domain->length() > 0.0)) {
        throw DomainError("inverse_transform_field: a momentum domain is required");
    }
    double xmax = 0.0;
    for (double x : grid) {
        detail::require_finite(x, "inverse_transform_field");
        xmax = std::max(xmax, std::abs(x));
    }
    const double reach = xmax + std::abs(source_extent);
    if (reach > 0.0) {
        quadrature::require_resolved(quad, quad.domain->length(), 2.0 * std::numbers::pi * prm.hbar / reach,
                                     "inverse_transform_field");
    }
    quadrature::require_resolved(quad, quad.domain->length(), quad.shortest_wavelength, "inverse_transform_field");

    const auto rule = quadrature::composite_rule(*quad.domain, quad.panels());
    std::vector<Complex> fvals(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) fvals[i] = rule.weights[i] * coeff(rule.nodes[i]);

    SampledField out;
    out.abscissae.assign(grid.begin(), grid.end());
    out.values.reserve(grid.size());
    const double pre = TransformConvention::inverse_prefactor(prm);
    for (double x : grid) {
        Complex s{};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double ph = rule.nodes[i] * x / prm.hbar;
            s += fvals[i] * Complex{std::cos(ph), std::sin(ph)};
        }
        out.values.push_back(pre * s);
    }
    out.meta.formula = "inverse_transform";
    out.meta.parameters = {{"p_lo", std::to_string(quad.domain->lo)},
                           {"p_hi", std::to_string(quad.domain->hi)},
                           {"nodes", std::to_string(rule.nodes.size())}};
    out.validate();
    return out;
}

} // namespace macroqm
