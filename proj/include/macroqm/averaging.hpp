#pragma once

// Local average (1 / 2 eps) integral_{x-eps}^{x+eps} f(y) dy, the operator
// under which quantum densities approach the classical ones.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "macroqm/errors.hpp"
#include "macroqm/oscillator.hpp"
#include "macroqm/quadrature.hpp"

namespace macroqm {

enum class WindowRule { fixed, wavelength_scaled };

struct AveragingWindow {
    double epsilon = 0.0;
    WindowRule rule = WindowRule::fixed;
    /// Number of local de Broglie wavelengths spanned, wavelength_scaled only.
    double periods = 0.0;

    void validate() const
    {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("AveragingWindow: epsilon must be > 0");
        if (rule == WindowRule::wavelength_scaled && !(periods > 0.0)) {
            throw DomainError("AveragingWindow: wavelength-scaled rule needs a positive period count");
        }
    }
};

/// Fraction of x_n the window [x - eps, x + eps] must stay inside.
constexpr double kWindowClamp = 0.9;

/// eps_n(x) = k lambda(x) / 2 with lambda(x) = 2 pi hbar / (m omega sqrt(x_n^2 - x^2)),
/// shrunk so that |x| + eps <= 0.9 x_n.
inline AveragingWindow default_window(QuantumNumber n, double x, double k, const OscillatorParams& prm)
{
    detail::require_finite(x, "default_window");
    if (!(k > 0.0)) throw DomainError("default_window: period count k must be > 0");
    const double xn = classical_amplitude(n, prm);
    if (!(std::abs(x) < kWindowClamp * xn)) {
        throw DomainError("default_window: |x| must be below 0.9 x_n; the local average is not "
                          "meaningful near the classical turning points");
    }
    const double p_cl = prm.mass * prm.omega * std::sqrt((xn - x) * (xn + x));
    const double lambda = 2.0 * std::numbers::pi * prm.hbar / p_cl;
    const double eps = std::min(0.5 * k * lambda, kWindowClamp * xn - std::abs(x));
    return {eps, WindowRule::wavelength_scaled, k};
}

/// Quadrature for averaging a density whose fastest oscillation has length
/// `wavelength` over `window`, at nodes_per_wavelength.
inline QuadratureSpec averaging_quadrature(const AveragingWindow& window, double wavelength,
                                           double nodes_per_wavelength = 16.0)
{
    return QuadratureSpec::resolving({-window.epsilon, window.epsilon}, wavelength, nodes_per_wavelength, 40);
}

/// Oscillation length of rho~_{n,m}: 2 pi hbar / (p_n + p_m) with p_k the
/// peak classical momentum.
inline double density_wavelength(ModePair pair, const OscillatorParams& prm)
{
    return 2.0 * std::numbers::pi * prm.hbar
           / (classical_peak_momentum(pair.n, prm) + classical_peak_momentum(pair.m, prm));
}

/// Mean of f over [x - eps, x + eps]. The domain of `quad` is ignored; its
/// node count and wavelength hint are applied to the window.
inline double local_average(const std::function<double(double)>& f, double x, const AveragingWindow& window,
                            const QuadratureSpec& quad)
{
    detail::require_finite(x, "local_average");
    window.validate();
    const double eps = window.epsilon;
    const double total = quadrature::integrate(f, quad, Interval{x - eps, x + eps}, "local_average");
    return total / (2.0 * eps);
}

} // namespace macroqm
