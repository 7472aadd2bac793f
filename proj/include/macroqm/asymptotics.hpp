#pragma once

// First-order large-n asymptotics of the oscillator density matrix.
//
// Fourier side:  f_{n,n-v}(p) ~ (-i)^v (1 - (v-1)/(2n))^{-v/2} J_v(2 sqrt(N) xi0),
//                N = n - (v-1)/2.
// Spatial side:  rho~_{n,n-v}(x) ~ (1 - (v-1)/(2n))^{-v/2}
//                    T_v(x/chi) / (pi sqrt(chi^2 - x^2)) Rect(x / (2 chi)),
//                chi = sqrt(2 N hbar / (m omega)).
// The v = 0 case is the classical arcsine density of amplitude x_n.
//
// Only the leading Bessel term is implemented; the Volterra-type correction
// that accompanies it in the full Laguerre asymptotics is not.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>

#include "macroqm/errors.hpp"
#include "macroqm/fourier.hpp"
#include "macroqm/oscillator.hpp"
#include "macroqm/specfun.hpp"

namespace macroqm {

/// Index (n, v) of the asymptotic component rho~_{n, n-v}.
class AsymptoticIndex {
public:
    AsymptoticIndex(QuantumNumber n, QuantumNumber v) : n_(n), v_(v)
    {
        if (n < 1) throw DomainError("AsymptoticIndex: n must be >= 1");
        if (v > n) throw DomainError("AsymptoticIndex: offset v must not exceed n");
    }

    QuantumNumber n() const { return n_; }
    QuantumNumber v() const { return v_; }
    QuantumNumber m() const { return n_ - v_; }

    /// N = n - (v - 1)/2.
    double N() const { return static_cast<double>(n_) - (static_cast<double>(v_) - 1.0) / 2.0; }

    /// (1 - (v-1)/(2n))^{-v/2}; exactly 1 for v = 0 and v = 1.
    double prefactor() const
    {
        if (v_ <= 1) return 1.0;
        const double base = 1.0 - (static_cast<double>(v_) - 1.0) / (2.0 * static_cast<double>(n_));
        return std::pow(base, -0.5 * static_cast<double>(v_));
    }

private:
    QuantumNumber n_;
    QuantumNumber v_;
};

/// chi_{n,n-v} = sqrt(2 N hbar / (m omega)); equals x_n for v = 0.
inline double turning_amplitude(const AsymptoticIndex& idx, const OscillatorParams& prm)
{
    return std::sqrt(2.0 * idx.N() * prm.hbar / (prm.mass * prm.omega));
}

inline Complex fourier_asymptotic(const AsymptoticIndex& idx, MomentumAbscissa p, const OscillatorParams& prm)
{
    detail::require_finite(p.p, "fourier_asymptotic");
    const double arg = 2.0 * std::sqrt(idx.N()) * p.xi0(prm);
    return detail::minus_i_power(idx.v()) * (idx.prefactor() * specfun::bessel_j(idx.v(), arg));
}

namespace detail {

// Points within this fraction of chi of a turning point are evaluated at
// chi (1 - kEndpointClamp).
constexpr double kEndpointClamp = 1e-12;

// prefactor T_v(x/chi) / (pi sqrt(chi^2 - x^2)) Rect(x / (2 chi)).
inline double chebyshev_arcsine(QuantumNumber v, double chi, double prefactor, double x, bool* clamped = nullptr)
{
    require_finite(x, "density_asymptotic");
    const double u = std::abs(x) / chi;
    if (u > 1.0) return 0.0;
    double xe = x;
    if (u >= 1.0 - kEndpointClamp) {
        xe = std::copysign(chi * (1.0 - kEndpointClamp), x);
        if (clamped != nullptr) *clamped = true;
    }
    const double root = std::sqrt((chi - xe) * (chi + xe));
    const double value
        = prefactor * specfun::chebyshev_t(v, xe / chi) / (std::numbers::pi * root);
    return value * specfun::rect(x / (2.0 * chi));
}

} // namespace detail

/// Asymptotic rho~_{n,n-v}(x). Zero outside (-chi, chi); never infinite (see
/// the endpoint clamp above); half the clamped value exactly at |x| = chi.
inline double density_asymptotic(const AsymptoticIndex& idx, double x, const OscillatorParams& prm)
{
    return detail::chebyshev_arcsine(idx.v(), turning_amplitude(idx, prm), idx.prefactor(), x);
}

/// 1 / (pi sqrt(x_n^2 - x^2)) inside the classical window, 0 outside.
inline double classical_density(QuantumNumber n, double x, const OscillatorParams& prm)
{
    return detail::chebyshev_arcsine(0, classical_amplitude(n, prm), 1.0, x);
}

/// density_asymptotic on a grid, flagging any clamped endpoint evaluation.
inline SampledField density_asymptotic_field(const AsymptoticIndex& idx, std::span<const double> grid,
                                             const OscillatorParams& prm)
{
    SampledField f;
    f.abscissae.assign(grid.begin(), grid.end());
    const double chi = turning_amplitude(idx, prm);
    bool clamped = false;
    for (double x : grid) {
        f.values.emplace_back(detail::chebyshev_arcsine(idx.v(), chi, idx.prefactor(), x, &clamped), 0.0);
    }
    f.meta.formula = "density_asymptotic";
    f.meta.parameters = {{"n", std::to_string(idx.n())}, {"v", std::to_string(idx.v())}};
    f.meta.endpoint_clamped = clamped;
    f.validate();
    return f;
}

/// Default offset cutoff: three times the support width of the state.
inline QuantumNumber default_vmax(const Superposition& state)
{
    return 3 * state.support_width();
}

/// Macroscopic density
///   sum_n sum_{|v| <= vmax} c_n c_{n-v}^* rho~^asymp_{n,n-v}(x) exp(-i v omega_CL t),
/// with the v < 0 terms taken as conjugates of their v > 0 partners so the
/// sum is Hermitian. Pairs outside the support are skipped.
inline double macroscopic_density_xt(const Superposition& state, double x, double t, QuantumNumber vmax,
                                     const OscillatorParams& prm)
{
    detail::require_finite(x, "macroscopic_density_xt");
    detail::require_finite(t, "macroscopic_density_xt");
    Complex sum{};
    double magnitude = 0.0;

    // c_n c_{n-v}^* rho_{n,n-v} exp(-i v omega t) for v >= 0
    auto oriented = [&](QuantumNumber n, QuantumNumber v) {
        const Complex cn = state.coefficient(n);
        const Complex cm = state.coefficient(n - v);
        const double rho
            = v == 0 ? classical_density(n, x, prm) : density_asymptotic(AsymptoticIndex(n, v), x, prm);
        const double phase = -classical_frequency(n, static_cast<std::int64_t>(v), prm) * t;
        return cn * std::conj(cm) * rho * Complex{std::cos(phase), std::sin(phase)};
    };

    for (const auto& [n, cn] : state.entries()) {
        for (std::int64_t v = -static_cast<std::int64_t>(vmax); v <= static_cast<std::int64_t>(vmax); ++v) {
            Complex term;
            if (v >= 0) {
                const auto uv = static_cast<QuantumNumber>(v);
                if (uv > n || !state.contains(n - uv)) continue;
                term = oriented(n, uv);
            } else {
                const auto uv = static_cast<QuantumNumber>(-v);
                if (!state.contains(n + uv)) continue;
                term = std::conj(oriented(n + uv, uv));
            }
            sum += term;
            magnitude += std::abs(term);
        }
    }
    return detail::real_part_checked(sum, magnitude, "macroscopic_density_xt");
}

/// Leading Bessel term of the large-n Laguerre asymptotics in raw variables:
///   exp(-x^2/2) x^v L_n^v(x^2) ~ Gamma(n+v+1) / (N^{v/2} n!) J_v(2 sqrt(N) x),
///   N = n + (v+1)/2.
inline double szego_first_order(QuantumNumber n, QuantumNumber v, double x)
{
    detail::require_finite(x, "szego_first_order");
    if (n < 1) throw DomainError("szego_first_order: n must be >= 1");
    const double big_n = static_cast<double>(n) + (static_cast<double>(v) + 1.0) / 2.0;
    const double log_coeff = -specfun::log_ratio_factorial(n + v, n) - 0.5 * static_cast<double>(v) * std::log(big_n);
    return std::exp(log_coeff) * specfun::bessel_j(v, 2.0 * std::sqrt(big_n) * x);
}

} // namespace macroqm
