#pragma once

// Harmonic-oscillator eigensystem and the exact coordinate-space density
// matrix rho(x, t) = sum_{n,m} c_n c_m^* psi_n(x) psi_m(x) exp(-i (E_n - E_m) t / hbar).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "macroqm/errors.hpp"
#include "macroqm/specfun.hpp"

namespace macroqm {

using QuantumNumber = unsigned;
using Complex = std::complex<double>;

/// Mass, angular frequency and Planck constant. Natural units by default.
struct OscillatorParams {
    double mass = 1.0;
    double omega = 1.0;
    double hbar = 1.0;

    OscillatorParams() = default;
    OscillatorParams(double mass_, double omega_, double hbar_) : mass(mass_), omega(omega_), hbar(hbar_)
    {
        validate();
    }

    void validate() const
    {
        if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0) || !std::isfinite(mass) || !std::isfinite(omega)
            || !std::isfinite(hbar)) {
            throw DomainError("OscillatorParams: mass, omega and hbar must be finite and positive");
        }
    }

    /// alpha = m omega / hbar, an inverse squared length.
    double alpha() const { return mass * omega / hbar; }
    double length_scale() const { return 1.0 / std::sqrt(alpha()); }
    double momentum_scale() const { return std::sqrt(mass * omega * hbar); }
    double period() const { return 2.0 * std::numbers::pi / omega; }
};

/// Ordered pair of quantum numbers (n, m) indexing rho_{n,m}.
struct ModePair {
    QuantumNumber n = 0;
    QuantumNumber m = 0;

    std::int64_t offset() const { return static_cast<std::int64_t>(n) - static_cast<std::int64_t>(m); }
    QuantumNumber high() const { return std::max(n, m); }
    QuantumNumber low() const { return std::min(n, m); }

    struct Canonical;
    Canonical canonical() const;

    friend bool operator==(const ModePair&, const ModePair&) = default;
};

/// The pair reordered to n >= m; `swapped` records that the coefficient
/// product and time phase of the original orientation are the complex
/// conjugates of the canonical ones.
struct ModePair::Canonical {
    ModePair pair;
    bool swapped = false;
};

inline ModePair::Canonical ModePair::canonical() const
{
    if (n >= m) return {*this, false};
    return {ModePair{m, n}, true};
}

/// Normalised pure state with finite support, sum |c_n|^2 = 1.
class Superposition {
public:
    using Entries = std::map<QuantumNumber, Complex>;

    /// Normalises the given coefficients. Duplicate quantum numbers, an empty
    /// list or an all-zero list are rejected.
    static Superposition from_coefficients(const std::vector<std::pair<QuantumNumber, Complex>>& coeffs)
    {
        Entries e;
        for (const auto& [n, c] : coeffs) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw DomainError("Superposition: non-finite coefficient");
            }
            if (!e.emplace(n, c).second) {
                throw DomainError("Superposition: duplicate quantum number " + std::to_string(n));
            }
        }
        return Superposition(std::move(e));
    }

    static Superposition eigenstate(QuantumNumber n) { return from_coefficients({{n, Complex{1.0, 0.0}}}); }

    /// Equal-weight real mix of the listed states.
    static Superposition equal_mix(const std::vector<QuantumNumber>& ns)
    {
        std::vector<std::pair<QuantumNumber, Complex>> c;
        for (QuantumNumber n : ns) c.emplace_back(n, Complex{1.0, 0.0});
        return from_coefficients(c);
    }

    /// |c_n|^2 proportional to exp(-(n - nbar)^2 / (2 sigma^2)) on
    /// |n - nbar| <= 6 sigma, n >= 0, real positive amplitudes.
    static Superposition discrete_gaussian(double nbar, double sigma)
    {
        if (!(sigma > 0.0) || !std::isfinite(nbar) || !std::isfinite(sigma) || nbar < 0.0) {
            throw DomainError("Superposition::discrete_gaussian: need nbar >= 0 and sigma > 0");
        }
        const double lo = std::max(0.0, std::ceil(nbar - 6.0 * sigma));
        const double hi = std::floor(nbar + 6.0 * sigma);
        std::vector<std::pair<QuantumNumber, Complex>> c;
        for (double n = lo; n <= hi; n += 1.0) {
            const double d = (n - nbar) / sigma;
            c.emplace_back(static_cast<QuantumNumber>(n), Complex{std::exp(-0.25 * d * d), 0.0});
        }
        if (c.empty()) c.emplace_back(static_cast<QuantumNumber>(std::llround(nbar)), Complex{1.0, 0.0});
        return from_coefficients(c);
    }

    const Entries& entries() const { return entries_; }

    Complex coefficient(QuantumNumber n) const
    {
        const auto it = entries_.find(n);
        return it == entries_.end() ? Complex{} : it->second;
    }

    bool contains(QuantumNumber n) const { return entries_.count(n) != 0; }
    QuantumNumber min_n() const { return entries_.begin()->first; }
    QuantumNumber max_n() const { return entries_.rbegin()->first; }
    QuantumNumber support_width() const { return max_n() - min_n(); }

    double norm_squared() const
    {
        double s = 0.0;
        for (const auto& [n, c] : entries_) s += std::norm(c);
        return s;
    }

private:
    explicit Superposition(Entries e) : entries_(std::move(e))
    {
        if (entries_.empty()) throw DomainError("Superposition: empty support");
        const double ns = norm_squared();
        if (!(ns > 0.0)) throw DomainError("Superposition: all coefficients are zero");
        const double scale = 1.0 / std::sqrt(ns);
        for (auto& [n, c] : entries_) c *= scale;
    }

    Entries entries_;
};

/// Provenance of a SampledField.
struct FieldMeta {
    std::string formula;
    std::vector<std::pair<std::string, std::string>> parameters;
    /// Set when some abscissa fell on (or within rounding of) a turning point
    /// and was evaluated at the clamped interior point.
    bool endpoint_clamped = false;
};

/// Grid of abscissae with complex values.
struct SampledField {
    std::vector<double> abscissae;
    std::vector<Complex> values;
    FieldMeta meta;

    void validate() const
    {
        if (abscissae.size() != values.size()) throw ContractViolation("SampledField: length mismatch");
        for (std::size_t i = 1; i < abscissae.size(); ++i) {
            if (!(abscissae[i] > abscissae[i - 1])) {
                throw ContractViolation("SampledField: abscissae must be strictly increasing");
            }
        }
    }
};

/// count equally spaced points on [lo, hi], endpoints included.
inline std::vector<double> linspace(double lo, double hi, std::size_t count)
{
    if (count < 2 || !(hi > lo)) throw DomainError("linspace: need count >= 2 and lo < hi");
    std::vector<double> g(count);
    const double h = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo + h * static_cast<double>(i);
    g.back() = hi;
    return g;
}

/// E_n = hbar omega (n + 1/2).
inline double energy(QuantumNumber n, const OscillatorParams& p)
{
    return p.hbar * p.omega * (static_cast<double>(n) + 0.5);
}

/// Classical turning point x_n with (1/2) m omega^2 x_n^2 = E_n.
inline double classical_amplitude(QuantumNumber n, const OscillatorParams& p)
{
    return std::sqrt(2.0 * (static_cast<double>(n) + 0.5) * p.hbar / (p.mass * p.omega));
}

/// Largest classical momentum at energy E_n, m omega x_n.
inline double classical_peak_momentum(QuantumNumber n, const OscillatorParams& p)
{
    return p.mass * p.omega * classical_amplitude(n, p);
}

/// psi_n(x) = alpha^{1/4} h_n(sqrt(alpha) x).
inline double eigenstate(QuantumNumber n, double x, const OscillatorParams& p)
{
    detail::require_finite(x, "eigenstate");
    const double a = p.alpha();
    return std::sqrt(std::sqrt(a)) * specfun::hermite_function(n, std::sqrt(a) * x);
}

/// rho~_{n,m}(x) = psi_n(x) psi_m(x), through orthonormal Hermite functions.
inline double density_component(ModePair pair, double x, const OscillatorParams& p)
{
    detail::require_finite(x, "density_component");
    const double a = p.alpha();
    const double xi = std::sqrt(a) * x;
    if (pair.n == pair.m) {
        const double h = specfun::hermite_function(pair.n, xi);
        return std::sqrt(a) * h * h;
    }
    const auto h = specfun::hermite_functions(pair.high(), xi);
    return std::sqrt(a) * h[pair.n] * h[pair.m];
}

namespace detail {

// Imaginary part tolerated in sums that are real analytically, relative to
// the sum of term magnitudes.
constexpr double kImaginaryResidue = 1e-9;

inline double real_part_checked(Complex sum, double magnitude, const char* who)
{
    if (std::abs(sum.imag()) > kImaginaryResidue * std::max(magnitude, 1e-300)) {
        throw ConsistencyError(std::string(who) + ": imaginary residue " + std::to_string(sum.imag())
                               + " exceeds tolerance");
    }
    return sum.real();
}

} // namespace detail

/// Exact rho(x, t) for a pure state. Pairs are summed in ascending (n, m)
/// order so the result does not depend on how callers parallelise over x.
inline double density_matrix_xt(const Superposition& state, double x, double t, const OscillatorParams& p)
{
    detail::require_finite(x, "density_matrix_xt");
    detail::require_finite(t, "density_matrix_xt");
    const double a = p.alpha();
    const auto h = specfun::hermite_functions(state.max_n(), std::sqrt(a) * x);

    Complex sum{};
    double magnitude = 0.0;
    for (const auto& [n, cn] : state.entries()) {
        for (const auto& [m, cm] : state.entries()) {
            const double phase = -(energy(n, p) - energy(m, p)) * t / p.hbar;
            const Complex term = cn * std::conj(cm) * (std::sqrt(a) * h[n] * h[m])
                                 * Complex{std::cos(phase), std::sin(phase)};
            sum += term;
            magnitude += std::abs(term);
        }
    }
    return detail::real_part_checked(sum, magnitude, "density_matrix_xt");
}

/// v * omega_CL with omega_CL = 2 pi dE_n/dJ, J = n h. The oscillator
/// spectrum is linear in n, so dE_n/dJ = omega / (2 pi) for every n.
inline double classical_frequency(QuantumNumber /*n*/, std::int64_t v, const OscillatorParams& p)
{
    return static_cast<double>(v) * p.omega;
}

} // namespace macroqm
