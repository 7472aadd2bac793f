#pragma once

// Expectation values of position observables: exact, through matrix elements
// of the coordinate-space density components, and asymptotic, through
// Gauss-Chebyshev moments of the first-order macroscopic components.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "macroqm/asymptotics.hpp"
#include "macroqm/errors.hpp"
#include "macroqm/fourier.hpp"
#include "macroqm/oscillator.hpp"
#include "macroqm/quadrature.hpp"

namespace macroqm {

/// Observable O(x). `id` identifies it in matrix-element caches.
struct PositionObservable {
    std::string id;
    std::function<double(double)> evaluator;
    std::optional<unsigned> polynomial_degree;

    double operator()(double x) const { return evaluator(x); }

    static PositionObservable monomial(unsigned k)
    {
        return {"x^" + std::to_string(k), [k](double x) { return std::pow(x, static_cast<int>(k)); }, k};
    }

    /// c[0] + c[1] x + c[2] x^2 + ...
    static PositionObservable polynomial(std::vector<double> c)
    {
        while (c.size() > 1 && c.back() == 0.0) c.pop_back();
        if (c.empty()) c.push_back(0.0);
        std::ostringstream id;
        id.precision(17);
        id << "poly";
        for (double a : c) id << ':' << a;
        const auto degree = static_cast<unsigned>(c.size() - 1);
        return {id.str(),
                [c = std::move(c)](double x) {
                    double s = 0.0;
                    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
                    return s;
                },
                degree};
    }

    static PositionObservable custom(std::string id, std::function<double(double)> f)
    {
        return {std::move(id), std::move(f), std::nullopt};
    }
};

/// Matrix elements <m|O|n> keyed by (min, max, observable id), bound to one
/// set of oscillator parameters. Concurrent lookups share a lock; inserts
/// take it exclusively.
class MatrixElementCache {
public:
    explicit MatrixElementCache(OscillatorParams prm = {}) : params_(prm) {}

    const OscillatorParams& params() const { return params_; }

    std::optional<double> find(ModePair pair, const std::string& id) const
    {
        std::shared_lock lock(mutex_);
        const auto it = entries_.find(key(pair, id));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void insert(ModePair pair, const std::string& id, double value)
    {
        std::unique_lock lock(mutex_);
        entries_.emplace(key(pair, id), value);
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return entries_.size();
    }

private:
    using Key = std::tuple<QuantumNumber, QuantumNumber, std::string>;

    static Key key(ModePair p, const std::string& id) { return {p.low(), p.high(), id}; }

    OscillatorParams params_;
    mutable std::shared_mutex mutex_;
    std::map<Key, double> entries_;
};

/// Quadrature for <m|O|n> over the truncated oscillator domain, resolving
/// rho~_{n,m} at nodes_per_wavelength.
inline QuadratureSpec matrix_element_quadrature(ModePair pair, const OscillatorParams& prm,
                                                double nodes_per_wavelength = 16.0)
{
    return oracle_quadrature(pair, MomentumAbscissa{0.0}, prm, nodes_per_wavelength);
}

/// integral O(x) rho~_{n,m}(x) dx. With no domain in `quad` the truncated
/// oscillator domain is used.
inline double matrix_element(ModePair pair, const PositionObservable& obs, const OscillatorParams& prm,
                             const QuadratureSpec& quad)
{
    QuadratureSpec q = quad;
    if (!q.domain) {
        const double cut = oracle_cutoff(pair, prm);
        q.domain = Interval{-cut, cut};
    }
    q.shortest_wavelength = oracle_wavelength(pair, MomentumAbscissa{0.0}, prm);
    const double sa = std::sqrt(prm.alpha());
    std::vector<double> h(static_cast<std::size_t>(pair.high()) + 1);
    auto integrand = [&](double x) {
        specfun::hermite_functions(sa * x, h);
        return obs(x) * sa * h[pair.n] * h[pair.m];
    };
    return quadrature::integrate(integrand, q, std::nullopt, "matrix_element");
}

namespace detail {

inline double cached_matrix_element(ModePair pair, const PositionObservable& obs, const OscillatorParams& prm,
                                    const std::optional<QuadratureSpec>& quad, MatrixElementCache* cache)
{
    if (cache != nullptr) {
        const auto& cp = cache->params();
        if (cp.mass != prm.mass || cp.omega != prm.omega || cp.hbar != prm.hbar) {
            throw ContractViolation("MatrixElementCache: bound to different oscillator parameters");
        }
        if (auto hit = cache->find(pair, obs.id)) return *hit;
    }
    const ModePair c = pair.canonical().pair;
    const double value = matrix_element(c, obs, prm, quad ? *quad : matrix_element_quadrature(c, prm));
    if (cache != nullptr) cache->insert(c, obs.id, value);
    return value;
}

} // namespace detail

/// <O>(t) = sum_{n,m} c_n c_m^* exp(-i (E_n - E_m) t / hbar) <m|O|n>.
///
/// Without `quad` each matrix element gets its own resolved quadrature.
inline double expectation_exact(const Superposition& state, const PositionObservable& obs, double t,
                                const OscillatorParams& prm, const std::optional<QuadratureSpec>& quad = std::nullopt,
                                MatrixElementCache* cache = nullptr)
{
    detail::require_finite(t, "expectation_exact");
    Complex sum{};
    double magnitude = 0.0;
    for (const auto& [n, cn] : state.entries()) {
        for (const auto& [m, cm] : state.entries()) {
            const double element = detail::cached_matrix_element(ModePair{n, m}, obs, prm, quad, cache);
            const double phase = -(energy(n, prm) - energy(m, prm)) * t / prm.hbar;
            const Complex term = cn * std::conj(cm) * element * Complex{std::cos(phase), std::sin(phase)};
            sum += term;
            magnitude += std::abs(term);
        }
    }
    return detail::real_part_checked(sum, magnitude, "expectation_exact");
}

/// Largest Gauss-Chebyshev node count tried when the degree is unknown.
constexpr std::size_t kChebyshevNodeCap = std::size_t{1} << 16;

/// integral_{-1}^{1} O(chi xi) T_v(xi) / (pi sqrt(1 - xi^2)) dxi by
/// Gauss-Chebyshev, (1/K) sum_k O(chi cos theta_k) cos(v theta_k).
///
/// nodes == 0 picks K: v + degree + 1 for polynomial observables, otherwise
/// 64 doubled until successive values agree to 1e-10 (refused past 2^16).
inline double chebyshev_moment(const PositionObservable& obs, double chi, QuantumNumber v, std::size_t nodes = 0)
{
    if (!(chi > 0.0) || !std::isfinite(chi)) throw DomainError("chebyshev_moment: chi must be positive");
    auto mean = [&](std::size_t count) {
        return quadrature::gauss_chebyshev_moment([&](double xi) { return obs(chi * xi); }, v, count);
    };

    if (nodes != 0) {
        if (obs.polynomial_degree && nodes < v + *obs.polynomial_degree + 1) {
            throw ContractViolation("chebyshev_moment: node count below v + degree + 1");
        }
        return mean(nodes);
    }
    if (obs.polynomial_degree) return mean(v + *obs.polynomial_degree + 1);

    std::size_t count = 64;
    double previous = mean(count);
    while (count < kChebyshevNodeCap) {
        count *= 2;
        const double current = mean(count);
        if (std::abs(current - previous) <= 1e-10 * std::max(1.0, std::abs(current))) return current;
        previous = current;
    }
    throw NumericRefusal("chebyshev_moment: no convergence with " + std::to_string(kChebyshevNodeCap)
                         + " Gauss-Chebyshev nodes");
}

/// sum_n |c_n|^2 integral O(x) rho~^asymp_{n,n}(x) dx.
inline double classical_expectation(const Superposition& state, const PositionObservable& obs,
                                    const OscillatorParams& prm)
{
    double s = 0.0;
    for (const auto& [n, cn] : state.entries()) {
        s += std::norm(cn) * chebyshev_moment(obs, classical_amplitude(n, prm), 0);
    }
    return s;
}

/// Classical term plus the interference sum over 1 <= |v| <= vmax,
///   c_n c_{n-v}^* exp(-i v omega t) prefactor(n, v) chebyshev_moment(O, chi_{n,n-v}, v),
/// closed over -v by conjugation.
inline double expectation_asymptotic(const Superposition& state, const PositionObservable& obs, double t,
                                     QuantumNumber vmax, const OscillatorParams& prm)
{
    detail::require_finite(t, "expectation_asymptotic");
    Complex sum{classical_expectation(state, obs, prm), 0.0};
    double magnitude = std::abs(sum.real());
    for (const auto& [n, cn] : state.entries()) {
        for (QuantumNumber v = 1; v <= vmax && v <= n; ++v) {
            if (!state.contains(n - v)) continue;
            const AsymptoticIndex idx(n, v);
            const double moment = chebyshev_moment(obs, turning_amplitude(idx, prm), v);
            const double phase = -classical_frequency(n, v, prm) * t;
            const Complex term = cn * std::conj(state.coefficient(n - v)) * idx.prefactor() * moment
                                 * Complex{std::cos(phase), std::sin(phase)};
            sum += term + std::conj(term);
            magnitude += 2.0 * std::abs(term);
        }
    }
    return detail::real_part_checked(sum, magnitude, "expectation_asymptotic");
}

} // namespace macroqm
