#pragma once

// Fixed-order quadrature used by every numerical oracle in the library:
// composite Gauss-Legendre for finite intervals and Gauss-Chebyshev for the
// (1 - xi^2)^{-1/2} weight. Node/weight tables come from Boost.Math.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "macroqm/errors.hpp"

namespace macroqm {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
};

enum class QuadratureScheme { composite_gauss_legendre };

/// Node budget, optional domain and scheme for a numerical integral.
///
/// shortest_wavelength is the shortest oscillation length of the integrand
/// (0 when unknown). Operations that know their integrand fill it in
/// themselves; when set, fewer than min_nodes_per_wavelength nodes per
/// wavelength is refused instead of producing a silently wrong number.
struct QuadratureSpec {
    static constexpr unsigned panel_order = 20;
    static constexpr double min_nodes_per_wavelength = 8.0;

    std::size_t nodes = 2000;
    std::optional<Interval> domain;
    QuadratureScheme scheme = QuadratureScheme::composite_gauss_legendre;
    double shortest_wavelength = 0.0;

    std::size_t panels() const
    {
        return std::max<std::size_t>(1, (nodes + panel_order - 1) / panel_order);
    }

    /// Spec with enough nodes for nodes_per_wavelength over the domain.
    static QuadratureSpec resolving(Interval domain, double shortest_wavelength,
                                    double nodes_per_wavelength = 16.0, std::size_t min_nodes = 200)
    {
        QuadratureSpec q;
        q.domain = domain;
        q.shortest_wavelength = shortest_wavelength;
        const double want = std::ceil(domain.length() / shortest_wavelength * nodes_per_wavelength);
        q.nodes = std::max<std::size_t>(min_nodes, static_cast<std::size_t>(want));
        return q;
    }
};

namespace quadrature {

/// Throws NumericRefusal when the node density over `length` is below the
/// threshold for the given wavelength.
inline void require_resolved(const QuadratureSpec& q, double length, double wavelength, const char* who)
{
    if (!(wavelength > 0.0)) return;
    const double nodes = static_cast<double>(q.panels() * QuadratureSpec::panel_order);
    const double density = nodes * wavelength / length;
    if (density < QuadratureSpec::min_nodes_per_wavelength) {
        std::ostringstream os;
        os << who << ": " << density << " nodes per shortest wavelength (" << wavelength
           << "), need at least " << QuadratureSpec::min_nodes_per_wavelength;
        throw NumericRefusal(os.str());
    }
}

/// Composite Gauss-Legendre over `dom` with `panels` equal panels.
/// Works for any integrand whose result supports + and scaling by double.
template <class F>
auto integrate(const F& f, Interval dom, std::size_t panels) -> decltype(f(0.0))
{
    using Gauss = boost::math::quadrature::gauss<double, QuadratureSpec::panel_order>;
    using R = decltype(f(0.0));
    const auto& xs = Gauss::abscissa();
    const auto& ws = Gauss::weights();
    const double h = dom.length() / static_cast<double>(panels);
    R total{};
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = dom.lo + h * static_cast<double>(p);
        const double mid = a + 0.5 * h;
        const double half = 0.5 * h;
        R panel{};
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] == 0.0) {
                panel += ws[i] * f(mid);
            } else {
                panel += ws[i] * (f(mid - half * xs[i]) + f(mid + half * xs[i]));
            }
        }
        total += half * panel;
    }
    return total;
}

/// Flattened composite Gauss-Legendre rule, for integrands that are reused
/// across many outer evaluations.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline Rule composite_rule(Interval dom, std::size_t panels)
{
    using Gauss = boost::math::quadrature::gauss<double, QuadratureSpec::panel_order>;
    const auto& xs = Gauss::abscissa();
    const auto& ws = Gauss::weights();
    Rule r;
    r.nodes.reserve(panels * QuadratureSpec::panel_order);
    r.weights.reserve(panels * QuadratureSpec::panel_order);
    const double h = dom.length() / static_cast<double>(panels);
    const double half = 0.5 * h;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = dom.lo + h * static_cast<double>(p) + half;
        for (std::size_t i = xs.size(); i-- > 0;) {
            if (xs[i] == 0.0) continue;
            r.nodes.push_back(mid - half * xs[i]);
            r.weights.push_back(half * ws[i]);
        }
        if (xs[0] == 0.0) {
            r.nodes.push_back(mid);
            r.weights.push_back(half * ws[0]);
        }
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] == 0.0) continue;
            r.nodes.push_back(mid + half * xs[i]);
            r.weights.push_back(half * ws[i]);
        }
    }
    return r;
}

/// Integrate with a QuadratureSpec; the spec's own domain is used unless
/// `override_domain` is given.
template <class F>
auto integrate(const F& f, const QuadratureSpec& q, std::optional<Interval> override_domain = std::nullopt,
               const char* who = "integrate") -> decltype(f(0.0))
{
    const std::optional<Interval> dom = override_domain ? override_domain : q.domain;
    if (!dom || !(dom->length() > 0.0)) {
        throw DomainError(std::string(who) + ": quadrature domain missing or empty");
    }
    require_resolved(q, dom->length(), q.shortest_wavelength, who);
    return integrate(f, *dom, q.panels());
}

/// Angle of Gauss-Chebyshev node k (0-based) of K; the node is cos of it.
inline double chebyshev_angle(std::size_t k, std::size_t count)
{
    return (2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(count));
}

/// (1/pi) * integral_{-1}^{1} g(xi) / sqrt(1 - xi^2) dxi with K nodes; exact
/// for polynomial g of degree <= 2K - 1. `g_of_angle` receives theta_k and
/// must return g(cos theta_k).
template <class F>
double gauss_chebyshev_mean(const F& g_of_angle, std::size_t count)
{
    double s = 0.0;
    for (std::size_t k = 0; k < count; ++k) s += g_of_angle(chebyshev_angle(k, count));
    return s / static_cast<double>(count);
}

/// (1/K) sum_k f(cos theta_k) cos(v theta_k). Nodes are taken in mirror
/// pairs xi, -xi, so moments that vanish by parity come out as exact zeros.
template <class F>
double gauss_chebyshev_moment(const F& f, unsigned v, std::size_t count)
{
    const double vd = static_cast<double>(v);
    const double mirror = (v % 2 == 0) ? 1.0 : -1.0;
    double s = 0.0;
    for (std::size_t k = 0; k < count / 2; ++k) {
        const double theta = chebyshev_angle(k, count);
        const double xi = std::cos(theta);
        s += std::cos(vd * theta) * (f(xi) + mirror * f(-xi));
    }
    if (count % 2 == 1) {
        // theta = pi/2: cos(v pi/2) is 0 or +-1
        static constexpr double quarter[] = {1.0, 0.0, -1.0, 0.0};
        s += quarter[v % 4] * f(0.0);
    }
    return s / static_cast<double>(count);
}

} // namespace quadrature
} // namespace macroqm
