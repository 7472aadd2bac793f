#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "macroqm/asymptotics.hpp"
#include "macroqm/averaging.hpp"

using namespace macroqm;
using Catch::Approx;

namespace {

const OscillatorParams nat;

AveragingWindow fixed(double eps) { return {eps, WindowRule::fixed, 0.0}; }

} // namespace

TEST_CASE("window validation")
{
    CHECK_THROWS_AS(fixed(0.0).validate(), DomainError);
    CHECK_THROWS_AS(fixed(-1.0).validate(), DomainError);
    CHECK_THROWS_AS((AveragingWindow{1.0, WindowRule::wavelength_scaled, 0.0}.validate()), DomainError);
    CHECK_NOTHROW(fixed(0.1).validate());
}

TEST_CASE("local average of constants and cosines")
{
    QuadratureSpec q;
    q.nodes = 200;
    for (double eps : {1e-3, 0.4, 7.0}) {
        for (double c : {0.0, -2.5, 1e8}) {
            const double a = local_average([c](double) { return c; }, 3.3, fixed(eps), q);
            CHECK(std::abs(a - c) <= 1e-12 * std::max(1.0, std::abs(c)));
        }
    }
    for (double lam : {0.5, 3.0, 20.0}) {
        for (double eps : {0.1, 1.0}) {
            QuadratureSpec qc = averaging_quadrature(fixed(eps), 2.0 * std::numbers::pi / lam);
            const double a = local_average([lam](double y) { return std::cos(lam * y); }, 0.0, fixed(eps), qc);
            CHECK(std::abs(a - std::sin(lam * eps) / (lam * eps)) <= 1e-12);
        }
    }
}

TEST_CASE("local average is linear")
{
    const auto q = averaging_quadrature(fixed(0.8), 0.5);
    auto f = [](double y) { return std::sin(3.0 * y) + y * y; };
    auto g = [](double y) { return std::exp(-y) * std::cos(7.0 * y); };
    const double a = 2.5;
    const double b = -0.75;
    const double lhs = local_average([&](double y) { return a * f(y) + b * g(y); }, 0.4, fixed(0.8), q);
    const double rhs = a * local_average(f, 0.4, fixed(0.8), q) + b * local_average(g, 0.4, fixed(0.8), q);
    CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("local average refuses unresolved oscillation")
{
    QuadratureSpec q;
    q.nodes = 40;
    q.shortest_wavelength = 0.01;
    CHECK_THROWS_AS(local_average([](double y) { return std::cos(600.0 * y); }, 0.0, fixed(1.0), q), NumericRefusal);
}

TEST_CASE("default window rule")
{
    const auto w = default_window(100, 0.0, 3.0, nat);
    CHECK(w.epsilon == Approx(3.0 * std::numbers::pi / std::sqrt(201.0)).epsilon(1e-14));
    CHECK(w.rule == WindowRule::wavelength_scaled);
    CHECK(w.periods == 3.0);

    const double ratio = default_window(100, 0.0, 3.0, nat).epsilon / default_window(400, 0.0, 3.0, nat).epsilon;
    CHECK(ratio == Approx(std::sqrt(400.5 / 100.5)).epsilon(1e-14));

    for (double u : {0.0, 0.3, 0.6}) {
        double last = std::numeric_limits<double>::infinity();
        for (QuantumNumber n : {50u, 100u, 1000u, 10000u}) {
            const auto wn = default_window(n, u * classical_amplitude(n, nat), 3.0, nat);
            CHECK(wn.epsilon > 0.0);
            CHECK(wn.epsilon < last);
            last = wn.epsilon;
        }
    }

    // the clamp keeps the window inside 0.9 x_n
    const double x5 = classical_amplitude(5, nat);
    const auto near = default_window(5, 0.85 * x5, 3.0, nat);
    CHECK(0.85 * x5 + near.epsilon <= 0.9 * x5 * (1.0 + 1e-15));

    CHECK_THROWS_AS(default_window(100, 0.9 * classical_amplitude(100, nat), 3.0, nat), DomainError);
    CHECK_THROWS_AS(default_window(100, -20.0, 3.0, nat), DomainError);
    CHECK_THROWS_AS(default_window(100, 0.0, 0.0, nat), DomainError);

    const OscillatorParams p(2.0, 3.0, 0.5);
    const auto wp = default_window(10, 0.0, 2.0, p);
    CHECK(wp.epsilon == Approx(2.0 * std::numbers::pi * p.hbar / (p.mass * p.omega * classical_amplitude(10, p))));
}

TEST_CASE("averaged eigenstate density at the centre")
{
    const QuantumNumber n = 100;
    const auto w = default_window(n, 0.0, 3.0, nat);
    const auto q = averaging_quadrature(w, density_wavelength({n, n}, nat));
    const double avg = local_average([&](double y) { return density_component({n, n}, y, nat); }, 0.0, w, q);
    const double ref = 1.0 / (std::numbers::pi * classical_amplitude(n, nat));
    CHECK(std::abs(avg / ref - 1.0) <= 0.05);
}

TEST_CASE("averaging the smooth asymptotic density changes it by O(eps^2)")
{
    const QuantumNumber n = 1000;
    const double xn = classical_amplitude(n, nat);
    double worst = 0.0;
    for (double x : linspace(-0.5 * xn, 0.5 * xn, 41)) {
        const auto w = default_window(n, x, 3.0, nat);
        const auto q = averaging_quadrature(w, w.epsilon);
        const double avg = local_average([&](double y) { return classical_density(n, y, nat); }, x, w, q);
        worst = std::max(worst, std::abs(avg / classical_density(n, x, nat) - 1.0));
    }
    INFO("worst relative change " << worst);
    CHECK(worst <= 0.005);
}
