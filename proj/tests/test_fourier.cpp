#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "macroqm/asymptotics.hpp"
#include "macroqm/fourier.hpp"
#include "oracles.hpp"

using namespace macroqm;
using Catch::Approx;

namespace {

const OscillatorParams nat;

MomentumAbscissa at_xi(double xi, const OscillatorParams& p = nat) { return MomentumAbscissa::from_xi0(xi, p); }

} // namespace

TEST_CASE("MomentumAbscissa scaling")
{
    const OscillatorParams p(2.0, 1.0, 0.5);
    const auto a = MomentumAbscissa{3.0};
    CHECK(a.xi0(p) == Approx(3.0 / std::sqrt(2.0)));
    CHECK(MomentumAbscissa::from_xi0(-1.25, p).xi0(p) == Approx(-1.25));
    CHECK(TransformConvention::inverse_prefactor(nat) == Approx(1.0 / (2.0 * std::numbers::pi)));
}

TEST_CASE("fourier_exact closed-form special cases")
{
    CHECK(fourier_exact({0, 0}, at_xi(0.0), nat) == Complex{1.0, 0.0});
    CHECK(fourier_exact({0, 0}, at_xi(1.3), nat).real() == Approx(std::exp(-0.5 * 1.3 * 1.3)).epsilon(1e-15));
    for (QuantumNumber n : {1u, 7u, 100u, 10000u}) CHECK(fourier_exact({n, n}, at_xi(0.0), nat) == Complex{1.0, 0.0});
    // f_{1,0} = -i xi exp(-xi^2/2)
    const Complex f10 = fourier_exact({1, 0}, at_xi(0.8), nat);
    CHECK(f10.real() == 0.0);
    CHECK(f10.imag() == Approx(-0.8 * std::exp(-0.32)).epsilon(1e-14));
}

TEST_CASE("fourier_exact phase discipline and symmetry")
{
    for (QuantumNumber n = 0; n <= 12; ++n) {
        for (QuantumNumber m = 0; m <= n; ++m) {
            for (double xi : {0.3, 1.7, 4.0}) {
                const Complex f = fourier_exact({n, m}, at_xi(xi), nat);
                if ((n - m) % 2 == 0) {
                    CHECK(f.imag() == 0.0);
                } else {
                    CHECK(f.real() == 0.0);
                }
                CHECK(fourier_exact({n, m}, at_xi(-xi), nat) == std::conj(f));
                CHECK(fourier_exact({m, n}, at_xi(xi), nat) == f);
                CHECK(std::abs(f) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("fourier_exact is finite at large order")
{
    for (QuantumNumber n : {1000u, 10000u}) {
        for (QuantumNumber v : {0u, 1u, 5u, 100u}) {
            for (double xi : {0.01, 1.0, 8.0, 60.0, 200.0}) {
                const Complex f = fourier_exact({n, n - v}, at_xi(xi), nat);
                CHECK(std::isfinite(f.real()));
                CHECK(std::isfinite(f.imag()));
                CHECK(std::abs(f) <= 1.0);
            }
        }
    }
}

TEST_CASE("fourier_oracle reference values")
{
    CHECK(std::abs(fourier_oracle({0, 0}, at_xi(1.0), nat) - std::exp(-0.5)) <= 1e-10);
    CHECK(std::abs(fourier_oracle({3, 3}, at_xi(0.0), nat) - 1.0) <= 1e-10);
    const Complex a = fourier_oracle({5, 2}, at_xi(0.7), nat);
    const Complex b = fourier_exact({5, 2}, at_xi(0.7), nat);
    CHECK(std::abs(a - b) <= 1e-8);
    const Complex c = fourier_oracle({10, 7}, at_xi(1.3), nat);
    const Complex d = fourier_exact({10, 7}, at_xi(1.3), nat);
    CHECK(std::abs(c - d) <= 1e-8 * std::max(1.0, std::abs(d)));
    // Swapped orientation transforms the same (real, symmetric) function.
    CHECK(std::abs(fourier_oracle({2, 5}, at_xi(0.7), nat) - b) <= 1e-8);
}

TEST_CASE("fourier_oracle agrees with the closed form in other units")
{
    const OscillatorParams p(0.5, 3.0, 1.5);
    for (auto pair : {ModePair{4, 1}, ModePair{9, 9}, ModePair{12, 3}}) {
        for (double xi : {-2.0, 0.5, 3.5}) {
            const auto pa = at_xi(xi, p);
            CHECK(std::abs(fourier_oracle(pair, pa, p) - fourier_exact(pair, pa, p)) <= 1e-8);
        }
    }
}

TEST_CASE("fourier_oracle refuses under-resolved or truncated integrals")
{
    QuadratureSpec coarse = oracle_quadrature({20, 15}, at_xi(3.0), nat);
    coarse.nodes = 40;
    CHECK_THROWS_AS(fourier_oracle({20, 15}, at_xi(3.0), nat, coarse), NumericRefusal);
    QuadratureSpec narrow = oracle_quadrature({20, 15}, at_xi(3.0), nat);
    narrow.domain = Interval{-5.0, 5.0};
    CHECK_THROWS_AS(fourier_oracle({20, 15}, at_xi(3.0), nat, narrow), NumericRefusal);
}

TEST_CASE("inverse transform of the Gaussian pair")
{
    const OscillatorParams p(1.0, 2.0, 1.0);
    QuadratureSpec q;
    q.domain = Interval{-30.0, 30.0};
    q.nodes = 2000;
    const auto grid = linspace(-2.0, 2.0, 21);
    const auto field = inverse_transform_field(
        [&](double mom) { return Complex{std::exp(-0.5 * std::pow(MomentumAbscissa{mom}.xi0(p), 2)), 0.0}; }, grid, p, q);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double expected = std::sqrt(p.alpha() / std::numbers::pi) * std::exp(-p.alpha() * x * x);
        CHECK(std::abs(field.values[i].real() - expected) <= 1e-8 * std::max(expected, 1e-3));
        CHECK(std::abs(field.values[i].imag()) <= 1e-12);
    }
    CHECK(field.meta.formula == "inverse_transform");
}

TEST_CASE("round trip: inverse transform of fourier_exact recovers the density")
{
    for (auto pair : {ModePair{3, 3}, ModePair{7, 4}, ModePair{20, 13}, ModePair{20, 20}}) {
        const double xn = classical_amplitude(pair.high(), nat);
        const auto grid = linspace(-1.2 * xn, 1.2 * xn, 17);
        const double pmax = (std::sqrt(2.0 * pair.high() + 1.0) + 10.0) * std::sqrt(2.0);
        const auto q = QuadratureSpec::resolving({-pmax, pmax}, 2.0 * std::numbers::pi / (2.5 * xn), 16.0);
        const auto field = inverse_transform_field(
            [&](double mom) { return fourier_exact(pair, MomentumAbscissa{mom}, nat); }, grid, nat, q, 1.2 * xn);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            INFO("pair " << pair.n << "," << pair.m << " x=" << grid[i]);
            CHECK(std::abs(field.values[i] - density_component(pair, grid[i], nat)) <= 1e-8);
        }
    }
}

TEST_CASE("inverse transform refuses under-resolved kernels")
{
    QuadratureSpec q;
    q.domain = Interval{-100.0, 100.0};
    q.nodes = 100;
    const std::vector<double> grid{-10.0, 0.0, 10.0};
    CHECK_THROWS_AS(inverse_transform_field([](double) { return Complex{1.0, 0.0}; }, grid, nat, q), NumericRefusal);
    QuadratureSpec nodomain;
    CHECK_THROWS_AS(inverse_transform_field([](double) { return Complex{1.0, 0.0}; }, grid, nat, nodomain), DomainError);
}

TEST_CASE("Bessel coefficients invert to the arcsine density")
{
    // J0(2 sqrt(n + 1/2) xi0) windowed by a wide Gaussian; away from the
    // turning points the smoothing changes the arcsine law by O(window^-2).
    const QuantumNumber n = 50;
    const AsymptoticIndex idx(n, 0);
    const double xn = classical_amplitude(n, nat);
    const double width = 400.0;
    const auto coeff = [&](double mom) {
        const double g = std::exp(-0.5 * std::pow(mom / width, 2));
        return Complex{g * specfun::bessel_j(0, 2.0 * std::sqrt(idx.N()) * MomentumAbscissa{mom}.xi0(nat)), 0.0};
    };
    const auto grid = linspace(-0.75 * xn, 0.75 * xn, 13);
    const auto q = QuadratureSpec::resolving({-8 * width, 8 * width}, 2.0 * std::numbers::pi / (2 * xn), 16.0);
    const auto field = inverse_transform_field(coeff, grid, nat, q, xn);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ref = classical_density(n, grid[i], nat);
        INFO("x=" << grid[i]);
        CHECK(std::abs(field.values[i].real() - ref) <= 1e-4 * ref);
    }
}

TEST_CASE("Fourier coefficients are the correlation of momentum wavefunctions")
{
    // f_{n,m}(p) = integral phi_n(q) phi_m^*(q - p) dq (natural units), with
    // phi_k itself obtained by a first numerical transform of psi_k.
    auto phi = [](QuantumNumber k, double q) {
        const double re = oracle::trapezoid([&](double x) { return eigenstate(k, x, nat) * std::cos(q * x); }, -14, 14, 0.02);
        const double im = oracle::trapezoid([&](double x) { return -eigenstate(k, x, nat) * std::sin(q * x); }, -14, 14, 0.02);
        return Complex{re, im} / std::sqrt(2.0 * std::numbers::pi);
    };
    const double h = 0.05;
    const double qcut = 14.0;
    for (auto pair : {ModePair{0, 0}, ModePair{2, 1}, ModePair{5, 3}, ModePair{4, 4}}) {
        std::vector<Complex> pn;
        std::vector<double> qs;
        for (double q = -qcut; q <= qcut + 1e-12; q += h) {
            qs.push_back(q);
            pn.push_back(phi(pair.n, q));
        }
        for (double mom : {0.0, 0.9, 2.1}) {
            Complex s{};
            for (std::size_t i = 0; i < qs.size(); ++i) s += pn[i] * std::conj(phi(pair.m, qs[i] - mom));
            s *= h;
            const Complex exact = fourier_exact(pair, MomentumAbscissa{mom}, nat);
            INFO("pair " << pair.n << "," << pair.m << " p=" << mom);
            CHECK(std::abs(s - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
        }
    }
}
