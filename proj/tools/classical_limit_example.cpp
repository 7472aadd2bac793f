// Prints how far the locally averaged eigenstate density is from the
// classical one, and the size of the first interference component, as n grows.

#include <cmath>
#include <cstdio>

#include "macroqm/macroqm.hpp"

int main()
{
    using namespace macroqm;
    const OscillatorParams units; // m = omega = hbar = 1

    std::printf("%6s %14s %14s %14s\n", "n", "avg rho_nn", "classical", "|rho_n,n-1|");
    for (QuantumNumber n : {10u, 100u, 1000u, 10000u}) {
        const double x = 0.3 * classical_amplitude(n, units);
        const auto window = default_window(n, x, 3.0, units);
        const auto quad = averaging_quadrature(window, density_wavelength({n, n}, units));
        const double averaged
            = local_average([&](double y) { return density_component({n, n}, y, units); }, x, window, quad);
        const double off = density_asymptotic(AsymptoticIndex(n, 1), x, units);
        std::printf("%6u %14.8f %14.8f %14.8f\n", n, averaged, classical_density(n, x, units), std::abs(off));
    }
}
