#pragma once

// The command-line workflows as library calls: each command turns a RunConfig
// into one or more tables that the front end writes as CSV or JSON.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "macroqm/macroqm.hpp"

namespace macroqm::cli {

/// Malformed or inconsistent command-line configuration.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// %.17g, with nan/inf spelled out.
inline std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_config = 2, exit_refusal = 3 };

/// "lo:hi:count"
struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;

    static GridSpec parse(const std::string& text)
    {
        GridSpec g;
        char tail = 0;
        long long count = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lld%c", &g.lo, &g.hi, &count, &tail) != 3) {
            throw ConfigError("grid spec '" + text + "' is not lo:hi:count");
        }
        if (count < 2) throw ConfigError("grid spec '" + text + "' needs at least 2 points");
        g.count = static_cast<std::size_t>(count);
        g.validate();
        return g;
    }

    void validate() const
    {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
            throw ConfigError("grid bounds must be finite with lo < hi");
        }
        if (count < 2) throw ConfigError("grid needs at least 2 points");
    }

    std::vector<double> points() const { return linspace(lo, hi, count); }

    std::string str() const { return format_number(lo) + ":" + format_number(hi) + ":" + std::to_string(count); }
};

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string command;
    std::vector<QuantumNumber> n;
    std::vector<QuantumNumber> m;
    std::vector<QuantumNumber> v;
    std::optional<double> nbar;
    std::optional<double> sigma;
    /// "n:re[:im],n:re[:im],..."
    std::string coeffs;
    std::optional<GridSpec> grid;
    std::optional<GridSpec> times;
    double k = 3.0;
    std::optional<QuantumNumber> vmax;
    OscillatorParams units;
    /// x, x2 or poly:c0,c1,...
    std::string obs = "x";
    OutputFormat format = OutputFormat::csv;
    std::string out;

    void validate() const
    {
        static const char* known[] = {"density", "asymptotic", "compare", "evolve", "expect"};
        if (std::find(std::begin(known), std::end(known), command) == std::end(known)) {
            throw ConfigError("unknown command '" + command + "'");
        }
        if (grid) grid->validate();
        if (times) times->validate();
        if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("--k must be positive");
        units.validate();
        if (nbar.has_value() != sigma.has_value()) throw ConfigError("--nbar and --sigma go together");
        if (nbar && !coeffs.empty()) throw ConfigError("give either --nbar/--sigma or --coeffs, not both");
    }
};

/// One output file; `name` is the suffix appended to the output path.
struct Table {
    std::string name;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

namespace detail {

inline std::string join(const std::vector<QuantumNumber>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
}

inline std::vector<std::pair<std::string, std::string>> header(const RunConfig& c)
{
    std::vector<std::pair<std::string, std::string>> h{{"command", c.command}, {"version", version}};
    h.emplace_back("units", "m=" + format_number(c.units.mass) + ",omega=" + format_number(c.units.omega)
                                + ",hbar=" + format_number(c.units.hbar));
    if (!c.n.empty()) h.emplace_back("n", join(c.n));
    if (!c.m.empty()) h.emplace_back("m", join(c.m));
    if (!c.v.empty()) h.emplace_back("v", join(c.v));
    if (c.nbar) h.emplace_back("nbar", format_number(*c.nbar));
    if (c.sigma) h.emplace_back("sigma", format_number(*c.sigma));
    if (!c.coeffs.empty()) h.emplace_back("coeffs", c.coeffs);
    if (c.grid) h.emplace_back("grid", c.grid->str());
    if (c.times) h.emplace_back("times", c.times->str());
    h.emplace_back("k", format_number(c.k));
    if (c.vmax) h.emplace_back("vmax", std::to_string(*c.vmax));
    if (c.command == "expect") h.emplace_back("obs", c.obs);
    return h;
}

inline QuantumNumber single_n(const RunConfig& c)
{
    if (c.n.size() != 1) throw ConfigError(c.command + ": exactly one --n is required");
    return c.n.front();
}

} // namespace detail

/// State from --coeffs, --nbar/--sigma, or an equal mix of the --n list.
inline Superposition make_state(const RunConfig& c)
{
    if (!c.coeffs.empty()) {
        std::vector<std::pair<QuantumNumber, Complex>> list;
        std::stringstream ss(c.coeffs);
        std::string item;
        while (std::getline(ss, item, ',')) {
            long long n = -1;
            double re = 0.0;
            double im = 0.0;
            char tail = 0;
            const int got = std::sscanf(item.c_str(), "%lld:%lf:%lf%c", &n, &re, &im, &tail);
            if ((got != 2 && got != 3) || n < 0) throw ConfigError("coefficient '" + item + "' is not n:re[:im]");
            list.emplace_back(static_cast<QuantumNumber>(n), Complex{re, got == 3 ? im : 0.0});
        }
        return Superposition::from_coefficients(list);
    }
    if (c.nbar) return Superposition::discrete_gaussian(*c.nbar, *c.sigma);
    if (!c.n.empty()) return Superposition::equal_mix(c.n);
    throw ConfigError(c.command + ": a state is required (--n, --nbar/--sigma or --coeffs)");
}

/// x, x2 or poly:c0,c1,...
inline PositionObservable make_observable(const std::string& spec)
{
    if (spec == "x") return PositionObservable::monomial(1);
    if (spec == "x2") return PositionObservable::monomial(2);
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> c;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) {
            char* end = nullptr;
            const double a = std::strtod(item.c_str(), &end);
            if (item.empty() || *end != '\0' || !std::isfinite(a)) {
                throw ConfigError("polynomial coefficient '" + item + "' is not a number");
            }
            c.push_back(a);
        }
        if (c.empty()) throw ConfigError("poly: needs at least one coefficient");
        return PositionObservable::polynomial(c);
    }
    throw ConfigError("unknown observable '" + spec + "' (x, x2 or poly:c0,c1,...)");
}

/// Max relative error of the locally averaged rho~_{n,n} (window k local
/// wavelengths) against classical_density on `points` abscissae spanning
/// |x| <= 0.75 x_n.
inline double averaged_density_error(QuantumNumber n, double k, const OscillatorParams& prm, std::size_t points = 61)
{
    const double xn = classical_amplitude(n, prm);
    const double lambda = density_wavelength({n, n}, prm);
    double worst = 0.0;
    for (double x : linspace(-0.75 * xn, 0.75 * xn, points)) {
        const auto w = default_window(n, x, k, prm);
        const double avg = local_average([&](double y) { return density_component({n, n}, y, prm); }, x, w,
                                         averaging_quadrature(w, lambda));
        const double ref = classical_density(n, x, prm);
        worst = std::max(worst, std::abs(avg - ref) / ref);
    }
    return worst;
}

/// max over |xi0| <= 4 of |fourier_exact - fourier_asymptotic| for (n, n - v).
inline double fourier_asymptotic_error(QuantumNumber n, QuantumNumber v, const OscillatorParams& prm,
                                       std::size_t points = 801)
{
    const AsymptoticIndex idx(n, v);
    double worst = 0.0;
    for (double xi : linspace(-4.0, 4.0, points)) {
        const auto p = MomentumAbscissa::from_xi0(xi, prm);
        worst = std::max(worst, std::abs(fourier_exact({n, n - v}, p, prm) - fourier_asymptotic(idx, p, prm)));
    }
    return worst;
}

/// Sign changes along a sequence, zeros skipped.
inline int count_sign_changes(const std::vector<double>& values)
{
    int count = 0;
    double last = 0.0;
    for (double y : values) {
        if (y == 0.0) continue;
        if (last != 0.0 && (y > 0.0) != (last > 0.0)) ++count;
        last = y;
    }
    return count;
}

/// Exact rho-bar_{n,m} = rho~_{n,m} / sqrt(alpha), one column per m.
inline std::vector<Table> cmd_density(const RunConfig& c)
{
    const QuantumNumber n = detail::single_n(c);
    const std::vector<QuantumNumber> ms = c.m.empty() ? std::vector<QuantumNumber>{n} : c.m;
    const auto& prm = c.units;
    const QuantumNumber top = std::max(n, *std::max_element(ms.begin(), ms.end()));
    const double xmax = classical_amplitude(top, prm);
    const auto grid = c.grid ? c.grid->points() : linspace(-1.2 * xmax, 1.2 * xmax, 2001);
    const double sa = std::sqrt(prm.alpha());

    Table t;
    t.meta = detail::header(c);
    t.meta.emplace_back("formula", "rho_bar = psi_n psi_m / sqrt(alpha)");
    t.columns = {"x", "xi"};
    for (QuantumNumber m : ms) t.columns.push_back("rho_bar_" + std::to_string(n) + "_" + std::to_string(m));
    std::vector<double> h(static_cast<std::size_t>(top) + 1);
    for (double x : grid) {
        specfun::hermite_functions(sa * x, h);
        std::vector<double> row{x, sa * x};
        for (QuantumNumber m : ms) row.push_back(h[n] * h[m]);
        t.rows.push_back(std::move(row));
    }
    return {t};
}

/// Asymptotic rho-bar_{n,n-v}, one table per v, with the peak over
/// |x| <= 0.75 chi and the interior sign-change count as summary.
inline std::vector<Table> cmd_asymptotic(const RunConfig& c)
{
    const QuantumNumber n = detail::single_n(c);
    const std::vector<QuantumNumber> vs = c.v.empty() ? std::vector<QuantumNumber>{0} : c.v;
    const auto& prm = c.units;
    const double sa = std::sqrt(prm.alpha());
    std::vector<Table> out;
    for (QuantumNumber v : vs) {
        const AsymptoticIndex idx(n, v);
        const double chi = turning_amplitude(idx, prm);
        const auto grid = c.grid ? c.grid->points() : linspace(-chi, chi, 2001);
        const auto field = density_asymptotic_field(idx, grid, prm);

        Table t;
        t.name = "v" + std::to_string(v);
        t.meta = detail::header(c);
        t.meta.emplace_back("formula", "rho_bar = prefactor T_v(x/chi) / (pi sqrt(chi^2 - x^2)) / sqrt(alpha)");
        t.meta.emplace_back("chi", format_number(chi));
        t.meta.emplace_back("prefactor", format_number(idx.prefactor()));
        t.meta.emplace_back("endpoint_clamped", field.meta.endpoint_clamped ? "true" : "false");
        t.columns = {"x", "xi", "rho_bar"};

        double peak = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> interior;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double value = field.values[i].real() / sa;
            t.rows.push_back({grid[i], sa * grid[i], value});
            if (std::abs(grid[i]) <= 0.75 * chi) peak = std::isnan(peak) ? std::abs(value) : std::max(peak, std::abs(value));
            if (std::abs(grid[i]) < chi) interior.push_back(value);
        }
        t.summary = {{"v", std::to_string(v)},
                     {"max_abs_rho_bar_inner", format_number(peak)},
                     {"sign_changes", std::to_string(count_sign_changes(interior))}};
        out.push_back(std::move(t));
    }
    return out;
}

/// Convergence sweep over n: averaged-density error and Fourier errors for
/// v = 0, 1, 2.
inline std::vector<Table> cmd_compare(const RunConfig& c)
{
    const std::vector<QuantumNumber> ns = c.n.empty() ? std::vector<QuantumNumber>{10, 50, 100, 500, 1000} : c.n;
    const auto& prm = c.units;
    Table t;
    t.meta = detail::header(c);
    t.meta.emplace_back("density_error", "max |local_average(rho_nn) - classical| / classical over |x| <= 0.75 x_n, 61 points");
    t.meta.emplace_back("fourier_error", "max |exact - asymptotic| over |xi0| <= 4, 801 points");
    t.columns = {"n", "density_max_rel_error", "fourier_max_error_v0", "fourier_max_error_v1", "fourier_max_error_v2"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    bool density_decreasing = true;
    double last = std::numeric_limits<double>::infinity();
    for (QuantumNumber n : ns) {
        if (n < 1) throw ConfigError("compare: n must be >= 1");
        std::vector<double> row{static_cast<double>(n), averaged_density_error(n, c.k, prm)};
        for (QuantumNumber v = 0; v <= 2; ++v) row.push_back(v <= n ? fourier_asymptotic_error(n, v, prm) : nan);
        density_decreasing = density_decreasing && row[1] < last;
        last = row[1];
        t.rows.push_back(std::move(row));
    }
    t.summary = {{"density_error_strictly_decreasing", density_decreasing ? "true" : "false"}};
    for (const auto& row : t.rows) {
        if (row[0] == 100.0) t.summary.emplace_back("density_error_n100", format_number(row[1]));
    }
    return {t};
}

/// Exact, locally averaged exact, and macroscopic rho(x, t); rows are grouped
/// in blocks of equal t. The averaged column is nan where the window would
/// cross 0.9 x of the lowest state.
inline std::vector<Table> cmd_evolve(const RunConfig& c)
{
    const auto state = make_state(c);
    const auto& prm = c.units;
    const double xmax = classical_amplitude(state.max_n(), prm);
    const double xmin = classical_amplitude(state.min_n(), prm);
    const auto grid = c.grid ? c.grid->points() : linspace(-1.2 * xmax, 1.2 * xmax, 401);
    const auto times = c.times ? c.times->points() : linspace(0.0, prm.period(), 5);
    const QuantumNumber vmax = c.vmax ? *c.vmax : default_vmax(state);
    const double lambda = density_wavelength({state.max_n(), state.max_n()}, prm);

    Table t;
    t.meta = detail::header(c);
    t.meta.emplace_back("vmax_used", std::to_string(vmax));
    t.meta.emplace_back("window", "k local wavelengths of the lowest state, |x| + eps <= 0.9 x_min");
    t.columns = {"t", "x", "exact", "averaged", "macroscopic"};
    for (double time : times) {
        for (double x : grid) {
            double averaged = std::numeric_limits<double>::quiet_NaN();
            if (std::abs(x) < kWindowClamp * xmin) {
                const auto w = default_window(state.min_n(), x, c.k, prm);
                averaged = local_average([&](double y) { return density_matrix_xt(state, y, time, prm); }, x, w,
                                         averaging_quadrature(w, lambda));
            }
            t.rows.push_back({time, x, density_matrix_xt(state, x, time, prm), averaged,
                              macroscopic_density_xt(state, x, time, vmax, prm)});
        }
    }
    return {t};
}

/// Exact and asymptotic <O>(t).
inline std::vector<Table> cmd_expect(const RunConfig& c)
{
    const auto state = make_state(c);
    const auto obs = make_observable(c.obs);
    const auto& prm = c.units;
    const auto times = c.times ? c.times->points() : linspace(0.0, prm.period(), 101);
    const QuantumNumber vmax = c.vmax ? *c.vmax : *obs.polynomial_degree;
    MatrixElementCache cache(prm);

    Table t;
    t.meta = detail::header(c);
    t.meta.emplace_back("vmax_used", std::to_string(vmax));
    t.columns = {"t", "exact", "asymptotic"};
    for (double time : times) {
        t.rows.push_back({time, expectation_exact(state, obs, time, prm, std::nullopt, &cache),
                          expectation_asymptotic(state, obs, time, vmax, prm)});
    }
    return {t};
}

inline std::vector<Table> run(const RunConfig& c)
{
    c.validate();
    if (c.command == "density") return cmd_density(c);
    if (c.command == "asymptotic") return cmd_asymptotic(c);
    if (c.command == "compare") return cmd_compare(c);
    if (c.command == "evolve") return cmd_evolve(c);
    return cmd_expect(c);
}

inline void write_csv(const Table& t, std::ostream& os)
{
    for (const auto& [k, v] : t.meta) os << "# " << k << '=' << v << '\n';
    for (const auto& [k, v] : t.summary) os << "# summary." << k << '=' << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
}

/// out with "_<name>" inserted before the extension; out itself for an
/// unnamed table.
inline std::string output_path(const std::string& out, const std::string& name)
{
    if (name.empty()) return out;
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + "_" + name;
    return out.substr(0, dot) + "_" + name + out.substr(dot);
}

/// Runs `body` and maps exceptions to exit codes, reporting on `err`.
inline int guarded(const std::function<void()>& body, std::ostream& err)
{
    try {
        body();
        return exit_ok;
    } catch (const NumericRefusal& e) {
        err << "numeric refusal: " << e.what() << '\n';
        return exit_refusal;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const DomainError& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const ContractViolation& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

} // namespace macroqm::cli
