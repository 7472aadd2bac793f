// macroqm: exact and asymptotic oscillator densities as CSV/JSON tables.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "macroqm/commands.hpp"

namespace {

using macroqm::cli::ConfigError;
using macroqm::cli::Table;

nlohmann::ordered_json to_json(const Table& t)
{
    nlohmann::ordered_json j;
    j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) j["meta"][k] = v;
    j["summary"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.summary) j["summary"][k] = v;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        auto r = nlohmann::ordered_json::array();
        for (double x : row) {
            if (std::isfinite(x)) {
                r.push_back(x);
            } else {
                r.push_back(nullptr);
            }
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

void write(const Table& t, macroqm::cli::OutputFormat format, std::ostream& os)
{
    if (format == macroqm::cli::OutputFormat::json) {
        os << to_json(t).dump(2) << '\n';
    } else {
        macroqm::cli::write_csv(t, os);
    }
}

void emit(const std::vector<Table>& tables, const macroqm::cli::RunConfig& cfg)
{
    if (cfg.out.empty()) {
        for (std::size_t i = 0; i < tables.size(); ++i) {
            if (i) std::cout << '\n';
            write(tables[i], cfg.format, std::cout);
        }
        return;
    }
    for (const auto& t : tables) {
        const std::string path = macroqm::cli::output_path(cfg.out, t.name);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file " + path);
        write(t, cfg.format, f);
        if (!f) throw ConfigError("failed writing " + path);
        std::cout << path;
        for (const auto& [k, v] : t.summary) std::cout << ' ' << k << '=' << v;
        std::cout << '\n';
    }
}

void add_options(CLI::App* sub, macroqm::cli::RunConfig& cfg, std::string& grid, std::string& times,
                 std::vector<double>& units, std::string& format, std::optional<unsigned>& vmax)
{
    sub->add_option("--n", cfg.n, "Quantum number(s), comma separated")->delimiter(',');
    sub->add_option("--m", cfg.m, "Second index list (density)")->delimiter(',');
    sub->add_option("--v", cfg.v, "Offsets v (asymptotic)")->delimiter(',');
    sub->add_option("--nbar", cfg.nbar, "Discrete Gaussian centre");
    sub->add_option("--sigma", cfg.sigma, "Discrete Gaussian width");
    sub->add_option("--coeffs", cfg.coeffs, "Coefficients n:re[:im],...");
    sub->add_option("--grid", grid, "Position grid lo:hi:count");
    sub->add_option("--times", times, "Time grid lo:hi:count");
    sub->add_option("--k", cfg.k, "Averaging window in local wavelengths")->capture_default_str();
    sub->add_option("--vmax", vmax, "Largest offset |v| in macroscopic sums");
    sub->add_option("--obs", cfg.obs, "Observable: x, x2 or poly:c0,c1,...")->capture_default_str();
    sub->add_option("--units", units, "m,omega,hbar")->delimiter(',')->expected(3);
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "Output path (stdout when absent)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact and asymptotic harmonic-oscillator densities"};
    app.set_version_flag("--version", std::string(macroqm::version));
    app.require_subcommand(1);

    macroqm::cli::RunConfig cfg;
    std::string grid;
    std::string times;
    std::vector<double> units;
    std::string format = "csv";
    std::optional<unsigned> vmax;

    const std::pair<const char*, const char*> commands[] = {
        {"density", "Exact rho-bar_{n,m} on a grid"},
        {"asymptotic", "Asymptotic rho-bar_{n,n-v}, one file per v"},
        {"compare", "Convergence sweep over n"},
        {"evolve", "Exact, averaged and macroscopic rho(x,t)"},
        {"expect", "Exact and asymptotic <O>(t)"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_options(sub, cfg, grid, times, units, format, vmax);
        sub->callback([&cfg, name = std::string(name)] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return macroqm::cli::exit_config;
    }

    return macroqm::cli::guarded(
        [&] {
            if (!grid.empty()) cfg.grid = macroqm::cli::GridSpec::parse(grid);
            if (!times.empty()) cfg.times = macroqm::cli::GridSpec::parse(times);
            if (!units.empty()) cfg.units = macroqm::OscillatorParams(units[0], units[1], units[2]);
            cfg.vmax = vmax;
            cfg.format = format == "json" ? macroqm::cli::OutputFormat::json : macroqm::cli::OutputFormat::csv;
            emit(macroqm::cli::run(cfg), cfg);
        },
        std::cerr);
}
