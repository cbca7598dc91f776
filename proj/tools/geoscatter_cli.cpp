#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "geoscatter/errors.hpp"
#include "geoscatter/experiment.hpp"

namespace ex = geoscatter::experiment;

namespace {

int report_scenario_error(geoscatter::ScenarioError const& e)
{
    std::cerr << "invalid scenario:\n";
    for (auto const& p : e.problems())
        std::cerr << "  " << p << "\n";
    return 1;
}

int run(std::string const& scenario_path, std::string const& csv_path, std::string const& plot_path,
        unsigned threads)
{
    auto const scenario = ex::load_scenario(scenario_path);
    std::optional<unsigned> cap;
    if (threads > 0)
        cap = threads;
    auto const result = ex::run_sweep(scenario, cap);
    for (auto const& w : result.warnings)
        std::cerr << "warning: " << w << "\n";
    for (auto const& f : result.failures)
        std::cerr << "failed: " << f << "\n";
    ex::emit_csv(result.rows, csv_path, ex::header_comments(scenario, result));
    if (!plot_path.empty())
        ex::emit_plot_script(scenario.sweep.kind, csv_path, plot_path);
    std::cerr << result.rows.size() << " rows written to " << csv_path << "\n";
    return 0;
}

int validate(std::string const& scenario_path)
{
    auto const scenario = ex::load_scenario(scenario_path);
    auto const setup = scenario.setup();
    for (auto const& w : setup.surface.separation_warnings())
        std::cout << "warning: " << w << "\n";
    for (auto const& b : setup.surface.bumps)
        for (auto const& w : b.profile.check_admissible())
            std::cout << "warning: " << w << "\n";
    for (auto const& d : scenario.defaults_applied)
        std::cout << "default: " << d << "\n";
    std::cout << scenario_path << ": ok (" << scenario.bumps.size() << " bumps, " << scenario.defects.size()
              << " defects, " << scenario.sweep.grid().size() * scenario.sweep.fixed.size() << " points)\n";
    return 0;
}

int oracle(std::string const& scenario_path, double tolerance)
{
    auto const scenario = ex::load_scenario(scenario_path);
    auto const checks = ex::run_oracle(scenario, tolerance);
    bool ok = true;
    std::printf("%-28s %-46s %-46s %-10s %s\n", "quantity", "radial", "planar", "rel_err", "result");
    for (auto const& c : checks) {
        char radial[64], planar[64];
        std::snprintf(radial, sizeof radial, "%.15g%+.15gi", c.value.real(), c.value.imag());
        std::snprintf(planar, sizeof planar, "%.15g%+.15gi", c.reference.real(), c.reference.imag());
        std::printf("%-28s %-46s %-46s %-10.3g %s\n", c.name.c_str(), radial, planar, c.relative_error,
                    c.pass ? "PASS" : "FAIL");
        ok = ok && c.pass;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Scattering amplitudes on curved surfaces with point defects"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string csv_path;
    std::string plot_path;
    unsigned threads = 0;
    auto* run_cmd = app.add_subcommand("run", "Evaluate a scenario sweep and write CSV");
    run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("-o,--output", csv_path, "Output CSV path")->required();
    run_cmd->add_option("--plot", plot_path, "Also write a matplotlib script to this path");
    run_cmd->add_option("-j,--threads", threads, "Worker threads (default: GEOSCATTER_THREADS or all cores)");

    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
    validate_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);

    double tolerance = 1e-6;
    auto* oracle_cmd = app.add_subcommand("oracle", "Compare radial integrals with planar quadrature");
    oracle_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    oracle_cmd->add_option("--tolerance", tolerance, "Relative tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd)
            return run(scenario_path, csv_path, plot_path, threads);
        if (*validate_cmd)
            return validate(scenario_path);
        return oracle(scenario_path, tolerance);
    } catch (geoscatter::ScenarioError const& e) {
        return report_scenario_error(e);
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
