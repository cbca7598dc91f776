#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoscatter/geom_amp.hpp"
#include "geoscatter/quad.hpp"
#include "geoscatter/types.hpp"

namespace geoscatter::experiment {

// Gaussian bump. Exactly one of eta, delta is set after loading.
struct BumpSpec {
    Vec2 center = Vec2::Zero();
    double sigma = 1.0;
    std::optional<double> eta;
    std::optional<double> delta;

    GaussianBumpParams params() const;
};

struct DefectSpec {
    Vec2 position = Vec2::Zero();
    Complex coupling{0.5, 0.0};
};

enum class SweepKind { K, Theta };

/*!
 * A k-sweep varies k sigma over the grid at each fixed outgoing angle theta;
 * a theta-sweep varies theta at each fixed k sigma.
 */
struct Sweep {
    SweepKind kind = SweepKind::K;
    double min = 0.1;
    double max = 3.0;
    int count = 60;
    std::vector<double> fixed{0.0};

    std::vector<double> grid() const;
};

struct Scenario {
    std::string name = "unnamed";
    double lambda1 = 0.5;
    double lambda2 = -0.5;
    double theta0 = 0.0;
    std::vector<BumpSpec> bumps;
    std::vector<DefectSpec> defects;
    AssemblyOptions options;
    quad::QuadratureSpec quadrature;
    std::optional<double> length_scale;
    Sweep sweep;

    // "key = value" for every default that was filled in while loading
    std::vector<std::string> defaults_applied;

    // Explicit length_scale, else the first bump's sigma, else 1.
    double effective_length_scale() const;
    ScatteringSetup setup() const;
};

/*!
 * Parses and validates a scenario document. Syntax errors report line and
 * column; schema problems (unknown keys, wrong types, out-of-range values)
 * are all collected into one ScenarioError.
 */
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(std::filesystem::path const& path);

// Fully explicit JSON; parse_scenario(serialize_scenario(s)) reproduces s.
std::string serialize_scenario(Scenario const& scenario);

struct SweepRow {
    double k_sigma = 0;
    double theta = 0;
    double re_f0 = 0;
    double im_f0 = 0;
    double re_f1 = 0;
    double im_f1 = 0;
    double dcs_over_sigma = 0;
    double delta_dcs_over_sigma = 0;

    bool operator==(SweepRow const&) const = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
};

// GEOSCATTER_THREADS if set, else the hardware concurrency.
unsigned thread_cap();

/*!
 * Evaluates every grid point. Rows are ordered by the swept variable, then
 * by the order of the fixed values. Failed points are reported in
 * failures and omitted; more than 10% failures throws std::runtime_error.
 * Amplitudes are reported in units of sqrt(length scale).
 */
SweepResult run_sweep(Scenario const& scenario, std::optional<unsigned> threads = std::nullopt);

inline constexpr std::string_view kCsvHeader
    = "k_sigma,theta,re_f0,im_f0,re_f1,im_f1,dcs_over_sigma,delta_dcs_over_sigma";

// '#'-prefixed lines describing the scenario, its applied defaults and run warnings.
std::vector<std::string> header_comments(Scenario const& scenario, SweepResult const& result);

std::string format_csv(std::vector<SweepRow> const& rows, std::vector<std::string> const& comments = {});
void emit_csv(std::vector<SweepRow> const& rows, std::filesystem::path const& path,
              std::vector<std::string> const& comments = {});
std::vector<SweepRow> parse_csv(std::string_view text);

// Matplotlib script that reads csv_path (stored relative to the script).
void emit_plot_script(SweepKind kind, std::filesystem::path const& csv_path,
                      std::filesystem::path const& script_path);

struct OracleCheck {
    std::string name;
    Complex value;
    Complex reference;
    double relative_error = 0;
    double tolerance = 0;
    bool pass = false;
};

/*!
 * Compares the radial reductions with direct planar quadrature for each
 * bump of the scenario at its first grid point.
 */
std::vector<OracleCheck> run_oracle(Scenario const& scenario, double tolerance = 1e-6);

}  // namespace geoscatter::experiment
