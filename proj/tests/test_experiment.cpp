#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geoscatter/errors.hpp"
#include "geoscatter/experiment.hpp"

using namespace geoscatter;
using namespace geoscatter::experiment;
namespace fs = std::filesystem;

namespace {

fs::path const kSource = GEOSCATTER_SOURCE_DIR;

std::string slurp(fs::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch(std::string const& name)
{
    auto const dir = fs::temp_directory_path() / "geoscatter_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::vector<std::string> problems_of(std::string const& text)
{
    try {
        parse_scenario(text);
    } catch (ScenarioError const& e) {
        return e.problems();
    }
    return {};
}

char const* kMinimal = R"({
  "defects": [{"position": [0, 0]}],
  "sweep": {"kind": "theta_sweep", "min": 0, "max": 6.283185307179586, "count": 5, "fixed": 1.0}
})";

}  // namespace

TEST_CASE("minimal flat-plane single-defect scenario")
{
    auto const s = parse_scenario(kMinimal);
    CHECK(s.bumps.empty());
    REQUIRE(s.defects.size() == 1);
    CHECK(s.defects[0].coupling == Complex(0.5, 0.0));
    CHECK(s.lambda1 == 0.5);
    CHECK(s.lambda2 == -0.5);
    CHECK(s.theta0 == 0.0);
    CHECK(s.effective_length_scale() == 1.0);
    CHECK(s.setup().surface.empty());
}

TEST_CASE("defaults are recorded and echoed")
{
    auto const s = parse_scenario(R"({
      "lambda1": 0.5,
      "bumps": [{"center": [0, 0], "sigma": 2}],
      "sweep": {"kind": "k_sweep", "min": 0.5, "max": 1, "count": 2, "fixed": [0]}
    })");
    CHECK(s.lambda2 == -0.5);
    CHECK(*s.bumps[0].eta == 0.1);
    CHECK(s.effective_length_scale() == 2.0);
    auto const result = run_sweep(s, 1u);
    auto const comments = header_comments(s, result);
    std::string const csv = format_csv(result.rows, comments);
    CHECK(csv.find("# default: lambda2 = -0.5\n") != std::string::npos);
    CHECK(csv.find("# default: theta0 = 0\n") != std::string::npos);
    CHECK(csv.find("# default: bumps[0].eta = 0.1\n") != std::string::npos);
    CHECK(csv.find("lambda1 = ") == std::string::npos);
}

TEST_CASE("scenario round trip")
{
    auto const path = kSource / "scenarios" / "fig3a_distant_x_k_sweep.json";
    auto const s = load_scenario(path);
    REQUIRE(s.defects.size() == 1);
    CHECK(s.defects[0].position == Vec2(3, 0));
    std::string const once = serialize_scenario(s);
    auto const again = parse_scenario(once);
    CHECK(serialize_scenario(again) == once);
    CHECK(again.sweep.fixed == s.sweep.fixed);
    CHECK(again.bumps[0].eta == s.bumps[0].eta);

    Scenario complex_coupling = parse_scenario(kMinimal);
    complex_coupling.defects[0].coupling = {0.5, -0.25};
    complex_coupling.options.cross_terms = CrossTermMode::Separate;
    auto const back = parse_scenario(serialize_scenario(complex_coupling));
    CHECK(back.defects[0].coupling == Complex(0.5, -0.25));
    CHECK(back.options.cross_terms == CrossTermMode::Separate);
}

TEST_CASE("every shipped scenario validates")
{
    int count = 0;
    for (auto const& entry : fs::directory_iterator(kSource / "scenarios")) {
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_scenario(entry.path()));
        ++count;
    }
    CHECK(count >= 18);
}

TEST_CASE("scenario validation collects every problem")
{
    auto const problems = problems_of(R"({
      "lambda1": "half",
      "colour": 1,
      "bumps": [{"center": [0, 0], "sigma": -1, "eta": 0.1, "delta": 0.2}],
      "defects": [{"position": [0, 0], "coupling": 0}, {"coupling": 1}],
      "sweep": {"kind": "k_sweep", "min": 2, "max": 1, "count": 1, "fixed": []}
    })");
    auto has = [&](std::string const& needle) {
        for (auto const& p : problems)
            if (p.find(needle) != std::string::npos)
                return true;
        return false;
    };
    CHECK(has("lambda1: expected a number"));
    CHECK(has("colour: unknown key"));
    CHECK(has("bumps[0].sigma: must be > 0"));
    CHECK(has("bumps[0]: give either eta or delta"));
    CHECK(has("defects[0].coupling: must be finite and nonzero"));
    CHECK(has("defects[1].position: required"));
    CHECK(has("sweep: min must be < max"));
    CHECK(has("sweep.count"));
    CHECK(has("sweep.fixed: must not be empty"));
    CHECK(problems.size() >= 9);

    CHECK(problems_of(R"({"sweep": {"kind": "k_sweep", "min": 1, "max": 2, "count": 3, "fixed": 0},
                          "options": {"central_distant_cross_terms": "maybe"}})")
              .size() == 1);
    CHECK(problems_of(R"({"bumps": []})").size() == 1);
}

TEST_CASE("syntax errors report line and column")
{
    try {
        parse_scenario("{\n  \"lambda1\": 0.5,\n  \"lambda2\": ,\n}");
        FAIL("expected ScenarioError");
    } catch (ScenarioError const& e) {
        REQUIRE(e.problems().size() == 1);
        CHECK(e.problems()[0].find("line 3, column 14") != std::string::npos);
    }
    CHECK_THROWS_AS(load_scenario(scratch("missing.json")), std::runtime_error);
}

TEST_CASE("flat sweep has no geometric contribution")
{
    auto s = parse_scenario(kMinimal);
    s.bumps.push_back({});
    s.bumps[0].eta = 0.0;
    auto const result = run_sweep(s, 2u);
    REQUIRE(result.rows.size() == 5);
    for (auto const& r : result.rows) {
        CHECK(r.delta_dcs_over_sigma == 0.0);
        CHECK(r.re_f1 == 0.0);
        CHECK(r.dcs_over_sigma >= 0.0);
    }
}

TEST_CASE("theta sweep is 2 pi periodic")
{
    auto const s = parse_scenario(R"({
      "bumps": [{"center": [0, 0], "sigma": 1, "eta": 0.1}],
      "defects": [{"position": [0, 0], "coupling": 0.5}],
      "sweep": {"kind": "theta_sweep", "min": 0.3, "max": 12.866370614359172, "count": 3, "fixed": 1}
    })");
    auto const rows = run_sweep(s, 1u).rows;
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].re_f1 == doctest::Approx(rows[0].re_f1).epsilon(1e-12));
    CHECK(rows[2].im_f1 == doctest::Approx(rows[0].im_f1).epsilon(1e-12));
    CHECK(rows[2].dcs_over_sigma == doctest::Approx(rows[0].dcs_over_sigma).epsilon(1e-12));
}

TEST_CASE("sweep ordering and determinism")
{
    auto const s = load_scenario(kSource / "scenarios" / "fig7a_central_distant_k_sweep.json");
    auto const one = run_sweep(s, 1u);
    auto const many = run_sweep(s, 8u);
    REQUIRE(one.rows.size() == 240);
    CHECK(format_csv(one.rows, header_comments(s, one)) == format_csv(many.rows, header_comments(s, many)));
    for (std::size_t i = 1; i < one.rows.size(); ++i)
        CHECK(one.rows[i - 1].k_sigma <= one.rows[i].k_sigma);
    CHECK(one.rows[0].theta == s.sweep.fixed[0]);
    CHECK(one.rows[3].theta == s.sweep.fixed[3]);
    CHECK(one.rows.back().k_sigma == 3.0);
}

TEST_CASE("too many failed points abort the sweep")
{
    auto const s = parse_scenario(R"({
      "defects": [{"position": [0, 0], "coupling": {"re": 0, "im": 2}}],
      "sweep": {"kind": "k_sweep", "min": 0.5, "max": 1, "count": 4, "fixed": 0}
    })");
    CHECK_THROWS_WITH_AS(run_sweep(s, 1u), doctest::Contains("4 of 4 sweep points failed"), std::runtime_error);
}

TEST_CASE("CSV contract")
{
    std::vector<SweepRow> rows{{0.1, 0.0, -0.5, 0.25, 1e-300, -3.0, 0.1 + 0.2, -1.0 / 3.0},
                               {3.0, 3.141592653589793, 0, -0.0, 5e-324, 1.7976931348623157e308, 2, 1}};
    auto const path = scratch("two_rows.csv");
    emit_csv(rows, path);
    std::string const text = slurp(path);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.substr(0, text.find('\n')) == "k_sigma,theta,re_f0,im_f0,re_f1,im_f1,dcs_over_sigma,delta_dcs_over_sigma");
    CHECK(parse_csv(text) == rows);
    CHECK(parse_csv(format_csv(rows, {"# a comment", "another"})) == rows);
    CHECK(format_csv(rows, {"another"}).rfind("# another\n", 0) == 0);
    CHECK_THROWS(emit_csv({}, path));
    CHECK_THROWS(emit_csv(rows, scratch("no/such/dir/x.csv")));
    CHECK_THROWS(parse_csv("k_sigma,theta\n1,2\n"));
    CHECK_THROWS(parse_csv(std::string(kCsvHeader) + "\n1,2,3\n"));
}

TEST_CASE("plot script references the CSV relatively")
{
    auto const dir = scratch("plots");
    fs::create_directories(dir / "data");
    emit_plot_script(SweepKind::K, dir / "data" / "out.csv", dir / "plot.py");
    std::string const script = slurp(dir / "plot.py");
    CHECK(script.find("\"data/out.csv\"") != std::string::npos);
    CHECK(script.find(dir.string()) == std::string::npos);
    CHECK(script.find("x_name, group_name = \"k_sigma\", \"theta\"") != std::string::npos);
}

TEST_CASE("thread cap from the environment")
{
    setenv("GEOSCATTER_THREADS", "3", 1);
    CHECK(thread_cap() == 3u);
    setenv("GEOSCATTER_THREADS", "zero", 1);
    CHECK_THROWS_AS(thread_cap(), InvalidConfigurationError);
    unsetenv("GEOSCATTER_THREADS");
    CHECK(thread_cap() >= 1u);
}

TEST_CASE("oracle comparison table")
{
    auto const s = load_scenario(kSource / "scenarios" / "fig7a_central_distant_k_sweep.json");
    auto const checks = run_oracle(s);
    REQUIRE(checks.size() == 4);
    for (auto const& c : checks) {
        CAPTURE(c.name);
        CHECK(c.pass);
        CHECK(c.relative_error <= 1e-6);
    }
}
