#include "geoscatter/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "geoscatter/errors.hpp"
#include "geoscatter/planar_oracle.hpp"

namespace geoscatter::experiment {
namespace {

using nlohmann::json;

std::string position_in(std::string_view text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Collects schema violations while walking the document.
class Reader {
  public:
    std::vector<std::string> problems;

    void fail(std::string const& where, std::string const& what) { problems.push_back(where + ": " + what); }

    bool object(json const& node, std::string const& where, std::set<std::string> const& allowed)
    {
        if (!node.is_object()) {
            fail(where, "expected an object");
            return false;
        }
        for (auto const& item : node.items()) {
            if (!allowed.count(item.key()))
                fail(where + "." + item.key(), "unknown key");
        }
        return true;
    }

    std::optional<double> number(json const& obj, std::string const& key, std::string const& where)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            return std::nullopt;
        if (!it->is_number()) {
            fail(where + "." + key, "expected a number");
            return std::nullopt;
        }
        double const v = it->get<double>();
        if (!std::isfinite(v)) {
            fail(where + "." + key, "must be finite");
            return std::nullopt;
        }
        return v;
    }

    std::optional<Vec2> point(json const& obj, std::string const& key, std::string const& where)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            return std::nullopt;
        if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
            fail(where + "." + key, "expected [x, y]");
            return std::nullopt;
        }
        Vec2 const p((*it)[0].get<double>(), (*it)[1].get<double>());
        if (!p.allFinite()) {
            fail(where + "." + key, "must be finite");
            return std::nullopt;
        }
        return p;
    }
};

void read_bumps(Reader& rd, json const& doc, Scenario& s)
{
    auto it = doc.find("bumps");
    if (it == doc.end())
        return;
    if (!it->is_array()) {
        rd.fail("bumps", "expected an array");
        return;
    }
    for (std::size_t m = 0; m < it->size(); ++m) {
        std::string const where = "bumps[" + std::to_string(m) + "]";
        json const& node = (*it)[m];
        if (!rd.object(node, where, {"center", "sigma", "eta", "delta"}))
            continue;
        BumpSpec b;
        if (auto c = rd.point(node, "center", where))
            b.center = *c;
        if (auto v = rd.number(node, "sigma", where)) {
            b.sigma = *v;
            if (!(b.sigma > 0))
                rd.fail(where + ".sigma", "must be > 0");
        } else if (!node.contains("sigma")) {
            s.defaults_applied.push_back(where + ".sigma = 1");
        }
        b.eta = rd.number(node, "eta", where);
        b.delta = rd.number(node, "delta", where);
        if (b.eta && b.delta)
            rd.fail(where, "give either eta or delta, not both");
        if (b.eta && !(*b.eta >= 0))
            rd.fail(where + ".eta", "must be >= 0");
        if (!node.contains("eta") && !node.contains("delta")) {
            b.eta = 0.1;
            s.defaults_applied.push_back(where + ".eta = 0.1");
        }
        s.bumps.push_back(b);
    }
}

void read_defects(Reader& rd, json const& doc, Scenario& s)
{
    auto it = doc.find("defects");
    if (it == doc.end())
        return;
    if (!it->is_array()) {
        rd.fail("defects", "expected an array");
        return;
    }
    for (std::size_t j = 0; j < it->size(); ++j) {
        std::string const where = "defects[" + std::to_string(j) + "]";
        json const& node = (*it)[j];
        if (!rd.object(node, where, {"position", "coupling"}))
            continue;
        DefectSpec d;
        if (auto p = rd.point(node, "position", where))
            d.position = *p;
        else if (!node.contains("position"))
            rd.fail(where + ".position", "required");

        auto c = node.find("coupling");
        if (c == node.end()) {
            s.defaults_applied.push_back(where + ".coupling = 0.5");
        } else if (c->is_number()) {
            d.coupling = {c->get<double>(), 0.0};
        } else if (c->is_object()) {
            if (rd.object(*c, where + ".coupling", {"re", "im"})) {
                d.coupling = {rd.number(*c, "re", where + ".coupling").value_or(0.0),
                              rd.number(*c, "im", where + ".coupling").value_or(0.0)};
            }
        } else {
            rd.fail(where + ".coupling", "expected a number or {\"re\", \"im\"}");
        }
        if (!std::isfinite(d.coupling.real()) || !std::isfinite(d.coupling.imag()) || d.coupling == Complex{})
            rd.fail(where + ".coupling", "must be finite and nonzero");
        s.defects.push_back(d);
    }
    for (std::size_t j = 0; j < s.defects.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (s.defects[i].position == s.defects[j].position)
                rd.fail("defects", "defects " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

void read_options(Reader& rd, json const& doc, Scenario& s)
{
    auto it = doc.find("options");
    if (it == doc.end() || !rd.object(*it, "options", {"central_distant_cross_terms", "transfer_matrix_convention"}))
        return;
    if (auto c = it->find("central_distant_cross_terms"); c != it->end()) {
        if (*c == "full")
            s.options.cross_terms = CrossTermMode::Full;
        else if (*c == "separate")
            s.options.cross_terms = CrossTermMode::Separate;
        else
            rd.fail("options.central_distant_cross_terms", "expected \"full\" or \"separate\"");
    }
    if (auto t = it->find("transfer_matrix_convention"); t != it->end()) {
        if (t->is_boolean())
            s.options.transfer_matrix_convention = t->get<bool>();
        else
            rd.fail("options.transfer_matrix_convention", "expected true or false");
    }
}

void read_quadrature(Reader& rd, json const& doc, Scenario& s)
{
    auto it = doc.find("quadrature");
    if (it == doc.end()
        || !rd.object(*it, "quadrature", {"rel_tol", "abs_tol", "truncation_radius", "max_subdivisions"}))
        return;
    auto& q = s.quadrature;
    q.rel_tol = rd.number(*it, "rel_tol", "quadrature").value_or(q.rel_tol);
    q.abs_tol = rd.number(*it, "abs_tol", "quadrature").value_or(q.abs_tol);
    q.truncation_radius = rd.number(*it, "truncation_radius", "quadrature").value_or(q.truncation_radius);
    if (auto m = it->find("max_subdivisions"); m != it->end()) {
        if (m->is_number_integer())
            q.max_subdivisions = m->get<int>();
        else
            rd.fail("quadrature.max_subdivisions", "expected an integer");
    }
    try {
        q.validate();
    } catch (std::exception const& e) {
        rd.fail("quadrature", e.what());
    }
}

void read_sweep(Reader& rd, json const& doc, Scenario& s)
{
    auto it = doc.find("sweep");
    if (it == doc.end()) {
        rd.fail("sweep", "required");
        return;
    }
    if (!rd.object(*it, "sweep", {"kind", "min", "max", "count", "fixed"}))
        return;
    Sweep& sw = s.sweep;
    auto kind = it->find("kind");
    if (kind == it->end())
        rd.fail("sweep.kind", "required");
    else if (*kind == "k_sweep")
        sw.kind = SweepKind::K;
    else if (*kind == "theta_sweep")
        sw.kind = SweepKind::Theta;
    else
        rd.fail("sweep.kind", "expected \"k_sweep\" or \"theta_sweep\"");

    for (char const* key : {"min", "max", "count", "fixed"})
        if (!it->contains(key))
            rd.fail(std::string("sweep.") + key, "required");
    auto const lo = rd.number(*it, "min", "sweep");
    auto const hi = rd.number(*it, "max", "sweep");
    if (lo)
        sw.min = *lo;
    if (hi)
        sw.max = *hi;
    if (lo && hi && !(sw.min < sw.max))
        rd.fail("sweep", "min must be < max");
    if (auto c = it->find("count"); c != it->end()) {
        if (!c->is_number_integer() || c->get<long long>() < 2 || c->get<long long>() > 1000000)
            rd.fail("sweep.count", "expected an integer >= 2");
        else
            sw.count = c->get<int>();
    }
    if (auto f = it->find("fixed"); f != it->end()) {
        sw.fixed.clear();
        json const list = f->is_array() ? *f : json::array({*f});
        for (auto const& v : list) {
            if (!v.is_number() || !std::isfinite(v.get<double>()))
                rd.fail("sweep.fixed", "expected finite numbers");
            else
                sw.fixed.push_back(v.get<double>());
        }
        if (sw.fixed.empty())
            rd.fail("sweep.fixed", "must not be empty");
    }
    if (sw.kind == SweepKind::K && lo && !(sw.min > 0))
        rd.fail("sweep.min", "k sigma must be > 0");
    if (sw.kind == SweepKind::Theta)
        for (double v : sw.fixed)
            if (!(v > 0))
                rd.fail("sweep.fixed", "k sigma must be > 0");
}

json to_json(Scenario const& s)
{
    json doc;
    doc["name"] = s.name;
    doc["lambda1"] = s.lambda1;
    doc["lambda2"] = s.lambda2;
    doc["theta0"] = s.theta0;
    if (s.length_scale)
        doc["length_scale"] = *s.length_scale;
    doc["bumps"] = json::array();
    for (auto const& b : s.bumps) {
        json node{{"center", {b.center.x(), b.center.y()}}, {"sigma", b.sigma}};
        if (b.eta)
            node["eta"] = *b.eta;
        else
            node["delta"] = b.delta.value_or(0.0);
        doc["bumps"].push_back(node);
    }
    doc["defects"] = json::array();
    for (auto const& d : s.defects) {
        json coupling = d.coupling.imag() == 0.0 ? json(d.coupling.real())
                                                : json{{"re", d.coupling.real()}, {"im", d.coupling.imag()}};
        doc["defects"].push_back({{"position", {d.position.x(), d.position.y()}}, {"coupling", coupling}});
    }
    doc["options"] = {{"central_distant_cross_terms",
                       s.options.cross_terms == CrossTermMode::Full ? "full" : "separate"},
                      {"transfer_matrix_convention", s.options.transfer_matrix_convention}};
    doc["quadrature"] = {{"rel_tol", s.quadrature.rel_tol},
                         {"abs_tol", s.quadrature.abs_tol},
                         {"truncation_radius", s.quadrature.truncation_radius},
                         {"max_subdivisions", s.quadrature.max_subdivisions}};
    doc["sweep"] = {{"kind", s.sweep.kind == SweepKind::K ? "k_sweep" : "theta_sweep"},
                    {"min", s.sweep.min},
                    {"max", s.sweep.max},
                    {"count", s.sweep.count},
                    {"fixed", s.sweep.fixed}};
    return doc;
}

}  // namespace

GaussianBumpParams BumpSpec::params() const
{
    if (eta)
        return GaussianBumpParams::from_eta(*eta, sigma);
    return {delta.value_or(0.0), sigma};
}

std::vector<double> Sweep::grid() const
{
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = min + (max - min) * i / (count - 1);
    out.back() = max;
    return out;
}

double Scenario::effective_length_scale() const
{
    if (length_scale)
        return *length_scale;
    if (!bumps.empty())
        return bumps.front().sigma;
    return 1.0;
}

ScatteringSetup Scenario::setup() const
{
    ScatteringSetup out;
    for (auto const& b : bumps)
        out.surface.add_gaussian(b.params(), b.center);
    if (!defects.empty()) {
        std::vector<Vec2> pos;
        std::vector<Complex> g;
        for (auto const& d : defects) {
            pos.push_back(d.position);
            g.push_back(d.coupling);
        }
        out.defects = DefectConfiguration(pos, g);
    }
    out.lambda1 = lambda1;
    out.lambda2 = lambda2;
    out.quad = quadrature;
    out.options = options;
    return out;
}

Scenario parse_scenario(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (json::parse_error const& e) {
        throw ScenarioError({"JSON syntax error at " + position_in(text, e.byte == 0 ? 0 : e.byte - 1) + ": "
                             + e.what()});
    }

    Reader rd;
    Scenario s;
    if (!rd.object(doc, "scenario",
                   {"name", "lambda1", "lambda2", "theta0", "length_scale", "bumps", "defects", "options",
                    "quadrature", "sweep"}))
        throw ScenarioError(rd.problems);

    if (auto n = doc.find("name"); n != doc.end()) {
        if (n->is_string())
            s.name = n->get<std::string>();
        else
            rd.fail("name", "expected a string");
    }
    auto scalar = [&](char const* key, double& field, std::string const& fallback) {
        if (auto v = rd.number(doc, key, "scenario"))
            field = *v;
        else if (!doc.contains(key))
            s.defaults_applied.push_back(std::string(key) + " = " + fallback);
    };
    scalar("lambda1", s.lambda1, "0.5");
    scalar("lambda2", s.lambda2, "-0.5");
    scalar("theta0", s.theta0, "0");
    if (auto v = rd.number(doc, "length_scale", "scenario")) {
        if (*v > 0)
            s.length_scale = *v;
        else
            rd.fail("length_scale", "must be > 0");
    }
    read_bumps(rd, doc, s);
    read_defects(rd, doc, s);
    read_options(rd, doc, s);
    read_quadrature(rd, doc, s);
    read_sweep(rd, doc, s);

    if (!rd.problems.empty())
        throw ScenarioError(rd.problems);
    return s;
}

Scenario load_scenario(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (ScenarioError const& e) {
        std::vector<std::string> problems;
        for (auto const& p : e.problems())
            problems.push_back(path.string() + ": " + p);
        throw ScenarioError(problems);
    }
}

std::string serialize_scenario(Scenario const& scenario)
{
    return to_json(scenario).dump(2) + "\n";
}

unsigned thread_cap()
{
    unsigned const hw = std::max(1u, std::thread::hardware_concurrency());
    char const* env = std::getenv("GEOSCATTER_THREADS");
    if (!env || !*env)
        return hw;
    char* end = nullptr;
    long const n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1)
        throw InvalidConfigurationError("GEOSCATTER_THREADS must be a positive integer");
    return static_cast<unsigned>(n);
}

SweepResult run_sweep(Scenario const& scenario, std::optional<unsigned> threads)
{
    AmplitudeEvaluator const evaluator(scenario.setup());
    double const length = scenario.effective_length_scale();
    double const root_length = std::sqrt(length);
    std::vector<double> const grid = scenario.sweep.grid();
    std::vector<double> const& fixed = scenario.sweep.fixed;
    bool const k_sweep = scenario.sweep.kind == SweepKind::K;

    std::size_t const total = grid.size() * fixed.size();
    std::vector<std::optional<SweepRow>> rows(total);
    std::vector<std::string> errors(total);
    std::vector<std::vector<std::string>> row_warnings(total);

    auto evaluate = [&](std::size_t index) {
        double const swept = grid[index / fixed.size()];
        double const held = fixed[index % fixed.size()];
        double const k_sigma = k_sweep ? swept : held;
        double const theta = k_sweep ? held : swept;
        try {
            auto const r = evaluator(Kinematics(k_sigma / length, scenario.theta0, theta));
            SweepRow row;
            row.k_sigma = k_sigma;
            row.theta = theta;
            row.re_f0 = r.f0.real() / root_length;
            row.im_f0 = r.f0.imag() / root_length;
            row.re_f1 = r.f1.real() / root_length;
            row.im_f1 = r.f1.imag() / root_length;
            row.dcs_over_sigma = r.dcs / length;
            row.delta_dcs_over_sigma = r.dcs_minus_dcs0 / length;
            rows[index] = row;
            row_warnings[index] = r.warnings;
        } catch (std::exception const& e) {
            std::ostringstream msg;
            msg << "k_sigma = " << k_sigma << ", theta = " << theta << ": " << e.what();
            errors[index] = msg.str();
        }
    };

    unsigned const workers = static_cast<unsigned>(
        std::min<std::size_t>(total, std::max(1u, threads.value_or(thread_cap()))));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++)
            evaluate(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();

    SweepResult out;
    out.warnings = evaluator.setup().surface.separation_warnings();
    std::set<std::string> seen(out.warnings.begin(), out.warnings.end());
    for (std::size_t i = 0; i < total; ++i) {
        if (rows[i])
            out.rows.push_back(*rows[i]);
        else
            out.failures.push_back(errors[i]);
        for (auto const& w : row_warnings[i])
            if (seen.insert(w).second)
                out.warnings.push_back(w);
    }
    if (out.failures.size() * 10 > total) {
        std::ostringstream msg;
        msg << out.failures.size() << " of " << total << " sweep points failed; first: " << out.failures.front();
        throw std::runtime_error(msg.str());
    }
    return out;
}

std::vector<std::string> header_comments(Scenario const& scenario, SweepResult const& result)
{
    std::vector<std::string> out;
    out.push_back("# scenario: " + scenario.name);
    out.push_back("# length_scale: " + format_double(scenario.effective_length_scale()));
    for (auto const& d : scenario.defaults_applied)
        out.push_back("# default: " + d);
    out.push_back("# input: " + to_json(scenario).dump());
    for (auto const& w : result.warnings)
        out.push_back("# warning: " + w);
    for (auto const& f : result.failures)
        out.push_back("# failed: " + f);
    return out;
}

std::string format_csv(std::vector<SweepRow> const& rows, std::vector<std::string> const& comments)
{
    std::string out;
    for (auto const& c : comments) {
        out += c.rfind('#', 0) == 0 ? c : "# " + c;
        out += '\n';
    }
    out += kCsvHeader;
    out += '\n';
    for (auto const& r : rows) {
        for (double v : {r.k_sigma, r.theta, r.re_f0, r.im_f0, r.re_f1, r.im_f1, r.dcs_over_sigma}) {
            out += format_double(v);
            out += ',';
        }
        out += format_double(r.delta_dcs_over_sigma);
        out += '\n';
    }
    return out;
}

void emit_csv(std::vector<SweepRow> const& rows, std::filesystem::path const& path,
              std::vector<std::string> const& comments)
{
    if (rows.empty())
        throw std::invalid_argument("emit_csv: no rows");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << format_csv(rows, comments);
    if (!out)
        throw std::runtime_error("error writing " + path.string());
}

std::vector<SweepRow> parse_csv(std::string_view text)
{
    std::vector<SweepRow> rows;
    bool header_seen = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t const eol = std::min(text.find('\n', pos), text.size());
        std::string const line(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            if (line != kCsvHeader)
                throw std::runtime_error("parse_csv: unexpected header on line " + std::to_string(line_no));
            header_seen = true;
            continue;
        }
        double v[8];
        char const* cursor = line.c_str();
        for (int c = 0; c < 8; ++c) {
            char* end = nullptr;
            v[c] = std::strtod(cursor, &end);
            if (end == cursor || (c < 7 && *end != ',') || (c == 7 && *end != '\0'))
                throw std::runtime_error("parse_csv: malformed line " + std::to_string(line_no));
            cursor = end + 1;
        }
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
    }
    if (!header_seen)
        throw std::runtime_error("parse_csv: missing header");
    return rows;
}

void emit_plot_script(SweepKind kind, std::filesystem::path const& csv_path,
                      std::filesystem::path const& script_path)
{
    auto const base = script_path.has_parent_path() ? script_path.parent_path() : std::filesystem::path(".");
    auto const rel = std::filesystem::relative(std::filesystem::absolute(csv_path), std::filesystem::absolute(base));
    bool const k_sweep = kind == SweepKind::K;
    std::ofstream out(script_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + script_path.string());
    out << "#!/usr/bin/env python3\n"
        << "import os\n"
        << "import numpy as np\n"
        << "import matplotlib\n"
        << "matplotlib.use(\"Agg\")\n"
        << "import matplotlib.pyplot as plt\n\n"
        << "here = os.path.dirname(os.path.abspath(__file__))\n"
        << "csv = os.path.join(here, \"" << rel.generic_string() << "\")\n"
        << "with open(csv) as handle:\n"
        << "    lines = [line for line in handle if not line.startswith(\"#\")]\n"
        << "data = np.genfromtxt(lines, delimiter=\",\", names=True)\n"
        << "x_name, group_name = " << (k_sweep ? "\"k_sigma\", \"theta\"" : "\"theta\", \"k_sigma\"") << "\n"
        << "fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))\n"
        << "for value in np.unique(data[group_name]):\n"
        << "    sel = data[group_name] == value\n"
        << "    label = f\"{group_name} = {value:.4g}\"\n"
        << "    left.plot(data[x_name][sel], data[\"dcs_over_sigma\"][sel], label=label)\n"
        << "    right.plot(data[x_name][sel], data[\"delta_dcs_over_sigma\"][sel], label=label)\n"
        << "left.set_xlabel(x_name)\n"
        << "left.set_ylabel(\"|f|^2 / sigma\")\n"
        << "right.set_xlabel(x_name)\n"
        << "right.set_ylabel(\"(|f|^2 - |f0|^2) / sigma\")\n"
        << "left.legend()\n"
        << "fig.tight_layout()\n"
        << "fig.savefig(os.path.splitext(csv)[0] + \".png\", dpi=150)\n";
    if (!out)
        throw std::runtime_error("error writing " + script_path.string());
}

std::vector<OracleCheck> run_oracle(Scenario const& scenario, double tolerance)
{
    ScatteringSetup const setup = scenario.setup();
    double const length = scenario.effective_length_scale();
    bool const k_sweep = scenario.sweep.kind == SweepKind::K;
    double const k_sigma = k_sweep ? scenario.sweep.min : scenario.sweep.fixed.front();
    double const theta = k_sweep ? scenario.sweep.fixed.front() : scenario.sweep.min;
    Kinematics const kin(k_sigma / length, scenario.theta0, theta);

    std::vector<OracleCheck> out;
    auto record = [&](std::string name, Complex value, Complex reference) {
        double const scale = std::abs(reference) > 0 ? std::abs(reference) : 1.0;
        double const err = std::abs(value - reference) / scale;
        out.push_back({std::move(name), value, reference, err, tolerance, err <= tolerance});
    };

    double const l1 = scenario.lambda1;
    double const l2 = scenario.lambda2;
    auto const& quad = scenario.quadrature;
    for (std::size_t m = 0; m < setup.surface.bumps.size(); ++m) {
        auto const& bump = setup.surface.bumps[m];
        GeometricIntegrals const ints(bump.profile, l1, l2, quad);
        std::string const tag = "bump " + std::to_string(m) + ": ";
        record(tag + "I0", ints.i0(kin), planar::I0(bump.profile, kin, l1, l2, quad));
        auto const c = ints.central(kin.k);
        record(tag + "I11", c.i11, planar::I11(bump.profile, kin, l1, l2, quad));
        record(tag + "I1111", c.i1111, planar::I1111(bump.profile, kin.k, l1, l2, quad));
        if (setup.defects) {
            for (std::size_t j = 0; j < setup.defects->size(); ++j) {
                Vec2 const a = setup.defects->position(j) - bump.center;
                if (a.norm() <= setup.options.central_tolerance * bump.profile.sigma_scale())
                    continue;
                Vec2 const kj = kin.k * a.normalized();
                record(tag + "J(K_" + std::to_string(j) + ", k)", ints.j(kj, kin.incident()),
                       planar::J(bump.profile, kj, kin.incident(), l1, l2, quad));
            }
        }
    }
    return out;
}

}  // namespace geoscatter::experiment
