#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oudrift/cli/csv.hpp"
#include "oudrift/cli/plot_script.hpp"
#include "oudrift/cli/scenario.hpp"
#include "oudrift/cli/validation.hpp"

using namespace oudrift;
using namespace oudrift::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("oudrift_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("fig6 writes four panels of bound vs arithmetic mean")
{
    const fs::path dir = scratch_dir("fig6");
    ScenarioConfig cfg;
    cfg.name = ScenarioName::fig6;
    cfg.out_dir = dir;
    const auto files = run_scenario(cfg);
    REQUIRE(files.size() == 4);
    for (const auto& f : files) {
        const CsvTable t = read_csv(f);
        CHECK(t.header == std::vector<std::string>{"N", "bound", "arith_mean"});
        CHECK(t.rows.size() == kDefaultNMax);
        CHECK(t.rows.front()[0] == 1.0);
    }
    CHECK(files[0].filename() == "fig6_theta0.1_sigma1_K0.csv");
}

TEST_CASE("fig7 compares against the MLE; fig1 defaults to four learning rates")
{
    ScenarioConfig cfg;
    cfg.name = ScenarioName::fig7;
    auto panels = scenario_panels(cfg);
    REQUIRE(panels.size() == 4);
    CHECK(compute_panel(panels[0]).curves.back().label() == "mle");

    cfg.name = ScenarioName::fig1;
    panels = scenario_panels(cfg);
    REQUIRE(panels.size() == 2);
    CHECK(panels[1].params.theta() == 2.0);
    CHECK(panels[1].params.sigma() == 0.5);
    const Panel p = compute_panel(panels[0]);
    REQUIRE(p.curves.size() == 4);
    CHECK(p.curves[0].label() == "bound_a0.005");
    CHECK(p.curves[3].label() == "bound_a0.1");

    cfg.name = ScenarioName::fig5;
    panels = scenario_panels(cfg);
    REQUIRE(panels.size() == 2);
    CHECK(panels[0].lipschitz == 1.2);
    CHECK(panels[1].lipschitz == 2.0);
}

TEST_CASE("overrides are honored and collapse duplicate panels")
{
    ScenarioConfig cfg;
    cfg.name = ScenarioName::fig1;
    cfg.overrides.alphas = {0.1};
    cfg.overrides.n_min = 5;
    cfg.overrides.n_max = 9;
    auto panels = scenario_panels(cfg);
    REQUIRE(panels.size() == 2);
    const Panel p = compute_panel(panels[0]);
    REQUIRE(p.curves.size() == 1);
    CHECK(p.curves[0].label() == "bound");
    CHECK(p.curves[0].entries().front().n == 5);
    CHECK(p.curves[0].size() == 5);

    cfg.name = ScenarioName::fig6;
    cfg.overrides.theta = 2.0;
    CHECK(scenario_panels(cfg).size() == 1);
}

TEST_CASE("invalid overrides are configuration errors")
{
    ScenarioConfig cfg;
    cfg.name = ScenarioName::custom;
    cfg.overrides.alphas = {0.0};
    CHECK_THROWS_AS(scenario_panels(cfg), ConfigError);
    cfg.overrides.alphas = {0.5};
    cfg.overrides.theta = -1.0;
    CHECK_THROWS_AS(scenario_panels(cfg), ConfigError);
    cfg.overrides.theta = 1.0;
    cfg.overrides.n_min = 10;
    cfg.overrides.n_max = 3;
    CHECK_THROWS_AS(scenario_panels(cfg), ConfigError);
    CHECK_THROWS_AS(parse_scenario_name("fig2"), ConfigError);
    CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("CSV round trip preserves values")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-30.0, 5.0);
    std::vector<CurvePoint> a, b;
    for (std::size_t n = 1; n <= 200; ++n) {
        a.push_back({n, std::exp(u(rng))});
        b.push_back({n, std::exp(u(rng))});
    }
    const std::vector<MseCurve> curves{MseCurve("a", a), MseCurve("b", b)};
    const fs::path path = scratch_dir("csv") / "rt.csv";
    write_curves_csv(path, curves);
    const CsvTable t = read_csv(path);
    REQUIRE(t.rows.size() == 200);
    for (std::size_t i = 0; i < 200; ++i) {
        CHECK(t.rows[i][0] == static_cast<double>(a[i].n));
        CHECK(std::abs(t.rows[i][1] - a[i].value) <= 1e-12 * a[i].value);
        CHECK(t.rows[i][2] == b[i].value);
    }
}

TEST_CASE("scenario output is byte-identical across runs")
{
    ScenarioConfig cfg;
    cfg.name = ScenarioName::fig3;
    cfg.overrides.n_max = 120;
    cfg.out_dir = scratch_dir("det1");
    const auto first = run_scenario(cfg);
    cfg.out_dir = scratch_dir("det2");
    const auto second = run_scenario(cfg);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) CHECK(slurp(first[i]) == slurp(second[i]));
}

TEST_CASE("JSON output and unwritable paths")
{
    ScenarioConfig cfg;
    cfg.name = ScenarioName::custom;
    cfg.overrides.n_max = 10;
    cfg.format = OutputFormat::json;
    cfg.out_dir = scratch_dir("json");
    const auto files = run_scenario(cfg);
    REQUIRE(files.size() == 1);
    CHECK(files[0].extension() == ".json");
    CHECK(slurp(files[0]).find("\"arith_mean\"") != std::string::npos);

    const fs::path blocker = scratch_dir("blocked") / "file";
    std::ofstream(blocker) << "x";
    cfg.out_dir = blocker / "sub";
    CHECK_THROWS_AS(run_scenario(cfg), OutputError);
}

TEST_CASE("config file loading")
{
    const fs::path dir = scratch_dir("cfg");
    std::ofstream(dir / "ok.json") << R"({"theta": 2.5, "alpha": [0.1, 0.2], "n_max": 40, "format": "json"})";
    const Overrides o = load_config_file(dir / "ok.json");
    CHECK(*o.theta == 2.5);
    CHECK(o.alphas == std::vector<double>{0.1, 0.2});
    CHECK(*o.n_max == 40);
    CHECK(*o.format == OutputFormat::json);

    Overrides flags;
    flags.theta = 1.0;
    const Overrides m = merge(o, flags);
    CHECK(*m.theta == 1.0);
    CHECK(*m.n_max == 40);

    std::ofstream(dir / "unknown.json") << R"({"theta": 1.0, "colour": "red"})";
    CHECK_THROWS_AS(load_config_file(dir / "unknown.json"), ConfigError);
    std::ofstream(dir / "typed.json") << R"({"theta": "one"})";
    CHECK_THROWS_AS(load_config_file(dir / "typed.json"), ConfigError);
    std::ofstream(dir / "broken.json") << "{";
    CHECK_THROWS_AS(load_config_file(dir / "broken.json"), ConfigError);
    CHECK_THROWS_AS(load_config_file(dir / "missing.json"), ConfigError);
}

TEST_CASE("plot scripts")
{
    ScenarioConfig cfg;
    cfg.name = ScenarioName::fig6;
    cfg.overrides.n_max = 20;
    cfg.out_dir = scratch_dir("plot");
    cfg.plot = true;
    cfg.plot_style = PlotStyle::log_x;
    const auto files = run_scenario(cfg);
    REQUIRE(files.size() == 5);
    const std::string script = slurp(files.back());
    CHECK(script.find("set multiplot layout 2,2") != std::string::npos);
    CHECK(script.find("set logscale x") != std::string::npos);
    CHECK(script.find("set logscale y") == std::string::npos);
    std::size_t plots = 0;
    for (std::size_t pos = script.find("\nplot "); pos != std::string::npos; pos = script.find("\nplot ", pos + 1)) ++plots;
    CHECK(plots == 4);

    const std::vector<fs::path> none;
    CHECK_THROWS_AS(plot_script(none, PlotStyle::linear, "x.png"), std::invalid_argument);
    const std::vector<fs::path> missing{cfg.out_dir / "nope.csv"};
    CHECK_THROWS_AS(plot_script(missing, PlotStyle::linear, "x.png"), std::runtime_error);
    CHECK(parse_plot_style("log-log") == PlotStyle::log_log);
    CHECK_THROWS(parse_plot_style("polar"));
}

TEST_CASE("validation matrix at reduced scale")
{
    const auto cases = validation_matrix(20000, 42);
    CHECK(cases.size() == 8);
    const auto results = run_validation(cases);
    for (const auto& r : results) CHECK_MESSAGE(r.comparison.pass, r.name << " z=" << r.comparison.z);
    const std::string report = validation_report_json(results);
    CHECK(report.find("\"pass\": true") != std::string::npos);
}
