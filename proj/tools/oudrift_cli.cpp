// oudrift-cli: MSE curves, optimal sample sizes, Monte Carlo validation and
// sample paths for the OU drift estimators.
//
// Exit codes: 0 success, 1 validation failure, 2 configuration error,
// 3 output error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oudrift/cli/csv.hpp"
#include "oudrift/cli/scenario.hpp"
#include "oudrift/cli/validation.hpp"
#include "oudrift/model.hpp"
#include "oudrift/mse_theory.hpp"

namespace {

using namespace oudrift;
using namespace oudrift::cli;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOutput = 3;

struct FlagSet
{
    Overrides flags;
    std::string format;
    std::string out_dir;
    std::string config_file;
};

void add_model_flags(CLI::App* cmd, FlagSet& f)
{
    cmd->add_option("--theta", f.flags.theta, "mean-reversion rate");
    cmd->add_option("--sigma", f.flags.sigma, "noise amplitude");
    cmd->add_option("--lipschitz", f.flags.lipschitz, "Lipschitz constant K of the drift");
    cmd->add_option("--config", f.config_file, "JSON config file; flags win on conflict");
}

Overrides resolve(const FlagSet& f)
{
    Overrides flags = f.flags;
    if (!f.format.empty()) flags.format = parse_format(f.format);
    if (!f.out_dir.empty()) flags.out_dir = f.out_dir;
    if (f.config_file.empty()) return flags;
    return merge(load_config_file(f.config_file), flags);
}

ModelParams model_from(const Overrides& o)
{
    try {
        return ModelParams(o.theta.value_or(1.0), o.sigma.value_or(1.0));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

LearningRate single_rate(const Overrides& o, double fallback)
{
    if (o.alphas.size() > 1) throw ConfigError("this command takes a single --alpha");
    const double a = o.alphas.empty() ? fallback : o.alphas.front();
    if (!(a > 0.0 && a <= 1.0)) throw ConfigError("learning rate must lie in (0, 1]");
    return LearningRate(a);
}

int run_mse_curve(const std::string& scenario, const FlagSet& f, bool plot, const std::string& style)
{
    ScenarioConfig config;
    config.name = parse_scenario_name(scenario);
    config.overrides = resolve(f);
    config.out_dir = config.overrides.out_dir.value_or(".");
    config.format = config.overrides.format.value_or(OutputFormat::csv);
    config.plot = plot;
    try {
        config.plot_style = parse_plot_style(style);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    for (const auto& path : run_scenario(config)) std::cout << path.string() << '\n';
    return kExitOk;
}

int run_optimal_n(const FlagSet& f)
{
    const Overrides o = resolve(f);
    const ModelParams params = model_from(o);
    const LearningRate rate = single_rate(o, 0.1);
    const double k = o.lipschitz.value_or(0.0);
    if (!(k >= 0.0)) throw ConfigError("Lipschitz constant must be nonnegative");
    const std::size_t n_max = o.n_max.value_or(2000);
    if (n_max < 1) throw ConfigError("n-max must be at least 1");

    const MseCurve curve = mse_curve(MseFormula::bound, CurveInputs{params, k, rate}, NRange{1, n_max});
    const CurvePoint best = optimal_sample_size(curve);
    const json out{{"theta", params.theta()}, {"sigma", params.sigma()}, {"lipschitz", k},
                   {"alpha", rate.alpha()},   {"n_max", n_max},          {"n_star", best.n},
                   {"value", best.value}};
    std::cout << out.dump() << '\n';
    return kExitOk;
}

int run_validate(const FlagSet& f)
{
    const Overrides o = resolve(f);
    const std::size_t reps = o.reps.value_or(200000);
    const std::uint64_t seed = o.seed.value_or(42);
    if (reps < 2) throw ConfigError("--reps must be at least 2");

    const auto results = run_validation(validation_matrix(reps, seed));
    const std::string report = validation_report_json(results);
    std::cout << report;
    if (o.out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*o.out_dir, ec);
        if (ec) throw OutputError("cannot create " + o.out_dir->string());
        write_text_file(*o.out_dir / "validate.json", report);
    }
    for (const auto& r : results)
        if (!r.comparison.pass) return kExitValidationFailed;
    return kExitOk;
}

DriftSpec drift_from(const std::string& kind, double k)
{
    if (kind == "constant") return DriftSpec::constant(0.0);
    if (kind == "linear") return DriftSpec::linear(0.0, k);
    if (kind == "sinusoid") {
        const double omega = 2.0 * std::numbers::pi;
        return DriftSpec::sinusoid(0.0, k / omega, omega);
    }
    throw ConfigError("unknown drift '" + kind + "' (expected constant, linear or sinusoid)");
}

int run_simulate(const FlagSet& f, std::size_t n, const std::string& drift_kind)
{
    const Overrides o = resolve(f);
    const ModelParams params = model_from(o);
    const double k = o.lipschitz.value_or(0.0);
    if (!(k >= 0.0)) throw ConfigError("Lipschitz constant must be nonnegative");
    if (n < 1) throw ConfigError("--n must be at least 1");
    const DriftSpec drift = drift_from(drift_kind, k);
    const std::uint64_t seed = o.seed.value_or(42);
    const ObservationSeries series = sample_path(params, drift, n, seed);

    std::string text;
    if (o.format.value_or(OutputFormat::csv) == OutputFormat::json) {
        json doc{{"theta", params.theta()}, {"sigma", params.sigma()}, {"lipschitz", k},
                 {"drift", drift_kind},     {"seed", seed},            {"N", n},
                 {"values", series.values}};
        text = doc.dump(2) + "\n";
    } else {
        text = "k,t,drift,x\n";
        for (std::size_t j = 1; j <= n; ++j) {
            text += std::to_string(j) + ',' + format_real(static_cast<double>(j) / static_cast<double>(n)) +
                    ',' + format_real(drift.value(n, j)) + ',' + format_real(series.values[j - 1]) + '\n';
        }
    }
    if (o.out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*o.out_dir, ec);
        if (ec) throw OutputError("cannot create " + o.out_dir->string());
        const auto path = *o.out_dir / (o.format == OutputFormat::json ? "path.json" : "path.csv");
        write_text_file(path, text);
        std::cout << path.string() << '\n';
    } else {
        std::cout << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Drift estimation under Ornstein-Uhlenbeck noise: MSE curves and validation"};
    app.require_subcommand(1);

    FlagSet curve_flags;
    std::string scenario;
    bool plot = false;
    std::string plot_style = "linear";
    auto* curve = app.add_subcommand("mse-curve", "write MSE curves for a figure scenario");
    curve->add_option("scenario", scenario, "fig1 | fig3 | fig5 | fig6 | fig7 | custom")->required();
    add_model_flags(curve, curve_flags);
    curve->add_option("--alpha", curve_flags.flags.alphas, "learning rate(s)")->delimiter(',');
    curve->add_option("--n-min", curve_flags.flags.n_min, "smallest N");
    curve->add_option("--n-max", curve_flags.flags.n_max, "largest N");
    curve->add_option("--out-dir", curve_flags.out_dir, "output directory");
    curve->add_option("--format", curve_flags.format, "csv | json");
    curve->add_flag("--plot", plot, "also write a gnuplot script");
    curve->add_option("--plot-style", plot_style, "linear | log-x | log-y | log-log");

    FlagSet opt_flags;
    auto* optimal = app.add_subcommand("optimal-n", "minimize the bound over N = 1..n-max");
    add_model_flags(optimal, opt_flags);
    optimal->add_option("--alpha", opt_flags.flags.alphas, "learning rate")->delimiter(',');
    optimal->add_option("--n-max", opt_flags.flags.n_max, "largest N (default 2000)");

    FlagSet val_flags;
    auto* validate = app.add_subcommand("validate", "Monte Carlo check of every MSE formula");
    validate->add_option("--reps", val_flags.flags.reps, "replications per case (default 200000)");
    validate->add_option("--seed", val_flags.flags.seed, "master seed (default 42)");
    validate->add_option("--out-dir", val_flags.out_dir, "also write validate.json here");
    validate->add_option("--config", val_flags.config_file, "JSON config file; flags win on conflict");

    FlagSet sim_flags;
    std::size_t sim_n = 100;
    std::string drift_kind = "linear";
    auto* simulate = app.add_subcommand("simulate", "dump one sampled path");
    add_model_flags(simulate, sim_flags);
    simulate->add_option("--n", sim_n, "number of observations (default 100)");
    simulate->add_option("--drift", drift_kind, "constant | linear | sinusoid (default linear)");
    simulate->add_option("--seed", sim_flags.flags.seed, "seed (default 42)");
    simulate->add_option("--out-dir", sim_flags.out_dir, "write path.csv/path.json here instead of stdout");
    simulate->add_option("--format", sim_flags.format, "csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (curve->parsed()) return run_mse_curve(scenario, curve_flags, plot, plot_style);
        if (optimal->parsed()) return run_optimal_n(opt_flags);
        if (validate->parsed()) return run_validate(val_flags);
        if (simulate->parsed()) return run_simulate(sim_flags, sim_n, drift_kind);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOutput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
