#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oudrift/cli/plot_script.hpp"
#include "oudrift/mse_theory.hpp"

namespace oudrift::cli {

/// Bad user configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Output could not be written; exit code 3.
class OutputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class ScenarioName { fig1, fig3, fig5, fig6, fig7, custom };
enum class OutputFormat { csv, json };

ScenarioName parse_scenario_name(const std::string& name);
std::string to_string(ScenarioName name);
OutputFormat parse_format(const std::string& name);

/// Optional parameter overrides. Anything left empty keeps the scenario
/// default.
struct Overrides
{
    std::optional<double> theta;
    std::optional<double> sigma;
    std::optional<double> lipschitz;
    std::vector<double> alphas;
    std::optional<std::size_t> n_min;
    std::optional<std::size_t> n_max;
    std::optional<std::size_t> reps;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    std::optional<OutputFormat> format;
};

/// Reads a JSON object with keys theta, sigma, lipschitz, alpha (number or
/// array), n_min, n_max, reps, seed, out_dir, format. Unknown keys are a
/// ConfigError.
Overrides load_config_file(const std::filesystem::path& path);

/// Fields set in `flags` win over `file`.
Overrides merge(const Overrides& file, const Overrides& flags);

inline const std::vector<double> kDefaultAlphas{0.005, 0.02, 0.05, 0.1};
inline constexpr std::size_t kDefaultNMin = 1;
inline constexpr std::size_t kDefaultNMax = 500;

struct ScenarioConfig
{
    ScenarioName name = ScenarioName::custom;
    Overrides overrides;
    std::filesystem::path out_dir = ".";
    OutputFormat format = OutputFormat::csv;
    bool plot = false;
    PlotStyle plot_style = PlotStyle::linear;
};

/// One figure panel: bound curves for each learning rate plus optional
/// comparison curves, all over the same N range.
struct PanelSpec
{
    std::string name;
    ModelParams params;
    double lipschitz;
    std::vector<double> alphas;
    std::vector<MseFormula> comparisons;
    NRange range;
};

struct Panel
{
    std::string name;
    std::vector<MseCurve> curves;
};

/// Panels of a scenario after overrides; panels made identical by an
/// override are emitted once. Throws ConfigError on invalid values.
std::vector<PanelSpec> scenario_panels(const ScenarioConfig& config);

Panel compute_panel(const PanelSpec& spec);

/// Writes one file per panel (plus a plot script when requested) and
/// returns the written paths.
std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& config);

}  // namespace oudrift::cli
