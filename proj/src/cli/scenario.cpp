#include "oudrift/cli/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "oudrift/cli/csv.hpp"

namespace oudrift::cli {

using nlohmann::json;

ScenarioName parse_scenario_name(const std::string& name)
{
    if (name == "fig1") return ScenarioName::fig1;
    if (name == "fig3") return ScenarioName::fig3;
    if (name == "fig5") return ScenarioName::fig5;
    if (name == "fig6") return ScenarioName::fig6;
    if (name == "fig7") return ScenarioName::fig7;
    if (name == "custom") return ScenarioName::custom;
    throw ConfigError("unknown scenario '" + name + "' (expected fig1, fig3, fig5, fig6, fig7 or custom)");
}

std::string to_string(ScenarioName name)
{
    switch (name) {
    case ScenarioName::fig1: return "fig1";
    case ScenarioName::fig3: return "fig3";
    case ScenarioName::fig5: return "fig5";
    case ScenarioName::fig6: return "fig6";
    case ScenarioName::fig7: return "fig7";
    case ScenarioName::custom: return "custom";
    }
    return "unknown";
}

OutputFormat parse_format(const std::string& name)
{
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ConfigError("unknown format '" + name + "' (expected csv or json)");
}

namespace {

template <typename T>
T get_as(const json& value, const std::string& key)
{
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

std::size_t get_count(const json& value, const std::string& key)
{
    if (!value.is_number_integer() || value.get<long long>() < 0)
        throw ConfigError("config key '" + key + "' must be a nonnegative integer");
    return value.get<std::size_t>();
}

}  // namespace

Overrides load_config_file(const std::filesystem::path& path)
{
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot read config file " + path.string());
    json doc;
    try {
        doc = json::parse(file);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");

    Overrides o;
    for (const auto& [key, value] : doc.items()) {
        if (key == "theta") o.theta = get_as<double>(value, key);
        else if (key == "sigma") o.sigma = get_as<double>(value, key);
        else if (key == "lipschitz") o.lipschitz = get_as<double>(value, key);
        else if (key == "alpha") {
            if (value.is_array())
                o.alphas = get_as<std::vector<double>>(value, key);
            else
                o.alphas = {get_as<double>(value, key)};
        }
        else if (key == "n_min") o.n_min = get_count(value, key);
        else if (key == "n_max") o.n_max = get_count(value, key);
        else if (key == "reps") o.reps = get_count(value, key);
        else if (key == "seed") o.seed = get_as<std::uint64_t>(value, key);
        else if (key == "out_dir") o.out_dir = get_as<std::string>(value, key);
        else if (key == "format") o.format = parse_format(get_as<std::string>(value, key));
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return o;
}

Overrides merge(const Overrides& file, const Overrides& flags)
{
    Overrides out = file;
    if (flags.theta) out.theta = flags.theta;
    if (flags.sigma) out.sigma = flags.sigma;
    if (flags.lipschitz) out.lipschitz = flags.lipschitz;
    if (!flags.alphas.empty()) out.alphas = flags.alphas;
    if (flags.n_min) out.n_min = flags.n_min;
    if (flags.n_max) out.n_max = flags.n_max;
    if (flags.reps) out.reps = flags.reps;
    if (flags.seed) out.seed = flags.seed;
    if (flags.out_dir) out.out_dir = flags.out_dir;
    if (flags.format) out.format = flags.format;
    return out;
}

namespace {

struct BasePanel
{
    double theta;
    double sigma;
    double lipschitz;
};

std::string compact(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string alpha_label(double alpha) { return "bound_a" + compact(alpha); }

}  // namespace

std::vector<PanelSpec> scenario_panels(const ScenarioConfig& config)
{
    std::vector<BasePanel> bases;
    std::vector<double> alphas = kDefaultAlphas;
    std::vector<MseFormula> comparisons;

    switch (config.name) {
    case ScenarioName::fig1: bases = {{1.0, 1.0, 0.0}, {2.0, 0.5, 0.0}}; break;
    case ScenarioName::fig3: bases = {{1.0, 1.0, 0.5}, {2.0, 0.5, 0.5}}; break;
    case ScenarioName::fig5: bases = {{1.0, 1.0, 1.2}, {1.0, 1.0, 2.0}}; break;
    case ScenarioName::fig6:
    case ScenarioName::fig7:
        bases = {{0.1, 1.0, 0.0}, {1.0, 1.0, 0.0}, {5.0, 1.0, 0.0}, {15.0, 1.0, 0.0}};
        alphas = {0.005};
        comparisons = {config.name == ScenarioName::fig6 ? MseFormula::arith_mean : MseFormula::mle};
        break;
    case ScenarioName::custom:
        bases = {{1.0, 1.0, 0.0}};
        comparisons = {MseFormula::arith_mean, MseFormula::mle};
        break;
    }

    const Overrides& o = config.overrides;
    if (!o.alphas.empty()) alphas = o.alphas;
    for (double a : alphas)
        if (!(a > 0.0 && a <= 1.0)) throw ConfigError("learning rate " + compact(a) + " outside (0, 1]");

    NRange range{o.n_min.value_or(kDefaultNMin), o.n_max.value_or(kDefaultNMax)};
    if (range.n_min < 1 || range.n_max < range.n_min)
        throw ConfigError("N range must satisfy 1 <= n-min <= n-max");

    std::vector<PanelSpec> panels;
    std::set<std::string> seen;
    for (BasePanel b : bases) {
        if (o.theta) b.theta = *o.theta;
        if (o.sigma) b.sigma = *o.sigma;
        if (o.lipschitz) b.lipschitz = *o.lipschitz;
        if (!(b.lipschitz >= 0.0)) throw ConfigError("Lipschitz constant must be nonnegative");

        std::string name = to_string(config.name) + "_theta" + compact(b.theta) + "_sigma" +
                           compact(b.sigma) + "_K" + compact(b.lipschitz);
        if (!seen.insert(name).second) continue;
        try {
            panels.push_back({std::move(name), ModelParams(b.theta, b.sigma), b.lipschitz, alphas,
                              comparisons, range});
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    return panels;
}

Panel compute_panel(const PanelSpec& spec)
{
    Panel panel{spec.name, {}};
    for (double a : spec.alphas) {
        const CurveInputs inputs{spec.params, spec.lipschitz, LearningRate(a)};
        MseCurve c = mse_curve(MseFormula::bound, inputs, spec.range);
        const std::string label = spec.alphas.size() == 1 ? "bound" : alpha_label(a);
        panel.curves.emplace_back(label, c.entries());
    }
    for (MseFormula f : spec.comparisons) {
        const CurveInputs inputs{spec.params, spec.lipschitz, LearningRate(1.0)};
        panel.curves.push_back(mse_curve(f, inputs, spec.range));
    }
    return panel;
}

namespace {

std::string panel_json(const PanelSpec& spec, const Panel& panel)
{
    json doc;
    doc["panel"] = panel.name;
    doc["theta"] = spec.params.theta();
    doc["sigma"] = spec.params.sigma();
    doc["lipschitz"] = spec.lipschitz;
    std::vector<std::size_t> ns;
    for (const CurvePoint& p : panel.curves.front().entries()) ns.push_back(p.n);
    doc["N"] = ns;
    json curves = json::object();
    for (const MseCurve& c : panel.curves) {
        std::vector<double> values;
        for (const CurvePoint& p : c.entries()) values.push_back(p.value);
        curves[c.label()] = values;
    }
    doc["curves"] = curves;
    return doc.dump(2) + "\n";
}

}  // namespace

std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& config)
{
    if (config.plot && config.format != OutputFormat::csv)
        throw ConfigError("plot scripts require CSV output");
    const std::vector<PanelSpec> specs = scenario_panels(config);

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw OutputError("cannot create output directory " + config.out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    for (const PanelSpec& spec : specs) {
        const Panel panel = compute_panel(spec);
        if (config.format == OutputFormat::csv) {
            auto path = config.out_dir / (panel.name + ".csv");
            write_curves_csv(path, panel.curves);
            written.push_back(std::move(path));
        } else {
            auto path = config.out_dir / (panel.name + ".json");
            write_text_file(path, panel_json(spec, panel));
            written.push_back(std::move(path));
        }
    }
    if (config.plot) {
        const std::string stem = to_string(config.name);
        const std::vector<std::filesystem::path> csvs = written;
        const auto script = config.out_dir / (stem + ".gp");
        emit_plot_script(csvs, config.plot_style, script, config.out_dir / (stem + ".png"));
        written.push_back(script);
    }
    return written;
}

}  // namespace oudrift::cli
