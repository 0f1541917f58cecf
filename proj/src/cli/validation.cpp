#include "oudrift/cli/validation.hpp"

#include <cmath>

#include <json.hpp>

#include "oudrift/mse_theory.hpp"

namespace oudrift::cli {

std::vector<ValidationCase> validation_matrix(std::size_t replications, std::uint64_t seed)
{
    const ModelParams unit(1.0, 1.0);
    const LearningRate half(0.5);
    const LearningRate tenth(0.1);
    const DriftSpec flat = DriftSpec::constant(0.0);
    const DriftSpec sloped = DriftSpec::linear(0.0, 0.5);
    const DriftSpec wave = DriftSpec::sinusoid(0.0, 0.3, 2.0 * std::acos(-1.0));

    const std::vector<double> sloped_incs = sloped.increments(50);
    const std::vector<double> wave_incs = wave.increments(50);

    std::vector<ValidationCase> cases;
    auto add = [&](std::string name, Scenario s, double formula) {
        cases.push_back({std::move(name), McConfig(replications, seed + cases.size(), std::move(s)), formula});
    };

    add("exp_smoothing_N2_alpha0.5", {unit, flat, 2, {EstimatorKind::exp_smoothing, half}},
        theorem_bound(BoundInputs(unit, 0.0, half, 2)));
    add("arithmetic_mean_N2", {unit, flat, 2, {EstimatorKind::arithmetic_mean, {}}},
        arithmetic_mean_mse(unit, 2));
    add("mle_N2", {unit, flat, 2, {EstimatorKind::mle, {}}}, mle_mse(unit, 2));
    add("exp_smoothing_linear_K0.5_N50", {unit, sloped, 50, {EstimatorKind::exp_smoothing, tenth}},
        exact_mse_recursion(unit, sloped_incs, tenth, 50));
    add("exp_smoothing_sinusoid_N50", {unit, wave, 50, {EstimatorKind::exp_smoothing, tenth}},
        exact_mse_recursion(unit, wave_incs, tenth, 50));
    add("arithmetic_mean_N50", {unit, flat, 50, {EstimatorKind::arithmetic_mean, {}}},
        arithmetic_mean_mse(unit, 50));
    add("decaying_rate_N50", {unit, flat, 50, {EstimatorKind::decaying_rate, {}}},
        arithmetic_mean_mse(unit, 50));
    add("mle_N50", {unit, flat, 50, {EstimatorKind::mle, {}}}, mle_mse(unit, 50));
    return cases;
}

std::vector<ValidationResult> run_validation(const std::vector<ValidationCase>& cases)
{
    std::vector<ValidationResult> results;
    results.reserve(cases.size());
    for (const ValidationCase& c : cases) {
        const Scenario& s = c.config.scenario();
        results.push_back({c.name, to_string(s.estimator.kind), s.n,
                           compare_formula_vs_mc(c.config, c.formula_value)});
    }
    return results;
}

std::string validation_report_json(const std::vector<ValidationResult>& results)
{
    using nlohmann::json;
    json cases = json::array();
    bool all = true;
    for (const ValidationResult& r : results) {
        all = all && r.comparison.pass;
        cases.push_back({{"name", r.name},
                         {"estimator", r.estimator},
                         {"N", r.n},
                         {"mc_mse", r.comparison.mc_mse},
                         {"std_error", r.comparison.std_error},
                         {"formula", r.comparison.formula_value},
                         {"z", std::isfinite(r.comparison.z) ? json(r.comparison.z) : json(nullptr)},
                         {"pass", r.comparison.pass}});
    }
    json doc{{"z_threshold", kAcceptanceZ}, {"pass", all}, {"cases", cases}};
    return doc.dump(2) + "\n";
}

}  // namespace oudrift::cli
