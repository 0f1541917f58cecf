#pragma once

// Replication harness for the empirical MSE of the estimators.
//
// Replication r draws its path from seed replication_seed(master, r), so the
// set of squared errors does not depend on how replications are scheduled.
// The reduction runs in replication order with compensated summation, which
// makes the parallel kernel bitwise identical to the serial reference.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "oudrift/estimators.hpp"
#include "oudrift/model.hpp"

namespace oudrift {

enum class EstimatorKind { exp_smoothing, arithmetic_mean, decaying_rate, mle };

std::string to_string(EstimatorKind kind);

struct EstimatorChoice
{
    EstimatorKind kind = EstimatorKind::exp_smoothing;
    std::optional<LearningRate> rate;  ///< required for exp_smoothing
};

struct Scenario
{
    ModelParams params;
    DriftSpec drift;
    std::size_t n;
    EstimatorChoice estimator;
};

class McConfig
{
public:
    /// Requires replications >= 2, n >= 1 and a rate for exp_smoothing.
    McConfig(std::size_t replications, std::uint64_t master_seed, Scenario scenario);

    std::size_t replications() const { return replications_; }
    std::uint64_t master_seed() const { return master_seed_; }
    const Scenario& scenario() const { return scenario_; }

private:
    std::size_t replications_;
    std::uint64_t master_seed_;
    Scenario scenario_;
};

struct McEstimate
{
    double mse = 0.0;
    double std_error = 0.0;  ///< sample std of squared errors / sqrt(replications)
    std::size_t replications = 0;
};

/// Counter-based per-replication seed (splitmix64 finalizer over
/// master + (r + 1) * golden gamma).
std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t replication);

/// Applies the configured estimator to one path.
double apply_estimator(const EstimatorChoice& choice, const ModelParams& params,
                       std::span<const double> obs);

/// OpenMP kernel; `threads` <= 0 uses the OpenMP default.
McEstimate estimate_mse(const McConfig& config, int threads = 0);

/// Serial reference for estimate_mse.
McEstimate estimate_mse_serial(const McConfig& config);

struct FormulaComparison
{
    double mc_mse;
    double std_error;
    double formula_value;
    double z;  ///< (mc_mse - formula_value) / std_error
    bool pass;  ///< |z| <= kAcceptanceZ
};

inline constexpr double kAcceptanceZ = 3.0;

FormulaComparison compare_formula_vs_mc(const McEstimate& mc, double formula_value);
FormulaComparison compare_formula_vs_mc(const McConfig& config, double formula_value);

}  // namespace oudrift
