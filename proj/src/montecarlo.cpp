#include "oudrift/montecarlo.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oudrift {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum
{
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Estimator with any per-scenario precomputation done once.
class PreparedEstimator
{
public:
    PreparedEstimator(const EstimatorChoice& choice, const ModelParams& params, std::size_t n)
        : choice_(choice), params_(params)
    {
        if (choice.kind == EstimatorKind::mle) weights_ = mle_weights(params, n);
    }

    double operator()(std::span<const double> obs) const
    {
        if (choice_.kind != EstimatorKind::mle) return apply_estimator(choice_, params_, obs);
        double acc = 0.0;
        for (std::size_t j = 0; j < obs.size(); ++j) acc += weights_[j] * obs[j];
        return acc;
    }

private:
    EstimatorChoice choice_;
    ModelParams params_;
    std::vector<double> weights_;
};

double squared_error(const McConfig& config, const PreparedEstimator& estimator, double target,
                     std::size_t r, std::span<double> path)
{
    const Scenario& s = config.scenario();
    sample_path_into(s.params, s.drift, replication_seed(config.master_seed(), r), path);
    const double err = estimator(path) - target;
    return err * err;
}

McEstimate summarize(std::span<const double> squared_errors)
{
    const auto reps = static_cast<double>(squared_errors.size());
    CompensatedSum sum;
    for (double e : squared_errors) sum.add(e);
    const double mean = sum.value() / reps;

    CompensatedSum dev;
    for (double e : squared_errors) dev.add((e - mean) * (e - mean));
    const double variance = dev.value() / (reps - 1.0);

    return McEstimate{mean, std::sqrt(variance / reps), squared_errors.size()};
}

}  // namespace

std::string to_string(EstimatorKind kind)
{
    switch (kind) {
    case EstimatorKind::exp_smoothing: return "exp_smoothing";
    case EstimatorKind::arithmetic_mean: return "arithmetic_mean";
    case EstimatorKind::decaying_rate: return "decaying_rate";
    case EstimatorKind::mle: return "mle";
    }
    return "unknown";
}

McConfig::McConfig(std::size_t replications, std::uint64_t master_seed, Scenario scenario)
    : replications_(replications), master_seed_(master_seed), scenario_(std::move(scenario))
{
    if (replications_ < 2) throw std::invalid_argument("Monte Carlo needs at least 2 replications");
    if (scenario_.n == 0) throw std::invalid_argument("grid size must be at least 1");
    if (scenario_.estimator.kind == EstimatorKind::exp_smoothing && !scenario_.estimator.rate)
        throw std::invalid_argument("exponential smoothing needs a learning rate");
    // Surfaces tabulated-drift size mismatches before any worker runs.
    (void)scenario_.drift.value(scenario_.n, scenario_.n);
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t replication)
{
    std::uint64_t z = master_seed + (replication + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double apply_estimator(const EstimatorChoice& choice, const ModelParams& params,
                       std::span<const double> obs)
{
    switch (choice.kind) {
    case EstimatorKind::exp_smoothing: {
        if (!choice.rate) throw std::invalid_argument("exponential smoothing needs a learning rate");
        if (obs.empty()) throw std::domain_error("estimator needs at least one observation");
        ExpSmoother smoother(*choice.rate);
        for (double x : obs) smoother.push(x);
        return smoother.value();
    }
    case EstimatorKind::arithmetic_mean: return arithmetic_mean(obs);
    case EstimatorKind::decaying_rate: return decaying_rate_smoothing(obs);
    case EstimatorKind::mle: return mle_estimate(obs, params);
    }
    throw std::invalid_argument("unknown estimator");
}

McEstimate estimate_mse_serial(const McConfig& config)
{
    const Scenario& s = config.scenario();
    const PreparedEstimator estimator(s.estimator, s.params, s.n);
    const double target = s.drift.value(s.n, s.n);

    std::vector<double> sq(config.replications());
    std::vector<double> path(s.n);
    for (std::size_t r = 0; r < sq.size(); ++r) sq[r] = squared_error(config, estimator, target, r, path);
    return summarize(sq);
}

McEstimate estimate_mse(const McConfig& config, int threads)
{
    const Scenario& s = config.scenario();
    const PreparedEstimator estimator(s.estimator, s.params, s.n);
    const double target = s.drift.value(s.n, s.n);
    const auto reps = static_cast<std::ptrdiff_t>(config.replications());
    const int width = threads > 0 ? threads : omp_get_max_threads();

    std::vector<double> sq(config.replications());
    std::exception_ptr failure;
#pragma omp parallel num_threads(width)
    {
        std::vector<double> path(s.n);
#pragma omp for schedule(static)
        for (std::ptrdiff_t r = 0; r < reps; ++r) {
            try {
                const auto idx = static_cast<std::size_t>(r);
                sq[idx] = squared_error(config, estimator, target, idx, path);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return summarize(sq);
}

FormulaComparison compare_formula_vs_mc(const McEstimate& mc, double formula_value)
{
    FormulaComparison out{mc.mse, mc.std_error, formula_value, 0.0, false};
    const double diff = mc.mse - formula_value;
    if (mc.std_error > 0.0) {
        out.z = diff / mc.std_error;
    } else if (diff != 0.0) {
        out.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    out.pass = std::abs(out.z) <= kAcceptanceZ;
    return out;
}

FormulaComparison compare_formula_vs_mc(const McConfig& config, double formula_value)
{
    return compare_formula_vs_mc(estimate_mse(config), formula_value);
}

}  // namespace oudrift
