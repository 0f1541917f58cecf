#include "oudrift/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "oudrift/mse_theory.hpp"

namespace oudrift {

namespace {

void require_nonempty(std::span<const double> obs)
{
    if (obs.empty()) throw std::domain_error("estimator needs at least one observation");
}

}  // namespace

LearningRate::LearningRate(double alpha) : alpha_(alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("learning rate must lie in (0, 1]");
}

EstimatorTrace exp_smoothing_online(std::span<const double> obs, LearningRate rate)
{
    require_nonempty(obs);
    EstimatorTrace trace;
    trace.estimates.reserve(obs.size());
    ExpSmoother smoother(rate);
    for (double x : obs) {
        smoother.push(x);
        trace.estimates.push_back(smoother.value());
    }
    return trace;
}

double exp_smoothing_explicit(std::span<const double> obs, LearningRate rate)
{
    require_nonempty(obs);
    const std::size_t n = obs.size();
    const double beta = rate.beta();
    // Walk backwards so the weight beta^{N-j} is built by repeated products.
    double acc = 0.0;
    double weight = 1.0;
    for (std::size_t j = n; j >= 2; --j) {
        acc += weight * obs[j - 1];
        weight *= beta;
    }
    return weight * obs[0] + rate.alpha() * acc;
}

double arithmetic_mean(std::span<const double> obs)
{
    require_nonempty(obs);
    double sum = 0.0;
    for (double x : obs) sum += x;
    return sum / static_cast<double>(obs.size());
}

double decaying_rate_smoothing(std::span<const double> obs)
{
    require_nonempty(obs);
    double m = obs[0];
    for (std::size_t t = 2; t <= obs.size(); ++t) {
        const double a = 1.0 / static_cast<double>(t);
        m = (1.0 - a) * m + a * obs[t - 1];
    }
    return m;
}

std::vector<double> mle_weights(const ModelParams& params, std::size_t n)
{
    if (n == 0) throw std::domain_error("estimator needs at least one observation");
    if (n == 1) return {1.0};
    const TridiagonalPrecision a = precision_matrix(params, n);
    std::vector<double> w = a.row_sums();
    const double total = a.total_sum();
    for (double& wi : w) wi /= total;
    return w;
}

double mle_estimate(std::span<const double> obs, const ModelParams& params)
{
    require_nonempty(obs);
    if (obs.size() == 1) return obs[0];
    const std::vector<double> w = mle_weights(params, obs.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < obs.size(); ++j) acc += w[j] * obs[j];
    return acc;
}

double loglik_score(double x, double m, const ModelParams& params)
{
    return (x - m) / params.stationary_variance();
}

double sga_step_size(LearningRate rate, const ModelParams& params)
{
    return rate.alpha() * params.stationary_variance();
}

double sga_step(double current, double x, LearningRate rate, const ModelParams& params)
{
    return current + sga_step_size(rate, params) * loglik_score(x, current, params);
}

}  // namespace oudrift
