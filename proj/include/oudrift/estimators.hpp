#pragma once

// Estimators of m*(1) from one observed path. Every estimator is an affine
// weighting of the observations with weights summing to one.

#include <cstddef>
#include <span>
#include <vector>

#include "oudrift/model.hpp"

namespace oudrift {

/// Weight alpha of the newest observation; beta = 1 - alpha is the memory.
class LearningRate
{
public:
    /// Requires 0 < alpha <= 1.
    explicit LearningRate(double alpha);

    double alpha() const { return alpha_; }
    double beta() const { return 1.0 - alpha_; }

private:
    double alpha_;
};

struct EstimatorTrace
{
    std::vector<double> estimates;  ///< m_1..m_N

    double final() const { return estimates.back(); }
};

/// Streaming form of the exponential-smoothing recursion.
class ExpSmoother
{
public:
    explicit ExpSmoother(LearningRate rate) : rate_(rate) {}

    void push(double x)
    {
        value_ = count_ == 0 ? x : rate_.beta() * value_ + rate_.alpha() * x;
        ++count_;
    }
    double value() const { return value_; }
    std::size_t count() const { return count_; }

private:
    LearningRate rate_;
    double value_ = 0.0;
    std::size_t count_ = 0;
};

/// m_1 = X_1, m_t = (1 - alpha) m_{t-1} + alpha X_t. All entry points below
/// throw std::domain_error on an empty series.
EstimatorTrace exp_smoothing_online(std::span<const double> obs, LearningRate rate);

/// beta^{N-1} X_1 + alpha * sum_{j=2..N} beta^{N-j} X_j
double exp_smoothing_explicit(std::span<const double> obs, LearningRate rate);

double arithmetic_mean(std::span<const double> obs);

/// Exponential smoothing with the time-varying rate 1/t.
double decaying_rate_smoothing(std::span<const double> obs);

/// Normalized row sums of the tridiagonal precision matrix (GLS weights for
/// a common mean). A single observation gets weight one.
std::vector<double> mle_weights(const ModelParams& params, std::size_t n);

/// Global maximum likelihood estimate of a constant mean.
double mle_estimate(std::span<const double> obs, const ModelParams& params);

/// d/dm of the log-density of N(m, sigma^2/(2 theta)) at x.
double loglik_score(double x, double m, const ModelParams& params);

/// Step size under which gradient ascent on the per-observation
/// log-likelihood reproduces exponential smoothing: alpha * sigma^2 / (2 theta),
/// i.e. alpha times the stationary variance, since the score is
/// (x - m) / variance. The often-quoted 2 alpha theta / sigma^2 is its
/// reciprocal and only coincides when the variance is one.
double sga_step_size(LearningRate rate, const ModelParams& params);

/// One stochastic gradient ascent step from `current` towards observation x.
double sga_step(double current, double x, LearningRate rate, const ModelParams& params);

inline EstimatorTrace exp_smoothing_online(const ObservationSeries& s, LearningRate rate)
{
    return exp_smoothing_online(s.view(), rate);
}
inline double exp_smoothing_explicit(const ObservationSeries& s, LearningRate rate)
{
    return exp_smoothing_explicit(s.view(), rate);
}
inline double arithmetic_mean(const ObservationSeries& s) { return arithmetic_mean(s.view()); }
inline double decaying_rate_smoothing(const ObservationSeries& s)
{
    return decaying_rate_smoothing(s.view());
}
inline double mle_estimate(const ObservationSeries& s) { return mle_estimate(s.view(), s.params); }

}  // namespace oudrift
