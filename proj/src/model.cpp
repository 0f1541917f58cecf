#include "oudrift/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace oudrift {

ModelParams::ModelParams(double theta, double sigma) : theta_(theta), sigma_(sigma)
{
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw std::invalid_argument("theta must be positive and finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("sigma must be positive and finite");
    const double v = stationary_variance();
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("stationary variance sigma^2/(2 theta) is not finite and positive");
}

SamplingGrid::SamplingGrid(std::size_t n) : n_(n)
{
    if (n == 0) throw std::invalid_argument("grid size must be at least 1");
}

double SamplingGrid::time(std::size_t k) const
{
    if (k < 1 || k > n_) throw std::domain_error("grid index out of range");
    return static_cast<double>(k) / static_cast<double>(n_);
}

double stationary_variance(const ModelParams& params)
{
    return params.stationary_variance();
}

double autocovariance(const ModelParams& params, std::size_t n, std::size_t lag)
{
    if (n == 0) throw std::domain_error("grid size must be at least 1");
    if (lag > n) throw std::domain_error("lag exceeds grid size");
    if (lag == 0) return params.stationary_variance();
    return params.stationary_variance() *
           std::exp(-params.theta() * static_cast<double>(lag) / static_cast<double>(n));
}

DriftSpec DriftSpec::constant(double level)
{
    return DriftSpec(Constant{level}, 0.0);
}

DriftSpec DriftSpec::linear(double intercept, double slope)
{
    return DriftSpec(Linear{intercept, slope}, std::abs(slope));
}

DriftSpec DriftSpec::sinusoid(double base, double amplitude, double omega)
{
    if (omega < 0.0) throw std::invalid_argument("sinusoid frequency must be nonnegative");
    return DriftSpec(Sinusoid{base, amplitude, omega}, std::abs(amplitude) * omega);
}

DriftSpec DriftSpec::tabulated(std::vector<double> values, double lipschitz)
{
    if (values.empty()) throw std::invalid_argument("tabulated drift needs at least one value");
    if (!(lipschitz >= 0.0)) throw std::invalid_argument("Lipschitz bound must be nonnegative");
    const double step = lipschitz / static_cast<double>(values.size());
    for (std::size_t j = 1; j < values.size(); ++j) {
        const double inc = std::abs(values[j] - values[j - 1]);
        if (inc > step + 1e-12)
            throw std::invalid_argument("tabulated increment " + std::to_string(j + 1) +
                                        " exceeds K/N");
    }
    return DriftSpec(Tabulated{std::move(values)}, lipschitz);
}

namespace {

struct DriftEval
{
    std::size_t n;
    std::size_t t;

    double time() const { return static_cast<double>(t) / static_cast<double>(n); }

    double operator()(const DriftSpec::Constant& c) const { return c.level; }
    double operator()(const DriftSpec::Linear& l) const { return l.intercept + l.slope * time(); }
    double operator()(const DriftSpec::Sinusoid& s) const
    {
        return s.base + s.amplitude * std::sin(s.omega * time());
    }
    double operator()(const DriftSpec::Tabulated& tab) const
    {
        if (tab.values.size() != n)
            throw std::domain_error("tabulated drift has " + std::to_string(tab.values.size()) +
                                    " values but grid size is " + std::to_string(n));
        return tab.values[t - 1];
    }
};

}  // namespace

double DriftSpec::value(std::size_t n, std::size_t t) const
{
    if (n == 0 || t < 1 || t > n) throw std::domain_error("drift index out of range");
    return std::visit(DriftEval{n, t}, variant_);
}

std::vector<double> DriftSpec::increments(std::size_t n) const
{
    if (n == 0) throw std::domain_error("grid size must be at least 1");
    std::vector<double> inc;
    inc.reserve(n - 1);
    // Linear increments are exactly slope/N; differencing would add rounding.
    if (const auto* l = std::get_if<Linear>(&variant_)) {
        inc.assign(n - 1, l->slope / static_cast<double>(n));
        return inc;
    }
    double prev = value(n, 1);
    for (std::size_t t = 2; t <= n; ++t) {
        const double cur = value(n, t);
        inc.push_back(cur - prev);
        prev = cur;
    }
    return inc;
}

double drift_value(const DriftSpec& drift, std::size_t n, std::size_t t)
{
    return drift.value(n, t);
}

void sample_path_into(const ModelParams& params, const DriftSpec& drift, std::uint64_t seed,
                      std::span<double> out)
{
    const std::size_t n = out.size();
    if (n == 0) return;
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const double x = params.theta() / static_cast<double>(n);
    const double rho = std::exp(-x);
    const double sd = std::sqrt(params.stationary_variance());
    // 1 - rho^2 without cancellation for large N
    const double innovation_sd = sd * std::sqrt(-std::expm1(-2.0 * x));

    // Y_0 is drawn but never observed.
    double y = sd * normal(engine);
    for (std::size_t k = 1; k <= n; ++k) {
        y = rho * y + innovation_sd * normal(engine);
        out[k - 1] = drift.value(n, k) + y;
    }
}

ObservationSeries sample_path(const ModelParams& params, const DriftSpec& drift, std::size_t n,
                              std::uint64_t seed)
{
    if (n == 0) throw std::invalid_argument("grid size must be at least 1");
    ObservationSeries series{params, std::vector<double>(n)};
    sample_path_into(params, drift, seed, series.values);
    return series;
}

}  // namespace oudrift
