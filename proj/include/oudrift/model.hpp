#pragma once

// Observation model: a Lipschitz drift observed through stationary
// Ornstein-Uhlenbeck noise on the grid 1/N, 2/N, ..., 1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace oudrift {

/// OU law dY = -theta Y dt + sigma dB, started in its stationary distribution.
class ModelParams
{
public:
    ModelParams(double theta, double sigma);

    double theta() const { return theta_; }
    double sigma() const { return sigma_; }

    /// sigma^2 / (2 theta)
    double stationary_variance() const { return sigma_ * sigma_ / (2.0 * theta_); }

private:
    double theta_;
    double sigma_;
};

/// Uniform grid k/N, k = 1..N.
class SamplingGrid
{
public:
    explicit SamplingGrid(std::size_t n);

    std::size_t n() const { return n_; }
    double spacing() const { return 1.0 / static_cast<double>(n_); }
    /// Time of the k-th observation (1-based).
    double time(std::size_t k) const;

private:
    std::size_t n_;
};

double stationary_variance(const ModelParams& params);

/// cov(X_{i/N}, X_{j/N}) for |i - j| = lag. Throws std::domain_error if lag > n.
double autocovariance(const ModelParams& params, std::size_t n, std::size_t lag);

/// Unknown-mean trajectory m*(t) on [0, 1] together with a certified
/// Lipschitz constant.
class DriftSpec
{
public:
    struct Constant
    {
        double level;
    };
    struct Linear
    {
        double intercept;
        double slope;
    };
    /// base + amplitude * sin(omega * t)
    struct Sinusoid
    {
        double base;
        double amplitude;
        double omega;
    };
    /// Values m*_1..m*_N for one fixed grid size.
    struct Tabulated
    {
        std::vector<double> values;
    };
    using Variant = std::variant<Constant, Linear, Sinusoid, Tabulated>;

    static DriftSpec constant(double level);
    static DriftSpec linear(double intercept, double slope);
    static DriftSpec sinusoid(double base, double amplitude, double omega);
    /// Rejects tables whose consecutive increments exceed lipschitz/N by
    /// more than 1e-12.
    static DriftSpec tabulated(std::vector<double> values, double lipschitz);

    const Variant& variant() const { return variant_; }
    double lipschitz() const { return lipschitz_; }

    /// m*(t/N) for 1 <= t <= n.
    double value(std::size_t n, std::size_t t) const;

    /// Increments K_j = m*_j - m*_{j-1}, j = 2..n (length n - 1).
    std::vector<double> increments(std::size_t n) const;

private:
    DriftSpec(Variant v, double lipschitz) : variant_(std::move(v)), lipschitz_(lipschitz) {}

    Variant variant_;
    double lipschitz_;
};

double drift_value(const DriftSpec& drift, std::size_t n, std::size_t t);

/// One sampled path X_{1/N}, ..., X_1.
struct ObservationSeries
{
    ModelParams params;
    std::vector<double> values;

    std::size_t n() const { return values.size(); }
    std::span<const double> view() const { return values; }
};

/// Exact AR(1) discretization of the OU noise plus drift. Deterministic in
/// the seed; every call owns its generator.
ObservationSeries sample_path(const ModelParams& params, const DriftSpec& drift, std::size_t n,
                              std::uint64_t seed);

/// Allocation-free variant used by the replication kernels; writes
/// out.size() observations.
void sample_path_into(const ModelParams& params, const DriftSpec& drift, std::uint64_t seed,
                      std::span<double> out);

}  // namespace oudrift
