#include "oudrift/mse_theory.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <stdexcept>

namespace oudrift {

namespace {

double as_real(std::size_t n) { return static_cast<double>(n); }

// Constants of the bound's one-step inequality
//   D_t <= beta^2 D_{t-1} + c1 - c2 beta^{t+1} + c3 (beta e^{-x})^t.
struct BoundConstants
{
    double c1;
    double c2;
    double c3;
};

BoundConstants bound_constants(const BoundInputs& in)
{
    const double alpha = in.rate.alpha();
    const double beta = in.rate.beta();
    const double x = in.params.theta() / as_real(in.n);
    const double v = in.params.stationary_variance();
    const double k2 = (in.lipschitz / as_real(in.n)) * (in.lipschitz / as_real(in.n));
    const double ex = std::exp(x);

    BoundConstants c{};
    // e^x - beta = expm1(x) + alpha
    c.c1 = beta * beta * (1.0 + beta) / alpha * k2 + alpha * alpha * v * (ex + beta) / (std::expm1(x) + alpha);
    c.c2 = 2.0 / alpha * k2;
    // 1 - beta e^{-x} = (1 - e^{-x}) + alpha e^{-x}
    c.c3 = alpha * 2.0 * v * std::expm1(x) / (-std::expm1(-x) + alpha * std::exp(-x));
    return c;
}

// beta^p via log1p(-alpha); beta = 0 handled explicitly.
double beta_pow(const LearningRate& rate, double p)
{
    if (rate.beta() == 0.0) return p == 0.0 ? 1.0 : 0.0;
    return std::exp(p * std::log1p(-rate.alpha()));
}

// 1 - beta^p
double one_minus_beta_pow(const LearningRate& rate, double p)
{
    if (rate.beta() == 0.0) return p == 0.0 ? 0.0 : 1.0;
    return -std::expm1(p * std::log1p(-rate.alpha()));
}

// sum_{t=2..N} beta^{2(N-t)} q^t with q = beta e^{-x}, written as
// e^{-2x} beta^{2N-2} (r^{N-1} - 1) / (r - 1), r = e^d, d = -x - ln(beta).
// Each branch keeps |r^{...}| <= 1 to avoid overflow and cancellation.
double c3_geometric_sum(const LearningRate& rate, double x, std::size_t n)
{
    const double m = as_real(n - 1);
    const double lb = std::log1p(-rate.alpha());
    const double d = -x - lb;
    if (d > 0.0) {
        // beta^{2N-2} r^{N-1} = q^{N-1}
        return std::exp(-2.0 * x + m * (lb - x)) * (-std::expm1(-m * d)) / std::expm1(d);
    }
    return std::exp(-2.0 * x + 2.0 * m * lb) * std::expm1(m * d) / std::expm1(d);
}

double c3_direct_sum(const LearningRate& rate, double x, std::size_t n)
{
    const double beta = rate.beta();
    const double q = beta * std::exp(-x);
    double sum = 0.0;
    for (std::size_t t = 2; t <= n; ++t)
        sum += std::pow(beta, 2.0 * as_real(n - t)) * std::pow(q, as_real(t));
    return sum;
}

}  // namespace

BoundInputs::BoundInputs(ModelParams params_, double lipschitz_, LearningRate rate_, std::size_t n_)
    : params(params_), lipschitz(lipschitz_), rate(rate_), n(n_)
{
    if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz))
        throw std::invalid_argument("Lipschitz constant must be finite and nonnegative");
    if (n == 0) throw std::invalid_argument("sample size must be at least 1");
}

double theorem_bound(const BoundInputs& in)
{
    const double v = in.params.stationary_variance();
    // alpha = 1 keeps only the last observation
    if (in.n == 1 || in.rate.beta() == 0.0) return v;

    const std::size_t n = in.n;
    const double alpha = in.rate.alpha();
    const double x = in.params.theta() / as_real(n);
    const BoundConstants c = bound_constants(in);

    const double initial = beta_pow(in.rate, 2.0 * as_real(n - 1)) * v;
    // (1 - beta^{2(N-1)}) / (1 - beta^2)
    const double steady = c.c1 * one_minus_beta_pow(in.rate, 2.0 * as_real(n - 1)) / (alpha * (2.0 - alpha));
    // -c2 (beta^{2N} - beta^{N+1}) / (beta - 1) = -c2 beta^{N+1} (1 - beta^{N-1}) / alpha
    const double drift = c.c2 * beta_pow(in.rate, as_real(n + 1)) * one_minus_beta_pow(in.rate, as_real(n - 1)) / alpha;

    // beta e^{x} - 1
    const double ratio_gap = std::expm1(x + std::log1p(-alpha));
    const double sum = std::abs(ratio_gap) < kDegenerateRatioTolerance ? c3_direct_sum(in.rate, x, n)
                                                                       : c3_geometric_sum(in.rate, x, n);
    return initial + steady - drift + c.c3 * sum;
}

double theorem_bound_by_summation(const BoundInputs& in)
{
    const double v = in.params.stationary_variance();
    if (in.n == 1) return v;

    const std::size_t n = in.n;
    const double beta = in.rate.beta();
    const double q = beta * std::exp(-in.params.theta() / as_real(n));
    const BoundConstants c = bound_constants(in);

    double total = std::pow(beta, 2.0 * as_real(n - 1)) * v;
    for (std::size_t t = 2; t <= n; ++t) {
        const double step = c.c1 - c.c2 * std::pow(beta, as_real(t + 1)) + c.c3 * std::pow(q, as_real(t));
        total += std::pow(beta, 2.0 * as_real(n - t)) * step;
    }
    return total;
}

double exact_mse_recursion(const ModelParams& params, std::span<const double> increments,
                           LearningRate rate, std::size_t n)
{
    if (n == 0) throw std::domain_error("sample size must be at least 1");
    if (increments.size() != n - 1)
        throw std::domain_error("expected N-1 drift increments");

    const double alpha = rate.alpha();
    const double beta = rate.beta();
    const double v = params.stationary_variance();
    const double x = params.theta() / as_real(n);

    double mse = v;            // D_{t-1}
    double weighted = 0.0;     // S_{t-1} = sum_{j=2..t-1} beta^{t-1-j} K_j
    double beta_t = beta;      // beta^{t-1}
    double cov_sum = 0.0;      // sum_{k=1..t-1} beta^k gamma(k)

    for (std::size_t t = 2; t <= n; ++t) {
        const double k_t = increments[t - 2];
        const double gamma_prev = v * std::exp(-x * as_real(t - 1));  // gamma(t-1)
        cov_sum += beta_t * gamma_prev;
        beta_t *= beta;  // now beta^t

        const double shifted = mse + k_t * k_t + 2.0 * k_t * beta * weighted;
        mse = beta * beta * shifted + alpha * alpha * v + 2.0 * alpha * beta_t * gamma_prev +
              2.0 * alpha * alpha * cov_sum;
        weighted = beta * weighted + k_t;
    }
    return mse;
}

double bias_at_horizon(std::span<const double> increments, LearningRate rate, std::size_t n)
{
    if (n == 0) throw std::domain_error("sample size must be at least 1");
    if (increments.size() != n - 1)
        throw std::domain_error("expected N-1 drift increments");
    const double beta = rate.beta();
    double weighted = 0.0;  // sum_{j=2..t} beta^{t-j} K_j
    for (double k : increments) weighted = beta * weighted + k;
    return -beta * weighted;
}

double taylor_bound(const ModelParams& params, LearningRate rate, std::size_t n)
{
    if (n == 0) throw std::domain_error("sample size must be at least 1");
    const double x = params.theta() / as_real(n);
    const double ratio = (1.0 + x / (1.0 + rate.beta())) / (1.0 + x / rate.alpha());
    return ratio * params.stationary_variance();
}

double arithmetic_mean_mse(const ModelParams& params, std::size_t n)
{
    if (n == 0) throw std::domain_error("sample size must be at least 1");
    const double v = params.stationary_variance();
    if (n == 1) return v;
    const double nn = as_real(n);
    const double x = params.theta() / nn;
    // N e^{-x} - N e^{x} + 2 - 2 e^{-theta}
    const double numer = -2.0 * nn * std::sinh(x) - 2.0 * std::expm1(-params.theta());
    // (1 - e^{x})(1 - e^{-x})
    const double denom = std::expm1(x) * std::expm1(-x);
    return v / (nn * nn) * numer / denom;
}

double mle_mse(const ModelParams& params, std::size_t n)
{
    if (n == 0) throw std::domain_error("sample size must be at least 1");
    const double v = params.stationary_variance();
    if (n == 1) return v;
    const double x = params.theta() / as_real(n);
    const double u = -std::expm1(-x);
    // v (1 - e^{-2x}) / (N + (N-2) e^{-2x} - 2(N-1) e^{-x}), divided through by u
    return v * (2.0 - u) / (2.0 + as_real(n - 2) * u);
}

TridiagonalPrecision::TridiagonalPrecision(const ModelParams& params, std::size_t n) : n_(n)
{
    if (n < 2) throw std::domain_error("precision matrix needs N >= 2");
    const double x = params.theta() / as_real(n);
    decay_complement_ = -std::expm1(-x);
    scale_ = 1.0 / (params.stationary_variance() * -std::expm1(-2.0 * x));
    inner_diag_ = 1.0 + std::exp(-2.0 * x);
    offdiag_ = -std::exp(-x);
}

double TridiagonalPrecision::entry(std::size_t i, std::size_t j) const
{
    if (i >= n_ || j >= n_) throw std::out_of_range("precision matrix index");
    if (i == j) return scale_ * ((i == 0 || i == n_ - 1) ? corner_diag() : inner_diag_);
    if (i + 1 == j || j + 1 == i) return scale_ * offdiag_;
    return 0.0;
}

std::vector<double> TridiagonalPrecision::row_sums() const
{
    const double u = decay_complement_;
    std::vector<double> sums(n_, scale_ * u * u);
    sums.front() = scale_ * u;
    sums.back() = scale_ * u;
    return sums;
}

double TridiagonalPrecision::total_sum() const
{
    const double u = decay_complement_;
    return scale_ * u * (2.0 + as_real(n_ - 2) * u);
}

TridiagonalPrecision precision_matrix(const ModelParams& params, std::size_t n)
{
    return TridiagonalPrecision(params, n);
}

MseCurve::MseCurve(std::string label, std::vector<CurvePoint> entries)
    : label_(std::move(label)), entries_(std::move(entries))
{
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!(entries_[i].value >= 0.0))
            throw std::invalid_argument("MSE curve values must be nonnegative");
        if (i > 0 && entries_[i].n <= entries_[i - 1].n)
            throw std::invalid_argument("MSE curve sample sizes must be strictly increasing");
    }
}

CurvePoint optimal_sample_size(const MseCurve& curve)
{
    if (curve.empty()) throw std::domain_error("empty MSE curve");
    CurvePoint best = curve.entries().front();
    for (const CurvePoint& p : curve.entries())
        if (p.value < best.value) best = p;
    return best;
}

std::string to_string(MseFormula f)
{
    switch (f) {
    case MseFormula::bound: return "bound";
    case MseFormula::exact_recursion: return "exact_recursion";
    case MseFormula::arith_mean: return "arith_mean";
    case MseFormula::mle: return "mle";
    case MseFormula::taylor: return "taylor";
    }
    return "unknown";
}

double evaluate_formula(MseFormula formula, const CurveInputs& inputs, std::size_t n)
{
    switch (formula) {
    case MseFormula::bound:
        return theorem_bound(BoundInputs(inputs.params, inputs.lipschitz, inputs.rate, n));
    case MseFormula::exact_recursion: {
        if (!(inputs.lipschitz >= 0.0)) throw std::invalid_argument("Lipschitz constant must be nonnegative");
        const std::vector<double> incs(n - 1, inputs.lipschitz / as_real(n));
        return exact_mse_recursion(inputs.params, incs, inputs.rate, n);
    }
    case MseFormula::arith_mean: return arithmetic_mean_mse(inputs.params, n);
    case MseFormula::mle: return mle_mse(inputs.params, n);
    case MseFormula::taylor: return taylor_bound(inputs.params, inputs.rate, n);
    }
    throw std::invalid_argument("unknown MSE formula");
}

namespace {

void check_range(NRange range)
{
    if (range.n_min < 1 || range.n_max < range.n_min)
        throw std::invalid_argument("N range must satisfy 1 <= n_min <= n_max");
}

}  // namespace

MseCurve mse_curve_serial(MseFormula formula, const CurveInputs& inputs, NRange range)
{
    check_range(range);
    std::vector<CurvePoint> points;
    points.reserve(range.n_max - range.n_min + 1);
    for (std::size_t n = range.n_min; n <= range.n_max; ++n)
        points.push_back({n, evaluate_formula(formula, inputs, n)});
    return MseCurve(to_string(formula), std::move(points));
}

MseCurve mse_curve(MseFormula formula, const CurveInputs& inputs, NRange range, int threads)
{
    check_range(range);
    const auto count = static_cast<std::ptrdiff_t>(range.n_max - range.n_min + 1);
    std::vector<CurvePoint> points(static_cast<std::size_t>(count));
    const int width = threads > 0 ? threads : omp_get_max_threads();

    std::exception_ptr failure;
    // Cost grows with N for the recursion, so hand out chunks dynamically.
#pragma omp parallel for schedule(dynamic, 16) num_threads(width)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const std::size_t n = range.n_min + static_cast<std::size_t>(i);
        try {
            points[static_cast<std::size_t>(i)] = {n, evaluate_formula(formula, inputs, n)};
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return MseCurve(to_string(formula), std::move(points));
}

}  // namespace oudrift
