#pragma once

// Closed-form and recursive mean-square errors of the drift estimators.
//
// Notation used throughout: x = theta/N, v = sigma^2/(2 theta) and
// beta = 1 - alpha. Powers and differences of exponentials are evaluated
// through log1p/expm1 so that the formulas stay accurate for N >= 10^3.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "oudrift/estimators.hpp"
#include "oudrift/model.hpp"

namespace oudrift {

struct BoundInputs
{
    BoundInputs(ModelParams params, double lipschitz, LearningRate rate, std::size_t n);

    ModelParams params;
    double lipschitz;  ///< K >= 0
    LearningRate rate;
    std::size_t n;  ///< N >= 1
};

/// Threshold on |beta e^{theta/N} - 1| below which the last geometric sum of
/// the bound is summed term by term.
inline constexpr double kDegenerateRatioTolerance = 1e-9;

/// Sharp upper bound on E|m_N - m*_N|^2 for exponential smoothing under a
/// K-Lipschitz drift; equality for linear drifts. N = 1 gives v.
double theorem_bound(const BoundInputs& in);

/// Same quantity with every geometric sum evaluated term by term.
double theorem_bound_by_summation(const BoundInputs& in);

/// Exact MSE of exponential smoothing after N steps for the given drift
/// increments K_2..K_N. Throws std::domain_error unless increments.size() == n - 1.
double exact_mse_recursion(const ModelParams& params, std::span<const double> increments,
                           LearningRate rate, std::size_t n);

/// E[m_N - m*_N] = -beta * sum_{j=2..N} beta^{N-j} K_j.
double bias_at_horizon(std::span<const double> increments, LearningRate rate, std::size_t n);

/// First-order expansion of the K = 0 bound:
/// (1 + x/(1+beta)) / (1 + x/(1-beta)) * v.
double taylor_bound(const ModelParams& params, LearningRate rate, std::size_t n);

/// MSE of the arithmetic mean under a constant drift.
double arithmetic_mean_mse(const ModelParams& params, std::size_t n);

/// MSE of the global MLE under a constant drift, 1 / sum(A).
double mle_mse(const ModelParams& params, std::size_t n);

/// Inverse of the covariance matrix c_ij = v e^{-x|i-j|}:
///
///   scale * | 1   -e   0  ...        |      e     = e^{-x}
///           | -e  1+e2 -e ...        |      e2    = e^{-2x}
///           | ...           1+e2  -e |      scale = 1 / (v (1 - e2))
///           |          0    -e    1  |
class TridiagonalPrecision
{
public:
    TridiagonalPrecision(const ModelParams& params, std::size_t n);

    std::size_t n() const { return n_; }
    double scale() const { return scale_; }
    double corner_diag() const { return 1.0; }
    double inner_diag() const { return inner_diag_; }
    double offdiag() const { return offdiag_; }

    /// Scaled entry a_ij, 0-based.
    double entry(std::size_t i, std::size_t j) const;
    std::vector<double> row_sums() const;
    /// scale * (N + (N-2) e^{-2x} - 2(N-1) e^{-x}), evaluated as
    /// scale * u (2 + (N-2) u) with u = 1 - e^{-x}.
    double total_sum() const;

private:
    std::size_t n_;
    double decay_complement_;  // u = 1 - e^{-x}
    double scale_;
    double inner_diag_;
    double offdiag_;
};

/// Throws std::domain_error for n < 2 (the N = 1 precision is the scalar 1/v).
TridiagonalPrecision precision_matrix(const ModelParams& params, std::size_t n);

struct CurvePoint
{
    std::size_t n;
    double value;
};

/// N -> MSE for one formula; N strictly increasing, values nonnegative.
class MseCurve
{
public:
    MseCurve(std::string label, std::vector<CurvePoint> entries);

    const std::string& label() const { return label_; }
    const std::vector<CurvePoint>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::string label_;
    std::vector<CurvePoint> entries_;
};

/// Exhaustive minimum; ties go to the smallest N. Throws on an empty curve.
CurvePoint optimal_sample_size(const MseCurve& curve);

enum class MseFormula { bound, exact_recursion, arith_mean, mle, taylor };

std::string to_string(MseFormula f);

/// Parameters held fixed along a curve. The exact recursion uses the linear
/// drift increments K/N.
struct CurveInputs
{
    ModelParams params;
    double lipschitz = 0.0;
    LearningRate rate{1.0};
};

struct NRange
{
    std::size_t n_min = 1;
    std::size_t n_max = 1;
};

double evaluate_formula(MseFormula formula, const CurveInputs& inputs, std::size_t n);

/// Curve sweep over [n_min, n_max], parallel across N. `threads` <= 0 uses
/// the OpenMP default. Output is identical to mse_curve_serial.
MseCurve mse_curve(MseFormula formula, const CurveInputs& inputs, NRange range,
                   int threads = 0);

/// Serial reference for mse_curve.
MseCurve mse_curve_serial(MseFormula formula, const CurveInputs& inputs, NRange range);

}  // namespace oudrift
