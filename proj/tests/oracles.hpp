#pragma once

// Independent reference computations used only by the tests. None of these
// go through the closed forms or recursions they check.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

/// c_ij = v exp(-theta |i-j| / N)
inline Matrix covariance(double theta, double sigma, std::size_t n)
{
    const double v = sigma * sigma / (2.0 * theta);
    Matrix c(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c[i][j] = v * std::exp(-theta * std::abs(static_cast<double>(i) - static_cast<double>(j)) /
                                   static_cast<double>(n));
    return c;
}

/// Gauss-Jordan inverse with partial pivoting.
inline Matrix invert(Matrix a)
{
    const std::size_t n = a.size();
    Matrix inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        const double d = a[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] /= d;
            inv[col][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

/// Exponential-smoothing weights on X_1..X_N: beta^{N-1}, alpha beta^{N-j}.
inline std::vector<double> smoothing_weights(double alpha, std::size_t n)
{
    const double beta = 1.0 - alpha;
    std::vector<double> w(n);
    w[0] = std::pow(beta, static_cast<double>(n - 1));
    for (std::size_t j = 2; j <= n; ++j) w[j - 1] = alpha * std::pow(beta, static_cast<double>(n - j));
    return w;
}

/// MSE of sum_j w_j X_j as an estimator of means[N-1]:
/// (sum_j w_j m_j - m_N)^2 + w' C w, with C dense.
inline double linear_estimator_mse(std::span<const double> w, std::span<const double> means,
                                   double theta, double sigma)
{
    const std::size_t n = w.size();
    const Matrix c = covariance(theta, sigma, n);
    double bias = -means[n - 1];
    for (std::size_t j = 0; j < n; ++j) bias += w[j] * means[j];
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) var += w[i] * c[i][j] * w[j];
    return bias * bias + var;
}

/// (1/N^2) sum_{i,j} c_ij
inline double mean_mse_double_sum(double theta, double sigma, std::size_t n)
{
    const double v = sigma * sigma / (2.0 * theta);
    long double total = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            total += v * std::exp(-theta * std::abs(static_cast<double>(i) - static_cast<double>(j)) /
                                  static_cast<double>(n));
    return static_cast<double>(total / (static_cast<long double>(n) * n));
}

/// log N(x; m, sigma^2/(2 theta)) written out from the density.
inline double log_density(double x, double m, double theta, double sigma)
{
    const double var = sigma * sigma / (2.0 * theta);
    return -0.5 * std::log(2.0 * std::numbers::pi * var) - (x - m) * (x - m) / (2.0 * var);
}

inline double rel_err(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace oracle
