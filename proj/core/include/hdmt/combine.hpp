#pragma once

#include "hdmt/common.hpp"
#include "hdmt/projtest.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hdmt {

// p-values are clamped to [kPClamp, 1 - kPClamp] before the normal quantile.
inline constexpr double kPClamp = 1e-15;

struct ZVector {
  Vector z;

  Eigen::Index m() const { return z.size(); }
  double mean() const;
  // Unbiased (divisor m - 1).
  double sample_variance() const;
};

ZVector z_transform(std::span<const double> pvals);

enum class RhoMethod { Variance, Quantile };

std::string_view to_string(RhoMethod method);
RhoMethod parse_rho_method(std::string_view name);

// Which chi-square quantile the quantile estimator divides by.
//  LowerOneMinusBeta: q with P(X <= q) = 1 - beta (default; keeps the level).
//  UpperOneMinusBeta: q with P(X > q) = 1 - beta.
enum class ChiSquareConvention { LowerOneMinusBeta, UpperOneMinusBeta };

struct RhoEstimate {
  double value = 0.0;
  RhoMethod method = RhoMethod::Quantile;
  double beta = 0.0;  // only meaningful for the quantile estimator
};

// max(0, 1 - s_Z^2)
RhoEstimate rho_hat1(const ZVector& z);
// max(0, 1 - (m - 1) s_Z^2 / q_beta)
RhoEstimate rho_hat2(const ZVector& z, double beta,
                     ChiSquareConvention convention = ChiSquareConvention::LowerOneMinusBeta);

// Zbar / sqrt((1 + (m - 1) rho) / m)
double m_statistic(const ZVector& z, const RhoEstimate& rho);

struct CriticalEntry {
  int m;
  double value;
};

// Least-favourable critical values c(m, alpha/2) for the variance estimator
// and the largest admissible beta for the quantile estimator, alpha = 0.05.
std::span<const CriticalEntry> critical_table(RhoMethod method);

struct CriticalValue {
  double c = 0.0;
  double beta = 0.0;   // quantile method only
  int table_m = 0;     // tabulated m actually used (0 for an override)
};

// Untabulated m maps to the nearest larger tabulated m. Levels other than
// 0.05 need an explicit override.
CriticalValue critical_value(RhoMethod method, int m, double alpha,
                             std::optional<double> override_c = std::nullopt);

enum class Combiner { Mean2x, Median2x, ZAverage, Cauchy, Fisher, Stouffer };

std::string_view to_string(Combiner c);
Combiner parse_combiner(std::string_view name);
bool assumes_independence(Combiner c);

TestResult combine(Combiner method, std::span<const double> pvals, double alpha);

}  // namespace hdmt
