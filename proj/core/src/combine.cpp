#include "hdmt/combine.hpp"

#include "hdmt/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hdmt {

namespace {

constexpr std::array<CriticalEntry, 10> kVarianceTable{{
    {2, 1.988}, {3, 2.058}, {4, 2.133}, {5, 2.204}, {10, 2.489},
    {20, 2.865}, {40, 3.126}, {100, 4.115}, {1000, 7.17}, {10000, 12.66},
}};

constexpr std::array<CriticalEntry, 10> kQuantileBetaTable{{
    {2, 0.25}, {3, 0.25}, {4, 0.25}, {5, 0.25}, {10, 0.20},
    {20, 0.20}, {40, 0.15}, {100, 0.15}, {1000, 0.10}, {10000, 0.05},
}};

double clamp_p(double p) { return std::clamp(p, kPClamp, 1.0 - kPClamp); }

void check_pvalues(std::span<const double> pvals) {
  for (std::size_t i = 0; i < pvals.size(); ++i) {
    if (!(pvals[i] >= 0.0 && pvals[i] <= 1.0)) {
      std::ostringstream os;
      os << "p-value " << i << " (" << pvals[i] << ") is outside [0, 1]";
      throw InvalidArgument(os.str());
    }
  }
}

}  // namespace

// Sums run over a sorted copy so results do not depend on the order of the
// splits, bit for bit.
namespace {
std::vector<double> sorted_copy(const Vector& z) {
  std::vector<double> v(z.data(), z.data() + z.size());
  std::sort(v.begin(), v.end());
  return v;
}
}  // namespace

double ZVector::mean() const {
  if (z.size() == 0) return 0.0;
  double sum = 0.0;
  for (double v : sorted_copy(z)) sum += v;
  return sum / static_cast<double>(z.size());
}

double ZVector::sample_variance() const {
  const Eigen::Index m = z.size();
  if (m < 2) return 0.0;
  const double mu = mean();
  double ss = 0.0;
  for (double v : sorted_copy(z)) ss += (v - mu) * (v - mu);
  return ss / static_cast<double>(m - 1);
}

ZVector z_transform(std::span<const double> pvals) {
  require(pvals.size() >= 2, "z_transform: need at least two p-values");
  check_pvalues(pvals);
  ZVector out;
  out.z.resize(static_cast<Eigen::Index>(pvals.size()));
  for (std::size_t k = 0; k < pvals.size(); ++k) {
    out.z[static_cast<Eigen::Index>(k)] = dist::normal_quantile(clamp_p(pvals[k]));
  }
  return out;
}

std::string_view to_string(RhoMethod method) {
  return method == RhoMethod::Variance ? "variance" : "quantile";
}

RhoMethod parse_rho_method(std::string_view name) {
  if (name == "variance" || name == "rho1") return RhoMethod::Variance;
  if (name == "quantile" || name == "rho2") return RhoMethod::Quantile;
  throw InvalidArgument("unknown rho method '" + std::string(name) +
                        "' (expected variance or quantile)");
}

RhoEstimate rho_hat1(const ZVector& z) {
  require(z.m() >= 2, "rho_hat1: need m >= 2");
  return {std::max(0.0, 1.0 - z.sample_variance()), RhoMethod::Variance, 0.0};
}

RhoEstimate rho_hat2(const ZVector& z, double beta, ChiSquareConvention convention) {
  require(z.m() >= 2, "rho_hat2: need m >= 2");
  require(beta > 0.0 && beta < 1.0, "rho_hat2: beta must lie in (0, 1)");
  const double df = static_cast<double>(z.m() - 1);
  const double q = convention == ChiSquareConvention::LowerOneMinusBeta
                       ? dist::chi_squared_quantile(1.0 - beta, df)
                       : dist::chi_squared_quantile(beta, df);
  const double value = std::max(0.0, 1.0 - df * z.sample_variance() / q);
  return {std::min(1.0, value), RhoMethod::Quantile, beta};
}

double m_statistic(const ZVector& z, const RhoEstimate& rho) {
  require(rho.value >= 0.0 && rho.value <= 1.0, "m_statistic: rho must lie in [0, 1]");
  const double m = static_cast<double>(z.m());
  return z.mean() / std::sqrt((1.0 + (m - 1.0) * rho.value) / m);
}

std::span<const CriticalEntry> critical_table(RhoMethod method) {
  if (method == RhoMethod::Variance) return kVarianceTable;
  return kQuantileBetaTable;
}

CriticalValue critical_value(RhoMethod method, int m, double alpha,
                             std::optional<double> override_c) {
  require(m >= 2, "critical_value: need m >= 2");
  const auto table = critical_table(method);
  // Beta is still needed by the quantile estimator under an override.
  const auto it = std::find_if(table.begin(), table.end(),
                               [m](const CriticalEntry& e) { return e.m >= m; });
  if (override_c) {
    require(*override_c > 0.0, "critical_value: override must be positive");
    const double beta = it != table.end() ? it->value : table.back().value;
    return {*override_c, method == RhoMethod::Quantile ? beta : 0.0, 0};
  }
  if (std::abs(alpha - 0.05) > 1e-12) {
    throw InvalidArgument(
        "critical_value: only alpha = 0.05 is tabulated; supply an explicit "
        "critical value override for other levels");
  }
  if (it == table.end()) {
    std::ostringstream os;
    os << "critical_value: m = " << m << " exceeds the largest tabulated m ("
       << table.back().m << ")";
    throw InvalidArgument(os.str());
  }
  if (method == RhoMethod::Variance) return {it->value, 0.0, it->m};
  return {dist::normal_upper_quantile(alpha / 2.0), it->value, it->m};
}

std::string_view to_string(Combiner c) {
  switch (c) {
    case Combiner::Mean2x: return "mean2x";
    case Combiner::Median2x: return "median2x";
    case Combiner::ZAverage: return "zaverage";
    case Combiner::Cauchy: return "cauchy";
    case Combiner::Fisher: return "fisher";
    case Combiner::Stouffer: return "stouffer";
  }
  return "unknown";
}

Combiner parse_combiner(std::string_view name) {
  if (name == "mean2x" || name == "average") return Combiner::Mean2x;
  if (name == "median2x" || name == "median") return Combiner::Median2x;
  if (name == "zaverage" || name == "z-average") return Combiner::ZAverage;
  if (name == "cauchy") return Combiner::Cauchy;
  if (name == "fisher") return Combiner::Fisher;
  if (name == "stouffer") return Combiner::Stouffer;
  throw InvalidArgument("unknown combiner '" + std::string(name) + "'");
}

bool assumes_independence(Combiner c) {
  return c == Combiner::Fisher || c == Combiner::Stouffer;
}

TestResult combine(Combiner method, std::span<const double> pvals, double alpha) {
  require(!pvals.empty(), "combine: no p-values supplied");
  require(alpha > 0.0 && alpha < 1.0, "combine: alpha must lie in (0, 1)");
  check_pvalues(pvals);
  const double m = static_cast<double>(pvals.size());
  std::vector<double> sorted(pvals.begin(), pvals.end());
  std::sort(sorted.begin(), sorted.end());

  TestResult r;
  r.method = std::string(to_string(method));
  switch (method) {
    case Combiner::Mean2x: {
      double mean = 0.0;
      for (double p : sorted) mean += p;
      mean /= m;
      r.statistic = mean;
      r.p_value = std::min(1.0, 2.0 * mean);
      r.reject = mean <= alpha / 2.0;
      break;
    }
    case Combiner::Median2x: {
      const std::size_t h = sorted.size() / 2;
      const double median =
          sorted.size() % 2 == 1 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
      r.statistic = median;
      r.p_value = std::min(1.0, 2.0 * median);
      r.reject = median <= alpha / 2.0;
      break;
    }
    case Combiner::ZAverage: {
      double sum = 0.0;
      for (double p : sorted) sum += dist::normal_quantile(clamp_p(p));
      r.statistic = sum;
      r.p_value = std::min(1.0, 2.0 * dist::normal_sf(std::abs(sum) / m));
      r.reject = std::abs(sum) >= m * dist::normal_upper_quantile(alpha / 2.0);
      break;
    }
    case Combiner::Cauchy: {
      double sum = 0.0;
      for (double p : sorted) sum += std::tan((0.5 - clamp_p(p)) * std::numbers::pi);
      r.statistic = sum;
      r.p_value = dist::cauchy_sf(sum / m);
      r.reject = sum >= m * dist::cauchy_upper_quantile(alpha);
      r.diagnostics["critical_value"] = m * dist::cauchy_upper_quantile(alpha);
      break;
    }
    case Combiner::Fisher: {
      double sum = 0.0;
      for (double p : sorted) sum += -2.0 * std::log(clamp_p(p));
      r.statistic = sum;
      r.p_value = dist::chi_squared_sf(sum, 2.0 * m);
      r.reject = r.p_value <= alpha;
      break;
    }
    case Combiner::Stouffer: {
      double sum = 0.0;
      for (double p : sorted) sum += dist::normal_quantile(1.0 - clamp_p(p));
      r.statistic = sum / std::sqrt(m);
      r.p_value = dist::normal_sf(r.statistic);
      r.reject = r.p_value <= alpha;
      break;
    }
  }
  r.diagnostics["m"] = m;
  r.diagnostics["combined_statistic"] = r.statistic;
  r.diagnostics["assumes_independence"] = assumes_independence(method) ? 1.0 : 0.0;
  return r;
}

}  // namespace hdmt
