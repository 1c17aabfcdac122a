#include "hdmt/projtest.hpp"

#include "hdmt/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hdmt {

SplitPlan make_split(int n, double kappa, std::vector<int> permutation) {
  require(kappa > 0.0 && kappa < 1.0, "split: kappa must lie in (0, 1)");
  require(static_cast<int>(permutation.size()) == n,
          "split: permutation length must equal n");
  const int n2 = static_cast<int>(std::floor(kappa * n + 1e-9));
  const int n1 = n - n2;
  if (n2 < 2 || n1 < 2) {
    std::ostringstream os;
    os << "split: halves too small (n1 = " << n1 << ", n2 = " << n2
       << "; each needs at least 2)";
    throw InvalidArgument(os.str());
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int idx : permutation) {
    require(idx >= 0 && idx < n && !seen[static_cast<std::size_t>(idx)],
            "split: permutation is not a bijection on 0..n-1");
    seen[static_cast<std::size_t>(idx)] = 1;
  }
  return {std::move(permutation), n1, n2};
}

SplitPlan make_split(int n, double kappa) {
  std::vector<int> identity(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(identity.begin(), identity.end(), 0);
  return make_split(n, kappa, std::move(identity));
}

std::string_view to_string(Reference r) {
  return r == Reference::Normal ? "normal" : "t";
}

Reference parse_reference(std::string_view name) {
  if (name == "normal") return Reference::Normal;
  if (name == "t" || name == "student-t") return Reference::StudentT;
  throw InvalidArgument("unknown reference '" + std::string(name) +
                        "' (expected normal or t)");
}

ProjectedT t_test_of(const Vector& y, Reference reference) {
  const Eigen::Index n2 = y.size();
  require(n2 >= 2, "projected t-test: need at least two observations");
  if (y.maxCoeff() == y.minCoeff()) {
    if (y[0] == 0.0) return {0.0, 1.0, true};
    throw DataError("projected t-test: projection is a nonzero constant");
  }
  const double mean = y.mean();
  const double var = (y.array() - mean).square().sum() / static_cast<double>(n2 - 1);
  const double t = std::sqrt(static_cast<double>(n2)) * mean / std::sqrt(var);
  const double tail = reference == Reference::Normal
                          ? dist::normal_sf(std::abs(t))
                          : dist::student_t_sf(std::abs(t), static_cast<double>(n2 - 1));
  return {t, std::min(1.0, 2.0 * tail), false};
}

ProjectedT project_and_t(const Eigen::Ref<const Matrix>& rows, const Vector& w,
                         Reference reference) {
  require(rows.cols() == w.size(), "projected t-test: dimension mismatch");
  return t_test_of(rows * w, reference);
}

std::string_view to_string(ZeroDirection rule) {
  return rule == ZeroDirection::LeadingCoordinate ? "leading" : "pvalue-one";
}

ZeroDirection parse_zero_direction(std::string_view name) {
  if (name == "leading") return ZeroDirection::LeadingCoordinate;
  if (name == "pvalue-one") return ZeroDirection::PValueOne;
  throw InvalidArgument("unknown zero-direction rule '" + std::string(name) +
                        "' (expected leading or pvalue-one)");
}

Eigen::Index leading_coordinate(const Eigen::Ref<const Matrix>& rows) {
  const Eigen::Index n = rows.rows();
  if (n < 2) return -1;
  Eigen::Index best = -1;
  double best_score = 0.0;
  for (Eigen::Index j = 0; j < rows.cols(); ++j) {
    const double mean = rows.col(j).mean();
    const double var = (rows.col(j).array() - mean).square().sum() / static_cast<double>(n - 1);
    if (!(var > 0.0)) continue;
    const double score = std::abs(mean) / std::sqrt(var);
    if (best < 0 || score > best_score) {
      best = j;
      best_score = score;
    }
  }
  return best;
}

SplitOutcome run_split(const DataMatrix& data, const SplitPlan& plan,
                       const PenaltySpec& penalty, const SolverOptions& opts,
                       Reference reference, ZeroDirection zero_rule) {
  require(plan.n() == data.n(), "split plan does not match the data size");
  const std::size_t n1 = static_cast<std::size_t>(plan.n1);
  const Matrix first = data.gather_rows(plan.permutation, 0, n1);
  const Matrix second = data.gather_rows(plan.permutation, n1, plan.permutation.size());

  const double lambda = resolve_lambda(first, penalty, opts);
  SplitOutcome out;
  out.direction = estimate_direction(QuadraticModel::from_sample(first),
                                     penalty.with_lambda(lambda), opts);
  Vector w = out.direction.w_hat;
  if (zero_rule == ZeroDirection::LeadingCoordinate && out.direction.support_size() == 0) {
    const Eigen::Index j = leading_coordinate(first);
    if (j >= 0) {
      w[j] = first.col(j).mean() < 0.0 ? -1.0 : 1.0;
      out.fallback_direction = true;
    }
  }
  out.test = project_and_t(second, w, reference);
  return out;
}

TestResult spt(const DataMatrix& data, const SplitPlan& plan,
               const PenaltySpec& penalty, const SolverOptions& opts,
               Reference reference, double alpha, ZeroDirection zero_rule) {
  require(alpha > 0.0 && alpha < 1.0, "spt: alpha must lie in (0, 1)");
  const SplitOutcome split = run_split(data, plan, penalty, opts, reference, zero_rule);
  TestResult r;
  r.method = "spt";
  r.statistic = split.test.statistic;
  r.p_value = split.test.p_value;
  r.reject = r.p_value < alpha;
  r.diagnostics = {
      {"n1", plan.n1},
      {"n2", plan.n2},
      {"lambda", split.direction.lambda},
      {"support_size", static_cast<double>(split.direction.support_size())},
      {"solver_converged", split.direction.converged ? 1.0 : 0.0},
      {"solver_iterations", split.direction.iterations_used},
      {"stationarity_residual", split.direction.stationarity_residual},
      {"degenerate", split.test.degenerate ? 1.0 : 0.0},
      {"fallback_direction", split.fallback_direction ? 1.0 : 0.0},
  };
  return r;
}

double spt_power_oracle(double n, double kappa, double zeta, double alpha) {
  require(zeta >= 0.0, "power oracle: zeta must be nonnegative");
  require(n > 0.0 && kappa > 0.0 && kappa < 1.0, "power oracle: bad n or kappa");
  require(alpha > 0.0 && alpha < 1.0, "power oracle: alpha must lie in (0, 1)");
  return dist::normal_cdf(-dist::normal_upper_quantile(alpha / 2.0) +
                          std::sqrt(n * kappa * zeta));
}

}  // namespace hdmt
