#pragma once

#include "hdmt/common.hpp"
#include "hdmt/datagen.hpp"
#include "hdmt/optimizer.hpp"
#include "hdmt/penalty.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hdmt {

// Row order for one split: the first n1 permuted indices estimate the
// direction, the remaining n2 = floor(kappa * n) are tested.
struct SplitPlan {
  std::vector<int> permutation;  // 0-based bijection on {0..n-1}
  int n1 = 0;
  int n2 = 0;

  int n() const { return n1 + n2; }
};

SplitPlan make_split(int n, double kappa, std::vector<int> permutation);
SplitPlan make_split(int n, double kappa);

enum class Reference { Normal, StudentT };

std::string_view to_string(Reference r);
Reference parse_reference(std::string_view name);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject = false;
  std::string method;
  std::map<std::string, double> diagnostics;
};

struct ProjectedT {
  double statistic = 0.0;
  double p_value = 1.0;
  bool degenerate = false;
};

// One-sample t-test of the projected rows y_i = w^T x_i. An all-zero
// projection is reported as (0, 1, degenerate); a constant nonzero one is a
// DataError.
ProjectedT project_and_t(const Eigen::Ref<const Matrix>& rows, const Vector& w,
                         Reference reference);
ProjectedT t_test_of(const Vector& y, Reference reference);

// What to project on when the penalised estimate is exactly zero.
//  LeadingCoordinate: sign(t_j) e_j for the largest marginal |t_j| of the
//    estimation half. It depends on that half only, so the test stays exact.
//  PValueOne: report the degenerate (0, 1) result.
enum class ZeroDirection { LeadingCoordinate, PValueOne };

std::string_view to_string(ZeroDirection rule);
ZeroDirection parse_zero_direction(std::string_view name);

// Everything one split produces before any decision is taken.
struct SplitOutcome {
  DirectionEstimate direction;
  ProjectedT test;
  bool fallback_direction = false;
};

SplitOutcome run_split(const DataMatrix& data, const SplitPlan& plan,
                       const PenaltySpec& penalty, const SolverOptions& opts,
                       Reference reference,
                       ZeroDirection zero_rule = ZeroDirection::LeadingCoordinate);

TestResult spt(const DataMatrix& data, const SplitPlan& plan,
               const PenaltySpec& penalty, const SolverOptions& opts = {},
               Reference reference = Reference::Normal, double alpha = 0.05,
               ZeroDirection zero_rule = ZeroDirection::LeadingCoordinate);

// Index of the largest |mean_j| / sd_j over columns with positive variance,
// or -1 when there is none.
Eigen::Index leading_coordinate(const Eigen::Ref<const Matrix>& rows);

// Phi(-z_{alpha/2} + sqrt(n kappa zeta)) with zeta = mu^T Sigma^{-1} mu.
double spt_power_oracle(double n, double kappa, double zeta, double alpha);

}  // namespace hdmt
