#pragma once

#include "hdmt/common.hpp"
#include "hdmt/penalty.hpp"

#include <vector>

namespace hdmt {

enum class StepRule { FixedInverseLipschitz, Backtracking };

struct LambdaRule {
  enum class Kind { RateFormula, Explicit, Grid };

  Kind kind = Kind::RateFormula;
  double c0 = 1.0;
  double value = 0.0;
  std::vector<double> grid;
  int folds = 5;

  static LambdaRule rate(double c0 = 1.0) { return {Kind::RateFormula, c0, 0.0, {}, 5}; }
  static LambdaRule explicit_value(double lambda) {
    return {Kind::Explicit, 1.0, lambda, {}, 5};
  }
  static LambdaRule cross_validated(std::vector<double> values, int folds = 5) {
    return {Kind::Grid, 1.0, 0.0, std::move(values), folds};
  }
};

struct SolverOptions {
  int max_iterations = 5000;
  double tolerance = 1e-6;
  StepRule step_rule = StepRule::FixedInverseLipschitz;
  LambdaRule lambda_rule;
  // Keep the per-iteration objective in DirectionEstimate::objective_trace.
  bool record_objective = false;
  // Every few iterations, solve the stationarity equations on the current
  // support and penalty pieces directly; the result is kept only when it
  // stays on those pieces and does not raise the objective.
  bool active_set_polish = true;

  void validate() const;
};

struct DirectionEstimate {
  Vector w_hat;
  int iterations_used = 0;
  int polish_steps = 0;
  double stationarity_residual = 0.0;
  double objective = 0.0;
  bool converged = false;
  double lambda = 0.0;
  double lipschitz = 0.0;
  // Set when gamma >= lambda_max(Sigma_hat): the penalty's concavity can
  // swamp the curvature of the loss.
  bool curvature_warning = false;
  std::vector<double> objective_trace;

  Eigen::Index support_size() const {
    return (w_hat.array() != 0.0).count();
  }
};

// 0.5 w^T S w - b^T w. Built either from a dense S or from raw samples; in
// the latter case products with S go through the centred data, so S is never
// formed when n < p.
class QuadraticModel {
 public:
  static QuadraticModel from_covariance(Matrix sigma, Vector xbar);
  // Sample mean and covariance (divisor n - 1) of the rows.
  static QuadraticModel from_sample(const Eigen::Ref<const Matrix>& rows);

  Eigen::Index dim() const { return linear_.size(); }
  const Vector& linear() const { return linear_; }
  Vector apply(const Vector& w) const;
  Matrix covariance() const;
  // S restricted to the given rows and columns.
  Matrix principal_submatrix(const std::vector<Eigen::Index>& idx) const;
  // Largest eigenvalue of S by power iteration (Rayleigh quotient).
  double max_eigenvalue() const;
  double objective_smooth(const Vector& w) const;

 private:
  QuadraticModel() = default;

  Matrix dense_;
  Matrix scaled_rows_;  // centred rows / sqrt(n - 1)
  bool low_rank_ = false;
  Vector linear_;
};

double default_lambda(double n1, double p, double c0 = 1.0);

// 1.01 times the power-iteration estimate of lambda_max.
double lipschitz_estimate(const Matrix& sigma);

DirectionEstimate estimate_direction(const Matrix& sigma, const Vector& xbar,
                                     const PenaltySpec& penalty,
                                     const SolverOptions& opts = {});
DirectionEstimate estimate_direction(const QuadraticModel& model,
                                     const PenaltySpec& penalty,
                                     const SolverOptions& opts = {});

// max_j dist(-(S w - b)_j, subgradient of P_lambda at w_j).
double stationarity_residual(const Vector& w, const Matrix& sigma,
                             const Vector& xbar, const PenaltySpec& penalty);
double stationarity_residual(const Vector& w, const QuadraticModel& model,
                             const PenaltySpec& penalty);

// K-fold cross-validation of the unpenalised quadratic loss over a lambda
// grid; contiguous folds, ties go to the larger lambda.
double select_lambda_cv(const Eigen::Ref<const Matrix>& rows,
                        const std::vector<double>& grid,
                        const PenaltySpec& penalty, const SolverOptions& opts,
                        int folds = 5);

// Applies opts.lambda_rule to the estimation half.
double resolve_lambda(const Eigen::Ref<const Matrix>& rows,
                      const PenaltySpec& penalty, const SolverOptions& opts);

}  // namespace hdmt
