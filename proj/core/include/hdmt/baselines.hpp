#pragma once

#include "hdmt/datagen.hpp"
#include "hdmt/projtest.hpp"

#include <optional>

namespace hdmt {

struct BaselineConfig {
  // Projection dimension for the random projection test; 0 means floor(n/2).
  int rpt_dim = 0;
  // Ridge penalty; unset means sqrt(log p / n1).
  std::optional<double> ridge_lambda;
  double ridge_kappa = 0.5;
  Reference ridge_reference = Reference::StudentT;

  void validate() const;
};

// Unbiased U-statistic for ||mu||^2 standardised by the pairwise estimate of
// tr(Sigma^2); one-sided normal p-value.
TestResult cq_test(const DataMatrix& data, double alpha);

// max_j n xbar_j^2 / s_jj against its Gumbel limit.
TestResult clx_test(const DataMatrix& data, double alpha);

// Hotelling T^2 of the data projected by a p x k standard normal matrix
// drawn from rng. A singular projected covariance triggers up to three
// fresh draws before a NumericalError.
TestResult random_projection_test(const DataMatrix& data, int k, Rng& rng, double alpha);
// Same test with a caller-supplied projection.
TestResult random_projection_test(const DataMatrix& data, const Matrix& projection,
                                  double alpha);

// Splits like the single-split test, uses (S_1 + lambda I)^{-1} xbar_1 as
// the direction and t-tests the projected second half.
TestResult ridge_projection_test(const DataMatrix& data, double kappa,
                                 std::optional<double> lambda, Rng& rng, double alpha,
                                 Reference reference = Reference::StudentT);

Vector ridge_direction(const Eigen::Ref<const Matrix>& rows, double lambda);

double default_ridge_lambda(double n1, double p);

}  // namespace hdmt
