#pragma once

#include "hdmt/combine.hpp"
#include "hdmt/datagen.hpp"
#include "hdmt/optimizer.hpp"
#include "hdmt/penalty.hpp"
#include "hdmt/projtest.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace hdmt {

// Fisher-Yates shuffle of 0..n-1.
std::vector<int> random_permutation(int n, Rng& rng);

// Permutation k is drawn from stream (replication, k + 1) of the policy;
// stream 0 of every replication is reserved for data generation.
std::vector<std::vector<int>> generate_permutations(int n, int m,
                                                    const SeedPolicy& seeds,
                                                    std::uint64_t replication = 0);

struct MptOptions {
  int m = 40;
  double kappa = 0.5;
  double alpha = 0.05;
  // lambda is resolved per split from solver.lambda_rule.
  PenaltySpec penalty = PenaltySpec::scad(0.0);
  SolverOptions solver;
  RhoMethod rho_method = RhoMethod::Quantile;
  ChiSquareConvention chi_square_convention = ChiSquareConvention::LowerOneMinusBeta;
  std::optional<double> critical_override;
  // Exact t reference so each split's Z is standard normal under H0 at any n2.
  Reference reference = Reference::StudentT;
  ZeroDirection zero_direction = ZeroDirection::LeadingCoordinate;
  int threads = 1;

  void validate() const;
};

struct SplitDiagnostics {
  double statistic = 0.0;
  double p_value = 1.0;
  double lambda = 0.0;
  int iterations = 0;
  Eigen::Index support_size = 0;
  bool converged = false;
  bool degenerate = false;
  bool fallback_direction = false;
};

struct MptResult {
  std::vector<double> p_values;
  ZVector z;
  RhoEstimate rho_hat;
  double m_stat = 0.0;
  double critical = 0.0;
  int table_m = 0;
  bool reject = false;
  int nonconverged_splits = 0;
  int degenerate_splits = 0;
  int fallback_splits = 0;
  std::vector<SplitDiagnostics> per_split;
};

// Rejects data a projected t-test cannot handle: fewer than four rows or a
// zero-variance column.
void validate_testable(const DataMatrix& data);

// Step 3 on its own: Z transform, rho estimate, M statistic, table lookup.
MptResult combine_split_pvalues(std::vector<double> p_values, RhoMethod method,
                                double alpha,
                                std::optional<double> critical_override = std::nullopt,
                                ChiSquareConvention convention =
                                    ChiSquareConvention::LowerOneMinusBeta);

// Runs the m splits and returns their outcomes in split order.
std::vector<SplitDiagnostics> run_splits(const DataMatrix& data, const MptOptions& opts,
                                         const SeedPolicy& seeds,
                                         std::uint64_t replication = 0);

MptResult mpt(const DataMatrix& data, const MptOptions& opts, const SeedPolicy& seeds,
              std::uint64_t replication = 0);

struct ExchangeabilityReport {
  int m = 0;
  int reps = 0;
  Matrix correlations;  // m x m Pearson correlations of T_k across reps
  double correlation_spread = 0.0;  // max - min over pairs i < j
  double correlation_stderr = 0.0;  // (1 - rho_bar^2) / sqrt(reps)
  Matrix ks;                        // pairwise two-sample KS statistics
  double max_ks = 0.0;
  double ks_critical_01 = 0.0;      // two-sample KS critical value, level 0.01
};

using DataGenerator = std::function<DataMatrix(std::uint64_t replication)>;
using SplitStatistic =
    std::function<double(const DataMatrix& data, const std::vector<int>& permutation)>;

ExchangeabilityReport exchangeability_probe(const DataGenerator& generator,
                                            const SplitStatistic& statistic, int m,
                                            int reps, const SeedPolicy& seeds,
                                            int threads = 1);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace hdmt
