#pragma once

#include "hdmt/baselines.hpp"
#include "hdmt/combine.hpp"
#include "hdmt/datagen.hpp"
#include "hdmt/mpt.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hdmt {

enum class TestId {
  Spt,
  Mpt,          // quantile rho estimate
  MptVariance,  // variance rho estimate
  Mean2x,
  Median2x,
  ZAverage,
  Cauchy,
  Fisher,
  Stouffer,
  Cq,
  Clx,
  Rpt,
  Ridge,
};

std::string_view to_string(TestId id);
TestId parse_test_id(std::string_view name);
std::vector<TestId> all_test_ids();

struct ScenarioConfig {
  int n = 40;
  int p = 100;
  Distribution distribution;
  CovarianceSpec covariance;
  MeanSpec mean;
  double alpha = 0.05;
  int reps = 1000;
  std::vector<TestId> tests{TestId::Mpt};
  // alpha here is ignored in favour of the scenario's alpha.
  MptOptions mpt;
  Reference spt_reference = Reference::StudentT;
  BaselineConfig baselines;
  std::uint64_t master_seed = 0;
  int threads = 1;

  void validate() const;
  std::string key() const;
};

struct SizePowerRow {
  std::string scenario;
  std::string distribution;
  std::string covariance;
  double r = 0.0;
  double c = 0.0;
  int n = 0;
  int p = 0;
  int m = 0;  // split count for split-based tests, 0 otherwise
  std::string test;
  double rejection_rate = 0.0;
  double mc_stderr = 0.0;
  int reps_completed = 0;
  int failures = 0;
};

// Every test sees the same dataset within a replication; data for
// replication i comes from stream (i, 0) whatever the scenario, so grid cells
// share random numbers. Rows follow the order of config.tests. Throws when
// more than 5% of a test's replications fail.
std::vector<SizePowerRow> run_scenario(const ScenarioConfig& config);

// Cartesian product ordered by family, distribution, r, c.
std::vector<SizePowerRow> run_grid(const ScenarioConfig& base,
                                   const std::vector<double>& r_values,
                                   const std::vector<double>& c_values,
                                   const std::vector<CovarianceFamily>& families,
                                   const std::vector<Distribution>& distributions);

// MPT rejection rate for each m. The splits for the largest m are drawn once
// per replication and each m uses the leading ones.
std::vector<SizePowerRow> power_vs_m_study(const ScenarioConfig& config,
                                           const std::vector<int>& m_values);

}  // namespace hdmt
