#include "hdmt/simharness.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hdmt;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.n = 24;
  c.p = 15;
  c.reps = 6;
  c.covariance = CovarianceSpec::compound_symmetry(0.5);
  c.mean = MeanSpec::sparse_ones(5, 0.4);
  c.mpt.m = 6;
  c.tests = all_test_ids();
  c.master_seed = 99;
  return c;
}

bool same_rows(const std::vector<SizePowerRow>& a, const std::vector<SizePowerRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].test != b[i].test || a[i].scenario != b[i].scenario ||
        a[i].rejection_rate != b[i].rejection_rate || a[i].reps_completed != b[i].reps_completed ||
        a[i].failures != b[i].failures) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST(TestId, RoundTrip) {
  for (TestId id : all_test_ids()) EXPECT_EQ(parse_test_id(to_string(id)), id);
  EXPECT_THROW(parse_test_id("bonferroni"), InvalidArgument);
}

TEST(Scenario, SingleReplicationIsZeroOrOne) {
  ScenarioConfig c = small_config();
  c.reps = 1;
  for (const auto& row : run_scenario(c)) {
    EXPECT_TRUE(row.rejection_rate == 0.0 || row.rejection_rate == 1.0) << row.test;
    EXPECT_EQ(row.reps_completed + row.failures, 1);
  }
}

TEST(Scenario, StderrAndRowShape) {
  const ScenarioConfig c = small_config();
  const auto rows = run_scenario(c);
  ASSERT_EQ(rows.size(), c.tests.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].test, to_string(c.tests[i]));
    const double r = rows[i].rejection_rate;
    EXPECT_NEAR(rows[i].mc_stderr, std::sqrt(r * (1 - r) / rows[i].reps_completed), 1e-15);
    EXPECT_EQ(rows[i].scenario, c.key());
  }
}

TEST(Scenario, SerialAndParallelIdentical) {
  ScenarioConfig c = small_config();
  const auto serial = run_scenario(c);
  c.threads = 3;
  EXPECT_TRUE(same_rows(serial, run_scenario(c)));
}

TEST(Scenario, ReproducibleFromSeedAndKey) {
  const ScenarioConfig c = small_config();
  EXPECT_TRUE(same_rows(run_scenario(c), run_scenario(c)));
}

TEST(Scenario, RejectsBadConfig) {
  ScenarioConfig c = small_config();
  c.reps = 0;
  EXPECT_THROW(run_scenario(c), InvalidArgument);
  c = small_config();
  c.tests.clear();
  EXPECT_THROW(run_scenario(c), InvalidArgument);
}

TEST(Grid, OrderingAndCounts) {
  ScenarioConfig c = small_config();
  c.reps = 2;
  c.tests = {TestId::Mpt, TestId::Cq};
  const auto rows = run_grid(c, {0.1, 0.9}, {0.0}, {CovarianceFamily::CompoundSymmetry, CovarianceFamily::Autocorrelation},
                             {Distribution::gaussian()});
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].covariance, "cs");
  EXPECT_EQ(rows[0].r, 0.1);
  EXPECT_EQ(rows[2].r, 0.9);
  EXPECT_EQ(rows[4].covariance, "ar");
  EXPECT_EQ(rows[1].test, "cq");

  ScenarioConfig one = c;
  one.covariance = CovarianceSpec::compound_symmetry(0.1);
  one.mean.scale = 0.0;
  EXPECT_TRUE(same_rows(run_grid(c, {0.1}, {0.0}, {CovarianceFamily::CompoundSymmetry}, {Distribution::gaussian()}),
                        run_scenario(one)));
}

TEST(PowerVsM, SingleMMatchesScenario) {
  ScenarioConfig c = small_config();
  c.tests = {TestId::Mpt};
  const auto study = power_vs_m_study(c, {6});
  const auto direct = run_scenario(c);
  ASSERT_EQ(study.size(), 1u);
  EXPECT_EQ(study[0].rejection_rate, direct[0].rejection_rate);
  EXPECT_EQ(study[0].m, 6);
}
