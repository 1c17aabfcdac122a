#include "hdmt/distributions.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hdmt::dist;

// Reference values computed with an independent statistics package.
TEST(Distributions, NormalQuantiles) {
  EXPECT_NEAR(normal_quantile(0.025), -1.9599639845400545, 1e-12);
  EXPECT_NEAR(normal_upper_quantile(0.025), 1.9599639845400545, 1e-12);
  EXPECT_NEAR(normal_cdf(-1.959964 + 5.0), 0.9988172506410895, 1e-10);
  for (double p = 0.01; p < 0.995; p += 0.01) {
    EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-12);
  }
}

TEST(Distributions, ChiSquaredQuantiles) {
  EXPECT_NEAR(chi_squared_quantile(0.25, 1), 0.10153104426762156, 1e-10);
  EXPECT_NEAR(chi_squared_quantile(0.75, 1), 1.3233036969314664, 1e-10);
  EXPECT_NEAR(chi_squared_quantile(0.85, 39), 48.126281071769355, 1e-8);
  EXPECT_NEAR(chi_squared_quantile(0.15, 39), 29.973925757942872, 1e-8);
}

TEST(Distributions, TailFunctions) {
  EXPECT_NEAR(2.0 * student_t_sf(2.0, 19), 0.060002036386098336, 1e-12);
  EXPECT_NEAR(fisher_f_sf(3.0, 5, 10), 0.06555756209384413, 1e-12);
  EXPECT_NEAR(cauchy_upper_quantile(0.05), 6.313751514675044, 1e-10);
  EXPECT_NEAR(cauchy_sf(0.0), 0.5, 1e-15);
}

TEST(Distributions, KolmogorovSeries) {
  EXPECT_NEAR(kolmogorov_sf(1.0), 0.26999967167735456, 1e-10);
  EXPECT_NEAR(kolmogorov_sf(1.628), 0.009975522431181053, 1e-10);
  EXPECT_DOUBLE_EQ(kolmogorov_sf(0.1), 1.0);
}
