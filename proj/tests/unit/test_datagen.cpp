#include "hdmt/datagen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace hdmt;

TEST(Covariance, FamilyFormulas) {
  EXPECT_TRUE(build_covariance(CovarianceSpec::autocorrelation(0.0), 3).isApprox(Matrix::Identity(3, 3)));
  Matrix cs(2, 2);
  cs << 1, 0.5, 0.5, 1;
  EXPECT_EQ(build_covariance(CovarianceSpec::compound_symmetry(0.5), 2), cs);
  Matrix ar(3, 3);
  ar << 1, .5, .25, .5, 1, .5, .25, .5, 1;
  EXPECT_TRUE(build_covariance(CovarianceSpec::autocorrelation(0.5), 3).isApprox(ar, 1e-15));
}

TEST(Covariance, SymmetricUnitDiagonalOnGrid) {
  for (int p : {1, 2, 7, 50, 500}) {
    for (double r : {0.0, 0.1, 0.5, 0.9, 0.99}) {
      for (auto spec : {CovarianceSpec::compound_symmetry(r), CovarianceSpec::autocorrelation(r)}) {
        const Matrix s = build_covariance(spec, p);
        EXPECT_EQ(s, s.transpose());
        EXPECT_TRUE((s.diagonal().array() == 1.0).all());
      }
    }
  }
}

TEST(Covariance, RejectsBadInput) {
  EXPECT_THROW(build_covariance(CovarianceSpec::compound_symmetry(1.0), 3), InvalidArgument);
  EXPECT_THROW(build_covariance(CovarianceSpec::autocorrelation(-0.1), 3), InvalidArgument);
  EXPECT_THROW(build_covariance(CovarianceSpec::identity(), 0), InvalidArgument);
  Matrix asym(2, 2);
  asym << 1, 0.2, 0.3, 1;
  EXPECT_THROW(build_covariance(CovarianceSpec::from_matrix(asym), 2), InvalidArgument);
}

TEST(Cholesky, SmallCases) {
  EXPECT_EQ(cholesky_factor(Matrix::Identity(4, 4)), Matrix::Identity(4, 4));
  Matrix d(2, 2);
  d << 4, 0, 0, 9;
  Matrix l(2, 2);
  l << 2, 0, 0, 3;
  EXPECT_EQ(cholesky_factor(d), l);
}

TEST(Cholesky, ReconstructionOnGrid) {
  for (int p : {10, 100}) {
    for (int i = 1; i <= 9; ++i) {
      const double r = 0.1 * i;
      for (auto spec : {CovarianceSpec::compound_symmetry(r), CovarianceSpec::autocorrelation(r)}) {
        const Matrix s = build_covariance(spec, p);
        const Matrix l = cholesky_factor(s);
        EXPECT_LE((l * l.transpose() - s).cwiseAbs().maxCoeff(), 1e-10 * s.cwiseAbs().maxCoeff());
        EXPECT_TRUE(l.isLowerTriangular());
      }
    }
  }
  const Matrix cs = build_covariance(CovarianceSpec::compound_symmetry(0.9), 50);
  const Matrix l = cholesky_factor(cs);
  EXPECT_LE((l * l.transpose() - cs).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Cholesky, ReportsFailingPivot) {
  Matrix bad(3, 3);
  bad << 1, 0, 0, 0, 1, 2, 0, 2, 1;
  try {
    cholesky_factor(bad);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos) << e.what();
  }
}

TEST(Cholesky, ClosedFormAr1MatchesDense) {
  for (double r : {0.0, 0.3, 0.5, 0.9}) {
    const Matrix dense = cholesky_factor(build_covariance(CovarianceSpec::autocorrelation(r), 30));
    EXPECT_LE((ar1_cholesky_factor(r, 30) - dense).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Sampling, ZeroFactorGivesMean) {
  Rng rng(1);
  const auto x = sample_gaussian(5, Vector::Zero(3), Matrix::Zero(3, 3), rng);
  EXPECT_EQ(x.values(), Matrix::Zero(5, 3));
  Vector mu(3);
  mu << 1, 2, 3;
  const auto t = sample_student_t(5, mu, Matrix::Zero(3, 3), 6.0, rng);
  for (Eigen::Index i = 0; i < 5; ++i) EXPECT_EQ(t.values().row(i), mu.transpose());
}

TEST(Sampling, GaussianMeanWithinClt) {
  Rng rng(2);
  const auto x = sample_gaussian(10000, Vector::Zero(3), Matrix::Identity(3, 3), rng);
  const Vector mean = x.values().colwise().mean().transpose();
  EXPECT_LE(mean.cwiseAbs().maxCoeff(), 4.0 / 100.0);
}

TEST(Sampling, EmpiricalCovarianceMatches) {
  const Matrix sigma = build_covariance(CovarianceSpec::autocorrelation(0.6), 5);
  Rng rng(3);
  const auto x = sample_gaussian(100000, Vector::Zero(5), cholesky_factor(sigma), rng);
  const Matrix c = x.values().rowwise() - x.values().colwise().mean();
  const Matrix emp = c.transpose() * c / (100000.0 - 1.0);
  EXPECT_LE((emp - sigma).cwiseAbs().maxCoeff(), 0.02);
}

TEST(Sampling, StudentTLargeDfIsNearlyGaussian) {
  Rng rng(4);
  const auto x = sample_student_t(10000, Vector::Zero(3), Matrix::Identity(3, 3), 1e6, rng);
  const Matrix c = x.values().rowwise() - x.values().colwise().mean();
  const Vector var = c.colwise().squaredNorm().transpose() / 9999.0;
  EXPECT_LE((var.array() - 1.0).abs().maxCoeff(), 0.05);
  EXPECT_THROW(sample_student_t(3, Vector::Zero(3), Matrix::Identity(3, 3), 2.0, rng), InvalidArgument);
}

TEST(Sampling, StudentTCovarianceScaling) {
  const Matrix l = Matrix::Identity(2, 2);
  Rng a(5), b(5);
  const auto scale = sample_student_t(50000, Vector::Zero(2), l, 6.0, a, TScaling::ScaleMatrix);
  const auto cov = sample_student_t(50000, Vector::Zero(2), l, 6.0, b, TScaling::Covariance);
  const double vs = scale.values().col(0).squaredNorm() / 50000.0;
  const double vc = cov.values().col(0).squaredNorm() / 50000.0;
  EXPECT_NEAR(vs, 1.5, 0.1);
  EXPECT_NEAR(vc, 1.0, 0.07);
}

TEST(Sampling, Deterministic) {
  const MultivariateSampler s(CovarianceSpec::compound_symmetry(0.4), 8);
  for (auto dist : {Distribution::gaussian(), Distribution::student_t(6)}) {
    Rng a(11), b(11);
    EXPECT_EQ(s.draw(6, Vector::Zero(8), dist, a), s.draw(6, Vector::Zero(8), dist, b));
  }
}

TEST(Sampling, FastPathsMatchCovariance) {
  for (auto spec : {CovarianceSpec::compound_symmetry(0.5), CovarianceSpec::autocorrelation(0.7)}) {
    const MultivariateSampler s(spec, 6);
    Rng rng(9);
    const auto x = s.draw(100000, Vector::Zero(6), Distribution::gaussian(), rng);
    const Matrix emp = x.values().transpose() * x.values() / 100000.0;
    EXPECT_LE((emp - build_covariance(spec, 6)).cwiseAbs().maxCoeff(), 0.02);
  }
}

TEST(DataMatrix, RejectsNonFinite) {
  Matrix m = Matrix::Zero(3, 2);
  m(1, 1) = std::nan("");
  EXPECT_THROW(DataMatrix{m}, DataError);
}

TEST(Seeds, PureAndCollisionFree) {
  const SeedPolicy policy{42};
  EXPECT_EQ(derive_seed(policy, 3, 4), derive_seed(policy, 3, 4));
  EXPECT_NE(derive_seed(policy, 0, 0), derive_seed(policy, 0, 1));
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 100; ++r) {
    for (std::uint64_t s = 0; s < 100; ++s) seen.insert(derive_seed(policy, r, s));
  }
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(derive_seed(SeedPolicy{1}, 0, 0), derive_seed(SeedPolicy{2}, 0, 0));
}

TEST(MeanSpec, SparseOnes) {
  const Vector mu = MeanSpec::sparse_ones(10, 0.5).realize(20);
  EXPECT_DOUBLE_EQ(mu.head(10).sum(), 5.0);
  EXPECT_DOUBLE_EQ(mu.tail(10).cwiseAbs().sum(), 0.0);
  EXPECT_THROW(MeanSpec::sparse_ones(10, 1.0).realize(5), InvalidArgument);
}
