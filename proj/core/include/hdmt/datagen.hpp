#pragma once

#include "hdmt/common.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace hdmt {

using Rng = std::mt19937_64;

enum class CovarianceFamily { Identity, CompoundSymmetry, Autocorrelation, Custom };

std::string_view to_string(CovarianceFamily family);
CovarianceFamily parse_covariance_family(std::string_view name);

struct CovarianceSpec {
  CovarianceFamily family = CovarianceFamily::Identity;
  double r = 0.0;
  Matrix custom;

  static CovarianceSpec identity() { return {}; }
  static CovarianceSpec compound_symmetry(double r) {
    return {CovarianceFamily::CompoundSymmetry, r, {}};
  }
  static CovarianceSpec autocorrelation(double r) {
    return {CovarianceFamily::Autocorrelation, r, {}};
  }
  static CovarianceSpec from_matrix(Matrix sigma) {
    return {CovarianceFamily::Custom, 0.0, std::move(sigma)};
  }
};

struct MeanSpec {
  enum class Pattern { SparseOnes, Custom };

  Pattern pattern = Pattern::SparseOnes;
  int k = 10;
  double scale = 0.0;
  Vector custom;

  static MeanSpec sparse_ones(int k, double scale) {
    return {Pattern::SparseOnes, k, scale, {}};
  }
  static MeanSpec from_vector(Vector mu, double scale = 1.0) {
    return {Pattern::Custom, 0, scale, std::move(mu)};
  }

  // The p-vector c * (1_k, 0_{p-k}) or c * custom.
  Vector realize(Eigen::Index p) const;
};

// n x p observations, one row per sample. Construction rejects non-finite
// entries.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(Matrix values);

  const Matrix& values() const { return values_; }
  Eigen::Index n() const { return values_.rows(); }
  Eigen::Index p() const { return values_.cols(); }
  auto row(Eigen::Index i) const { return values_.row(i); }

  // Rows selected by index, in the given order.
  Matrix gather_rows(const std::vector<int>& rows, std::size_t begin,
                     std::size_t end) const;

  friend bool operator==(const DataMatrix& a, const DataMatrix& b) {
    return a.values_.rows() == b.values_.rows() &&
           a.values_.cols() == b.values_.cols() && a.values_ == b.values_;
  }

 private:
  Matrix values_;
};

// Seeds for independent streams keyed by (replication, split). For a fixed
// master seed the map is injective on indices below 2^32.
struct SeedPolicy {
  std::uint64_t master_seed = 0;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(const SeedPolicy& policy, std::uint64_t replication,
                          std::uint64_t split);
inline Rng make_rng(const SeedPolicy& policy, std::uint64_t replication,
                    std::uint64_t split) {
  return Rng(derive_seed(policy, replication, split));
}

Matrix build_covariance(const CovarianceSpec& spec, Eigen::Index p);

// Dense lower Cholesky factor. Throws NumericalError naming the first
// non-positive pivot.
Matrix cholesky_factor(const Matrix& sigma);

// Closed-form Cholesky factor of the AR(1) correlation matrix:
// L(i,0) = r^i, L(i,j) = sqrt(1 - r^2) r^(i-j) for 1 <= j <= i.
Matrix ar1_cholesky_factor(double r, Eigen::Index p);

DataMatrix sample_gaussian(Eigen::Index n, const Vector& mu, const Matrix& L,
                           Rng& rng);

enum class TScaling {
  ScaleMatrix,  // LL^T is the scale matrix; covariance is LL^T df/(df-2)
  Covariance,   // rescaled so the covariance is exactly LL^T
};

DataMatrix sample_student_t(Eigen::Index n, const Vector& mu, const Matrix& L,
                            double df, Rng& rng,
                            TScaling scaling = TScaling::ScaleMatrix);

struct Distribution {
  enum class Kind { Gaussian, StudentT };
  Kind kind = Kind::Gaussian;
  double df = 6.0;
  TScaling scaling = TScaling::ScaleMatrix;

  static Distribution gaussian() { return {}; }
  static Distribution student_t(double df) { return {Kind::StudentT, df}; }
};

std::string to_string(const Distribution& d);

// Draws samples for a fixed covariance family. AR(1) uses the O(p)
// recursion x_j = r x_{j-1} + sqrt(1-r^2) z_j (identical to the closed-form
// factor), CS uses the one-factor form sqrt(r) z_0 + sqrt(1-r) z_j, anything
// else goes through a dense Cholesky factor.
class MultivariateSampler {
 public:
  MultivariateSampler(const CovarianceSpec& spec, Eigen::Index p);

  DataMatrix draw(Eigen::Index n, const Vector& mu, const Distribution& dist,
                  Rng& rng) const;

  Eigen::Index p() const { return p_; }

 private:
  void correlated_normal(Eigen::Ref<Vector> out, Rng& rng) const;

  CovarianceFamily family_;
  double r_;
  Eigen::Index p_;
  Matrix factor_;
};

}  // namespace hdmt
