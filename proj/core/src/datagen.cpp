#include "hdmt/datagen.hpp"

#include <cmath>
#include <sstream>

namespace hdmt {

std::string_view to_string(CovarianceFamily family) {
  switch (family) {
    case CovarianceFamily::Identity: return "identity";
    case CovarianceFamily::CompoundSymmetry: return "cs";
    case CovarianceFamily::Autocorrelation: return "ar";
    case CovarianceFamily::Custom: return "custom";
  }
  return "unknown";
}

CovarianceFamily parse_covariance_family(std::string_view name) {
  if (name == "identity" || name == "id") return CovarianceFamily::Identity;
  if (name == "cs") return CovarianceFamily::CompoundSymmetry;
  if (name == "ar") return CovarianceFamily::Autocorrelation;
  throw InvalidArgument("unknown covariance family '" + std::string(name) +
                        "' (expected identity, cs or ar)");
}

Vector MeanSpec::realize(Eigen::Index p) const {
  require(p >= 1, "mean: dimension must be positive");
  if (pattern == Pattern::Custom) {
    require(custom.size() == p, "mean: custom vector has wrong length");
    return scale * custom;
  }
  require(k >= 0 && k <= p, "mean: sparse support size must lie in [0, p]");
  Vector mu = Vector::Zero(p);
  mu.head(k).setConstant(scale);
  return mu;
}

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (!values_.allFinite()) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      for (Eigen::Index j = 0; j < values_.cols(); ++j) {
        if (!std::isfinite(values_(i, j))) {
          std::ostringstream os;
          os << "non-finite value at row " << i << ", column " << j;
          throw DataError(os.str());
        }
      }
    }
  }
}

Matrix DataMatrix::gather_rows(const std::vector<int>& rows, std::size_t begin,
                               std::size_t end) const {
  Matrix out(static_cast<Eigen::Index>(end - begin), values_.cols());
  for (std::size_t i = begin; i < end; ++i) {
    out.row(static_cast<Eigen::Index>(i - begin)) = values_.row(rows[i]);
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(const SeedPolicy& policy, std::uint64_t replication,
                          std::uint64_t split) {
  // The key is injective for indices below 2^32; adding an odd multiple of
  // it and passing through the splitmix64 finalizer (a bijection) keeps it
  // injective for every master seed.
  const std::uint64_t key = (replication << 32) ^ (split & 0xffffffffULL);
  const std::uint64_t base = splitmix64(policy.master_seed);
  return splitmix64(base + key * 0xd1342543de82ef95ULL);
}

Matrix build_covariance(const CovarianceSpec& spec, Eigen::Index p) {
  require(p >= 1, "covariance: dimension must be positive");
  const bool structured = spec.family == CovarianceFamily::CompoundSymmetry ||
                          spec.family == CovarianceFamily::Autocorrelation;
  if (structured) {
    require(spec.r >= 0.0 && spec.r < 1.0,
            "covariance: correlation r must lie in [0, 1)");
  }
  switch (spec.family) {
    case CovarianceFamily::Identity:
      return Matrix::Identity(p, p);
    case CovarianceFamily::CompoundSymmetry: {
      Matrix sigma = Matrix::Constant(p, p, spec.r);
      sigma.diagonal().setOnes();
      return sigma;
    }
    case CovarianceFamily::Autocorrelation: {
      Matrix sigma(p, p);
      for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
          sigma(i, j) = std::pow(spec.r, static_cast<double>(std::abs(i - j)));
        }
      }
      return sigma;
    }
    case CovarianceFamily::Custom: {
      const Matrix& c = spec.custom;
      require(c.rows() == p && c.cols() == p,
              "covariance: custom matrix must be p x p");
      const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
      require((c - c.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
              "covariance: custom matrix is not symmetric");
      return c;
    }
  }
  throw InvalidArgument("covariance: unknown family");
}

Matrix cholesky_factor(const Matrix& sigma) {
  require(sigma.rows() == sigma.cols(), "cholesky: matrix must be square");
  const Eigen::Index p = sigma.rows();
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  require((sigma - sigma.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "cholesky: matrix is not symmetric");

  Matrix L = Matrix::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double pivot = sigma(j, j) - L.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0)) {
      std::ostringstream os;
      os << "cholesky: matrix is not positive definite (pivot " << j
         << " = " << pivot << ")";
      throw NumericalError(os.str());
    }
    const double d = std::sqrt(pivot);
    L(j, j) = d;
    for (Eigen::Index i = j + 1; i < p; ++i) {
      L(i, j) = (sigma(i, j) - L.row(i).head(j).dot(L.row(j).head(j))) / d;
    }
  }
  return L;
}

Matrix ar1_cholesky_factor(double r, Eigen::Index p) {
  require(p >= 1, "ar1 factor: dimension must be positive");
  require(r >= 0.0 && r < 1.0, "ar1 factor: r must lie in [0, 1)");
  const double s = std::sqrt(1.0 - r * r);
  Matrix L = Matrix::Zero(p, p);
  double rpow = 1.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    L(i, 0) = rpow;
    rpow *= r;
  }
  for (Eigen::Index j = 1; j < p; ++j) {
    double v = s;
    for (Eigen::Index i = j; i < p; ++i) {
      L(i, j) = v;
      v *= r;
    }
  }
  return L;
}

namespace {

Matrix standard_normal_block(Eigen::Index n, Eigen::Index p, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix z(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) z(i, j) = normal(rng);
  }
  return z;
}

void check_sampling_dims(const Vector& mu, const Matrix& L) {
  require(L.rows() == L.cols(), "sample: factor must be square");
  require(mu.size() == L.rows(), "sample: mean and factor dimensions differ");
}

}  // namespace

DataMatrix sample_gaussian(Eigen::Index n, const Vector& mu, const Matrix& L,
                           Rng& rng) {
  require(n >= 1, "sample: n must be positive");
  check_sampling_dims(mu, L);
  Matrix x = standard_normal_block(n, mu.size(), rng) * L.transpose();
  x.rowwise() += mu.transpose();
  return DataMatrix(std::move(x));
}

DataMatrix sample_student_t(Eigen::Index n, const Vector& mu, const Matrix& L,
                            double df, Rng& rng, TScaling scaling) {
  require(n >= 1, "sample: n must be positive");
  require(df > 2.0, "sample: t degrees of freedom must exceed 2");
  check_sampling_dims(mu, L);
  Matrix x = standard_normal_block(n, mu.size(), rng) * L.transpose();
  std::chi_squared_distribution<double> chi2(df);
  const double rescale =
      scaling == TScaling::Covariance ? std::sqrt((df - 2.0) / df) : 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) *= rescale * std::sqrt(df / chi2(rng));
  }
  x.rowwise() += mu.transpose();
  return DataMatrix(std::move(x));
}

std::string to_string(const Distribution& d) {
  if (d.kind == Distribution::Kind::Gaussian) return "gaussian";
  std::ostringstream os;
  os << "t" << d.df;
  return os.str();
}

MultivariateSampler::MultivariateSampler(const CovarianceSpec& spec,
                                         Eigen::Index p)
    : family_(spec.family), r_(spec.r), p_(p) {
  // Validates the spec for every family, including the structured ones.
  if (family_ == CovarianceFamily::Custom) {
    factor_ = cholesky_factor(build_covariance(spec, p));
  } else {
    require(p >= 1, "sampler: dimension must be positive");
    if (family_ != CovarianceFamily::Identity) {
      require(r_ >= 0.0 && r_ < 1.0, "sampler: r must lie in [0, 1)");
    }
  }
}

void MultivariateSampler::correlated_normal(Eigen::Ref<Vector> out,
                                            Rng& rng) const {
  std::normal_distribution<double> normal;
  switch (family_) {
    case CovarianceFamily::Identity:
      for (Eigen::Index j = 0; j < p_; ++j) out[j] = normal(rng);
      return;
    case CovarianceFamily::Autocorrelation: {
      const double s = std::sqrt(1.0 - r_ * r_);
      double prev = normal(rng);
      out[0] = prev;
      for (Eigen::Index j = 1; j < p_; ++j) {
        prev = r_ * prev + s * normal(rng);
        out[j] = prev;
      }
      return;
    }
    case CovarianceFamily::CompoundSymmetry: {
      const double common = std::sqrt(r_) * normal(rng);
      const double s = std::sqrt(1.0 - r_);
      for (Eigen::Index j = 0; j < p_; ++j) out[j] = common + s * normal(rng);
      return;
    }
    case CovarianceFamily::Custom: {
      Vector z(p_);
      for (Eigen::Index j = 0; j < p_; ++j) z[j] = normal(rng);
      out = factor_.triangularView<Eigen::Lower>() * z;
      return;
    }
  }
}

DataMatrix MultivariateSampler::draw(Eigen::Index n, const Vector& mu,
                                     const Distribution& dist, Rng& rng) const {
  require(n >= 1, "sampler: n must be positive");
  require(mu.size() == p_, "sampler: mean has wrong dimension");
  const bool heavy = dist.kind == Distribution::Kind::StudentT;
  if (heavy) require(dist.df > 2.0, "sampler: t degrees of freedom must exceed 2");

  Matrix x(n, p_);
  Vector row(p_);
  std::chi_squared_distribution<double> chi2(heavy ? dist.df : 1.0);
  const double rescale = heavy && dist.scaling == TScaling::Covariance
                             ? std::sqrt((dist.df - 2.0) / dist.df)
                             : 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    correlated_normal(row, rng);
    if (heavy) row *= rescale * std::sqrt(dist.df / chi2(rng));
    x.row(i) = (row + mu).transpose();
  }
  return DataMatrix(std::move(x));
}

}  // namespace hdmt
