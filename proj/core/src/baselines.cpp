#include "hdmt/baselines.hpp"

#include "hdmt/distributions.hpp"
#include "hdmt/mpt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hdmt {

void BaselineConfig::validate() const {
  require(rpt_dim >= 0, "baselines: rpt_dim must be nonnegative");
  require(!ridge_lambda || *ridge_lambda > 0.0, "baselines: ridge lambda must be positive");
  require(ridge_kappa > 0.0 && ridge_kappa < 1.0, "baselines: ridge kappa must lie in (0, 1)");
}

TestResult cq_test(const DataMatrix& data, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "cq: alpha must lie in (0, 1)");
  const Eigen::Index n = data.n();
  if (n < 4) throw InvalidArgument("cq: need n >= 4");
  const Matrix& x = data.values();
  const Matrix gram = x * x.transpose();
  const double nn = static_cast<double>(n) * static_cast<double>(n - 1);
  const double diag = gram.diagonal().sum();
  const double diag_sq = gram.diagonal().squaredNorm();
  const double off = gram.sum() - diag;
  const double off_sq = gram.squaredNorm() - diag_sq;

  const double t = off / nn;
  const double trace_sq = off_sq / nn;
  const double se = std::sqrt(2.0 * trace_sq / nn);

  TestResult r;
  r.method = "cq";
  if (se > 0.0) {
    r.statistic = t / se;
    r.p_value = dist::normal_sf(r.statistic);
  } else {
    r.statistic = 0.0;
    r.p_value = 1.0;
  }
  r.reject = r.p_value < alpha;
  r.diagnostics = {{"u_statistic", t}, {"trace_sigma_sq", trace_sq}};
  return r;
}

TestResult clx_test(const DataMatrix& data, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "clx: alpha must lie in (0, 1)");
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  if (n < 4) throw InvalidArgument("clx: need n >= 4");
  if (p < 2) throw InvalidArgument("clx: need p >= 2");
  const Matrix& x = data.values();
  const Vector mean = x.colwise().mean().transpose();
  const Vector var =
      (x.rowwise() - mean.transpose()).colwise().squaredNorm().transpose() /
      static_cast<double>(n - 1);
  double m = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (!(var[j] > 0.0)) {
      std::ostringstream os;
      os << "clx: column " << j << " has zero variance";
      throw DataError(os.str());
    }
    m = std::max(m, static_cast<double>(n) * mean[j] * mean[j] / var[j]);
  }
  const double lp = std::log(static_cast<double>(p));
  const double shifted = m - 2.0 * lp + std::log(lp);
  const double q = -std::log(std::numbers::pi) - 2.0 * std::log(std::log(1.0 / (1.0 - alpha)));
  const double cdf = std::exp(-std::exp(-shifted / 2.0) / std::sqrt(std::numbers::pi));

  TestResult r;
  r.method = "clx";
  r.statistic = m;
  r.p_value = std::clamp(1.0 - cdf, 0.0, 1.0);
  r.reject = shifted > q;
  r.diagnostics = {{"shifted_statistic", shifted}, {"gumbel_quantile", q}};
  return r;
}

namespace {

struct Hotelling {
  double t2 = 0.0;
  bool ok = false;
};

Hotelling hotelling(const Matrix& y) {
  const Eigen::Index n = y.rows();
  const Vector mean = y.colwise().mean().transpose();
  const Matrix centred = y.rowwise() - mean.transpose();
  const Matrix s = centred.transpose() * centred / static_cast<double>(n - 1);
  Eigen::LDLT<Matrix> ldlt(s);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return {};
  const double dmax = ldlt.vectorD().maxCoeff();
  const double dmin = ldlt.vectorD().minCoeff();
  if (!(dmin > dmax * 1e-12)) return {};
  return {static_cast<double>(n) * mean.dot(ldlt.solve(mean)), true};
}

Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> z;
  Matrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = z(rng);
  }
  return out;
}

TestResult hotelling_result(const Hotelling& h, int n, int k, double alpha) {
  const double f = static_cast<double>(n - k) /
                   (static_cast<double>(k) * static_cast<double>(n - 1)) * h.t2;
  TestResult r;
  r.method = "rpt";
  r.statistic = f;
  r.p_value = std::clamp(dist::fisher_f_sf(f, k, n - k), 0.0, 1.0);
  r.reject = r.p_value < alpha;
  r.diagnostics = {{"k", k}, {"hotelling_t2", h.t2}};
  return r;
}

}  // namespace

TestResult random_projection_test(const DataMatrix& data, const Matrix& projection,
                                  double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "rpt: alpha must lie in (0, 1)");
  require(projection.rows() == data.p(), "rpt: projection has the wrong number of rows");
  const int n = static_cast<int>(data.n());
  const int k = static_cast<int>(projection.cols());
  require(k >= 1 && k < n, "rpt: need 1 <= k < n");
  const Hotelling h = hotelling(data.values() * projection);
  if (!h.ok) throw NumericalError("rpt: projected covariance is singular");
  return hotelling_result(h, n, k, alpha);
}

TestResult random_projection_test(const DataMatrix& data, int k, Rng& rng, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "rpt: alpha must lie in (0, 1)");
  const int n = static_cast<int>(data.n());
  require(k >= 1 && k < n, "rpt: need 1 <= k < n");
  for (int attempt = 0; attempt < 4; ++attempt) {
    const Matrix proj = normal_matrix(data.p(), k, rng);
    const Hotelling h = hotelling(data.values() * proj);
    if (h.ok) {
      TestResult r = hotelling_result(h, n, k, alpha);
      r.diagnostics["redraws"] = attempt;
      return r;
    }
  }
  throw NumericalError("rpt: projected covariance singular after 3 redraws");
}

double default_ridge_lambda(double n1, double p) {
  require(n1 >= 2.0 && p >= 1.0, "ridge: need n1 >= 2 and p >= 1");
  return std::sqrt(std::log(std::max(p, 2.0)) / n1);
}

Vector ridge_direction(const Eigen::Ref<const Matrix>& rows, double lambda) {
  require(lambda > 0.0, "ridge: lambda must be positive");
  const Eigen::Index n = rows.rows();
  const Eigen::Index p = rows.cols();
  require(n >= 2, "ridge: need at least two rows");
  const Vector mean = rows.colwise().mean().transpose();
  const Matrix a = (rows.rowwise() - mean.transpose()) / std::sqrt(static_cast<double>(n - 1));
  if (n < p) {
    // (A^T A + lambda I)^{-1} b = (b - A^T (lambda I + A A^T)^{-1} A b) / lambda
    Matrix small = a * a.transpose();
    small.diagonal().array() += lambda;
    const Vector ab = a * mean;
    return (mean - a.transpose() * small.llt().solve(ab)) / lambda;
  }
  Matrix s = a.transpose() * a;
  s.diagonal().array() += lambda;
  return s.llt().solve(mean);
}

TestResult ridge_projection_test(const DataMatrix& data, double kappa,
                                 std::optional<double> lambda, Rng& rng, double alpha,
                                 Reference reference) {
  require(alpha > 0.0 && alpha < 1.0, "ridge: alpha must lie in (0, 1)");
  const int n = static_cast<int>(data.n());
  const SplitPlan plan = make_split(n, kappa, random_permutation(n, rng));
  const std::size_t n1 = static_cast<std::size_t>(plan.n1);
  const Matrix first = data.gather_rows(plan.permutation, 0, n1);
  const Matrix second = data.gather_rows(plan.permutation, n1, plan.permutation.size());
  const double lam =
      lambda ? *lambda : default_ridge_lambda(plan.n1, static_cast<double>(data.p()));
  const Vector w = ridge_direction(first, lam);
  const ProjectedT t = project_and_t(second, w, reference);

  TestResult r;
  r.method = "ridge";
  r.statistic = t.statistic;
  r.p_value = t.p_value;
  r.reject = r.p_value < alpha;
  r.diagnostics = {{"lambda", lam}, {"n1", plan.n1}, {"n2", plan.n2},
                   {"degenerate", t.degenerate ? 1.0 : 0.0}};
  return r;
}

}  // namespace hdmt
