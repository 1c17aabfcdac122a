#include "hdmt/mpt.hpp"

#include "hdmt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hdmt {

std::vector<int> random_permutation(int n, Rng& rng) {
  require(n >= 1, "permutation: n must be positive");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  // Explicit Fisher-Yates; std::shuffle's draw pattern is implementation
  // defined, this one is fixed.
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(pick(rng))]);
  }
  return perm;
}

std::vector<std::vector<int>> generate_permutations(int n, int m,
                                                    const SeedPolicy& seeds,
                                                    std::uint64_t replication) {
  require(m >= 2, "generate_permutations: need m >= 2");
  require(n >= 4, "generate_permutations: need n >= 4");
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    Rng rng = make_rng(seeds, replication, static_cast<std::uint64_t>(k) + 1);
    out.push_back(random_permutation(n, rng));
  }
  return out;
}

void MptOptions::validate() const {
  require(m >= 2, "mpt: need m >= 2");
  require(kappa > 0.0 && kappa < 1.0, "mpt: kappa must lie in (0, 1)");
  require(alpha > 0.0 && alpha < 1.0, "mpt: alpha must lie in (0, 1)");
  require(threads >= 1, "mpt: threads must be positive");
  penalty.validate();
  solver.validate();
  if (!critical_override) {
    require(std::abs(alpha - 0.05) <= 1e-12,
            "mpt: only alpha = 0.05 is tabulated; supply a critical value override");
  }
}

void validate_testable(const DataMatrix& data) {
  if (data.n() < 4) throw DataError("data: need at least 4 observations");
  if (data.p() < 1) throw DataError("data: need at least one variable");
  const Matrix& x = data.values();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (x.col(j).maxCoeff() == x.col(j).minCoeff()) {
      std::ostringstream os;
      os << "data: column " << j << " has zero variance";
      throw DataError(os.str());
    }
  }
}

MptResult combine_split_pvalues(std::vector<double> p_values, RhoMethod method,
                                double alpha, std::optional<double> critical_override,
                                ChiSquareConvention convention) {
  MptResult r;
  r.z = z_transform(p_values);
  const int m = static_cast<int>(p_values.size());
  const CriticalValue cv = critical_value(method, m, alpha, critical_override);
  r.rho_hat = method == RhoMethod::Variance ? rho_hat1(r.z)
                                            : rho_hat2(r.z, cv.beta, convention);
  r.m_stat = m_statistic(r.z, r.rho_hat);
  r.critical = cv.c;
  r.table_m = cv.table_m;
  r.reject = std::abs(r.m_stat) > r.critical;
  r.p_values = std::move(p_values);
  return r;
}

std::vector<SplitDiagnostics> run_splits(const DataMatrix& data, const MptOptions& opts,
                                         const SeedPolicy& seeds,
                                         std::uint64_t replication) {
  const int n = static_cast<int>(data.n());
  const auto perms = generate_permutations(n, opts.m, seeds, replication);
  std::vector<SplitDiagnostics> out(static_cast<std::size_t>(opts.m));
  parallel_for(out.size(), opts.threads, [&](std::size_t k) {
    const SplitPlan plan = make_split(n, opts.kappa, perms[k]);
    const SplitOutcome s =
        run_split(data, plan, opts.penalty, opts.solver, opts.reference,
                  opts.zero_direction);
    SplitDiagnostics& d = out[k];
    d.statistic = s.test.statistic;
    d.p_value = s.test.p_value;
    d.degenerate = s.test.degenerate;
    d.lambda = s.direction.lambda;
    d.iterations = s.direction.iterations_used;
    d.support_size = s.direction.support_size();
    d.converged = s.direction.converged;
    d.fallback_direction = s.fallback_direction;
  });
  return out;
}

MptResult mpt(const DataMatrix& data, const MptOptions& opts, const SeedPolicy& seeds,
              std::uint64_t replication) {
  opts.validate();
  validate_testable(data);
  auto splits = run_splits(data, opts, seeds, replication);
  std::vector<double> pvals;
  pvals.reserve(splits.size());
  for (const auto& s : splits) pvals.push_back(s.p_value);

  MptResult r = combine_split_pvalues(std::move(pvals), opts.rho_method, opts.alpha,
                                      opts.critical_override, opts.chi_square_convention);
  for (const auto& s : splits) {
    if (!s.converged) ++r.nonconverged_splits;
    if (s.degenerate) ++r.degenerate_splits;
    if (s.fallback_direction) ++r.fallback_splits;
  }
  r.per_split = std::move(splits);
  return r;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), "ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

ExchangeabilityReport exchangeability_probe(const DataGenerator& generator,
                                            const SplitStatistic& statistic, int m,
                                            int reps, const SeedPolicy& seeds,
                                            int threads) {
  require(m >= 3, "exchangeability_probe: need m >= 3");
  require(reps >= 2, "exchangeability_probe: need at least two replications");

  Matrix values(reps, m);
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
    const DataMatrix data = generator(r);
    const auto perms = generate_permutations(static_cast<int>(data.n()), m, seeds, r);
    for (int k = 0; k < m; ++k) {
      values(static_cast<Eigen::Index>(r), k) = statistic(data, perms[static_cast<std::size_t>(k)]);
    }
  });

  ExchangeabilityReport rep;
  rep.m = m;
  rep.reps = reps;
  rep.correlations = Matrix::Identity(m, m);
  rep.ks = Matrix::Zero(m, m);

  const Matrix centred = values.rowwise() - values.colwise().mean();
  const Vector sd = centred.colwise().norm().transpose();
  double lo = 1.0, hi = -1.0, sum = 0.0;
  int pairs = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double c;
      if (sd[i] == 0.0 && sd[j] == 0.0) {
        c = 1.0;
      } else if (sd[i] == 0.0 || sd[j] == 0.0) {
        c = 0.0;
      } else {
        c = centred.col(i).dot(centred.col(j)) / (sd[i] * sd[j]);
      }
      rep.correlations(i, j) = rep.correlations(j, i) = c;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      sum += c;
      ++pairs;

      std::vector<double> a(values.col(i).data(), values.col(i).data() + reps);
      std::vector<double> b(values.col(j).data(), values.col(j).data() + reps);
      const double d = ks_two_sample(std::move(a), std::move(b));
      rep.ks(i, j) = rep.ks(j, i) = d;
      rep.max_ks = std::max(rep.max_ks, d);
    }
  }
  rep.correlation_spread = hi - lo;
  const double mean_corr = sum / pairs;
  rep.correlation_stderr = (1.0 - mean_corr * mean_corr) / std::sqrt(static_cast<double>(reps));
  // c(0.01) = sqrt(-ln(0.005) / 2); n_a = n_b = reps.
  rep.ks_critical_01 = std::sqrt(-std::log(0.005) / 2.0) * std::sqrt(2.0 / reps);
  return rep;
}

}  // namespace hdmt
