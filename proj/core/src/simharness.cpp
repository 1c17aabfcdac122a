#include "hdmt/simharness.hpp"

#include "hdmt/distributions.hpp"
#include "hdmt/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace hdmt {

namespace {

constexpr std::array<std::pair<TestId, std::string_view>, 13> kTestNames{{
    {TestId::Spt, "spt"},
    {TestId::Mpt, "mpt"},
    {TestId::MptVariance, "mpt_var"},
    {TestId::Mean2x, "mean2x"},
    {TestId::Median2x, "median2x"},
    {TestId::ZAverage, "zaverage"},
    {TestId::Cauchy, "cauchy"},
    {TestId::Fisher, "fisher"},
    {TestId::Stouffer, "stouffer"},
    {TestId::Cq, "cq"},
    {TestId::Clx, "clx"},
    {TestId::Rpt, "rpt"},
    {TestId::Ridge, "ridge"},
}};

constexpr std::uint64_t kRptStream = 0x10000001;
constexpr std::uint64_t kRidgeStream = 0x10000002;

bool uses_splits(TestId id) {
  switch (id) {
    case TestId::Spt:
    case TestId::Cq:
    case TestId::Clx:
    case TestId::Rpt:
    case TestId::Ridge:
      return false;
    default:
      return true;
  }
}

Combiner combiner_of(TestId id) {
  switch (id) {
    case TestId::Mean2x: return Combiner::Mean2x;
    case TestId::Median2x: return Combiner::Median2x;
    case TestId::ZAverage: return Combiner::ZAverage;
    case TestId::Cauchy: return Combiner::Cauchy;
    case TestId::Fisher: return Combiner::Fisher;
    default: return Combiner::Stouffer;
  }
}

// -1 failed, 0 accepted, 1 rejected.
using Outcome = signed char;

Outcome guarded(auto&& fn) {
  try {
    return fn() ? 1 : 0;
  } catch (const DataError&) {
    return -1;
  } catch (const NumericalError&) {
    return -1;
  }
}

double stderr_of(double rate, int reps) {
  return reps > 0 ? std::sqrt(rate * (1.0 - rate) / reps) : 0.0;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

SizePowerRow base_row(const ScenarioConfig& config) {
  SizePowerRow row;
  row.scenario = config.key();
  row.distribution = to_string(config.distribution);
  row.covariance = std::string(to_string(config.covariance.family));
  row.r = config.covariance.r;
  row.c = config.mean.scale;
  row.n = config.n;
  row.p = config.p;
  return row;
}

void finish_row(SizePowerRow& row, int rejections, int completed, int failures,
                int reps) {
  row.reps_completed = completed;
  row.failures = failures;
  row.rejection_rate = completed > 0 ? static_cast<double>(rejections) / completed : 0.0;
  row.mc_stderr = stderr_of(row.rejection_rate, completed);
  if (static_cast<double>(failures) > 0.05 * reps) {
    std::ostringstream os;
    os << "simulation: " << row.test << " failed in " << failures << " of " << reps
       << " replications of " << row.scenario;
    throw NumericalError(os.str());
  }
}

MptOptions effective_mpt(const ScenarioConfig& config) {
  MptOptions opts = config.mpt;
  opts.alpha = config.alpha;
  opts.threads = 1;
  return opts;
}

}  // namespace

std::string_view to_string(TestId id) {
  for (const auto& [k, name] : kTestNames) {
    if (k == id) return name;
  }
  return "unknown";
}

TestId parse_test_id(std::string_view name) {
  for (const auto& [k, n] : kTestNames) {
    if (n == name) return k;
  }
  throw InvalidArgument("unknown test '" + std::string(name) + "'");
}

std::vector<TestId> all_test_ids() {
  std::vector<TestId> out;
  for (const auto& entry : kTestNames) out.push_back(entry.first);
  return out;
}

void ScenarioConfig::validate() const {
  require(n >= 4, "scenario: need n >= 4");
  require(p >= 1, "scenario: need p >= 1");
  require(reps >= 1, "scenario: need reps >= 1");
  require(alpha > 0.0 && alpha < 1.0, "scenario: alpha must lie in (0, 1)");
  require(!tests.empty(), "scenario: no tests configured");
  require(threads >= 1, "scenario: threads must be positive");
  MptOptions opts = mpt;
  opts.alpha = alpha;
  opts.validate();
  baselines.validate();
  if (baselines.rpt_dim != 0) {
    require(baselines.rpt_dim < n, "scenario: rpt dimension must be below n");
  }
}

std::string ScenarioConfig::key() const {
  std::ostringstream os;
  os << "n=" << n << ";p=" << p << ";dist=" << to_string(distribution)
     << ";cov=" << to_string(covariance.family) << "(" << format_double(covariance.r)
     << ");c=" << format_double(mean.scale) << ";alpha=" << format_double(alpha);
  return os.str();
}

std::vector<SizePowerRow> run_scenario(const ScenarioConfig& config) {
  config.validate();
  const SeedPolicy seeds{config.master_seed};
  const MultivariateSampler sampler(config.covariance, config.p);
  const Vector mu = config.mean.realize(config.p);
  const MptOptions opts = effective_mpt(config);
  const std::size_t t_count = config.tests.size();
  const bool need_splits = std::any_of(config.tests.begin(), config.tests.end(), uses_splits);
  const int rpt_k = config.baselines.rpt_dim > 0 ? config.baselines.rpt_dim : config.n / 2;

  std::vector<Outcome> outcomes(static_cast<std::size_t>(config.reps) * t_count, 0);

  parallel_for(static_cast<std::size_t>(config.reps), config.threads, [&](std::size_t rep) {
    Rng data_rng = make_rng(seeds, rep, 0);
    const DataMatrix data = sampler.draw(config.n, mu, config.distribution, data_rng);

    std::vector<double> pvals;
    bool splits_ok = true;
    if (need_splits) {
      try {
        for (const auto& s : run_splits(data, opts, seeds, rep)) pvals.push_back(s.p_value);
      } catch (const DataError&) {
        splits_ok = false;
      } catch (const NumericalError&) {
        splits_ok = false;
      }
    }

    for (std::size_t t = 0; t < t_count; ++t) {
      const TestId id = config.tests[t];
      Outcome& out = outcomes[rep * t_count + t];
      if (uses_splits(id) && !splits_ok) {
        out = -1;
        continue;
      }
      switch (id) {
        case TestId::Mpt:
        case TestId::MptVariance:
          out = guarded([&] {
            const RhoMethod method =
                id == TestId::Mpt ? RhoMethod::Quantile : RhoMethod::Variance;
            return combine_split_pvalues(pvals, method, opts.alpha, opts.critical_override,
                                         opts.chi_square_convention)
                .reject;
          });
          break;
        case TestId::Spt:
          out = guarded([&] {
            // Same permutation as the first MPT split.
            Rng rng = make_rng(seeds, rep, 1);
            const SplitPlan plan =
                make_split(config.n, opts.kappa, random_permutation(config.n, rng));
            return spt(data, plan, opts.penalty, opts.solver, config.spt_reference,
                       config.alpha, opts.zero_direction)
                .reject;
          });
          break;
        case TestId::Cq:
          out = guarded([&] { return cq_test(data, config.alpha).reject; });
          break;
        case TestId::Clx:
          out = guarded([&] { return clx_test(data, config.alpha).reject; });
          break;
        case TestId::Rpt:
          out = guarded([&] {
            Rng rng = make_rng(seeds, rep, kRptStream);
            return random_projection_test(data, rpt_k, rng, config.alpha).reject;
          });
          break;
        case TestId::Ridge:
          out = guarded([&] {
            Rng rng = make_rng(seeds, rep, kRidgeStream);
            return ridge_projection_test(data, config.baselines.ridge_kappa,
                                         config.baselines.ridge_lambda, rng, config.alpha,
                                         config.baselines.ridge_reference)
                .reject;
          });
          break;
        default:
          out = guarded([&] { return combine(combiner_of(id), pvals, config.alpha).reject; });
          break;
      }
    }
  });

  std::vector<SizePowerRow> rows;
  for (std::size_t t = 0; t < t_count; ++t) {
    int rejections = 0, completed = 0, failures = 0;
    for (int rep = 0; rep < config.reps; ++rep) {
      const Outcome o = outcomes[static_cast<std::size_t>(rep) * t_count + t];
      if (o < 0) {
        ++failures;
      } else {
        ++completed;
        rejections += o;
      }
    }
    SizePowerRow row = base_row(config);
    row.test = std::string(to_string(config.tests[t]));
    if (uses_splits(config.tests[t])) row.m = opts.m;
    if (config.tests[t] == TestId::Spt) row.m = 1;
    finish_row(row, rejections, completed, failures, config.reps);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SizePowerRow> run_grid(const ScenarioConfig& base,
                                   const std::vector<double>& r_values,
                                   const std::vector<double>& c_values,
                                   const std::vector<CovarianceFamily>& families,
                                   const std::vector<Distribution>& distributions) {
  require(!r_values.empty() && !c_values.empty() && !families.empty() &&
              !distributions.empty(),
          "grid: every axis needs at least one value");
  std::vector<SizePowerRow> rows;
  for (CovarianceFamily family : families) {
    require(family != CovarianceFamily::Custom, "grid: custom covariance cannot be gridded");
    for (const Distribution& d : distributions) {
      for (double r : r_values) {
        for (double c : c_values) {
          ScenarioConfig cell = base;
          cell.covariance = CovarianceSpec{family, family == CovarianceFamily::Identity ? 0.0 : r, {}};
          cell.distribution = d;
          cell.mean.scale = c;
          auto part = run_scenario(cell);
          rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                      std::make_move_iterator(part.end()));
        }
      }
    }
  }
  return rows;
}

std::vector<SizePowerRow> power_vs_m_study(const ScenarioConfig& config,
                                           const std::vector<int>& m_values) {
  require(!m_values.empty(), "power_vs_m: no m values");
  const int m_max = *std::max_element(m_values.begin(), m_values.end());
  for (int m : m_values) {
    critical_value(config.mpt.rho_method, m, config.alpha, config.mpt.critical_override);
  }
  ScenarioConfig cfg = config;
  cfg.mpt.m = m_max;
  cfg.tests = {TestId::Mpt};
  cfg.validate();

  const SeedPolicy seeds{cfg.master_seed};
  const MultivariateSampler sampler(cfg.covariance, cfg.p);
  const Vector mu = cfg.mean.realize(cfg.p);
  const MptOptions opts = effective_mpt(cfg);
  const std::size_t m_count = m_values.size();
  std::vector<Outcome> outcomes(static_cast<std::size_t>(cfg.reps) * m_count, 0);

  parallel_for(static_cast<std::size_t>(cfg.reps), cfg.threads, [&](std::size_t rep) {
    Rng data_rng = make_rng(seeds, rep, 0);
    const DataMatrix data = sampler.draw(cfg.n, mu, cfg.distribution, data_rng);
    std::vector<double> pvals;
    bool ok = true;
    try {
      for (const auto& s : run_splits(data, opts, seeds, rep)) pvals.push_back(s.p_value);
    } catch (const DataError&) {
      ok = false;
    } catch (const NumericalError&) {
      ok = false;
    }
    for (std::size_t i = 0; i < m_count; ++i) {
      Outcome& out = outcomes[rep * m_count + i];
      if (!ok) {
        out = -1;
        continue;
      }
      const auto m = static_cast<std::size_t>(m_values[i]);
      out = guarded([&] {
        std::vector<double> prefix(pvals.begin(), pvals.begin() + static_cast<long>(m));
        return combine_split_pvalues(std::move(prefix), opts.rho_method, opts.alpha,
                                     opts.critical_override, opts.chi_square_convention)
            .reject;
      });
    }
  });

  std::vector<SizePowerRow> rows;
  for (std::size_t i = 0; i < m_count; ++i) {
    int rejections = 0, completed = 0, failures = 0;
    for (int rep = 0; rep < cfg.reps; ++rep) {
      const Outcome o = outcomes[static_cast<std::size_t>(rep) * m_count + i];
      if (o < 0) {
        ++failures;
      } else {
        ++completed;
        rejections += o;
      }
    }
    SizePowerRow row = base_row(cfg);
    row.test = opts.rho_method == RhoMethod::Quantile ? "mpt" : "mpt_var";
    row.m = m_values[i];
    finish_row(row, rejections, completed, failures, cfg.reps);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hdmt
