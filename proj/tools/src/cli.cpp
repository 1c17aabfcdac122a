#include "cli.hpp"

#include "csv.hpp"
#include "hdmt/baselines.hpp"
#include "hdmt/combine.hpp"
#include "hdmt/mpt.hpp"
#include "hdmt/parallel.hpp"
#include "hdmt/simharness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace hdmt::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kRptStream = 0x10000001;
constexpr std::uint64_t kRidgeStream = 0x10000002;

bool is_set(double v) { return !std::isnan(v); }

Json optional_number(double v) { return is_set(v) ? Json(v) : Json(nullptr); }

struct Common {
  std::optional<std::uint64_t> seed;
  int threads = default_thread_count();
  std::string format = "json";
  std::string output;
  bool timing = false;
};

struct DataFlags {
  std::string path;
  bool header = false;
  bool normalize = false;

  void add(CLI::App* app) {
    app->add_option("--data", path, "CSV file, one observation per row")->required();
    app->add_flag("--header", header, "First row holds column names");
    app->add_flag("--normalize", normalize, "Scale columns so that mean(x^2) = 1");
  }

  DataMatrix load() const { return load_matrix(path, {header, normalize}); }

  void describe(Json& j, const DataMatrix& data) const {
    j["data"] = path;
    j["header"] = header;
    j["normalize"] = normalize;
    j["n"] = data.n();
    j["p"] = data.p();
  }
};

struct MptFlags {
  int m = 40;
  double kappa = 0.5;
  double alpha = 0.05;
  std::string penalty = "scad";
  double shape = kUnset;
  double lambda = kUnset;
  double lambda_c0 = 1.0;
  std::string rho = "quantile";
  std::string chi_square = "lower";
  double critical_override = kUnset;
  std::string reference = "t";
  std::string zero_direction = "leading";
  int max_iterations = 5000;
  double tolerance = 1e-6;

  void add(CLI::App* app, bool with_m) {
    if (with_m) app->add_option("--m", m, "Number of random splits")->capture_default_str();
    app->add_option("--kappa", kappa, "Fraction of rows in the testing half")->capture_default_str();
    app->add_option("--alpha", alpha, "Significance level")->capture_default_str();
    app->add_option("--penalty", penalty, "lasso, scad or mcp")->capture_default_str();
    app->add_option("--penalty-shape", shape, "SCAD a or MCP b");
    app->add_option("--lambda", lambda, "Fixed penalty level");
    app->add_option("--lambda-c0", lambda_c0, "lambda = c0 sqrt(log p / n1)")->capture_default_str();
    app->add_option("--rho", rho, "variance or quantile")->capture_default_str();
    app->add_option("--chi-square", chi_square, "Quantile convention: lower or upper")
        ->capture_default_str();
    app->add_option("--critical-override", critical_override, "Critical value for non-tabulated levels");
    app->add_option("--reference", reference, "normal or t")->capture_default_str();
    app->add_option("--zero-direction", zero_direction, "leading or pvalue-one")->capture_default_str();
    app->add_option("--max-iter", max_iterations, "Solver iteration cap")->capture_default_str();
    app->add_option("--tol", tolerance, "Solver stationarity tolerance")->capture_default_str();
  }

  ChiSquareConvention convention() const {
    if (chi_square == "lower") return ChiSquareConvention::LowerOneMinusBeta;
    if (chi_square == "upper") return ChiSquareConvention::UpperOneMinusBeta;
    throw InvalidArgument("unknown chi-square convention '" + chi_square + "' (expected lower or upper)");
  }

  MptOptions options(int threads) const {
    MptOptions o;
    o.m = m;
    o.kappa = kappa;
    o.alpha = alpha;
    o.penalty = PenaltySpec::of_kind(parse_penalty_kind(penalty), 0.0);
    if (is_set(shape)) o.penalty.shape = shape;
    o.solver.max_iterations = max_iterations;
    o.solver.tolerance = tolerance;
    o.solver.lambda_rule =
        is_set(lambda) ? LambdaRule::explicit_value(lambda) : LambdaRule::rate(lambda_c0);
    o.rho_method = parse_rho_method(rho);
    o.chi_square_convention = convention();
    if (is_set(critical_override)) o.critical_override = critical_override;
    o.reference = parse_reference(reference);
    o.zero_direction = parse_zero_direction(zero_direction);
    o.threads = threads;
    return o;
  }
};

void describe_split_options(Json& j, const MptOptions& o) {
  j["kappa"] = o.kappa;
  j["alpha"] = o.alpha;
  j["penalty"] = std::string(to_string(o.penalty.kind));
  j["penalty_shape"] = o.penalty.kind == PenaltyKind::Lasso ? Json(nullptr) : Json(o.penalty.shape);
  if (o.solver.lambda_rule.kind == LambdaRule::Kind::Explicit) {
    j["lambda"] = o.solver.lambda_rule.value;
    j["lambda_c0"] = nullptr;
  } else {
    j["lambda"] = nullptr;
    j["lambda_c0"] = o.solver.lambda_rule.c0;
  }
  j["reference"] = std::string(to_string(o.reference));
  j["zero_direction"] = std::string(to_string(o.zero_direction));
  j["max_iterations"] = o.solver.max_iterations;
  j["tolerance"] = o.solver.tolerance;
}

void describe_combination(Json& j, const MptOptions& o) {
  j["rho"] = std::string(to_string(o.rho_method));
  j["chi_square"] =
      o.chi_square_convention == ChiSquareConvention::LowerOneMinusBeta ? "lower" : "upper";
  j["critical_override"] = o.critical_override ? Json(*o.critical_override) : Json(nullptr);
}

Json to_json(const TestResult& r) {
  Json j;
  j["method"] = r.method;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  j["reject"] = r.reject;
  Json d = Json::object();
  for (const auto& [k, v] : r.diagnostics) d[k] = v;
  j["diagnostics"] = d;
  return j;
}

Json to_json(const MptResult& r) {
  Json j;
  j["statistic"] = r.m_stat;
  j["critical_value"] = r.critical;
  j["reject"] = r.reject;
  j["rho_hat"] = r.rho_hat.value;
  j["rho_method"] = std::string(to_string(r.rho_hat.method));
  if (r.rho_hat.method == RhoMethod::Quantile) j["beta"] = r.rho_hat.beta;
  j["table_m"] = r.table_m;
  j["p_values"] = r.p_values;
  j["z"] = std::vector<double>(r.z.z.data(), r.z.z.data() + r.z.z.size());
  if (!r.per_split.empty()) {
    j["nonconverged_splits"] = r.nonconverged_splits;
    j["degenerate_splits"] = r.degenerate_splits;
    j["fallback_splits"] = r.fallback_splits;
    Json splits = Json::array();
    for (const auto& s : r.per_split) {
      Json e;
      e["statistic"] = s.statistic;
      e["p_value"] = s.p_value;
      e["lambda"] = s.lambda;
      e["iterations"] = s.iterations;
      e["support_size"] = s.support_size;
      e["converged"] = s.converged;
      e["degenerate"] = s.degenerate;
      e["fallback_direction"] = s.fallback_direction;
      splits.push_back(std::move(e));
    }
    j["splits"] = std::move(splits);
  }
  return j;
}

Json to_json(const SizePowerRow& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["distribution"] = r.distribution;
  j["covariance"] = r.covariance;
  j["r"] = r.r;
  j["c"] = r.c;
  j["n"] = r.n;
  j["p"] = r.p;
  j["m"] = r.m;
  j["test"] = r.test;
  j["rejection_rate"] = r.rejection_rate;
  j["mc_stderr"] = r.mc_stderr;
  j["reps_completed"] = r.reps_completed;
  j["failures"] = r.failures;
  return j;
}

std::string csv_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string rows_csv(const Json& config, const std::vector<SizePowerRow>& rows) {
  std::ostringstream os;
  os << "# config: " << config.dump() << "\n";
  os << "scenario,distribution,covariance,r,c,n,p,m,test,rejection_rate,mc_stderr,reps_completed,failures\n";
  for (const auto& r : rows) {
    os << csv_text(r.scenario) << ',' << r.distribution << ',' << r.covariance << ','
       << csv_number(r.r) << ',' << csv_number(r.c) << ',' << r.n << ',' << r.p << ',' << r.m
       << ',' << r.test << ',' << csv_number(r.rejection_rate) << ','
       << csv_number(r.mc_stderr) << ',' << r.reps_completed << ',' << r.failures << '\n';
  }
  return os.str();
}

std::uint64_t resolve_seed(const Common& common) {
  if (common.seed) return *common.seed;
  const char* env = std::getenv("HDMT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t value = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument(std::string("HDMT_SEED is not an unsigned integer: '") + env + "'");
  }
  return value;
}

// What a subcommand hands back: the resolved config, the result, and an
// optional CSV rendering.
struct Report {
  Json config;
  Json result;
  std::string csv;
};

Report cmd_mpt(const DataFlags& df, const MptFlags& mf, std::uint64_t seed, int threads) {
  const MptOptions opts = mf.options(threads);
  opts.validate();
  const DataMatrix data = df.load();
  Report rep;
  df.describe(rep.config, data);
  rep.config["m"] = opts.m;
  describe_split_options(rep.config, opts);
  describe_combination(rep.config, opts);
  rep.result = to_json(mpt(data, opts, SeedPolicy{seed}));
  return rep;
}

struct BaselineFlags {
  int rpt_dim = 0;
  double ridge_lambda = kUnset;
  double ridge_kappa = 0.5;

  void add(CLI::App* app) {
    app->add_option("--rpt-dim", rpt_dim, "Random projection dimension (0: floor(n/2))")
        ->capture_default_str();
    app->add_option("--ridge-lambda", ridge_lambda, "Ridge penalty (default sqrt(log p / n1))");
    app->add_option("--ridge-kappa", ridge_kappa, "Testing fraction for the ridge test")
        ->capture_default_str();
  }

  BaselineConfig config(Reference reference) const {
    BaselineConfig b;
    b.rpt_dim = rpt_dim;
    if (is_set(ridge_lambda)) b.ridge_lambda = ridge_lambda;
    b.ridge_kappa = ridge_kappa;
    b.ridge_reference = reference;
    b.validate();
    return b;
  }

  void describe(Json& j) const {
    j["rpt_dim"] = rpt_dim;
    j["ridge_lambda"] = optional_number(ridge_lambda);
    j["ridge_kappa"] = ridge_kappa;
  }
};

Report cmd_test(const std::string& method, const DataFlags& df, const MptFlags& mf,
                const BaselineFlags& bf, std::uint64_t seed) {
  const MptOptions opts = mf.options(1);
  const BaselineConfig base = bf.config(opts.reference);
  require(opts.alpha > 0.0 && opts.alpha < 1.0, "alpha must lie in (0, 1)");
  const DataMatrix data = df.load();
  const SeedPolicy seeds{seed};
  const int n = static_cast<int>(data.n());

  Report rep;
  rep.config["method"] = method;
  df.describe(rep.config, data);
  TestResult result;
  if (method == "spt") {
    validate_testable(data);
    describe_split_options(rep.config, opts);
    Rng rng = make_rng(seeds, 0, 1);
    const SplitPlan plan = make_split(n, opts.kappa, random_permutation(n, rng));
    result = spt(data, plan, opts.penalty, opts.solver, opts.reference, opts.alpha,
                 opts.zero_direction);
  } else {
    rep.config["alpha"] = opts.alpha;
    if (method == "cq") {
      result = cq_test(data, opts.alpha);
    } else if (method == "clx") {
      result = clx_test(data, opts.alpha);
    } else if (method == "rpt") {
      const int k = base.rpt_dim > 0 ? base.rpt_dim : n / 2;
      rep.config["rpt_dim"] = k;
      Rng rng = make_rng(seeds, 0, kRptStream);
      result = random_projection_test(data, k, rng, opts.alpha);
    } else if (method == "ridge") {
      rep.config["ridge_lambda"] = optional_number(bf.ridge_lambda);
      rep.config["ridge_kappa"] = base.ridge_kappa;
      rep.config["reference"] = std::string(to_string(opts.reference));
      Rng rng = make_rng(seeds, 0, kRidgeStream);
      result = ridge_projection_test(data, base.ridge_kappa, base.ridge_lambda, rng, opts.alpha,
                                     opts.reference);
    } else {
      throw InvalidArgument("unknown test '" + method + "' (expected spt, cq, clx, rpt or ridge)");
    }
  }
  rep.result = to_json(result);
  return rep;
}

struct SimFlags {
  int n = 40;
  int p = 100;
  std::string dist = "gaussian";
  double df = 6.0;
  std::vector<std::string> covariances{"cs"};
  std::vector<double> r{0.5};
  std::vector<double> c{0.0};
  int k = 10;
  int reps = 1000;
  std::vector<std::string> tests{"mpt"};
  std::vector<int> m{40};

  void add(CLI::App* app) {
    app->add_option("--n", n, "Sample size")->capture_default_str();
    app->add_option("--p", p, "Dimension")->capture_default_str();
    app->add_option("--dist", dist, "gaussian or t")->capture_default_str();
    app->add_option("--df", df, "Degrees of freedom for --dist t")->capture_default_str();
    app->add_option("--cov", covariances, "Covariance families: identity, cs, ar")
        ->delimiter(',')
        ->capture_default_str();
    app->add_option("--r", r, "Covariance parameters")->delimiter(',')->capture_default_str();
    app->add_option("--c", c, "Signal strengths")->delimiter(',')->capture_default_str();
    app->add_option("--k", k, "Number of nonzero mean entries")->capture_default_str();
    app->add_option("--reps", reps, "Monte Carlo replications")->capture_default_str();
    app->add_option("--tests", tests, "Tests to run")->delimiter(',')->capture_default_str();
    app->add_option("--m", m, "Split counts; several values run the power-vs-m study")
        ->delimiter(',')
        ->capture_default_str();
  }
};

Report cmd_simulate(const SimFlags& sf, const MptFlags& mf, const BaselineFlags& bf,
                    std::uint64_t seed, int threads) {
  require(!sf.m.empty(), "simulate: --m needs at least one value");
  ScenarioConfig base;
  base.n = sf.n;
  base.p = sf.p;
  if (sf.dist == "gaussian") {
    base.distribution = Distribution::gaussian();
  } else if (sf.dist == "t") {
    base.distribution = Distribution::student_t(sf.df);
  } else {
    throw InvalidArgument("unknown distribution '" + sf.dist + "' (expected gaussian or t)");
  }
  base.mean = MeanSpec::sparse_ones(sf.k, 0.0);
  base.reps = sf.reps;
  base.tests.clear();
  for (const auto& t : sf.tests) base.tests.push_back(parse_test_id(t));
  base.mpt = mf.options(1);
  base.mpt.m = sf.m.front();
  base.alpha = base.mpt.alpha;
  base.spt_reference = base.mpt.reference;
  base.baselines = bf.config(base.mpt.reference);
  base.master_seed = seed;
  base.threads = threads;
  std::vector<CovarianceFamily> families;
  for (const auto& f : sf.covariances) families.push_back(parse_covariance_family(f));

  std::vector<SizePowerRow> rows;
  if (sf.m.size() == 1) {
    rows = run_grid(base, sf.r, sf.c, families, {base.distribution});
  } else {
    for (TestId id : base.tests) {
      require(id == TestId::Mpt || id == TestId::MptVariance,
              "simulate: several --m values only work with the mpt and mpt_var tests");
    }
    for (CovarianceFamily family : families) {
      for (double r : sf.r) {
        for (double c : sf.c) {
          ScenarioConfig cell = base;
          cell.covariance =
              CovarianceSpec{family, family == CovarianceFamily::Identity ? 0.0 : r, {}};
          cell.mean.scale = c;
          for (TestId id : base.tests) {
            cell.mpt.rho_method = id == TestId::Mpt ? RhoMethod::Quantile : RhoMethod::Variance;
            auto part = power_vs_m_study(cell, sf.m);
            rows.insert(rows.end(), part.begin(), part.end());
          }
        }
      }
    }
  }

  Report rep;
  Json& cfg = rep.config;
  cfg["n"] = sf.n;
  cfg["p"] = sf.p;
  cfg["distribution"] = to_string(base.distribution);
  cfg["covariance"] = sf.covariances;
  cfg["r"] = sf.r;
  cfg["c"] = sf.c;
  cfg["k"] = sf.k;
  cfg["reps"] = sf.reps;
  cfg["tests"] = sf.tests;
  cfg["m"] = sf.m;
  describe_split_options(cfg, base.mpt);
  describe_combination(cfg, base.mpt);
  bf.describe(cfg);
  cfg["seed"] = seed;
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  rep.result["rows"] = std::move(out);
  rep.csv = rows_csv(cfg, rows);
  return rep;
}

Report cmd_combine(const std::string& method, std::vector<double> pvals,
                   const std::string& pvalues_file, const MptFlags& mf) {
  if (!pvalues_file.empty()) {
    const auto extra = load_pvalues(pvalues_file);
    pvals.insert(pvals.end(), extra.begin(), extra.end());
  }
  if (pvals.empty()) throw InvalidArgument("combine: give --pvalues or --pvalues-file");
  for (std::size_t i = 0; i < pvals.size(); ++i) {
    if (!(pvals[i] >= 0.0 && pvals[i] <= 1.0)) {
      throw DataError("p-value " + std::to_string(i + 1) + " lies outside [0, 1]");
    }
  }
  Report rep;
  rep.config["method"] = method;
  rep.config["alpha"] = mf.alpha;
  rep.config["p_values"] = pvals;
  if (method == "mpt") {
    const MptOptions opts = mf.options(1);
    describe_combination(rep.config, opts);
    rep.result = to_json(combine_split_pvalues(pvals, opts.rho_method, mf.alpha,
                                               opts.critical_override,
                                               opts.chi_square_convention));
  } else {
    rep.result = to_json(combine(parse_combiner(method), pvals, mf.alpha));
  }
  return rep;
}

Report cmd_tables(const std::string& method) {
  const RhoMethod rho = parse_rho_method(method);
  const char* column = rho == RhoMethod::Variance ? "c" : "beta";
  Report rep;
  rep.config["method"] = method;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "m," << column << "\n";
  for (const auto& e : critical_table(rho)) {
    Json row;
    row["m"] = e.m;
    row[column] = e.value;
    rows.push_back(std::move(row));
    csv << e.m << ',' << csv_number(e.value) << "\n";
  }
  rep.result["rows"] = std::move(rows);
  rep.csv = csv.str();
  return rep;
}

void emit(const std::string& text, const Common& common, std::ostream& out) {
  if (common.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.output);
  if (!file) throw DataError("cannot write '" + common.output + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projection tests for high-dimensional one-sample means", "hdmt"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML file with option values; command-line flags win");

  Common common;
  app.add_option("--seed", common.seed, "Master seed (falls back to HDMT_SEED, then 0)");
  app.add_option("--threads", common.threads, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", common.format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", common.output, "Write the report here instead of stdout");
  app.add_flag("--timing", common.timing, "Add wall time to the JSON report");

  auto* test = app.add_subcommand("test", "Run one test on a CSV data set");
  std::string test_method = "spt";
  DataFlags test_data;
  MptFlags test_flags;
  BaselineFlags test_baselines;
  test->add_option("--method", test_method, "spt, cq, clx, rpt or ridge")->capture_default_str();
  test_data.add(test);
  test_flags.add(test, false);
  test_baselines.add(test);

  auto* mpt_cmd = app.add_subcommand("mpt", "Multiple-splitting projection test on a CSV data set");
  DataFlags mpt_data;
  MptFlags mpt_flags;
  mpt_data.add(mpt_cmd);
  mpt_flags.add(mpt_cmd, true);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo size and power study");
  SimFlags sim_flags;
  MptFlags sim_mpt;
  BaselineFlags sim_baselines;
  sim_flags.add(sim);
  sim_mpt.add(sim, false);
  sim_baselines.add(sim);

  auto* comb = app.add_subcommand("combine", "Combine externally computed p-values");
  std::string comb_method = "mpt";
  std::vector<double> comb_pvalues;
  std::string comb_file;
  MptFlags comb_flags;
  comb->add_option("--method", comb_method,
                   "mpt, mean2x, median2x, zaverage, cauchy, fisher or stouffer")
      ->capture_default_str();
  comb->add_option("--pvalues", comb_pvalues, "Comma-separated p-values")->delimiter(',');
  comb->add_option("--pvalues-file", comb_file, "File of p-values, comma or newline separated");
  comb->add_option("--alpha", comb_flags.alpha, "Significance level")->capture_default_str();
  comb->add_option("--rho", comb_flags.rho, "variance or quantile (mpt only)")->capture_default_str();
  comb->add_option("--chi-square", comb_flags.chi_square, "lower or upper (mpt only)")
      ->capture_default_str();
  comb->add_option("--critical-override", comb_flags.critical_override,
                   "Critical value for non-tabulated levels (mpt only)");

  auto* tables = app.add_subcommand("tables", "Print an embedded critical-value table");
  std::string table_method = "variance";
  tables->add_option("--method", table_method, "variance (critical values) or quantile (beta)")
      ->capture_default_str();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  if (!argv.empty()) argv.pop_back();
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    const std::uint64_t seed = resolve_seed(common);
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    std::string name;
    if (*test) {
      name = "test";
      rep = cmd_test(test_method, test_data, test_flags, test_baselines, seed);
    } else if (*mpt_cmd) {
      name = "mpt";
      rep = cmd_mpt(mpt_data, mpt_flags, seed, common.threads);
    } else if (*sim) {
      name = "simulate";
      rep = cmd_simulate(sim_flags, sim_mpt, sim_baselines, seed, common.threads);
    } else if (*comb) {
      name = "combine";
      rep = cmd_combine(comb_method, comb_pvalues, comb_file, comb_flags);
    } else {
      name = "tables";
      rep = cmd_tables(table_method);
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (common.format == "csv") {
      if (rep.csv.empty()) throw InvalidArgument("--out csv is available for simulate and tables");
      emit(rep.csv, common, out);
      return kOk;
    }
    Json report;
    report["command"] = name;
    report["seed"] = seed;
    report["config"] = std::move(rep.config);
    report["result"] = std::move(rep.result);
    if (common.timing) report["wall_time_seconds"] = elapsed;
    emit(report.dump(2) + "\n", common, out);
    return kOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace hdmt::cli
