#include "hdmt/optimizer.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace hdmt {

void SolverOptions::validate() const {
  require(max_iterations >= 1, "solver: max_iterations must be at least 1");
  require(tolerance > 0.0, "solver: tolerance must be positive");
  switch (lambda_rule.kind) {
    case LambdaRule::Kind::RateFormula:
      require(lambda_rule.c0 > 0.0, "solver: lambda c0 must be positive");
      break;
    case LambdaRule::Kind::Explicit:
      require(lambda_rule.value >= 0.0, "solver: lambda must be nonnegative");
      break;
    case LambdaRule::Kind::Grid:
      require(!lambda_rule.grid.empty(), "solver: lambda grid is empty");
      require(lambda_rule.folds >= 2, "solver: cross-validation needs >= 2 folds");
      break;
  }
}

namespace {

template <typename Apply>
double power_iteration(Apply&& apply, Eigen::Index dim) {
  if (dim == 0) return 0.0;
  // Fixed, non-symmetric start so the iterate is not orthogonal to the
  // leading eigenvector for structured matrices.
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
  }
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < 200; ++it) {
    Vector next = apply(v);
    const double rayleigh = v.dot(next);
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    v = next / norm;
    const double change = std::abs(rayleigh - estimate);
    estimate = rayleigh;
    if (it > 0 && change <= 1e-8 * std::abs(estimate)) break;
  }
  // Final Rayleigh quotient at the normalised iterate.
  return std::max(estimate, v.dot(apply(v)));
}

void check_symmetric(const Matrix& sigma, const char* who) {
  require(sigma.rows() == sigma.cols(), std::string(who) + ": matrix must be square");
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  require((sigma - sigma.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale,
          std::string(who) + ": matrix is not symmetric");
}

double penalty_sum(const Vector& w, const PenaltySpec& penalty) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (w[j] != 0.0) s += penalty_value(penalty, w[j]);
  }
  return s;
}

double residual_from_gradient(const Vector& w, const Vector& grad,
                              const PenaltySpec& penalty) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    const Interval sub = penalty_subgradient(penalty, w[j]);
    worst = std::max(worst, sub.distance_to(-grad[j]));
  }
  return worst;
}

// On each smooth piece P'(t) = slope * t + offset * sign(t). Returns the
// piece's magnitude range too, so a candidate can be checked against it.
struct Piece {
  double slope;
  double offset;
  double lo;
  double hi;
};

Piece piece_of(const PenaltySpec& pen, double t) {
  const double a = std::abs(t);
  const double l = pen.lambda;
  const double inf = std::numeric_limits<double>::infinity();
  switch (pen.kind) {
    case PenaltyKind::Lasso:
      return {0.0, l, 0.0, inf};
    case PenaltyKind::Scad:
      if (a <= l) return {0.0, l, 0.0, l};
      if (a <= pen.shape * l) {
        return {-1.0 / (pen.shape - 1.0), pen.shape * l / (pen.shape - 1.0), l, pen.shape * l};
      }
      return {0.0, 0.0, pen.shape * l, inf};
    case PenaltyKind::Mcp:
      if (a <= pen.shape * l) return {-1.0 / pen.shape, l, 0.0, pen.shape * l};
      return {0.0, 0.0, pen.shape * l, inf};
  }
  return {0.0, l, 0.0, inf};
}

// Solves S_AA w_A + P'(w_A) = b_A with the support, signs and pieces of w
// frozen. Returns false when the system is singular or the solution leaves
// its pieces.
bool polish_support(const QuadraticModel& model, const PenaltySpec& pen, const Vector& w,
                    Vector& out) {
  std::vector<Eigen::Index> support;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (w[j] != 0.0) support.push_back(j);
  }
  if (support.empty()) return false;
  const auto k = static_cast<Eigen::Index>(support.size());
  Matrix h = model.principal_submatrix(support);
  Vector rhs(k);
  std::vector<Piece> pieces;
  pieces.reserve(support.size());
  for (Eigen::Index a = 0; a < k; ++a) {
    const Eigen::Index j = support[static_cast<std::size_t>(a)];
    const Piece pc = piece_of(pen, w[j]);
    const double sign = w[j] > 0.0 ? 1.0 : -1.0;
    h(a, a) += pc.slope;
    rhs[a] = model.linear()[j] - pc.offset * sign;
    pieces.push_back(pc);
  }
  const Eigen::FullPivLU<Matrix> lu(h);
  if (!lu.isInvertible()) return false;
  const Vector sol = lu.solve(rhs);
  if (!sol.allFinite()) return false;
  out = Vector::Zero(w.size());
  for (Eigen::Index a = 0; a < k; ++a) {
    const Eigen::Index j = support[static_cast<std::size_t>(a)];
    const Piece& pc = pieces[static_cast<std::size_t>(a)];
    const double mag = std::abs(sol[a]);
    if ((sol[a] > 0.0) != (w[j] > 0.0) || mag == 0.0 || mag < pc.lo || mag > pc.hi) {
      return false;
    }
    out[j] = sol[a];
  }
  return true;
}

constexpr int kPolishEvery = 10;

}  // namespace

QuadraticModel QuadraticModel::from_covariance(Matrix sigma, Vector xbar) {
  check_symmetric(sigma, "quadratic model");
  require(sigma.rows() == xbar.size(), "quadratic model: dimension mismatch");
  require(sigma.allFinite() && xbar.allFinite(),
          "quadratic model: non-finite input");
  QuadraticModel m;
  m.dense_ = std::move(sigma);
  m.linear_ = std::move(xbar);
  return m;
}

QuadraticModel QuadraticModel::from_sample(const Eigen::Ref<const Matrix>& rows) {
  require(rows.rows() >= 2, "quadratic model: need at least two samples");
  require(rows.allFinite(), "quadratic model: non-finite input");
  QuadraticModel m;
  const double n = static_cast<double>(rows.rows());
  m.linear_ = rows.colwise().mean().transpose();
  Matrix centred = rows.rowwise() - m.linear_.transpose();
  centred /= std::sqrt(n - 1.0);
  if (rows.rows() < rows.cols()) {
    m.low_rank_ = true;
    m.scaled_rows_ = std::move(centred);
  } else {
    m.dense_ = centred.transpose() * centred;
  }
  return m;
}

Matrix QuadraticModel::principal_submatrix(const std::vector<Eigen::Index>& idx) const {
  const auto k = static_cast<Eigen::Index>(idx.size());
  if (low_rank_) {
    Matrix cols(scaled_rows_.rows(), k);
    for (Eigen::Index a = 0; a < k; ++a) cols.col(a) = scaled_rows_.col(idx[static_cast<std::size_t>(a)]);
    return cols.transpose() * cols;
  }
  Matrix out(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index c = 0; c < k; ++c) {
      out(a, c) = dense_(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

Vector QuadraticModel::apply(const Vector& w) const {
  if (low_rank_) return scaled_rows_.transpose() * (scaled_rows_ * w);
  return dense_ * w;
}

Matrix QuadraticModel::covariance() const {
  if (low_rank_) return scaled_rows_.transpose() * scaled_rows_;
  return dense_;
}

double QuadraticModel::max_eigenvalue() const {
  if (low_rank_) {
    const Matrix gram = scaled_rows_ * scaled_rows_.transpose();
    return power_iteration([&](const Vector& v) { return Vector(gram * v); },
                           gram.rows());
  }
  return power_iteration([&](const Vector& v) { return Vector(dense_ * v); },
                         dense_.rows());
}

double QuadraticModel::objective_smooth(const Vector& w) const {
  return 0.5 * w.dot(apply(w)) - linear_.dot(w);
}

double default_lambda(double n1, double p, double c0) {
  require(n1 >= 2.0, "default_lambda: n1 must be at least 2");
  require(p >= 1.0, "default_lambda: p must be positive");
  require(c0 > 0.0, "default_lambda: c0 must be positive");
  return c0 * std::sqrt(std::log(p) / n1);
}

double lipschitz_estimate(const Matrix& sigma) {
  check_symmetric(sigma, "lipschitz_estimate");
  const double top = power_iteration(
      [&](const Vector& v) { return Vector(sigma * v); }, sigma.rows());
  return 1.01 * top;
}

DirectionEstimate estimate_direction(const Matrix& sigma, const Vector& xbar,
                                     const PenaltySpec& penalty,
                                     const SolverOptions& opts) {
  return estimate_direction(QuadraticModel::from_covariance(sigma, xbar),
                            penalty, opts);
}

DirectionEstimate estimate_direction(const QuadraticModel& model,
                                     const PenaltySpec& penalty,
                                     const SolverOptions& opts) {
  penalty.validate();
  opts.validate();
  const Eigen::Index p = model.dim();
  const Vector& b = model.linear();

  DirectionEstimate out;
  out.lambda = penalty.lambda;
  const double top = model.max_eigenvalue();
  out.lipschitz = 1.01 * top;
  out.curvature_warning = weak_convexity_gamma(penalty) >= top;

  Vector w = Vector::Zero(p);
  Vector grad = -b;
  double objective = 0.0;
  // Degenerate S = 0: any positive step is admissible.
  double step = out.lipschitz > 0.0 ? 1.0 / out.lipschitz : 1.0;
  int increases = 0;
  Vector candidate(p);

  auto prox_step = [&](double eta) {
    for (Eigen::Index j = 0; j < p; ++j) {
      candidate[j] = prox(penalty, w[j] - eta * grad[j], eta);
    }
  };

  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    out.stationarity_residual = residual_from_gradient(w, grad, penalty);
    if (opts.record_objective) out.objective_trace.push_back(objective);
    if (out.stationarity_residual <= opts.tolerance) {
      out.converged = true;
      break;
    }

    if (opts.active_set_polish && it > 0 && it % kPolishEvery == 0 &&
        polish_support(model, penalty, w, candidate)) {
      Vector polished_grad = model.apply(candidate) - b;
      const double polished =
          0.5 * candidate.dot(polished_grad - b) + penalty_sum(candidate, penalty);
      if (polished <= objective) {
        w.swap(candidate);
        grad.swap(polished_grad);
        objective = polished;
        ++out.polish_steps;
        out.stationarity_residual = residual_from_gradient(w, grad, penalty);
        if (out.stationarity_residual <= opts.tolerance) {
          out.converged = true;
          ++it;
          break;
        }
      }
    }

    Vector next_grad;
    double smooth_next = 0.0;
    if (opts.step_rule == StepRule::Backtracking) {
      const double smooth_now = 0.5 * w.dot(grad - b);
      double eta = std::min(2.0 * step, 1e6);
      for (int tries = 0;; ++tries) {
        prox_step(eta);
        next_grad = model.apply(candidate) - b;
        smooth_next = 0.5 * candidate.dot(next_grad - b);
        const Vector delta = candidate - w;
        const double bound =
            smooth_now + grad.dot(delta) + delta.squaredNorm() / (2.0 * eta);
        if (smooth_next <= bound + 1e-12 * (1.0 + std::abs(bound)) || tries >= 60) break;
        eta *= 0.5;
      }
      step = eta;
    } else {
      prox_step(step);
      next_grad = model.apply(candidate) - b;
      smooth_next = 0.5 * candidate.dot(next_grad - b);
    }

    if (!candidate.allFinite() || !next_grad.allFinite()) {
      throw NumericalError("estimate_direction: iterate became non-finite");
    }
    const double next_objective = smooth_next + penalty_sum(candidate, penalty);
#ifndef NDEBUG
    if (opts.step_rule == StepRule::FixedInverseLipschitz) {
      assert(next_objective <= objective + 1e-9 * (1.0 + std::abs(objective)));
    }
#endif
    if (next_objective > objective + 1e-12 * (1.0 + std::abs(objective))) {
      if (++increases >= 10) {
        throw NumericalError(
            "estimate_direction: objective increased for 10 consecutive iterations");
      }
    } else {
      increases = 0;
    }
    w.swap(candidate);
    grad.swap(next_grad);
    objective = next_objective;
  }
  if (!out.converged) {
    out.stationarity_residual = residual_from_gradient(w, grad, penalty);
    out.converged = out.stationarity_residual <= opts.tolerance;
    if (opts.record_objective) out.objective_trace.push_back(objective);
  }
  out.iterations_used = it;
  out.objective = objective;
  out.w_hat = std::move(w);
  return out;
}

double stationarity_residual(const Vector& w, const QuadraticModel& model,
                             const PenaltySpec& penalty) {
  require(w.size() == model.dim(), "stationarity_residual: dimension mismatch");
  penalty.validate();
  return residual_from_gradient(w, model.apply(w) - model.linear(), penalty);
}

double stationarity_residual(const Vector& w, const Matrix& sigma,
                             const Vector& xbar, const PenaltySpec& penalty) {
  require(sigma.rows() == w.size() && sigma.cols() == w.size() &&
              xbar.size() == w.size(),
          "stationarity_residual: dimension mismatch");
  penalty.validate();
  return residual_from_gradient(w, sigma * w - xbar, penalty);
}

double select_lambda_cv(const Eigen::Ref<const Matrix>& rows,
                        const std::vector<double>& grid,
                        const PenaltySpec& penalty, const SolverOptions& opts,
                        int folds) {
  require(!grid.empty(), "select_lambda_cv: empty grid");
  require(folds >= 2, "select_lambda_cv: need at least two folds");
  const Eigen::Index n = rows.rows();
  require(n >= 2 * folds, "select_lambda_cv: each fold needs two observations");
  for (double l : grid) require(l >= 0.0, "select_lambda_cv: negative lambda");

  std::vector<Eigen::Index> bounds(folds + 1);
  for (int f = 0; f <= folds; ++f) bounds[f] = (n * f) / folds;

  struct Fold {
    QuadraticModel train;
    QuadraticModel valid;
  };
  std::vector<Fold> parts;
  parts.reserve(folds);
  for (int f = 0; f < folds; ++f) {
    const Eigen::Index lo = bounds[f];
    const Eigen::Index hi = bounds[f + 1];
    Matrix train(n - (hi - lo), rows.cols());
    train.topRows(lo) = rows.topRows(lo);
    train.bottomRows(n - hi) = rows.bottomRows(n - hi);
    parts.push_back({QuadraticModel::from_sample(train),
                     QuadraticModel::from_sample(rows.middleRows(lo, hi - lo))});
  }

  SolverOptions inner = opts;
  inner.record_objective = false;
  double best_lambda = grid.front();
  double best_loss = std::numeric_limits<double>::infinity();
  for (double lambda : grid) {
    double loss = 0.0;
    for (const Fold& part : parts) {
      const DirectionEstimate est =
          estimate_direction(part.train, penalty.with_lambda(lambda), inner);
      loss += part.valid.objective_smooth(est.w_hat);
    }
    loss /= folds;
    if (loss < best_loss || (loss == best_loss && lambda > best_lambda)) {
      best_loss = loss;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

double resolve_lambda(const Eigen::Ref<const Matrix>& rows,
                      const PenaltySpec& penalty, const SolverOptions& opts) {
  opts.validate();
  switch (opts.lambda_rule.kind) {
    case LambdaRule::Kind::RateFormula:
      return default_lambda(static_cast<double>(rows.rows()),
                            static_cast<double>(rows.cols()), opts.lambda_rule.c0);
    case LambdaRule::Kind::Explicit:
      return opts.lambda_rule.value;
    case LambdaRule::Kind::Grid:
      return select_lambda_cv(rows, opts.lambda_rule.grid, penalty, opts,
                              opts.lambda_rule.folds);
  }
  return opts.lambda_rule.value;
}

}  // namespace hdmt
