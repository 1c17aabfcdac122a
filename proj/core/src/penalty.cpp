#include "hdmt/penalty.hpp"

#include "hdmt/common.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hdmt {

std::string_view to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::Lasso: return "lasso";
    case PenaltyKind::Scad: return "scad";
    case PenaltyKind::Mcp: return "mcp";
  }
  return "unknown";
}

PenaltyKind parse_penalty_kind(std::string_view name) {
  if (name == "lasso") return PenaltyKind::Lasso;
  if (name == "scad") return PenaltyKind::Scad;
  if (name == "mcp") return PenaltyKind::Mcp;
  throw InvalidArgument("unknown penalty '" + std::string(name) +
                        "' (expected lasso, scad or mcp)");
}

PenaltySpec PenaltySpec::of_kind(PenaltyKind kind, double lambda) {
  switch (kind) {
    case PenaltyKind::Lasso: return lasso(lambda);
    case PenaltyKind::Scad: return scad(lambda);
    case PenaltyKind::Mcp: return mcp(lambda);
  }
  return lasso(lambda);
}

void PenaltySpec::validate() const {
  require(std::isfinite(lambda) && lambda >= 0.0,
          "penalty: lambda must be finite and nonnegative");
  if (kind == PenaltyKind::Scad) require(shape > 2.0, "penalty: SCAD needs a > 2");
  if (kind == PenaltyKind::Mcp) require(shape > 1.0, "penalty: MCP needs b > 1");
}

namespace {

// Value on t >= 0.
double value_nonneg(const PenaltySpec& s, double t) {
  const double lam = s.lambda;
  switch (s.kind) {
    case PenaltyKind::Lasso:
      return lam * t;
    case PenaltyKind::Scad: {
      const double a = s.shape;
      if (t <= lam) return lam * t;
      if (t <= a * lam) return (2.0 * a * lam * t - t * t - lam * lam) / (2.0 * (a - 1.0));
      return (a + 1.0) * lam * lam / 2.0;
    }
    case PenaltyKind::Mcp: {
      const double b = s.shape;
      if (t <= b * lam) return lam * t - t * t / (2.0 * b);
      return b * lam * lam / 2.0;
    }
  }
  return 0.0;
}

// Derivative on t > 0.
double derivative_pos(const PenaltySpec& s, double t) {
  const double lam = s.lambda;
  switch (s.kind) {
    case PenaltyKind::Lasso:
      return lam;
    case PenaltyKind::Scad: {
      const double a = s.shape;
      if (t <= lam) return lam;
      if (t <= a * lam) return (a * lam - t) / (a - 1.0);
      return 0.0;
    }
    case PenaltyKind::Mcp:
      return std::max(0.0, lam - t / s.shape);
  }
  return 0.0;
}

}  // namespace

double penalty_value(const PenaltySpec& spec, double t) {
  spec.validate();
  return value_nonneg(spec, std::abs(t));
}

Interval penalty_subgradient(const PenaltySpec& spec, double t) {
  spec.validate();
  if (t == 0.0) return {-spec.lambda, spec.lambda};
  const double d = derivative_pos(spec, std::abs(t));
  return t > 0 ? Interval{d, d} : Interval{-d, -d};
}

double weak_convexity_gamma(const PenaltySpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case PenaltyKind::Lasso: return 0.0;
    case PenaltyKind::Scad: return 1.0 / (spec.shape - 1.0);
    case PenaltyKind::Mcp: return 1.0 / spec.shape;
  }
  return 0.0;
}

double prox(const PenaltySpec& spec, double t, double step) {
  spec.validate();
  require(step > 0.0 && std::isfinite(step), "prox: step must be positive");
  const double lam = spec.lambda;
  const double x = std::abs(t);
  const double sign = t < 0 ? -1.0 : 1.0;

  if (spec.kind == PenaltyKind::Lasso) {
    return sign * std::max(x - step * lam, 0.0);
  }
  if (lam == 0.0) return t;

  // With step * gamma < 1 the scalar problem is strictly convex and the
  // minimiser has a closed form.
  if (spec.kind == PenaltyKind::Scad && step < spec.shape - 1.0) {
    const double a = spec.shape;
    if (x <= lam * (1.0 + step)) return sign * std::max(x - step * lam, 0.0);
    if (x <= a * lam) return sign * ((a - 1.0) * x - step * a * lam) / (a - 1.0 - step);
    return t;
  }
  if (spec.kind == PenaltyKind::Mcp && step < spec.shape) {
    const double b = spec.shape;
    if (x <= step * lam) return 0.0;
    if (x <= b * lam) return sign * (x - step * lam) / (1.0 - step / b);
    return t;
  }

  // Minimise over u >= 0; the minimiser shares the sign of t. Collect the
  // stationary point of each smooth piece (clamped into the piece) and the
  // piece boundaries, then compare objectives.
  std::array<double, 8> cand{};
  std::size_t nc = 0;
  auto add = [&](double u) { cand[nc++] = u; };
  add(0.0);
  add(std::clamp(x - step * lam, 0.0, lam));  // lambda*|u| piece

  if (spec.kind == PenaltyKind::Scad) {
    const double a = spec.shape;
    const double lo = lam;
    const double hi = a * lam;
    const double curv = 1.0 - step / (a - 1.0);
    if (curv > 0.0) {
      add(std::clamp((x - step * a * lam / (a - 1.0)) / curv, lo, hi));
    }
    add(lo);
    add(hi);
    add(std::max(x, hi));
  } else {
    const double b = spec.shape;
    const double hi = b * lam;
    const double curv = 1.0 - step / b;
    if (curv > 0.0) add(std::clamp((x - step * lam) / curv, 0.0, hi));
    add(hi);
    add(std::max(x, hi));
  }

  std::sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(nc));
  double best_u = 0.0;
  double best = 0.5 * x * x;
  for (std::size_t i = 0; i < nc; ++i) {
    const double u = cand[i];
    const double obj = 0.5 * (u - x) * (u - x) + step * value_nonneg(spec, u);
    if (obj < best) {
      best = obj;
      best_u = u;
    }
  }
  return sign * best_u;
}

}  // namespace hdmt
