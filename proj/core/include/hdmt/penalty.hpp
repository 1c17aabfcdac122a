#pragma once

#include <string>
#include <string_view>

namespace hdmt {

enum class PenaltyKind { Lasso, Scad, Mcp };

std::string_view to_string(PenaltyKind kind);
PenaltyKind parse_penalty_kind(std::string_view name);

// Separable penalty P_lambda(t). `shape` is the SCAD a (> 2) or the MCP
// b (> 1); it is ignored for the Lasso.
struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::Scad;
  double lambda = 0.0;
  double shape = 3.7;

  static constexpr double kDefaultScadA = 3.7;
  static constexpr double kDefaultMcpB = 3.0;

  static PenaltySpec lasso(double lambda) { return {PenaltyKind::Lasso, lambda, 0.0}; }
  static PenaltySpec scad(double lambda, double a = kDefaultScadA) {
    return {PenaltyKind::Scad, lambda, a};
  }
  static PenaltySpec mcp(double lambda, double b = kDefaultMcpB) {
    return {PenaltyKind::Mcp, lambda, b};
  }
  static PenaltySpec of_kind(PenaltyKind kind, double lambda);

  PenaltySpec with_lambda(double l) const {
    PenaltySpec s = *this;
    s.lambda = l;
    return s;
  }

  void validate() const;
};

struct Interval {
  double lo;
  double hi;

  double distance_to(double x) const {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
  }
};

double penalty_value(const PenaltySpec& spec, double t);

// Clarke subdifferential: the derivative for t != 0, [-lambda, lambda] at 0.
Interval penalty_subgradient(const PenaltySpec& spec, double t);

// argmin_u 0.5 (u - t)^2 + step * P_lambda(u). When the scalar problem is
// nonconvex every piecewise candidate is compared and exact ties go to the
// smaller |u|.
double prox(const PenaltySpec& spec, double t, double step);

// Smallest gamma with P_lambda(t) + gamma t^2 / 2 convex.
double weak_convexity_gamma(const PenaltySpec& spec);

}  // namespace hdmt
