#pragma once

// Thin wrappers over Boost.Math so the rest of the library talks in plain
// doubles and never sees policy types.

namespace hdmt::dist {

double normal_cdf(double x);
// Upper tail 1 - Phi(x), accurate for large x.
double normal_sf(double x);
double normal_quantile(double p);
// z such that P(Z > z) = alpha.
double normal_upper_quantile(double alpha);

double student_t_cdf(double x, double df);
double student_t_sf(double x, double df);

double chi_squared_cdf(double x, double df);
double chi_squared_sf(double x, double df);
// Lower-tail quantile: q with P(X <= q) = p.
double chi_squared_quantile(double p, double df);

double fisher_f_sf(double x, double df1, double df2);

double cauchy_upper_quantile(double alpha);
double cauchy_sf(double x);

// Asymptotic Kolmogorov distribution: P(sqrt(n) D_n > x).
double kolmogorov_sf(double x);

}  // namespace hdmt::dist
