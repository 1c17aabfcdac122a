#include "hdmt/distributions.hpp"

#include <boost/math/distributions/cauchy.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hdmt::dist {

namespace bm = boost::math;

namespace {
const bm::normal_distribution<double> kStdNormal{0.0, 1.0};
}

double normal_cdf(double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return bm::cdf(kStdNormal, x);
}

double normal_sf(double x) {
  if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
  return bm::cdf(bm::complement(kStdNormal, x));
}

double normal_quantile(double p) { return bm::quantile(kStdNormal, p); }

double normal_upper_quantile(double alpha) {
  return bm::quantile(bm::complement(kStdNormal, alpha));
}

double student_t_cdf(double x, double df) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return bm::cdf(bm::students_t_distribution<double>(df), x);
}

double student_t_sf(double x, double df) {
  if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
  return bm::cdf(bm::complement(bm::students_t_distribution<double>(df), x));
}

double chi_squared_cdf(double x, double df) {
  if (x <= 0) return 0.0;
  return bm::cdf(bm::chi_squared_distribution<double>(df), x);
}

double chi_squared_sf(double x, double df) {
  if (x <= 0) return 1.0;
  return bm::cdf(bm::complement(bm::chi_squared_distribution<double>(df), x));
}

double chi_squared_quantile(double p, double df) {
  return bm::quantile(bm::chi_squared_distribution<double>(df), p);
}

double fisher_f_sf(double x, double df1, double df2) {
  if (x <= 0) return 1.0;
  return bm::cdf(bm::complement(bm::fisher_f_distribution<double>(df1, df2), x));
}

double cauchy_upper_quantile(double alpha) {
  return bm::quantile(bm::complement(bm::cauchy_distribution<double>(), alpha));
}

double cauchy_sf(double x) {
  if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
  return bm::cdf(bm::complement(bm::cauchy_distribution<double>(), x));
}

double kolmogorov_sf(double x) {
  if (x <= 0) return 1.0;
  // Series 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2); converges fast for
  // x > 0.3, below that the tail is effectively 1.
  if (x < 0.3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace hdmt::dist
