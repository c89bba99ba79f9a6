#include "gsel/mathfn.hpp"

#include <cmath>
#include <stdexcept>

namespace gsel {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

namespace {

constexpr double kAbsTol = 1e-12;
constexpr int kMaxIter = 10000;

double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kAbsTol) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper-tail continued fraction, modified Lentz.
double upper_gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kAbsTol) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_lower_gamma(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("regularized_lower_gamma: a must be > 0");
  if (x < 0.0) throw std::domain_error("regularized_lower_gamma: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return 1.0 - upper_gamma_cf(a, x);
}

double chi_square_cdf(double x, int dof) {
  if (dof < 1) throw std::domain_error("chi_square_cdf: dof must be >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_lower_gamma(0.5 * dof, 0.5 * x);
}

}  // namespace gsel
