#pragma once

namespace gsel {

// Standard normal CDF.
double normal_cdf(double x);

// Regularized lower incomplete gamma P(a, x). Series expansion for
// x < a + 1, Lentz continued fraction otherwise; absolute tolerance 1e-12.
double regularized_lower_gamma(double a, double x);

// P(chi-square with dof degrees of freedom <= x).
double chi_square_cdf(double x, int dof);

}  // namespace gsel
