#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gsel/mathfn.hpp"

using gsel::chi_square_cdf;
using gsel::normal_cdf;
using gsel::regularized_lower_gamma;

TEST_CASE("regularized lower gamma against frozen references") {
  // reference values from an independent implementation
  CHECK(regularized_lower_gamma(0.5, 0.5) == doctest::Approx(0.682689492137086).epsilon(1e-11));
  CHECK(regularized_lower_gamma(1.0, 2.0) == doctest::Approx(0.864664716763387).epsilon(1e-11));
  CHECK(regularized_lower_gamma(1.5, 2.0) == doctest::Approx(0.738535870050889).epsilon(1e-11));
  CHECK(regularized_lower_gamma(2.5, 0.3) == doctest::Approx(0.011996757205906).epsilon(1e-9));
  CHECK(regularized_lower_gamma(5.0, 5.0) == doctest::Approx(0.559506714934788).epsilon(1e-11));
  CHECK(regularized_lower_gamma(25.0, 20.0) ==
        doctest::Approx(0.156772621826238).epsilon(1e-10));
  CHECK(regularized_lower_gamma(1.5, 40.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(regularized_lower_gamma(3.0, 0.0) == 0.0);
}

TEST_CASE("gamma domain errors") {
  CHECK_THROWS_AS(regularized_lower_gamma(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(regularized_lower_gamma(1.0, -1.0), std::domain_error);
}

TEST_CASE("monotone in x") {
  double prev = 0.0;
  for (double x = 0.1; x < 20.0; x += 0.37) {
    const double v = regularized_lower_gamma(2.0, x);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("normal cdf basics") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.959964) == doctest::Approx(0.97500000090).epsilon(1e-9));
  CHECK(normal_cdf(-8.0) == doctest::Approx(6.22096e-16).epsilon(1e-3));
}

TEST_CASE("chi-square cdf") {
  CHECK(chi_square_cdf(1.3862943611198906, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(chi_square_cdf(8.0, 3) == doctest::Approx(0.9539882943107686).epsilon(1e-11));
  CHECK(chi_square_cdf(-1.0, 4) == 0.0);
}
