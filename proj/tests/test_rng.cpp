#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "gsel/mathfn.hpp"
#include "gsel/rng.hpp"

using gsel::Rng;

TEST_CASE("substreams are pure functions of (seed, index)") {
  Rng a = Rng::substream(42, 7);
  Rng b = Rng::substream(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c = Rng::substream(42, 8);
  bool differ = false;
  Rng a2 = Rng::substream(42, 7);
  for (int i = 0; i < 100; ++i) differ |= (a2.next_u64() != c.next_u64());
  CHECK(differ);
}

TEST_CASE("uniform01 stays in [0,1)") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  Rng rng(3);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 0.02);
}

TEST_CASE("poisson(25) goodness of fit") {
  Rng rng(11);
  const long n = 1000000;
  const double lambda = 25.0;
  std::vector<long> counts(120, 0);
  double sum = 0.0;
  for (long i = 0; i < n; ++i) {
    const int x = rng.poisson(lambda);
    sum += x;
    if (x < static_cast<int>(counts.size())) ++counts[x];
  }
  const double mean = sum / n;
  CHECK(std::fabs(mean - lambda) < 3.0 * std::sqrt(lambda / n));

  // Pearson statistic with merged bins; two-sided 1% via the library's
  // chi-square CDF (itself pinned against frozen values elsewhere).
  std::vector<double> probs;
  std::vector<long> obs;
  {
    double p = std::exp(-lambda);
    double acc_p = 0.0;
    long acc_o = 0;
    std::vector<double> pmf(counts.size());
    pmf[0] = p;
    for (size_t k = 1; k < counts.size(); ++k) pmf[k] = pmf[k - 1] * lambda / k;
    for (size_t k = 0; k < counts.size(); ++k) {
      acc_p += pmf[k];
      acc_o += counts[k];
      if (acc_p * n >= 5.0) {
        probs.push_back(acc_p);
        obs.push_back(acc_o);
        acc_p = 0.0;
        acc_o = 0;
      }
    }
    probs.push_back(1.0 - std::accumulate(probs.begin(), probs.end(), 0.0));
    obs.push_back(n - std::accumulate(obs.begin(), obs.end(), 0L));
  }
  double stat = 0.0;
  for (size_t b = 0; b < probs.size(); ++b) {
    const double expected = probs[b] * n;
    const double diff = obs[b] - expected;
    stat += diff * diff / expected;
  }
  const int dof = static_cast<int>(probs.size()) - 1;
  const double cdf = gsel::chi_square_cdf(stat, dof);
  CHECK(cdf > 0.005);
  CHECK(cdf < 0.995);
}
