#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "helmlab/coeffs.hpp"

namespace helmlab::testing {

/// Random strictly increasing partition of [-L, L] with n segments.
inline std::vector<double> random_partition(std::mt19937_64& rng, double L, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& v : w) total += (v = unit(rng));
  std::vector<double> z{-L};
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    acc += w[j];
    z.push_back(-L + 2.0 * L * acc / total);
  }
  z.push_back(L);
  return z;
}

/// Piecewise constant with values in [lo, hi].
inline PiecewiseCoefficient random_piecewise_constant(std::mt19937_64& rng, double L,
                                                      std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> val(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = val(rng);
  return PiecewiseCoefficient::piecewise_constant(random_partition(rng, L, n), v);
}

/// Mix of constant and linear segments with values in [lo, hi].
inline PiecewiseCoefficient random_piecewise_linear(std::mt19937_64& rng, double L, std::size_t n,
                                                    double lo, double hi) {
  std::uniform_real_distribution<double> val(lo, hi);
  std::bernoulli_distribution flat(0.3);
  std::vector<double> left(n), right(n);
  for (std::size_t j = 0; j < n; ++j) {
    left[j] = val(rng);
    right[j] = flat(rng) ? left[j] : val(rng);
  }
  return PiecewiseCoefficient::piecewise_linear(random_partition(rng, L, n), left, right);
}

}  // namespace helmlab::testing
