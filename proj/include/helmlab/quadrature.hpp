#pragma once

#include <array>
#include <functional>

namespace helmlab::quad {

/// Adaptive Gauss-Kronrod (7/15 point panels) on [lo, hi]. Relative tolerance
/// applies to the integral estimate.
double adaptive(const std::function<double(double)>& f, double lo, double hi,
                double rel_tol = 1e-10);

/// Nodes and weights of the 5-point Gauss-Legendre rule mapped to [0, 1].
struct Rule {
  std::array<double, 5> nodes;
  std::array<double, 5> weights;
};
const Rule& gauss5_unit();

/// Fixed 5-point Gauss-Legendre on [lo, hi]; exact for polynomials of degree 9.
template <class F>
auto gauss5(F&& f, double lo, double hi) {
  const Rule& rule = gauss5_unit();
  const double h = hi - lo;
  auto sum = f(lo + rule.nodes[0] * h) * rule.weights[0];
  for (int i = 1; i < 5; ++i) sum += f(lo + rule.nodes[i] * h) * rule.weights[i];
  return sum * h;
}

}  // namespace helmlab::quad
