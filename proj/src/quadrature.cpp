#include "helmlab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace helmlab::quad {

double adaptive(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  if (lo == hi) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  return gauss_kronrod<double, 15>::integrate(f, lo, hi, 20, rel_tol, &err);
}

const Rule& gauss5_unit() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, 5>;
    // Boost stores the non-negative abscissae of the symmetric rule on [-1, 1].
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    Rule r{};
    int k = 0;
    for (std::size_t i = x.size(); i-- > 1;) {
      r.nodes[k] = 0.5 * (1.0 - x[i]);
      r.weights[k++] = 0.5 * w[i];
    }
    r.nodes[k] = 0.5 * (1.0 - x[0]);
    r.weights[k++] = 0.5 * w[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
      r.nodes[k] = 0.5 * (1.0 + x[i]);
      r.weights[k++] = 0.5 * w[i];
    }
    return r;
  }();
  return rule;
}

}  // namespace helmlab::quad
