#include "helmlab/problem.hpp"

#include <cmath>

#include "helmlab/error.hpp"
#include "helmlab/quadrature.hpp"

namespace helmlab {

Complex eval_source(const Source& f, double x) {
  if (const auto* p = std::get_if<PolynomialSource>(&f)) {
    Complex acc{0.0, 0.0};
    for (auto it = p->coeffs.rbegin(); it != p->coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  if (const auto* fn = std::get_if<FunctionSource>(&f)) return fn->f(x);
  return {0.0, 0.0};
}

bool is_zero_source(const Source& f) {
  if (std::holds_alternative<ZeroSource>(f)) return true;
  if (const auto* p = std::get_if<PolynomialSource>(&f)) {
    for (const auto& v : p->coeffs)
      if (v != Complex{0.0, 0.0}) return false;
    return true;
  }
  return false;
}

namespace {

PiecewiseCoefficient on_common(const PiecewiseCoefficient& g, const PiecewiseCoefficient& other) {
  Breakpoints z = common_partition(g, other);
  return z == g.breakpoints() ? g : g.refined(z);
}

}  // namespace

HelmholtzProblem::HelmholtzProblem(PiecewiseCoefficient a_in, PiecewiseCoefficient c_in,
                                   double omega_in, BoundaryConfig bc_in, Complex g_left_in,
                                   Complex g_right_in, Source f_in)
    : a(on_common(a_in, c_in)),
      c(on_common(c_in, a_in)),
      omega(omega_in),
      bc(bc_in),
      g_left(g_left_in),
      g_right(g_right_in),
      f(std::move(f_in)) {
  validate();
}

void HelmholtzProblem::validate() const {
  if (!std::isfinite(omega) || !(omega > 0.0))
    throw InvalidArgument("problem: omega must be positive and finite");
  if (!(a.breakpoints() == c.breakpoints()))
    throw InvariantError("problem: a and c must share one partition");
  auto finite = [](Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
  if (!finite(g_left) || !finite(g_right))
    throw InvalidArgument("problem: boundary data must be finite");
  if (const auto* fn = std::get_if<FunctionSource>(&f); fn && !fn->f)
    throw InvalidArgument("problem: empty source function");
}

Complex HelmholtzProblem::effective_g_left() const {
  return dirichlet_at_left(bc) ? Complex{0.0, 0.0} : g_left;
}

Complex HelmholtzProblem::effective_g_right() const {
  return dirichlet_at_right(bc) ? Complex{0.0, 0.0} : g_right;
}

double HelmholtzProblem::boundary_data_norm() const {
  return std::sqrt(std::norm(effective_g_left()) + std::norm(effective_g_right()));
}

double source_l2_norm(const HelmholtzProblem& problem) {
  if (is_zero_source(problem.f)) return 0.0;
  const auto& bp = problem.a.breakpoints();
  double total = 0.0;
  for (std::size_t j = 0; j < bp.num_segments(); ++j) {
    // 64 Gauss panels per segment; exact for polynomial sources of degree <= 4
    const int panels = 64;
    const double h = (bp[j + 1] - bp[j]) / panels;
    for (int k = 0; k < panels; ++k) {
      const double lo = bp[j] + k * h;
      total += quad::gauss5([&](double x) { return std::norm(eval_source(problem.f, x)); }, lo,
                            k + 1 == panels ? bp[j + 1] : lo + h);
    }
  }
  return std::sqrt(total);
}

}  // namespace helmlab
