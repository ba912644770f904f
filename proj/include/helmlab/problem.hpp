#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "helmlab/coeffs.hpp"
#include "helmlab/stability.hpp"

namespace helmlab {

using Complex = std::complex<double>;

/// Right-hand side f of the interior equation.
struct ZeroSource {};
/// sum_k coeffs[k] x^k in global coordinates.
struct PolynomialSource {
  std::vector<Complex> coeffs;
};
struct FunctionSource {
  std::function<Complex(double)> f;
};
using Source = std::variant<ZeroSource, PolynomialSource, FunctionSource>;

Complex eval_source(const Source& f, double x);
bool is_zero_source(const Source& f);

/// -(a u')' - (omega/c)^2 u = f on [-L, L], with a du/dn - i omega sqrt(a)/c u = g on
/// the impedance ends and u = 0 on the Dirichlet end (if any).
struct HelmholtzProblem {
  PiecewiseCoefficient a;
  PiecewiseCoefficient c;
  double omega = 1.0;
  BoundaryConfig bc = BoundaryConfig::pure_impedance;
  Complex g_left{0.0, 0.0};
  Complex g_right{0.0, 0.0};
  Source f = ZeroSource{};

  HelmholtzProblem(PiecewiseCoefficient a_in, PiecewiseCoefficient c_in, double omega_in,
                   BoundaryConfig bc_in, Complex g_left_in, Complex g_right_in,
                   Source f_in = ZeroSource{});

  double half_length() const { return a.half_length(); }

  /// Throws InvalidArgument or InvariantError when the data cannot describe a
  /// well-posed problem. Called by the constructor.
  void validate() const;

  /// Boundary data as seen by the solver: zero on a Dirichlet end.
  Complex effective_g_left() const;
  Complex effective_g_right() const;

  /// sqrt(|g_left|^2 + |g_right|^2) over the impedance ends.
  double boundary_data_norm() const;
};

struct SolutionNorms {
  double du = 0.0;      ///< ||u'||
  double wu = 0.0;      ///< ||(omega/c) u||
  double energy = 0.0;  ///< (||sqrt(a) u'||^2 + ||(omega/c) u||^2)^(1/2)
};

/// ||f||_{L2(-L, L)}, exact for zero sources and by piecewise Gauss otherwise.
double source_l2_norm(const HelmholtzProblem& problem);

}  // namespace helmlab
