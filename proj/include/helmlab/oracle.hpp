#pragma once

#include <limits>
#include <vector>

#include "helmlab/problem.hpp"

namespace helmlab {

/// Travelling-wave representation of the exact solution on a layered medium:
///   u(x) = A_l exp(i k_l (x - z_l)) + B_l exp(-i k_l (x - z_l)),  x in [z_l, z_{l+1}],
/// with k_l = omega / (sqrt(a_l) c_l).
struct WaveAmplitudes {
  std::vector<double> z;
  std::vector<Complex> A;
  std::vector<Complex> B;
  std::vector<double> k;
  std::vector<double> a;
  std::vector<double> c;
  double omega = 0.0;

  /// Relative residual of the amplitude system, evaluated in double.
  double residual = 0.0;
  /// 1-norm condition estimate of the amplitude system.
  double condition = std::numeric_limits<double>::quiet_NaN();
  /// Set when condition * machine epsilon exceeds 1e-4.
  bool ill_conditioned = false;
  /// Amplitudes came from the 50-digit solve.
  bool extended = false;

  std::size_t num_intervals() const { return A.size(); }
};

struct OracleOptions {
  /// Solve the amplitude system in 50-digit arithmetic.
  bool extended = false;
  bool estimate_condition = true;
};

/// Throws UnsupportedProblem unless a and c are piecewise constant and f = 0.
WaveAmplitudes solve_analytic(const HelmholtzProblem& problem, const OracleOptions& options = {});

/// u(x); the side picks the interval at a breakpoint. Throws DomainError
/// outside [-L, L].
Complex eval(const WaveAmplitudes& amps, double x, Side side = Side::right);
Complex derivative(const WaveAmplitudes& amps, double x, Side side = Side::right);

/// ||u'||, ||(omega/c) u|| and the energy norm in closed form.
SolutionNorms exact_norms(const WaveAmplitudes& amps);

}  // namespace helmlab
