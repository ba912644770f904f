#pragma once

#include <optional>
#include <string>

#include "helmlab/coeffs.hpp"

namespace helmlab {

/// Data for the Galerkin theory constants. C_reg, C_int and C_trace cannot be
/// computed here; they default to 1 and the report says so.
struct FemTheoryInputs {
  double a_min = 1.0;
  double a_max = 1.0;
  double c_min = 1.0;
  double c_max = 1.0;
  double omega = 1.0;
  double omega0 = 1.0;
  double h = 0.01;
  double kappa_a = 0.0;  ///< ||a'/a||_inf
  double kappa_c = 0.0;  ///< ||c'/c||_inf
  double C_reg = 1.0;
  double C_int = 1.0;
  double C_trace = 1.0;
  double C_stab = 1.0;
  bool constants_certified = false;

  void validate() const;
};

struct FemTheoryReport {
  double C_ac = 0.0;
  double beta_max = 0.0;
  double C0 = 0.0;
  double C0_prime = 0.0;
  double K = 0.0;
  double sigma_star_bound = 0.0;
  bool resolution_ok = false;
  double quasi_opt_H = 0.0;
  double quasi_opt_L2 = 0.0;
  bool constants_certified = false;
};

/// C_{a,c} = 3 + C_trace^2/2 max(1/a_min, c_max^2 (1/omega0^2 + beta_max^2)),
/// beta_max = sqrt(a_max)/c_min.
double continuity_constant(const FemTheoryInputs& in);

/// C0 = 1 + (sqrt(a_max) c_max / omega0)^2.
double constant_c0(const FemTheoryInputs& in);

/// C0' = C_trace (1/sqrt(a_min) + c_min/omega0 (1 + kappa_c + kappa_a/2)).
double constant_c0_prime(const FemTheoryInputs& in);

/// K = C_reg C_int sqrt(a_min) (C0 + C0' sqrt(a_min) + kappa_a/omega0 sqrt(a_min) c_min).
double constant_k(const FemTheoryInputs& in);

/// Upper bound for the adjoint approximability constant of P1 on mesh size h.
double sigma_star_bound(const FemTheoryInputs& in);

/// Resolution condition sigma* <= 1/(2 C_ac) and the quasi-optimality constants
/// 2 C_ac (energy norm) and 2 C_ac^2 sigma* (weighted L2).
FemTheoryReport resolution_and_quasiopt(const FemTheoryInputs& in);

/// Same, with sigma* supplied directly instead of bounded from the inputs.
FemTheoryReport resolution_and_quasiopt(double C_ac, double sigma_star);

/// ||g'/g||_inf for a coefficient without interior jumps. Throws
/// UnsupportedProblem when g jumps, since the quantity is then undefined.
double log_derivative_sup(const PiecewiseCoefficient& g);

std::string to_key_value(const FemTheoryInputs& in, const FemTheoryReport& report);

}  // namespace helmlab
