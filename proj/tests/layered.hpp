#pragma once

#include "helmlab/problem.hpp"

namespace helmlab::testing {

/// a = c = 1 on [-1, 1], impedance at both ends with g = (0, 1).
inline HelmholtzProblem unit_problem(double omega, BoundaryConfig bc = BoundaryConfig::pure_impedance,
                                     Complex gl = 0.0, Complex gr = 1.0) {
  return HelmholtzProblem(PiecewiseCoefficient::constant(1.0, 1.0),
                          PiecewiseCoefficient::constant(1.0, 1.0), omega, bc, gl, gr);
}

}  // namespace helmlab::testing
