#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "helmlab/linalg.hpp"
#include "helmlab/problem.hpp"

namespace helmlab {

/// Piecewise uniform mesh: every coefficient segment is split into equal
/// elements, so all breakpoints are nodes.
struct Mesh1D {
  std::vector<double> nodes;
  /// Coefficient segment that holds each element.
  std::vector<std::size_t> segment_of_element;
  /// Elements per coefficient segment.
  std::vector<std::size_t> counts;

  std::size_t num_elements() const { return segment_of_element.size(); }
  std::size_t num_nodes() const { return nodes.size(); }
  double max_element_size() const;
};

Mesh1D build_mesh(const HelmholtzProblem& problem, std::size_t elements_per_segment);
Mesh1D build_mesh(const HelmholtzProblem& problem, const std::vector<std::size_t>& counts);

/// Throws InvalidArgument unless the mesh spans [-L, L] and contains every breakpoint.
void check_mesh(const HelmholtzProblem& problem, const Mesh1D& mesh);

/// Galerkin system for B(u, v) = G(v) after removing the Dirichlet node.
struct BandedComplexSystem {
  BandedMatrix matrix;
  std::vector<Complex> rhs;
  /// Node index of each unknown.
  std::vector<std::size_t> free_nodes;
  std::size_t num_nodes = 0;
};

BandedComplexSystem assemble(const HelmholtzProblem& problem, const Mesh1D& mesh);

struct FemSolution {
  /// Values at every mesh node, zero on a Dirichlet end.
  std::vector<Complex> values;
  /// ||A x - b||_inf / ||b||_inf
  double residual = 0.0;
  /// 1-norm condition estimate; NaN unless requested.
  double condition = std::numeric_limits<double>::quiet_NaN();
  SolutionNorms norms;
};

struct SolveOptions {
  bool estimate_condition = false;
};

/// Banded LU with partial pivoting. Throws SingularSystem on a zero pivot.
/// The returned solution carries nodal values, residual and (optionally) the
/// condition estimate; norms are left empty.
FemSolution solve(const BandedComplexSystem& system, const SolveOptions& options = {});

/// Exact norms of the P1 function with the given nodal values.
SolutionNorms norms(const std::vector<Complex>& values, const HelmholtzProblem& problem,
               const Mesh1D& mesh);

double condition_estimate(const BandedComplexSystem& system);

/// assemble + solve + norms.
FemSolution solve_fem(const HelmholtzProblem& problem, const Mesh1D& mesh,
                      const SolveOptions& options = {});

}  // namespace helmlab
