#include "helmlab/fem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "helmlab/error.hpp"
#include "helmlab/quadrature.hpp"

namespace helmlab {

double Mesh1D::max_element_size() const {
  double h = 0.0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) h = std::max(h, nodes[k + 1] - nodes[k]);
  return h;
}

Mesh1D build_mesh(const HelmholtzProblem& problem, std::size_t elements_per_segment) {
  return build_mesh(problem,
                    std::vector<std::size_t>(problem.a.num_segments(), elements_per_segment));
}

Mesh1D build_mesh(const HelmholtzProblem& problem, const std::vector<std::size_t>& counts) {
  const Breakpoints& bp = problem.a.breakpoints();
  if (counts.size() != bp.num_segments())
    throw InvalidArgument("mesh: need one element count per coefficient segment");
  Mesh1D mesh;
  mesh.counts = counts;
  mesh.nodes.push_back(bp[0]);
  for (std::size_t j = 0; j < bp.num_segments(); ++j) {
    const std::size_t n = counts[j];
    if (n == 0) throw InvalidArgument("mesh: element count must be at least 1");
    const double x0 = bp[j], x1 = bp[j + 1];
    for (std::size_t k = 1; k < n; ++k)
      mesh.nodes.push_back(x0 + (x1 - x0) * (static_cast<double>(k) / static_cast<double>(n)));
    mesh.nodes.push_back(x1);
    mesh.segment_of_element.insert(mesh.segment_of_element.end(), n, j);
  }
  return mesh;
}

void check_mesh(const HelmholtzProblem& problem, const Mesh1D& mesh) {
  const Breakpoints& bp = problem.a.breakpoints();
  if (mesh.nodes.size() < 2 || mesh.segment_of_element.size() + 1 != mesh.nodes.size())
    throw InvalidArgument("mesh: inconsistent node and element counts");
  if (mesh.nodes.front() != bp[0] || mesh.nodes.back() != bp[bp.size() - 1])
    throw InvalidArgument("mesh: endpoints differ from [-L, L]");
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const double x0 = mesh.nodes[k], x1 = mesh.nodes[k + 1];
    const std::size_t j = mesh.segment_of_element[k];
    if (!(x1 > x0)) throw InvalidArgument("mesh: nodes not strictly increasing");
    if (j >= bp.num_segments() || x0 < bp[j] || x1 > bp[j + 1])
      throw InvalidArgument("mesh: element " + std::to_string(k) +
                            " is not aligned with the coefficient breakpoints");
  }
}

namespace {

struct ElementMatrices {
  double stiff;     // multiplies [1 -1; -1 1]
  double mass[3];   // (0,0), (0,1), (1,1) entries of omega^2 int phi_i phi_j / c^2
};

ElementMatrices element_matrices(const HelmholtzProblem& p, std::size_t seg, double x0,
                                 double x1) {
  const double h = x1 - x0;
  const Segment& sa = p.a.segment(seg);
  const Segment& sc = p.c.segment(seg);
  ElementMatrices e{};
  double a_int;
  if (sa.kind() == Segment::Kind::smooth)
    a_int = quad::gauss5([&](double x) { return p.a.segment_value(seg, x); }, x0, x1);
  else
    a_int = 0.5 * h * (p.a.segment_value(seg, x0) + p.a.segment_value(seg, x1));
  e.stiff = a_int / (h * h);
  const double w2 = p.omega * p.omega;
  if (sc.kind() == Segment::Kind::constant) {
    const double k2 = w2 / (sc.left_value() * sc.left_value());
    e.mass[0] = e.mass[2] = k2 * h / 3.0;
    e.mass[1] = k2 * h / 6.0;
  } else {
    for (int m = 0; m < 3; ++m) {
      e.mass[m] = quad::gauss5(
          [&](double x) {
            const double t = (x - x0) / h;
            const double left = 1.0 - t, right = t;
            const double c = p.c.segment_value(seg, x);
            const double pr = m == 0 ? left * left : m == 1 ? left * right : right * right;
            return w2 * pr / (c * c);
          },
          x0, x1);
    }
  }
  return e;
}

}  // namespace

BandedComplexSystem assemble(const HelmholtzProblem& problem, const Mesh1D& mesh) {
  check_mesh(problem, mesh);
  const std::size_t nn = mesh.num_nodes();
  const bool drop_left = dirichlet_at_left(problem.bc);
  const bool drop_right = dirichlet_at_right(problem.bc);
  const std::size_t first = drop_left ? 1 : 0;
  const std::size_t last = drop_right ? nn - 2 : nn - 1;
  if (last < first) throw InvalidArgument("assemble: no free nodes");
  const std::size_t n = last - first + 1;

  BandedComplexSystem sys{BandedMatrix(n, 1, 1), std::vector<Complex>(n), {}, nn};
  sys.free_nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) sys.free_nodes[i] = first + i;

  auto add = [&](std::size_t node_i, std::size_t node_j, Complex v) {
    if (node_i < first || node_i > last || node_j < first || node_j > last) return;
    sys.matrix.at(node_i - first, node_j - first) += v;
  };
  const bool has_source = !is_zero_source(problem.f);
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const double x0 = mesh.nodes[k], x1 = mesh.nodes[k + 1];
    const auto e = element_matrices(problem, mesh.segment_of_element[k], x0, x1);
    add(k, k, e.stiff - e.mass[0]);
    add(k, k + 1, -e.stiff - e.mass[1]);
    add(k + 1, k, -e.stiff - e.mass[1]);
    add(k + 1, k + 1, e.stiff - e.mass[2]);
    if (has_source) {
      const double h = x1 - x0;
      const Complex fl = quad::gauss5(
          [&](double x) { return eval_source(problem.f, x) * ((x1 - x) / h); }, x0, x1);
      const Complex fr = quad::gauss5(
          [&](double x) { return eval_source(problem.f, x) * ((x - x0) / h); }, x0, x1);
      if (k >= first && k <= last) sys.rhs[k - first] += fl;
      if (k + 1 >= first && k + 1 <= last) sys.rhs[k + 1 - first] += fr;
    }
  }
  const Complex i_omega{0.0, problem.omega};
  const double L = problem.half_length();
  if (!drop_left) {
    const double beta = std::sqrt(problem.a.eval(-L)) / problem.c.eval(-L);
    sys.matrix.at(0, 0) -= i_omega * beta;
    sys.rhs[0] += problem.g_left;
  }
  if (!drop_right) {
    const double beta = std::sqrt(problem.a.eval(L)) / problem.c.eval(L);
    sys.matrix.at(n - 1, n - 1) -= i_omega * beta;
    sys.rhs[n - 1] += problem.g_right;
  }
  return sys;
}

FemSolution solve(const BandedComplexSystem& system, const SolveOptions& options) {
  BandedLU lu(system.matrix);
  const auto x = lu.solve(system.rhs);
  FemSolution sol;
  sol.residual = relative_residual(system.matrix, x, system.rhs);
  if (options.estimate_condition) sol.condition = lu.condition_estimate();
  sol.values.assign(system.num_nodes, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < x.size(); ++i) sol.values[system.free_nodes[i]] = x[i];
  return sol;
}

SolutionNorms norms(const std::vector<Complex>& u, const HelmholtzProblem& problem, const Mesh1D& mesh) {
  if (u.size() != mesh.num_nodes()) throw InvalidArgument("norms: value count differs from nodes");
  double du2 = 0.0, adu2 = 0.0, wu2 = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const double x0 = mesh.nodes[k], x1 = mesh.nodes[k + 1], h = x1 - x0;
    const std::size_t seg = mesh.segment_of_element[k];
    const auto e = element_matrices(problem, seg, x0, x1);
    const double slope2 = std::norm(u[k + 1] - u[k]) / (h * h);
    du2 += slope2 * h;
    adu2 += slope2 * e.stiff * h * h;
    // u^H M u for the 2x2 weighted mass matrix
    wu2 += e.mass[0] * std::norm(u[k]) + e.mass[2] * std::norm(u[k + 1]) +
           2.0 * e.mass[1] * std::real(u[k] * std::conj(u[k + 1]));
  }
  SolutionNorms out;
  out.du = std::sqrt(du2);
  out.wu = std::sqrt(std::max(wu2, 0.0));
  out.energy = std::sqrt(adu2 + out.wu * out.wu);
  return out;
}

double condition_estimate(const BandedComplexSystem& system) {
  return BandedLU(system.matrix).condition_estimate();
}

FemSolution solve_fem(const HelmholtzProblem& problem, const Mesh1D& mesh,
                      const SolveOptions& options) {
  FemSolution sol = solve(assemble(problem, mesh), options);
  sol.norms = norms(sol.values, problem, mesh);
  return sol;
}

}  // namespace helmlab
