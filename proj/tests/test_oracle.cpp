#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "helmlab/error.hpp"
#include "helmlab/fem.hpp"
#include "helmlab/oracle.hpp"
#include "helmlab/quadrature.hpp"
#include "layered.hpp"

using namespace helmlab;
using doctest::Approx;

TEST_CASE("single interval closed form") {
  auto p = testing::unit_problem(std::numbers::pi / 2.0);
  auto amps = solve_analytic(p);
  REQUIRE(amps.num_intervals() == 1);
  CHECK(std::abs(amps.A[0]) < 1e-15);
  // B = 1 / (-2 i omega exp(-2 i omega)) with phases taken from x = -1
  CHECK(std::abs(amps.B[0] - Complex{0.0, -1.0 / std::numbers::pi}) < 1e-15);
  auto n = exact_norms(amps);
  CHECK(n.du == Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(n.wu == Approx(n.du).epsilon(1e-14));
  // boundary data reconstruction at x = 1: u' - i omega u = 1
  const Complex bdry = derivative(amps, 1.0) - Complex{0.0, p.omega} * eval(amps, 1.0);
  CHECK(std::abs(bdry - 1.0) < 1e-14);
  // 10^6-point midpoint rule for ||u'||
  const int m = 1000000;
  double acc = 0.0;
  for (int k = 0; k < m; ++k) acc += std::norm(derivative(amps, -1.0 + (k + 0.5) * 2.0 / m));
  CHECK(std::sqrt(acc * 2.0 / m) == Approx(std::sqrt(0.5)).epsilon(1e-10));
}

TEST_CASE("plane wave norm") {
  WaveAmplitudes w;
  w.z = {0.0, 0.7};
  w.A = {1.0};
  w.B = {0.0};
  w.k = {3.0};
  w.a = {1.0};
  w.c = {1.0};
  w.omega = 3.0;
  CHECK(exact_norms(w).du == Approx(std::sqrt(9.0 * 0.7)));
  w.k = {0.0};
  w.omega = 0.0;
  CHECK(eval(w, 0.35) == Complex{1.0, 0.0});
  CHECK_THROWS_AS(eval(w, 0.8), DomainError);
}

TEST_CASE("interface and boundary conditions hold on random layers") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> om(1.0, 50.0);
  const BoundaryConfig bcs[] = {BoundaryConfig::pure_impedance, BoundaryConfig::dirichlet_impedance,
                                BoundaryConfig::impedance_dirichlet};
  for (int draw = 0; draw < 60; ++draw) {
    auto a = testing::random_piecewise_constant(rng, 1.0, 1 + draw % 6, 0.5, 10.0);
    auto c = testing::random_piecewise_constant(rng, 1.0, 1 + draw % 5, 0.5, 10.0);
    HelmholtzProblem p(a, c, om(rng), bcs[draw % 3], Complex{0.4, -1.0}, Complex{1.0, 0.5});
    auto amps = solve_analytic(p);
    CHECK(amps.residual < 1e-12);
    const auto& bp = p.a.breakpoints();
    double scale = 0.0;
    for (double x : bp.values()) scale = std::max(scale, std::abs(eval(amps, x)));
    for (std::size_t j = 1; j < bp.num_segments(); ++j) {
      const double z = bp[j];
      CHECK(std::abs(eval(amps, z, Side::left) - eval(amps, z, Side::right)) <= 1e-12 * scale);
      const Complex fl = p.a.left_limit(j) * derivative(amps, z, Side::left);
      const Complex fr = p.a.right_limit(j) * derivative(amps, z, Side::right);
      CHECK(std::abs(fl - fr) <= 1e-11 * std::max(std::abs(fl), scale));
    }
    const double L = 1.0;
    if (dirichlet_at_left(p.bc)) {
      CHECK(std::abs(eval(amps, -L)) < 1e-12 * scale);
    } else {
      const double beta = std::sqrt(p.a.eval(-L)) / p.c.eval(-L);
      const Complex g = -p.a.eval(-L) * derivative(amps, -L) - Complex{0.0, p.omega * beta} * eval(amps, -L);
      CHECK(std::abs(g - p.g_left) < 1e-10 * std::max(1.0, scale));
    }
    if (dirichlet_at_right(p.bc)) {
      CHECK(std::abs(eval(amps, L)) < 1e-12 * scale);
    } else {
      const double beta = std::sqrt(p.a.eval(L)) / p.c.eval(L);
      const Complex g = p.a.eval(L) * derivative(amps, L) - Complex{0.0, p.omega * beta} * eval(amps, L);
      CHECK(std::abs(g - p.g_right) < 1e-10 * std::max(1.0, scale));
    }
    auto n = exact_norms(amps);
    {
      const double lhs = n.energy * n.energy - 2.0 * n.wu * n.wu;
      const double rhs = std::real(p.effective_g_left() * std::conj(eval(amps, -L)) +
                                   p.effective_g_right() * std::conj(eval(amps, L)));
      CHECK(lhs == Approx(rhs).epsilon(1e-9).scale(n.energy * n.energy));
    }
    // closed form against adaptive quadrature of |u'|^2
    double q = 0.0;
    for (std::size_t j = 0; j < bp.num_segments(); ++j)
      q += quad::adaptive([&](double x) { return std::norm(derivative(amps, x, Side::right)); },
                          bp[j], bp[j + 1], 1e-13);
    CHECK(n.du == Approx(std::sqrt(q)).epsilon(1e-10));
  }
}

TEST_CASE("unsupported problems") {
  auto lin = PiecewiseCoefficient::piecewise_linear({-1.0, 1.0}, std::vector<double>{1.0},
                                                    std::vector<double>{2.0});
  HelmholtzProblem p(lin, PiecewiseCoefficient::constant(1.0, 1.0), 1.0,
                     BoundaryConfig::pure_impedance, 0.0, 1.0);
  CHECK_THROWS_AS(solve_analytic(p), UnsupportedProblem);
  HelmholtzProblem q(PiecewiseCoefficient::constant(1.0, 1.0), PiecewiseCoefficient::constant(1.0, 1.0),
                     1.0, BoundaryConfig::pure_impedance, 0.0, 1.0, PolynomialSource{{1.0}});
  CHECK_THROWS_AS(solve_analytic(q), UnsupportedProblem);
}

TEST_CASE("extended precision agrees with the double solve when well conditioned") {
  std::mt19937_64 rng(8);
  for (int draw = 0; draw < 10; ++draw) {
    auto c = testing::random_piecewise_constant(rng, 1.0, 6, 0.5, 2.0);
    HelmholtzProblem p(PiecewiseCoefficient::constant(1.0, 1.0), c, 10.0,
                       BoundaryConfig::pure_impedance, 0.0, 1.0);
    auto d = solve_analytic(p);
    auto e = solve_analytic(p, {.extended = true});
    CHECK(e.extended);
    CHECK(exact_norms(e).du == Approx(exact_norms(d).du).epsilon(1e-12));
  }
}

TEST_CASE("FEM converges to the oracle") {
  auto c = PiecewiseCoefficient::piecewise_constant({-1.0, -0.3, 0.4, 1.0},
                                                    std::vector<double>{1.0, 0.6, 1.4});
  HelmholtzProblem p(PiecewiseCoefficient::constant(1.0, 2.0), c, 6.0,
                     BoundaryConfig::pure_impedance, 0.5, 1.0);
  const double exact = exact_norms(solve_analytic(p)).du;
  auto sol = solve_fem(p, build_mesh(p, 3000));
  CHECK(sol.norms.du == Approx(exact).epsilon(1e-5));
}
