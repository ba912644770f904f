#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "helmlab/coeffs.hpp"
#include "helmlab/error.hpp"

using namespace helmlab;
using doctest::Approx;

namespace {

// c for the layered family with m = 2, r = 0.5.
PiecewiseCoefficient layered_c() {
  const std::vector<double> z{-1.0, -0.8, -0.2, 0.2, 0.8, 1.0};
  const std::vector<double> v{0.5, 1.5, 0.5, 1.5, 0.5};
  return PiecewiseCoefficient::piecewise_constant(z, v);
}

// 2 + sin(m pi x / L) split at its critical points so that each segment is monotone.
PiecewiseCoefficient sine_coefficient(int m, double L) {
  const double k = m * std::numbers::pi / L;
  std::vector<double> z;
  const int pieces = 2 * m;
  for (int i = 0; i <= pieces; ++i) z.push_back(-L + 2.0 * L * i / pieces);
  // critical points sit at quarter periods; shift by a quarter period
  std::vector<double> zz{-L};
  const double quarter = 0.5 * L / m;
  for (double x = -L + quarter; x < L - 1e-12; x += 2.0 * quarter) zz.push_back(x);
  zz.push_back(L);
  std::vector<Segment> segs;
  for (std::size_t j = 0; j + 1 < zz.size(); ++j) {
    const double mid = 0.5 * (zz[j] + zz[j + 1]);
    const SignTag tag = std::cos(k * mid) > 0 ? SignTag::positive_derivative
                                              : SignTag::nonpositive_derivative;
    segs.push_back(Segment::smooth([k](double x) { return 2.0 + std::sin(k * x); },
                                   [k](double x) { return k * std::cos(k * x); }, tag));
  }
  return PiecewiseCoefficient(Breakpoints(zz), std::move(segs));
}

}  // namespace

TEST_CASE("breakpoints validate ordering and endpoints") {
  CHECK_NOTHROW(Breakpoints({-1.0, 0.0, 1.0}));
  CHECK_THROWS_AS(Breakpoints({-1.0}), InvariantError);
  CHECK_THROWS_AS(Breakpoints({-1.0, 0.5, 0.5, 1.0}), InvariantError);
  CHECK_THROWS_AS(Breakpoints({-0.5, 1.0}), InvariantError);
  CHECK_THROWS_AS(Breakpoints({1.0, -1.0}), InvariantError);
  Breakpoints bp({-1.0, 0.0, 1.0});
  CHECK(bp.locate(0.0, Side::left) == 0);
  CHECK(bp.locate(0.0, Side::right) == 1);
  CHECK(bp.locate(-1.0, Side::left) == 0);
  CHECK(bp.locate(1.0, Side::right) == 1);
  CHECK_THROWS_AS(bp.locate(1.5, Side::right), DomainError);
}

TEST_CASE("eval on constant, layered and linear coefficients") {
  auto three = PiecewiseCoefficient::constant(1.0, 3.0);
  CHECK(three.eval(0.3, Side::left) == 3.0);
  CHECK(three.eval(-1.0, Side::right) == 3.0);
  auto c = layered_c();
  CHECK(c.eval(-0.9, Side::left) == 0.5);
  CHECK(c.eval(-0.9, Side::right) == 0.5);
  CHECK(c.eval(-0.8, Side::left) == 0.5);
  CHECK(c.eval(-0.8, Side::right) == 1.5);
  CHECK_THROWS_AS(c.eval(1.01), DomainError);
  auto lin = PiecewiseCoefficient::piecewise_linear({-1.0, 0.0, 1.0}, std::vector<double>{1.0, 1.0},
                                                    std::vector<double>{1.0, 2.0});
  CHECK(lin.eval(0.5) == Approx(1.5));
}

TEST_CASE("jump convention") {
  auto smooth = PiecewiseCoefficient::piecewise_linear({-1.0, 0.0, 1.0}, std::vector<double>{1.0, 2.0},
                                                       std::vector<double>{2.0, 3.0});
  CHECK(smooth.jump(1) == 0.0);
  auto c = layered_c();
  CHECK(c.jump(1) == -1.0);
  CHECK(c.jump(2) == 1.0);
  CHECK(c.jump(0) == -0.5);
  CHECK(c.jump(5) == 0.5);
  CHECK_THROWS_AS(c.jump(6), InvalidArgument);
}

TEST_CASE("variation closed forms") {
  CHECK(variation(PiecewiseCoefficient::constant(2.0, 7.0)) == 0.0);
  // alternating c^2 pattern with N segments: (N-1)(cmax^2 - cmin^2)
  const std::size_t n = 7;
  std::vector<double> z, v;
  for (std::size_t j = 0; j <= n; ++j) z.push_back(-1.0 + 2.0 * j / n);
  for (std::size_t j = 0; j < n; ++j) v.push_back(j % 2 ? 3.0 : 1.0);
  auto c = PiecewiseCoefficient::piecewise_constant(z, v);
  CHECK(variation(c.squared()) == Approx(6.0 * (9.0 - 1.0)));
  for (int m : {2, 4, 6}) CHECK(variation(sine_coefficient(m, 1.5)) == Approx(4.0 * m).epsilon(1e-9));
  auto lin = PiecewiseCoefficient::piecewise_linear({-1.0, 0.0, 1.0}, std::vector<double>{1.0, 4.0},
                                                    std::vector<double>{3.0, 2.0});
  CHECK(variation(lin) == Approx(2.0 + 1.0 + 2.0));
}

TEST_CASE("smooth segment sign tags are probed") {
  Breakpoints bp({-1.0, 1.0});
  std::vector<Segment> wrong{Segment::smooth([](double x) { return 2.0 + x; },
                                             [](double) { return 1.0; },
                                             SignTag::nonpositive_derivative)};
  CHECK_THROWS_AS(PiecewiseCoefficient(bp, wrong), InvariantError);
  std::vector<Segment> negative{Segment::constant(-1.0)};
  CHECK_THROWS_AS(PiecewiseCoefficient(bp, negative), InvariantError);
}

TEST_CASE("tilde transform") {
  auto inc = PiecewiseCoefficient::piecewise_linear({-1.0, 0.0, 1.0}, std::vector<double>{1.0, 2.0},
                                                    std::vector<double>{2.0, 5.0});
  auto t = tilde(inc);
  for (double x : {-0.7, -0.1, 0.3, 0.9}) CHECK(t.eval(x) == Approx(inc.eval(x)));
  auto c = layered_c();
  auto ct = tilde(c);
  for (double x : {-0.9, -0.5, 0.0, 0.5, 0.9}) CHECK(ct.eval(x) == c.eval(x));
  auto s = sine_coefficient(2, 1.0);
  auto st = tilde(s);
  // second segment [-0.75, -0.25] is decreasing from a(-0.75) = 3
  CHECK(s.segment(1).sign_tag() == SignTag::nonpositive_derivative);
  CHECK(st.eval(-0.5) == Approx(3.0));
  CHECK(st.eval(-0.3) == Approx(3.0));
}

TEST_CASE("common partition") {
  auto a = PiecewiseCoefficient::piecewise_constant({-1.0, 0.0, 1.0}, std::vector<double>{1.0, 2.0});
  auto c = PiecewiseCoefficient::piecewise_constant({-1.0, 0.5, 1.0}, std::vector<double>{1.0, 2.0});
  auto z = common_partition(a, c);
  CHECK(z == Breakpoints({-1.0, 0.0, 0.5, 1.0}));
  CHECK(common_partition(a, a) == a.breakpoints());
  auto one = PiecewiseCoefficient::constant(1.0, 1.0);
  CHECK(common_partition(one, layered_c()) == layered_c().breakpoints());
  auto wide = PiecewiseCoefficient::constant(2.0, 1.0);
  CHECK_THROWS_AS(common_partition(one, wide), InvalidArgument);
}

TEST_CASE("property: tilde never increases the variation and stays in [g_min, g_max]") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> nseg(1, 10);
  for (int draw = 0; draw < 120; ++draw) {
    auto g = draw % 2 ? testing::random_piecewise_linear(rng, 1.0, nseg(rng), 0.3, 5.0)
                      : testing::random_piecewise_constant(rng, 2.0, nseg(rng), 0.5, 10.0);
    auto t = tilde(g);
    CHECK(variation(t) <= variation(g) * (1.0 + 1e-12) + 1e-14);
    const auto& bp = g.breakpoints();
    for (std::size_t j = 0; j < g.num_segments(); ++j) {
      double prev = -1.0;
      for (int k = 0; k <= 8; ++k) {
        const double x = bp[j] + (bp[j + 1] - bp[j]) * k / 8.0;
        const double v = t.segment_value(j, x);
        CHECK(v >= g.min() * (1.0 - 1e-14));
        CHECK(v <= g.max() * (1.0 + 1e-14));
        CHECK(v >= prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("property: variation invariant under refinement") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int draw = 0; draw < 100; ++draw) {
    auto g = testing::random_piecewise_linear(rng, 1.0, 1 + draw % 8, 0.5, 4.0);
    std::vector<double> z(g.breakpoints().values().begin(), g.breakpoints().values().end());
    const std::size_t j = static_cast<std::size_t>(unit(rng) * g.num_segments());
    z.insert(z.begin() + j + 1, z[j] + (0.2 + 0.6 * unit(rng)) * (z[j + 1] - z[j]));
    auto fine = g.refined(Breakpoints(z));
    const double v = variation(g);
    CHECK(std::abs(variation(fine) - v) <= 1e-12 * v + 1e-15);
    CHECK(variation(tilde(fine)) <= variation(fine) * (1.0 + 1e-12));
  }
}

TEST_CASE("property: mirroring negates interior jumps") {
  std::mt19937_64 rng(99);
  for (int draw = 0; draw < 100; ++draw) {
    auto g = testing::random_piecewise_linear(rng, 1.5, 1 + draw % 9, 0.5, 3.0);
    auto m = g.mirrored();
    const std::size_t n = g.num_segments();
    for (std::size_t j = 1; j < n; ++j) CHECK(m.jump(n - j) == Approx(-g.jump(j)));
    CHECK(variation(m) == Approx(variation(g)));
  }
}
