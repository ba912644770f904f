// Acceptance checks. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines, and exits nonzero if any criterion fails.

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "helmlab/error.hpp"
#include "helmlab/experiments.hpp"
#include "helmlab/fem.hpp"
#include "helmlab/oracle.hpp"
#include "helmlab/stability.hpp"
#include "helmlab/theory_bounds.hpp"

using namespace helmlab;

namespace {

struct Report {
  bool ok = true;
  std::vector<std::string> details;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      details.push_back("violated: " + what);
    }
  }
  void note(const std::string& what) { details.push_back(what); }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Report&)>& body) {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.ok = false;
    r.details.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %2d %s (%.1fs)\n", r.ok ? "PASS" : "FAIL", id, title.c_str(), secs);
  for (const auto& d : r.details) std::printf("       %s\n", d.c_str());
  std::fflush(stdout);
  if (!r.ok) ++failures;
}

// Published Table 1: value, figures shown, asterisk, condition number.
struct Published {
  double value;
  int figures;
  bool asterisk;
  double kappa;
};

const std::vector<double> kR{0.4, 0.5, 0.6};
const std::vector<int> kM{2, 4, 6, 8, 10, 12};
const Published kTable1[3][6] = {
    {{0.7742, 4, false, 5.46e10},
     {1.313, 4, false, 3.46e11},
     {2.538, 4, false, 1.98e12},
     {5.180, 4, false, 1.10e13},
     {10.88, 4, false, 6.06e13},
     {23.29, 4, false, 3.31e14}},
    {{0.8498, 4, false, 8.21e10},
     {1.845, 4, false, 8.22e11},
     {4.588, 4, false, 7.63e12},
     {12.03, 4, false, 6.94e13},
     {32.47, 4, false, 6.26e14},
     {89.0, 2, true, 5.64e15}},
    {{0.9642, 4, false, 1.34e11},
     {2.789, 4, false, 2.31e12},
     {9.238, 4, false, 3.75e13},
     {32.25, 4, false, 6.03e14},
     {116.0, 3, true, 9.63e15},
     {420.0, 2, true, 1.44e17}},
};

// Shared between criteria 1, 2 and 5.
std::vector<TableCell> fem_table1, oracle_table1;

TableOptions options(Method method) {
  TableOptions o;
  o.method = method;
  return o;
}

void criterion1(Report& r) {
  const auto t0 = std::chrono::steady_clock::now();
  oracle_table1 = table1(kR, kM, options(Method::oracle));
  const double oracle_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fem_table1 = table1(kR, kM, options(Method::fem));
  r.expect(oracle_secs < 1.0, fmt("oracle Table 1 in under 1 s (took %.3f s)", oracle_secs));
  for (std::size_t j = 0; j < kR.size(); ++j) {
    for (std::size_t i = 0; i < kM.size(); ++i) {
      const Published& p = kTable1[j][i];
      const TableCell& fem = fem_table1[j * kM.size() + i];
      const TableCell& ora = oracle_table1[j * kM.size() + i];
      const std::string id = fmt("(m=%d, r=%.1f)", kM[i], kR[j]);
      r.expect(fem.status == CellStatus::ok && ora.status == CellStatus::ok, id + " solved");
      r.expect(agree_to_sigfigs(ora.value, p.value, p.figures),
               fmt("%s oracle %.6g matches %.4g to %d figures", id.c_str(), ora.value, p.value, p.figures));
      if (kM[i] <= 8) {
        r.expect(!fem.asterisk, id + " FEM ladder converged");
        r.expect(agree_to_sigfigs(fem.value, p.value, 4),
                 fmt("%s FEM %.6g matches %.4g to 4 figures", id.c_str(), fem.value, p.value));
      } else {
        r.expect(fem.asterisk == p.asterisk, fmt("%s FEM asterisk %s as published", id.c_str(),
                                                 fem.asterisk ? "set" : "clear"));
        if (!p.asterisk) {
          r.expect(agree_to_sigfigs(fem.value, p.value, 4),
                   fmt("%s FEM %.6g matches %.4g to 4 figures", id.c_str(), fem.value, p.value));
        } else {
          r.note(fmt("%s FEM unconverged (%d stable figures): finest %.4g, published %.2g*, oracle %.5g",
                     id.c_str(), fem.figures, fem.value, p.value, ora.value));
        }
      }
    }
  }
  r.note(fmt("oracle %.3f s; FEM ladder 800*2^i, i = 0..6, 18 cells", oracle_secs));
}

void criterion2(Report& r) {
  const double published[] = {0.34, 0.46, 0.61};
  for (std::size_t j = 0; j < kR.size(); ++j) {
    auto column = [&](const std::vector<TableCell>& cells) {
      return std::vector<TableCell>(cells.begin() + j * kM.size(), cells.begin() + (j + 1) * kM.size());
    };
    const SlopeReport ora = column_slope(column(oracle_table1));
    const SlopeReport fem = column_slope(column(fem_table1));
    r.expect(std::abs(ora.all - published[j]) <= 0.02,
             fmt("r=%.1f oracle slope %.4f within 0.02 of %.2f", kR[j], ora.all, published[j]));
    r.expect(std::abs(fem.all - published[j]) <= 0.02,
             fmt("r=%.1f FEM slope (all cells) %.4f within 0.02 of %.2f", kR[j], fem.all, published[j]));
    r.note(fmt("r=%.1f slopes: oracle %.4f, FEM all %.4f, FEM converged-only %.4f (%zu cells)", kR[j], ora.all,
               fem.all, fem.converged_only, fem.points_converged));
  }
}

void criterion3(Report& r) {
  const std::vector<int> ms{2, 4, 6, 8};
  const double published[4][2] = {{0.4677, 1.520}, {0.3480, 4.198}, {0.2887, 13.86}, {0.2520, 48.38}};
  const auto fem = table2(ms, options(Method::fem));
  const auto ora = table2(ms, options(Method::oracle));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (int k = 0; k < 2; ++k) {
      const auto& f = fem[2 * i + k];
      const auto& o = ora[2 * i + k];
      const std::string id = fmt("(m=%d, g=%s)", ms[i], k == 0 ? "1,1" : "2,0.5");
      r.expect(!f.asterisk && f.status == CellStatus::ok, id + " FEM ladder converged");
      r.expect(agree_to_sigfigs(f.value, published[i][k], 4),
               fmt("%s FEM %.6g matches %.4g", id.c_str(), f.value, published[i][k]));
      r.expect(agree_to_sigfigs(o.value, published[i][k], 4),
               fmt("%s oracle %.6g matches %.4g", id.c_str(), o.value, published[i][k]));
    }
  }
}

void criterion4(Report& r) {
  struct Spot {
    int m;
    double eps;
    double value;
    int figures;
  };
  const Spot spots[] = {{6, 1e-3, 0.7256, 4}, {8, 1e-5, 9.49, 3}, {20, 1e-6, 0.1466, 4}};
  for (const auto& s : spots) {
    const auto fem = table3({s.m}, {s.eps}, options(Method::fem))[0];
    const auto ora = table3({s.m}, {s.eps}, options(Method::oracle))[0];
    const std::string id = fmt("(m=%d, eps=%.0e)", s.m, s.eps);
    r.expect(agree_to_sigfigs(ora.value, s.value, s.figures),
             fmt("%s oracle %.6g matches %.4g to %d figures", id.c_str(), ora.value, s.value, s.figures));
    // An unconverged ladder is only held to the figures it kept stable.
    const int fem_figures = fem.asterisk ? std::min(fem.figures, s.figures) : s.figures;
    r.expect(agree_to_sigfigs(fem.value, s.value, fem_figures),
             fmt("%s FEM %.6g matches %.4g to %d figures", id.c_str(), fem.value, s.value, fem_figures));
    if (fem_figures < s.figures) {
      r.note(fmt("%s FEM ladder unconverged (%d stable figures, finest %.5g); oracle %.6g", id.c_str(),
                 fem.figures, fem.value, ora.value));
    }
  }
  const std::vector<int> ms{6, 8, 10, 12, 14, 16, 18, 20};
  const std::vector<double> eps{0.0, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
  const auto grid = table3(ms, eps, options(Method::oracle));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    double previous = INFINITY, first = NAN, last = NAN;
    bool monotone = true;
    for (std::size_t j = 0; j < eps.size(); ++j) {
      const auto& c = grid[i * eps.size() + j];
      if (c.status != CellStatus::ok) continue;
      if (std::isnan(first)) first = c.value;
      monotone = monotone && c.value <= previous * (1 + 1e-9);
      previous = last = c.value;
    }
    r.expect(monotone, fmt("m=%d row non-increasing in epsilon", ms[i]));
    if (ms[i] >= 8 && ms[i] <= 12) {
      r.expect(last < first / 10.0, fmt("m=%d collapses from %.4g to %.4g", ms[i], first, last));
    }
  }
}

void criterion5(Report& r) {
  for (std::size_t j = 0; j < kR.size(); ++j) {
    for (std::size_t i = 0; i < kM.size(); ++i) {
      if (kM[i] > 8) continue;
      const double ours = fem_table1[j * kM.size() + i].condition;
      const double theirs = kTable1[j][i].kappa;
      const double ratio = ours / theirs;
      r.expect(ratio > 0.1 && ratio < 10.0,
               fmt("(m=%d, r=%.1f) kappa %.3g vs %.3g (ratio %.3f)", kM[i], kR[j], ours, theirs, ratio));
    }
  }
  double worst = 1.0;
  for (std::size_t j = 0; j < kR.size(); ++j) {
    for (std::size_t i = 0; i < 4; ++i) {
      const double ratio = fem_table1[j * kM.size() + i].condition / kTable1[j][i].kappa;
      worst = std::max(worst, std::max(ratio, 1.0 / ratio));
    }
  }
  r.note(fmt("largest deviation factor over m <= 8: %.3f", worst));
}

struct Draw {
  PiecewiseCoefficient a, c;
  BoundaryConfig bc;
  double omega;
  Complex gl, gr;
};

std::vector<Draw> draws() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> segs(1, 11);
  std::uniform_int_distribution<int> bcs(0, 2);
  std::uniform_real_distribution<double> om(1.0, 50.0), half(0.5, 2.0), gd(-2.0, 2.0);
  std::vector<Draw> out;
  for (int k = 0; k < 100; ++k) {
    const double L = half(rng);
    auto a = testing::random_piecewise_constant(rng, L, segs(rng), 0.5, 10.0);
    auto c = testing::random_piecewise_constant(rng, L, segs(rng), 0.5, 10.0);
    const auto bc = static_cast<BoundaryConfig>(bcs(rng));
    const double omega = om(rng);
    const Complex gl{gd(rng), gd(rng)}, gr{gd(rng), gd(rng)};
    out.push_back({a, c, bc, omega, gl, gr});
  }
  return out;
}

void criterion6(Report& r) {
  std::size_t violations = 0;
  double worst = 0.0;
  for (const auto& d : draws()) {
    const HelmholtzProblem p(d.a, d.c, d.omega, d.bc, d.gl, d.gr);
    const StabilityReport rep = stability_report(p.a, p.c, p.bc);
    const double bound = apriori_rhs(rep, 0.0, p.boundary_data_norm());
    const double energy = exact_norms(solve_analytic(p)).energy;
    worst = std::max(worst, energy / bound);
    if (!(energy <= bound)) ++violations;
  }
  r.expect(violations == 0, fmt("%zu of 100 draws exceed C_II sqrt(Q_exact) ||g||", violations));
  r.note(fmt("largest ||u||_H / bound = %.3g", worst));
}

void criterion7(Report& r) {
  std::size_t q_fail = 0, order_fail = 0, tilde_fail = 0, tech_fail = 0;
  for (const auto& d : draws()) {
    const HelmholtzProblem p(d.a, d.c, d.omega, d.bc, d.gl, d.gr);
    const MultiplierQ q = build_q(p.a, p.c);
    if (!verify_q_properties(q, p.a, p.c).pass) ++q_fail;
    const StabilityReport rep = stability_report(p.a, p.c, p.bc);
    if (!(rep.Q_bound.overflow || rep.Q_exact <= rep.Q_bound.value * (1 + 1e-12))) ++order_fail;
    if (!(rep.Q_exact <= rep.product_bound.value * (1 + 1e-12))) ++order_fail;
    for (const auto* g : {&d.a, &d.c}) {
      if (!(variation(tilde(*g)) <= variation(*g) * (1 + 1e-12) + 1e-12)) ++tilde_fail;
    }
    if (!tech_product_check(d.a).holds || !tech_product_check(d.c.squared()).holds) ++tech_fail;
  }
  r.expect(q_fail == 0, fmt("%zu draws fail the multiplier checks", q_fail));
  r.expect(order_fail == 0, fmt("%zu draws have Q_exact above a bound", order_fail));
  r.expect(tilde_fail == 0, fmt("%zu coefficients have Var(tilde) > Var", tilde_fail));
  r.expect(tech_fail == 0, fmt("%zu draws fail the jump product inequality", tech_fail));
}

void criterion8(Report& r) {
  const HelmholtzProblem p = family({2, 0.4});
  const auto rows = quasiopt_probe(p, 50, 7);
  const double energy_rate = convergence_rate(rows, true, 4);
  const double nodal_rate = convergence_rate(rows, false, 4);
  r.expect(std::abs(energy_rate - 1.0) <= 0.1, fmt("energy-norm rate %.4f within 0.1 of 1", energy_rate));
  r.expect(std::abs(nodal_rate - 2.0) <= 0.15, fmt("nodal L2 rate %.4f within 0.15 of 2", nodal_rate));
  r.note("ladder 50*2^i elements per layer, i = 0..6; rates over i = 3..6");

  const Mesh1D mesh = build_mesh(p, 800u << 6);
  const SolutionNorms n = solve_fem(p, mesh).norms;
  const double gap = std::abs(n.du - n.wu) / n.du;
  r.expect(gap < 1e-4, fmt("finest-level |(||u'|| - ||(omega/c)u||)| / ||u'|| = %.2e < 1e-4", gap));
}

void criterion9(Report& r) {
  const FemTheoryInputs unit;
  const FemTheoryReport rep = resolution_and_quasiopt(unit);
  auto exact = [&](double got, double want, const char* name) {
    r.expect(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)),
             fmt("%s = %.17g, expected %.17g", name, got, want));
  };
  exact(rep.C_ac, 4.0, "C_ac");
  exact(rep.C0, 2.0, "C0");
  exact(rep.C0_prime, 2.0, "C0'");
  exact(rep.K, 4.0, "K");
  exact(rep.sigma_star_bound, 4.0 * 1.01 * 2.0 * 0.01, "sigma* bound");
  const FemTheoryReport boundary = resolution_and_quasiopt(4.0, 0.125);
  r.expect(boundary.resolution_ok, "C_ac = 4, sigma* = 1/8 satisfies the resolution condition");
  exact(boundary.quasi_opt_H, 8.0, "boundary quasi_opt_H");

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.5, 5.0), spread(1.0, 10.0), w(1.0, 100.0);
  std::size_t breaks = 0;
  for (int k = 0; k < 200; ++k) {
    FemTheoryInputs in;
    in.a_min = u(rng);
    in.a_max = in.a_min * spread(rng);
    in.c_min = u(rng);
    in.c_max = in.c_min * spread(rng);
    in.omega = w(rng);
    in.omega0 = std::min(in.omega, w(rng));
    in.kappa_a = u(rng) - 0.5;
    in.kappa_c = u(rng) - 0.5;
    double prev = 0.0;
    for (double h = 1e-4; h <= 0.5; h *= 1.7) {
      in.h = h;
      const double s = sigma_star_bound(in);
      if (s < prev) ++breaks;
      prev = s;
    }
  }
  r.expect(breaks == 0, fmt("%zu decreases of sigma* bound along increasing h", breaks));
}

void criterion10(Report& r) {
  const FemTheoryReport rep = resolution_and_quasiopt(FemTheoryInputs{});
  r.expect(!rep.constants_certified, "uncertified constants are reported as such");
  const std::string text = to_key_value(FemTheoryInputs{}, rep);
  r.expect(text.find("constants_certified = false") != std::string::npos, "report text flags placeholders");
  r.note("C_stab, C_reg, C_int, C_trace are user-supplied placeholders; acceptance rests on criterion 9");
}

}  // namespace

int main() {
  run(1, "Table 1 reproduction (FEM ladder and oracle)", criterion1);
  run(2, "slope fits per r column", criterion2);
  run(3, "Table 2 reproduction at r = 0.6", criterion3);
  run(4, "Table 3 spot cells and collapse under perturbation", criterion4);
  run(5, "finest-grid condition numbers within a factor of 10", criterion5);
  run(6, "stability bound over 100 random layered media", criterion6);
  run(7, "multiplier properties and bound ordering", criterion7);
  run(8, "FEM convergence to the oracle and energy identity", criterion8);
  run(9, "theory-bounds closed forms and monotonicity in h", criterion9);
  run(10, "abstract analysis constants handled as placeholders", criterion10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
