// helmlab command-line driver. Talks to the library only through helmlab.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "helmlab.h"

namespace {

enum ExitCode { kOk = 0, kUserError = 1, kNumericalFailure = 2 };

struct Failure {
  hl_status status;
  std::string message;
};

void check(hl_status s) {
  if (s != HL_OK) throw Failure{s, hl_last_error()};
}

int exit_code_for(hl_status s) {
  switch (s) {
    case HL_SINGULAR:
    case HL_NOT_CONVERGED:
    case HL_INTERNAL_ERROR:
      return kNumericalFailure;
    default:
      return kUserError;
  }
}

struct ProblemDeleter {
  void operator()(hl_problem* p) const { hl_problem_free(p); }
};
struct FemDeleter {
  void operator()(hl_fem_solution* s) const { hl_fem_free(s); }
};
struct OracleDeleter {
  void operator()(hl_oracle* o) const { hl_oracle_free(o); }
};
struct TableDeleter {
  void operator()(hl_table* t) const { hl_table_free(t); }
};
using ProblemPtr = std::unique_ptr<hl_problem, ProblemDeleter>;
using TablePtr = std::unique_ptr<hl_table, TableDeleter>;

std::string take(char* text) {
  std::string s = text ? text : "";
  hl_string_free(text);
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) throw Failure{HL_IO_ERROR, "cannot write '" + path + "'"};
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Problem selection shared by the per-problem subcommands.
struct ProblemArgs {
  std::string config;
  std::vector<double> family;
  std::vector<double> g{0.0, 1.0};

  void add(CLI::App* app) {
    auto* c = app->add_option("--config", config, "problem file (see docs/formats.md)")->check(CLI::ExistingFile);
    auto* f = app->add_option("--family", family, "layered family m,r[,epsilon]")->delimiter(',')->expected(2, 3);
    c->excludes(f);
    app->add_option("--g", g, "family boundary data g_left,g_right")->delimiter(',')->expected(2);
  }

  ProblemPtr load(const std::vector<double>& fallback = {}) const {
    hl_problem* p = nullptr;
    if (!config.empty()) {
      check(hl_problem_load(config.c_str(), &p));
      return ProblemPtr(p);
    }
    const auto& spec = family.empty() ? fallback : family;
    if (spec.empty()) throw Failure{HL_INVALID_ARGUMENT, "one of --config or --family is required"};
    const double m = spec[0];
    if (m != std::floor(m)) throw Failure{HL_INVALID_ARGUMENT, "--family: m must be an integer"};
    const double eps = spec.size() > 2 ? spec[2] : 0.0;
    check(hl_problem_family(static_cast<int>(m), spec[1], eps, g[0], 0.0, g[1], 0.0, &p));
    return ProblemPtr(p);
  }
};

struct TableArgs {
  std::string method = "fem";
  int jobs = 0;
  std::string cache;
  bool paper_format = false;
  std::string output;
  std::size_t base = 800;
  int levels = 7;
  bool require_converged = false;

  void add(CLI::App* app) {
    app->add_option("--method", method, "fem or oracle")->check(CLI::IsMember({"fem", "oracle"}));
    app->add_option("--jobs", jobs, "parallel jobs (default: HELMLAB_JOBS or all cores)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--cache", cache, "append-only run cache file");
    app->add_flag("--paper-format", paper_format, "numbers as 7.742(-1)");
    app->add_option("-o,--output", output, "CSV destination (default stdout)");
    app->add_option("--base", base, "elements per layer at the coarsest level")->check(CLI::PositiveNumber);
    app->add_option("--levels", levels, "refinement levels")->check(CLI::Range(3, HL_MAX_LEVELS));
    app->add_flag("--require-converged", require_converged, "exit 2 if any cell is unconverged");
  }

  hl_table_options options() const {
    hl_table_options o;
    hl_table_defaults(&o);
    o.method = method == "oracle" ? HL_METHOD_ORACLE : HL_METHOD_FEM;
    o.jobs = jobs;
    o.base = base;
    o.levels = levels;
    o.cache_path = cache.empty() ? nullptr : cache.c_str();
    return o;
  }

  int emit(const TablePtr& table) const {
    char* csv = nullptr;
    check(hl_table_csv(table.get(), paper_format ? HL_STYLE_PAPER : HL_STYLE_PLAIN, &csv));
    write_text(output, take(csv));
    bool failed = false, unconverged = false;
    for (std::size_t i = 0; i < hl_table_size(table.get()); ++i) {
      hl_cell cell;
      check(hl_table_cell(table.get(), i, &cell));
      failed = failed || cell.status == HL_CELL_FAILED;
      unconverged = unconverged || (cell.status == HL_CELL_OK && cell.asterisk);
    }
    if (failed) {
      std::cerr << "helmlab: some cells failed\n";
      return kNumericalFailure;
    }
    if (require_converged && unconverged) {
      std::cerr << "helmlab: some cells did not converge to the requested figures\n";
      return kNumericalFailure;
    }
    return kOk;
  }
};

int run_solve(const ProblemArgs& pa, std::size_t elements, bool refine, std::size_t base, int levels,
              int sigfigs, bool condition, bool require_converged, const std::string& dump) {
  auto p = pa.load();
  std::ostringstream os;
  int code = kOk;
  std::size_t finest = elements;
  if (refine) {
    hl_refinement run;
    check(hl_refine(p.get(), base, levels, sigfigs, nullptr, &run));
    for (int i = 0; i < run.levels; ++i) {
      os << "level_" << i << " = " << number(run.values[i]) << '\n';
    }
    os << "converged = " << (run.converged ? "true" : "false") << '\n'
       << "figures = " << run.figures << '\n'
       << "reported_value = " << number(run.reported_value) << '\n'
       << "condition = " << number(run.condition) << '\n';
    if (require_converged && !run.converged) code = kNumericalFailure;
    finest = base << (levels - 1);
    if (dump.empty()) {
      std::cout << os.str();
      return code;
    }
  }
  hl_fem_solution* raw = nullptr;
  check(hl_fem_solve(p.get(), finest, condition && !refine, &raw));
  std::unique_ptr<hl_fem_solution, FemDeleter> sol(raw);
  if (!refine) {
    hl_norms n;
    check(hl_fem_norms(sol.get(), &n));
    os << "elements_per_segment = " << elements << '\n'
       << "du = " << number(n.du) << '\n'
       << "wu = " << number(n.wu) << '\n'
       << "energy = " << number(n.energy) << '\n'
       << "residual = " << number(hl_fem_residual(sol.get())) << '\n';
    if (condition) os << "condition = " << number(hl_fem_condition(sol.get())) << '\n';
  }
  std::cout << os.str();
  if (!dump.empty()) {
    char* text = nullptr;
    check(hl_fem_dump(sol.get(), &text));
    write_text(dump, take(text));
  }
  return code;
}

int run_oracle(const ProblemArgs& pa, bool extended, const std::string& dump, std::size_t points) {
  auto p = pa.load();
  hl_oracle* raw = nullptr;
  check(hl_oracle_solve(p.get(), extended, &raw));
  std::unique_ptr<hl_oracle, OracleDeleter> o(raw);
  hl_norms n;
  check(hl_oracle_norms(o.get(), &n));
  std::cout << "du = " << number(n.du) << '\n'
            << "wu = " << number(n.wu) << '\n'
            << "energy = " << number(n.energy) << '\n'
            << "residual = " << number(hl_oracle_residual(o.get())) << '\n'
            << "condition = " << number(hl_oracle_condition(o.get())) << '\n'
            << "ill_conditioned = " << (hl_oracle_ill_conditioned(o.get()) ? "true" : "false") << '\n'
            << "extended = " << (extended ? "true" : "false") << '\n';
  if (!dump.empty()) {
    char* text = nullptr;
    check(hl_oracle_dump(o.get(), points, &text));
    write_text(dump, take(text));
  }
  return kOk;
}

int run_stability(const ProblemArgs& pa) {
  auto p = pa.load();
  char* text = nullptr;
  check(hl_stability_text(p.get(), &text));
  std::cout << take(text);
  int pass = 0;
  check(hl_verify_multiplier(p.get(), &pass));
  std::cout << "multiplier_checks = " << (pass ? "pass" : "fail") << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the 1D heterogeneous Helmholtz equation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hl_version()));

  ProblemArgs solve_args, oracle_args, stability_args, quasi_args, conv_args;

  auto* solve = app.add_subcommand("solve", "P1 finite elements on a piecewise uniform mesh");
  solve_args.add(solve);
  std::size_t elements = 800, base = 800;
  int levels = 7, sigfigs = 4;
  bool refine = false, condition = false, require_converged = false;
  std::string solve_dump;
  solve->add_option("--elements", elements, "elements per coefficient segment")->check(CLI::PositiveNumber);
  solve->add_flag("--refine", refine, "run the refinement ladder base*2^i");
  solve->add_option("--base", base, "ladder base")->check(CLI::PositiveNumber);
  solve->add_option("--levels", levels, "ladder levels")->check(CLI::Range(1, HL_MAX_LEVELS));
  solve->add_option("--sigfigs", sigfigs, "figures required for convergence")->check(CLI::Range(1, 15));
  solve->add_flag("--condition", condition, "estimate the 1-norm condition number");
  solve->add_flag("--require-converged", require_converged, "exit 2 if the ladder does not converge");
  solve->add_option("--dump-solution", solve_dump, "write x Re(u) Im(u) at the (finest) mesh nodes");

  auto* oracle = app.add_subcommand("oracle", "exact solution for piecewise-constant coefficients");
  oracle_args.add(oracle);
  bool extended = false;
  std::string oracle_dump;
  std::size_t points = 2001;
  oracle->add_flag("--extended", extended, "solve the amplitude system in 50-digit arithmetic");
  oracle->add_option("--dump-solution", oracle_dump, "write x Re(u) Im(u) at equispaced points");
  oracle->add_option("--points", points, "dump resolution")->check(CLI::Range(2, 100000000));

  auto* stability = app.add_subcommand("stability", "multiplier, Q and stability constants");
  stability_args.add(stability);

  auto* bounds = app.add_subcommand("bounds", "Galerkin theory constants and resolution condition");
  hl_theory_inputs theory;
  hl_theory_defaults(&theory);
  bool certified = false;
  bounds->add_option("--a-min", theory.a_min);
  bounds->add_option("--a-max", theory.a_max);
  bounds->add_option("--c-min", theory.c_min);
  bounds->add_option("--c-max", theory.c_max);
  bounds->add_option("--omega", theory.omega);
  bounds->add_option("--omega0", theory.omega0);
  bounds->add_option("--mesh-size", theory.h, "mesh size h");
  bounds->add_option("--kappa-a", theory.kappa_a, "sup |a'/a|");
  bounds->add_option("--kappa-c", theory.kappa_c, "sup |c'/c|");
  bounds->add_option("--c-reg", theory.c_reg);
  bounds->add_option("--c-int", theory.c_int);
  bounds->add_option("--c-trace", theory.c_trace);
  bounds->add_option("--c-stab", theory.c_stab);
  bounds->add_flag("--certified", certified, "the supplied analysis constants are certified");

  const std::vector<double> default_r{0.4, 0.5, 0.6};
  const std::vector<int> default_m{2, 4, 6, 8, 10, 12};
  const std::vector<int> default_m3{6, 8, 10, 12, 14, 16, 18, 20};
  const std::vector<double> default_eps{0.0, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3};

  TableArgs t1_args, t2_args, t3_args, bc_args;
  std::vector<double> t1_r = default_r, bc_r = default_r, t3_eps = default_eps;
  std::vector<int> t1_m = default_m, t2_m = default_m, t3_m = default_m3, bc_m = default_m;

  auto* t1 = app.add_subcommand("table1", "||u'|| and condition numbers over (m, r), g = (0, 1)");
  t1->add_option("--r", t1_r, "r values")->delimiter(',');
  t1->add_option("--m", t1_m, "m values")->delimiter(',');
  t1_args.add(t1);

  auto* t2 = app.add_subcommand("table2", "||u'|| at r = 0.6 for g = (1, 1) and g = (2, 0.5)");
  t2->add_option("--m", t2_m, "m values")->delimiter(',');
  t2_args.add(t2);

  auto* t3 = app.add_subcommand("table3", "||u'|| at r = 0.5 under a perturbation of x_{m+1}");
  t3->add_option("--m", t3_m, "m values")->delimiter(',');
  t3->add_option("--eps", t3_eps, "perturbations")->delimiter(',');
  bool t3_extended = false;
  t3->add_flag("--extended", t3_extended, "attempt the cells with m >= 14, eps <= 1e-7 (50-digit oracle)");
  t3_args.add(t3);

  auto* conv = app.add_subcommand("convergence", "FEM error against the oracle and its rates");
  conv_args.add(conv);
  std::size_t conv_base = 50;
  int conv_levels = 7, rate_levels = 4;
  std::string conv_output;
  conv->add_option("--base", conv_base, "elements per segment at level 0")->check(CLI::PositiveNumber);
  conv->add_option("--levels", conv_levels, "levels")->check(CLI::Range(2, 20));
  conv->add_option("--rate-levels", rate_levels, "levels in the rate fit")->check(CLI::Range(2, 20));
  conv->add_option("-o,--output", conv_output, "CSV destination (default stdout)");

  auto* quasi = app.add_subcommand("quasiopt", "ratio of FEM error to interpolation error per level");
  quasi_args.add(quasi);
  std::size_t quasi_base = 50;
  int quasi_levels = 7;
  std::string quasi_output;
  quasi->add_option("--base", quasi_base, "elements per segment at level 0")->check(CLI::PositiveNumber);
  quasi->add_option("--levels", quasi_levels, "levels")->check(CLI::Range(1, 20));
  quasi->add_option("-o,--output", quasi_output, "CSV destination (default stdout)");

  auto* bcmp = app.add_subcommand("bounds-compare", "measured ln||u'|| against the stability bounds");
  bcmp->add_option("--r", bc_r, "r values")->delimiter(',');
  bcmp->add_option("--m", bc_m, "m values")->delimiter(',');
  bc_args.add(bcmp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUserError;
  }

  try {
    if (*solve) {
      return run_solve(solve_args, elements, refine, base, levels, sigfigs, condition, require_converged,
                       solve_dump);
    }
    if (*oracle) return run_oracle(oracle_args, extended, oracle_dump, points);
    if (*stability) return run_stability(stability_args);
    if (*bounds) {
      theory.constants_certified = certified ? 1 : 0;
      char* text = nullptr;
      check(hl_theory_text(&theory, &text));
      std::cout << take(text);
      return kOk;
    }
    if (*t1) {
      const auto o = t1_args.options();
      hl_table* raw = nullptr;
      check(hl_table1(t1_r.data(), t1_r.size(), t1_m.data(), t1_m.size(), &o, &raw));
      return t1_args.emit(TablePtr(raw));
    }
    if (*t2) {
      const auto o = t2_args.options();
      hl_table* raw = nullptr;
      check(hl_table2(t2_m.data(), t2_m.size(), &o, &raw));
      return t2_args.emit(TablePtr(raw));
    }
    if (*t3) {
      auto o = t3_args.options();
      o.extended = t3_extended ? 1 : 0;
      hl_table* raw = nullptr;
      check(hl_table3(t3_m.data(), t3_m.size(), t3_eps.data(), t3_eps.size(), &o, &raw));
      return t3_args.emit(TablePtr(raw));
    }
    if (*conv) {
      auto p = conv_args.load({2, 0.4});
      double er = 0.0, nr = 0.0;
      char* csv = nullptr;
      check(hl_convergence(p.get(), conv_base, conv_levels, rate_levels, &er, &nr, &csv));
      write_text(conv_output, take(csv));
      std::cerr << "energy_rate = " << number(er) << '\n' << "nodal_l2_rate = " << number(nr) << '\n';
      return kOk;
    }
    if (*quasi) {
      auto p = quasi_args.load({2, 0.4});
      char* csv = nullptr;
      check(hl_quasiopt(p.get(), quasi_base, quasi_levels, &csv));
      write_text(quasi_output, take(csv));
      return kOk;
    }
    if (*bcmp) {
      const auto o = bc_args.options();
      int holds = 0;
      char* csv = nullptr;
      check(hl_bound_comparison(bc_r.data(), bc_r.size(), bc_m.data(), bc_m.size(), &o, &holds, &csv));
      write_text(bc_args.output, take(csv));
      if (!holds) {
        std::cerr << "helmlab: a converged cell exceeds its bound\n";
        return kNumericalFailure;
      }
      return kOk;
    }
  } catch (const Failure& f) {
    std::cerr << "helmlab: " << hl_status_name(f.status) << ": " << f.message << '\n';
    return exit_code_for(f.status);
  }
  return kUserError;
}
