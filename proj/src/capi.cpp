#include "helmlab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "helmlab/config.hpp"
#include "helmlab/error.hpp"
#include "helmlab/experiments.hpp"
#include "helmlab/fem.hpp"
#include "helmlab/oracle.hpp"
#include "helmlab/stability.hpp"
#include "helmlab/theory_bounds.hpp"

using namespace helmlab;

struct hl_problem {
  HelmholtzProblem problem;
  /// Run-cache key; empty for problems read from config text.
  std::string key;
};

struct hl_fem_solution {
  Mesh1D mesh;
  FemSolution solution;
};

struct hl_oracle {
  WaveAmplitudes amps;
};

struct hl_table {
  enum class Kind { t1, t2, t3 } kind;
  std::vector<double> r_values;
  std::vector<int> m_values;
  std::vector<double> eps_values;
  std::vector<TableCell> cells;
};

namespace {

thread_local std::string last_error;

hl_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return HL_INVALID_ARGUMENT;
    case ErrorKind::domain: return HL_DOMAIN_ERROR;
    case ErrorKind::invariant: return HL_INVARIANT_VIOLATION;
    case ErrorKind::unsupported: return HL_UNSUPPORTED;
    case ErrorKind::singular: return HL_SINGULAR;
    case ErrorKind::not_converged: return HL_NOT_CONVERGED;
    case ErrorKind::io: return HL_IO_ERROR;
    case ErrorKind::parse: return HL_PARSE_ERROR;
  }
  return HL_INTERNAL_ERROR;
}

template <class Fn>
hl_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return HL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HL_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HL_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return HL_INTERNAL_ERROR;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hl_boundary from_bc(BoundaryConfig bc) {
  switch (bc) {
    case BoundaryConfig::pure_impedance: return HL_PURE_IMPEDANCE;
    case BoundaryConfig::dirichlet_impedance: return HL_DIRICHLET_IMPEDANCE;
    case BoundaryConfig::impedance_dirichlet: return HL_IMPEDANCE_DIRICHLET;
  }
  return HL_PURE_IMPEDANCE;
}

FemTheoryInputs to_inputs(const hl_theory_inputs& in) {
  FemTheoryInputs t;
  t.a_min = in.a_min;
  t.a_max = in.a_max;
  t.c_min = in.c_min;
  t.c_max = in.c_max;
  t.omega = in.omega;
  t.omega0 = in.omega0;
  t.h = in.h;
  t.kappa_a = in.kappa_a;
  t.kappa_c = in.kappa_c;
  t.C_reg = in.c_reg;
  t.C_int = in.c_int;
  t.C_trace = in.c_trace;
  t.C_stab = in.c_stab;
  t.constants_certified = in.constants_certified != 0;
  return t;
}

NumberStyle to_style(hl_number_style style) {
  return style == HL_STYLE_PAPER ? NumberStyle::paper : NumberStyle::plain;
}

struct TableSetup {
  TableOptions options;
  std::unique_ptr<RunCache> cache;
};

TableSetup table_setup(const hl_table_options* in) {
  hl_table_options o;
  hl_table_defaults(&o);
  if (in) o = *in;
  if (o.method != HL_METHOD_FEM && o.method != HL_METHOD_ORACLE) throw InvalidArgument("unknown method");
  if (o.jobs < 0) throw InvalidArgument("jobs must be nonnegative");
  if (o.base == 0 || o.levels < 1 || o.levels > HL_MAX_LEVELS || o.sigfigs < 1) {
    throw InvalidArgument("refinement parameters out of range");
  }
  TableSetup s;
  s.options.method = o.method == HL_METHOD_FEM ? Method::fem : Method::oracle;
  s.options.jobs = o.jobs;
  s.options.extended = o.extended != 0;
  s.options.refinement.base = o.base;
  s.options.refinement.levels = o.levels;
  s.options.refinement.sigfigs = o.sigfigs;
  if (o.cache_path && *o.cache_path) {
    s.cache = std::make_unique<RunCache>(o.cache_path);
    s.options.cache = s.cache.get();
  }
  return s;
}

template <class T>
std::vector<T> span_of(const T* data, std::size_t n, const char* what) {
  if (n > 0) require(data, what);
  return std::vector<T>(data, data + n);
}

}  // namespace

extern "C" {

const char* hl_last_error(void) { return last_error.c_str(); }

const char* hl_status_name(hl_status status) {
  switch (status) {
    case HL_OK: return "ok";
    case HL_INVALID_ARGUMENT: return "invalid argument";
    case HL_DOMAIN_ERROR: return "domain error";
    case HL_INVARIANT_VIOLATION: return "invariant violation";
    case HL_UNSUPPORTED: return "unsupported problem";
    case HL_SINGULAR: return "singular system";
    case HL_NOT_CONVERGED: return "not converged";
    case HL_IO_ERROR: return "i/o error";
    case HL_PARSE_ERROR: return "parse error";
    case HL_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* hl_version(void) { return "0.1.0"; }

void hl_string_free(char* text) { std::free(text); }

hl_status hl_problem_load(const char* path, hl_problem** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new hl_problem{load_problem(path), {}};
  });
}

hl_status hl_problem_parse(const char* text, hl_problem** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new hl_problem{parse_problem_text(text), {}};
  });
}

hl_status hl_problem_family(int m, double r, double epsilon, double g_left_re, double g_left_im,
                            double g_right_re, double g_right_im, hl_problem** out) {
  return guarded([&] {
    require(out, "out");
    UnstableFamilySpec spec{m, r, epsilon, {g_left_re, g_left_im}, {g_right_re, g_right_im}};
    *out = new hl_problem{family(spec), spec.key()};
  });
}

void hl_problem_free(hl_problem* problem) { delete problem; }

hl_status hl_problem_omega(const hl_problem* problem, double* omega) {
  return guarded([&] {
    require(problem, "problem");
    require(omega, "omega");
    *omega = problem->problem.omega;
  });
}

hl_status hl_problem_num_segments(const hl_problem* problem, size_t* count) {
  return guarded([&] {
    require(problem, "problem");
    require(count, "count");
    *count = problem->problem.a.num_segments();
  });
}

hl_status hl_problem_boundary(const hl_problem* problem, hl_boundary* bc) {
  return guarded([&] {
    require(problem, "problem");
    require(bc, "bc");
    *bc = from_bc(problem->problem.bc);
  });
}

hl_status hl_stability_report(const hl_problem* problem, hl_stability* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    const auto& p = problem->problem;
    const StabilityReport r = stability_report(p.a, p.c, p.bc);
    out->q_exact = r.Q_exact;
    out->q_bound = r.Q_bound.overflow ? std::numeric_limits<double>::infinity() : r.Q_bound.value;
    out->q_bound_log = r.Q_bound.log_value;
    out->product_bound =
        r.product_bound.overflow ? std::numeric_limits<double>::infinity() : r.product_bound.value;
    out->product_bound_log = r.product_bound.log_value;
    out->c_one = r.C_I;
    out->c_two = r.C_II;
    out->var_a = r.var_a;
    out->var_c2 = r.var_c2;
    out->f_norm = source_l2_norm(p);
    out->g_norm = p.boundary_data_norm();
    out->apriori_rhs = apriori_rhs(r, out->f_norm, out->g_norm);
  });
}

hl_status hl_stability_text(const hl_problem* problem, char** text) {
  return guarded([&] {
    require(problem, "problem");
    require(text, "text");
    const auto& p = problem->problem;
    const StabilityReport r = stability_report(p.a, p.c, p.bc);
    std::string s = to_key_value(r);
    const double f_norm = source_l2_norm(p), g_norm = p.boundary_data_norm();
    char buf[160];
    std::snprintf(buf, sizeof buf, "f_norm = %.17g\ng_norm = %.17g\napriori_rhs = %.17g\n", f_norm, g_norm,
                  apriori_rhs(r, f_norm, g_norm));
    *text = copy_string(s + buf);
  });
}

hl_status hl_verify_multiplier(const hl_problem* problem, int* pass) {
  return guarded([&] {
    require(problem, "problem");
    require(pass, "pass");
    const auto& p = problem->problem;
    *pass = verify_q_properties(build_q(p.a, p.c), p.a, p.c).pass ? 1 : 0;
  });
}

void hl_theory_defaults(hl_theory_inputs* in) {
  if (!in) return;
  const FemTheoryInputs d;
  in->a_min = d.a_min;
  in->a_max = d.a_max;
  in->c_min = d.c_min;
  in->c_max = d.c_max;
  in->omega = d.omega;
  in->omega0 = d.omega0;
  in->h = d.h;
  in->kappa_a = d.kappa_a;
  in->kappa_c = d.kappa_c;
  in->c_reg = d.C_reg;
  in->c_int = d.C_int;
  in->c_trace = d.C_trace;
  in->c_stab = d.C_stab;
  in->constants_certified = d.constants_certified ? 1 : 0;
}

hl_status hl_theory_bounds(const hl_theory_inputs* in, hl_theory_report* out) {
  return guarded([&] {
    require(in, "inputs");
    require(out, "out");
    const FemTheoryReport r = resolution_and_quasiopt(to_inputs(*in));
    out->c_ac = r.C_ac;
    out->beta_max = r.beta_max;
    out->c0 = r.C0;
    out->c0_prime = r.C0_prime;
    out->k = r.K;
    out->sigma_star_bound = r.sigma_star_bound;
    out->resolution_ok = r.resolution_ok ? 1 : 0;
    out->quasi_opt_h = r.quasi_opt_H;
    out->quasi_opt_l2 = r.quasi_opt_L2;
    out->constants_certified = r.constants_certified ? 1 : 0;
  });
}

hl_status hl_theory_text(const hl_theory_inputs* in, char** text) {
  return guarded([&] {
    require(in, "inputs");
    require(text, "text");
    const FemTheoryInputs t = to_inputs(*in);
    *text = copy_string(to_key_value(t, resolution_and_quasiopt(t)));
  });
}

hl_status hl_fem_solve(const hl_problem* problem, size_t elements_per_segment, int estimate_condition,
                       hl_fem_solution** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    auto s = std::make_unique<hl_fem_solution>();
    s->mesh = build_mesh(problem->problem, elements_per_segment);
    s->solution = solve_fem(problem->problem, s->mesh, {estimate_condition != 0});
    *out = s.release();
  });
}

void hl_fem_free(hl_fem_solution* solution) { delete solution; }

size_t hl_fem_num_nodes(const hl_fem_solution* solution) {
  return solution ? solution->mesh.num_nodes() : 0;
}

hl_status hl_fem_values(const hl_fem_solution* solution, double* x, double* re, double* im) {
  return guarded([&] {
    require(solution, "solution");
    const auto& v = solution->solution.values;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (x) x[i] = solution->mesh.nodes[i];
      if (re) re[i] = v[i].real();
      if (im) im[i] = v[i].imag();
    }
  });
}

hl_status hl_fem_norms(const hl_fem_solution* solution, hl_norms* out) {
  return guarded([&] {
    require(solution, "solution");
    require(out, "out");
    const auto& n = solution->solution.norms;
    *out = {n.du, n.wu, n.energy};
  });
}

double hl_fem_residual(const hl_fem_solution* solution) {
  return solution ? solution->solution.residual : std::numeric_limits<double>::quiet_NaN();
}

double hl_fem_condition(const hl_fem_solution* solution) {
  return solution ? solution->solution.condition : std::numeric_limits<double>::quiet_NaN();
}

hl_status hl_fem_dump(const hl_fem_solution* solution, char** text) {
  return guarded([&] {
    require(solution, "solution");
    require(text, "text");
    *text = copy_string(dump_solution(solution->mesh.nodes, solution->solution.values));
  });
}

hl_status hl_refine(const hl_problem* problem, size_t base, int levels, int sigfigs, const char* cache_path,
                    hl_refinement* out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    if (levels < 1 || levels > HL_MAX_LEVELS) throw InvalidArgument("levels must lie in 1 .. 16");
    RefinementOptions opts;
    opts.base = base;
    opts.levels = levels;
    opts.sigfigs = sigfigs;
    std::unique_ptr<RunCache> cache;
    if (cache_path && *cache_path) cache = std::make_unique<RunCache>(cache_path);
    const RefinementRun run = refine_to_convergence(problem->problem, opts, cache.get(), problem->key);
    *out = hl_refinement{};
    out->levels = static_cast<int>(run.values.size());
    for (std::size_t i = 0; i < run.values.size(); ++i) {
      out->values[i] = run.values[i];
      out->residuals[i] = run.residuals[i];
    }
    out->converged = run.converged ? 1 : 0;
    out->failed = run.failed ? 1 : 0;
    out->figures = run.figures;
    out->finest = run.finest;
    out->reported_value = run.reported_value;
    out->condition = run.condition;
    if (run.failed) throw SingularSystem(run.diagnostics);
  });
}

hl_status hl_oracle_solve(const hl_problem* problem, int extended, hl_oracle** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "out");
    *out = new hl_oracle{solve_analytic(problem->problem, {extended != 0, true})};
  });
}

void hl_oracle_free(hl_oracle* oracle) { delete oracle; }

hl_status hl_oracle_norms(const hl_oracle* oracle, hl_norms* out) {
  return guarded([&] {
    require(oracle, "oracle");
    require(out, "out");
    const SolutionNorms n = exact_norms(oracle->amps);
    *out = {n.du, n.wu, n.energy};
  });
}

hl_status hl_oracle_eval(const hl_oracle* oracle, double x, double* re, double* im) {
  return guarded([&] {
    require(oracle, "oracle");
    const Complex u = eval(oracle->amps, x);
    if (re) *re = u.real();
    if (im) *im = u.imag();
  });
}

double hl_oracle_residual(const hl_oracle* oracle) {
  return oracle ? oracle->amps.residual : std::numeric_limits<double>::quiet_NaN();
}

double hl_oracle_condition(const hl_oracle* oracle) {
  return oracle ? oracle->amps.condition : std::numeric_limits<double>::quiet_NaN();
}

int hl_oracle_ill_conditioned(const hl_oracle* oracle) { return oracle && oracle->amps.ill_conditioned ? 1 : 0; }

hl_status hl_oracle_dump(const hl_oracle* oracle, size_t points, char** text) {
  return guarded([&] {
    require(oracle, "oracle");
    require(text, "text");
    if (points < 2) throw InvalidArgument("points must be at least 2");
    const double lo = oracle->amps.z.front(), hi = oracle->amps.z.back();
    std::vector<double> x(points);
    std::vector<Complex> u(points);
    for (std::size_t i = 0; i < points; ++i) {
      x[i] = i + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
      u[i] = eval(oracle->amps, x[i]);
    }
    *text = copy_string(dump_solution(x, u));
  });
}

void hl_table_defaults(hl_table_options* options) {
  if (!options) return;
  const RefinementOptions r;
  options->method = HL_METHOD_FEM;
  options->jobs = 0;
  options->extended = 0;
  options->base = r.base;
  options->levels = r.levels;
  options->sigfigs = r.sigfigs;
  options->cache_path = nullptr;
}

hl_status hl_table1(const double* r_values, size_t num_r, const int* m_values, size_t num_m,
                    const hl_table_options* options, hl_table** out) {
  return guarded([&] {
    require(out, "out");
    auto t = std::make_unique<hl_table>();
    t->kind = hl_table::Kind::t1;
    t->r_values = span_of(r_values, num_r, "r_values");
    t->m_values = span_of(m_values, num_m, "m_values");
    auto setup = table_setup(options);
    t->cells = table1(t->r_values, t->m_values, setup.options);
    *out = t.release();
  });
}

hl_status hl_table2(const int* m_values, size_t num_m, const hl_table_options* options, hl_table** out) {
  return guarded([&] {
    require(out, "out");
    auto t = std::make_unique<hl_table>();
    t->kind = hl_table::Kind::t2;
    t->m_values = span_of(m_values, num_m, "m_values");
    auto setup = table_setup(options);
    t->cells = table2(t->m_values, setup.options);
    *out = t.release();
  });
}

hl_status hl_table3(const int* m_values, size_t num_m, const double* eps_values, size_t num_eps,
                    const hl_table_options* options, hl_table** out) {
  return guarded([&] {
    require(out, "out");
    auto t = std::make_unique<hl_table>();
    t->kind = hl_table::Kind::t3;
    t->m_values = span_of(m_values, num_m, "m_values");
    t->eps_values = span_of(eps_values, num_eps, "eps_values");
    auto setup = table_setup(options);
    t->cells = table3(t->m_values, t->eps_values, setup.options);
    *out = t.release();
  });
}

void hl_table_free(hl_table* table) { delete table; }

size_t hl_table_size(const hl_table* table) { return table ? table->cells.size() : 0; }

hl_status hl_table_cell(const hl_table* table, size_t index, hl_cell* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    if (index >= table->cells.size()) throw DomainError("cell index out of range");
    const TableCell& c = table->cells[index];
    out->m = c.m;
    out->r = c.r;
    out->epsilon = c.epsilon;
    out->g_left_re = c.g_left.real();
    out->g_left_im = c.g_left.imag();
    out->g_right_re = c.g_right.real();
    out->g_right_im = c.g_right.imag();
    out->value = c.value;
    out->asterisk = c.asterisk ? 1 : 0;
    out->figures = c.figures;
    out->condition = c.condition;
    out->status = c.status == CellStatus::ok       ? HL_CELL_OK
                  : c.status == CellStatus::failed ? HL_CELL_FAILED
                                                   : HL_CELL_NOT_ATTEMPTED;
    out->beyond_paper = c.beyond_paper ? 1 : 0;
  });
}

hl_status hl_table_csv(const hl_table* table, hl_number_style style, char** csv) {
  return guarded([&] {
    require(table, "table");
    require(csv, "csv");
    const NumberStyle s = to_style(style);
    switch (table->kind) {
      case hl_table::Kind::t1: *csv = copy_string(table1_csv(table->cells, table->r_values, table->m_values, s)); break;
      case hl_table::Kind::t2: *csv = copy_string(table2_csv(table->cells, table->m_values, s)); break;
      case hl_table::Kind::t3:
        *csv = copy_string(table3_csv(table->cells, table->m_values, table->eps_values, s));
        break;
    }
  });
}

hl_status hl_table_slope(const hl_table* table, size_t first, size_t count, int converged_only, double* slope) {
  return guarded([&] {
    require(table, "table");
    require(slope, "slope");
    if (first > table->cells.size() || count > table->cells.size() - first) {
      throw DomainError("cell range out of range");
    }
    std::vector<TableCell> column(table->cells.begin() + first, table->cells.begin() + first + count);
    const SlopeReport rep = column_slope(column);
    if (converged_only && !rep.converged_fit_available) {
      throw InvalidArgument("slope_fit: fewer than two converged cells");
    }
    *slope = converged_only ? rep.converged_only : rep.all;
  });
}

hl_status hl_slope_fit(const double* m_values, const double* values, size_t count, double* slope) {
  return guarded([&] {
    require(slope, "slope");
    *slope = slope_fit(span_of(m_values, count, "m_values"), span_of(values, count, "values"));
  });
}

hl_status hl_bound_comparison(const double* r_values, size_t num_r, const int* m_values, size_t num_m,
                              const hl_table_options* options, int* all_hold, char** csv) {
  return guarded([&] {
    auto setup = table_setup(options);
    const auto rows = bound_comparison(span_of(r_values, num_r, "r_values"), span_of(m_values, num_m, "m_values"),
                                       setup.options);
    bool holds = true;
    for (const auto& row : rows) holds = holds && (row.holds || !row.converged);
    if (all_hold) *all_hold = holds ? 1 : 0;
    if (csv) *csv = copy_string(bound_comparison_csv(rows));
  });
}

hl_status hl_quasiopt(const hl_problem* problem, size_t base, int levels, char** csv) {
  return guarded([&] {
    require(problem, "problem");
    require(csv, "csv");
    *csv = copy_string(quasiopt_csv(quasiopt_probe(problem->problem, base, levels)));
  });
}

hl_status hl_convergence(const hl_problem* problem, size_t base, int levels, int rate_levels,
                         double* energy_rate, double* nodal_rate, char** csv) {
  return guarded([&] {
    require(problem, "problem");
    if (rate_levels < 2) throw InvalidArgument("rate_levels must be at least 2");
    const auto rows = quasiopt_probe(problem->problem, base, levels);
    const auto count = static_cast<std::size_t>(rate_levels);
    if (energy_rate) *energy_rate = convergence_rate(rows, true, count);
    if (nodal_rate) *nodal_rate = convergence_rate(rows, false, count);
    if (csv) *csv = copy_string(quasiopt_csv(rows));
  });
}

}  // extern "C"
