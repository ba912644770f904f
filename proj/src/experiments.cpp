#include "helmlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "helmlab/error.hpp"
#include "helmlab/quadrature.hpp"
#include "helmlab/stability.hpp"

namespace helmlab {

namespace {

std::string printf_string(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string hex(double v) { return printf_string("%a", v); }

template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

int shared_figures(const std::vector<double>& v, int sigfigs) {
  if (v.size() < 3) return 0;
  const std::size_t n = v.size();
  int best = 0;
  for (int s = 1; s <= sigfigs; ++s) {
    if (agree_to_sigfigs(v[n - 1], v[n - 2], s) && agree_to_sigfigs(v[n - 1], v[n - 3], s)) {
      best = s;
    } else {
      break;
    }
  }
  return best;
}

}  // namespace

void UnstableFamilySpec::validate() const {
  if (m < 2 || m % 2 != 0) throw InvalidArgument("family: m must be an even integer >= 2");
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("family: r must lie in (0, 1)");
  if (!std::isfinite(epsilon)) throw InvalidArgument("family: epsilon must be finite");
  if (!std::isfinite(std::abs(g_left)) || !std::isfinite(std::abs(g_right))) {
    throw InvalidArgument("family: boundary data must be finite");
  }
}

std::string UnstableFamilySpec::key() const {
  std::ostringstream os;
  os << "family;m=" << m << ";r=" << hex(r) << ";eps=" << hex(epsilon) << ";g=" << hex(g_left.real())
     << ',' << hex(g_left.imag()) << ',' << hex(g_right.real()) << ',' << hex(g_right.imag());
  return os.str();
}

double family_frequency(int m, double r) { return std::numbers::pi / 2.0 * (1.0 - r + m); }

HelmholtzProblem family(const UnstableFamilySpec& spec) {
  spec.validate();
  const int layers = 2 * spec.m + 1;
  const double scale = 1.0 - spec.r + spec.m;
  std::vector<double> speeds(layers);
  std::vector<double> z(layers + 1);
  z[0] = -1.0;
  for (int l = 1; l <= layers; ++l) {
    const double speed = (l % 2 == 1) ? 1.0 - spec.r : 1.0 + spec.r;
    speeds[l - 1] = speed;
    const double width = (l == spec.m + 1 ? 2.0 : 1.0) * speed / scale;
    z[l] = z[l - 1] + width;
  }
  if (std::abs(z[layers] - 1.0) > 1e-12) {
    throw InvariantError("family: partition does not end at 1 (got " +
                         printf_string("%.17g", z[layers]) + ")");
  }
  z[layers] = 1.0;
  z[spec.m + 1] += spec.epsilon;
  for (int l = 0; l < layers; ++l) {
    if (!(z[l] < z[l + 1])) throw InvalidArgument("family: perturbation breaks breakpoint ordering");
  }
  auto c = PiecewiseCoefficient::piecewise_constant(z, speeds);
  auto a = PiecewiseCoefficient::constant(1.0, 1.0);
  return HelmholtzProblem(std::move(a), std::move(c), family_frequency(spec.m, spec.r),
                          BoundaryConfig::pure_impedance, spec.g_left, spec.g_right);
}

std::string round_sig(double value, int sig) {
  if (sig < 1) throw InvalidArgument("round_sig: sig must be positive");
  char fmt[16];
  std::snprintf(fmt, sizeof fmt, "%%.%de", sig - 1);
  return printf_string(fmt, value);
}

bool agree_to_sigfigs(double x, double y, int sig) { return round_sig(x, sig) == round_sig(y, sig); }

double rounded(double value, int sig) { return std::strtod(round_sig(value, sig).c_str(), nullptr); }

std::string format_value(double value, int sig, NumberStyle style) {
  if (!std::isfinite(value)) return printf_string("%g", value);
  sig = std::max(sig, 1);
  if (style == NumberStyle::plain) {
    char fmt[16];
    std::snprintf(fmt, sizeof fmt, "%%.%dg", sig);
    const std::string text = printf_string(fmt, value);
    // "%.1g" turns 65.46 into "7e+01"; small integers read better in a table.
    if (text.find('e') != std::string::npos && std::abs(value) >= 1.0 && std::abs(value) < 1e4) {
      return printf_string("%.0f", rounded(value, sig));
    }
    return text;
  }
  if (value == 0.0) return "0";
  const std::string text = round_sig(value, sig);
  const auto epos = text.find('e');
  const std::string mantissa = text.substr(0, epos);
  const int exponent = std::atoi(text.c_str() + epos + 1);
  if (exponent == 0) return mantissa;
  return mantissa + "(" + (exponent > 0 ? "+" : "") + std::to_string(exponent) + ")";
}

RunCache::RunCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key, level, value, residual, condition;
    if (!std::getline(ls, key, '|') || !std::getline(ls, level, '|') ||
        !std::getline(ls, value, '|') || !std::getline(ls, residual, '|') ||
        !std::getline(ls, condition)) {
      continue;  // a torn final line from an interrupted run
    }
    Entry e;
    e.value = std::strtod(value.c_str(), nullptr);
    e.residual = std::strtod(residual.c_str(), nullptr);
    e.condition = std::strtod(condition.c_str(), nullptr);
    entries_[{key, std::atoi(level.c_str())}] = e;
  }
}

std::optional<RunCache::Entry> RunCache::get(const std::string& key, int level) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find({key, level});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void RunCache::put(const std::string& key, int level, const Entry& entry) {
  std::lock_guard lock(mutex_);
  entries_[{key, level}] = entry;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorKind::io, "cannot append to run cache " + path_);
  out << key << '|' << level << '|' << hex(entry.value) << '|' << hex(entry.residual) << '|'
      << hex(entry.condition) << '\n';
}

RefinementRun refine_to_convergence(const HelmholtzProblem& problem, const RefinementOptions& options,
                                    RunCache* cache, const std::string& key) {
  if (options.base == 0 || options.levels < 1 || options.sigfigs < 1) {
    throw InvalidArgument("refine_to_convergence: base, levels and sigfigs must be positive");
  }
  const std::string cache_key = key + ";base=" + std::to_string(options.base);
  RefinementRun run;
  run.condition = std::numeric_limits<double>::quiet_NaN();
  for (int level = 0; level < options.levels; ++level) {
    const bool finest = level == options.levels - 1;
    const bool want_condition = finest && options.estimate_condition;
    std::optional<RunCache::Entry> hit;
    if (cache && !key.empty()) hit = cache->get(cache_key, level);
    if (hit && want_condition && std::isnan(hit->condition)) hit.reset();
    RunCache::Entry entry;
    if (hit) {
      entry = *hit;
    } else {
      try {
        const Mesh1D mesh = build_mesh(problem, options.base << level);
        const FemSolution sol = solve_fem(problem, mesh, {want_condition});
        entry.value = sol.norms.du;
        entry.residual = sol.residual;
        entry.condition = sol.condition;
      } catch (const Error& e) {
        run.failed = true;
        run.diagnostics = "level " + std::to_string(level) + ": " + e.what();
        break;
      }
      if (cache && !key.empty()) cache->put(cache_key, level, entry);
    }
    run.values.push_back(entry.value);
    run.residuals.push_back(entry.residual);
    if (finest) run.condition = entry.condition;
  }
  if (run.values.empty()) return run;
  run.finest = run.values.back();
  run.figures = run.failed ? 0 : shared_figures(run.values, options.sigfigs);
  run.converged = !run.failed && run.figures >= options.sigfigs;
  run.reported_value = rounded(run.finest, options.sigfigs);
  return run;
}

std::string to_string(Method method) { return method == Method::fem ? "fem" : "oracle"; }

Method method_from_string(const std::string& name) {
  if (name == "fem") return Method::fem;
  if (name == "oracle") return Method::oracle;
  throw InvalidArgument("unknown method '" + name + "' (expected fem or oracle)");
}

std::string to_string(CellStatus status) {
  switch (status) {
    case CellStatus::ok: return "ok";
    case CellStatus::failed: return "failed";
    case CellStatus::not_attempted: return "not attempted";
  }
  return "?";
}

int default_jobs() {
  if (const char* env = std::getenv("HELMLAB_JOBS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

TableCell oracle_cell(const HelmholtzProblem& problem, TableCell cell, bool extended) {
  const WaveAmplitudes amps = solve_analytic(problem, {extended, true});
  cell.value = exact_norms(amps).du;
  cell.condition = amps.condition;
  if (amps.ill_conditioned && !extended) {
    const double lost = std::log10(amps.condition * std::numeric_limits<double>::epsilon());
    cell.figures = std::clamp(static_cast<int>(std::floor(-lost)), 1, 4);
    cell.asterisk = true;
    cell.note = "ill-conditioned amplitude system";
  }
  return cell;
}

TableCell compute_cell(const UnstableFamilySpec& spec, const TableOptions& options, bool blank) {
  TableCell cell;
  cell.m = spec.m;
  cell.r = spec.r;
  cell.epsilon = spec.epsilon;
  cell.g_left = spec.g_left;
  cell.g_right = spec.g_right;
  cell.condition = std::numeric_limits<double>::quiet_NaN();
  if (blank && !options.extended) {
    cell.status = CellStatus::not_attempted;
    cell.figures = 0;
    return cell;
  }
  try {
    const HelmholtzProblem problem = family(spec);
    if (blank) {
      cell = oracle_cell(problem, cell, true);
      cell.beyond_paper = true;
      cell.note = "50-digit oracle";
      return cell;
    }
    if (options.method == Method::oracle) return oracle_cell(problem, cell, false);
    const RefinementRun run =
        refine_to_convergence(problem, options.refinement, options.cache, spec.key());
    if (run.failed) {
      cell.status = CellStatus::failed;
      cell.note = run.diagnostics;
      cell.figures = 0;
      return cell;
    }
    cell.value = run.finest;
    cell.condition = run.condition;
    cell.asterisk = !run.converged;
    cell.figures = run.converged ? options.refinement.sigfigs : std::max(run.figures, 1);
  } catch (const Error& e) {
    cell.status = CellStatus::failed;
    cell.figures = 0;
    cell.note = e.what();
  }
  return cell;
}

}  // namespace

std::vector<TableCell> run_cells(const std::vector<UnstableFamilySpec>& specs,
                                 const TableOptions& options, const std::vector<bool>& blank) {
  if (!blank.empty() && blank.size() != specs.size()) {
    throw InvalidArgument("run_cells: blank mask size mismatch");
  }
  for (const auto& s : specs) s.validate();
  std::vector<TableCell> cells(specs.size());
  const int jobs = options.jobs > 0 ? options.jobs : default_jobs();
  parallel_for(specs.size(), jobs, [&](std::size_t i) {
    cells[i] = compute_cell(specs[i], options, !blank.empty() && blank[i]);
  });
  return cells;
}

std::vector<TableCell> table1(const std::vector<double>& r_values, const std::vector<int>& m_values,
                              const TableOptions& options) {
  std::vector<UnstableFamilySpec> specs;
  for (double r : r_values) {
    for (int m : m_values) specs.push_back({m, r, 0.0, {0.0, 0.0}, {1.0, 0.0}});
  }
  return run_cells(specs, options);
}

std::vector<TableCell> table2(const std::vector<int>& m_values, const TableOptions& options) {
  std::vector<UnstableFamilySpec> specs;
  for (int m : m_values) {
    specs.push_back({m, 0.6, 0.0, {1.0, 0.0}, {1.0, 0.0}});
    specs.push_back({m, 0.6, 0.0, {2.0, 0.0}, {0.5, 0.0}});
  }
  return run_cells(specs, options);
}

bool table3_blank(int m, double epsilon) { return m >= 14 && epsilon <= 1e-7 * (1 + 1e-12); }

std::vector<TableCell> table3(const std::vector<int>& m_values, const std::vector<double>& eps_values,
                              const TableOptions& options) {
  std::vector<UnstableFamilySpec> specs;
  std::vector<bool> blank;
  for (int m : m_values) {
    for (double eps : eps_values) {
      specs.push_back({m, 0.5, eps, {0.0, 0.0}, {1.0, 0.0}});
      blank.push_back(table3_blank(m, eps));
    }
  }
  return run_cells(specs, options, blank);
}

double slope_fit(const std::vector<double>& m_values, const std::vector<double>& values) {
  if (m_values.size() != values.size()) throw InvalidArgument("slope_fit: size mismatch");
  if (values.size() < 2) throw InvalidArgument("slope_fit: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw InvalidArgument("slope_fit: values must be positive");
    mx += m_values[i];
    my += std::log(values[i]);
  }
  mx /= values.size();
  my /= values.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dx = m_values[i] - mx;
    sxy += dx * (std::log(values[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw InvalidArgument("slope_fit: abscissae must not all coincide");
  return sxy / sxx;
}

SlopeReport column_slope(const std::vector<TableCell>& column) {
  std::vector<double> m_all, v_all, m_conv, v_conv;
  for (const auto& cell : column) {
    if (cell.status != CellStatus::ok) continue;
    m_all.push_back(cell.m);
    v_all.push_back(cell.value);
    if (!cell.asterisk) {
      m_conv.push_back(cell.m);
      v_conv.push_back(cell.value);
    }
  }
  SlopeReport rep;
  rep.points_all = m_all.size();
  rep.points_converged = m_conv.size();
  rep.all = slope_fit(m_all, v_all);
  if (m_conv.size() >= 2) {
    rep.converged_only = slope_fit(m_conv, v_conv);
    rep.converged_fit_available = true;
  } else {
    rep.converged_only = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

namespace {

std::string cell_text(const TableCell& cell, NumberStyle style) {
  if (cell.status == CellStatus::not_attempted) return "";
  if (cell.status == CellStatus::failed) return "failed";
  std::string s = format_value(cell.value, cell.asterisk ? cell.figures : 4, style);
  if (cell.asterisk) s += "*";
  if (cell.beyond_paper) s += "+";
  return s;
}

std::string kappa_text(const TableCell& cell, NumberStyle style) {
  if (cell.status != CellStatus::ok || std::isnan(cell.condition)) return "";
  return format_value(cell.condition, 3, style);
}

std::string r_label(double r) { return printf_string("%g", r); }

std::string eps_label(double eps) { return eps == 0.0 ? "0" : printf_string("%.0e", eps); }

}  // namespace

std::string table1_csv(const std::vector<TableCell>& cells, const std::vector<double>& r_values,
                       const std::vector<int>& m_values, NumberStyle style) {
  if (cells.size() != r_values.size() * m_values.size()) {
    throw InvalidArgument("table1_csv: grid size mismatch");
  }
  std::ostringstream os;
  os << "m";
  for (double r : r_values) os << ",r = " << r_label(r) << " ||u'||,r = " << r_label(r) << " kappa";
  os << '\n';
  const std::size_t nm = m_values.size();
  for (std::size_t i = 0; i < nm; ++i) {
    os << m_values[i];
    for (std::size_t j = 0; j < r_values.size(); ++j) {
      const auto& cell = cells[j * nm + i];
      os << ',' << cell_text(cell, style) << ',' << kappa_text(cell, style);
    }
    os << '\n';
  }
  os << "grad";
  for (std::size_t j = 0; j < r_values.size(); ++j) {
    std::vector<TableCell> column(cells.begin() + j * nm, cells.begin() + (j + 1) * nm);
    std::string text;
    try {
      text = printf_string("%.2f", column_slope(column).all);
    } catch (const InvalidArgument&) {
    }
    os << ',' << text << ',';
  }
  os << '\n';
  return os.str();
}

std::string table2_csv(const std::vector<TableCell>& cells, const std::vector<int>& m_values,
                       NumberStyle style) {
  if (cells.size() != 2 * m_values.size()) throw InvalidArgument("table2_csv: grid size mismatch");
  std::ostringstream os;
  os << "m,g1 = 1 = g2,\"g1 = 2, g2 = 0.5\"\n";
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    os << m_values[i] << ',' << cell_text(cells[2 * i], style) << ','
       << cell_text(cells[2 * i + 1], style) << '\n';
  }
  return os.str();
}

std::string table3_csv(const std::vector<TableCell>& cells, const std::vector<int>& m_values,
                       const std::vector<double>& eps_values, NumberStyle style) {
  if (cells.size() != m_values.size() * eps_values.size()) {
    throw InvalidArgument("table3_csv: grid size mismatch");
  }
  std::ostringstream os;
  os << "m\\epsilon";
  for (double eps : eps_values) os << ',' << eps_label(eps);
  os << '\n';
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    os << m_values[i];
    for (std::size_t j = 0; j < eps_values.size(); ++j) {
      os << ',' << cell_text(cells[i * eps_values.size() + j], style);
    }
    os << '\n';
  }
  return os.str();
}

std::vector<BoundRow> bound_comparison(const std::vector<double>& r_values,
                                       const std::vector<int>& m_values,
                                       const TableOptions& options) {
  const auto cells = table1(r_values, m_values, options);
  std::vector<BoundRow> rows;
  for (const auto& cell : cells) {
    if (cell.status != CellStatus::ok) continue;
    const double r = cell.r;
    const HelmholtzProblem problem = family({cell.m, r, 0.0, cell.g_left, cell.g_right});
    const StabilityReport rep = stability_report(problem.a, problem.c, problem.bc);
    const double g_norm = problem.boundary_data_norm();
    BoundRow row;
    row.m = cell.m;
    row.r = r;
    row.converged = !cell.asterisk;
    row.log_measured = std::log(cell.value);
    row.closed_form_rhs = 2.0 * cell.m * std::pow(1 + r, 2) / std::pow(1 - r, 4) +
                          std::log(rep.C_II * (1 + r) / (1 - r));
    // ||u||_H = sqrt(2) ||u'|| on this family, and ||u||_H <= C_II sqrt(Q) ||g||.
    const double log_scale = std::log(rep.C_II * g_norm / std::sqrt(2.0));
    row.log_bound_exponential = log_scale + 0.5 * rep.Q_bound.log_value;
    row.log_bound_exact_q = log_scale + 0.5 * std::log(rep.Q_exact);
    row.holds = row.log_measured <= row.closed_form_rhs &&
                row.log_measured <= row.log_bound_exponential &&
                row.log_measured <= row.log_bound_exact_q;
    rows.push_back(row);
  }
  return rows;
}

std::string bound_comparison_csv(const std::vector<BoundRow>& rows) {
  std::ostringstream os;
  os << "m,r,log ||u'||,converged,closed-form rhs,log bound (exponential Q),log bound (exact Q),holds\n";
  for (const auto& row : rows) {
    os << row.m << ',' << r_label(row.r) << ',' << printf_string("%.4g", row.log_measured) << ','
       << (row.converged ? "yes" : "no") << ',' << printf_string("%.4g", row.closed_form_rhs) << ','
       << printf_string("%.4g", row.log_bound_exponential) << ','
       << printf_string("%.4g", row.log_bound_exact_q) << ',' << (row.holds ? "yes" : "no") << '\n';
  }
  return os.str();
}

std::vector<QuasiOptLevel> quasiopt_probe(const HelmholtzProblem& problem, std::size_t base,
                                          int levels) {
  if (base == 0 || levels < 1) throw InvalidArgument("quasiopt_probe: base and levels must be positive");
  const WaveAmplitudes amps = solve_analytic(problem);
  const double exact_energy = exact_norms(amps).energy;
  std::vector<QuasiOptLevel> rows;
  for (int level = 0; level < levels; ++level) {
    const std::size_t count = base << level;
    const Mesh1D mesh = build_mesh(problem, count);
    const FemSolution sol = solve_fem(problem, mesh);
    std::vector<Complex> exact_nodes(mesh.num_nodes());
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i) exact_nodes[i] = eval(amps, mesh.nodes[i]);

    double err2 = 0.0, interp2 = 0.0, nodal2 = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
      const double x0 = mesh.nodes[e], x1 = mesh.nodes[e + 1], h = x1 - x0;
      const std::size_t seg = mesh.segment_of_element[e];
      const double av = problem.a.segment_value(seg, 0.5 * (x0 + x1));
      const double wc = problem.omega / problem.c.segment_value(seg, 0.5 * (x0 + x1));
      const Complex uh0 = sol.values[e], uh1 = sol.values[e + 1];
      const Complex iu0 = exact_nodes[e], iu1 = exact_nodes[e + 1];
      const Complex duh = (uh1 - uh0) / h, diu = (iu1 - iu0) / h;
      auto energy_density = [&](Complex v0, Complex v1, Complex dv) {
        return [&, v0, v1, dv](double x) {
          const double t = (x - x0) / h;
          const Complex u = eval(amps, x);
          const Complex du = derivative(amps, x);
          const Complex ev = u - (v0 * (1 - t) + v1 * t);
          const Complex edv = du - dv;
          return av * std::norm(edv) + wc * wc * std::norm(ev);
        };
      };
      err2 += quad::gauss5(energy_density(uh0, uh1, duh), x0, x1);
      interp2 += quad::gauss5(energy_density(iu0, iu1, diu), x0, x1);
      nodal2 += 0.5 * h * (std::norm(iu0 - uh0) + std::norm(iu1 - uh1));
    }
    QuasiOptLevel row;
    row.elements_per_segment = count;
    row.h = mesh.max_element_size();
    row.energy_error = std::sqrt(err2);
    row.interpolation_error = std::sqrt(interp2);
    row.ratio = row.energy_error / row.interpolation_error;
    row.nodal_l2_error = std::sqrt(nodal2);
    row.relative_energy_error = row.energy_error / exact_energy;
    rows.push_back(row);
  }
  return rows;
}

std::string quasiopt_csv(const std::vector<QuasiOptLevel>& rows) {
  std::ostringstream os;
  os << "elements per segment,h,energy error,interpolation error,ratio,nodal L2 error,relative energy error\n";
  for (const auto& row : rows) {
    os << row.elements_per_segment << ',' << printf_string("%.4g", row.h) << ','
       << printf_string("%.4g", row.energy_error) << ','
       << printf_string("%.4g", row.interpolation_error) << ',' << printf_string("%.4g", row.ratio)
       << ',' << printf_string("%.4g", row.nodal_l2_error) << ','
       << printf_string("%.4g", row.relative_energy_error) << '\n';
  }
  return os.str();
}

double convergence_rate(const std::vector<QuasiOptLevel>& rows, bool energy, std::size_t count) {
  if (count < 2 || count > rows.size()) throw InvalidArgument("convergence_rate: bad level count");
  std::vector<double> x, y;
  for (std::size_t i = rows.size() - count; i < rows.size(); ++i) {
    x.push_back(std::log(1.0 / rows[i].h));
    y.push_back(energy ? rows[i].energy_error : rows[i].nodal_l2_error);
  }
  // slope of -ln(err) against ln(1/h)
  for (auto& v : y) v = 1.0 / v;
  return slope_fit(x, y);
}

std::string dump_solution(const std::vector<double>& nodes, const std::vector<Complex>& values) {
  if (nodes.size() != values.size()) throw InvalidArgument("dump_solution: size mismatch");
  std::ostringstream os;
  char buf[96];
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10e %.10e %.10e\n", nodes[i], values[i].real(), values[i].imag());
    os << buf;
  }
  return os.str();
}

}  // namespace helmlab
