#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "helmlab/fem.hpp"
#include "helmlab/oracle.hpp"
#include "helmlab/problem.hpp"

namespace helmlab {

/// The layered family with 2m+1 layers on [-1, 1]: frequency (pi/2)(1 - r + m),
/// wave speed 1 - r on odd layers and 1 + r on even layers, layer widths
/// c_l / (1 - r + m) (doubled for the middle layer), a = 1, impedance at both
/// ends. epsilon moves the breakpoint x_{m+1}.
struct UnstableFamilySpec {
  int m = 2;
  double r = 0.5;
  double epsilon = 0.0;
  Complex g_left{0.0, 0.0};
  Complex g_right{1.0, 0.0};

  void validate() const;
  /// Stable text key, also used by the run cache.
  std::string key() const;
};

double family_frequency(int m, double r);
HelmholtzProblem family(const UnstableFamilySpec& spec);

/// Significant-figure helpers. round_sig gives "%.{sig-1}e" text, so two
/// values agree to `sig` figures exactly when these strings match.
std::string round_sig(double value, int sig);
bool agree_to_sigfigs(double x, double y, int sig);
double rounded(double value, int sig);

/// Table style: plain "%.4g" or mantissa with parenthesized exponent, "7.742(-1)".
enum class NumberStyle { plain, paper };
std::string format_value(double value, int sig, NumberStyle style);

/// Append-only text cache of per-level FEM results keyed by a problem key and
/// level. Safe for concurrent use.
class RunCache {
 public:
  struct Entry {
    double value = 0.0;
    double residual = 0.0;
    double condition = 0.0;
  };

  explicit RunCache(std::string path);
  std::optional<Entry> get(const std::string& key, int level) const;
  void put(const std::string& key, int level, const Entry& entry);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, int>, Entry> entries_;
};

struct RefinementOptions {
  std::size_t base = 800;
  int levels = 7;
  int sigfigs = 4;
  bool estimate_condition = true;
};

struct RefinementRun {
  std::vector<double> values;     ///< ||u_h'|| per level
  std::vector<double> residuals;
  bool converged = false;
  bool failed = false;
  /// Leading figures (0 .. sigfigs) shared by the last three levels.
  int figures = 0;
  std::string diagnostics;
  double finest = 0.0;            ///< value at the finest level
  double reported_value = 0.0;    ///< finest rounded to sigfigs
  double condition = 0.0;         ///< estimate at the finest level
};

/// FEM at base * 2^i elements per layer for i = 0 .. levels-1; converged when
/// the last three values share their first `sigfigs` figures. Solver failures
/// mark the run failed instead of throwing.
RefinementRun refine_to_convergence(const HelmholtzProblem& problem,
                                    const RefinementOptions& options = {},
                                    RunCache* cache = nullptr, const std::string& key = {});

enum class Method { fem, oracle };
std::string to_string(Method method);
Method method_from_string(const std::string& name);

/// Parallel job count: HELMLAB_JOBS if set and positive, otherwise the
/// hardware concurrency (at least 1).
int default_jobs();

struct TableOptions {
  Method method = Method::fem;
  RefinementOptions refinement;
  int jobs = 0;  ///< 0 means default_jobs()
  RunCache* cache = nullptr;
  /// Attempt the Table 3 cells the reference left blank with the 50-digit oracle.
  bool extended = false;
};

enum class CellStatus { ok, failed, not_attempted };
std::string to_string(CellStatus status);

struct TableCell {
  int m = 0;
  double r = 0.0;
  double epsilon = 0.0;
  Complex g_left, g_right;
  double value = 0.0;
  bool asterisk = false;
  /// Significant figures the value is trusted to.
  int figures = 4;
  double condition = 0.0;
  CellStatus status = CellStatus::ok;
  bool beyond_paper = false;
  std::string note;
};

/// One cell per (spec) in the given order.
std::vector<TableCell> run_cells(const std::vector<UnstableFamilySpec>& specs,
                                 const TableOptions& options,
                                 const std::vector<bool>& blank = {});

/// r-major grid of Table 1 cells, g = (0, 1).
std::vector<TableCell> table1(const std::vector<double>& r_values, const std::vector<int>& m_values,
                              const TableOptions& options);
/// r = 0.6 with g = (1, 1) and g = (2, 0.5); m-major, two cells per m.
std::vector<TableCell> table2(const std::vector<int>& m_values, const TableOptions& options);
/// r = 0.5, g = (0, 1); m-major over epsilon. Cells with m >= 14 and
/// 0 < epsilon <= 1e-7, or epsilon = 0, are left blank unless extended.
std::vector<TableCell> table3(const std::vector<int>& m_values, const std::vector<double>& eps_values,
                              const TableOptions& options);
bool table3_blank(int m, double epsilon);

/// Least-squares slope of (m, ln value).
double slope_fit(const std::vector<double>& m_values, const std::vector<double>& values);

struct SlopeReport {
  double all = 0.0;
  double converged_only = 0.0;
  std::size_t points_all = 0;
  std::size_t points_converged = 0;
  bool converged_fit_available = false;
};
SlopeReport column_slope(const std::vector<TableCell>& column);

std::string table1_csv(const std::vector<TableCell>& cells, const std::vector<double>& r_values,
                       const std::vector<int>& m_values, NumberStyle style);
std::string table2_csv(const std::vector<TableCell>& cells, const std::vector<int>& m_values,
                       NumberStyle style);
std::string table3_csv(const std::vector<TableCell>& cells, const std::vector<int>& m_values,
                       const std::vector<double>& eps_values, NumberStyle style);

/// Measured ln||u'|| against three upper bounds: the closed-form estimate
/// 2m(1+r)^2/(1-r)^4 + ln(C_II (1+r)/(1-r)) and ln(C_II sqrt(Q)/sqrt(2)) with
/// Q from the exponential bound and from the exact multiplier.
struct BoundRow {
  int m = 0;
  double r = 0.0;
  double log_measured = 0.0;
  bool converged = true;
  double closed_form_rhs = 0.0;
  double log_bound_exponential = 0.0;
  double log_bound_exact_q = 0.0;
  bool holds = true;
};
std::vector<BoundRow> bound_comparison(const std::vector<double>& r_values,
                                       const std::vector<int>& m_values,
                                       const TableOptions& options);
std::string bound_comparison_csv(const std::vector<BoundRow>& rows);

/// Errors of the FEM solution against the oracle at each level.
struct QuasiOptLevel {
  std::size_t elements_per_segment = 0;
  double h = 0.0;
  double energy_error = 0.0;         ///< ||u - u_h||_{H,a,c}
  double interpolation_error = 0.0;  ///< ||u - I_h u||_{H,a,c}
  double ratio = 0.0;
  double nodal_l2_error = 0.0;       ///< trapezoidal L2 norm of nodal errors
  double relative_energy_error = 0.0;
};
std::vector<QuasiOptLevel> quasiopt_probe(const HelmholtzProblem& problem, std::size_t base,
                                          int levels);
std::string quasiopt_csv(const std::vector<QuasiOptLevel>& rows);

/// Least-squares slope of ln(error) against ln(1/h) over the last `count` rows.
double convergence_rate(const std::vector<QuasiOptLevel>& rows, bool energy, std::size_t count);

/// Text columns "x Re(u) Im(u)", one line per node.
std::string dump_solution(const std::vector<double>& nodes, const std::vector<Complex>& values);

}  // namespace helmlab
