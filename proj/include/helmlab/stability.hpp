#pragma once

#include <limits>
#include <string>
#include <vector>

#include "helmlab/coeffs.hpp"

namespace helmlab {

/// Placement of the Dirichlet and impedance endpoints on [-L, L].
///   pure_impedance:       impedance at -L and L
///   dirichlet_impedance:  Dirichlet at L, impedance at -L
///   impedance_dirichlet:  impedance at L, Dirichlet at -L
enum class BoundaryConfig { pure_impedance, dirichlet_impedance, impedance_dirichlet };

std::string to_string(BoundaryConfig bc);
BoundaryConfig boundary_config_from_string(const std::string& name);

bool dirichlet_at_left(BoundaryConfig bc);
bool dirichlet_at_right(BoundaryConfig bc);

/// Interior jump ratios at z_1 .. z_{N-1}; entry k belongs to z_{k+1}.
struct JumpFactors {
  std::vector<double> alpha;
  std::vector<double> sigma;
  std::vector<double> gamma;
};

/// alpha_j = max(at^-/at^+, 1), sigma_j = max((ct^2)^-/(ct^2)^+, 1),
/// gamma_j = max(a^+/a^-, (c^2)^+/(c^2)^-, 1). All four coefficients must
/// share one partition.
JumpFactors jump_factors(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c,
                         const PiecewiseCoefficient& a_tilde, const PiecewiseCoefficient& c_tilde);

/// The piecewise multiplier
///   q(x) = at(x) ct(x)^2 ( int_{z_{j-1}}^x 1/(at ct^2) + A_j ),  x in tau_j,
/// with A_1 = 0 and A_{j+1} = alpha_j sigma_j gamma_j (int_{tau_j} 1/(at ct^2) + A_j).
class MultiplierQ {
 public:
  MultiplierQ(PiecewiseCoefficient a, PiecewiseCoefficient c);

  const Breakpoints& breakpoints() const { return a_.breakpoints(); }
  const PiecewiseCoefficient& a() const { return a_; }
  const PiecewiseCoefficient& c() const { return c_; }
  const PiecewiseCoefficient& a_tilde() const { return at_; }
  const PiecewiseCoefficient& c_tilde() const { return ct_; }
  const JumpFactors& factors() const { return factors_; }

  /// A_1 .. A_N (0-based storage).
  const std::vector<double>& A() const { return A_; }
  /// int over tau_j of 1/(at ct^2).
  const std::vector<double>& segment_integrals() const { return seg_int_; }

  /// int_{z_j}^{x} 1/(at ct^2) for x in segment j (0-based).
  double partial_integral(std::size_t j, double x) const;

  /// Unshifted q; at a breakpoint the side picks the one-sided limit.
  double operator()(double x, Side side = Side::right) const;
  double on_segment(std::size_t j, double x) const;

  /// q^-(L), the maximum of the unshifted multiplier.
  double right_end() const;

 private:
  PiecewiseCoefficient a_, c_, at_, ct_;
  JumpFactors factors_;
  std::vector<double> A_;
  std::vector<double> seg_int_;
};

/// Builds q on the common partition of a and c.
MultiplierQ build_q(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c);

/// The constant subtracted from q so that it vanishes on the Dirichlet end.
double q_shift(const MultiplierQ& q, BoundaryConfig bc);

/// sup |q - shift|: q(L) with a Dirichlet end, q(L)/2 for pure impedance.
double q_sup(const MultiplierQ& q, BoundaryConfig bc);

/// A bound that may exceed the double range. log_value is always finite.
struct ExtendedBound {
  double value = 0.0;
  double log_value = 0.0;
  bool overflow = false;
};

/// (2L or L) * (a_max c_max^2)/(a_min c_min^2) * exp(2 Var(a)/a_min + 2 Var(c^2)/c_min^2).
ExtendedBound q_bound(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c,
                      BoundaryConfig bc);

/// (2L or L) * (a_max c_max^2)/(a_min c_min^2) * prod(alpha sigma gamma), the
/// bound before the products are traded for exponentials of the variation.
ExtendedBound product_bound(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c,
                            BoundaryConfig bc);

struct StabilityConstants {
  double C_I = 0.0;
  double C_II = 0.0;
};

/// C_I = 2/sqrt(a_min) (1 + 3 c_max/c_min), C_II = 2/sqrt(a_min) sqrt(3 c_max/(2 c_min) + 1).
StabilityConstants stability_constants(double a_min, double c_min, double c_max);

struct StabilityReport {
  BoundaryConfig bc = BoundaryConfig::pure_impedance;
  double Q_exact = 0.0;
  ExtendedBound Q_bound;
  ExtendedBound product_bound;
  double C_I = 0.0;
  double C_II = 0.0;
  double var_a = 0.0;
  double var_c2 = 0.0;
  std::vector<double> breakpoints;
  JumpFactors factors;
  std::vector<double> A;
};

StabilityReport stability_report(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c,
                                 BoundaryConfig bc);

/// C_I Q ||f|| + C_II sqrt(Q) ||g||, an upper bound for ||u||_{H,a,c}.
double apriori_rhs(const StabilityReport& report, double f_norm, double g_norm);

/// Key-value text, one `key = value` per line.
std::string to_key_value(const StabilityReport& report);

struct QDiagnostics {
  bool pass = true;
  /// min over samples of (pw(q/a)' - 1/a) / scale; >= -tol means pass.
  double worst_a_margin = 0.0;
  double worst_c2_margin = 0.0;
  /// max over interior breakpoints of the relative jumps [q/a] and [q/c^2].
  double max_jump_q_over_a = -std::numeric_limits<double>::infinity();
  double max_jump_q_over_c2 = -std::numeric_limits<double>::infinity();
  std::size_t samples = 0;
  std::vector<double> jumps_q_over_a;
  std::vector<double> jumps_q_over_c2;
};

/// Checks pw(q/a)' >= 1/a, pw(q/c^2)' >= 1/c^2 at 128 points per segment and
/// nonpositive interior jumps of q/a and q/c^2.
QDiagnostics verify_q_properties(const MultiplierQ& q, const PiecewiseCoefficient& a,
                                 const PiecewiseCoefficient& c);

struct TechProductCheck {
  double product_up = 1.0;    ///< prod max(f^+/f^-, 1)
  double product_down = 1.0;  ///< prod max(f^-/f^+, 1)
  double bound = 1.0;         ///< exp(Var(f)/f_min)
  bool holds = true;
};

TechProductCheck tech_product_check(const PiecewiseCoefficient& f);

}  // namespace helmlab
