#include "helmlab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "helmlab/error.hpp"
#include "helmlab/quadrature.hpp"

namespace helmlab {

namespace {

constexpr int kVerifySamples = 128;
constexpr double kDerivativeTol = 1e-9;
constexpr double kJumpTol = 1e-12;

ExtendedBound from_log(double log_value) {
  ExtendedBound b;
  b.log_value = log_value;
  if (log_value >= std::log(std::numeric_limits<double>::max())) {
    b.value = std::numeric_limits<double>::infinity();
    b.overflow = true;
  } else {
    b.value = std::exp(log_value);
  }
  return b;
}

double boundary_length_factor(double L, BoundaryConfig bc) {
  return bc == BoundaryConfig::pure_impedance ? L : 2.0 * L;
}

double log_coefficient_ratio(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c) {
  return std::log(a.max()) - std::log(a.min()) + 2.0 * (std::log(c.max()) - std::log(c.min()));
}

// (x - x0) * log1p(u) / u with u = slope (x - x0) / v0; the integral of
// 1/(v0 + slope (y - x0)) over [x0, x].
double reciprocal_linear_integral(double v0, double slope, double len) {
  const double u = slope * len / v0;
  if (std::abs(u) < 1e-8) return len / v0 * (1.0 - u / 2.0 + u * u / 3.0);
  return len / v0 * std::log1p(u) / u;
}

// Integral of 1/(p r^2) over [0, len] with p = p0 + dp s and r = r0 + dr s,
// by partial fractions in D = p0 dr - dp r0. Returns NaN when D is so small
// that the closed form loses more than about four digits.
double linear_linear_integral(double p0, double dp, double r0, double dr, double len) {
  if (dp == 0.0) return len / (p0 * r0 * (r0 + dr * len));
  if (dr == 0.0) return reciprocal_linear_integral(p0, dp, len) / (r0 * r0);
  const double D = p0 * dr - dp * r0;
  if (std::abs(D) < 1e-2 * (std::abs(p0 * dr) + std::abs(dp * r0)))
    return std::numeric_limits<double>::quiet_NaN();
  const double r = r0 + dr * len;
  const double int_inv_r = reciprocal_linear_integral(r0, dr, len);
  const double int_inv_p = reciprocal_linear_integral(p0, dp, len);
  return dr * len / (D * r0 * r) - dp / (D * D) * (dr * int_inv_r - dp * int_inv_p);
}

}  // namespace

std::string to_string(BoundaryConfig bc) {
  switch (bc) {
    case BoundaryConfig::pure_impedance:
      return "pure_impedance";
    case BoundaryConfig::dirichlet_impedance:
      return "dirichlet_impedance";
    case BoundaryConfig::impedance_dirichlet:
      return "impedance_dirichlet";
  }
  return "unknown";
}

BoundaryConfig boundary_config_from_string(const std::string& name) {
  if (name == "pure_impedance") return BoundaryConfig::pure_impedance;
  if (name == "dirichlet_impedance") return BoundaryConfig::dirichlet_impedance;
  if (name == "impedance_dirichlet") return BoundaryConfig::impedance_dirichlet;
  throw InvalidArgument("unknown boundary configuration '" + name +
                        "' (expected pure_impedance, dirichlet_impedance or impedance_dirichlet)");
}

bool dirichlet_at_left(BoundaryConfig bc) { return bc == BoundaryConfig::impedance_dirichlet; }
bool dirichlet_at_right(BoundaryConfig bc) { return bc == BoundaryConfig::dirichlet_impedance; }

JumpFactors jump_factors(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c,
                         const PiecewiseCoefficient& a_tilde, const PiecewiseCoefficient& c_tilde) {
  const Breakpoints& bp = a.breakpoints();
  if (!(c.breakpoints() == bp && a_tilde.breakpoints() == bp && c_tilde.breakpoints() == bp))
    throw InvalidArgument("jump_factors: coefficients are not on a common partition");
  JumpFactors jf;
  const std::size_t n = bp.num_segments();
  for (std::size_t j = 1; j < n; ++j) {
    const double atm = a_tilde.left_limit(j), atp = a_tilde.right_limit(j);
    const double ctm = c_tilde.left_limit(j), ctp = c_tilde.right_limit(j);
    const double am = a.left_limit(j), ap = a.right_limit(j);
    const double cm = c.left_limit(j), cp = c.right_limit(j);
    jf.alpha.push_back(std::max(atm / atp, 1.0));
    jf.sigma.push_back(std::max((ctm * ctm) / (ctp * ctp), 1.0));
    jf.gamma.push_back(std::max({ap / am, (cp * cp) / (cm * cm), 1.0}));
  }
  return jf;
}

// ---------------------------------------------------------------------------
// MultiplierQ

MultiplierQ::MultiplierQ(PiecewiseCoefficient a, PiecewiseCoefficient c)
    : a_(std::move(a)), c_(std::move(c)), at_(tilde(a_)), ct_(tilde(c_)) {
  if (!(a_.breakpoints() == c_.breakpoints()))
    throw InvalidArgument("MultiplierQ: a and c must share a partition (use build_q)");
  factors_ = jump_factors(a_, c_, at_, ct_);
  const std::size_t n = a_.num_segments();
  const auto& bp = a_.breakpoints();
  seg_int_.resize(n);
  for (std::size_t j = 0; j < n; ++j) seg_int_[j] = partial_integral(j, bp[j + 1]);
  A_.assign(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j)
    A_[j + 1] = factors_.alpha[j] * factors_.sigma[j] * factors_.gamma[j] * (seg_int_[j] + A_[j]);
}

double MultiplierQ::partial_integral(std::size_t j, double x) const {
  const auto& bp = a_.breakpoints();
  const double x0 = bp[j], x1 = bp[j + 1];
  const double len = x - x0;
  if (len == 0.0) return 0.0;
  const Segment& sa = at_.segment(j);
  const Segment& sc = ct_.segment(j);
  using K = Segment::Kind;
  if (sa.kind() == K::constant && sc.kind() == K::constant) {
    const double cv = sc.left_value();
    return len / (sa.left_value() * cv * cv);
  }
  if (sa.kind() == K::linear && sc.kind() == K::constant) {
    const double cv = sc.left_value();
    const double slope = (sa.right_value() - sa.left_value()) / (x1 - x0);
    return reciprocal_linear_integral(sa.left_value(), slope, len) / (cv * cv);
  }
  if (sa.kind() == K::constant && sc.kind() == K::linear) {
    // int dy / (c0 + s y)^2 = len / (c(x0) c(x))
    return len / (sc.left_value() * sc.value(x, x0, x1)) / sa.left_value();
  }
  if (sa.kind() == K::linear && sc.kind() == K::linear) {
    const double h = x1 - x0;
    const double v = linear_linear_integral(sa.left_value(), (sa.right_value() - sa.left_value()) / h,
                                            sc.left_value(), (sc.right_value() - sc.left_value()) / h,
                                            len);
    if (!std::isnan(v)) return v;
  }
  return quad::adaptive(
      [&](double y) {
        const double cv = sc.value(y, x0, x1);
        return 1.0 / (sa.value(y, x0, x1) * cv * cv);
      },
      x0, x, 1e-10);
}

double MultiplierQ::on_segment(std::size_t j, double x) const {
  const double av = at_.segment_value(j, x);
  const double cv = ct_.segment_value(j, x);
  return av * cv * cv * (partial_integral(j, x) + A_[j]);
}

double MultiplierQ::operator()(double x, Side side) const {
  return on_segment(a_.breakpoints().locate(x, side), x);
}

double MultiplierQ::right_end() const {
  const std::size_t n = a_.num_segments();
  const double L = a_.half_length();
  const double av = at_.segment_value(n - 1, L);
  const double cv = ct_.segment_value(n - 1, L);
  return av * cv * cv * (seg_int_[n - 1] + A_[n - 1]);
}

MultiplierQ build_q(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c) {
  const Breakpoints bp = common_partition(a, c);
  return MultiplierQ(a.refined(bp), c.refined(bp));
}

double q_shift(const MultiplierQ& q, BoundaryConfig bc) {
  switch (bc) {
    case BoundaryConfig::pure_impedance:
      return 0.5 * q.right_end();
    case BoundaryConfig::dirichlet_impedance:
      return q.right_end();
    case BoundaryConfig::impedance_dirichlet:
      return 0.0;
  }
  return 0.0;
}

double q_sup(const MultiplierQ& q, BoundaryConfig bc) {
  // q is nondecreasing from q(-L) = 0 to q(L).
  return bc == BoundaryConfig::pure_impedance ? 0.5 * q.right_end() : q.right_end();
}

ExtendedBound q_bound(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c,
                      BoundaryConfig bc) {
  const double exponent =
      2.0 * variation(a) / a.min() + 2.0 * variation(c.squared()) / (c.min() * c.min());
  return from_log(std::log(boundary_length_factor(a.half_length(), bc)) +
                  log_coefficient_ratio(a, c) + exponent);
}

ExtendedBound product_bound(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c,
                            BoundaryConfig bc) {
  const MultiplierQ q = build_q(a, c);
  double log_prod = 0.0;
  const auto& f = q.factors();
  for (std::size_t k = 0; k < f.alpha.size(); ++k)
    log_prod += std::log(f.alpha[k]) + std::log(f.sigma[k]) + std::log(f.gamma[k]);
  return from_log(std::log(boundary_length_factor(a.half_length(), bc)) +
                  log_coefficient_ratio(a, c) + log_prod);
}

StabilityConstants stability_constants(double a_min, double c_min, double c_max) {
  if (!(a_min > 0.0) || !(c_min > 0.0) || !(c_max > 0.0))
    throw InvalidArgument("stability_constants: a_min, c_min and c_max must be positive");
  if (c_min > c_max) throw InvalidArgument("stability_constants: c_min exceeds c_max");
  const double s = 2.0 / std::sqrt(a_min);
  const double ratio = c_max / c_min;
  return {s * (1.0 + 3.0 * ratio), s * std::sqrt(1.5 * ratio + 1.0)};
}

StabilityReport stability_report(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c,
                                 BoundaryConfig bc) {
  const MultiplierQ q = build_q(a, c);
  StabilityReport r;
  r.bc = bc;
  r.Q_exact = q_sup(q, bc);
  r.Q_bound = q_bound(a, c, bc);
  r.product_bound = product_bound(a, c, bc);
  const auto k = stability_constants(a.min(), c.min(), c.max());
  r.C_I = k.C_I;
  r.C_II = k.C_II;
  r.var_a = variation(a);
  r.var_c2 = variation(c.squared());
  const auto z = q.breakpoints().values();
  r.breakpoints.assign(z.begin(), z.end());
  r.factors = q.factors();
  r.A = q.A();
  return r;
}

double apriori_rhs(const StabilityReport& report, double f_norm, double g_norm) {
  if (!(f_norm >= 0.0) || !(g_norm >= 0.0))
    throw InvalidArgument("apriori_rhs: data norms must be nonnegative");
  return report.C_I * report.Q_exact * f_norm + report.C_II * std::sqrt(report.Q_exact) * g_norm;
}

std::string to_key_value(const StabilityReport& r) {
  std::ostringstream os;
  os.precision(10);
  os << "bc = " << to_string(r.bc) << '\n'
     << "Q_exact = " << r.Q_exact << '\n'
     << "Q_bound = " << r.Q_bound.value << '\n'
     << "Q_bound_log = " << r.Q_bound.log_value << '\n'
     << "Q_bound_overflow = " << (r.Q_bound.overflow ? "true" : "false") << '\n'
     << "product_bound = " << r.product_bound.value << '\n'
     << "product_bound_log = " << r.product_bound.log_value << '\n'
     << "C_I = " << r.C_I << '\n'
     << "C_II = " << r.C_II << '\n'
     << "Var_a = " << r.var_a << '\n'
     << "Var_c2 = " << r.var_c2 << '\n'
     << "num_segments = " << (r.breakpoints.empty() ? 0 : r.breakpoints.size() - 1) << '\n';
  for (std::size_t k = 0; k < r.factors.alpha.size(); ++k) {
    const std::size_t j = k + 1;
    os << "z[" << j << "] = " << r.breakpoints[j] << '\n'
       << "alpha[" << j << "] = " << r.factors.alpha[k] << '\n'
       << "sigma[" << j << "] = " << r.factors.sigma[k] << '\n'
       << "gamma[" << j << "] = " << r.factors.gamma[k] << '\n';
  }
  for (std::size_t j = 0; j < r.A.size(); ++j) os << "A[" << j + 1 << "] = " << r.A[j] << '\n';
  return os.str();
}

QDiagnostics verify_q_properties(const MultiplierQ& q, const PiecewiseCoefficient& a_in,
                                 const PiecewiseCoefficient& c_in) {
  const Breakpoints& bp = q.breakpoints();
  const PiecewiseCoefficient a = a_in.refined(bp);
  const PiecewiseCoefficient c = c_in.refined(bp);
  const PiecewiseCoefficient& at = q.a_tilde();
  const PiecewiseCoefficient& ct = q.c_tilde();
  QDiagnostics d;
  d.worst_a_margin = std::numeric_limits<double>::infinity();
  d.worst_c2_margin = std::numeric_limits<double>::infinity();
  const std::size_t n = bp.num_segments();
  for (std::size_t j = 0; j < n; ++j) {
    const double x0 = bp[j], h = bp[j + 1] - bp[j];
    for (int k = 0; k < kVerifySamples; ++k) {
      const double x = x0 + (k + 0.5) / kVerifySamples * h;
      const double S = q.partial_integral(j, x) + q.A()[j];
      const double av = a.segment_value(j, x), da = a.segment_derivative(j, x);
      const double cv = c.segment_value(j, x), dc = c.segment_derivative(j, x);
      const double tv = at.segment_value(j, x), dt = at.segment_derivative(j, x);
      const double sv = ct.segment_value(j, x), ds = ct.segment_derivative(j, x);
      const double num = tv * sv * sv;
      // (q/a)' = (num/a)' S + 1/a with (num/a)' = (num/a) (log num - log a)'.
      // Grouping the tilde and plain log-derivatives makes them cancel exactly
      // on segments where the tilde keeps the coefficient.
      const double c2 = cv * cv;
      const double dqa = num / av * ((dt / tv - da / av) + 2.0 * ds / sv) * S + 1.0 / av;
      const double dqc = num / c2 * (dt / tv + 2.0 * (ds / sv - dc / cv)) * S + 1.0 / c2;
      const double ma = (dqa - 1.0 / av) / std::max(std::abs(dqa), 1.0 / av);
      const double mc = (dqc - 1.0 / c2) / std::max(std::abs(dqc), 1.0 / c2);
      d.worst_a_margin = std::min(d.worst_a_margin, ma);
      d.worst_c2_margin = std::min(d.worst_c2_margin, mc);
      ++d.samples;
    }
  }
  for (std::size_t j = 1; j < n; ++j) {
    const double z = bp[j];
    const double qm = q(z, Side::left), qp = q(z, Side::right);
    const double am = a.left_limit(j), ap = a.right_limit(j);
    const double cm = c.left_limit(j), cp = c.right_limit(j);
    const double ja = qm / am - qp / ap;
    const double jc = qm / (cm * cm) - qp / (cp * cp);
    d.jumps_q_over_a.push_back(ja);
    d.jumps_q_over_c2.push_back(jc);
    const double sa = std::max(qm / am, qp / ap);
    const double sc = std::max(qm / (cm * cm), qp / (cp * cp));
    d.max_jump_q_over_a = std::max(d.max_jump_q_over_a, sa > 0 ? ja / sa : ja);
    d.max_jump_q_over_c2 = std::max(d.max_jump_q_over_c2, sc > 0 ? jc / sc : jc);
  }
  d.pass = d.worst_a_margin >= -kDerivativeTol && d.worst_c2_margin >= -kDerivativeTol &&
           (n == 1 || (d.max_jump_q_over_a <= kJumpTol && d.max_jump_q_over_c2 <= kJumpTol));
  return d;
}

TechProductCheck tech_product_check(const PiecewiseCoefficient& f) {
  TechProductCheck t;
  for (std::size_t l = 1; l < f.num_segments(); ++l) {
    const double m = f.left_limit(l), p = f.right_limit(l);
    t.product_up *= std::max(p / m, 1.0);
    t.product_down *= std::max(m / p, 1.0);
  }
  t.bound = std::exp(variation(f) / f.min());
  const double slack = 1.0 + 1e-12;
  t.holds = t.product_up <= t.bound * slack && t.product_down <= t.bound * slack;
  return t;
}

}  // namespace helmlab
