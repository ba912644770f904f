#include "helmlab/theory_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "helmlab/error.hpp"

namespace helmlab {

void FemTheoryInputs::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidArgument(std::string("theory inputs: ") + name + " must be positive");
  };
  positive(a_min, "a_min");
  positive(a_max, "a_max");
  positive(c_min, "c_min");
  positive(c_max, "c_max");
  positive(omega0, "omega0");
  positive(h, "h");
  positive(C_stab, "C_stab");
  if (!(omega >= omega0)) throw InvalidArgument("theory inputs: omega must be >= omega0 > 0");
  if (a_min > a_max) throw InvalidArgument("theory inputs: a_min exceeds a_max");
  if (c_min > c_max) throw InvalidArgument("theory inputs: c_min exceeds c_max");
  if (!(kappa_a >= 0.0) || !(kappa_c >= 0.0))
    throw InvalidArgument("theory inputs: kappa_a and kappa_c must be nonnegative");
  if (!(C_reg >= 0.0) || !(C_int >= 0.0) || !(C_trace >= 0.0))
    throw InvalidArgument("theory inputs: C_reg, C_int and C_trace must be nonnegative");
}

double continuity_constant(const FemTheoryInputs& in) {
  const double beta_max = std::sqrt(in.a_max) / in.c_min;
  const double tail = in.c_max * in.c_max * (1.0 / (in.omega0 * in.omega0) + beta_max * beta_max);
  return 3.0 + 0.5 * in.C_trace * in.C_trace * std::max(1.0 / in.a_min, tail);
}

double constant_c0(const FemTheoryInputs& in) {
  const double t = std::sqrt(in.a_max) * in.c_max / in.omega0;
  return 1.0 + t * t;
}

double constant_c0_prime(const FemTheoryInputs& in) {
  return in.C_trace * (1.0 / std::sqrt(in.a_min) +
                       in.c_min / in.omega0 * (1.0 + in.kappa_c + 0.5 * in.kappa_a));
}

double constant_k(const FemTheoryInputs& in) {
  const double sa = std::sqrt(in.a_min);
  return in.C_reg * in.C_int * sa *
         (constant_c0(in) + constant_c0_prime(in) * sa + in.kappa_a / in.omega0 * sa * in.c_min);
}

double sigma_star_bound(const FemTheoryInputs& in) {
  in.validate();
  const double sa = std::sqrt(in.a_min);
  const double scaled_omega = in.omega / (sa * in.c_min);
  return constant_k(in) * (std::sqrt(in.a_max / in.a_min) + scaled_omega * in.h) *
         (in.c_min / in.omega0 + in.C_stab) * scaled_omega * scaled_omega * in.h;
}

FemTheoryReport resolution_and_quasiopt(double C_ac, double sigma_star) {
  FemTheoryReport r;
  r.C_ac = C_ac;
  r.sigma_star_bound = sigma_star;
  r.resolution_ok = 2.0 * C_ac * sigma_star <= 1.0;
  r.quasi_opt_H = 2.0 * C_ac;
  r.quasi_opt_L2 = 2.0 * C_ac * C_ac * sigma_star;
  return r;
}

FemTheoryReport resolution_and_quasiopt(const FemTheoryInputs& in) {
  in.validate();
  FemTheoryReport r = resolution_and_quasiopt(continuity_constant(in), sigma_star_bound(in));
  r.beta_max = std::sqrt(in.a_max) / in.c_min;
  r.C0 = constant_c0(in);
  r.C0_prime = constant_c0_prime(in);
  r.K = constant_k(in);
  r.constants_certified = in.constants_certified;
  return r;
}

double log_derivative_sup(const PiecewiseCoefficient& g) {
  for (std::size_t j = 1; j < g.num_segments(); ++j)
    if (g.jump(j) != 0.0)
      throw UnsupportedProblem(
          "||g'/g||_inf is undefined for a coefficient with jumps; the convergence theory needs "
          "Lipschitz coefficients, so supply kappa explicitly");
  const auto& bp = g.breakpoints();
  double sup = 0.0;
  constexpr int kProbes = 64;
  for (std::size_t j = 0; j < g.num_segments(); ++j) {
    const double x0 = bp[j], x1 = bp[j + 1];
    auto probe = [&](double x) {
      sup = std::max(sup, std::abs(g.segment_derivative(j, x) / g.segment_value(j, x)));
    };
    probe(x0);
    probe(x1);
    if (g.segment(j).kind() == Segment::Kind::smooth) {
      const double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
      for (int k = 0; k < kProbes; ++k)
        probe(mid + half * std::cos((2 * k + 1) * std::numbers::pi / (2 * kProbes)));
    }
  }
  return sup;
}

std::string to_key_value(const FemTheoryInputs& in, const FemTheoryReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "a_min = " << in.a_min << "\na_max = " << in.a_max << "\nc_min = " << in.c_min
     << "\nc_max = " << in.c_max << "\nomega = " << in.omega << "\nomega0 = " << in.omega0
     << "\nh = " << in.h << "\nkappa_a = " << in.kappa_a << "\nkappa_c = " << in.kappa_c
     << "\nC_reg = " << in.C_reg << "\nC_int = " << in.C_int << "\nC_trace = " << in.C_trace
     << "\nC_stab = " << in.C_stab << "\nbeta_max = " << r.beta_max << "\nC_ac = " << r.C_ac
     << "\nC0 = " << r.C0 << "\nC0_prime = " << r.C0_prime << "\nK = " << r.K
     << "\nsigma_star_bound = " << r.sigma_star_bound
     << "\nresolution_threshold = " << 1.0 / (2.0 * r.C_ac)
     << "\nresolution_ok = " << (r.resolution_ok ? "true" : "false")
     << "\nquasi_opt_H = " << r.quasi_opt_H << "\nquasi_opt_L2 = " << r.quasi_opt_L2
     << "\nconstants_certified = " << (r.constants_certified ? "true" : "false") << '\n';
  if (!r.constants_certified)
    os << "note = C_reg, C_int and C_trace are placeholders; absolute conclusions need certified "
          "values\n";
  return os.str();
}

}  // namespace helmlab
