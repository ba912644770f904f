#include "helmlab/oracle.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "helmlab/error.hpp"
#include "helmlab/linalg.hpp"

namespace helmlab {

namespace {

using BigReal = boost::multiprecision::cpp_bin_float_50;
using BigComplex = boost::multiprecision::cpp_complex_50;

// Entries of the amplitude system for one layered problem. Row 0 is the left
// boundary, rows 2l+1 and 2l+2 are continuity and flux at z_{l+1}, the last row
// is the right boundary. Unknowns are ordered A_0, B_0, A_1, B_1, ...
template <class R, class C>
struct LayeredSystem {
  std::size_t n = 0;
  std::vector<std::vector<C>> rows;
  std::vector<std::size_t> first_col;
  std::vector<C> rhs;
};

template <class R, class C>
LayeredSystem<R, C> build_system(const HelmholtzProblem& p, const std::vector<double>& z,
                                 const std::vector<double>& a, const std::vector<double>& c) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const std::size_t N = a.size();
  LayeredSystem<R, C> sys;
  sys.n = 2 * N;
  sys.rows.resize(sys.n);
  sys.first_col.resize(sys.n);
  sys.rhs.assign(sys.n, C(0));
  const R omega(p.omega);
  std::vector<R> k(N), ak(N);
  std::vector<C> E(N), Einv(N);
  for (std::size_t l = 0; l < N; ++l) {
    const R al(a[l]), cl(c[l]);
    k[l] = omega / (sqrt(al) * cl);
    ak[l] = al * k[l];
    const R theta = k[l] * (R(z[l + 1]) - R(z[l]));
    E[l] = C(cos(theta), sin(theta));
    Einv[l] = C(cos(theta), -sin(theta));
  }
  const C I(R(0), R(1));
  // a k = omega sqrt(a)/c, so the impedance condition reduces to one amplitude.
  if (dirichlet_at_left(p.bc)) {
    sys.rows[0] = {C(1), C(1)};
  } else {
    sys.rows[0] = {C(R(-2)) * I * ak[0], C(0)};
    sys.rhs[0] = C(R(p.g_left.real()), R(p.g_left.imag()));
  }
  sys.first_col[0] = 0;
  for (std::size_t l = 0; l + 1 < N; ++l) {
    const std::size_t r = 2 * l + 1;
    sys.first_col[r] = sys.first_col[r + 1] = 2 * l;
    sys.rows[r] = {E[l], Einv[l], C(-1), C(-1)};
    sys.rows[r + 1] = {C(ak[l]) * E[l], C(-ak[l]) * Einv[l], C(-ak[l + 1]), C(ak[l + 1])};
  }
  const std::size_t last = sys.n - 1;
  sys.first_col[last] = sys.n - 2;
  if (dirichlet_at_right(p.bc)) {
    sys.rows[last] = {E[N - 1], Einv[N - 1]};
  } else {
    sys.rows[last] = {C(0), C(R(-2)) * I * ak[N - 1] * Einv[N - 1]};
    sys.rhs[last] = C(R(p.g_right.real()), R(p.g_right.imag()));
  }
  return sys;
}

BandedMatrix to_banded(const LayeredSystem<double, Complex>& s) {
  BandedMatrix m(s.n, 2, 2);
  for (std::size_t r = 0; r < s.n; ++r)
    for (std::size_t q = 0; q < s.rows[r].size(); ++q) m.at(r, s.first_col[r] + q) = s.rows[r][q];
  return m;
}

// Gaussian elimination with partial pivoting, dense storage. Used only for the
// 50-digit path where the systems have a few hundred unknowns at most.
std::vector<BigComplex> solve_dense(const LayeredSystem<BigReal, BigComplex>& s) {
  const std::size_t n = s.n;
  std::vector<std::vector<BigComplex>> m(n, std::vector<BigComplex>(n, BigComplex(0)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = 0; q < s.rows[r].size(); ++q) m[r][s.first_col[r] + q] = s.rows[r][q];
  std::vector<BigComplex> b = s.rhs;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t piv = j;
    BigReal best = abs(m[j][j]);
    for (std::size_t i = j + 1; i < std::min(n, j + 3); ++i) {
      const BigReal v = abs(m[i][j]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0) throw SingularSystem("oracle: amplitude system is singular");
    std::swap(m[j], m[piv]);
    std::swap(b[j], b[piv]);
    const std::size_t col_end = std::min(n, j + 5);
    for (std::size_t i = j + 1; i < std::min(n, j + 3); ++i) {
      if (m[i][j] == BigComplex(0)) continue;
      const BigComplex f = m[i][j] / m[j][j];
      for (std::size_t q = j; q < col_end; ++q) m[i][q] -= f * m[j][q];
      b[i] -= f * b[j];
    }
  }
  std::vector<BigComplex> x(n);
  for (std::size_t j = n; j-- > 0;) {
    BigComplex acc = b[j];
    for (std::size_t q = j + 1; q < std::min(n, j + 5); ++q) acc -= m[j][q] * x[q];
    x[j] = acc / m[j][j];
  }
  return x;
}

std::size_t interval_of(const WaveAmplitudes& amps, double x, Side side) {
  const double L = amps.z.back();
  if (!(x >= amps.z.front() && x <= L))
    throw DomainError("oracle: point outside [-L, L]");
  const auto it = side == Side::right ? std::upper_bound(amps.z.begin(), amps.z.end(), x)
                                      : std::lower_bound(amps.z.begin(), amps.z.end(), x);
  std::size_t l = static_cast<std::size_t>(it - amps.z.begin());
  l = l == 0 ? 0 : l - 1;
  return std::min(l, amps.num_intervals() - 1);
}

// (exp(i theta) - 1) / (i theta), accurate for small theta.
Complex phase_integral(double theta) {
  if (std::abs(theta) < 1e-4)
    return {1.0 - theta * theta / 6.0, theta / 2.0 - theta * theta * theta / 24.0};
  const double s = std::sin(0.5 * theta);
  const Complex em1{-2.0 * s * s, std::sin(theta)};
  return em1 / Complex{0.0, theta};
}

}  // namespace

WaveAmplitudes solve_analytic(const HelmholtzProblem& problem, const OracleOptions& options) {
  if (!problem.a.is_piecewise_constant() || !problem.c.is_piecewise_constant())
    throw UnsupportedProblem("oracle: coefficients must be piecewise constant");
  if (!is_zero_source(problem.f))
    throw UnsupportedProblem("oracle: only problems with f = 0 have a travelling-wave solution");
  const Breakpoints& bp = problem.a.breakpoints();
  const std::size_t N = bp.num_segments();
  WaveAmplitudes amps;
  amps.z.assign(bp.values().begin(), bp.values().end());
  amps.omega = problem.omega;
  for (std::size_t l = 0; l < N; ++l) {
    amps.a.push_back(problem.a.segment(l).left_value());
    amps.c.push_back(problem.c.segment(l).left_value());
    amps.k.push_back(problem.omega / (std::sqrt(amps.a.back()) * amps.c.back()));
  }
  const auto sys = build_system<double, Complex>(problem, amps.z, amps.a, amps.c);
  const BandedMatrix matrix = to_banded(sys);
  std::vector<Complex> x;
  if (options.extended) {
    const auto big = build_system<BigReal, BigComplex>(problem, amps.z, amps.a, amps.c);
    const auto bx = solve_dense(big);
    x.resize(bx.size());
    for (std::size_t i = 0; i < bx.size(); ++i)
      x[i] = Complex(static_cast<double>(bx[i].real()), static_cast<double>(bx[i].imag()));
    amps.extended = true;
    if (options.estimate_condition) amps.condition = BandedLU(matrix).condition_estimate();
  } else {
    BandedLU lu(matrix);
    x = lu.solve(sys.rhs);
    if (options.estimate_condition) amps.condition = lu.condition_estimate();
  }
  amps.residual = relative_residual(matrix, x, sys.rhs);
  amps.ill_conditioned = options.estimate_condition &&
                         amps.condition * std::numeric_limits<double>::epsilon() > 1e-4;
  amps.A.resize(N);
  amps.B.resize(N);
  for (std::size_t l = 0; l < N; ++l) {
    amps.A[l] = x[2 * l];
    amps.B[l] = x[2 * l + 1];
  }
  return amps;
}

Complex eval(const WaveAmplitudes& amps, double x, Side side) {
  const std::size_t l = interval_of(amps, x, side);
  const double t = amps.k[l] * (x - amps.z[l]);
  const Complex e{std::cos(t), std::sin(t)};
  return amps.A[l] * e + amps.B[l] * std::conj(e);
}

Complex derivative(const WaveAmplitudes& amps, double x, Side side) {
  const std::size_t l = interval_of(amps, x, side);
  const double t = amps.k[l] * (x - amps.z[l]);
  const Complex e{std::cos(t), std::sin(t)};
  return Complex{0.0, amps.k[l]} * (amps.A[l] * e - amps.B[l] * std::conj(e));
}

SolutionNorms exact_norms(const WaveAmplitudes& amps) {
  double du2 = 0.0, adu2 = 0.0, wu2 = 0.0;
  for (std::size_t l = 0; l < amps.num_intervals(); ++l) {
    const double h = amps.z[l + 1] - amps.z[l];
    const double k = amps.k[l];
    const double both = std::norm(amps.A[l]) + std::norm(amps.B[l]);
    // int_0^h exp(2 i k s) ds = h (exp(2 i k h) - 1) / (2 i k h)
    const Complex F = h * phase_integral(2.0 * k * h);
    const double cross = 2.0 * std::real(amps.A[l] * std::conj(amps.B[l]) * F);
    const double d2 = k * k * std::max(both * h - cross, 0.0);
    const double w = amps.omega / amps.c[l];
    du2 += d2;
    adu2 += amps.a[l] * d2;
    wu2 += w * w * std::max(both * h + cross, 0.0);
  }
  SolutionNorms out;
  out.du = std::sqrt(du2);
  out.wu = std::sqrt(wu2);
  out.energy = std::sqrt(adu2 + wu2);
  return out;
}

}  // namespace helmlab
