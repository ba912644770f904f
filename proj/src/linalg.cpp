#include "helmlab/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "helmlab/error.hpp"

namespace helmlab {

BandedMatrix::BandedMatrix(std::size_t n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), ab_(static_cast<std::size_t>(ld_) * n) {
  if (n == 0) throw InvalidArgument("banded matrix: empty system");
  if (kl < 0 || ku < 0) throw InvalidArgument("banded matrix: negative bandwidth");
}

bool BandedMatrix::in_band(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) return false;
  const auto d = static_cast<long>(i) - static_cast<long>(j);
  return d <= kl_ && -d <= ku_;
}

Complex& BandedMatrix::at(std::size_t i, std::size_t j) {
  if (!in_band(i, j))
    throw InvalidArgument("banded matrix: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") outside the band");
  return ab_[j * ld_ + (kl_ + ku_ + i - j)];
}

Complex BandedMatrix::get(std::size_t i, std::size_t j) const {
  if (!in_band(i, j)) return {0.0, 0.0};
  return ab_[j * ld_ + (kl_ + ku_ + i - j)];
}

std::vector<Complex> BandedMatrix::multiply(const std::vector<Complex>& x) const {
  if (x.size() != n_) throw InvalidArgument("banded matrix: vector length mismatch");
  std::vector<Complex> y(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t lo = j > static_cast<std::size_t>(ku_) ? j - ku_ : 0;
    const std::size_t hi = std::min(n_ - 1, j + kl_);
    for (std::size_t i = lo; i <= hi; ++i) y[i] += ab_[j * ld_ + (kl_ + ku_ + i - j)] * x[j];
  }
  return y;
}

double BandedMatrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t lo = j > static_cast<std::size_t>(ku_) ? j - ku_ : 0;
    const std::size_t hi = std::min(n_ - 1, j + kl_);
    double col = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) col += std::abs(ab_[j * ld_ + (kl_ + ku_ + i - j)]);
    best = std::max(best, col);
  }
  return best;
}

BandedLU::BandedLU(const BandedMatrix& matrix)
    : n_(matrix.size()),
      kl_(matrix.lower()),
      ku_(matrix.upper()),
      ld_(matrix.leading_dimension()),
      anorm_(matrix.norm1()),
      lu_(matrix.storage()),
      ipiv_(n_) {
  const auto n = static_cast<lapack_int>(n_);
  const lapack_int info =
      LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n, n, kl_, ku_, lu_.data(), ld_, ipiv_.data());
  if (info < 0) throw InvalidArgument("zgbtrf: bad argument " + std::to_string(-info));
  if (info > 0)
    throw SingularSystem("banded LU: zero pivot in column " + std::to_string(info) +
                         "; the system is singular");
}

std::vector<Complex> BandedLU::solve(std::vector<Complex> rhs) const {
  if (rhs.size() != n_) throw InvalidArgument("banded LU: right-hand side length mismatch");
  const auto n = static_cast<lapack_int>(n_);
  const lapack_int info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n, kl_, ku_, 1, lu_.data(), ld_,
                                         ipiv_.data(), rhs.data(), n);
  if (info != 0) throw InvalidArgument("zgbtrs: bad argument " + std::to_string(-info));
  return rhs;
}

double BandedLU::rcond() const {
  // Hager-Higham 1-norm estimate of inv(A) driven by plain zgbtrs solves.
  // zgbcon's scaled triangular solves degrade to O(n^2) on large ill-conditioned bands.
  if (anorm_ == 0.0) return 0.0;
  const auto n = static_cast<lapack_int>(n_);
  std::vector<Complex> v(n_), x(n_);
  double est = 0.0;
  lapack_int kase = 0;
  std::array<lapack_int, 3> isave{};
  for (;;) {
    LAPACKE_zlacn2(n, v.data(), x.data(), &est, &kase, isave.data());
    if (kase == 0) break;
    const char trans = kase == 1 ? 'N' : 'C';
    const lapack_int info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, trans, n, kl_, ku_, 1, lu_.data(), ld_,
                                           ipiv_.data(), x.data(), n);
    if (info != 0) throw InvalidArgument("zgbtrs: bad argument " + std::to_string(-info));
    for (const auto& xi : x) {
      if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag())) return 0.0;
    }
  }
  return est > 0.0 ? 1.0 / (anorm_ * est) : 0.0;
}

double BandedLU::condition_estimate() const {
  const double rc = rcond();
  return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

double relative_residual(const BandedMatrix& matrix, const std::vector<Complex>& x,
                         const std::vector<Complex>& rhs) {
  const auto ax = matrix.multiply(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    num = std::max(num, std::abs(ax[i] - rhs[i]));
    den = std::max(den, std::abs(rhs[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace helmlab
