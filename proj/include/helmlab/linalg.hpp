#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace helmlab {

using Complex = std::complex<double>;

/// Square complex band matrix in LAPACK band storage with room for the
/// fill-in of a pivoted LU (leading dimension 2 kl + ku + 1, column major).
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, int kl, int ku);

  std::size_t size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }
  int leading_dimension() const { return ld_; }

  bool in_band(std::size_t i, std::size_t j) const;
  /// Entry (i, j); must be inside the band.
  Complex& at(std::size_t i, std::size_t j);
  /// Entry (i, j), zero outside the band.
  Complex get(std::size_t i, std::size_t j) const;

  std::vector<Complex> multiply(const std::vector<Complex>& x) const;
  double norm1() const;

  const std::vector<Complex>& storage() const { return ab_; }

 private:
  std::size_t n_;
  int kl_, ku_, ld_;
  std::vector<Complex> ab_;
};

/// LU with partial pivoting of a band matrix (zgbtrf) plus solves and the
/// 1-norm condition estimate (Hager-Higham iteration on the LU factors).
class BandedLU {
 public:
  /// Throws SingularSystem when an exact zero pivot appears.
  explicit BandedLU(const BandedMatrix& matrix);

  std::vector<Complex> solve(std::vector<Complex> rhs) const;

  /// Reciprocal 1-norm condition number estimate, 0 when numerically singular.
  double rcond() const;
  /// 1 / rcond, +inf for a numerically singular matrix.
  double condition_estimate() const;

  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  int kl_, ku_, ld_;
  double anorm_;
  std::vector<Complex> lu_;
  std::vector<int> ipiv_;
};

/// ||A x - b||_inf / ||b||_inf (or ||A x||_inf when b = 0).
double relative_residual(const BandedMatrix& matrix, const std::vector<Complex>& x,
                         const std::vector<Complex>& rhs);

}  // namespace helmlab
