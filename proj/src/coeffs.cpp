#include "helmlab/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "helmlab/error.hpp"
#include "helmlab/quadrature.hpp"

namespace helmlab {

namespace {

constexpr int kSignProbes = 64;

std::string describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Breakpoints

Breakpoints::Breakpoints(std::vector<double> values) : z_(std::move(values)) {
  if (z_.size() < 2) throw InvariantError("breakpoints: need at least two points (N >= 1)");
  for (double z : z_)
    if (!std::isfinite(z)) throw InvariantError("breakpoints: non-finite value");
  const double L = z_.back();
  if (!(L > 0.0)) throw InvariantError("breakpoints: last point L must be positive");
  if (std::abs(z_.front() + L) > 1e-12 * L)
    throw InvariantError("breakpoints: first point must equal -L (got " + describe(z_.front()) +
                         ", L = " + describe(L) + ")");
  z_.front() = -L;
  for (std::size_t j = 1; j < z_.size(); ++j)
    if (!(z_[j] > z_[j - 1]))
      throw InvariantError("breakpoints: not strictly increasing at index " + std::to_string(j));
}

std::size_t Breakpoints::locate(double x, Side side) const {
  if (!(x >= z_.front() && x <= z_.back()))
    throw DomainError("point " + describe(x) + " outside [-L, L] with L = " + describe(z_.back()));
  const auto it = std::upper_bound(z_.begin(), z_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - z_.begin()) - 1;
  const std::size_t n = num_segments();
  if (k >= n) return n - 1;
  if (side == Side::left && k > 0 && x == z_[k]) return k - 1;
  return k;
}

bool Breakpoints::is_refined_by(const Breakpoints& finer) const {
  if (finer.z_.front() != z_.front() || finer.z_.back() != z_.back()) return false;
  return std::includes(finer.z_.begin(), finer.z_.end(), z_.begin(), z_.end());
}

// ---------------------------------------------------------------------------
// Segment

Segment Segment::constant(double value) {
  Segment s;
  s.kind_ = Kind::constant;
  s.tag_ = SignTag::zero;
  s.v0_ = s.v1_ = value;
  return s;
}

Segment Segment::linear(double left_value, double right_value) {
  Segment s;
  s.kind_ = Kind::linear;
  s.v0_ = left_value;
  s.v1_ = right_value;
  if (right_value > left_value)
    s.tag_ = SignTag::positive_derivative;
  else if (right_value < left_value)
    s.tag_ = SignTag::nonpositive_derivative;
  else
    s.tag_ = SignTag::zero;
  return s;
}

Segment Segment::smooth(RealFunction value, RealFunction derivative, SignTag tag) {
  if (!value || !derivative) throw InvalidArgument("smooth segment needs value and derivative");
  Segment s;
  s.kind_ = Kind::smooth;
  s.tag_ = tag;
  s.f_ = std::move(value);
  s.df_ = std::move(derivative);
  return s;
}

double Segment::value(double x, double x0, double x1) const {
  switch (kind_) {
    case Kind::constant:
      return v0_;
    case Kind::linear:
      if (x == x1) return v1_;
      return v0_ + (v1_ - v0_) * ((x - x0) / (x1 - x0));
    case Kind::smooth:
      return f_(x);
  }
  return v0_;
}

double Segment::derivative(double x, double x0, double x1) const {
  switch (kind_) {
    case Kind::constant:
      return 0.0;
    case Kind::linear:
      return (v1_ - v0_) / (x1 - x0);
    case Kind::smooth:
      return df_(x);
  }
  return 0.0;
}

Segment Segment::restricted(double x0, double x1, double y0, double y1) const {
  if (kind_ == Kind::linear) return linear(value(y0, x0, x1), value(y1, x0, x1));
  return *this;
}

// ---------------------------------------------------------------------------
// PiecewiseCoefficient

PiecewiseCoefficient::PiecewiseCoefficient(Breakpoints breakpoints, std::vector<Segment> segments)
    : bp_(std::move(breakpoints)), segs_(std::move(segments)) {
  if (segs_.size() != bp_.num_segments())
    throw InvariantError("coefficient: " + std::to_string(segs_.size()) + " segments for " +
                         std::to_string(bp_.num_segments()) + " intervals");
  g_min_ = std::numeric_limits<double>::infinity();
  g_max_ = -g_min_;
  for (std::size_t j = 0; j < segs_.size(); ++j) {
    const double x0 = bp_[j], x1 = bp_[j + 1];
    const Segment& s = segs_[j];
    if (s.kind() == Segment::Kind::smooth) {
      // Validate the declared sign of the derivative at Chebyshev points.
      const double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
      std::vector<double> d(kSignProbes);
      double scale = 0.0;
      for (int k = 0; k < kSignProbes; ++k) {
        const double x = mid + half * std::cos((2 * k + 1) * std::numbers::pi / (2 * kSignProbes));
        d[k] = s.derivative(x, x0, x1);
        if (!std::isfinite(d[k]))
          throw InvariantError("coefficient: non-finite derivative on segment " + std::to_string(j));
        scale = std::max(scale, std::abs(d[k]));
      }
      const double tol = 1e-12 * scale;
      for (double dk : d) {
        const bool ok = s.sign_tag() == SignTag::positive_derivative      ? dk > -tol
                        : s.sign_tag() == SignTag::nonpositive_derivative ? dk <= tol
                                                                          : std::abs(dk) <= tol;
        if (!ok)
          throw InvariantError("coefficient: derivative probe contradicts the sign tag on segment " +
                               std::to_string(j));
      }
    }
    // One-signed derivative: the extremes sit at the segment ends.
    for (double v : {s.value(x0, x0, x1), s.value(x1, x0, x1)}) {
      if (!std::isfinite(v)) throw InvariantError("coefficient: non-finite value");
      g_min_ = std::min(g_min_, v);
      g_max_ = std::max(g_max_, v);
    }
  }
  if (!(g_min_ > 0.0))
    throw InvariantError("coefficient: values must be strictly positive (min " + describe(g_min_) +
                         ")");
}

PiecewiseCoefficient PiecewiseCoefficient::constant(double half_length, double value) {
  return PiecewiseCoefficient(Breakpoints({-half_length, half_length}), {Segment::constant(value)});
}

PiecewiseCoefficient PiecewiseCoefficient::piecewise_constant(std::vector<double> breakpoints,
                                                              std::span<const double> values) {
  std::vector<Segment> segs;
  segs.reserve(values.size());
  for (double v : values) segs.push_back(Segment::constant(v));
  return PiecewiseCoefficient(Breakpoints(std::move(breakpoints)), std::move(segs));
}

PiecewiseCoefficient PiecewiseCoefficient::piecewise_linear(std::vector<double> breakpoints,
                                                            std::span<const double> left_values,
                                                            std::span<const double> right_values) {
  if (left_values.size() != right_values.size())
    throw InvalidArgument("piecewise_linear: value lists differ in length");
  std::vector<Segment> segs;
  for (std::size_t j = 0; j < left_values.size(); ++j)
    segs.push_back(Segment::linear(left_values[j], right_values[j]));
  return PiecewiseCoefficient(Breakpoints(std::move(breakpoints)), std::move(segs));
}

bool PiecewiseCoefficient::is_piecewise_constant() const {
  return std::all_of(segs_.begin(), segs_.end(),
                     [](const Segment& s) { return s.kind() == Segment::Kind::constant; });
}

bool PiecewiseCoefficient::is_piecewise_linear() const {
  return std::all_of(segs_.begin(), segs_.end(),
                     [](const Segment& s) { return s.kind() != Segment::Kind::smooth; });
}

double PiecewiseCoefficient::segment_value(std::size_t j, double x) const {
  return segs_[j].value(x, bp_[j], bp_[j + 1]);
}

double PiecewiseCoefficient::segment_derivative(std::size_t j, double x) const {
  return segs_[j].derivative(x, bp_[j], bp_[j + 1]);
}

double PiecewiseCoefficient::eval(double x, Side side) const {
  return segment_value(bp_.locate(x, side), x);
}

double PiecewiseCoefficient::pw_derivative(double x, Side side) const {
  return segment_derivative(bp_.locate(x, side), x);
}

double PiecewiseCoefficient::left_limit(std::size_t j) const {
  if (j < 1 || j > segs_.size()) throw InvalidArgument("left_limit: index out of range");
  return segment_value(j - 1, bp_[j]);
}

double PiecewiseCoefficient::right_limit(std::size_t j) const {
  if (j >= segs_.size()) throw InvalidArgument("right_limit: index out of range");
  return segment_value(j, bp_[j]);
}

double PiecewiseCoefficient::jump(std::size_t j) const {
  const std::size_t n = segs_.size();
  if (j > n) throw InvalidArgument("jump: breakpoint index " + std::to_string(j) + " out of range");
  if (j == 0) return -right_limit(0);
  if (j == n) return left_limit(n);
  return left_limit(j) - right_limit(j);
}

PiecewiseCoefficient PiecewiseCoefficient::refined(const Breakpoints& finer) const {
  if (!bp_.is_refined_by(finer))
    throw InvalidArgument("refined: target partition does not contain the coefficient's breakpoints");
  std::vector<Segment> segs;
  segs.reserve(finer.num_segments());
  for (std::size_t k = 0; k < finer.num_segments(); ++k) {
    const double y0 = finer[k], y1 = finer[k + 1];
    const std::size_t j = bp_.locate(0.5 * (y0 + y1), Side::right);
    segs.push_back(segs_[j].restricted(bp_[j], bp_[j + 1], y0, y1));
  }
  return PiecewiseCoefficient(finer, std::move(segs));
}

PiecewiseCoefficient PiecewiseCoefficient::squared() const {
  std::vector<Segment> segs;
  segs.reserve(segs_.size());
  for (std::size_t j = 0; j < segs_.size(); ++j) {
    const Segment& s = segs_[j];
    if (s.kind() == Segment::Kind::constant) {
      segs.push_back(Segment::constant(s.left_value() * s.left_value()));
      continue;
    }
    const double x0 = bp_[j], x1 = bp_[j + 1];
    segs.push_back(Segment::smooth(
        [s, x0, x1](double x) {
          const double v = s.value(x, x0, x1);
          return v * v;
        },
        [s, x0, x1](double x) { return 2.0 * s.value(x, x0, x1) * s.derivative(x, x0, x1); },
        s.sign_tag()));
  }
  return PiecewiseCoefficient(bp_, std::move(segs));
}

PiecewiseCoefficient PiecewiseCoefficient::mirrored() const {
  const auto z = bp_.values();
  std::vector<double> mz(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) mz[j] = -z[z.size() - 1 - j];
  std::vector<Segment> segs;
  for (std::size_t k = segs_.size(); k-- > 0;) {
    const Segment& s = segs_[k];
    switch (s.kind()) {
      case Segment::Kind::constant:
        segs.push_back(s);
        break;
      case Segment::Kind::linear:
        segs.push_back(Segment::linear(s.right_value(), s.left_value()));
        break;
      case Segment::Kind::smooth: {
        const double x0 = bp_[k], x1 = bp_[k + 1];
        const SignTag tag = s.sign_tag() == SignTag::positive_derivative ? SignTag::nonpositive_derivative
                            : s.sign_tag() == SignTag::zero              ? SignTag::zero
                                                                         : SignTag::positive_derivative;
        segs.push_back(Segment::smooth([s, x0, x1](double x) { return s.value(-x, x0, x1); },
                                       [s, x0, x1](double x) { return -s.derivative(-x, x0, x1); },
                                       tag));
        break;
      }
    }
  }
  return PiecewiseCoefficient(Breakpoints(std::move(mz)), std::move(segs));
}

// ---------------------------------------------------------------------------
// Free functions

double variation(const PiecewiseCoefficient& g) {
  const std::size_t n = g.num_segments();
  double total = 0.0;
  for (std::size_t l = 1; l < n; ++l) total += std::abs(g.jump(l));
  const auto& bp = g.breakpoints();
  for (std::size_t j = 0; j < n; ++j) {
    const Segment& s = g.segment(j);
    switch (s.kind()) {
      case Segment::Kind::constant:
        break;
      case Segment::Kind::linear:
        total += std::abs(s.right_value() - s.left_value());
        break;
      case Segment::Kind::smooth:
        total += quad::adaptive([&](double x) { return std::abs(g.segment_derivative(j, x)); },
                                bp[j], bp[j + 1], 1e-10);
        break;
    }
  }
  return total;
}

PiecewiseCoefficient tilde(const PiecewiseCoefficient& g) {
  std::vector<Segment> segs;
  segs.reserve(g.num_segments());
  for (std::size_t j = 0; j < g.num_segments(); ++j) {
    const Segment& s = g.segment(j);
    if (s.increasing())
      segs.push_back(s);
    else
      segs.push_back(Segment::constant(g.right_limit(j)));
  }
  return PiecewiseCoefficient(g.breakpoints(), std::move(segs));
}

Breakpoints common_partition(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c) {
  const double La = a.half_length(), Lc = c.half_length();
  if (std::abs(La - Lc) > 1e-12 * std::max(La, Lc))
    throw InvalidArgument("common_partition: coefficients live on different domains");
  std::vector<double> z;
  const auto za = a.breakpoints().values(), zc = c.breakpoints().values();
  std::set_union(za.begin(), za.end() - 1, zc.begin() + 1, zc.end() - 1, std::back_inserter(z));
  z.push_back(La);
  z.erase(std::unique(z.begin(), z.end()), z.end());
  return Breakpoints(std::move(z));
}

}  // namespace helmlab
