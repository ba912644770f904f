#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace helmlab {

/// Which one-sided limit to take at a breakpoint.
enum class Side { left, right };

/// Declared sign of the derivative on the open segment.
enum class SignTag { nonpositive_derivative, positive_derivative, zero };

/// Strictly increasing partition -L = z_0 < z_1 < ... < z_N = L.
class Breakpoints {
 public:
  explicit Breakpoints(std::vector<double> values);

  double half_length() const { return z_.back(); }
  std::size_t num_segments() const { return z_.size() - 1; }
  std::size_t size() const { return z_.size(); }
  double operator[](std::size_t j) const { return z_[j]; }
  std::span<const double> values() const { return z_; }

  /// Segment index (0-based) holding x. At a breakpoint the side decides
  /// between the segment ending there (left) and the one starting there.
  std::size_t locate(double x, Side side) const;

  /// True if every point of this partition is also a point of `finer`.
  bool is_refined_by(const Breakpoints& finer) const;

  friend bool operator==(const Breakpoints&, const Breakpoints&) = default;

 private:
  std::vector<double> z_;
};

using RealFunction = std::function<double(double)>;

/// Restriction of a coefficient to one closed segment [x0, x1].
///
/// Constant and linear segments are stored by value; smooth segments carry an
/// evaluator and its derivative in global coordinates together with the
/// declared sign of the derivative.
class Segment {
 public:
  enum class Kind { constant, linear, smooth };

  static Segment constant(double value);
  static Segment linear(double left_value, double right_value);
  static Segment smooth(RealFunction value, RealFunction derivative, SignTag tag);

  Kind kind() const { return kind_; }
  SignTag sign_tag() const { return tag_; }
  bool increasing() const { return tag_ == SignTag::positive_derivative; }

  double value(double x, double x0, double x1) const;
  double derivative(double x, double x0, double x1) const;

  /// The same function viewed on a sub-segment [y0, y1] of [x0, x1].
  Segment restricted(double x0, double x1, double y0, double y1) const;

  /// Constant value or left/right values of a linear segment.
  double left_value() const { return v0_; }
  double right_value() const { return v1_; }

 private:
  Segment() = default;
  Kind kind_ = Kind::constant;
  SignTag tag_ = SignTag::zero;
  double v0_ = 0.0;
  double v1_ = 0.0;
  RealFunction f_;
  RealFunction df_;
};

/// Strictly positive piecewise-C^1 function on [-L, L] whose derivative is
/// one-signed on every segment. Immutable after construction.
class PiecewiseCoefficient {
 public:
  PiecewiseCoefficient(Breakpoints breakpoints, std::vector<Segment> segments);

  static PiecewiseCoefficient constant(double half_length, double value);
  static PiecewiseCoefficient piecewise_constant(std::vector<double> breakpoints,
                                                 std::span<const double> values);
  static PiecewiseCoefficient piecewise_linear(std::vector<double> breakpoints,
                                               std::span<const double> left_values,
                                               std::span<const double> right_values);

  const Breakpoints& breakpoints() const { return bp_; }
  std::span<const Segment> segments() const { return segs_; }
  const Segment& segment(std::size_t j) const { return segs_[j]; }
  std::size_t num_segments() const { return segs_.size(); }
  double half_length() const { return bp_.half_length(); }
  double min() const { return g_min_; }
  double max() const { return g_max_; }

  bool is_piecewise_constant() const;
  bool is_piecewise_linear() const;

  /// g^-(x) or g^+(x). Away from breakpoints both sides agree; at -L and L
  /// only the interior limit exists and is returned for either side.
  double eval(double x, Side side = Side::right) const;

  /// Regular part of the derivative, taken from the segment chosen by side.
  double pw_derivative(double x, Side side = Side::right) const;

  /// Value and derivative on segment j (0-based) at x in its closure.
  double segment_value(std::size_t j, double x) const;
  double segment_derivative(std::size_t j, double x) const;

  /// g^-(z_j) for 1 <= j <= N and g^+(z_j) for 0 <= j < N.
  double left_limit(std::size_t j) const;
  double right_limit(std::size_t j) const;

  /// [g]_{z_j}: g^-(z_j) - g^+(z_j) inside, -g^+(-L) at j = 0, g^-(L) at j = N.
  double jump(std::size_t j) const;

  /// Re-expresses the coefficient on a refinement of its partition.
  PiecewiseCoefficient refined(const Breakpoints& finer) const;

  /// Pointwise square, on the same partition.
  PiecewiseCoefficient squared() const;

  /// x -> g(-x).
  PiecewiseCoefficient mirrored() const;

 private:
  Breakpoints bp_;
  std::vector<Segment> segs_;
  double g_min_ = 0.0;
  double g_max_ = 0.0;
};

/// Sum of absolute interior jumps plus the integral of |pw derivative|.
double variation(const PiecewiseCoefficient& g);

/// Monotone envelope: increasing segments are kept, the others are replaced by
/// the constant g^+(z_{j-1}).
PiecewiseCoefficient tilde(const PiecewiseCoefficient& g);

/// Union of both partitions. Throws if the domains differ.
Breakpoints common_partition(const PiecewiseCoefficient& a, const PiecewiseCoefficient& c);

}  // namespace helmlab
