#pragma once

// Arithmetic of PSL(2,R): normalized 2x2 real matrices acting on the upper
// half-plane H and projectively on its boundary R u {inf}.

#include <array>
#include <complex>
#include <numbers>
#include <ostream>

namespace exptop {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2pi).
double wrap_angle(double a);

/// Reduces an angle to (-pi, pi].
double wrap_signed(double a);

/// Arc-length distance on the unit circle, in [0, pi].
double circle_distance(double a, double b);

/// A point of the boundary R u {inf}, stored as a projective pair (num : den)
/// scaled to unit length with the first nonzero coordinate positive.
class BoundaryPoint {
 public:
  BoundaryPoint(double num, double den);

  static BoundaryPoint finite(double x) { return {x, 1.0}; }
  static BoundaryPoint infinity() { return {1.0, 0.0}; }

  double num() const { return num_; }
  double den() const { return den_; }

  /// num/den; +inf when den is zero.
  double value() const;
  bool is_infinite(double tol = 1e-12) const;
  bool approx_equal(const BoundaryPoint& other, double tol = 1e-9) const;

 private:
  double num_;
  double den_;
};

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& x);

/// Element of PSL(2,R). The matrix is scaled to determinant one and the sign
/// is fixed so the first entry (in order a, b, c, d) that is not negligible is
/// positive.
class MoebiusMap {
 public:
  /// Throws std::invalid_argument when ad - bc <= 0.
  MoebiusMap(double a, double b, double c, double d);

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  const std::array<double, 4>& entries() const { return m_; }

  MoebiusMap inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }

  /// Projective action on the boundary.
  BoundaryPoint apply(const BoundaryPoint& x) const;

  /// (az + b)/(cz + d) for Im z > 0. Throws std::domain_error otherwise.
  Complex apply(Complex z) const;

  /// 1/(cz + d)^2.
  Complex derivative(Complex z) const;

  /// Entrywise comparison, allowing the global sign ambiguity of PSL(2,R).
  bool approx_equal(const MoebiusMap& other, double tol = 1e-12) const;

  bool operator==(const MoebiusMap&) const = default;

 private:
  std::array<double, 4> m_;
};

std::ostream& operator<<(std::ostream& os, const MoebiusMap& t);

/// s o t.
MoebiusMap compose(const MoebiusMap& s, const MoebiusMap& t);
inline MoebiusMap operator*(const MoebiusMap& s, const MoebiusMap& t) { return compose(s, t); }

/// Point of H x S^1: the image T(i) and the argument of T'(i).
struct Frame {
  Complex z;
  double theta;
};

/// T -> (T(i), arg T'(i)) with theta in [0, 2pi).
Frame frame(const MoebiusMap& t);

/// Inverse of frame(): the unique element with the given frame.
MoebiusMap from_frame(const Frame& f);

/// gamma(z) = (z - 1)/z, of order three, cycling 1 -> 0 -> inf -> 1.
MoebiusMap gamma();

/// tau(z) = -1/z, the involution swapping 0 and inf.
MoebiusMap tau();

/// sigma_lambda(z) = lambda z. Throws std::invalid_argument for lambda <= 0.
MoebiusMap sigma(double lambda);

/// Elliptic element fixing i that realizes rotation of the circle by zeta
/// under the boundary model alpha -> (sin(alpha/2) : cos(alpha/2)).
MoebiusMap circle_rotation(double zeta);

}  // namespace exptop
