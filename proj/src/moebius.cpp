#include "exptop/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace exptop {

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_signed(double a) {
  double r = wrap_angle(a);
  if (r > kPi) r -= kTwoPi;
  return r;
}

double circle_distance(double a, double b) { return std::abs(wrap_signed(a - b)); }

BoundaryPoint::BoundaryPoint(double num, double den) {
  double n = std::hypot(num, den);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("BoundaryPoint: (0, 0) is not a projective point");
  }
  num /= n;
  den /= n;
  if (num < 0.0 || (num == 0.0 && den < 0.0)) {
    num = -num;
    den = -den;
  }
  num_ = num;
  den_ = den;
}

double BoundaryPoint::value() const {
  if (den_ == 0.0) return std::numeric_limits<double>::infinity();
  return num_ / den_;
}

bool BoundaryPoint::is_infinite(double tol) const { return std::abs(den_) <= tol; }

bool BoundaryPoint::approx_equal(const BoundaryPoint& other, double tol) const {
  // Unit representatives agree up to sign; the cross product detects both.
  return std::abs(num_ * other.den_ - den_ * other.num_) <= tol;
}

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& x) {
  if (x.is_infinite()) return os << "inf";
  return os << x.value();
}

MoebiusMap::MoebiusMap(double a, double b, double c, double d) {
  double ad = a * d;
  double bc = b * c;
  double det = ad - bc;
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw std::invalid_argument("MoebiusMap: determinant must be positive");
  }
  // Skip rescaling when det is already one to rounding, so normalizing a
  // normalized matrix is the identity on bits.
  double slack = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(ad) + std::abs(bc));
  if (std::abs(det - 1.0) > slack) {
    double s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
  }
  m_ = {a, b, c, d};
  double scale = 0.0;
  for (double x : m_) scale = std::max(scale, std::abs(x));
  for (double x : m_) {
    if (std::abs(x) > 1e-9 * scale) {
      if (x < 0.0) {
        for (double& y : m_) y = -y;
      }
      break;
    }
  }
}

BoundaryPoint MoebiusMap::apply(const BoundaryPoint& x) const {
  return {m_[0] * x.num() + m_[1] * x.den(), m_[2] * x.num() + m_[3] * x.den()};
}

Complex MoebiusMap::apply(Complex z) const {
  if (!(z.imag() > 0.0)) {
    throw std::domain_error("MoebiusMap::apply: point is not in the upper half-plane");
  }
  return (m_[0] * z + m_[1]) / (m_[2] * z + m_[3]);
}

Complex MoebiusMap::derivative(Complex z) const {
  Complex w = m_[2] * z + m_[3];
  return 1.0 / (w * w);
}

bool MoebiusMap::approx_equal(const MoebiusMap& other, double tol) const {
  bool same = true;
  bool opposite = true;
  for (int k = 0; k < 4; ++k) {
    same = same && std::abs(m_[k] - other.m_[k]) <= tol;
    opposite = opposite && std::abs(m_[k] + other.m_[k]) <= tol;
  }
  return same || opposite;
}

std::ostream& operator<<(std::ostream& os, const MoebiusMap& t) {
  return os << "[[" << t.a() << ", " << t.b() << "], [" << t.c() << ", " << t.d() << "]]";
}

MoebiusMap compose(const MoebiusMap& s, const MoebiusMap& t) {
  return {s.a() * t.a() + s.b() * t.c(), s.a() * t.b() + s.b() * t.d(),
          s.c() * t.a() + s.d() * t.c(), s.c() * t.b() + s.d() * t.d()};
}

Frame frame(const MoebiusMap& t) {
  const Complex i{0.0, 1.0};
  Complex w = t.c() * i + t.d();
  return {t.apply(i), wrap_angle(-2.0 * std::arg(w))};
}

MoebiusMap from_frame(const Frame& f) {
  if (!(f.z.imag() > 0.0)) {
    throw std::domain_error("from_frame: point is not in the upper half-plane");
  }
  // Affine map w -> x + y w composed with the rotation about i whose
  // derivative there is e^{i theta}.
  double sy = std::sqrt(f.z.imag());
  MoebiusMap affine{sy, f.z.real() / sy, 0.0, 1.0 / sy};
  return compose(affine, circle_rotation(f.theta));
}

MoebiusMap gamma() { return {1.0, -1.0, 1.0, 0.0}; }

MoebiusMap tau() { return {0.0, -1.0, 1.0, 0.0}; }

MoebiusMap sigma(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("sigma: lambda must be positive");
  return {lambda, 0.0, 0.0, 1.0};
}

MoebiusMap circle_rotation(double zeta) {
  double c = std::cos(zeta / 2.0);
  double s = std::sin(zeta / 2.0);
  return {c, s, -s, c};
}

}  // namespace exptop
