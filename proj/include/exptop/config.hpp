#pragma once

// Finite subsets of the circle (points of exp_3(S^1)), their chart
// coordinates on the strata C_1, C_2, C_3, coalescence limits, sampled loops
// and the winding diagnostic used to identify the knot type of exp_1.

#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "exptop/moebius.hpp"

namespace exptop {

inline constexpr double kDistinctTol = 1e-9;

/// A nonempty set of at most three points of the circle, stored as strictly
/// increasing angles in [0, 2pi). Points closer than the tolerance (in arc
/// length) are identified, which realizes the quotient map from tuples.
class FiniteSubset {
 public:
  static constexpr std::size_t kMaxSize = 3;

  explicit FiniteSubset(std::span<const double> angles, double tol = kDistinctTol);
  FiniteSubset(std::initializer_list<double> angles, double tol = kDistinctTol);

  std::span<const double> angles() const { return {points_.data(), size_}; }
  std::size_t size() const { return size_; }
  double operator[](std::size_t i) const { return points_[i]; }

  bool approx_equal(const FiniteSubset& other, double tol = kDistinctTol) const;

 private:
  std::array<double, kMaxSize> points_{};
  std::size_t size_ = 0;
};

/// alpha -> (sin(alpha/2) : cos(alpha/2)); alpha = 0 is 0 and alpha = pi is inf.
BoundaryPoint to_boundary(double alpha);
double from_boundary(const BoundaryPoint& x);

/// The Moebius map sending p, q, r to 0, 1, inf. The triple must be distinct
/// and positively cyclically ordered; otherwise std::invalid_argument.
MoebiusMap normalize_triple(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r);

/// A Moebius map sending p to 0 and r to inf (unique up to z -> lambda z).
MoebiusMap normalize_pair(const BoundaryPoint& p, const BoundaryPoint& r);

/// Point of the open Moebius band C_2(S^1): phi in (0, pi/2], theta in [0, 2pi)
/// (in [0, pi) on the core phi = pi/2).
struct C2Coord {
  double phi;
  double theta;
};

/// Point of C_3(S^1) = PSL(2,R)/Gamma, the representative of the Gamma-orbit
/// lying in the closed lens {|z| <= 1, |z - 1| <= 1} bounded by the geodesics
/// from e^{i pi/3} to 0 and to 1.
struct C3Coord {
  Complex z;
  double theta;
};

struct C1Coord {
  double alpha;
};

using Exp3Coord = std::variant<C1Coord, C2Coord, C3Coord>;

/// Number of points in the subset a chart coordinate came from.
int stratum(const Exp3Coord& c);

/// (phi, theta) of the pair chart before the tau identification: phi = arg xi(i)
/// in (0, pi) for xi = normalize_pair(p, r).
C2Coord c2_chart_raw(const BoundaryPoint& p, const BoundaryPoint& r);

/// Identification (phi, theta) ~ (pi - phi, theta - 2 phi) reduced to phi <= pi/2.
C2Coord canonical_c2(C2Coord raw, double tol = kDistinctTol);

C2Coord c2_coord(const FiniteSubset& s);

/// gamma acting on frames: (z, theta) -> (gamma(z), theta - 2 arg z).
Frame gamma_action(const Frame& f);

/// The three frames of normalize_triple over the cyclic orderings of s,
/// in the order xi, gamma xi, gamma^2 xi.
std::array<Frame, 3> c3_orbit(const FiniteSubset& s);

/// Picks the lens representative of a Gamma-orbit. Boundary ties go to the
/// smaller real part, then the smaller theta.
C3Coord canonical_c3(const std::array<Frame, 3>& orbit, double tol = kDistinctTol);

C3Coord c3_coord(const FiniteSubset& s);

Exp3Coord exp3_coord(const FiniteSubset& s);

/// Chart inverses.
FiniteSubset c2_subset(const C2Coord& c);
FiniteSubset c3_subset(const C3Coord& c);

/// max-min arc distance.
double hausdorff_distance(const FiniteSubset& s, const FiniteSubset& t);

FiniteSubset rotate(double zeta, const FiniteSubset& s);

/// Limit of the pair chart as p -> r: xi(i) tends to the boundary point 1
/// while arg xi'(i) stays at `direction` on either side of r.
struct PairLimit {
  Complex limit_point;
  double direction;
};

PairLimit pair_coalescence_limit(const BoundaryPoint& r);

/// (i - p)/(i - r) for finite p, r.
Complex pair_xi_at_i(double p, double r);

/// Path of xi(i) for xi = normalize_triple(p, q, r) as q runs over the
/// positively oriented arc from p to r.
class TriplePath {
 public:
  /// Throws std::invalid_argument if p == r or 1 + pr vanishes.
  TriplePath(double p, double r);

  double p() const { return p_; }
  double r() const { return r_; }

  /// (p - r)/(1 + pr).
  double slope() const { return slope_; }

  /// Lens-chart endpoint as q -> r: 0 for positive slope, 1 for negative.
  Complex endpoint() const;

  /// ((q - r)/(q - p)) (i - p)/(i - r). Throws when q is not strictly inside
  /// the arc.
  Complex xi_at_i(double q) const;

 private:
  double p_;
  double r_;
  double slope_;
};

TriplePath triple_coalescence_path(double p, double r);

/// Thrown for input sequences that do not converge to a single point.
class DivergentSequence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Limit in exp_1 of subsets whose points all converge to one angle.
Exp3Coord edge_collapse_limit(std::span<const FiniteSubset> sequence, double tol = 1e-6);

struct SampledLoop {
  std::vector<FiniteSubset> samples;
  bool closed = false;
};

/// Rotation of s through a full turn: samples + 1 points, first equals last.
SampledLoop loop_a(const FiniteSubset& s, std::size_t samples);

/// Each point moves counterclockwise onto its cyclic successor.
SampledLoop loop_b(const FiniteSubset& s, std::size_t samples);

/// Antipodal pairs {alpha, alpha + pi}, alpha in [0, pi].
SampledLoop core_circle(std::size_t samples);

/// The locus phi = pi/2 - eps of the pair chart, theta running once from 0
/// down to -2pi (the pair turns counterclockwise).
/// Requires 0 < eps < pi/4.
SampledLoop boundary_torus_curve(double eps, std::size_t samples);

/// Fourier mode int_0^{2pi} d(y, S)^2 e^{i m y} dy of the squared distance
/// profile, m != 0. It is continuous on exp_3(S^1) and satisfies
/// f(rotate(z, S)) = e^{i m z} f(S).
Complex distance_profile_mode(int m, const FiniteSubset& s);

class UndersampledLoop : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Winding {
  int longitudinal;
  int meridional;
  bool operator==(const Winding&) const = default;
};

/// Windings of a closed loop about the two exceptional fibres. The weight-3
/// profile mode vanishes exactly on the antipodal core and serves as the
/// normal-disc angle around it (meridional winding); the weight-2 mode
/// vanishes exactly on the equilateral fibre and its winding counts turns
/// along the core (longitudinal winding). A loop lying on the antipodal core
/// has meridional winding 0.
Winding winding_diagnostic(const SampledLoop& loop);

}  // namespace exptop
