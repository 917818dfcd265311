#include "exptop/config.hpp"

#include <algorithm>
#include <cmath>

namespace exptop {

namespace {

const Complex kI{0.0, 1.0};

// Increments of arg f larger than this are treated as aliased.
constexpr double kMaxArgStep = kPi / 2.0;
constexpr double kModeZeroTol = 1e-9;

double circular_mean(std::span<const double> angles) {
  double s = 0.0;
  double c = 0.0;
  for (double a : angles) {
    s += std::sin(a);
    c += std::cos(a);
  }
  return wrap_angle(std::atan2(s, c));
}

double diameter(const FiniteSubset& s) {
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) d = std::max(d, circle_distance(s[i], s[j]));
  }
  return d;
}

// Gaps between cyclically consecutive points; a singleton has one gap of 2pi.
std::array<double, 3> gaps(const FiniteSubset& s) {
  std::array<double, 3> g{};
  if (s.size() == 1) {
    g[0] = kTwoPi;
    return g;
  }
  for (std::size_t j = 0; j + 1 < s.size(); ++j) g[j] = s[j + 1] - s[j];
  g[s.size() - 1] = s[0] + kTwoPi - s[s.size() - 1];
  return g;
}

// int_0^L t^2 e^{ikt} dt
Complex square_moment(double k, double len) {
  Complex ik{0.0, k};
  Complex e = std::exp(ik * len);
  return e * (-kI * len * len / k + 2.0 * len / (k * k) + 2.0 * kI / (k * k * k)) -
         2.0 * kI / (k * k * k);
}

// int_0^g min(t, g - t)^2 e^{imt} dt
Complex gap_mode(int m, double g) {
  double k = static_cast<double>(m);
  return square_moment(k, g / 2.0) + std::exp(Complex{0.0, k * g}) * square_moment(-k, g / 2.0);
}

// Sum of wrapped increments of arg f along a closed loop, in turns.
int accumulate_turns(const std::vector<Complex>& values, const char* what) {
  double total = 0.0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    double step = wrap_signed(std::arg(values[j]) - std::arg(values[j - 1]));
    if (std::abs(step) > kMaxArgStep) {
      throw UndersampledLoop(std::string("winding_diagnostic: ") + what +
                             " angle increment too large; sample the loop more finely");
    }
    total += step;
  }
  double turns = total / kTwoPi;
  double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) {
    throw std::domain_error("winding_diagnostic: loop is not closed");
  }
  return static_cast<int>(rounded);
}

}  // namespace

FiniteSubset::FiniteSubset(std::span<const double> angles, double tol) {
  if (angles.empty()) throw std::invalid_argument("FiniteSubset: empty set");
  std::vector<double> a;
  a.reserve(angles.size());
  for (double x : angles) {
    if (!std::isfinite(x)) throw std::invalid_argument("FiniteSubset: non-finite angle");
    a.push_back(wrap_angle(x));
  }
  std::sort(a.begin(), a.end());
  std::vector<double> kept;
  for (double x : a) {
    if (kept.empty() || x - kept.back() > tol) kept.push_back(x);
  }
  if (kept.size() > 1 && kept.front() + kTwoPi - kept.back() <= tol) kept.pop_back();
  if (kept.size() > kMaxSize) {
    throw std::invalid_argument("FiniteSubset: more than three distinct points");
  }
  size_ = kept.size();
  std::copy(kept.begin(), kept.end(), points_.begin());
}

FiniteSubset::FiniteSubset(std::initializer_list<double> angles, double tol)
    : FiniteSubset(std::span<const double>(angles.begin(), angles.size()), tol) {}

bool FiniteSubset::approx_equal(const FiniteSubset& other, double tol) const {
  return size_ == other.size_ && hausdorff_distance(*this, other) <= tol;
}

BoundaryPoint to_boundary(double alpha) {
  return {std::sin(alpha / 2.0), std::cos(alpha / 2.0)};
}

double from_boundary(const BoundaryPoint& x) {
  return wrap_angle(2.0 * std::atan2(x.num(), x.den()));
}

MoebiusMap normalize_triple(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r) {
  // Rows are the linear forms vanishing at p and r, scaled so q goes to 1.
  double lambda = r.den() * q.num() - r.num() * q.den();
  double mu = p.den() * q.num() - p.num() * q.den();
  double pr = p.num() * r.den() - p.den() * r.num();
  constexpr double kCoincident = 1e-14;
  if (std::abs(lambda) < kCoincident || std::abs(mu) < kCoincident || std::abs(pr) < kCoincident) {
    throw std::invalid_argument("normalize_triple: points must be distinct");
  }
  if (lambda * mu * pr < 0.0) {
    throw std::invalid_argument("normalize_triple: points are not positively cyclically ordered");
  }
  return {lambda * p.den(), -lambda * p.num(), mu * r.den(), -mu * r.num()};
}

MoebiusMap normalize_pair(const BoundaryPoint& p, const BoundaryPoint& r) {
  double pr = p.num() * r.den() - p.den() * r.num();
  if (std::abs(pr) < 1e-14) throw std::invalid_argument("normalize_pair: points must be distinct");
  double mu = pr > 0.0 ? 1.0 : -1.0;
  return {p.den(), -p.num(), mu * r.den(), -mu * r.num()};
}

int stratum(const Exp3Coord& c) { return static_cast<int>(c.index()) + 1; }

C2Coord c2_chart_raw(const BoundaryPoint& p, const BoundaryPoint& r) {
  Frame f = frame(normalize_pair(p, r));
  return {std::arg(f.z), f.theta};
}

C2Coord canonical_c2(C2Coord raw, double tol) {
  if (std::abs(raw.phi - kPi / 2.0) <= tol) {
    return {kPi / 2.0, std::fmod(wrap_angle(raw.theta), kPi)};
  }
  if (raw.phi > kPi / 2.0) return {kPi - raw.phi, wrap_angle(raw.theta - 2.0 * raw.phi)};
  return {raw.phi, wrap_angle(raw.theta)};
}

C2Coord c2_coord(const FiniteSubset& s) {
  if (s.size() != 2) throw std::invalid_argument("c2_coord: subset must have two points");
  return canonical_c2(c2_chart_raw(to_boundary(s[0]), to_boundary(s[1])));
}

Frame gamma_action(const Frame& f) {
  return {gamma().apply(f.z), wrap_angle(f.theta - 2.0 * std::arg(f.z))};
}

std::array<Frame, 3> c3_orbit(const FiniteSubset& s) {
  if (s.size() != 3) throw std::invalid_argument("c3_coord: subset must have three points");
  std::array<BoundaryPoint, 3> b{to_boundary(s[0]), to_boundary(s[1]), to_boundary(s[2])};
  std::array<Frame, 3> orbit{};
  for (int k = 0; k < 3; ++k) {
    orbit[k] = frame(normalize_triple(b[k], b[(k + 1) % 3], b[(k + 2) % 3]));
  }
  return orbit;
}

C3Coord canonical_c3(const std::array<Frame, 3>& orbit, double tol) {
  // Excess over the lens; nonpositive exactly inside it.
  auto excess = [](Complex z) { return std::max(std::abs(z) - 1.0, std::abs(z - 1.0) - 1.0); };
  constexpr double kTieTol = 1e-12;
  double best_excess = excess(orbit[0].z);
  for (const Frame& f : orbit) best_excess = std::min(best_excess, excess(f.z));
  const Frame* best = nullptr;
  for (const Frame& f : orbit) {
    if (excess(f.z) > best_excess + kTieTol) continue;
    if (best == nullptr) {
      best = &f;
      continue;
    }
    double dre = f.z.real() - best->z.real();
    if (dre < -tol || (std::abs(dre) <= tol && f.theta < best->theta)) best = &f;
  }
  return {best->z, best->theta};
}

C3Coord c3_coord(const FiniteSubset& s) { return canonical_c3(c3_orbit(s)); }

Exp3Coord exp3_coord(const FiniteSubset& s) {
  switch (s.size()) {
    case 1:
      return C1Coord{s[0]};
    case 2:
      return c2_coord(s);
    default:
      return c3_coord(s);
  }
}

FiniteSubset c2_subset(const C2Coord& c) {
  MoebiusMap inv = from_frame({std::polar(1.0, c.phi), c.theta}).inverse();
  std::array<double, 2> pts{from_boundary(inv.apply(BoundaryPoint::finite(0.0))),
                            from_boundary(inv.apply(BoundaryPoint::infinity()))};
  return FiniteSubset(pts);
}

FiniteSubset c3_subset(const C3Coord& c) {
  MoebiusMap inv = from_frame({c.z, c.theta}).inverse();
  std::array<double, 3> pts{from_boundary(inv.apply(BoundaryPoint::finite(0.0))),
                            from_boundary(inv.apply(BoundaryPoint::finite(1.0))),
                            from_boundary(inv.apply(BoundaryPoint::infinity()))};
  return FiniteSubset(pts);
}

double hausdorff_distance(const FiniteSubset& s, const FiniteSubset& t) {
  auto directed = [](const FiniteSubset& from, const FiniteSubset& to) {
    double worst = 0.0;
    for (double x : from.angles()) {
      double nearest = kPi;
      for (double y : to.angles()) nearest = std::min(nearest, circle_distance(x, y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(s, t), directed(t, s));
}

FiniteSubset rotate(double zeta, const FiniteSubset& s) {
  std::array<double, 3> pts{};
  for (std::size_t i = 0; i < s.size(); ++i) pts[i] = s[i] + zeta;
  return FiniteSubset(std::span<const double>(pts.data(), s.size()));
}

PairLimit pair_coalescence_limit(const BoundaryPoint& r) {
  // xi'(i) = det / (r_den i - r_num)^2 with det > 0 on either side of r.
  return {Complex{1.0, 0.0}, wrap_angle(-2.0 * std::arg(Complex{-r.num(), r.den()}))};
}

Complex pair_xi_at_i(double p, double r) { return (kI - p) / (kI - r); }

TriplePath::TriplePath(double p, double r) : p_(p), r_(r) {
  if (!std::isfinite(p) || !std::isfinite(r) || p == r) {
    throw std::invalid_argument("triple_coalescence_path: need distinct finite p, r");
  }
  double denom = 1.0 + p * r;
  if (std::abs(denom) <= 1e-12 * std::max(1.0, std::abs(p * r))) {
    throw std::invalid_argument("triple_coalescence_path: 1 + pr = 0, the path is vertical");
  }
  slope_ = (p - r) / denom;
}

Complex TriplePath::endpoint() const { return slope_ > 0.0 ? Complex{0.0, 0.0} : Complex{1.0, 0.0}; }

Complex TriplePath::xi_at_i(double q) const {
  bool inside = p_ < r_ ? (p_ < q && q < r_) : (q > p_ || q < r_);
  if (!inside || !std::isfinite(q)) {
    throw std::invalid_argument("TriplePath::xi_at_i: q must lie strictly between p and r");
  }
  return ((q - r_) / (q - p_)) * (kI - p_) / (kI - r_);
}

TriplePath triple_coalescence_path(double p, double r) { return TriplePath(p, r); }

Exp3Coord edge_collapse_limit(std::span<const FiniteSubset> sequence, double tol) {
  if (sequence.empty()) throw std::invalid_argument("edge_collapse_limit: empty sequence");
  const FiniteSubset& last = sequence.back();
  if (diameter(last) > tol) {
    throw DivergentSequence("edge_collapse_limit: points do not coalesce");
  }
  if (sequence.size() >= 2) {
    const FiniteSubset& prev = sequence[sequence.size() - 2];
    if (hausdorff_distance(prev, last) > diameter(prev) + diameter(last) + tol) {
      throw DivergentSequence("edge_collapse_limit: clusters do not converge to one point");
    }
  }
  return C1Coord{circular_mean(last.angles())};
}

SampledLoop loop_a(const FiniteSubset& s, std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("loop_a: need at least one sample");
  SampledLoop loop{{}, true};
  loop.samples.reserve(samples + 1);
  for (std::size_t j = 0; j <= samples; ++j) {
    loop.samples.push_back(rotate(kTwoPi * static_cast<double>(j) / static_cast<double>(samples), s));
  }
  return loop;
}

SampledLoop loop_b(const FiniteSubset& s, std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("loop_b: need at least one sample");
  std::array<double, 3> g = gaps(s);
  SampledLoop loop{{}, true};
  loop.samples.reserve(samples + 1);
  for (std::size_t j = 0; j <= samples; ++j) {
    double t = static_cast<double>(j) / static_cast<double>(samples);
    std::array<double, 3> pts{};
    for (std::size_t i = 0; i < s.size(); ++i) pts[i] = s[i] + t * g[i];
    loop.samples.emplace_back(std::span<const double>(pts.data(), s.size()));
  }
  return loop;
}

SampledLoop core_circle(std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("core_circle: need at least one sample");
  SampledLoop loop{{}, true};
  loop.samples.reserve(samples + 1);
  for (std::size_t j = 0; j <= samples; ++j) {
    double alpha = kPi * static_cast<double>(j) / static_cast<double>(samples);
    loop.samples.push_back(FiniteSubset{alpha, alpha + kPi});
  }
  return loop;
}

SampledLoop boundary_torus_curve(double eps, std::size_t samples) {
  if (!(eps > 0.0 && eps < kPi / 4.0)) {
    throw std::invalid_argument("boundary_torus_curve: eps must lie in (0, pi/4)");
  }
  if (samples == 0) throw std::invalid_argument("boundary_torus_curve: need at least one sample");
  SampledLoop loop{{}, true};
  loop.samples.reserve(samples + 1);
  // theta decreases so that the pair rotates counterclockwise, like exp_1.
  for (std::size_t j = 0; j <= samples; ++j) {
    double theta = wrap_angle(-kTwoPi * static_cast<double>(j) / static_cast<double>(samples));
    loop.samples.push_back(c2_subset({kPi / 2.0 - eps, theta}));
  }
  return loop;
}

Complex distance_profile_mode(int m, const FiniteSubset& s) {
  if (m == 0) throw std::invalid_argument("distance_profile_mode: m must be nonzero");
  std::array<double, 3> g = gaps(s);
  Complex total{0.0, 0.0};
  for (std::size_t j = 0; j < s.size(); ++j) {
    total += std::exp(Complex{0.0, m * s[j]}) * gap_mode(m, g[j]);
  }
  return total;
}

Winding winding_diagnostic(const SampledLoop& loop) {
  if (!loop.closed || loop.samples.size() < 2) {
    throw std::invalid_argument("winding_diagnostic: need a closed loop");
  }
  if (!loop.samples.front().approx_equal(loop.samples.back(), 1e-7)) {
    throw std::invalid_argument("winding_diagnostic: loop endpoints differ");
  }
  std::vector<Complex> along;
  std::vector<Complex> around;
  along.reserve(loop.samples.size());
  around.reserve(loop.samples.size());
  std::size_t on_core = 0;
  for (const FiniteSubset& s : loop.samples) {
    Complex f2 = distance_profile_mode(2, s);
    Complex f3 = distance_profile_mode(3, s);
    if (std::abs(f2) <= kModeZeroTol) {
      throw std::domain_error("winding_diagnostic: loop meets the equilateral fibre");
    }
    if (std::abs(f3) <= kModeZeroTol) ++on_core;
    along.push_back(f2);
    around.push_back(f3);
  }
  Winding w{accumulate_turns(along, "longitudinal"), 0};
  if (on_core == loop.samples.size()) return w;
  if (on_core != 0) throw std::domain_error("winding_diagnostic: loop meets the antipodal core");
  w.meridional = accumulate_turns(around, "meridional");
  return w;
}

}  // namespace exptop
