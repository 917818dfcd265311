#include <doctest.h>

#include <cmath>
#include <random>

#include "exptop/moebius.hpp"

using namespace exptop;

namespace {

bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

bool angle_close(double a, double b, double tol = 1e-9) { return circle_distance(a, b) <= tol; }

// Random element with entries of moderate size.
MoebiusMap random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c > 0.2) return MoebiusMap(a, b, c, d);
  }
}

}  // namespace

TEST_SUITE("moebius") {
  TEST_CASE("normalization fixes determinant and sign") {
    MoebiusMap m(-2.0, 0.0, 0.0, -8.0);
    CHECK(m.a() == doctest::Approx(0.5));
    CHECK(m.d() == doctest::Approx(2.0));
    CHECK(m.a() * m.d() - m.b() * m.c() == doctest::Approx(1.0));
    CHECK_THROWS_AS(MoebiusMap(1, 0, 0, -1), std::invalid_argument);
    CHECK_THROWS_AS(MoebiusMap(0, 0, 0, 0), std::invalid_argument);
  }

  TEST_CASE("composition with the identity is bit-identical") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      MoebiusMap t = random_map(rng);
      CHECK(compose(t, MoebiusMap::identity()) == t);
      CHECK(compose(MoebiusMap::identity(), t) == t);
      CHECK(compose(t, t.inverse()).approx_equal(MoebiusMap::identity()));
    }
  }

  TEST_CASE("gamma and tau have orders three and two") {
    CHECK(compose(gamma(), compose(gamma(), gamma())).approx_equal(MoebiusMap::identity()));
    CHECK(compose(tau(), tau()).approx_equal(MoebiusMap::identity()));
    CHECK_FALSE(compose(gamma(), gamma()).approx_equal(MoebiusMap::identity()));
  }

  TEST_CASE("boundary action of gamma cycles 1, 0, infinity") {
    CHECK(gamma().apply(BoundaryPoint::finite(1)).approx_equal(BoundaryPoint::finite(0)));
    CHECK(gamma().apply(BoundaryPoint::infinity()).approx_equal(BoundaryPoint::finite(1)));
    CHECK(gamma().apply(BoundaryPoint::finite(0)).is_infinite());
  }

  TEST_CASE("interior action") {
    CHECK(close(MoebiusMap::identity().apply(Complex{0, 1}), Complex{0, 1}));
    CHECK(close(sigma(2).apply(Complex{0, 1}), Complex{0, 2}));
    Complex w = std::polar(1.0, kPi / 3);
    CHECK(close(gamma().apply(w), w));
    CHECK_THROWS_AS(gamma().apply(Complex{1, 0}), std::domain_error);
    CHECK_THROWS_AS(gamma().apply(Complex{1, -1}), std::domain_error);
  }

  TEST_CASE("frames of the named elements") {
    Frame id = frame(MoebiusMap::identity());
    CHECK(close(id.z, Complex{0, 1}));
    CHECK(id.theta == doctest::Approx(0.0));
    Frame t = frame(tau());
    CHECK(close(t.z, Complex{0, 1}));
    CHECK(angle_close(t.theta, kPi));
    Frame s = frame(sigma(2));
    CHECK(close(s.z, Complex{0, 2}));
    CHECK(angle_close(s.theta, 0.0));
  }

  TEST_CASE("frame agrees with direct evaluation of T(i) and T'(i)") {
    std::mt19937_64 rng(11);
    const Complex i{0, 1};
    for (int k = 0; k < 200; ++k) {
      MoebiusMap t = random_map(rng);
      Complex value = (t.a() * i + t.b()) / (t.c() * i + t.d());
      Complex deriv = 1.0 / ((t.c() * i + t.d()) * (t.c() * i + t.d()));
      Frame f = frame(t);
      CHECK(close(f.z, value, 1e-10));
      CHECK(angle_close(f.theta, std::arg(deriv)));
      CHECK(from_frame(f).approx_equal(t, 1e-9));
    }
  }

  TEST_CASE("relations among tau and sigma") {
    CHECK(sigma(1).approx_equal(MoebiusMap::identity()));
    CHECK(compose(tau(), compose(sigma(3), tau())).approx_equal(sigma(1.0 / 3.0)));
    CHECK(compose(sigma(2), sigma(5)).approx_equal(sigma(10)));
    CHECK_THROWS_AS(sigma(0), std::invalid_argument);
    CHECK_THROWS_AS(sigma(-1), std::invalid_argument);
  }

  TEST_CASE("frame equivariance under gamma and tau") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
      MoebiusMap t = random_map(rng);
      Frame f = frame(t);
      Frame g = frame(compose(gamma(), t));
      CHECK(close(g.z, gamma().apply(f.z), 1e-9));
      CHECK(angle_close(g.theta, f.theta - 2 * std::arg(f.z)));
      Frame h = frame(compose(tau(), t));
      CHECK(close(h.z, -1.0 / f.z, 1e-9));
      CHECK(angle_close(h.theta, f.theta - 2 * std::arg(f.z)));
    }
  }

  TEST_CASE("gamma is the product of two reflections") {
    // R2 inverts in the unit circle, R1 reflects in Re z = 1/2.
    auto r1 = [](Complex z) { return 1.0 - std::conj(z); };
    auto r2 = [](Complex z) { return z / std::norm(z); };
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(-3, 3), im(0.05, 3);
    for (int k = 0; k < 200; ++k) {
      Complex z{re(rng), im(rng)};
      CHECK(close(gamma().apply(z), r1(r2(z)), 1e-12));
    }
  }

  TEST_CASE("circle rotation moves frames along the fibre") {
    for (double zeta : {0.3, 1.0, 2.5}) {
      Frame f = frame(circle_rotation(zeta));
      CHECK(close(f.z, Complex{0, 1}));
      CHECK(angle_close(f.theta, zeta));
    }
  }

  TEST_CASE("boundary points are projective") {
    CHECK(BoundaryPoint(2, 4).approx_equal(BoundaryPoint(-1, -2)));
    CHECK(BoundaryPoint(1, 0).is_infinite());
    CHECK(BoundaryPoint(3, 6).value() == doctest::Approx(0.5));
    CHECK_THROWS_AS(BoundaryPoint(0, 0), std::invalid_argument);
  }
}
