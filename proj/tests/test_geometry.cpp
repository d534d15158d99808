#include <doctest.h>

#include <cmath>
#include <random>

#include "innerfun/geometry.hpp"

using namespace innerfun;

namespace {

std::mt19937_64 rng(20240811);

double runif(double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

DiscPoint random_point(double max_mod = 0.98) {
  const double r = max_mod * std::sqrt(runif(0.0, 1.0));
  const double th = runif(0.0, kTwoPi);
  return DiscPoint(r * std::cos(th), r * std::sin(th));
}

// reference rho straight from the definition, plain complex arithmetic
double rho_ref(const DiscPoint& z, const DiscPoint& w) {
  const std::complex<double> zz = z.value(), ww = w.value();
  return std::abs((zz - ww) / (1.0 - std::conj(ww) * zz));
}

}  // namespace

TEST_CASE("disc point construction rejects the boundary") {
  CHECK_THROWS_AS(DiscPoint(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DiscPoint(0.8, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(DiscPoint::from_polar_gap(0.0, 0.0), std::invalid_argument);
  CHECK_NOTHROW(DiscPoint(0.999999, 0.0));
  const DiscPoint deep = DiscPoint::from_polar_gap(1.0, 0x1.0p-144);
  CHECK(deep.boundary_gap() == 0x1.0p-144);
}

TEST_CASE("pseudo distance basics") {
  const DiscPoint o = DiscPoint::origin();
  CHECK(pseudo_dist(o, DiscPoint(0.3, 0.4)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pseudo_dist(DiscPoint(0.5, 0.0), DiscPoint(0.5, 0.0)) == 0.0);
  for (int i = 0; i < 200; ++i) {
    const DiscPoint z = random_point(), w = random_point();
    CHECK(pseudo_dist(z, w) == doctest::Approx(rho_ref(z, w)).epsilon(1e-12));
    CHECK(pseudo_dist(z, w) == doctest::Approx(pseudo_dist(w, z)).epsilon(1e-14));
  }
}

TEST_CASE("hyperbolic distance") {
  const DiscPoint o = DiscPoint::origin();
  CHECK(hyp_dist(o, o) == 0.0);
  CHECK(hyp_dist(o, DiscPoint(0.5, 0.0)) == doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
  const double rho = std::tanh(1.0);
  CHECK(hyp_dist(o, DiscPoint(rho, 0.0)) == doctest::Approx(1.0).epsilon(1e-13));
  // triangle inequality on random triples
  for (int i = 0; i < 500; ++i) {
    const DiscPoint a = random_point(), b = random_point(), c = random_point();
    CHECK(hyp_dist(a, c) <= hyp_dist(a, b) + hyp_dist(b, c) + 1e-10);
  }
}

TEST_CASE("mobius automorphism identities") {
  for (int i = 0; i < 300; ++i) {
    const DiscPoint a = random_point(), w = random_point();
    const DiscPoint im0 = mobius(a, DiscPoint::origin());
    CHECK(std::abs(im0.re() - a.re()) < 1e-13);
    CHECK(std::abs(im0.im() - a.im()) < 1e-13);
    CHECK(pseudo_dist(mobius(a, a), DiscPoint::origin()) < 1e-13);
    // involution
    const DiscPoint back = mobius(a, mobius(a, w));
    CHECK(std::abs(back.re() - w.re()) < 1e-12);
    CHECK(std::abs(back.im() - w.im()) < 1e-12);
  }
}

TEST_CASE("mobius invariance of rho") {
  for (int i = 0; i < 1000; ++i) {
    const DiscPoint a = random_point(), z = random_point(), w = random_point();
    const double before = pseudo_dist(z, w);
    const double after = pseudo_dist(mobius(a, z), mobius(a, w));
    CHECK(std::abs(before - after) < 1e-12);
  }
}

TEST_CASE("cayley convention and round trips") {
  const DiscPoint at_i = cayley(HalfPlanePoint(0.0, 1.0));
  CHECK(std::abs(at_i.re()) < 1e-15);
  CHECK(std::abs(at_i.im()) < 1e-15);

  const HalfPlanePoint p(3.0, 2.0);
  const HalfPlanePoint back = cayley_inverse(cayley(p));
  CHECK(back.re() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(back.im() == doctest::Approx(2.0).epsilon(1e-14));

  // disc -> half-plane -> disc
  for (int i = 0; i < 200; ++i) {
    const DiscPoint w = random_point();
    const DiscPoint w2 = cayley(cayley_inverse(w));
    CHECK(std::abs(w2.re() - w.re()) < 1e-13);
    CHECK(std::abs(w2.im() - w.im()) < 1e-13);
  }
}

TEST_CASE("half-plane rho matches the disc formula through cayley") {
  CHECK(pseudo_dist(HalfPlanePoint(0, 1), HalfPlanePoint(0, 2)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  for (int i = 0; i < 500; ++i) {
    const HalfPlanePoint z(runif(-5, 5), runif(0.01, 5));
    const HalfPlanePoint w(runif(-5, 5), runif(0.01, 5));
    const double direct = pseudo_dist(z, w);
    const double through = pseudo_dist(cayley(z), cayley(w));
    CHECK(std::abs(direct - through) < 1e-12);
  }
}

TEST_CASE("carleson box membership") {
  CHECK(box_contains(CarlesonBox(0.0, 0.1, 1.0), DiscPoint(0.95, 0.0)));
  CHECK_FALSE(box_contains(CarlesonBox(0.0, 0.1, 0.1), DiscPoint(0.95, 0.0)));
  // strict boundary: depth exactly delta*h is outside
  CHECK_FALSE(box_contains(CarlesonBox(0.0, 0.25, 1.0), DiscPoint(0.75, 0.0)));
  // angular wrap
  CHECK(box_contains(CarlesonBox(kPi, 0.2, 1.0), DiscPoint(-0.9 * std::cos(0.1), 0.9 * std::sin(0.1))));

  SUBCASE("monotone in delta") {
    for (int i = 0; i < 200; ++i) {
      const DiscPoint z = random_point(0.999);
      const double theta = runif(-kPi, kPi), h = runif(0.01, kPi);
      const double d_small = runif(0.01, 0.5), d_big = runif(0.5, 1.0);
      if (box_contains(CarlesonBox(theta, h, d_small), z))
        CHECK(box_contains(CarlesonBox(theta, h, d_big), z));
    }
  }

  SUBCASE("Q(theta,h,1) sandwiched by arc squares on a grid") {
    const double h = 0.3;
    const CarlesonBox q(0.0, h, 1.0);
    const Arc half_arc(0.0, h / 2), double_arc_(0.0, h);
    for (double r = 0.5; r < 1.0; r += 0.016)
      for (double th = -0.7; th < 0.7; th += 0.013) {
        const DiscPoint z(r * std::cos(th), r * std::sin(th));
        const bool in_q = box_contains(q, z);
        const bool in_small =
            half_arc.contains_angle(th) && 1.0 - z.modulus() < 2 * half_arc.half_length;
        const bool in_big =
            double_arc_.contains_angle(th) && 1.0 - z.modulus() < 2 * double_arc_.half_length;
        if (in_small) CHECK(in_q);
        if (in_q) CHECK(in_big);
      }
  }
}

TEST_CASE("dyadic arcs") {
  CHECK_THROWS_AS(DyadicArc(3, 8), std::invalid_argument);
  CHECK_THROWS_AS(DyadicArc(-1, 0), std::invalid_argument);

  const DyadicArc d(3, 0);
  const Arc a = dyadic_geometry(d);
  CHECK(a.half_length == doctest::Approx(kPi / 8));
  CHECK(a.center_angle == doctest::Approx(kPi / 8));
  const DiscPoint z = top_center(d);
  CHECK(z.boundary_gap() == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(z.angle() == doctest::Approx(kPi / 8));

  const Arc twice = double_arc(a);
  CHECK(twice.center_angle == doctest::Approx(a.center_angle));
  CHECK(twice.half_length == doctest::Approx(2 * a.half_length));

  // arclength >= 1 has no anchor
  CHECK_THROWS_AS(top_center(DyadicArc(0, 0)), std::domain_error);
  CHECK_THROWS_AS(top_center(DyadicArc(2, 1)), std::domain_error);
  CHECK_NOTHROW(top_center(DyadicArc(3, 5)));
}
