#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace innerfun {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

/// Reduce an angle to (-pi, pi].
double wrap_angle(double theta);

/// Point of the open unit disc. Backed by (angle, boundary gap) so that
/// points exponentially close to the boundary keep full relative precision
/// in the gap 1-|z| even when the cartesian coordinates round onto the
/// circle. Construction of a point with modulus >= 1 is rejected; boundary
/// input is an error, not a clamp.
class DiscPoint {
 public:
  DiscPoint(double re, double im);

  /// Point (1-gap) e^{i angle}; gap is kept exactly (gap in (0, 1]).
  static DiscPoint from_polar_gap(double angle, double gap);
  static DiscPoint origin() { return from_polar_gap(0.0, 1.0); }

  double re() const { return re_; }
  double im() const { return im_; }
  std::complex<double> value() const { return {re_, im_}; }
  double angle() const { return angle_; }
  /// 1 - |z|, exact for polar-gap constructed points.
  double boundary_gap() const { return gap_; }
  double modulus() const { return 1.0 - gap_; }

 private:
  DiscPoint() = default;
  double re_ = 0, im_ = 0, angle_ = 0, gap_ = 1;
};

/// Point of the upper half-plane (im > 0 strictly).
class HalfPlanePoint {
 public:
  HalfPlanePoint(double re, double im);
  double re() const { return re_; }
  double im() const { return im_; }
  std::complex<double> value() const { return {re_, im_}; }

 private:
  double re_, im_;
};

/// Closed boundary arc, center/half-length in radians, 0 < half_length <= pi.
struct Arc {
  Arc(double center, double half);
  double center_angle;
  double half_length;
  double length() const { return 2.0 * half_length; }
  bool contains_angle(double theta) const;
};

/// Dyadic arc {e^{i theta}: k 2^-m <= theta/2pi < (k+1) 2^-m}.
struct DyadicArc {
  DyadicArc(int level, std::int64_t index);
  int level;            // m >= 0, capped at 40
  std::int64_t index;   // 0 <= k < 2^m
  double length_turns() const;  // 2^-m
  DyadicArc parent() const;
  bool operator==(const DyadicArc&) const = default;
};

Arc dyadic_geometry(const DyadicArc& d);
/// Arc with the same center and twice the length.
Arc double_arc(const Arc& a);
/// Anchor point over a dyadic arc: (1 - l) e^{i theta_c} with l the arclength
/// and theta_c the midpoint angle. Rejects arcs with l >= 1 (levels <= 2),
/// where the formula leaves the disc.
DiscPoint top_center(const DyadicArc& d);

/// Box Q(theta, h, delta) = {r e^{i theta'}: 0 < 1-r < delta h, |theta'-theta| < h}.
struct CarlesonBox {
  CarlesonBox(double theta, double h, double delta);
  double theta;
  double h;      // in (0, pi]; wider boxes would wrap past half the circle
  double delta;  // in (0, 1]
};

bool box_contains(const CarlesonBox& b, const DiscPoint& z);

/// rho and 1-rho^2 of a pair, computed from (angle, gap) coordinates.
/// Stable down to gaps ~1e-300.
struct PseudoMetrics {
  double rho;               // in [0, 1)
  double one_minus_rho_sq;  // in (0, 1]
};
PseudoMetrics pseudo_metrics(double angle1, double gap1, double angle2, double gap2);
PseudoMetrics pseudo_metrics(const DiscPoint& z, const DiscPoint& w);

/// rho(z, w) = |(z-w)/(1 - conj(w) z)|.
double pseudo_dist(const DiscPoint& z, const DiscPoint& w);
/// Half-plane pseudohyperbolic distance |(z-w)/(z-conj(w))|.
double pseudo_dist(const HalfPlanePoint& z, const HalfPlanePoint& w);

/// d_H(z, w) = atanh rho = (1/2) log((1+rho)/(1-rho)).
double hyp_dist(const DiscPoint& z, const DiscPoint& w);
double hyp_dist_from_metrics(const PseudoMetrics& pm);

/// Disc automorphism phi_a(w) = (a - w)/(1 - conj(a) w).
DiscPoint mobius(const DiscPoint& a, const DiscPoint& w);

/// Fixed model change z -> (z - i)/(z + i) and its inverse.
DiscPoint cayley(const HalfPlanePoint& p);
HalfPlanePoint cayley_inverse(const DiscPoint& w);

}  // namespace innerfun
