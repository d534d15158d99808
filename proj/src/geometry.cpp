#include "innerfun/geometry.hpp"

#include <cmath>

namespace innerfun {

double wrap_angle(double theta) {
  double t = std::remainder(theta, kTwoPi);
  if (t <= -kPi) t += kTwoPi;
  return t;
}

DiscPoint::DiscPoint(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im))
    throw std::invalid_argument("DiscPoint: non-finite coordinates");
  const double r = std::hypot(re, im);
  if (r >= 1.0)
    throw std::invalid_argument("DiscPoint: modulus must be < 1 strictly");
  re_ = re;
  im_ = im;
  angle_ = (r == 0.0) ? 0.0 : std::atan2(im, re);
  gap_ = 1.0 - r;
}

DiscPoint DiscPoint::from_polar_gap(double angle, double gap) {
  if (!(gap > 0.0) || gap > 1.0)
    throw std::invalid_argument("DiscPoint: gap must lie in (0, 1]");
  DiscPoint p;
  p.angle_ = wrap_angle(angle);
  p.gap_ = gap;
  const double r = 1.0 - gap;  // may round, gap_ keeps the truth
  p.re_ = r * std::cos(p.angle_);
  p.im_ = r * std::sin(p.angle_);
  return p;
}

HalfPlanePoint::HalfPlanePoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !(im > 0.0))
    throw std::invalid_argument("HalfPlanePoint: requires im > 0");
}

Arc::Arc(double center, double half) : center_angle(wrap_angle(center)), half_length(half) {
  if (!(half > 0.0) || half > kPi)
    throw std::invalid_argument("Arc: half_length must lie in (0, pi]");
}

bool Arc::contains_angle(double theta) const {
  return std::abs(wrap_angle(theta - center_angle)) <= half_length;
}

DyadicArc::DyadicArc(int lev, std::int64_t idx) : level(lev), index(idx) {
  if (lev < 0 || lev > 40)
    throw std::invalid_argument("DyadicArc: level out of range [0, 40]");
  if (idx < 0 || idx >= (std::int64_t{1} << lev))
    throw std::invalid_argument("DyadicArc: index out of range [0, 2^level)");
}

double DyadicArc::length_turns() const { return std::ldexp(1.0, -level); }

DyadicArc DyadicArc::parent() const {
  if (level == 0) throw std::invalid_argument("DyadicArc: level-0 arc has no parent");
  return DyadicArc(level - 1, index / 2);
}

Arc dyadic_geometry(const DyadicArc& d) {
  const double len = kTwoPi * std::ldexp(1.0, -d.level);
  const double center = (static_cast<double>(d.index) + 0.5) * len;
  return Arc(center, len / 2.0);
}

Arc double_arc(const Arc& a) { return Arc(a.center_angle, 2.0 * a.half_length); }

DiscPoint top_center(const DyadicArc& d) {
  const double len = kTwoPi * std::ldexp(1.0, -d.level);
  if (len >= 1.0)
    throw std::domain_error("top_center: arclength >= 1, anchor undefined (need level >= 3)");
  const double center = (static_cast<double>(d.index) + 0.5) * len;
  return DiscPoint::from_polar_gap(center, len);
}

CarlesonBox::CarlesonBox(double th, double hh, double dd)
    : theta(wrap_angle(th)), h(hh), delta(dd) {
  if (!(h > 0.0) || h > kPi)
    throw std::invalid_argument("CarlesonBox: h must lie in (0, pi]");
  if (!(delta > 0.0) || delta > 1.0)
    throw std::invalid_argument("CarlesonBox: delta must lie in (0, 1]");
}

bool box_contains(const CarlesonBox& b, const DiscPoint& z) {
  const double depth = z.boundary_gap();
  if (!(depth > 0.0 && depth < b.delta * b.h)) return false;
  return std::abs(wrap_angle(z.angle() - b.theta)) < b.h;
}

PseudoMetrics pseudo_metrics(double angle1, double gap1, double angle2, double gap2) {
  const double r1 = 1.0 - gap1, r2 = 1.0 - gap2;
  const double s = std::sin(0.5 * wrap_angle(angle2 - angle1));
  const double cross = 4.0 * r1 * r2 * s * s;
  const double dr = gap2 - gap1;
  const double one_minus_r1r2 = gap1 + gap2 - gap1 * gap2;
  const double num_sq = dr * dr + cross;
  const double den_sq = one_minus_r1r2 * one_minus_r1r2 + cross;
  PseudoMetrics pm;
  pm.one_minus_rho_sq = (gap1 * (2.0 - gap1)) * (gap2 * (2.0 - gap2)) / den_sq;
  pm.rho = std::sqrt(num_sq / den_sq);
  if (pm.rho > 1.0) pm.rho = 1.0;
  return pm;
}

PseudoMetrics pseudo_metrics(const DiscPoint& z, const DiscPoint& w) {
  return pseudo_metrics(z.angle(), z.boundary_gap(), w.angle(), w.boundary_gap());
}

double pseudo_dist(const DiscPoint& z, const DiscPoint& w) {
  return pseudo_metrics(z, w).rho;
}

double pseudo_dist(const HalfPlanePoint& z, const HalfPlanePoint& w) {
  const double dx = z.re() - w.re();
  const double dy = z.im() - w.im();
  const double sy = z.im() + w.im();
  return std::sqrt((dx * dx + dy * dy) / (dx * dx + sy * sy));
}

double hyp_dist_from_metrics(const PseudoMetrics& pm) {
  // atanh(rho) = log(1+rho) - (1/2) log(1-rho^2), stable for rho near 1
  return std::log1p(pm.rho) - 0.5 * std::log(pm.one_minus_rho_sq);
}

double hyp_dist(const DiscPoint& z, const DiscPoint& w) {
  return hyp_dist_from_metrics(pseudo_metrics(z, w));
}

DiscPoint mobius(const DiscPoint& a, const DiscPoint& w) {
  const std::complex<double> av = a.value(), wv = w.value();
  const std::complex<double> num = av - wv;
  const std::complex<double> den = 1.0 - std::conj(av) * wv;
  const PseudoMetrics pm = pseudo_metrics(a, w);
  if (pm.rho == 0.0) return DiscPoint::origin();
  // direction from the complex quotient, magnitude from the stable kernel
  const double angle = std::arg(num / den);
  const double gap = pm.one_minus_rho_sq / (1.0 + pm.rho);
  return DiscPoint::from_polar_gap(angle, gap);
}

DiscPoint cayley(const HalfPlanePoint& p) {
  const std::complex<double> z = p.value();
  const std::complex<double> num = z - std::complex<double>(0, 1);
  const std::complex<double> den = z + std::complex<double>(0, 1);
  const double den_sq = std::norm(den);
  const double one_minus_mod_sq = 4.0 * p.im() / den_sq;
  if (!(one_minus_mod_sq > 0.0))
    throw std::invalid_argument("cayley: image reached the unit circle");
  const double mod = std::abs(num) / std::abs(den);
  const double gap = one_minus_mod_sq / (1.0 + std::min(mod, 1.0));
  if (std::norm(num) == 0.0) return DiscPoint::origin();
  return DiscPoint::from_polar_gap(std::arg(num / den), std::min(gap, 1.0));
}

HalfPlanePoint cayley_inverse(const DiscPoint& w) {
  // z = i (1+w)/(1-w) = (-2 Im w + i (1-|w|^2)) / |1-w|^2
  const double gap = w.boundary_gap();
  const double r = 1.0 - gap;
  const double s = std::sin(0.5 * w.angle());
  const double dist_sq = gap * gap + 4.0 * r * s * s;  // |1-w|^2
  if (dist_sq == 0.0) throw std::invalid_argument("cayley_inverse: w too close to 1");
  const double x = -2.0 * w.im() / dist_sq;
  const double y = gap * (2.0 - gap) / dist_sq;
  return HalfPlanePoint(x, y);
}

}  // namespace innerfun
