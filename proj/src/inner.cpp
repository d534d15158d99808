#include "innerfun/inner.hpp"

#include <cmath>

namespace innerfun {

long ZeroSet::total_multiplicity() const {
  long n = 0;
  for (const auto& z : zeros_) n += z.multiplicity;
  return n;
}

void ZeroSet::add_disc(const DiscPoint& p, int mult) {
  if (model_ != Model::disc)
    throw std::invalid_argument("ZeroSet: disc zero added to half-plane set");
  if (mult < 1) throw std::invalid_argument("ZeroSet: multiplicity must be >= 1");
  zeros_.push_back({p.value(), p.boundary_gap(), mult});
}

void ZeroSet::add_half_plane(const HalfPlanePoint& p, int mult) {
  if (model_ != Model::half_plane)
    throw std::invalid_argument("ZeroSet: half-plane zero added to disc set");
  if (mult < 1) throw std::invalid_argument("ZeroSet: multiplicity must be >= 1");
  zeros_.push_back({p.value(), p.im(), mult});
}

void ZeroSet::add_raw(std::complex<double> pos, double gap, int mult) {
  if (mult < 1) throw std::invalid_argument("ZeroSet: multiplicity must be >= 1");
  if (model_ == Model::disc) {
    if (!(gap > 0.0) || gap > 1.0)
      throw std::invalid_argument("ZeroSet: disc zero needs boundary gap in (0, 1]");
  } else if (!(gap > 0.0)) {
    throw std::invalid_argument("ZeroSet: half-plane zero needs Im > 0");
  }
  zeros_.push_back({pos, gap, mult});
}

DiscPoint ZeroSet::disc_point(std::size_t i) const {
  if (model_ != Model::disc) throw std::logic_error("ZeroSet: not a disc-model set");
  const Zero& z = zeros_.at(i);
  return DiscPoint::from_polar_gap(z.angle(), z.boundary_gap);
}

HalfPlanePoint ZeroSet::half_plane_point(std::size_t i) const {
  if (model_ != Model::half_plane) throw std::logic_error("ZeroSet: not a half-plane set");
  const Zero& z = zeros_.at(i);
  return HalfPlanePoint(z.position.real(), z.position.imag());
}

void ZeroSet::set_tail(TailBound tb) {
  if (tb.blaschke_sum < 0.0) throw std::invalid_argument("ZeroSet: tail bound must be >= 0");
  tail_ = tb;
}

double ZeroSet::blaschke_sum() const {
  double s = 0.0;
  for (const auto& z : zeros_) s += z.multiplicity * z.boundary_gap;
  return s;
}

ZeroSet to_disc(const ZeroSet& zs) {
  if (zs.model() == Model::disc) return zs;
  ZeroSet out(Model::disc);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    DiscPoint p = cayley(zs.half_plane_point(i));
    out.add_disc(p, zs.zeros()[i].multiplicity);
  }
  if (zs.tail()) out.set_tail(*zs.tail());
  out.metadata() = zs.metadata();
  return out;
}

ZeroSet to_half_plane(const ZeroSet& zs) {
  if (zs.model() == Model::half_plane) return zs;
  ZeroSet out(Model::half_plane);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    HalfPlanePoint p = cayley_inverse(zs.disc_point(i));
    out.add_half_plane(p, zs.zeros()[i].multiplicity);
  }
  if (zs.tail()) out.set_tail(*zs.tail());
  out.metadata() = zs.metadata();
  return out;
}

SingularMeasure::SingularMeasure(std::vector<MeasureAtom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].mass > 0.0))
      throw std::invalid_argument("SingularMeasure: masses must be strictly positive");
    atoms_[i].angle = wrap_angle(atoms_[i].angle);
    for (std::size_t j = 0; j < i; ++j)
      if (atoms_[i].angle == atoms_[j].angle)
        throw std::invalid_argument("SingularMeasure: atom angles must be distinct");
  }
}

double SingularMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

std::complex<double> blaschke_factor(const DiscPoint& a, const DiscPoint& z) {
  const std::complex<double> av = a.value(), zv = z.value();
  if (av == std::complex<double>(0.0, 0.0)) return zv;  // b_0(z) := z
  const double mod_a = 1.0 - a.boundary_gap();
  return (mod_a / av) * (av - zv) / (1.0 - std::conj(av) * zv);
}

namespace {

// log rho(z, a) via log1p on 1-rho^2; exact 0 return marks a zero hit.
double log_rho(const PseudoMetrics& pm) {
  if (pm.rho == 0.0) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log1p(-pm.one_minus_rho_sq);
}

}  // namespace

double log_abs_blaschke(const ZeroSet& zs, const DiscPoint& z) {
  if (zs.model() != Model::disc)
    throw std::invalid_argument("log_abs_blaschke: disc-model zero set required");
  const double za = z.angle(), zg = z.boundary_gap();
  double acc = 0.0;
  for (const auto& zero : zs.zeros()) {
    const PseudoMetrics pm = pseudo_metrics(za, zg, zero.angle(), zero.boundary_gap);
    acc += zero.multiplicity * log_rho(pm);
  }
  return acc;
}

EvalResult eval_blaschke(const ZeroSet& zs, const DiscPoint& z, bool require_nonzero) {
  if (zs.model() != Model::disc)
    throw std::invalid_argument("eval_blaschke: disc-model zero set required");
  const double za = z.angle(), zg = z.boundary_gap();
  double logmod = 0.0;
  double arg = 0.0;
  bool zero_hit = false;
  for (const auto& zero : zs.zeros()) {
    const PseudoMetrics pm = pseudo_metrics(za, zg, zero.angle(), zero.boundary_gap);
    if (pm.rho == 0.0) {
      zero_hit = true;
      break;
    }
    logmod += zero.multiplicity * log_rho(pm);
    const DiscPoint a = DiscPoint::from_polar_gap(zero.angle(), zero.boundary_gap);
    arg += zero.multiplicity * std::arg(blaschke_factor(a, z));
  }
  EvalResult res;
  if (zero_hit) {
    if (require_nonzero)
      throw std::domain_error("eval_blaschke: z coincides with a zero");
    res.value = 0.0;
    res.modulus_lower = res.modulus_upper = 0.0;
    return res;
  }
  const double mod = std::exp(logmod);
  res.value = std::polar(mod, arg);
  res.modulus_upper = mod;
  res.modulus_lower = mod;
  if (zs.tail()) {
    const TailBound& tb = *zs.tail();
    // Tail factors certify -log rho(z,a) <= C(z)(1-|a|) only when every
    // omitted zero stays out of D_rho(z, 1/2).
    const double reach = (1.0 - zg + 0.5) / (1.0 + 0.5 * (1.0 - zg));
    if (tb.min_modulus > reach) {
      const double c = 2.0 * (2.0 - zg) / (zg * zg);
      res.modulus_lower = mod * std::exp(-c * tb.blaschke_sum);
    } else {
      res.modulus_lower = 0.0;
      res.tail_lower_widened = true;
    }
  }
  return res;
}

std::complex<double> eval_singular(const SingularMeasure& mu, const DiscPoint& z) {
  std::complex<double> expo = 0.0;
  const std::complex<double> zv = z.value();
  for (const auto& atom : mu.atoms()) {
    const std::complex<double> xi = std::polar(1.0, atom.angle);
    expo -= atom.mass * (xi + zv) / (xi - zv);
  }
  return std::exp(expo);
}

double poisson(const SingularMeasure& mu, const DiscPoint& z) {
  const double gap = z.boundary_gap();
  const double r = 1.0 - gap;
  const double one_minus_mod_sq = gap * (2.0 - gap);
  double s = 0.0;
  for (const auto& atom : mu.atoms()) {
    const double sn = std::sin(0.5 * wrap_angle(z.angle() - atom.angle));
    const double dist_sq = gap * gap + 4.0 * r * sn * sn;  // |xi - z|^2
    s += atom.mass * one_minus_mod_sq / dist_sq;
  }
  return s;
}

EvalResult eval_inner(const InnerFunction& f, const DiscPoint& z, bool require_nonzero) {
  EvalResult res = eval_blaschke(f.blaschke, z, require_nonzero);
  if (!f.singular.empty()) {
    const double p = poisson(f.singular, z);
    const std::complex<double> sv = eval_singular(f.singular, z);
    const double smod = std::exp(-p);
    res.value *= sv;
    res.modulus_lower *= smod;
    res.modulus_upper *= smod;
  }
  return res;
}

double zero_derivative_product(const ZeroSet& zs, std::size_t k) {
  if (zs.model() != Model::disc)
    throw std::invalid_argument("zero_derivative_product: disc-model set required");
  const auto& zeros = zs.zeros();
  if (k >= zeros.size()) throw std::out_of_range("zero_derivative_product: index");
  if (zeros[k].multiplicity > 1)
    throw std::domain_error("zero_derivative_product: zero is not simple");
  const double ka = zeros[k].angle(), kg = zeros[k].boundary_gap;
  double acc = 0.0;
  for (std::size_t j = 0; j < zeros.size(); ++j) {
    if (j == k) continue;
    const PseudoMetrics pm = pseudo_metrics(ka, kg, zeros[j].angle(), zeros[j].boundary_gap);
    if (pm.rho == 0.0) return 0.0;  // duplicate point listed separately
    acc += zeros[j].multiplicity * log_rho(pm);
  }
  return std::exp(acc);
}

JensenPair jensen_mean(const ZeroSet& zs, const DiscPoint& z, double r, int n_quad) {
  if (zs.model() != Model::disc)
    throw std::invalid_argument("jensen_mean: disc-model set required");
  if (!(r > 0.0) || r >= 1.0) throw std::invalid_argument("jensen_mean: r must lie in (0,1)");
  if (n_quad < 1) throw std::invalid_argument("jensen_mean: n_quad must be >= 1");

  const double za = z.angle(), zg = z.boundary_gap();
  double rhs = 0.0;
  for (const auto& zero : zs.zeros()) {
    const PseudoMetrics pm = pseudo_metrics(za, zg, zero.angle(), zero.boundary_gap);
    if (pm.rho == 0.0) throw std::domain_error("jensen_mean: B(z) = 0");
    if (std::abs(pm.rho - r) < 1e-9)
      throw std::domain_error("jensen_mean: zero within 1e-9 of the integration circle");
    rhs -= zero.multiplicity * log_rho(pm);  // -log|B(z)| part
    if (pm.rho < r) rhs -= zero.multiplicity * std::log(r / pm.rho);
  }

  double lhs = 0.0;
  for (int i = 0; i < n_quad; ++i) {
    const double theta = kTwoPi * i / n_quad;
    const DiscPoint node = mobius(z, DiscPoint(r * std::cos(theta), r * std::sin(theta)));
    lhs -= log_abs_blaschke(zs, node);
  }
  lhs /= n_quad;
  return {lhs, rhs};
}

}  // namespace innerfun
