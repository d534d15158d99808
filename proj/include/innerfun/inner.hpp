#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "innerfun/geometry.hpp"

#include <nlohmann/json.hpp>

namespace innerfun {

using Json = nlohmann::ordered_json;

enum class Model { disc, half_plane };

/// One zero with multiplicity. For the disc model boundary_gap keeps 1-|z|
/// at full relative precision (the coordinates alone collapse onto the
/// circle once 1-|z| drops below machine epsilon).
struct Zero {
  std::complex<double> position;
  double boundary_gap = 0.0;  // disc: 1-|z|; half-plane: Im z
  int multiplicity = 1;

  double angle() const { return std::atan2(position.imag(), position.real()); }
};

/// Certified bound on the omitted tail of a truncated Blaschke product.
struct TailBound {
  double blaschke_sum = 0.0;  // bound on sum of mult*(1-|a|) over omitted zeros
  double min_modulus = 0.0;   // all omitted zeros satisfy |a| >= min_modulus
};

/// Finite multiset of zeros plus optional certified tail data.
class ZeroSet {
 public:
  ZeroSet() : model_(Model::disc) {}
  explicit ZeroSet(Model m) : model_(m) {}

  Model model() const { return model_; }
  const std::vector<Zero>& zeros() const { return zeros_; }
  bool empty() const { return zeros_.empty(); }
  std::size_t size() const { return zeros_.size(); }
  long total_multiplicity() const;

  void add_disc(const DiscPoint& p, int mult = 1);
  void add_half_plane(const HalfPlanePoint& p, int mult = 1);
  void add_raw(std::complex<double> pos, double gap, int mult);

  DiscPoint disc_point(std::size_t i) const;
  HalfPlanePoint half_plane_point(std::size_t i) const;

  const std::optional<TailBound>& tail() const { return tail_; }
  void set_tail(TailBound tb);

  Json& metadata() { return metadata_; }
  const Json& metadata() const { return metadata_; }

  /// Sum of mult*(1-|a|) (disc) resp. mult*Im a (half-plane).
  double blaschke_sum() const;

 private:
  Model model_;
  std::vector<Zero> zeros_;
  std::optional<TailBound> tail_;
  Json metadata_ = Json::object();
};

/// Convert between models through the fixed Cayley map; rho is preserved.
ZeroSet to_disc(const ZeroSet& zs);
ZeroSet to_half_plane(const ZeroSet& zs);

/// Atomic measure on the boundary circle.
struct MeasureAtom {
  double angle;  // radians
  double mass;   // > 0
};

class SingularMeasure {
 public:
  SingularMeasure() = default;
  explicit SingularMeasure(std::vector<MeasureAtom> atoms);
  const std::vector<MeasureAtom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  double total_mass() const;

 private:
  std::vector<MeasureAtom> atoms_;
};

/// Blaschke part plus singular part; at least one nonempty for a
/// nonconstant function.
struct InnerFunction {
  ZeroSet blaschke;           // disc model expected for evaluation
  SingularMeasure singular;
};

/// Value plus certified modulus bracket. The bracket accounts for
/// truncation tails, not for rounding.
struct EvalResult {
  std::complex<double> value{1.0, 0.0};
  double modulus_lower = 1.0;
  double modulus_upper = 1.0;
  bool tail_lower_widened = false;  // tail could enter D_rho(z, 1/2); lower dropped to 0
};

/// b_a(z) = (|a|/a)(a-z)/(1-conj(a) z), with b_0(z) = z.
std::complex<double> blaschke_factor(const DiscPoint& a, const DiscPoint& z);

/// log|B(z)| accumulated through the stable pair kernel; safe for thousands
/// of factors and for zeros with boundary gaps far below machine epsilon.
double log_abs_blaschke(const ZeroSet& zs, const DiscPoint& z);

EvalResult eval_blaschke(const ZeroSet& zs, const DiscPoint& z, bool require_nonzero = false);
std::complex<double> eval_singular(const SingularMeasure& mu, const DiscPoint& z);
/// P[mu](z) = sum mass (1-|z|^2)/|xi - z|^2 = -log|S_mu(z)|.
double poisson(const SingularMeasure& mu, const DiscPoint& z);
EvalResult eval_inner(const InnerFunction& f, const DiscPoint& z, bool require_nonzero = false);

/// (1-|a_k|^2)|B'(a_k)| = prod_{j != k} rho(a_k, a_j)^mult_j for a simple
/// zero a_k; throws std::domain_error when mult(a_k) > 1.
double zero_derivative_product(const ZeroSet& zs, std::size_t k);

/// Circle mean of -log|B| against the identity from the zero counting
/// inside the pseudohyperbolic disc. lhs -> rhs as n_quad -> infinity.
struct JensenPair {
  double lhs;  // trapezoidal mean of -log|B(phi_z(r e^{i theta}))|
  double rhs;  // -log|B(z)| - sum_{rho(z,a_j)<r} mult log(r/rho(z,a_j))
};
JensenPair jensen_mean(const ZeroSet& zs, const DiscPoint& z, double r, int n_quad);

}  // namespace innerfun
