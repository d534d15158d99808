#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "innerfun/inner.hpp"

namespace innerfun {

struct EtaSample {
  double t = 0.0;
  std::optional<double> estimate;   // absent when the probe region was empty
  std::optional<DiscPoint> argmin;  // witness probe, ties broken by (radius, angle)
  long n_probes = 0;                // probes satisfying rho(z, zeros) >= t
};

/// Sampled t -> inf estimate of |Theta| over {rho(z, zeros) >= t} within
/// |z| <= r_max. Each estimate is a minimum over probes, hence an upper
/// bound for the true infimum over the probed region.
struct EtaCurve {
  std::vector<EtaSample> samples;  // t strictly increasing
  double r_max = 0.0;
  double mesh = 0.0;  // hyperbolic step of the probe grid
  std::vector<std::pair<double, double>> jump_candidates;  // adjacent t with ratio > 1.5
};

struct EtaConfig {
  std::vector<double> t_values;
  double r_max = 1.0 - 0x1p-12;
  double mesh = 0.05;
  int workers = 1;
};

EtaCurve eta_curve(const InnerFunction& f, const EtaConfig& cfg);

/// Pseudo-inverse: smallest sampled t with estimate > lambda, linearly
/// interpolated between adjacent samples; 1 when no sample exceeds lambda.
double kappa(const EtaCurve& curve, double lambda);

/// S_t(z) = sum over rho(z, a_j) >= t of mult (1 - rho(z, a_j)).
double s_t_sum(const ZeroSet& zs, const DiscPoint& z, double t);

/// sup_k sum_j mult_j (1 - rho(a_j, a_k)^2); the j = k term contributes 1
/// per unit of multiplicity. Works in either model.
double cn_constant(const ZeroSet& zs);
/// Same quantity on leading sub-multisets (generation-order truncations).
std::vector<double> cn_prefix_values(const ZeroSet& zs, const std::vector<long>& prefix_counts);

/// sup over candidate boxes of mass(Q(theta, h, delta))/h, candidates
/// anchored at zeros with a dyadic h sweep. Approximation factor <= 4
/// versus the true supremum.
double box_sup(const ZeroSet& zs, double delta);

struct ThinEntry {
  std::size_t k;
  double derivative_product;  // prod_{j != k} rho(a_k, a_j); 0 when mult > 1
  double tail_sum;            // sum_{j != k} mult_j (1 - rho(a_j, a_k)^2)
  bool multiple_zero = false;
};
std::vector<ThinEntry> thin_profile(const ZeroSet& zs);

struct SeparationEntry {
  std::size_t n_from;  // pairs with both indices >= n_from
  double tail_inf;
};
std::vector<SeparationEntry> separation_profile(const ZeroSet& zs);

enum class NarrowMode { sip, m_class, p_class };

struct NarrowSearch {
  double center_hyp_max = 2.5;  // centers probed out to this hyperbolic radius
  double center_mesh = 0.35;
  double r_min = 0.25, r_max = 2.0, r_step = 0.25;  // candidate disc radii (d_H)
  double disc_mesh = 0.25;  // sampling step inside candidate discs
};

struct NarrowResult {
  double r_found = 0.0;  // largest verified hyperbolic radius (0 if none fits)
  std::optional<DiscPoint> center;
};

/// Largest probed hyperbolic disc certified inside the mode's sublevel set:
/// sip {0<|f|<1-eps}, m_class {eps<|f|<1-eps}, p_class {|f|<1-eps}.
/// Certification combines exact zero distances with sampled modulus bounds
/// and a Schwarz-Pick covering slack, so r_found lower-bounds the true
/// maximal embedded radius.
NarrowResult narrowness_probe(const InnerFunction& f, double eps, NarrowMode mode,
                              const NarrowSearch& search);

struct Verdict {
  std::string label;  // evidence_for | evidence_against | inconclusive
  Json details;       // thresholds used and the values they were applied to
};

struct CnSummary {
  double value = 0.0;
  std::vector<double> prefix_values;
  double growth_pct = 0.0;
  bool divergent = false;
};

struct Report {
  CnSummary cn;
  double thin_tail = 0.0;    // derivative product at the last index
  double separation = 0.0;   // tail pairwise infimum at the last index
  std::vector<std::pair<double, double>> box_sup_by_delta;
  EtaCurve eta;
  NarrowResult narrow_m, narrow_p;
  std::optional<double> area_integral;  // grid estimate of the Poisson sublevel mass
  std::map<std::string, Verdict> verdicts;
  Json context = Json::object();
};

struct ClassifyConfig {
  EtaConfig eta{{0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.99}, 1.0 - 0x1p-8, 0.08, 1};
  double cn_threshold = 50.0;
  double cn_stable_pct = 5.0;
  double cn_divergent_pct = 20.0;
  double sip_tol = 0.05;
  double sip_against = 0.5;
  double thin_for = 0.95;
  double thin_against = 0.9;
  NarrowSearch narrow;
  double eps_m = 0.45;
  double eps_p = 0.5;
  double narrow_r_for = 0.75;
  double narrow_r_against = 1.75;
  std::vector<double> box_deltas{1.0, 0.25, 0.0625};
  double area_integral_level = 1.0;
  bool run_narrowness = true;
};

/// Assemble diagnostics into an evidence report. Verdicts are three-valued
/// labels with their thresholds recorded; finite truncations prove nothing.
Report classify(const InnerFunction& f, const ClassifyConfig& cfg);

}  // namespace innerfun
