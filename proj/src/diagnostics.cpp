#include "innerfun/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace innerfun {

namespace {

constexpr double kTieGuard = 1e-13;  // relative slack for boundary ties in rho >= t

int pow2_at_least(double x) {
  int p = 0;
  while ((1L << p) < x && p < 30) ++p;
  return p;
}

// Pair kernel over zero indices, dispatching on the model.
struct PairKernel {
  explicit PairKernel(const ZeroSet& zs) : zeros(zs.zeros()), half(zs.model() == Model::half_plane) {
    angles.reserve(zeros.size());
    if (!half)
      for (const auto& z : zeros) angles.push_back(z.angle());
  }
  PseudoMetrics operator()(std::size_t i, std::size_t j) const {
    if (!half)
      return pseudo_metrics(angles[i], zeros[i].boundary_gap, angles[j], zeros[j].boundary_gap);
    const double dx = zeros[i].position.real() - zeros[j].position.real();
    const double dy = zeros[i].position.imag() - zeros[j].position.imag();
    const double sy = zeros[i].position.imag() + zeros[j].position.imag();
    const double den_sq = dx * dx + sy * sy;
    PseudoMetrics pm;
    pm.one_minus_rho_sq = 4.0 * zeros[i].position.imag() * zeros[j].position.imag() / den_sq;
    pm.rho = std::sqrt((dx * dx + dy * dy) / den_sq);
    return pm;
  }
  const std::vector<Zero>& zeros;
  bool half;
  std::vector<double> angles;
};

struct ProbeBest {
  double est = std::numeric_limits<double>::infinity();
  int circle = std::numeric_limits<int>::max();
  long angle = std::numeric_limits<long>::max();
  double point_angle = 0.0, point_gap = 1.0;
  long count = 0;
};

void merge_best(ProbeBest& into, const ProbeBest& from) {
  into.count += from.count;
  const bool better = from.est < into.est ||
                      (from.est == into.est &&
                       (from.circle < into.circle ||
                        (from.circle == into.circle && from.angle < into.angle)));
  if (from.count > 0 && better) {
    into.est = from.est;
    into.circle = from.circle;
    into.angle = from.angle;
    into.point_angle = from.point_angle;
    into.point_gap = from.point_gap;
  }
}

}  // namespace

EtaCurve eta_curve(const InnerFunction& f, const EtaConfig& cfg) {
  if (f.blaschke.model() != Model::disc)
    throw std::invalid_argument("eta_curve: disc-model zero set required");
  if (!(cfg.mesh > 0.0)) throw std::invalid_argument("eta_curve: mesh must be > 0");
  if (!(cfg.r_max > 0.0) || cfg.r_max >= 1.0)
    throw std::invalid_argument("eta_curve: r_max must lie in (0, 1)");
  std::vector<double> ts = cfg.t_values;
  std::sort(ts.begin(), ts.end());
  if (ts.empty()) throw std::invalid_argument("eta_curve: no t values");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0) || ts[i] >= 1.0)
      throw std::invalid_argument("eta_curve: t values must lie in (0, 1)");
    if (i > 0 && ts[i] == ts[i - 1])
      throw std::invalid_argument("eta_curve: t values must be distinct");
  }

  const auto& zeros = f.blaschke.zeros();
  const std::size_t nz = zeros.size();
  std::vector<double> zangle(nz), zgap(nz);
  std::vector<int> zmult(nz);
  for (std::size_t i = 0; i < nz; ++i) {
    zangle[i] = zeros[i].angle();
    zgap[i] = zeros[i].boundary_gap;
    zmult[i] = zeros[i].multiplicity;
  }
  const bool has_tail = f.blaschke.tail().has_value();
  const bool has_sing = !f.singular.empty();

  const double hyp_max = std::atanh(cfg.r_max);
  const int n_circles = static_cast<int>(hyp_max / cfg.mesh) + 1;
  const double t_min = ts.front();
  const int workers = std::max(1, cfg.workers);

  auto sweep = [&](int worker, std::vector<ProbeBest>& best) {
    best.assign(ts.size(), ProbeBest{});
    for (int ci = worker; ci < n_circles; ci += workers) {
      const double h = ci * cfg.mesh;
      const double gap = 2.0 / (std::exp(2.0 * h) + 1.0);  // 1 - tanh(h)
      long n_angles = 1;
      if (ci > 0) {
        const double circ = kPi * std::sinh(2.0 * h);  // hyperbolic circumference
        n_angles = 1L << pow2_at_least(circ / cfg.mesh);
      }
      for (long ai = 0; ai < n_angles; ++ai) {
        const double theta = kTwoPi * static_cast<double>(ai) / static_cast<double>(n_angles);
        double rho_min = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nz; ++j) {
          const double rho = pseudo_metrics(theta, gap, zangle[j], zgap[j]).rho;
          if (rho < rho_min) rho_min = rho;
        }
        if (!(rho_min >= t_min * (1.0 - kTieGuard))) continue;
        // certified modulus lower bound at this probe
        double logmod = 0.0;
        for (std::size_t j = 0; j < nz; ++j) {
          const PseudoMetrics pm = pseudo_metrics(theta, gap, zangle[j], zgap[j]);
          logmod += zmult[j] * 0.5 * std::log1p(-pm.one_minus_rho_sq);
        }
        double lower = std::exp(logmod);
        if (has_tail || has_sing) {
          const DiscPoint p = DiscPoint::from_polar_gap(theta, gap);
          lower = eval_inner(f, p).modulus_lower;
        }
        for (std::size_t k = 0; k < ts.size(); ++k) {
          if (!(rho_min >= ts[k] * (1.0 - kTieGuard))) break;  // ts sorted ascending
          ProbeBest& b = best[k];
          ++b.count;
          if (lower < b.est) {
            b.est = lower;
            b.circle = ci;
            b.angle = ai;
            b.point_angle = theta;
            b.point_gap = gap;
          }
        }
      }
    }
  };

  std::vector<std::vector<ProbeBest>> partial(workers);
  if (workers == 1) {
    sweep(0, partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { sweep(w, partial[w]); });
    for (auto& th : pool) th.join();
  }
  std::vector<ProbeBest> best(ts.size());
  for (int w = 0; w < workers; ++w)
    for (std::size_t k = 0; k < ts.size(); ++k) merge_best(best[k], partial[w][k]);

  EtaCurve curve;
  curve.r_max = cfg.r_max;
  curve.mesh = cfg.mesh;
  double envelope = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    EtaSample s;
    s.t = ts[k];
    s.n_probes = best[k].count;
    if (best[k].count > 0) {
      envelope = std::max(envelope, best[k].est);  // monotone by construction
      s.estimate = envelope;
      s.argmin = DiscPoint::from_polar_gap(best[k].point_angle, best[k].point_gap);
    }
    curve.samples.push_back(std::move(s));
  }
  for (std::size_t k = 1; k < curve.samples.size(); ++k) {
    const auto& a = curve.samples[k - 1];
    const auto& b = curve.samples[k];
    if (a.estimate && b.estimate && *a.estimate > 0.0 && *b.estimate / *a.estimate > 1.5)
      curve.jump_candidates.emplace_back(a.t, b.t);
  }
  return curve;
}

double kappa(const EtaCurve& curve, double lambda) {
  if (curve.samples.empty()) throw std::invalid_argument("kappa: empty curve");
  const EtaSample* prev = nullptr;
  for (const auto& s : curve.samples) {
    if (!s.estimate) continue;
    if (*s.estimate > lambda) {
      if (!prev) return s.t;
      const double e0 = *prev->estimate, e1 = *s.estimate;
      if (e1 <= e0) return s.t;
      const double frac = (lambda - e0) / (e1 - e0);
      return frac <= 0.0 ? prev->t : prev->t + frac * (s.t - prev->t);
    }
    prev = &s;
  }
  return 1.0;
}

double s_t_sum(const ZeroSet& zs, const DiscPoint& z, double t) {
  if (zs.model() != Model::disc) throw std::invalid_argument("s_t_sum: disc-model set required");
  if (!(t >= 0.0) || t >= 1.0) throw std::invalid_argument("s_t_sum: t must lie in [0, 1)");
  const double za = z.angle(), zg = z.boundary_gap();
  double s = 0.0;
  for (const auto& zero : zs.zeros()) {
    const PseudoMetrics pm = pseudo_metrics(za, zg, zero.angle(), zero.boundary_gap);
    if (pm.rho >= t) s += zero.multiplicity * pm.one_minus_rho_sq / (1.0 + pm.rho);
  }
  return s;
}

double cn_constant(const ZeroSet& zs) {
  if (zs.empty()) throw std::invalid_argument("cn_constant: empty zero set");
  const PairKernel kern(zs);
  const auto& zeros = zs.zeros();
  double sup = 0.0;
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    double row = static_cast<double>(zeros[k].multiplicity);  // j = k copies
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      if (j == k) continue;
      row += zeros[j].multiplicity * kern(j, k).one_minus_rho_sq;
    }
    sup = std::max(sup, row);
  }
  return sup;
}

std::vector<double> cn_prefix_values(const ZeroSet& zs, const std::vector<long>& prefix_counts) {
  std::vector<double> out;
  for (long n : prefix_counts) {
    if (n < 1 || n > static_cast<long>(zs.size()))
      throw std::invalid_argument("cn_prefix_values: prefix count out of range");
    ZeroSet prefix(zs.model());
    for (long i = 0; i < n; ++i)
      prefix.add_raw(zs.zeros()[i].position, zs.zeros()[i].boundary_gap,
                     zs.zeros()[i].multiplicity);
    out.push_back(cn_constant(prefix));
  }
  return out;
}

double box_sup(const ZeroSet& zs, double delta) {
  if (zs.model() != Model::disc) throw std::invalid_argument("box_sup: disc-model set required");
  if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("box_sup: delta must lie in (0, 1]");
  const auto& zeros = zs.zeros();
  if (zeros.empty()) return 0.0;
  const std::size_t n = zeros.size();
  std::vector<double> ang(n), gap(n);
  for (std::size_t i = 0; i < n; ++i) {
    ang[i] = zeros[i].angle();
    gap[i] = zeros[i].boundary_gap;
  }
  double sup = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (double h = gap[k] / delta * (1.0 + 1e-9); h <= kPi; h *= 2.0) {
      const double depth = delta * h;
      double mass = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (gap[j] < depth && std::abs(wrap_angle(ang[j] - ang[k])) < h)
          mass += zeros[j].multiplicity * gap[j];
      }
      sup = std::max(sup, mass / h);
    }
  }
  return sup;
}

std::vector<ThinEntry> thin_profile(const ZeroSet& zs) {
  const PairKernel kern(zs);
  const auto& zeros = zs.zeros();
  std::vector<ThinEntry> out;
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    ThinEntry e;
    e.k = k;
    double tail = 0.0, logprod = 0.0;
    bool hit = false;
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      if (j == k) continue;
      const PseudoMetrics pm = kern(j, k);
      tail += zeros[j].multiplicity * pm.one_minus_rho_sq;
      if (pm.rho == 0.0)
        hit = true;
      else
        logprod += zeros[j].multiplicity * 0.5 * std::log1p(-pm.one_minus_rho_sq);
    }
    e.tail_sum = tail;
    if (zeros[k].multiplicity > 1) {
      e.multiple_zero = true;
      e.derivative_product = 0.0;
    } else {
      e.derivative_product = hit ? 0.0 : std::exp(logprod);
    }
    out.push_back(e);
  }
  return out;
}

std::vector<SeparationEntry> separation_profile(const ZeroSet& zs) {
  const auto& zeros = zs.zeros();
  if (zeros.size() < 2) throw std::invalid_argument("separation_profile: need >= 2 zeros");
  const PairKernel kern(zs);
  const std::size_t n = zeros.size();
  // suffix minima over pairs with both indices >= N
  std::vector<double> suffix(n, std::numeric_limits<double>::infinity());
  for (std::size_t N = n - 1; N-- > 0;) {
    double m = suffix[N + 1];
    for (std::size_t j = N + 1; j < n; ++j) {
      double rho = kern(N, j).rho;
      if (zeros[N].multiplicity > 1) rho = 0.0;
      m = std::min(m, rho);
    }
    if (zeros[n - 1].multiplicity > 1) m = 0.0;
    suffix[N] = m;
  }
  std::vector<SeparationEntry> out;
  for (std::size_t N = 0; N + 2 <= n; ++N) out.push_back({N, suffix[N]});
  return out;
}

namespace {

bool narrow_verify(const InnerFunction& f, const DiscPoint& center, double radius_hyp,
                   double eps, NarrowMode mode, double disc_mesh) {
  const double slack = 2.0 * disc_mesh / std::sqrt(2.0);  // Schwarz-Pick covering margin
  const double upper_cap = 1.0 - eps - slack;
  const double lower_floor = eps + slack;
  if (upper_cap <= 0.0) return false;
  const int n_circles = static_cast<int>(radius_hyp / disc_mesh) + 1;
  for (int ci = 0; ci < n_circles; ++ci) {
    const double h = std::min(ci * disc_mesh, radius_hyp);
    const double gap = 2.0 / (std::exp(2.0 * h) + 1.0);
    long n_angles = 1;
    if (ci > 0) n_angles = 1L << pow2_at_least(kPi * std::sinh(2.0 * h) / disc_mesh);
    for (long ai = 0; ai < n_angles; ++ai) {
      const double theta = kTwoPi * static_cast<double>(ai) / static_cast<double>(n_angles);
      const DiscPoint w = DiscPoint::from_polar_gap(theta, gap);
      const DiscPoint s = mobius(center, w);
      const EvalResult res = eval_inner(f, s);
      if (res.modulus_upper > upper_cap) return false;
      if (mode == NarrowMode::m_class && res.modulus_lower < lower_floor) return false;
    }
  }
  return true;
}

}  // namespace

NarrowResult narrowness_probe(const InnerFunction& f, double eps, NarrowMode mode,
                              const NarrowSearch& search) {
  if (!(eps > 0.0) || eps >= 1.0)
    throw std::invalid_argument("narrowness_probe: eps must lie in (0, 1)");
  if (mode == NarrowMode::m_class && eps >= 0.5)
    throw std::invalid_argument("narrowness_probe: m_class needs eps < 1/2");
  const auto& zeros = f.blaschke.zeros();
  NarrowResult best;
  const int n_circles = static_cast<int>(search.center_hyp_max / search.center_mesh) + 1;
  for (int ci = 0; ci < n_circles; ++ci) {
    const double h = ci * search.center_mesh;
    const double gap = 2.0 / (std::exp(2.0 * h) + 1.0);
    long n_angles = 1;
    if (ci > 0) n_angles = 1L << pow2_at_least(kPi * std::sinh(2.0 * h) / search.center_mesh);
    for (long ai = 0; ai < n_angles; ++ai) {
      const double theta = kTwoPi * static_cast<double>(ai) / static_cast<double>(n_angles);
      const DiscPoint c = DiscPoint::from_polar_gap(theta, gap);
      double r_cap = search.r_max;
      if (mode != NarrowMode::p_class) {
        for (const auto& z : zeros) {
          const PseudoMetrics pm = pseudo_metrics(theta, gap, z.angle(), z.boundary_gap);
          r_cap = std::min(r_cap, hyp_dist_from_metrics(pm));
          if (r_cap <= best.r_found) break;
        }
      }
      for (double r = search.r_max; r >= search.r_min - 1e-12; r -= search.r_step) {
        if (r > r_cap || r <= best.r_found) continue;
        if (narrow_verify(f, c, r, eps, mode, search.disc_mesh)) {
          best.r_found = r;
          best.center = c;
          break;
        }
      }
    }
  }
  return best;
}

namespace {

Verdict make_verdict(const std::string& label, Json details) {
  return Verdict{label, std::move(details)};
}

}  // namespace

Report classify(const InnerFunction& f_in, const ClassifyConfig& cfg) {
  InnerFunction f{to_disc(f_in.blaschke), f_in.singular};
  Report rep;
  rep.context["input"] = {{"zero_count", f.blaschke.size()},
                          {"total_multiplicity", f.blaschke.total_multiplicity()},
                          {"singular_atoms", f.singular.atoms().size()},
                          {"metadata", f.blaschke.metadata()}};

  // Carleson-Newman constant across recorded truncations
  if (!f.blaschke.empty()) {
    std::vector<long> prefixes;
    const Json& md = f.blaschke.metadata();
    if (md.contains("truncation") && md["truncation"].contains("prefix_counts"))
      for (const auto& v : md["truncation"]["prefix_counts"]) prefixes.push_back(v.get<long>());
    if (prefixes.empty() || prefixes.back() != static_cast<long>(f.blaschke.size()))
      prefixes = {(static_cast<long>(f.blaschke.size()) + 1) / 2,
                  static_cast<long>(f.blaschke.size())};
    std::sort(prefixes.begin(), prefixes.end());
    prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());
    if (prefixes.size() > 2) prefixes.erase(prefixes.begin(), prefixes.end() - 2);
    rep.cn.prefix_values = cn_prefix_values(f.blaschke, prefixes);
    rep.cn.value = rep.cn.prefix_values.back();
    if (rep.cn.prefix_values.size() >= 2 && rep.cn.prefix_values.front() > 0.0) {
      rep.cn.growth_pct = 100.0 * (rep.cn.value - rep.cn.prefix_values.front()) /
                          rep.cn.prefix_values.front();
    }
    rep.cn.divergent = rep.cn.growth_pct > cfg.cn_divergent_pct;

    const auto profile = thin_profile(f.blaschke);
    rep.thin_tail = profile.back().derivative_product;
    if (f.blaschke.size() >= 2) {
      const auto sep = separation_profile(f.blaschke);
      rep.separation = sep.back().tail_inf;
    }
    for (double d : cfg.box_deltas) rep.box_sup_by_delta.emplace_back(d, box_sup(f.blaschke, d));
  }

  rep.eta = eta_curve(f, cfg.eta);
  if (cfg.run_narrowness) {
    rep.narrow_m = narrowness_probe(f, cfg.eps_m, NarrowMode::m_class, cfg.narrow);
    rep.narrow_p = narrowness_probe(f, cfg.eps_p, NarrowMode::p_class, cfg.narrow);
  }

  if (!f.singular.empty()) {
    // grid estimate of the area integral of 1/(1-|z|) over {P[mu] >= C}
    const int n_r = 96, n_th = 512;
    const double r_lim = cfg.eta.r_max;
    double acc = 0.0;
    for (int i = 0; i < n_r; ++i) {
      const double r = (i + 0.5) * r_lim / n_r;
      const double dr = r_lim / n_r;
      for (int j = 0; j < n_th; ++j) {
        const double th = kTwoPi * (j + 0.5) / n_th;
        const DiscPoint p(r * std::cos(th), r * std::sin(th));
        if (poisson(f.singular, p) >= cfg.area_integral_level)
          acc += r * dr * (kTwoPi / n_th) / (1.0 - r);
      }
    }
    rep.area_integral = acc;
  }

  // verdicts, with the thresholds they were judged against
  const bool has_zeros = !f.blaschke.empty();
  {
    Json d = {{"cn_value", rep.cn.value},
              {"prefix_values", rep.cn.prefix_values},
              {"growth_pct", rep.cn.growth_pct},
              {"threshold", cfg.cn_threshold},
              {"stable_pct", cfg.cn_stable_pct},
              {"divergent_pct", cfg.cn_divergent_pct}};
    std::string label = "inconclusive";
    if (!has_zeros)
      label = "inconclusive";
    else if (rep.cn.value <= cfg.cn_threshold && rep.cn.growth_pct < cfg.cn_stable_pct)
      label = "evidence_for";
    else if (rep.cn.divergent)
      label = "evidence_against";
    rep.verdicts["CN"] = make_verdict(label, d);
  }
  {
    std::optional<double> tail_est;
    double tail_t = 0.0;
    for (const auto& s : rep.eta.samples)
      if (s.estimate) {
        tail_est = *s.estimate;
        tail_t = s.t;
      }
    Json d = {{"eta_tail", tail_est ? Json(*tail_est) : Json()},
              {"at_t", tail_t},
              {"tol", cfg.sip_tol},
              {"against_below", cfg.sip_against}};
    std::string label = "inconclusive";
    if (tail_est && *tail_est >= 1.0 - cfg.sip_tol) label = "evidence_for";
    else if (tail_est && *tail_est < cfg.sip_against) label = "evidence_against";
    rep.verdicts["SIP"] = make_verdict(label, d);
  }
  {
    Json d = {{"last_derivative_product", rep.thin_tail},
              {"for_above", cfg.thin_for},
              {"against_below", cfg.thin_against}};
    std::string label = "inconclusive";
    if (has_zeros && rep.thin_tail >= cfg.thin_for) label = "evidence_for";
    else if (has_zeros && rep.thin_tail < cfg.thin_against) label = "evidence_against";
    rep.verdicts["thin"] = make_verdict(label, d);
  }
  if (cfg.run_narrowness) {
    Json d = {{"r_found", rep.narrow_m.r_found},
              {"eps", cfg.eps_m},
              {"for_below", cfg.narrow_r_for},
              {"against_above", cfg.narrow_r_against}};
    std::string label = "inconclusive";
    if (rep.narrow_m.r_found <= cfg.narrow_r_for) label = "evidence_for";
    else if (rep.narrow_m.r_found >= cfg.narrow_r_against) label = "evidence_against";
    rep.verdicts["M"] = make_verdict(label, d);

    const std::string cn_label = rep.verdicts["CN"].label;
    std::string p_label = "inconclusive";
    if (cn_label == "evidence_for" && label == "evidence_for") p_label = "evidence_for";
    else if (cn_label == "evidence_against" || label == "evidence_against")
      p_label = "evidence_against";
    rep.verdicts["P"] = make_verdict(
        p_label, Json{{"rule", "requires CN and M evidence"}, {"cn", cn_label}, {"m", label}});
  }
  return rep;
}

}  // namespace innerfun
