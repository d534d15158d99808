#include "innerfun/zoo.hpp"

#include <cmath>
#include <random>

namespace innerfun {

namespace {

Json truncation_meta(long emitted, std::vector<long> prefixes) {
  Json j = Json::object();
  j["emitted"] = emitted;
  j["prefix_counts"] = prefixes;
  return j;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  x ^= x >> 30; x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27; x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ZeroSet gen_exponential(double q, int n, double angle) {
  if (!(q > 0.0) || !(q < 1.0))
    throw std::invalid_argument("gen_exponential: q must lie in (0, 1)");
  if (n < 0) throw std::invalid_argument("gen_exponential: n must be >= 0");
  ZeroSet zs(Model::disc);
  double gap = 1.0;
  for (int j = 1; j <= n; ++j) {
    gap *= q;
    zs.add_disc(DiscPoint::from_polar_gap(angle, gap), 1);
  }
  zs.metadata()["generator"] = "exponential";
  zs.metadata()["params"] = {{"q", q}, {"n", n}, {"angle", angle}};
  zs.metadata()["truncation"] = truncation_meta(n, {(n + 1) / 2, n});
  return zs;
}

ZeroSet gen_treil_grid(int n_max, int half_width) {
  if (n_max < 1) throw std::invalid_argument("gen_treil_grid: n_max must be >= 1");
  if (half_width < 0) throw std::invalid_argument("gen_treil_grid: half_width must be >= 0");
  ZeroSet zs(Model::half_plane);
  for (int n = 1; n <= n_max; ++n) {
    const double y = static_cast<double>(n) * n * n;
    const double step = y / n;  // delta_n y_n with delta_n = 1/n
    for (int k = -half_width; k <= half_width; ++k)
      zs.add_half_plane(HalfPlanePoint(k * step, y), 1);
  }
  const long row = 2L * half_width + 1;
  zs.metadata()["generator"] = "treil_grid";
  zs.metadata()["params"] = {{"n_max", n_max}, {"half_width", half_width}};
  zs.metadata()["truncation"] =
      truncation_meta(row * n_max, {row * ((n_max + 1) / 2), row * n_max});
  return zs;
}

ZeroSet gen_rect_grid(const std::vector<double>& lengths, const std::vector<long>& counts,
                      GapRule rule) {
  if (lengths.empty()) throw std::invalid_argument("gen_rect_grid: empty length list");
  if (lengths.size() != counts.size())
    throw std::invalid_argument("gen_rect_grid: lengths and counts sizes differ");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0)) throw std::invalid_argument("gen_rect_grid: lengths must be > 0");
    if (i > 0 && !(lengths[i] < lengths[i - 1]))
      throw std::invalid_argument("gen_rect_grid: lengths must be strictly decreasing");
    if (counts[i] < 1) throw std::invalid_argument("gen_rect_grid: counts must be >= 1");
  }
  const double spacing = (rule == GapRule::tight_packing) ? 2.0 : 3.0;
  ZeroSet zs(Model::half_plane);
  long emitted = 0;
  std::vector<long> prefixes;
  double x = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const double h = lengths[i] / static_cast<double>(counts[i]);
    for (long k = 0; k < counts[i]; ++k)
      zs.add_half_plane(HalfPlanePoint(x + k * h, h), 1);
    emitted += counts[i];
    if (i + 1 == (lengths.size() + 1) / 2 || i + 1 == lengths.size()) prefixes.push_back(emitted);
    x += spacing * lengths[i];
  }
  zs.metadata()["generator"] = "rect_grid";
  zs.metadata()["params"] = {{"lengths", lengths},
                             {"counts", counts},
                             {"gap_rule", rule == GapRule::tight_packing ? "tight" : "triple"}};
  zs.metadata()["truncation"] = truncation_meta(emitted, prefixes);
  return zs;
}

void rect_grid_heavy_params(int n_rows, std::vector<double>& lengths, std::vector<long>& counts) {
  lengths.clear();
  counts.clear();
  for (int n = 1; n <= n_rows; ++n) {
    lengths.push_back(1.0 / (static_cast<double>(n) * n));
    const double cube = static_cast<double>(n) * n * n;
    counts.push_back(cube >= 15.0 ? (1L << 15) : (1L << static_cast<long>(cube)));
  }
}

ZeroSet gen_stolz_mult(int n) {
  if (n < 1 || n > 40) throw std::invalid_argument("gen_stolz_mult: n must lie in [1, 40]");
  ZeroSet zs(Model::disc);
  for (int j = 1; j <= n; ++j)
    zs.add_disc(DiscPoint::from_polar_gap(0.0, std::ldexp(1.0, -j)), j);
  zs.metadata()["generator"] = "stolz_mult";
  zs.metadata()["params"] = {{"n", n}};
  zs.metadata()["truncation"] = truncation_meta(n, {(n + 1) / 2, n});
  return zs;
}

ZeroSet gen_finite_cross(double r) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("gen_finite_cross: r must lie in (0, 1)");
  ZeroSet zs(Model::disc);
  for (int k = 0; k < 4; ++k)
    zs.add_disc(DiscPoint::from_polar_gap(kPi * (2 * k + 1) / 4.0, 1.0 - r), 1);
  zs.metadata()["generator"] = "finite_cross";
  zs.metadata()["params"] = {{"r", r}};
  zs.metadata()["truncation"] = truncation_meta(4, {4});
  return zs;
}

ZeroSet gen_thin(int n, RadiusRule rule, AngleMode angles, std::uint64_t seed,
                 double fixed_angle) {
  if (n < 1 || n > 30) throw std::invalid_argument("gen_thin: n must lie in [1, 30]");
  if (rule != RadiusRule::double_exp) throw std::invalid_argument("gen_thin: unknown rule");
  ZeroSet zs(Model::disc);
  std::mt19937_64 rng(mix_seed(seed, 0));
  for (int k = 1; k <= n; ++k) {
    const double gap = std::ldexp(1.0, -k * k);
    const double ang =
        (angles == AngleMode::fixed) ? fixed_angle : kTwoPi * uniform01(rng);
    zs.add_disc(DiscPoint::from_polar_gap(ang, gap), 1);
  }
  zs.metadata()["generator"] = "thin";
  zs.metadata()["params"] = {{"n", n},
                             {"radius_rule", "double_exp"},
                             {"angles", angles == AngleMode::fixed ? "fixed" : "spread"},
                             {"seed", seed},
                             {"fixed_angle", fixed_angle}};
  zs.metadata()["truncation"] = truncation_meta(n, {(n + 1) / 2, n});
  return zs;
}

ZeroSet remove_in_discs(const ZeroSet& zs, const std::vector<DiscPoint>& centers, double r_hyp) {
  if (zs.model() != Model::disc)
    throw std::invalid_argument("remove_in_discs: disc-model set required");
  if (r_hyp < 0.0) throw std::invalid_argument("remove_in_discs: radius must be >= 0");
  ZeroSet out(Model::disc);
  out.metadata() = zs.metadata();
  long removed = 0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const Zero& z = zs.zeros()[i];
    bool drop = false;
    for (const auto& c : centers) {
      const PseudoMetrics pm =
          pseudo_metrics(c.angle(), c.boundary_gap(), z.angle(), z.boundary_gap);
      if (hyp_dist_from_metrics(pm) < r_hyp) {
        drop = true;
        break;
      }
    }
    if (drop)
      ++removed;
    else
      out.add_raw(z.position, z.boundary_gap, z.multiplicity);
  }
  out.metadata()["removed_in_discs"] = removed;
  return out;
}

ZeroSet remove_in_discs_half_plane(const ZeroSet& zs, const std::vector<HalfPlanePoint>& centers,
                                   double r_hyp) {
  if (zs.model() != Model::half_plane)
    throw std::invalid_argument("remove_in_discs_half_plane: half-plane set required");
  ZeroSet out(Model::half_plane);
  out.metadata() = zs.metadata();
  long removed = 0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const HalfPlanePoint p = zs.half_plane_point(i);
    bool drop = false;
    for (const auto& c : centers) {
      const double rho = pseudo_dist(p, c);
      if (std::atanh(std::min(rho, 1.0 - 1e-16)) < r_hyp) {
        drop = true;
        break;
      }
    }
    if (drop)
      ++removed;
    else
      out.add_half_plane(p, zs.zeros()[i].multiplicity);
  }
  out.metadata()["removed_in_discs"] = removed;
  return out;
}

ZeroSet perturb_zeros(const ZeroSet& zs, double max_rho, std::uint64_t seed) {
  if (zs.model() != Model::disc)
    throw std::invalid_argument("perturb_zeros: disc-model set required");
  if (!(max_rho >= 0.0) || max_rho >= 1.0)
    throw std::invalid_argument("perturb_zeros: max_rho must lie in [0, 1)");
  ZeroSet out(Model::disc);
  out.metadata() = zs.metadata();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const Zero& z = zs.zeros()[i];
    if (max_rho == 0.0) {
      out.add_raw(z.position, z.boundary_gap, z.multiplicity);
      continue;
    }
    const double t = max_rho;
    std::mt19937_64 rng(mix_seed(seed, i));
    if (z.boundary_gap < 1e-10) {
      // Too close to the circle for cartesian sampling; use the local
      // half-plane chart (x, y) ~ (angle offset, gap), where D_rho((0,d), t)
      // is the disc centered (0, d(1+t^2)/(1-t^2)) of radius 2dt/(1-t^2).
      const double d = z.boundary_gap;
      const double cy = d * (1.0 + t * t) / (1.0 - t * t);
      const double rr = 2.0 * d * t / (1.0 - t * t) * (1.0 - 1e-9);
      for (;;) {
        const double u = 2.0 * uniform01(rng) - 1.0;
        const double v = 2.0 * uniform01(rng) - 1.0;
        if (u * u + v * v > 1.0) continue;
        const double y = cy + rr * v;
        const double x = z.angle() + rr * u;
        if (pseudo_metrics(z.angle(), d, x, y).rho > t) continue;
        out.add_disc(DiscPoint::from_polar_gap(x, y), z.multiplicity);
        break;
      }
      continue;
    }
    // Euclidean image of D_rho(z, max_rho) is the disc with
    // center z (1-t^2)/(1-t^2|z|^2), radius t(1-|z|^2)/(1-t^2|z|^2).
    const double one_minus_mod_sq = z.boundary_gap * (2.0 - z.boundary_gap);
    const double denom = 1.0 - t * t * (1.0 - one_minus_mod_sq);
    const std::complex<double> center = z.position * (1.0 - t * t) / denom;
    const double radius = t * one_minus_mod_sq / denom;
    const DiscPoint zp = zs.disc_point(i);
    for (;;) {
      const double u = 2.0 * uniform01(rng) - 1.0;
      const double v = 2.0 * uniform01(rng) - 1.0;
      if (u * u + v * v > 1.0) continue;
      const std::complex<double> cand = center + radius * std::complex<double>(u, v);
      if (std::abs(cand) >= 1.0) continue;
      const DiscPoint cp(cand.real(), cand.imag());
      if (pseudo_dist(zp, cp) <= max_rho) {
        out.add_disc(cp, z.multiplicity);
        break;
      }
    }
  }
  out.metadata()["perturbed"] = {{"max_rho", max_rho}, {"seed", seed}};
  return out;
}

std::vector<Arc> gen_cantor_like(int depth, double ratio) {
  if (depth < 0 || depth > 40) throw std::invalid_argument("gen_cantor_like: depth out of range");
  if (!(ratio > 0.0) || !(ratio < 0.5))
    throw std::invalid_argument("gen_cantor_like: ratio must lie in (0, 1/2)");
  struct Piece { double start, length; };
  std::vector<Piece> pieces{{0.0, 1.0}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Piece> next;
    next.reserve(2 * pieces.size());
    for (const Piece& p : pieces) {
      const double child = p.length * ratio;
      next.push_back({p.start, child});
      next.push_back({p.start + p.length - child, child});
    }
    pieces = std::move(next);
  }
  std::vector<Arc> arcs;
  arcs.reserve(pieces.size());
  for (const Piece& p : pieces) arcs.emplace_back(p.start + p.length / 2.0, p.length / 2.0);
  return arcs;
}

}  // namespace innerfun
