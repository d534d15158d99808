#include "innerfun/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace innerfun {

namespace {

constexpr double kTurnEps = 1e-12;  // guard for inexact arc endpoints

double to_unit_turns(double t) {
  double u = t - std::floor(t);
  if (u >= 1.0) u -= 1.0;
  return u;
}

// closed interval [lo, hi] (turns, possibly hi > 1) against a closed arc,
// with both wrap copies of the arc considered
bool interval_meets_arc(double lo, double hi, const BoundaryArc& a) {
  const double base = std::floor(lo) - 1.0;
  double alo = base + to_unit_turns(a.lo - base);
  for (int copy = 0; copy < 3; ++copy) {
    const double s = alo + copy;
    if (s <= hi + kTurnEps && s + a.length >= lo - kTurnEps) return true;
    if (s > hi + 1.0) break;
  }
  return false;
}

bool doubled_arc_meets(const DyadicArc& d, const BoundarySet& e) {
  const double len = std::ldexp(1.0, -(d.level + 1));
  const double lo = (2.0 * static_cast<double>(d.index) - 1.0) * len;
  const double hi = (2.0 * static_cast<double>(d.index) + 3.0) * len;
  for (const auto& a : e.arcs())
    if (interval_meets_arc(lo, hi, a)) return true;
  return false;
}

}  // namespace

BoundarySet::BoundarySet(std::vector<BoundaryArc> arcs) : arcs_(std::move(arcs)) {
  if (arcs_.empty()) throw std::invalid_argument("BoundarySet: at least one arc required");
  for (auto& a : arcs_) {
    if (!(a.length >= 0.0) || a.length >= 1.0)
      throw std::invalid_argument("BoundarySet: arc length must lie in [0, 1) turns");
    a.lo = to_unit_turns(a.lo);
  }
  std::sort(arcs_.begin(), arcs_.end(),
            [](const BoundaryArc& x, const BoundaryArc& y) { return x.lo < y.lo; });
  for (std::size_t i = 0; i + 1 < arcs_.size(); ++i)
    if (arcs_[i].hi() > arcs_[i + 1].lo)
      throw std::invalid_argument("BoundarySet: arcs must be pairwise disjoint");
  if (arcs_.size() >= 2 && arcs_.back().hi() > arcs_.front().lo + 1.0)
    throw std::invalid_argument("BoundarySet: arcs must be pairwise disjoint (wrap)");
}

BoundarySet BoundarySet::from_radian_arcs(const std::vector<Arc>& arcs) {
  std::vector<BoundaryArc> out;
  out.reserve(arcs.size());
  for (const Arc& a : arcs) {
    const double lo = (a.center_angle - a.half_length) / kTwoPi;
    out.push_back({to_unit_turns(lo), 2.0 * a.half_length / kTwoPi});
  }
  return BoundarySet(std::move(out));
}

BoundarySet BoundarySet::from_points_turns(const std::vector<double>& points) {
  std::vector<BoundaryArc> out;
  out.reserve(points.size());
  for (double p : points) out.push_back({to_unit_turns(p), 0.0});
  return BoundarySet(std::move(out));
}

double BoundarySet::total_measure_turns() const {
  double s = 0.0;
  for (const auto& a : arcs_) s += a.length;
  return s;
}

bool BoundarySet::contains_turns(double turns) const {
  const double u = to_unit_turns(turns);
  for (const auto& a : arcs_) {
    for (int copy = -1; copy <= 1; ++copy) {
      const double s = a.lo + copy;
      if (u >= s - kTurnEps && u <= s + a.length + kTurnEps) return true;
    }
  }
  return false;
}

double entropy_integral(const BoundarySet& e) {
  const auto& arcs = e.arcs();
  double total = 0.0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const double end = arcs[i].hi();
    const double next = (i + 1 < arcs.size()) ? arcs[i + 1].lo : arcs[0].lo + 1.0;
    const double gap_turns = next - end;
    if (gap_turns <= 0.0) continue;
    const double l = gap_turns * kTwoPi;  // arclength in radians
    total += l * (1.0 + std::log(2.0) - std::log(l));
  }
  return total;
}

WhitneyFamilies whitney_scan(const BoundarySet& e, int max_level) {
  if (max_level < 2) throw std::invalid_argument("whitney_scan: max_level must be >= 2");
  if (max_level > 40) throw std::invalid_argument("whitney_scan: max_level above dyadic cap");
  WhitneyFamilies out;
  out.max_level = max_level;
  std::vector<DyadicArc> frontier;
  for (std::int64_t k = 0; k < 4; ++k) frontier.emplace_back(2, k);
  while (!frontier.empty()) {
    std::vector<DyadicArc> next;
    for (const DyadicArc& d : frontier) {
      if (doubled_arc_meets(d, e)) {
        out.f.push_back(d);
        out.f_length_sum_turns += d.length_turns();
        if (d.level == max_level) {
          out.residual.push_back(d);
        } else {
          next.emplace_back(d.level + 1, 2 * d.index);
          next.emplace_back(d.level + 1, 2 * d.index + 1);
        }
      } else {
        out.g.push_back(d);
        out.g_entropy_sum_turns += d.length_turns() * d.level;
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::vector<DyadicArc> whitney_G(const BoundarySet& e, int max_level) {
  return whitney_scan(e, max_level).g;
}

std::vector<DyadicArc> family_F(const BoundarySet& e, int max_level) {
  return whitney_scan(e, max_level).f;
}

std::vector<DyadicArc> family_L(const std::vector<DyadicArc>& g) {
  std::size_t count = 0;
  for (const DyadicArc& j : g) {
    if (2 * j.level > 40)
      throw std::invalid_argument("family_L: 2*level exceeds the dyadic cap");
    count += (std::size_t{2} << j.level) - 1;
  }
  if (count > 20'000'000) throw std::invalid_argument("family_L: family too large to materialize");
  std::vector<DyadicArc> out;
  out.reserve(count);
  for (const DyadicArc& j : g) {
    for (int lev = j.level; lev <= 2 * j.level; ++lev) {
      const std::int64_t first = j.index << (lev - j.level);
      const std::int64_t n_sub = std::int64_t{1} << (lev - j.level);
      for (std::int64_t k = 0; k < n_sub; ++k) out.emplace_back(lev, first + k);
    }
  }
  return out;
}

Sipification build_sipification(const SingularMeasure& mu, const BoundarySet& e, int max_level) {
  for (const auto& atom : mu.atoms()) {
    if (!e.contains_turns(atom.angle / kTwoPi))
      throw std::invalid_argument("build_sipification: measure atom outside the boundary set");
  }
  const WhitneyFamilies fam = whitney_scan(e, max_level);
  const std::vector<DyadicArc> l_arcs = family_L(fam.g);

  Sipification out;
  out.b1 = ZeroSet(Model::disc);
  out.b2 = ZeroSet(Model::disc);
  long skipped_f = 0, skipped_l = 0;
  for (const DyadicArc& i : fam.f) {
    if (i.level < 3) {
      ++skipped_f;
      continue;
    }
    out.b1.add_disc(top_center(i), 1);
  }
  std::map<int, double> b2_level_sums;
  for (const DyadicArc& l : l_arcs) {
    if (l.level < 3) {
      ++skipped_l;
      continue;
    }
    const DiscPoint z = top_center(l);
    out.b2.add_disc(z, 1);
    b2_level_sums[l.level] += z.boundary_gap();
  }

  Json meta;
  meta["construction"] = "b1 zeros over F arcs, b2 zeros over L arcs; composite is b1 * S_mu";
  meta["max_level"] = max_level;
  meta["f_count"] = fam.f.size();
  meta["g_count"] = fam.g.size();
  meta["l_count"] = l_arcs.size();
  meta["skipped_low_level_anchors"] = {{"f", skipped_f}, {"l", skipped_l}};
  meta["b1_blaschke_sum"] = out.b1.blaschke_sum();
  meta["b2_blaschke_sum"] = out.b2.blaschke_sum();
  Json per_level = Json::object();
  for (const auto& [lev, s] : b2_level_sums) per_level[std::to_string(lev)] = s;
  meta["b2_blaschke_sum_by_level"] = per_level;
  {
    // crude convergence signal on the deepest levels of the b2 sums
    bool growing = false;
    if (b2_level_sums.size() >= 3) {
      auto it = b2_level_sums.rbegin();
      const double last = it->second;
      ++it;
      const double mid = it->second;
      ++it;
      growing = last >= mid && mid >= it->second;
    }
    meta["b2_tail_increments_growing"] = growing;
  }
  meta["g_entropy_sum_turns"] = fam.g_entropy_sum_turns;
  meta["f_length_sum_turns"] = fam.f_length_sum_turns;
  out.b1.metadata() = meta;
  out.b2.metadata() = meta;
  out.metadata = std::move(meta);
  return out;
}

}  // namespace innerfun
