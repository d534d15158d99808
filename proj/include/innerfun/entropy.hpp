#pragma once

#include <vector>

#include "innerfun/inner.hpp"

namespace innerfun {

/// Closed arc on the circle in units of turns: [lo, lo + length], length >= 0
/// (a point when length = 0). Dyadic endpoints are exact doubles; all other
/// comparisons carry a documented 1e-12 guard.
struct BoundaryArc {
  double lo;      // in [0, 1)
  double length;  // in [0, 1)
  double hi() const { return lo + length; }
};

/// Finite union of disjoint closed arcs/points, sorted by start angle.
class BoundarySet {
 public:
  explicit BoundarySet(std::vector<BoundaryArc> arcs);
  static BoundarySet from_radian_arcs(const std::vector<Arc>& arcs);
  static BoundarySet from_points_turns(const std::vector<double>& points);

  const std::vector<BoundaryArc>& arcs() const { return arcs_; }
  double total_measure_turns() const;
  bool positive_measure() const { return total_measure_turns() > 0.0; }
  /// Closed membership with the epsilon guard.
  bool contains_turns(double turns) const;

 private:
  std::vector<BoundaryArc> arcs_;
};

/// Exact per-gap closed form of the boundary entropy integral
/// (arclength distance, radians): a complementary gap of length l
/// contributes l (1 + log 2 - log l). May be negative.
double entropy_integral(const BoundarySet& e);

struct WhitneyFamilies {
  std::vector<DyadicArc> g;         // maximal dyadic J with 2J disjoint from E
  std::vector<DyadicArc> f;         // dyadic I with 2I meeting E, levels 2..max_level
  std::vector<DyadicArc> residual;  // undecided arcs at max_level (= f at that level)
  int max_level = 0;
  double g_entropy_sum_turns = 0.0;  // sum |J| log2(1/|J|), lengths in turns
  double f_length_sum_turns = 0.0;   // sum |I|, lengths in turns
};

WhitneyFamilies whitney_scan(const BoundarySet& e, int max_level);
std::vector<DyadicArc> whitney_G(const BoundarySet& e, int max_level);
std::vector<DyadicArc> family_F(const BoundarySet& e, int max_level);

/// For each J in G of level m, the dyadic sub-arcs of levels m..2m
/// (normalized length |L| >= |J|^2, compared exactly as levels).
std::vector<DyadicArc> family_L(const std::vector<DyadicArc>& g);

struct Sipification {
  ZeroSet b1;  // zeros at the top centers of the F arcs
  ZeroSet b2;  // zeros at the top centers of the L arcs
  Json metadata;
};

/// The two Blaschke factors whose product with S_mu is the SIP candidate.
/// Arcs of level <= 2 carry no anchor point and are skipped (recorded in
/// the metadata). Every atom of mu must lie in E.
Sipification build_sipification(const SingularMeasure& mu, const BoundarySet& e, int max_level);

}  // namespace innerfun
