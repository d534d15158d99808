#pragma once

#include <cstdint>
#include <vector>

#include "innerfun/inner.hpp"

namespace innerfun {

/// Zeros (1 - q^j) e^{i angle}, j = 1..n. Ratio of consecutive gaps is q.
ZeroSet gen_exponential(double q, int n, double angle = 0.0);

/// Half-plane rows y_n = n^3 with spacing delta_n y_n, delta_n = 1/n:
/// z_{n,k} = k delta_n y_n + i y_n, |k| <= half_width, n = 1..n_max.
ZeroSet gen_treil_grid(int n_max, int half_width);

enum class GapRule { tight_packing, triple_spacing };

/// Half-plane rows of N_n equispaced zeros at height L_n/N_n over stacked
/// intervals [x_n, x_n + L_n]; x_1 = 0 and x_{n+1} = x_n + 2 L_n
/// (tight_packing) or x_n + 3 L_n (triple_spacing). L must be strictly
/// decreasing.
ZeroSet gen_rect_grid(const std::vector<double>& lengths,
                      const std::vector<long>& counts,
                      GapRule rule = GapRule::tight_packing);

/// Canonical parameters L_n = n^-2, N_n = 2^(n^3) capped at 2^15.
void rect_grid_heavy_params(int n_rows, std::vector<double>& lengths, std::vector<long>& counts);

/// Zeros 1 - 2^-j with multiplicity j, j = 1..n. All lie in a Stolz angle.
ZeroSet gen_stolz_mult(int n);

/// Four simple zeros r e^{i pi (2k+1)/4}; the product is (z^4+r^4)/(1+r^4 z^4).
ZeroSet gen_finite_cross(double r);

enum class RadiusRule { double_exp };
enum class AngleMode { fixed, spread };

/// Super-separated radii 1 - 2^(-k^2), k = 1..n. Angles either all equal
/// (fixed) or drawn uniformly per zero from the seeded stream (spread).
/// Gaps below machine epsilon are kept exactly through the polar-gap
/// representation.
ZeroSet gen_thin(int n, RadiusRule rule = RadiusRule::double_exp,
                 AngleMode angles = AngleMode::fixed, std::uint64_t seed = 0,
                 double fixed_angle = 0.0);

/// Drop every zero lying within hyperbolic distance R of some center.
ZeroSet remove_in_discs(const ZeroSet& zs, const std::vector<DiscPoint>& centers, double r_hyp);
ZeroSet remove_in_discs_half_plane(const ZeroSet& zs, const std::vector<HalfPlanePoint>& centers,
                                   double r_hyp);

/// Move each zero to a uniform sample of D_rho(z, max_rho); the stream is
/// determined by (seed, zero index). Disc model.
ZeroSet perturb_zeros(const ZeroSet& zs, double max_rho, std::uint64_t seed);

/// Middle-removal set on the base arc [0, 1] (radians): 2^depth closed arcs,
/// each child keeps `ratio` of its parent length at both ends.
std::vector<Arc> gen_cantor_like(int depth, double ratio);

}  // namespace innerfun
