#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtglab/rng.hpp"
#include "rtglab/tree.hpp"

namespace rtg {

// Lattice path coding a tree. Two flavors:
//  - contour: q_0 = q_m = 0, steps +-1, q_i >= 0, length 2n-2;
//  - dfq:     q_0 = 1, q_m = 0, q_i > 0 inside, increments >= -1, length n.
struct DiscreteExcursion {
  enum class Flavor { contour, dfq };
  Flavor flavor = Flavor::contour;
  std::vector<std::int64_t> q;  // q_0..q_m

  std::int64_t steps() const { return static_cast<std::int64_t>(q.size()) - 1; }
  void validate() const;  // throws std::invalid_argument on malformed paths
};

// Nonnegative function on [0, zeta] with f(0) = f(zeta) = 0, sampled on a
// strictly increasing grid and interpolated linearly between samples.
struct RealExcursion {
  std::vector<double> t;  // 0 = t_0 < ... < t_M = zeta
  std::vector<double> v;  // f(t_j) >= 0, endpoints 0

  double zeta() const { return t.back(); }
  double value_at(double x) const;   // linear interpolation
  void validate() const;
};

// Unit-speed clockwise contour exploration heights; length 2n-2 (the single
// vertex yields the degenerate empty path).
DiscreteExcursion contour_of(const OrderedTree& t);

// Depth-first queue (Lukasiewicz) path q_i = 1 + sum_{j<=i} (c(v_j) - 1).
DiscreteExcursion dfq_of(const OrderedTree& t);

// Stack-size simulation of the depth-first exploration; equals dfq_of on
// every tree (cross-checked in tests, kept as the independent route).
DiscreteExcursion dfq_by_stack(const OrderedTree& t);

OrderedTree tree_from_dfq(const DiscreteExcursion& q);
OrderedTree tree_from_contour(const DiscreteExcursion& e);

// Lifts a discrete path to a RealExcursion on the grid 0,1,...,m scaled by
// `time_scale` and `space_scale`.
RealExcursion lift(const DiscreteExcursion& q, double time_scale = 1.0,
                   double space_scale = 1.0);

// d_e^0(x,y) = e(x) + e(y) - 2 min_{x^y <= z <= xvy} e(z).
double excursion_distance(const RealExcursion& e, double x, double y);

// k i.i.d. Uniform[0,zeta] sample times; returns the symmetric matrix of
// pairwise d_e^0 values (row-major k*k).
std::vector<double> distance_matrix_from_excursion(const RealExcursion& e,
                                                   std::int64_t k, Rng& rng);

// Per-vertex pairs (q_i, dist(root, v_i)) for the DFQ/contour scaling-factor
// experiment, i = 1..n-1 in depth-first order.
struct DfqContourSeries {
  std::vector<std::int64_t> q;      // q_i at the vertex's exploration step
  std::vector<std::int64_t> depth;  // dist(root, v_i)
  double predicted_factor = 0.0;    // (1/2) sum c_i (c_i - 1) / (n - 1)
  bool degenerate = false;          // factor 0: constant-factor relation void
};
DfqContourSeries dfq_contour_series(const OrderedTree& t);

// --- text formats ---------------------------------------------------------
std::string to_path_text(const DiscreteExcursion& q);                  // ints, one line
DiscreteExcursion parse_path_text(const std::string& text, DiscreteExcursion::Flavor f);
std::string to_excursion_csv(const RealExcursion& e);                  // "t,value"
RealExcursion parse_excursion_csv(const std::string& text);

}  // namespace rtg
