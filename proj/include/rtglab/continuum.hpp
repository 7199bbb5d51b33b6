#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rtglab/graph.hpp"
#include "rtglab/path_codes.hpp"
#include "rtglab/rng.hpp"
#include "rtglab/samplers.hpp"
#include "rtglab/segment_graph.hpp"

namespace rtg {

// Excursion reweighted by the s-th power of its area, approximated by
// area-weighted resampling from a pool of rescaled SRW excursions.
struct TiltedExcursionSample {
  RealExcursion e;    // unit length, values in standard-excursion units
  std::int32_t s = 0;
  double integral = 0.0;  // int_0^1 e
};

class TiltedExcursionSampler {
 public:
  // gridsize M: the backing walk has M steps (M/2 up, so trees of ~M/2
  // vertices); pool regenerated from (seed, stream id) like the tree pools.
  TiltedExcursionSampler(std::int32_t s, std::int64_t gridsize, std::uint64_t seed,
                         std::int64_t pool_size = 0);
  TiltedExcursionSample sample(Rng& rng) const;
  const PoolDiagnostics& diagnostics() const { return diag_; }

 private:
  std::int32_t s_;
  std::int64_t halfsteps_;
  std::uint64_t seed_;
  std::optional<WeightedPool> pool_;
  PoolDiagnostics diag_;
};

TiltedExcursionSample tilted_excursion(std::int32_t s, std::int64_t gridsize, Rng& rng,
                                       std::uint64_t pool_seed, std::int64_t pool_size = 0);

// Finite approximant of (G^s, d^s): the metric tree coded by 2*e with s
// vertex identifications at i.i.d. uniform points under the graph of 2*e.
struct GluedGraph {
  SegmentGraph graph;
  std::vector<std::int32_t> node_at_time;  // grid index -> node id (time measure)
  std::vector<std::pair<std::int32_t, std::int32_t>> identified;  // merged node pairs
  double max_height_rounding = 0.0;        // grid error of the identifications
  double total_height_scale = 1.0;

  // Point sampled from the push-forward of the uniform time measure.
  PointRef sample_time_point(Rng& rng) const;
  double time_point_distance(double x1, double x2) const;
};

GluedGraph glue_surplus_points(const TiltedExcursionSample& e, std::int32_t s, Rng& rng);

// Builds the metric tree of a grid excursion as a SegmentGraph (exact for
// the piecewise-linear interpolation restricted to grid points).
GluedGraph excursion_tree_graph(const RealExcursion& f);

// Fixed-surplus continuum construction: kernel from the normalized kernel law, core lengths
// X * Dirichlet, then k line-breaking attachments from rate-t arrivals on
// [X, infinity).
struct ContinuumGraph {
  SegmentGraph graph;
  MultiGraph kernel;         // sampled kernel (labels 1..2(s-1))
  double core_length = 0.0;  // X
};
ContinuumGraph continuum_graph_construct(std::int32_t s, std::int64_t k, Rng& rng);

// Deterministic time-by-x, space-by-sqrt(x) rescaling (e -> e_x).
RealExcursion rescale_excursion(const RealExcursion& e, double x);

}  // namespace rtg
