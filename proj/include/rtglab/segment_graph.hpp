#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtglab/rng.hpp"

namespace rtg {

// A point on a segment graph: offset from the `u` end of a segment.
struct PointRef {
  std::int32_t seg = 0;
  double off = 0.0;
};

// Edge-weighted graph whose edges are line segments of positive length;
// arbitrary interior points are addressed by PointRef. Built through the
// mutating methods, then frozen; distance queries require a frozen graph.
class SegmentGraph {
 public:
  enum class NodeKind : std::uint8_t { branch = 0, leaf = 1, kernel = 2, attach = 3 };

  struct Segment {
    std::int32_t u = 0, v = 0;
    double len = 0.0;
  };

  std::int32_t add_node(NodeKind kind = NodeKind::branch);
  std::int32_t add_segment(std::int32_t u, std::int32_t v, double len);

  // Splits the segment at the given interior point; returns the new node.
  // Invalidates PointRefs into the split segment (the segment id is reused
  // for the u-side half).
  std::int32_t split_at(const PointRef& p, NodeKind kind = NodeKind::branch);

  // Identifies two nodes (a zero-length connection). Applied at freeze().
  void merge_nodes(std::int32_t a, std::int32_t b);

  void freeze();
  bool frozen() const { return frozen_; }

  std::int64_t node_count() const { return static_cast<std::int64_t>(kind_.size()); }
  std::int64_t segment_count() const { return static_cast<std::int64_t>(segs_.size()); }
  const Segment& segment(std::int32_t i) const { return segs_[i]; }
  NodeKind node_kind(std::int32_t i) const { return kind_[i]; }
  double total_length() const;

  // Number of independent cycles, 1 + |E| - |V| over live nodes (frozen).
  std::int64_t first_betti() const;

  // Exact weighted shortest-path distance between arbitrary points.
  double distance(const PointRef& a, const PointRef& b) const;
  double node_distance(std::int32_t a, std::int32_t b) const;

  PointRef point_at_node(std::int32_t node) const;

  // Uniform w.r.t. the length measure.
  PointRef sample_point(Rng& rng) const;

  std::int32_t resolve(std::int32_t node) const;  // merge-class representative

  void validate_point(const PointRef& p) const;

 private:
  std::vector<Segment> segs_;
  std::vector<NodeKind> kind_;
  std::vector<std::int32_t> dsu_;
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> adj_;  // (segment, other end)
  std::vector<double> cumlen_;
  bool frozen_ = false;

  std::int32_t find(std::int32_t x) const;
  std::vector<double> dijkstra_from(const std::vector<std::pair<std::int32_t, double>>& sources) const;
};

// Serialization: node lines "node <id> <kind>", segment lines
// "seg <u> <v> <length>".
std::string to_segment_text(const SegmentGraph& g);

// Pairwise distances between k length-measure-uniform points, as CSV with
// the sampled PointRef provenance:
// "i,j,seg_i,off_i,seg_j,off_j,distance".
std::string distance_matrix_csv(const SegmentGraph& g, std::int64_t k, Rng& rng);

// Binary metric tree from the CRT line-breaking construction: leaf 0 is the
// root, leaves 1..k in order of attachment.
struct MetricTreeApprox {
  SegmentGraph graph;
  std::vector<std::int32_t> leaf_node;  // leaf_node[label], labels 0..k

  // Canonical signature of the leaf-labelled shape, edge lengths ignored.
  std::string shape_signature() const;
};

std::string to_metric_tree_text(const MetricTreeApprox& t);

}  // namespace rtg
