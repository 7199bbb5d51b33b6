#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtglab/rng.hpp"
#include "rtglab/segment_graph.hpp"
#include "rtglab/tree.hpp"

namespace rtg {

// Word v_1..v_{n-1} with symbols in 1..n; in bijection with rooted labelled
// trees on [n]. The number of occurrences of i equals the child count of
// vertex i in the decoded tree.
struct CodingWord {
  std::int32_t n = 0;
  std::vector<std::int32_t> w;  // length n-1

  void validate() const;
};

CodingWord encode(const LabelledTree& t);
LabelledTree decode(const CodingWord& w);

// decode, also reporting |S_i| (vertices after i paths) for the subtree
// growth experiments: sizes[0] = 1, sizes.back() = n.
LabelledTree decode_with_subtree_sizes(const CodingWord& w, std::vector<std::int32_t>& sizes);

// Uniform rooted labelled tree on [n] (root uniform as well).
LabelledTree uniform_rooted_labelled_tree(std::int32_t n, Rng& rng);

// Uniform labelled tree rooted at vertex 1 (the depth-first-tree family).
LabelledTree uniform_tree_rooted_at_1(std::int32_t n, Rng& rng);

// Uniform tree with the given child sequence: the bijection applied to a
// uniform shuffle of the multiset word.
LabelledTree sample_with_child_sequence(const ChildSequence& c, Rng& rng);

// Rooted Prufer code under the remove-the-largest-labelled-leaf rule; for
// trees rooted at 1 it equals the reversed coding word.
std::vector<std::int32_t> rooted_prufer_code(const LabelledTree& t);

// P(dist(root, 1) = d) for a uniform rooted labelled tree on [n].
double root_distance_pmf(std::int32_t n, std::int32_t d);

// P(dist(i+1, S_i) = d | S_i), d >= 1, for |S_i| = k, given i+1 not in S_i.
double subtree_growth_law(std::int32_t n, std::int32_t k, std::int32_t d);

// Arrival times of the inhomogeneous Poisson process with rate t, generated
// by exact inversion from the offset (offset 0 gives the CRT schedule).
struct LineBreakSchedule {
  double offset = 0.0;
  std::vector<double> s;  // strictly increasing arrivals
};
LineBreakSchedule poisson_rate_t_arrivals(std::int64_t count, double offset, Rng& rng);

// Aldous line-breaking construction truncated at k branches.
MetricTreeApprox crt_linebreak(std::int64_t k, Rng& rng);

// Leaf-labelled tree for the Remy/Marchal sequential algorithms. Vertex 0 is
// the root (leaf label 0); leaf labels are stored per vertex, -1 internally.
struct GrowthTree {
  std::vector<std::int32_t> parent;             // -1 at root
  std::vector<std::vector<std::int32_t>> kids;
  std::vector<std::int32_t> leaf_label;         // -1 for internal vertices
  std::int32_t next_label = 2;

  static GrowthTree initial();                  // two vertices labelled 0, 1
  std::int64_t vertex_count() const { return static_cast<std::int64_t>(parent.size()); }
  std::int32_t distance(std::int32_t a, std::int32_t b) const;
  std::int32_t node_of_label(std::int32_t label) const;
  std::string shape_signature() const;          // rooted, leaf-labelled, order-free
};

// Subdivides a uniform edge and attaches the next leaf.
void remy_step(GrowthTree& t, Rng& rng);

// Marchal's alpha-weighted step, alpha in (1,2]; alpha = 2 coincides with
// Remy's algorithm in distribution.
void marchal_step(GrowthTree& t, double alpha, Rng& rng);

// i^{-(alpha-1)/alpha} * dist(leaf 0, leaf 1) for a stabilization check.
double marchal_rescaled_distance(const GrowthTree& t, double alpha, std::int64_t i);

// Long-run Marchal stepper: amortized O(1) per step via two urns (vertex
// weight c - alpha decomposes as (c-2) copies plus (2-alpha) per vertex with
// c >= 2). Same step distribution as marchal_step.
class MarchalRun {
 public:
  explicit MarchalRun(double alpha);
  void step(Rng& rng);
  const GrowthTree& tree() const { return tree_; }
  std::int64_t steps_done() const { return steps_; }
  double rescaled_01_distance() const;

 private:
  double alpha_;
  GrowthTree tree_;
  std::vector<std::int32_t> extra_child_urn_;  // v repeated (c(v) - 2) times
  std::vector<std::int32_t> branching_urn_;    // vertices with c(v) >= 2
  std::int64_t steps_ = 0;
};

std::string to_word_text(const CodingWord& w);
CodingWord parse_word_text(const std::string& text);

}  // namespace rtg
