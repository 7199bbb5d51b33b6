#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rtglab/path_codes.hpp"
#include "rtglab/tree.hpp"

namespace rtg {

// Labelled multigraph on vertices 1..n; loops allowed, multiplicities >= 1.
struct MultiGraph {
  struct Edge {
    std::int32_t u = 0, v = 0;   // u <= v
    std::int32_t mult = 1;
  };
  std::int32_t n = 0;
  std::vector<Edge> edges;       // distinct, sorted by (u, v)

  std::int64_t edge_count() const;            // with multiplicity
  std::vector<std::int64_t> degrees() const;  // loop contributes 2
  bool connected() const;                     // over non-isolated + all if n>0
  void normalize();                           // sort/merge duplicates
};

// Simple connected graph on 1..n.
struct ConnectedGraph {
  std::int32_t n = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;  // u < v, sorted

  void validate() const;  // throws unless simple and connected
  std::vector<std::vector<std::int32_t>> adjacency() const;  // sorted lists, index 0 unused
  MultiGraph as_multigraph() const;
};

// s(G) = 1 + |E| - |V|.
std::int64_t surplus(const MultiGraph& g);
std::int64_t surplus(const ConnectedGraph& g);

// Maximum induced subgraph of minimum degree >= 2 (iterated leaf peeling);
// empty when g is a tree. Vertex labels are preserved.
MultiGraph core(const ConnectedGraph& g);

// Kernel plus everything needed to reconstruct the core exactly: for every
// kernel edge copy, the full label path it contracts. For surplus 1 the
// kernel is empty by convention and the cycle is recorded separately.
struct KernelDecomp {
  MultiGraph kernel;                               // empty for s <= 1
  std::vector<std::vector<std::int32_t>> paths;    // one per kernel edge copy
  std::vector<std::int32_t> cycle;                 // s = 1 only: the cycle labels
};
KernelDecomp kernel(const ConnectedGraph& g);

// Rebuilds the core's edge set from the decomposition (lossless check).
MultiGraph core_from_kernel(const KernelDecomp& k, std::int32_t n);

// DFQ path of a connected graph plus the surplus-edge marks. A mark (i, j),
// 1 <= j < q_i, is the edge from the vertex explored at step i+1 to the
// vertex at position j (from the bottom) of the stack at that moment.
struct MarkedDfq {
  DiscreteExcursion q;                                   // dfq flavor, length n
  std::vector<std::pair<std::int32_t, std::int32_t>> marks;
  void validate() const;
};

// Depth-first exploration from the vertex labelled 1, children ordered by
// increasing label. Returns the spanning tree, the surplus edges, the marks,
// and the exploration order (labels in first-visit order).
struct DepthFirstResult {
  LabelledTree tree;
  std::vector<std::pair<std::int32_t, std::int32_t>> surplus_edges;
  MarkedDfq code;
  std::vector<std::int32_t> order;  // order[i] = label explored at step i+1
};
DepthFirstResult depth_first_tree(const ConnectedGraph& g);

MarkedDfq graph_to_marked_dfq(const ConnectedGraph& g);

// Decodes to the graph whose labels are the exploration order (its
// depth-first tree is exactly tree_from_dfq(code.q) in dfs labelling).
ConnectedGraph marked_dfq_to_graph(const MarkedDfq& code);

// Graph obtained from a labelled tree rooted at 1 plus a set of marks; the
// depth-first tree of the result is the input tree.
ConnectedGraph graph_from_tree_and_marks(
    const LabelledTree& t, const std::vector<std::pair<std::int32_t, std::int32_t>>& marks);

// All legal mark slots S = {(i, j): 1 <= i <= n-1, 1 <= j < q_i} of a tree
// rooted at 1; a(T) = |S|.
std::vector<std::pair<std::int32_t, std::int32_t>> mark_slots(const DiscreteExcursion& q);

// a(T) = sum_{i=1}^{n-1} (q_i - 1).
std::int64_t area(const DiscreteExcursion& q);
std::int64_t area(const OrderedTree& t);

// Exhaustive list of connected graphs on [n] with surplus s (n <= 8 guard).
std::vector<ConnectedGraph> enumerate_Gns(std::int32_t n, std::int32_t s);

// Number of connected graphs on [n] whose core is a fixed k-vertex core:
// k * n^{n-k-1}.
double graphs_with_core_count(std::int32_t n, std::int32_t k);

// Small exact rational (for kernel weights and kappa).
struct Rational {
  std::int64_t num = 0, den = 1;
  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);
  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// Unnormalized kernel weight prod_e 2^{-[e loop]} / mult(e)!.
Rational kernel_weight(const MultiGraph& k);

// All 3-regular multigraphs on [2(s-1)] (the surplus-s kernels), s >= 2.
std::vector<MultiGraph> enumerate_kernels(std::int32_t s);

// Normalizing constant kappa(s) of the fixed-surplus connected-graph count
// asymptotics; kappa(1) = 1, computable exactly for s <= 4.
Rational kappa(std::int32_t s);

// (1+o(1))-free evaluation of kappa(s) n^{n-2+3s/2} Integral x^{3s-3}e^{-x^2/2}.
double wright_asymptotic(std::int32_t n, std::int32_t s);

// Exact count of connected graphs on [n] by direct enumeration (n <= 8).
std::int64_t count_connected_graphs(std::int32_t n);

// --- text formats ---------------------------------------------------------
// Multigraph rows "u v m"; simple graphs as edge lists "u v".
std::string to_multigraph_text(const MultiGraph& g);
MultiGraph parse_multigraph_text(const std::string& text);
std::string to_graph_text(const ConnectedGraph& g);
ConnectedGraph parse_graph_text(const std::string& text);

}  // namespace rtg
