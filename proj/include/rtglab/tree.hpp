#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rtg {

using Vertex = std::int32_t;

// Rooted tree with an explicit left-to-right order on the children of every
// vertex. Vertices are indices 0..n-1 (labels, when any, live in
// LabelledTree). Immutable after construction.
struct OrderedTree {
  Vertex root = 0;
  std::vector<Vertex> parent;             // parent[v], -1 at the root
  std::vector<std::int64_t> child_off;    // CSR offsets, size n+1
  std::vector<Vertex> child_list;         // children in sibling order

  std::int64_t size() const { return static_cast<std::int64_t>(parent.size()); }

  std::span<const Vertex> children(Vertex v) const {
    return {child_list.data() + child_off[v],
            static_cast<std::size_t>(child_off[v + 1] - child_off[v])};
  }

  std::int64_t child_count(Vertex v) const { return child_off[v + 1] - child_off[v]; }

  // Builds from parent pointers plus per-vertex ordered child lists.
  static OrderedTree build(Vertex root, std::vector<Vertex> parent,
                           const std::vector<std::vector<Vertex>>& children);

  // Builds the unique tree whose vertices, taken in depth-first order
  // 0,1,...,n-1, have the given child counts.
  static OrderedTree from_dfs_child_counts(std::span<const Vertex> counts);

  void validate() const;  // throws std::invalid_argument on a malformed tree
};

// First-visit (depth-first) order of the contour exploration; starts at the
// root, every vertex after its parent.
std::vector<Vertex> dfs_order(const OrderedTree& t);

// Distance to the root for every vertex.
std::vector<Vertex> depths(const OrderedTree& t);

// Rooted tree on labels 1..n. Children are implicitly ordered by increasing
// label (the convention fixed for depth-first exploration of labelled
// structures). Index 0 of `parent` is unused.
struct LabelledTree {
  std::int32_t n = 0;
  std::int32_t root = 0;                 // 1-based label
  std::vector<std::int32_t> parent;      // size n+1; parent[root] == root

  void validate() const;

  // Ordered view with children sorted by increasing label. `label` maps the
  // OrderedTree vertex index (depth-first position) back to the label.
  struct OrderedView {
    OrderedTree tree;
    std::vector<std::int32_t> label;     // size n, label of dfs-position i
  };
  OrderedView ordered_view() const;

  std::vector<std::int32_t> children_of(std::int32_t label) const;  // sorted

  // Number of edges on the path between two labels.
  std::int32_t distance(std::int32_t a, std::int32_t b) const;
  std::int32_t depth(std::int32_t label) const;
};

// c_1..c_n with sum n-1; index 0 unused.
struct ChildSequence {
  std::vector<std::int32_t> c;  // size n+1

  std::int32_t n() const { return static_cast<std::int32_t>(c.size()) - 1; }
  void validate() const;        // throws unless sum == n-1
};

// Entry i = number of children of the vertex labelled i.
ChildSequence child_counts(const LabelledTree& t);

// Attaches labels (a permutation of 1..n, in dfs-position order) to an
// ordered tree, dropping the ordering; the canonical by-label child order
// takes over.
LabelledTree forget_order(const OrderedTree& t, std::span<const std::int32_t> labels);

// --- text formats ---------------------------------------------------------
// Parent-array format: line 1 "n root_label", then n lines "label
// parent_label" (the root repeats its own label). Edge-list format: one
// "u v" pair per line, 1-based labels.

std::string to_parent_text(const LabelledTree& t);
LabelledTree parse_parent_text(const std::string& text);
std::string to_edge_text(const LabelledTree& t);
LabelledTree parse_edge_text(const std::string& text, std::int32_t root);

}  // namespace rtg
