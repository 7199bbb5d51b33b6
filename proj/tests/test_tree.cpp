#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "rtglab/rng.hpp"
#include "rtglab/tree.hpp"
#include "test_helpers.hpp"

using namespace rtg;

namespace {

LabelledTree path3() {
  LabelledTree t;
  t.n = 3;
  t.root = 1;
  t.parent = {0, 1, 1, 2};
  return t;
}

}  // namespace

TEST_CASE("child_counts on the named examples") {
  LabelledTree single;
  single.n = 1;
  single.root = 1;
  single.parent = {0, 1};
  auto c1 = child_counts(single);
  CHECK(c1.c[1] == 0);

  auto c3 = child_counts(path3());
  CHECK(c3.c[1] == 1);
  CHECK(c3.c[2] == 1);
  CHECK(c3.c[3] == 0);

  auto cf = child_counts(rtgtest::fig2_tree());
  CHECK(cf.c[3] == 2);
  CHECK(cf.c[4] == 1);
  CHECK(cf.c[5] == 1);
  CHECK(cf.c[8] == 3);
  CHECK(cf.c[9] == 1);
  CHECK(cf.c[10] == 1);
  CHECK(cf.c[1] == 0);
  CHECK(cf.c[2] == 0);
  CHECK(cf.c[6] == 0);
  CHECK(cf.c[7] == 0);
  std::int64_t sum = std::accumulate(cf.c.begin(), cf.c.end(), std::int64_t{0});
  CHECK(sum == 9);
}

TEST_CASE("dfs_order basics") {
  OrderedTree single = OrderedTree::from_dfs_child_counts(std::vector<Vertex>{0});
  CHECK(dfs_order(single) == std::vector<Vertex>{0});

  // root with two ordered children
  OrderedTree two = OrderedTree::from_dfs_child_counts(std::vector<Vertex>{2, 0, 0});
  CHECK(dfs_order(two) == std::vector<Vertex>{0, 1, 2});

  // binary of depth 2: left subtree fully listed before the right child
  // counts in dfs order: root(2), L(2), LL(0), LR(0), R(0)
  OrderedTree bin = OrderedTree::from_dfs_child_counts(std::vector<Vertex>{2, 2, 0, 0, 0});
  auto order = dfs_order(bin);
  CHECK(order == std::vector<Vertex>{0, 1, 2, 3, 4});
  CHECK(bin.parent[4] == 0);  // right child hangs from the root
  CHECK(bin.parent[2] == 1);
  CHECK(bin.parent[3] == 1);
  // every vertex after its parent
  for (std::size_t i = 1; i < order.size(); ++i) {
    auto at = std::find(order.begin(), order.end(), bin.parent[order[i]]);
    CHECK(at < order.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

TEST_CASE("forget_order and the by-label convention") {
  // ordered root with children in order (b, a); labels: root=3, b=2, a=1
  std::vector<Vertex> parent{-1, 0, 0};
  std::vector<std::vector<Vertex>> kids{{1, 2}, {}, {}};
  OrderedTree t = OrderedTree::build(0, parent, kids);
  std::vector<std::int32_t> labels{3, 2, 1};
  LabelledTree lt = forget_order(t, labels);
  CHECK(lt.root == 3);
  CHECK(lt.children_of(3) == std::vector<std::int32_t>{1, 2});

  // idempotence: ordered_view then forget_order with the same labels
  auto view = lt.ordered_view();
  LabelledTree lt2 = forget_order(view.tree, view.label);
  CHECK(rtgtest::tree_key(lt) == rtgtest::tree_key(lt2));
}

TEST_CASE("forget_order round-trip preserves the child-count multiset") {
  Rng rng(12345);
  for (int rep = 0; rep < 50; ++rep) {
    std::int32_t n = 2 + static_cast<std::int32_t>(rng.uniform_int(12));
    // random tree via random parent pointers in dfs order
    std::vector<Vertex> counts;
    {
      // random dfq path by random composition
      std::vector<Vertex> parent(n, -1);
      std::vector<std::vector<Vertex>> kids(n);
      for (Vertex v = 1; v < n; ++v) {
        Vertex p = static_cast<Vertex>(rng.uniform_int(v));
        parent[v] = p;
        kids[p].push_back(v);
      }
      OrderedTree t = OrderedTree::build(0, parent, kids);
      std::vector<std::int32_t> labels(n);
      std::iota(labels.begin(), labels.end(), 1);
      rng.shuffle(labels);
      LabelledTree lt = forget_order(t, labels);
      ChildSequence cs = child_counts(lt);
      std::vector<std::int32_t> a(cs.c.begin() + 1, cs.c.end());
      std::sort(a.begin(), a.end());
      for (Vertex v = 0; v < n; ++v) counts.push_back(static_cast<Vertex>(kids[v].size()));
      std::sort(counts.begin(), counts.end());
      CHECK(std::equal(a.begin(), a.end(), counts.begin()));
    }
  }
}

TEST_CASE("parent-array and edge-list formats round-trip") {
  LabelledTree t = rtgtest::fig2_tree();
  LabelledTree back = parse_parent_text(to_parent_text(t));
  CHECK(rtgtest::tree_key(t) == rtgtest::tree_key(back));

  LabelledTree from_edges = parse_edge_text(to_edge_text(t), t.root);
  CHECK(rtgtest::tree_key(t) == rtgtest::tree_key(from_edges));
}

TEST_CASE("validation rejects malformed structures") {
  LabelledTree bad;
  bad.n = 3;
  bad.root = 1;
  bad.parent = {0, 1, 3, 2};  // 2 <-> 3 cycle
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  ChildSequence cs;
  cs.c = {0, 1, 1, 1};  // sums to 3, needs 2
  CHECK_THROWS_AS(cs.validate(), std::invalid_argument);

  CHECK_THROWS_AS(OrderedTree::from_dfs_child_counts(std::vector<Vertex>{1, 1}),
                  std::invalid_argument);
}
