#include "doctest.h"

#include <map>
#include <set>

#include "rtglab/graph.hpp"
#include "rtglab/linebreak.hpp"
#include "test_helpers.hpp"

using namespace rtg;

namespace {

ConnectedGraph cycle_graph(std::int32_t k) {
  ConnectedGraph g;
  g.n = k;
  for (std::int32_t v = 1; v <= k; ++v) g.edges.emplace_back(std::min(v, v % k + 1), std::max(v, v % k + 1));
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

// all labelled trees rooted at 1 on [n], via words starting with 1
std::vector<LabelledTree> trees_rooted_at_1(std::int32_t n) {
  std::vector<LabelledTree> out;
  std::int64_t words = 1;
  for (std::int32_t i = 0; i < n - 2; ++i) words *= n;
  for (std::int64_t code = 0; code < words; ++code) {
    CodingWord w;
    w.n = n;
    w.w.assign(n - 1, 1);
    std::int64_t c = code;
    for (std::int32_t i = 1; i < n - 1; ++i) {
      w.w[i] = static_cast<std::int32_t>(c % n) + 1;
      c /= n;
    }
    out.push_back(decode(w));
  }
  return out;
}

}  // namespace

TEST_CASE("surplus") {
  ConnectedGraph tree;
  tree.n = 4;
  tree.edges = {{1, 2}, {1, 3}, {3, 4}};
  CHECK(surplus(tree) == 0);
  CHECK(surplus(cycle_graph(3)) == 1);

  // 21 vertices, 23 edges: surplus 3 needs 21 - 1 + 3 = 23 edges
  ConnectedGraph big;
  big.n = 21;
  for (std::int32_t v = 2; v <= 21; ++v) big.edges.emplace_back(v - 1, v);  // path
  big.edges.emplace_back(1, 10);
  big.edges.emplace_back(5, 15);
  big.edges.emplace_back(12, 21);
  std::sort(big.edges.begin(), big.edges.end());
  CHECK(surplus(big) == 3);

  MultiGraph disconnected;
  disconnected.n = 3;
  disconnected.edges = {{1, 2, 1}};
  CHECK_THROWS_AS(surplus(disconnected), std::invalid_argument);
}

TEST_CASE("core: peeling") {
  ConnectedGraph tree;
  tree.n = 5;
  tree.edges = {{1, 2}, {2, 3}, {2, 4}, {4, 5}};
  CHECK(core(tree).edges.empty());

  ConnectedGraph cyc = cycle_graph(5);
  MultiGraph cc = core(cyc);
  CHECK(cc.edges.size() == 5);

  // cycle with a pendant path: only the cycle survives
  ConnectedGraph g = cycle_graph(4);
  g.n = 7;
  g.edges.emplace_back(2, 5);
  g.edges.emplace_back(5, 6);
  g.edges.emplace_back(6, 7);
  std::sort(g.edges.begin(), g.edges.end());
  MultiGraph c = core(g);
  CHECK(c.edge_count() == 4);
  for (const auto& e : c.edges) CHECK(e.v <= 4);
}

TEST_CASE("kernel: cycle, theta, dumbbell") {
  // surplus 1: kernel empty by convention, cycle recorded
  KernelDecomp k1 = kernel(cycle_graph(6));
  CHECK(k1.kernel.edges.empty());
  CHECK(k1.cycle.size() == 6);

  // theta graph: 1 and 5 joined by three disjoint paths
  ConnectedGraph theta;
  theta.n = 5;
  theta.edges = {{1, 2}, {2, 5}, {1, 3}, {3, 5}, {1, 4}, {4, 5}};
  std::sort(theta.edges.begin(), theta.edges.end());
  KernelDecomp kt = kernel(theta);
  REQUIRE(kt.kernel.edges.size() == 1);
  CHECK(kt.kernel.edges[0].mult == 3);
  CHECK(kt.kernel.edges[0].u == 1);
  CHECK(kt.kernel.edges[0].v == 5);

  // two disjoint cycles joined by a path: two loops plus a bridge
  ConnectedGraph dumb;
  dumb.n = 7;
  dumb.edges = {{1, 2}, {2, 3}, {1, 3},  // triangle at 3
                {3, 4}, {4, 5},          // bridge path
                {5, 6}, {6, 7}, {5, 7}};  // triangle at 5
  std::sort(dumb.edges.begin(), dumb.edges.end());
  KernelDecomp kd = kernel(dumb);
  std::int32_t loops = 0, bridges = 0;
  for (const auto& e : kd.kernel.edges) {
    if (e.u == e.v)
      loops += e.mult;
    else
      bridges += e.mult;
  }
  CHECK(loops == 2);
  CHECK(bridges == 1);

  // surplus preserved and reconstruction is lossless on every enumerated graph
  for (std::int32_t n = 3; n <= 6; ++n) {
    for (std::int32_t s = 0; s <= 3; ++s) {
      for (const auto& g : enumerate_Gns(n, s)) {
        MultiGraph c = core(g);
        KernelDecomp kk = kernel(g);
        if (s == 0) {
          CHECK(c.edges.empty());
          CHECK(kk.kernel.edges.empty());
        } else {
          // the core has the same surplus
          std::set<std::int32_t> live;
          for (const auto& e : c.edges) {
            live.insert(e.u);
            live.insert(e.v);
          }
          CHECK(1 + c.edge_count() - static_cast<std::int64_t>(live.size()) == s);
          if (s >= 2) {
            auto deg = kk.kernel.degrees();
            std::int64_t kverts = 0;
            for (std::int32_t v = 1; v <= kk.kernel.n; ++v)
              if (deg[v] > 0) {
                CHECK(deg[v] >= 3);
                ++kverts;
              }
            CHECK(1 + kk.kernel.edge_count() - kverts == s);
          }
          MultiGraph rebuilt = core_from_kernel(kk, g.n);
          CHECK(to_multigraph_text(rebuilt) == to_multigraph_text(c));
        }
      }
    }
  }
}

TEST_CASE("depth-first tree and marks") {
  // a tree input is its own depth-first tree, no surplus edges
  ConnectedGraph tree;
  tree.n = 4;
  tree.edges = {{1, 2}, {1, 3}, {3, 4}};
  DepthFirstResult r = depth_first_tree(tree);
  CHECK(r.surplus_edges.empty());
  CHECK(r.tree.root == 1);
  CHECK(r.tree.parent[2] == 1);
  CHECK(r.tree.parent[3] == 1);
  CHECK(r.tree.parent[4] == 3);

  // triangle: both 2 and 3 are neighbours of the root, so they are both its
  // children; the edge 2-3 surfaces as a surplus edge while exploring 2 with
  // 3 still on the stack
  DepthFirstResult tri = depth_first_tree(cycle_graph(3));
  CHECK(tri.tree.parent[2] == 1);
  CHECK(tri.tree.parent[3] == 1);
  REQUIRE(tri.surplus_edges.size() == 1);
  CHECK(tri.surplus_edges[0] == std::pair<std::int32_t, std::int32_t>{2, 3});
  REQUIRE(tri.code.marks.size() == 1);
  CHECK(tri.code.marks[0] == std::pair<std::int32_t, std::int32_t>{1, 1});

  // round-trip through the canonical decode, exhaustively for n <= 5
  for (std::int32_t n = 1; n <= 5; ++n) {
    std::int32_t max_s = n * (n - 1) / 2 - (n - 1);
    for (std::int32_t s = 0; s <= max_s; ++s) {
      for (const auto& g : enumerate_Gns(n, s)) {
        DepthFirstResult df = depth_first_tree(g);
        CHECK(static_cast<std::int64_t>(df.code.marks.size()) == s);
        // decode against the recorded exploration order
        ConnectedGraph canon = marked_dfq_to_graph(df.code);
        ConnectedGraph relabelled;
        relabelled.n = g.n;
        for (auto [u, v] : canon.edges) {
          std::int32_t ru = df.order[u - 1], rv = df.order[v - 1];
          relabelled.edges.emplace_back(std::min(ru, rv), std::max(ru, rv));
        }
        std::sort(relabelled.edges.begin(), relabelled.edges.end());
        CHECK(rtgtest::graph_key(relabelled) == rtgtest::graph_key(g));
        // the decoded graph's own depth-first tree has the same dfq path
        DepthFirstResult df2 = depth_first_tree(canon);
        CHECK(df2.code.q.q == df.code.q.q);
        // and exploration order of the canonical graph is the identity
        for (std::size_t i = 0; i < df2.order.size(); ++i)
          CHECK(df2.order[i] == static_cast<std::int32_t>(i) + 1);
      }
    }
  }

  // graphs over a fixed tree: 2^{a(T)} decodable graphs, all distinct
  for (std::int32_t n = 2; n <= 4; ++n) {
    std::int64_t total = 0;
    for (const auto& t : trees_rooted_at_1(n)) {
      auto view = t.ordered_view();
      DiscreteExcursion q = dfq_of(view.tree);
      auto slots = mark_slots(q);
      std::int64_t a = area(q);
      REQUIRE(static_cast<std::int64_t>(slots.size()) == a);
      std::set<std::string> graphs;
      for (std::int64_t mask = 0; mask < (std::int64_t{1} << a); ++mask) {
        std::vector<std::pair<std::int32_t, std::int32_t>> marks;
        for (std::int64_t b = 0; b < a; ++b)
          if (mask & (std::int64_t{1} << b)) marks.push_back(slots[b]);
        ConnectedGraph g = graph_from_tree_and_marks(t, marks);
        graphs.insert(rtgtest::graph_key(g));
        // depth-first tree of the result is the input tree
        DepthFirstResult df = depth_first_tree(g);
        CHECK(rtgtest::tree_key(df.tree) == rtgtest::tree_key(t));
      }
      CHECK(static_cast<std::int64_t>(graphs.size()) == (std::int64_t{1} << a));
      total += std::int64_t{1} << a;
    }
    CHECK(total == count_connected_graphs(n));
  }
}

TEST_CASE("area") {
  OrderedTree path = OrderedTree::from_dfs_child_counts(std::vector<Vertex>{1, 1, 1, 0});
  CHECK(area(path) == 0);
  for (std::int32_t n : {3, 5, 8}) {
    std::vector<Vertex> counts(n, 0);
    counts[0] = n - 1;
    OrderedTree star = OrderedTree::from_dfs_child_counts(counts);
    CHECK(area(star) == static_cast<std::int64_t>(n - 1) * (n - 2) / 2);
  }
  Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    LabelledTree t = uniform_tree_rooted_at_1(20, rng);
    auto view = t.ordered_view();
    DiscreteExcursion q = dfq_of(view.tree);
    CHECK(static_cast<std::int64_t>(mark_slots(q).size()) == area(q));
  }
}

TEST_CASE("enumeration oracles") {
  CHECK(enumerate_Gns(3, 0).size() == 3);
  CHECK(enumerate_Gns(4, 0).size() == 16);
  CHECK(enumerate_Gns(4, 1).size() == 15);
  CHECK(count_connected_graphs(4) == 38);
  CHECK_THROWS_AS(enumerate_Gns(9, 0), std::invalid_argument);

  // sum over trees rooted at 1 of 2^{a(T)} equals the connected-graph count
  for (std::int32_t n = 2; n <= 5; ++n) {
    std::int64_t total = 0;
    for (const auto& t : trees_rooted_at_1(n)) {
      auto view = t.ordered_view();
      total += std::int64_t{1} << area(view.tree);
    }
    CHECK(total == count_connected_graphs(n));
  }
}

TEST_CASE("graphs with a given core: k n^{n-k-1}") {
  CHECK(graphs_with_core_count(4, 4) == doctest::Approx(1.0));
  // n = 4, core = triangle on {1,2,3}: 3 graphs by brute force
  {
    std::int64_t brute = 0;
    MultiGraph triangle;
    triangle.n = 4;
    triangle.edges = {{1, 2, 1}, {1, 3, 1}, {2, 3, 1}};
    for (std::int32_t s = 0; s <= 3; ++s)
      for (const auto& g : enumerate_Gns(4, s)) {
        MultiGraph c = core(g);
        if (to_multigraph_text(c) == to_multigraph_text(triangle)) ++brute;
      }
    CHECK(brute == 3);
    CHECK(graphs_with_core_count(4, 3) == doctest::Approx(3.0));
  }
  // n = 5, k = 3: 15
  {
    std::int64_t brute = 0;
    MultiGraph triangle;
    triangle.n = 5;
    triangle.edges = {{1, 2, 1}, {1, 3, 1}, {2, 3, 1}};
    for (std::int32_t s = 0; s <= 6; ++s)
      for (const auto& g : enumerate_Gns(5, s)) {
        MultiGraph c = core(g);
        if (to_multigraph_text(c) == to_multigraph_text(triangle)) ++brute;
      }
    CHECK(brute == 15);
    CHECK(graphs_with_core_count(5, 3) == doctest::Approx(15.0));
  }
}

TEST_CASE("kernel weights and kappa") {
  MultiGraph triple;
  triple.n = 2;
  triple.edges = {{1, 2, 3}};
  CHECK(kernel_weight(triple) == Rational(1, 6));

  MultiGraph dumbbell;
  dumbbell.n = 2;
  dumbbell.edges = {{1, 1, 1}, {1, 2, 1}, {2, 2, 1}};
  CHECK(kernel_weight(dumbbell) == Rational(1, 4));

  auto kernels2 = enumerate_kernels(2);
  CHECK(kernels2.size() == 2);
  double total = 0.0;
  for (const auto& k : kernels2) total += kernel_weight(k).value();
  CHECK(Rational(1, 6).value() / total == doctest::Approx(0.4));
  CHECK(Rational(1, 4).value() / total == doctest::Approx(0.6));

  CHECK(kappa(1) == Rational(1, 1));
  CHECK(kappa(2) == Rational(5, 48));

  // |G_n^1| exact vs the asymptotic formula: the ratio approaches 1
  double r4 = static_cast<double>(enumerate_Gns(4, 1).size()) / wright_asymptotic(4, 1);
  double r6 = static_cast<double>(enumerate_Gns(6, 1).size()) / wright_asymptotic(6, 1);
  double r8 = static_cast<double>(enumerate_Gns(8, 1).size()) / wright_asymptotic(8, 1);
  CHECK(std::abs(r8 - 1.0) < std::abs(r6 - 1.0));
  CHECK(std::abs(r6 - 1.0) < std::abs(r4 - 1.0));

  MultiGraph bad;
  bad.n = 2;
  bad.edges = {{1, 2, 1}};
  CHECK_THROWS_AS(kernel_weight(bad), std::invalid_argument);
}

TEST_CASE("marked dfq validation") {
  MarkedDfq m;
  m.q.flavor = DiscreteExcursion::Flavor::dfq;
  m.q.q = {1, 2, 1, 0};
  m.marks = {{1, 1}};
  CHECK_NOTHROW(m.validate());
  m.marks = {{1, 2}};  // j >= q_1
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.marks = {{3, 1}};  // index out of range
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.marks = {{1, 1}, {1, 1}};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("multigraph text round-trip") {
  MultiGraph g;
  g.n = 3;
  g.edges = {{1, 1, 2}, {1, 2, 1}, {2, 3, 3}};
  MultiGraph back = parse_multigraph_text(to_multigraph_text(g));
  CHECK(to_multigraph_text(back) == to_multigraph_text(g));
}
