#include "doctest.h"

#include <map>
#include <set>

#include "rtglab/linebreak.hpp"
#include "rtglab/stats.hpp"
#include "test_helpers.hpp"

using namespace rtg;

namespace {

CodingWord word_of(std::int32_t n, std::vector<std::int32_t> symbols) {
  CodingWord w;
  w.n = n;
  w.w = std::move(symbols);
  return w;
}

}  // namespace

TEST_CASE("encode matches the worked ten-vertex example") {
  CodingWord w = encode(rtgtest::fig2_tree());
  CHECK(w.w == std::vector<std::int32_t>{4, 8, 3, 8, 9, 3, 5, 8, 10});
}

TEST_CASE("decode recovers the worked example and the simple shapes") {
  LabelledTree t = decode(word_of(10, {4, 8, 3, 8, 9, 3, 5, 8, 10}));
  CHECK(rtgtest::tree_key(t) == rtgtest::tree_key(rtgtest::fig2_tree()));

  // path rooted at 1 with edges 1-2, 2-3 encodes to "1 2"
  LabelledTree path;
  path.n = 3;
  path.root = 1;
  path.parent = {0, 1, 1, 2};
  CHECK(encode(path).w == std::vector<std::int32_t>{1, 2});

  // star rooted at n
  LabelledTree star;
  star.n = 5;
  star.root = 5;
  star.parent = {0, 5, 5, 5, 5, 5};
  CHECK(encode(star).w == std::vector<std::int32_t>{5, 5, 5, 5});
}

TEST_CASE("the bijection: decode is total, encode inverts it") {
  // all of [3]^2 give 9 distinct trees (Cayley: 3^{3-1})
  std::set<std::string> trees3;
  for (std::int32_t a = 1; a <= 3; ++a)
    for (std::int32_t b = 1; b <= 3; ++b) trees3.insert(rtgtest::tree_key(decode(word_of(3, {a, b}))));
  CHECK(trees3.size() == 9);

  // encode(decode(w)) == w over all of [4]^3
  for (std::int32_t a = 1; a <= 4; ++a)
    for (std::int32_t b = 1; b <= 4; ++b)
      for (std::int32_t c = 1; c <= 4; ++c) {
        CodingWord w = word_of(4, {a, b, c});
        LabelledTree t = decode(w);
        CHECK(encode(t).w == w.w);
      }

  // occurrence counts equal child counts
  Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    std::int32_t n = 2 + static_cast<std::int32_t>(rng.uniform_int(9));
    CodingWord w;
    w.n = n;
    w.w.resize(n - 1);
    for (auto& x : w.w) x = static_cast<std::int32_t>(rng.uniform_int(n)) + 1;
    LabelledTree t = decode(w);
    ChildSequence cs = child_counts(t);
    std::vector<std::int32_t> occ(n + 1, 0);
    for (auto x : w.w) ++occ[x];
    for (std::int32_t v = 1; v <= n; ++v) CHECK(occ[v] == cs.c[v]);
  }
}

TEST_CASE("reversed coding word is the rooted Prufer code (root 1, largest-leaf rule)") {
  for (std::int32_t n = 2; n <= 5; ++n) {
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
      LabelledTree t = decode(w);
      REQUIRE(t.root == 1);
      std::vector<std::int32_t> rev(w.w.rbegin(), w.w.rend());
      CHECK(rooted_prufer_code(t) == rev);
    }
  }
}

TEST_CASE("sample_with_child_sequence: star, root law, uniformity") {
  Rng rng(99);
  // single vertex of count n-1 gives the star deterministically
  ChildSequence star;
  star.c = {0, 0, 4, 0, 0, 0};  // vertex 2 has all children, n = 5
  for (int rep = 0; rep < 20; ++rep) {
    LabelledTree t = sample_with_child_sequence(star, rng);
    CHECK(t.root == 2);
    for (std::int32_t v = 1; v <= 5; ++v)
      if (v != 2) CHECK(t.parent[v] == 2);
  }

  // P(root = i) = c_i / (n-1)
  ChildSequence c;
  c.c = {0, 2, 1, 0, 0};  // n = 4
  std::vector<std::int64_t> root_counts(5, 0);
  const std::int64_t draws = 60000;
  for (std::int64_t d = 0; d < draws; ++d) ++root_counts[sample_with_child_sequence(c, rng).root];
  CHECK(root_counts[3] == 0);
  CHECK(root_counts[4] == 0);
  TestResult root_law = chi_square({root_counts[1], root_counts[2]}, {2.0 / 3.0, 1.0 / 3.0});
  CHECK(root_law.p_value > 0.01);

  // uniform over the trees with one vertex of each count (c = (2,1,0,0) has
  // 3!/2! = 3 distinct words, hence 3 trees)
  std::map<std::string, std::int64_t> counts;
  for (std::int64_t d = 0; d < draws; ++d)
    ++counts[rtgtest::tree_key(sample_with_child_sequence(c, rng))];
  CHECK(counts.size() == 3);
  std::vector<std::int64_t> obs;
  for (auto& [k, v] : counts) obs.push_back(v);
  TestResult uni = chi_square(obs, std::vector<double>(obs.size(), 1.0 / obs.size()));
  CHECK(uni.p_value > 0.01);
}

TEST_CASE("conditioned-Poisson child sequences give the uniform rooted labelled law") {
  Rng rng(123);
  const std::int32_t n = 4;
  const std::int64_t draws = 128000;
  std::map<std::string, std::int64_t> counts;
  for (std::int64_t d = 0; d < draws; ++d) {
    // Poisson(1) i.i.d. conditioned on sum n-1 == multinomial balls-in-boxes
    ChildSequence c;
    c.c.assign(n + 1, 0);
    for (std::int32_t b = 0; b < n - 1; ++b) ++c.c[rng.uniform_int(n) + 1];
    ++counts[rtgtest::tree_key(sample_with_child_sequence(c, rng))];
  }
  CHECK(counts.size() == 64);  // 4^3 rooted labelled trees
  std::vector<std::int64_t> obs;
  for (auto& [k, v] : counts) obs.push_back(v);
  TestResult uni = chi_square(obs, std::vector<double>(obs.size(), 1.0 / 64.0));
  CHECK(uni.p_value > 0.01);
}

TEST_CASE("root distance pmf") {
  CHECK(root_distance_pmf(2, 0) == doctest::Approx(0.5));
  CHECK(root_distance_pmf(2, 1) == doctest::Approx(0.5));
  CHECK(root_distance_pmf(5, 0) == doctest::Approx(0.2));
  for (std::int32_t n : {2, 3, 7, 40}) {
    double total = 0.0;
    for (std::int32_t d = 0; d < n; ++d) total += root_distance_pmf(n, d);
    CHECK(total == doctest::Approx(1.0));
  }
  // Monte Carlo cross-check at n = 60
  Rng rng(17);
  const std::int32_t n = 60;
  const std::int64_t draws = 40000;
  std::vector<std::int64_t> obs(n, 0);
  for (std::int64_t d = 0; d < draws; ++d) {
    LabelledTree t = uniform_rooted_labelled_tree(n, rng);
    ++obs[t.depth(1)];
  }
  std::vector<double> pmf(n, 0.0);
  for (std::int32_t d = 0; d < n; ++d) pmf[d] = root_distance_pmf(n, d);
  TestResult r = chi_square(obs, pmf);
  CHECK(r.p_value > 0.01);
}

TEST_CASE("subtree growth law") {
  CHECK(subtree_growth_law(10, 3, 1) == doctest::Approx(0.4));  // (k+1)/n
  for (std::int32_t n : {6, 11, 25}) {
    for (std::int32_t k : {1, 2, n / 2}) {
      double total = 0.0;
      for (std::int32_t d = 1; d <= n; ++d) total += subtree_growth_law(n, k, d);
      CHECK(total == doctest::Approx(1.0));
    }
  }
  // Monte Carlo: distance from vertex 2 to the first path S_1, conditioned
  // on 2 not in S_1, grouped by |S_1| = k
  Rng rng(31);
  const std::int32_t n = 200;
  std::map<std::int32_t, std::vector<std::int64_t>> by_k;  // k -> histogram over d
  for (std::int64_t rep = 0; rep < 60000; ++rep) {
    LabelledTree t = uniform_rooted_labelled_tree(n, rng);
    if (t.root == 1) continue;  // S_1 targets y_1 = 1
    // S_1 = path from the root to vertex 1
    std::vector<bool> in_s(n + 1, false);
    std::int32_t u = 1, k = 0;
    while (true) {
      in_s[u] = true;
      ++k;
      if (u == t.root) break;
      u = t.parent[u];
    }
    if (in_s[2]) continue;
    std::int32_t d = 0, v = 2;
    while (!in_s[v]) {
      v = t.parent[v];
      ++d;
    }
    auto& hist = by_k[k];
    if (hist.empty()) hist.assign(40, 0);
    if (d < 40) ++hist[d - 0];
  }
  // test the most common k
  std::int32_t best_k = 0;
  std::int64_t best_count = 0;
  for (auto& [k, hist] : by_k) {
    std::int64_t tot = 0;
    for (auto h : hist) tot += h;
    if (tot > best_count) {
      best_count = tot;
      best_k = k;
    }
  }
  REQUIRE(best_count > 2000);
  std::vector<std::int64_t> obs(by_k[best_k].begin() + 1, by_k[best_k].end());
  std::vector<double> pmf;
  double tail = 1.0;
  for (std::int32_t d = 1; d < 40; ++d) {
    double p = subtree_growth_law(n, best_k, d);
    pmf.push_back(p);
    tail -= p;
  }
  pmf.back() += std::max(tail, 0.0);
  TestResult r = chi_square(obs, pmf);
  CHECK(r.p_value > 0.01);
}

TEST_CASE("rate-t Poisson arrivals") {
  Rng rng(77);
  const std::int64_t draws = 100000;
  std::vector<double> s1(draws);
  for (std::int64_t d = 0; d < draws; ++d) s1[d] = poisson_rate_t_arrivals(1, 0.0, rng).s[0];
  ReferenceDensity ray = rayleigh_density();
  CHECK(ks_test(s1, ray.cdf).p_value > 0.01);

  // offset: P(s_1 > x | s_0) = exp(-(x^2 - s0^2)/2)
  const double s0 = 1.4;
  std::vector<double> so(draws);
  for (std::int64_t d = 0; d < draws; ++d) so[d] = poisson_rate_t_arrivals(1, s0, rng).s[0];
  auto cdf = [s0](double x) { return x <= s0 ? 0.0 : 1.0 - std::exp(-(x * x - s0 * s0) / 2.0); };
  CHECK(ks_test(so, cdf).p_value > 0.01);

  // strict increase
  for (int rep = 0; rep < 100; ++rep) {
    auto sched = poisson_rate_t_arrivals(20, 0.0, rng);
    for (std::size_t i = 1; i < sched.s.size(); ++i) CHECK(sched.s[i] > sched.s[i - 1]);
  }
}

TEST_CASE("line-breaking CRT construction") {
  Rng rng(404);
  // k = 1: single Rayleigh segment; distance root-leaf1 is s_1 by construction
  std::vector<double> lens;
  for (int rep = 0; rep < 20000; ++rep) {
    MetricTreeApprox t = crt_linebreak(1, rng);
    CHECK(t.graph.segment_count() == 1);
    lens.push_back(t.graph.segment(0).len);
  }
  CHECK(ks_test(lens, rayleigh_density().cdf).p_value > 0.01);

  // shape of T_3 uniform over the 3 leaf-labelled shapes; T_4 over 15
  for (auto [k, nshapes] : std::vector<std::pair<std::int64_t, std::size_t>>{{3, 3}, {4, 15}}) {
    std::map<std::string, std::int64_t> shapes;
    for (int rep = 0; rep < 30000; ++rep) ++shapes[crt_linebreak(k, rng).shape_signature()];
    CHECK(shapes.size() == nshapes);
    std::vector<std::int64_t> obs;
    for (auto& [sig, cnt] : shapes) obs.push_back(cnt);
    CHECK(chi_square(obs, std::vector<double>(nshapes, 1.0 / nshapes)).p_value > 0.01);
  }

  // total length of T_i has the arrival-time density; edge lengths are
  // exchangeable (same marginal for first and last edge)
  const std::int64_t k = 4;
  std::vector<double> total(12000), first_edge(12000), last_edge(12000);
  for (std::size_t rep = 0; rep < total.size(); ++rep) {
    MetricTreeApprox t = crt_linebreak(k, rng);
    double tot = 0.0;
    for (std::int32_t i = 0; i < t.graph.segment_count(); ++i) tot += t.graph.segment(i).len;
    total[rep] = tot;
    first_edge[rep] = t.graph.segment(0).len;
    last_edge[rep] = t.graph.segment(t.graph.segment_count() - 1).len;
  }
  CHECK(ks_test(total, arrival_time_density(k).cdf).p_value > 0.01);
  CHECK(ks_two_sample(first_edge, last_edge).p_value > 0.01);
}

TEST_CASE("Remy's algorithm") {
  Rng rng(555);
  // the first step (from the single edge) is deterministic in shape; the
  // step from the 2-leaf tree T_2 picks one of its 3 edges, each 1/3
  std::map<std::string, std::int64_t> shapes;
  for (int rep = 0; rep < 30000; ++rep) {
    GrowthTree t = GrowthTree::initial();
    remy_step(t, rng);
    remy_step(t, rng);
    ++shapes[t.shape_signature()];
  }
  CHECK(shapes.size() == 3);
  std::vector<std::int64_t> obs;
  for (auto& [sig, cnt] : shapes) obs.push_back(cnt);
  CHECK(chi_square(obs, std::vector<double>(3, 1.0 / 3.0)).p_value > 0.01);

  // after 3 steps: 15 shapes uniform; leaf count = steps + 2
  shapes.clear();
  for (int rep = 0; rep < 45000; ++rep) {
    GrowthTree t = GrowthTree::initial();
    for (int i = 0; i < 3; ++i) remy_step(t, rng);
    std::int64_t leaves = 0;
    for (std::size_t v = 0; v < t.leaf_label.size(); ++v)
      if (t.kids[v].empty() || v == 0) ++leaves;
    CHECK(leaves == 5);
    ++shapes[t.shape_signature()];
  }
  CHECK(shapes.size() == 15);
  obs.clear();
  for (auto& [sig, cnt] : shapes) obs.push_back(cnt);
  CHECK(chi_square(obs, std::vector<double>(15, 1.0 / 15.0)).p_value > 0.01);
}

TEST_CASE("Marchal's algorithm") {
  Rng rng(666);
  CHECK_THROWS_AS(
      [&] {
        GrowthTree t = GrowthTree::initial();
        marchal_step(t, 2.5, rng);
      }(),
      std::invalid_argument);

  // T_1 -> T_2 always subdivides the single edge: deterministic shape
  std::set<std::string> t2_shapes;
  for (int rep = 0; rep < 50; ++rep) {
    GrowthTree t = GrowthTree::initial();
    marchal_step(t, 1.5, rng);
    t2_shapes.insert(t.shape_signature());
  }
  CHECK(t2_shapes.size() == 1);

  // alpha = 1.5, step on T_2: P(attach at the 2-child vertex) = 0.5 / 2.0
  std::int64_t vertex_attach = 0;
  const std::int64_t reps = 40000;
  for (std::int64_t rep = 0; rep < reps; ++rep) {
    GrowthTree t = GrowthTree::initial();
    marchal_step(t, 1.5, rng);
    std::int64_t before = t.vertex_count();
    marchal_step(t, 1.5, rng);
    if (t.vertex_count() == before + 1) ++vertex_attach;  // no subdivision node
  }
  double freq = static_cast<double>(vertex_attach) / static_cast<double>(reps);
  CHECK(freq == doctest::Approx(0.25).epsilon(0.08));

  // alpha = 2 coincides with Remy in distribution (3 steps, all 15 shapes)
  std::map<std::string, std::int64_t> remy_shapes, marchal_shapes;
  for (int rep = 0; rep < 40000; ++rep) {
    GrowthTree a = GrowthTree::initial();
    GrowthTree b = GrowthTree::initial();
    for (int i = 0; i < 3; ++i) {
      remy_step(a, rng);
      marchal_step(b, 2.0, rng);
    }
    ++remy_shapes[a.shape_signature()];
    ++marchal_shapes[b.shape_signature()];
  }
  std::set<std::string> all;
  for (auto& [sig, cnt] : remy_shapes) all.insert(sig);
  for (auto& [sig, cnt] : marchal_shapes) all.insert(sig);
  std::vector<std::int64_t> a_obs, b_obs;
  for (const auto& sig : all) {
    a_obs.push_back(remy_shapes.count(sig) ? remy_shapes[sig] : 0);
    b_obs.push_back(marchal_shapes.count(sig) ? marchal_shapes[sig] : 0);
  }
  CHECK(chi_square_two_sample(a_obs, b_obs).p_value > 0.01);

  // rescaled distance: positive, exponent arithmetic at alpha = 2
  GrowthTree t = GrowthTree::initial();
  for (int i = 0; i < 64; ++i) marchal_step(t, 2.0, rng);
  double r = marchal_rescaled_distance(t, 2.0, 64);
  CHECK(r > 0.0);
  std::int32_t d01 = t.distance(t.node_of_label(0), t.node_of_label(1));
  CHECK(r == doctest::Approx(static_cast<double>(d01) / 8.0));
}

TEST_CASE("MarchalRun: same law as marchal_step, stable rescaled medians") {
  Rng rng(676);
  // shape law agrees with the per-step implementation at 3 steps
  std::map<std::string, std::int64_t> slow_shapes, fast_shapes;
  for (int rep = 0; rep < 30000; ++rep) {
    GrowthTree a = GrowthTree::initial();
    MarchalRun b(1.5);
    for (int i = 0; i < 3; ++i) {
      marchal_step(a, 1.5, rng);
      b.step(rng);
    }
    ++slow_shapes[a.shape_signature()];
    ++fast_shapes[b.tree().shape_signature()];
  }
  std::set<std::string> all;
  for (auto& [sig, cnt] : slow_shapes) all.insert(sig);
  for (auto& [sig, cnt] : fast_shapes) all.insert(sig);
  std::vector<std::int64_t> a_obs, b_obs;
  for (const auto& sig : all) {
    a_obs.push_back(slow_shapes.count(sig) ? slow_shapes[sig] : 0);
    b_obs.push_back(fast_shapes.count(sig) ? fast_shapes[sig] : 0);
  }
  CHECK(chi_square_two_sample(a_obs, b_obs).p_value > 0.01);

  // empirical medians of the rescaled 0-1 distance stabilize within 10%
  // between i = 2^12 and i = 2^14
  auto median_at = [&](std::int64_t steps, double alpha) {
    std::vector<double> vals;
    for (int run = 0; run < 501; ++run) {
      MarchalRun m(alpha);
      for (std::int64_t i = 0; i < steps; ++i) m.step(rng);
      vals.push_back(m.rescaled_01_distance());
    }
    std::sort(vals.begin(), vals.end());
    return vals[vals.size() / 2];
  };
  for (double alpha : {2.0, 1.5}) {
    double m12 = median_at(1 << 12, alpha);
    double m14 = median_at(1 << 14, alpha);
    CHECK(m12 > 0.0);
    CHECK(std::abs(m14 - m12) / m12 < 0.10);
  }
}

TEST_CASE("word text round-trip") {
  CodingWord w = parse_word_text("4 8 3 8 9 3 5 8 10\n");
  CHECK(w.n == 10);
  CHECK(to_word_text(w) == "4 8 3 8 9 3 5 8 10\n");
  CHECK_THROWS_AS(parse_word_text("1 2 99"), std::invalid_argument);
}
