#include "rtglab/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rtglab/linebreak.hpp"
#include "rtglab/samplers.hpp"

namespace rtg {

namespace {

RealExcursion srw_unit_excursion(std::int64_t m, Rng& rng, double* integral) {
  DiscreteExcursion w = srw_excursion(m, rng);
  RealExcursion e;
  std::size_t pts = w.q.size();
  e.t.resize(pts);
  e.v.resize(pts);
  double dt = 1.0 / static_cast<double>(pts - 1);
  double scale = 1.0 / std::sqrt(static_cast<double>(2 * m));
  double sum = 0.0;
  for (std::size_t j = 0; j < pts; ++j) {
    e.t[j] = (j + 1 == pts) ? 1.0 : dt * static_cast<double>(j);
    e.v[j] = scale * static_cast<double>(w.q[j]);
    if (j > 0) sum += 0.5 * (e.v[j] + e.v[j - 1]) * dt;
  }
  if (integral) *integral = sum;
  return e;
}

}  // namespace

TiltedExcursionSampler::TiltedExcursionSampler(std::int32_t s, std::int64_t gridsize,
                                               std::uint64_t seed, std::int64_t pool_size)
    : s_(s), seed_(seed) {
  if (s < 0) throw std::invalid_argument("tilted excursion: s >= 0");
  if (gridsize < 2) throw std::invalid_argument("tilted excursion: gridsize >= 2");
  halfsteps_ = gridsize / 2;
  if (pool_size <= 0) pool_size = 16 * 1024;
  std::int64_t m = halfsteps_;
  pool_.emplace(pool_size, seed, [m, s, seed](std::uint64_t id) {
    Rng r = Rng::stream(seed, id);
    double integral = 0.0;
    srw_unit_excursion(m, r, &integral);
    return std::pow(integral, static_cast<double>(s));
  });
  diag_ = pool_->diagnostics();
}

TiltedExcursionSample TiltedExcursionSampler::sample(Rng& rng) const {
  std::uint64_t id = pool_->sample_stream(rng);
  Rng r = Rng::stream(seed_, id);
  TiltedExcursionSample out;
  out.s = s_;
  out.e = srw_unit_excursion(halfsteps_, r, &out.integral);
  return out;
}

TiltedExcursionSample tilted_excursion(std::int32_t s, std::int64_t gridsize, Rng& rng,
                                       std::uint64_t pool_seed, std::int64_t pool_size) {
  TiltedExcursionSampler sampler(s, gridsize, pool_seed, pool_size);
  return sampler.sample(rng);
}

namespace {

struct TreeBuildState {
  std::vector<std::int32_t> node_parent;
  std::vector<double> node_height;
};

// Metric tree of a grid excursion scaled by `height_scale`; fills parents
// and heights for ancestor walks.
GluedGraph build_excursion_tree(const RealExcursion& f, double height_scale,
                                TreeBuildState& st) {
  f.validate();
  GluedGraph out;
  out.total_height_scale = height_scale;
  SegmentGraph& g = out.graph;
  struct Entry {
    std::int32_t node;
    double h;
    std::int32_t seg_to_parent;  // -1 at root
  };
  std::vector<Entry> stack;
  auto new_node = [&](std::int32_t parent, double h) {
    std::int32_t id = g.add_node(SegmentGraph::NodeKind::branch);
    st.node_parent.push_back(parent);
    st.node_height.push_back(h);
    return id;
  };
  std::int32_t root = new_node(-1, 0.0);
  stack.push_back({root, 0.0, -1});
  out.node_at_time.reserve(f.v.size());
  out.node_at_time.push_back(root);
  for (std::size_t j = 1; j < f.v.size(); ++j) {
    double h = height_scale * f.v[j];
    if (h > stack.back().h) {
      std::int32_t nh = new_node(stack.back().node, h);
      std::int32_t seg = g.add_segment(stack.back().node, nh, h - stack.back().h);
      stack.push_back({nh, h, seg});
    } else if (h < stack.back().h) {
      Entry last = stack.back();
      stack.pop_back();
      while (stack.back().h > h) {
        last = stack.back();
        stack.pop_back();
      }
      if (stack.back().h < h) {
        // split the edge between stack top and the last popped node
        std::int32_t nh = g.split_at({last.seg_to_parent, h - stack.back().h},
                                     SegmentGraph::NodeKind::branch);
        st.node_parent.push_back(stack.back().node);
        st.node_height.push_back(h);
        st.node_parent[last.node] = nh;
        stack.push_back({nh, h, last.seg_to_parent});
      }
      // else: exact match, the attach point is the current stack top
    }
    out.node_at_time.push_back(stack.back().node);
  }
  return out;
}

}  // namespace

GluedGraph excursion_tree_graph(const RealExcursion& f) {
  TreeBuildState st;
  GluedGraph out = build_excursion_tree(f, 1.0, st);
  out.graph.freeze();
  return out;
}

GluedGraph glue_surplus_points(const TiltedExcursionSample& exc, std::int32_t s, Rng& rng) {
  if (s < 0) throw std::invalid_argument("glue: s >= 0");
  TreeBuildState st;
  // heights 2*e: the distance-from-root coding of the depth-first tree
  GluedGraph out = build_excursion_tree(exc.e, 2.0, st);
  const RealExcursion& e = exc.e;
  double fmax = 0.0;
  for (double v : e.v) fmax = std::max(fmax, 2.0 * v);
  std::int64_t M = static_cast<std::int64_t>(e.t.size()) - 1;
  for (std::int32_t made = 0; made < s;) {
    // uniform point under the graph of 2*e
    double x = rng.uniform();
    double y = rng.uniform(0.0, fmax);
    double fx = 2.0 * e.value_at(x);
    if (y >= fx) continue;
    std::int64_t j = std::llround(x * static_cast<double>(M));
    j = std::clamp<std::int64_t>(j, 0, M);
    std::int32_t a = out.node_at_time[j];
    if (st.node_parent[a] < 0) continue;  // rounded onto the root: retry
    // nearest proper ancestor in height
    std::int32_t best = st.node_parent[a];
    double besterr = std::abs(st.node_height[best] - y);
    for (std::int32_t u = st.node_parent[best]; u >= 0; u = st.node_parent[u]) {
      double err = std::abs(st.node_height[u] - y);
      if (err < besterr) {
        besterr = err;
        best = u;
      }
    }
    out.max_height_rounding =
        std::max({out.max_height_rounding, besterr, std::abs(st.node_height[a] - fx)});
    out.graph.merge_nodes(a, best);
    out.identified.emplace_back(a, best);
    ++made;
  }
  out.graph.freeze();
  return out;
}

PointRef GluedGraph::sample_time_point(Rng& rng) const {
  std::int64_t M = static_cast<std::int64_t>(node_at_time.size()) - 1;
  std::int64_t j = rng.uniform_int(M + 1);
  return graph.point_at_node(node_at_time[j]);
}

double GluedGraph::time_point_distance(double x1, double x2) const {
  std::int64_t M = static_cast<std::int64_t>(node_at_time.size()) - 1;
  auto node_of = [&](double x) {
    std::int64_t j = std::clamp<std::int64_t>(std::llround(x * static_cast<double>(M)), 0, M);
    return node_at_time[j];
  };
  return graph.node_distance(node_of(x1), node_of(x2));
}

ContinuumGraph continuum_graph_construct(std::int32_t s, std::int64_t k, Rng& rng) {
  if (s < 2)
    throw std::invalid_argument(
        "continuum_graph_construct: s >= 2 (the s=1 variant needs a start law the "
        "construction box does not specify)");
  if (k < 0) throw std::invalid_argument("continuum_graph_construct: k >= 0");
  ContinuumGraph out;
  // kernel from the normalized weight law
  std::vector<MultiGraph> kernels = enumerate_kernels(s);
  std::vector<double> cum(kernels.size());
  double total = 0.0;
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    total += kernel_weight(kernels[i]).value();
    cum[i] = total;
  }
  double x = rng.uniform(0.0, total);
  std::size_t pick = static_cast<std::size_t>(
      std::lower_bound(cum.begin(), cum.end(), x) - cum.begin());
  if (pick >= kernels.size()) pick = kernels.size() - 1;
  out.kernel = kernels[pick];

  double shape = (3.0 * static_cast<double>(s) - 2.0) / 2.0;
  double X = std::sqrt(rng.gamma(shape, 0.5));
  out.core_length = X;
  std::vector<double> y = rng.dirichlet_uniform(static_cast<std::size_t>(3 * s - 3));

  SegmentGraph& g = out.graph;
  std::int32_t kverts = 2 * (s - 1);
  std::vector<std::int32_t> node_of(kverts + 1);
  for (std::int32_t v = 1; v <= kverts; ++v)
    node_of[v] = g.add_node(SegmentGraph::NodeKind::kernel);
  std::size_t edge_index = 0;
  for (const auto& e : out.kernel.edges)
    for (std::int32_t c = 0; c < e.mult; ++c)
      g.add_segment(node_of[e.u], node_of[e.v], X * y[edge_index++]);

  if (k > 0) {
    LineBreakSchedule sched = poisson_rate_t_arrivals(k, X, rng);
    double prev = X;
    for (std::int64_t i = 0; i < k; ++i) {
      // attachment uniform w.r.t. length measure on the structure so far
      double pos = rng.uniform(0.0, prev);
      std::int32_t seg = 0;
      double off = pos;
      for (std::int32_t sidx = 0; sidx < static_cast<std::int32_t>(g.segment_count()); ++sidx) {
        if (off <= g.segment(sidx).len) {
          seg = sidx;
          break;
        }
        off -= g.segment(sidx).len;
      }
      off = std::min(std::max(off, g.segment(seg).len * 1e-15),
                     g.segment(seg).len * (1.0 - 1e-15));
      std::int32_t mid = g.split_at({seg, off}, SegmentGraph::NodeKind::attach);
      std::int32_t leaf = g.add_node(SegmentGraph::NodeKind::leaf);
      g.add_segment(mid, leaf, sched.s[i] - prev);
      prev = sched.s[i];
    }
  }
  g.freeze();
  return out;
}

RealExcursion rescale_excursion(const RealExcursion& e, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("rescale_excursion: x > 0");
  RealExcursion out;
  out.t.reserve(e.t.size());
  out.v.reserve(e.v.size());
  double sq = std::sqrt(x);
  for (double t : e.t) out.t.push_back(x * t);
  for (double v : e.v) out.v.push_back(sq * v);
  return out;
}

}  // namespace rtg
