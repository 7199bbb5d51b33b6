#include "rtglab/segment_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace rtg {

std::int32_t SegmentGraph::add_node(NodeKind kind) {
  if (frozen_) throw std::logic_error("segment graph: frozen");
  kind_.push_back(kind);
  dsu_.push_back(static_cast<std::int32_t>(dsu_.size()));
  return static_cast<std::int32_t>(kind_.size()) - 1;
}

std::int32_t SegmentGraph::add_segment(std::int32_t u, std::int32_t v, double len) {
  if (frozen_) throw std::logic_error("segment graph: frozen");
  if (u < 0 || v < 0 || u >= static_cast<std::int32_t>(kind_.size()) ||
      v >= static_cast<std::int32_t>(kind_.size()))
    throw std::invalid_argument("segment graph: bad endpoint");
  if (!(len > 0.0)) throw std::invalid_argument("segment graph: length must be positive");
  segs_.push_back({u, v, len});
  return static_cast<std::int32_t>(segs_.size()) - 1;
}

std::int32_t SegmentGraph::split_at(const PointRef& p, NodeKind kind) {
  if (frozen_) throw std::logic_error("segment graph: frozen");
  validate_point(p);
  Segment& s = segs_[p.seg];
  if (p.off <= 0.0 || p.off >= s.len)
    throw std::invalid_argument("segment graph: split point must be interior");
  std::int32_t mid = add_node(kind);
  std::int32_t old_v = s.v;
  double tail = s.len - p.off;
  s.v = mid;
  s.len = p.off;
  add_segment(mid, old_v, tail);
  return mid;
}

void SegmentGraph::merge_nodes(std::int32_t a, std::int32_t b) {
  if (frozen_) throw std::logic_error("segment graph: frozen");
  std::int32_t ra = find(a), rb = find(b);
  if (ra != rb) dsu_[ra] = rb;
}

std::int32_t SegmentGraph::find(std::int32_t x) const {
  while (dsu_[x] != x) x = dsu_[x];
  return x;
}

std::int32_t SegmentGraph::resolve(std::int32_t node) const { return find(node); }

void SegmentGraph::freeze() {
  if (frozen_) return;
  for (auto& s : segs_) {
    s.u = find(s.u);
    s.v = find(s.v);
  }
  adj_.assign(kind_.size(), {});
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(segs_.size()); ++i) {
    adj_[segs_[i].u].emplace_back(i, segs_[i].v);
    adj_[segs_[i].v].emplace_back(i, segs_[i].u);
  }
  cumlen_.assign(segs_.size() + 1, 0.0);
  for (std::size_t i = 0; i < segs_.size(); ++i) cumlen_[i + 1] = cumlen_[i] + segs_[i].len;
  frozen_ = true;
}

double SegmentGraph::total_length() const {
  double s = 0.0;
  for (const auto& seg : segs_) s += seg.len;
  return s;
}

std::int64_t SegmentGraph::first_betti() const {
  if (!frozen_) throw std::logic_error("segment graph: freeze first");
  std::vector<bool> live(kind_.size(), false);
  for (const auto& s : segs_) {
    live[s.u] = true;
    live[s.v] = true;
  }
  std::int64_t v = 0;
  for (bool b : live) v += b ? 1 : 0;
  if (v == 0) return 0;
  return 1 + static_cast<std::int64_t>(segs_.size()) - v;
}

void SegmentGraph::validate_point(const PointRef& p) const {
  if (p.seg < 0 || p.seg >= static_cast<std::int32_t>(segs_.size()))
    throw std::invalid_argument("segment graph: bad segment id");
  if (p.off < 0.0 || p.off > segs_[p.seg].len)
    throw std::invalid_argument("segment graph: offset out of range");
}

std::vector<double> SegmentGraph::dijkstra_from(
    const std::vector<std::pair<std::int32_t, double>>& sources) const {
  std::vector<double> dist(kind_.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (auto [node, d] : sources) {
    std::int32_t r = find(node);
    if (d < dist[r]) {
      dist[r] = d;
      pq.emplace(d, r);
    }
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [seg, w] : adj_[u]) {
      double nd = d + segs_[seg].len;
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.emplace(nd, w);
      }
    }
  }
  return dist;
}

double SegmentGraph::distance(const PointRef& a, const PointRef& b) const {
  if (!frozen_) throw std::logic_error("segment graph: freeze first");
  validate_point(a);
  validate_point(b);
  const Segment& sa = segs_[a.seg];
  const Segment& sb = segs_[b.seg];
  double best = std::numeric_limits<double>::infinity();
  if (a.seg == b.seg) best = std::abs(a.off - b.off);
  std::vector<double> dist = dijkstra_from({{sa.u, a.off}, {sa.v, sa.len - a.off}});
  best = std::min(best, dist[sb.u] + b.off);
  best = std::min(best, dist[sb.v] + sb.len - b.off);
  return best;
}

double SegmentGraph::node_distance(std::int32_t a, std::int32_t b) const {
  if (!frozen_) throw std::logic_error("segment graph: freeze first");
  std::vector<double> dist = dijkstra_from({{a, 0.0}});
  return dist[find(b)];
}

PointRef SegmentGraph::point_at_node(std::int32_t node) const {
  std::int32_t r = find(node);
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(segs_.size()); ++i) {
    if (find(segs_[i].u) == r) return {i, 0.0};
    if (find(segs_[i].v) == r) return {i, segs_[i].len};
  }
  throw std::invalid_argument("segment graph: isolated node has no point");
}

PointRef SegmentGraph::sample_point(Rng& rng) const {
  if (!frozen_) throw std::logic_error("segment graph: freeze first");
  if (segs_.empty()) throw std::logic_error("segment graph: no segments");
  double x = rng.uniform(0.0, cumlen_.back());
  auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), x);
  std::int32_t seg = static_cast<std::int32_t>(std::min<std::ptrdiff_t>(
      it - cumlen_.begin() - 1, static_cast<std::ptrdiff_t>(segs_.size()) - 1));
  return {seg, x - cumlen_[seg]};
}

std::string to_segment_text(const SegmentGraph& g) {
  static const char* names[] = {"branch", "leaf", "kernel", "attach"};
  std::ostringstream os;
  os.precision(17);
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(g.node_count()); ++i)
    if (g.resolve(i) == i) os << "node " << i << ' ' << names[static_cast<int>(g.node_kind(i))] << '\n';
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(g.segment_count()); ++i) {
    const auto& s = g.segment(i);
    os << "seg " << g.resolve(s.u) << ' ' << g.resolve(s.v) << ' ' << s.len << '\n';
  }
  return os.str();
}

std::string distance_matrix_csv(const SegmentGraph& g, std::int64_t k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("distance_matrix_csv: k >= 1");
  std::vector<PointRef> pts;
  pts.reserve(k);
  for (std::int64_t i = 0; i < k; ++i) pts.push_back(g.sample_point(rng));
  std::ostringstream os;
  os.precision(17);
  os << "i,j,seg_i,off_i,seg_j,off_j,distance\n";
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t j = i + 1; j < k; ++j)
      os << i << ',' << j << ',' << pts[i].seg << ',' << pts[i].off << ',' << pts[j].seg << ','
         << pts[j].off << ',' << g.distance(pts[i], pts[j]) << '\n';
  return os.str();
}

namespace {

std::string shape_canon(const SegmentGraph& g, std::int32_t node, std::int32_t from_seg,
                        const std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>>& adj,
                        const std::vector<std::string>& leaf_tag) {
  std::vector<std::string> parts;
  for (auto [seg, w] : adj[node])
    if (seg != from_seg) parts.push_back(shape_canon(g, w, seg, adj, leaf_tag));
  if (parts.empty()) return leaf_tag[node];
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

}  // namespace

std::string MetricTreeApprox::shape_signature() const {
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> adj(graph.node_count());
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(graph.segment_count()); ++i) {
    const auto& s = graph.segment(i);
    adj[graph.resolve(s.u)].emplace_back(i, graph.resolve(s.v));
    adj[graph.resolve(s.v)].emplace_back(i, graph.resolve(s.u));
  }
  std::vector<std::string> tag(graph.node_count());
  for (std::size_t lab = 0; lab < leaf_node.size(); ++lab)
    tag[graph.resolve(leaf_node[lab])] = "L" + std::to_string(lab) + ";";
  return shape_canon(graph, graph.resolve(leaf_node[0]), -1, adj, tag);
}

std::string to_metric_tree_text(const MetricTreeApprox& t) {
  std::ostringstream os;
  os << to_segment_text(t.graph);
  for (std::size_t lab = 0; lab < t.leaf_node.size(); ++lab)
    os << "label " << lab << ' ' << t.graph.resolve(t.leaf_node[lab]) << '\n';
  return os.str();
}

}  // namespace rtg
