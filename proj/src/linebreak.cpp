#include "rtglab/linebreak.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtg {

void CodingWord::validate() const {
  if (n < 2) throw std::invalid_argument("coding word: need n >= 2");
  if (static_cast<std::int32_t>(w.size()) != n - 1)
    throw std::invalid_argument("coding word: length must be n-1");
  for (std::int32_t x : w)
    if (x < 1 || x > n) throw std::invalid_argument("coding word: symbol out of [n]");
}

CodingWord encode(const LabelledTree& t) {
  t.validate();
  if (t.n < 2) throw std::invalid_argument("encode: need n >= 2");
  CodingWord out;
  out.n = t.n;
  out.w.reserve(t.n - 1);
  std::vector<bool> in_s(t.n + 1, false);
  in_s[t.root] = true;
  std::int32_t y = 1;
  std::int32_t placed = 1;
  std::vector<std::int32_t> chain;
  while (placed < t.n) {
    while (y <= t.n && in_s[y]) ++y;
    // path from S to y: climb ancestors of y until we hit S, then reverse
    chain.clear();
    std::int32_t u = y;
    while (!in_s[u]) {
      chain.push_back(u);
      u = t.parent[u];
    }
    chain.push_back(u);  // attachment vertex, already in S
    // P = u ... y; the truncated path drops the final element y
    out.w.push_back(u);
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
      if (*it != y) out.w.push_back(*it);
      in_s[*it] = true;
      ++placed;
    }
  }
  // P_1 starts at the root, so the first symbol is the root, not an
  // attachment repeat; the loop above already emits it correctly because
  // in_s[root] held from the start.
  return out;
}

namespace {

LabelledTree decode_impl(const CodingWord& word, std::vector<std::int32_t>* sizes) {
  word.validate();
  std::int32_t n = word.n;
  const auto& w = word.w;
  LabelledTree t;
  t.n = n;
  t.root = w[0];
  t.parent.assign(n + 1, 0);
  t.parent[t.root] = t.root;
  std::vector<bool> placed(n + 1, false);
  std::vector<bool> seen_in_word(n + 1, false);
  placed[t.root] = true;
  if (sizes) {
    sizes->clear();
    sizes->push_back(1);
  }
  std::int32_t y = 1;  // smallest label not placed
  auto bump_y = [&] {
    while (y <= n && placed[y]) ++y;
  };
  bump_y();
  std::int32_t i = 0;  // start of the current truncated path in w
  seen_in_word[w[0]] = true;
  while (i < n - 1) {
    // Scan to the end of this truncated path. The next path begins at the
    // first later symbol that is a repetition, the current target y, or a
    // vertex already in the tree (a y_k from an earlier path need not have
    // appeared in the word yet, but still marks a path boundary).
    std::int32_t j = i + 1;
    while (j < n - 1 && !seen_in_word[w[j]] && !placed[w[j]] && w[j] != y) {
      seen_in_word[w[j]] = true;
      ++j;
    }
    // edges along w[i..j-1], then the closing edge to y
    for (std::int32_t k = i + 1; k < j; ++k) {
      t.parent[w[k]] = w[k - 1];
      placed[w[k]] = true;
    }
    t.parent[y] = w[j - 1];
    placed[y] = true;
    if (sizes) sizes->push_back(sizes->back() + (j - i));
    bump_y();
    if (j < n - 1) seen_in_word[w[j]] = true;
    i = j;
  }
  return t;
}

}  // namespace

LabelledTree decode(const CodingWord& w) { return decode_impl(w, nullptr); }

LabelledTree decode_with_subtree_sizes(const CodingWord& w, std::vector<std::int32_t>& sizes) {
  return decode_impl(w, &sizes);
}

LabelledTree uniform_rooted_labelled_tree(std::int32_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("uniform tree: n >= 1");
  if (n == 1) {
    LabelledTree t;
    t.n = 1;
    t.root = 1;
    t.parent = {0, 1};
    return t;
  }
  CodingWord w;
  w.n = n;
  w.w.resize(n - 1);
  for (auto& x : w.w) x = static_cast<std::int32_t>(rng.uniform_int(n)) + 1;
  return decode(w);
}

LabelledTree uniform_tree_rooted_at_1(std::int32_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("uniform tree: n >= 1");
  if (n == 1) {
    LabelledTree t;
    t.n = 1;
    t.root = 1;
    t.parent = {0, 1};
    return t;
  }
  CodingWord w;
  w.n = n;
  w.w.resize(n - 1);
  w.w[0] = 1;
  for (std::int32_t i = 1; i < n - 1; ++i)
    w.w[i] = static_cast<std::int32_t>(rng.uniform_int(n)) + 1;
  return decode(w);
}

LabelledTree sample_with_child_sequence(const ChildSequence& c, Rng& rng) {
  c.validate();
  std::int32_t n = c.n();
  if (n < 2) throw std::invalid_argument("sample_with_child_sequence: need n >= 2");
  CodingWord w;
  w.n = n;
  w.w.reserve(n - 1);
  for (std::int32_t i = 1; i <= n; ++i)
    for (std::int32_t r = 0; r < c.c[i]; ++r) w.w.push_back(i);
  rng.shuffle(w.w);
  return decode(w);
}

std::vector<std::int32_t> rooted_prufer_code(const LabelledTree& t) {
  t.validate();
  std::vector<std::int32_t> childcnt(t.n + 1, 0);
  for (std::int32_t v = 1; v <= t.n; ++v)
    if (v != t.root) ++childcnt[t.parent[v]];
  // leaves = non-root vertices with no children; always remove the largest
  std::vector<std::int32_t> code;
  code.reserve(t.n - 1);
  std::vector<bool> removed(t.n + 1, false);
  // max-heap behaviour with a simple descending scan pointer plus re-checks
  std::vector<std::int32_t> heap;
  for (std::int32_t v = 1; v <= t.n; ++v)
    if (v != t.root && childcnt[v] == 0) heap.push_back(v);
  std::make_heap(heap.begin(), heap.end());
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end());
    std::int32_t leaf = heap.back();
    heap.pop_back();
    if (removed[leaf]) continue;
    removed[leaf] = true;
    std::int32_t p = t.parent[leaf];
    code.push_back(p);
    if (--childcnt[p] == 0 && p != t.root) {
      heap.push_back(p);
      std::push_heap(heap.begin(), heap.end());
    }
  }
  return code;
}

double root_distance_pmf(std::int32_t n, std::int32_t d) {
  if (n < 1 || d < 0) throw std::invalid_argument("root_distance_pmf: bad arguments");
  if (d >= n) return 0.0;
  double p = static_cast<double>(d + 1) / n;
  for (std::int32_t j = 1; j <= d; ++j) p *= 1.0 - static_cast<double>(j) / n;
  return p;
}

double subtree_growth_law(std::int32_t n, std::int32_t k, std::int32_t d) {
  if (n < 1 || k < 1 || d < 1) throw std::invalid_argument("subtree_growth_law: bad arguments");
  if (k + d > n) return 0.0;
  double p = static_cast<double>(k + d) / n;
  for (std::int32_t j = 1; j <= d - 1; ++j) p *= 1.0 - static_cast<double>(k + j) / n;
  return p;
}

LineBreakSchedule poisson_rate_t_arrivals(std::int64_t count, double offset, Rng& rng) {
  if (count < 1 || offset < 0.0)
    throw std::invalid_argument("poisson_rate_t_arrivals: bad arguments");
  LineBreakSchedule sched;
  sched.offset = offset;
  sched.s.reserve(count);
  double prev = offset;
  for (std::int64_t i = 0; i < count; ++i) {
    prev = std::sqrt(prev * prev - 2.0 * std::log(rng.uniform()));
    sched.s.push_back(prev);
  }
  return sched;
}

MetricTreeApprox crt_linebreak(std::int64_t k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("crt_linebreak: need k >= 1");
  LineBreakSchedule sched = poisson_rate_t_arrivals(k, 0.0, rng);
  MetricTreeApprox out;
  SegmentGraph& g = out.graph;
  std::int32_t root = g.add_node(SegmentGraph::NodeKind::leaf);
  std::int32_t leaf1 = g.add_node(SegmentGraph::NodeKind::leaf);
  g.add_segment(root, leaf1, sched.s[0]);
  out.leaf_node = {root, leaf1};
  for (std::int64_t i = 1; i < k; ++i) {
    // attachment point uniform w.r.t. length measure on the current tree
    double total = sched.s[i - 1];
    double x = rng.uniform(0.0, total);
    std::int32_t seg = 0;
    double off = x;
    for (std::int32_t s = 0; s < static_cast<std::int32_t>(g.segment_count()); ++s) {
      if (off <= g.segment(s).len) {
        seg = s;
        break;
      }
      off -= g.segment(s).len;
    }
    // clamp away from the endpoints; exact ties have probability zero
    off = std::min(std::max(off, g.segment(seg).len * 1e-15),
                   g.segment(seg).len * (1.0 - 1e-15));
    std::int32_t mid = g.split_at({seg, off}, SegmentGraph::NodeKind::branch);
    std::int32_t leaf = g.add_node(SegmentGraph::NodeKind::leaf);
    g.add_segment(mid, leaf, sched.s[i] - sched.s[i - 1]);
    out.leaf_node.push_back(leaf);
  }
  g.freeze();
  return out;
}

GrowthTree GrowthTree::initial() {
  GrowthTree t;
  t.parent = {-1, 0};
  t.kids = {{1}, {}};
  t.leaf_label = {0, 1};
  t.next_label = 2;
  return t;
}

std::int32_t GrowthTree::node_of_label(std::int32_t label) const {
  for (std::size_t v = 0; v < leaf_label.size(); ++v)
    if (leaf_label[v] == label) return static_cast<std::int32_t>(v);
  throw std::invalid_argument("growth tree: no such leaf label");
}

std::int32_t GrowthTree::distance(std::int32_t a, std::int32_t b) const {
  auto depth = [&](std::int32_t v) {
    std::int32_t d = 0;
    while (parent[v] >= 0) {
      v = parent[v];
      ++d;
    }
    return d;
  };
  std::int32_t da = depth(a), db = depth(b), dist = 0;
  while (da > db) {
    a = parent[a];
    --da;
    ++dist;
  }
  while (db > da) {
    b = parent[b];
    --db;
    ++dist;
  }
  while (a != b) {
    a = parent[a];
    b = parent[b];
    dist += 2;
  }
  return dist;
}

namespace {

std::string growth_canon(const GrowthTree& t, std::int32_t v) {
  if (t.kids[v].empty()) return "L" + std::to_string(t.leaf_label[v]) + ";";
  std::vector<std::string> parts;
  for (std::int32_t c : t.kids[v]) parts.push_back(growth_canon(t, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  if (t.leaf_label[v] >= 0) out += "L" + std::to_string(t.leaf_label[v]) + ";";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

// Splits the edge above `below` with a new internal vertex and hangs the next
// leaf from it.
void attach_by_subdivision(GrowthTree& t, std::int32_t below, Rng&) {
  std::int32_t p = t.parent[below];
  std::int32_t mid = static_cast<std::int32_t>(t.parent.size());
  t.parent.push_back(p);
  t.kids.push_back({below});
  t.leaf_label.push_back(-1);
  std::int32_t leaf = static_cast<std::int32_t>(t.parent.size());
  t.parent.push_back(mid);
  t.kids.push_back({});
  t.leaf_label.push_back(t.next_label++);
  t.kids[mid].push_back(leaf);
  if (p >= 0) {
    auto& pk = t.kids[p];
    *std::find(pk.begin(), pk.end(), below) = mid;
  }
  t.parent[below] = mid;
}

}  // namespace

std::string GrowthTree::shape_signature() const { return growth_canon(*this, 0); }

void remy_step(GrowthTree& t, Rng& rng) {
  // edges indexed by their lower endpoint (every non-root vertex)
  std::int64_t edges = t.vertex_count() - 1;
  std::int64_t pick = rng.uniform_int(edges);
  std::int32_t below = -1;
  std::int64_t seen = 0;
  for (std::int32_t v = 0; v < static_cast<std::int32_t>(t.vertex_count()); ++v) {
    if (t.parent[v] >= 0 && seen++ == pick) {
      below = v;
      break;
    }
  }
  attach_by_subdivision(t, below, rng);
}

void marchal_step(GrowthTree& t, double alpha, Rng& rng) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw std::invalid_argument("marchal_step: alpha must lie in (1, 2]");
  std::int64_t nv = t.vertex_count();
  double edge_w = alpha - 1.0;
  double total = 0.0;
  for (std::int32_t v = 0; v < nv; ++v) {
    if (t.parent[v] >= 0) total += edge_w;
    std::int64_t c = static_cast<std::int64_t>(t.kids[v].size());
    if (c >= 2) total += static_cast<double>(c) - alpha;
  }
  double x = rng.uniform(0.0, total);
  for (std::int32_t v = 0; v < nv; ++v) {
    if (t.parent[v] >= 0) {
      if (x < edge_w) {
        attach_by_subdivision(t, v, rng);
        return;
      }
      x -= edge_w;
    }
    std::int64_t c = static_cast<std::int64_t>(t.kids[v].size());
    if (c >= 2) {
      double w = static_cast<double>(c) - alpha;
      if (x < w) {
        // attach the new leaf directly to the chosen vertex
        std::int32_t leaf = static_cast<std::int32_t>(t.parent.size());
        t.parent.push_back(v);
        t.kids.push_back({});
        t.leaf_label.push_back(t.next_label++);
        t.kids[v].push_back(leaf);
        return;
      }
      x -= w;
    }
  }
  // numerical edge: fall back to the last edge
  for (std::int32_t v = static_cast<std::int32_t>(nv) - 1; v >= 0; --v)
    if (t.parent[v] >= 0) {
      attach_by_subdivision(t, v, rng);
      return;
    }
}

double marchal_rescaled_distance(const GrowthTree& t, double alpha, std::int64_t i) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw std::invalid_argument("marchal_rescaled_distance: alpha must lie in (1, 2]");
  std::int32_t a = t.node_of_label(0), b = t.node_of_label(1);
  return std::pow(static_cast<double>(i), -(alpha - 1.0) / alpha) *
         static_cast<double>(t.distance(a, b));
}

MarchalRun::MarchalRun(double alpha) : alpha_(alpha), tree_(GrowthTree::initial()) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw std::invalid_argument("MarchalRun: alpha must lie in (1, 2]");
}

void MarchalRun::step(Rng& rng) {
  std::int64_t edges = tree_.vertex_count() - 1;
  double edge_total = static_cast<double>(edges) * (alpha_ - 1.0);
  double vertex_total = static_cast<double>(extra_child_urn_.size()) +
                        (2.0 - alpha_) * static_cast<double>(branching_urn_.size());
  double x = rng.uniform(0.0, edge_total + vertex_total);
  if (x < edge_total || vertex_total <= 0.0) {
    // edges are indexed by their lower endpoint: any non-root vertex; the
    // root is vertex 0, so a uniform vertex in 1..V-1 picks a uniform edge
    std::int32_t below = static_cast<std::int32_t>(rng.uniform_int(edges)) + 1;
    std::int32_t p = tree_.parent[below];
    std::int32_t mid = static_cast<std::int32_t>(tree_.parent.size());
    tree_.parent.push_back(p);
    tree_.kids.push_back({below});
    tree_.leaf_label.push_back(-1);
    std::int32_t leaf = static_cast<std::int32_t>(tree_.parent.size());
    tree_.parent.push_back(mid);
    tree_.kids.push_back({});
    tree_.leaf_label.push_back(tree_.next_label++);
    tree_.kids[mid].push_back(leaf);
    auto& pk = tree_.kids[p];
    *std::find(pk.begin(), pk.end(), below) = mid;
    tree_.parent[below] = mid;
    branching_urn_.push_back(mid);  // mid now has two children
  } else {
    x -= edge_total;
    std::int32_t v;
    if (x < static_cast<double>(extra_child_urn_.size()))
      v = extra_child_urn_[static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(extra_child_urn_.size())))];
    else
      v = branching_urn_[static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(branching_urn_.size())))];
    std::int32_t leaf = static_cast<std::int32_t>(tree_.parent.size());
    tree_.parent.push_back(v);
    tree_.kids.push_back({});
    tree_.leaf_label.push_back(tree_.next_label++);
    tree_.kids[v].push_back(leaf);
    extra_child_urn_.push_back(v);  // c(v) grew past 2
  }
  ++steps_;
}

double MarchalRun::rescaled_01_distance() const {
  return marchal_rescaled_distance(tree_, alpha_, std::max<std::int64_t>(steps_, 1));
}

std::string to_word_text(const CodingWord& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.w.size(); ++i) {
    if (i) os << ' ';
    os << w.w[i];
  }
  os << '\n';
  return os.str();
}

CodingWord parse_word_text(const std::string& text) {
  CodingWord w;
  std::istringstream is(text);
  std::int32_t x;
  while (is >> x) w.w.push_back(x);
  w.n = static_cast<std::int32_t>(w.w.size()) + 1;
  w.validate();
  return w;
}

}  // namespace rtg
