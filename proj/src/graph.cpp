#include "rtglab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rtg {

std::int64_t MultiGraph::edge_count() const {
  std::int64_t m = 0;
  for (const auto& e : edges) m += e.mult;
  return m;
}

std::vector<std::int64_t> MultiGraph::degrees() const {
  std::vector<std::int64_t> d(n + 1, 0);
  for (const auto& e : edges) {
    d[e.u] += e.mult;
    d[e.v] += e.mult;  // loop (u == v) contributes twice in total
  }
  return d;
}

bool MultiGraph::connected() const {
  if (n <= 0) return false;
  std::vector<std::vector<std::int32_t>> adj(n + 1);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(n + 1, false);
  std::vector<std::int32_t> stack{1};
  seen[1] = true;
  std::int32_t cnt = 0;
  while (!stack.empty()) {
    std::int32_t v = stack.back();
    stack.pop_back();
    ++cnt;
    for (std::int32_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return cnt == n;
}

void MultiGraph::normalize() {
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  std::vector<Edge> merged;
  for (const auto& e : edges) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
      merged.back().mult += e.mult;
    else
      merged.push_back(e);
  }
  edges = std::move(merged);
}

void ConnectedGraph::validate() const {
  if (n <= 0) throw std::invalid_argument("graph: empty");
  std::vector<std::pair<std::int32_t, std::int32_t>> es = edges;
  for (auto& [u, v] : es) {
    if (u == v) throw std::invalid_argument("graph: loop in simple graph");
    if (u > v) std::swap(u, v);
    if (u < 1 || v > n) throw std::invalid_argument("graph: label out of range");
  }
  std::sort(es.begin(), es.end());
  if (std::adjacent_find(es.begin(), es.end()) != es.end())
    throw std::invalid_argument("graph: duplicate edge");
  MultiGraph m = as_multigraph();
  if (!m.connected()) throw std::invalid_argument("graph: not connected");
}

std::vector<std::vector<std::int32_t>> ConnectedGraph::adjacency() const {
  std::vector<std::vector<std::int32_t>> adj(n + 1);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

MultiGraph ConnectedGraph::as_multigraph() const {
  MultiGraph m;
  m.n = n;
  m.edges.reserve(edges.size());
  for (auto [u, v] : edges) m.edges.push_back({std::min(u, v), std::max(u, v), 1});
  m.normalize();
  return m;
}

std::int64_t surplus(const MultiGraph& g) {
  if (!g.connected()) throw std::invalid_argument("surplus: graph must be connected");
  return 1 + g.edge_count() - g.n;
}

std::int64_t surplus(const ConnectedGraph& g) {
  return 1 + static_cast<std::int64_t>(g.edges.size()) - g.n;
}

MultiGraph core(const ConnectedGraph& g) {
  g.validate();
  auto adj = g.adjacency();
  std::vector<std::int32_t> deg(g.n + 1, 0);
  for (std::int32_t v = 1; v <= g.n; ++v) deg[v] = static_cast<std::int32_t>(adj[v].size());
  std::vector<bool> removed(g.n + 1, false);
  std::vector<std::int32_t> queue;
  for (std::int32_t v = 1; v <= g.n; ++v)
    if (deg[v] <= 1) queue.push_back(v);
  while (!queue.empty()) {
    std::int32_t v = queue.back();
    queue.pop_back();
    if (removed[v]) continue;
    removed[v] = true;
    for (std::int32_t w : adj[v])
      if (!removed[w] && --deg[w] == 1) queue.push_back(w);
  }
  MultiGraph c;
  c.n = g.n;
  for (auto [u, v] : g.edges)
    if (!removed[u] && !removed[v]) c.edges.push_back({std::min(u, v), std::max(u, v), 1});
  c.normalize();
  return c;
}

KernelDecomp kernel(const ConnectedGraph& g) {
  KernelDecomp out;
  MultiGraph c = core(g);
  out.kernel.n = g.n;
  std::int64_t s = surplus(g);
  if (s <= 0) return out;  // tree: empty core, empty kernel

  // adjacency of the core with edge identities (simple graph)
  std::vector<std::vector<std::int32_t>> adj(g.n + 1);
  for (const auto& e : c.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  if (s == 1) {
    // the core is a single cycle; record it and leave the kernel empty
    std::int32_t start = 0;
    for (std::int32_t v = 1; v <= g.n; ++v)
      if (!adj[v].empty()) {
        start = v;
        break;
      }
    out.cycle.push_back(start);
    std::int32_t prev = -1, cur = start;
    do {
      std::int32_t nxt = (adj[cur][0] != prev) ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = nxt;
      if (cur != start) out.cycle.push_back(cur);
    } while (cur != start);
    return out;
  }

  // kernel vertices: core vertices of degree >= 3
  std::vector<bool> is_kernel(g.n + 1, false);
  for (std::int32_t v = 1; v <= g.n; ++v)
    if (adj[v].size() >= 3) is_kernel[v] = true;

  // walk maximal degree-2 chains between kernel vertices; each core edge is
  // consumed exactly once
  std::vector<std::vector<bool>> used(g.n + 1);
  for (std::int32_t v = 1; v <= g.n; ++v) used[v].assign(adj[v].size(), false);
  auto edge_index = [&](std::int32_t v, std::int32_t w, std::int32_t skip_used) -> std::int32_t {
    for (std::size_t i = 0; i < adj[v].size(); ++i)
      if (adj[v][i] == w && (skip_used < 0 || !used[v][i])) return static_cast<std::int32_t>(i);
    return -1;
  };
  for (std::int32_t v = 1; v <= g.n; ++v) {
    if (!is_kernel[v]) continue;
    for (std::size_t i = 0; i < adj[v].size(); ++i) {
      if (used[v][i]) continue;
      std::vector<std::int32_t> path{v};
      std::int32_t prev = v;
      std::int32_t cur = adj[v][i];
      used[v][i] = true;
      {
        std::int32_t back = edge_index(cur, prev, 0);
        used[cur][back] = true;
      }
      while (!is_kernel[cur]) {
        path.push_back(cur);
        std::int32_t nxt = -1;
        for (std::size_t kdx = 0; kdx < adj[cur].size(); ++kdx)
          if (!used[cur][kdx]) {
            nxt = static_cast<std::int32_t>(kdx);
            break;
          }
        if (nxt < 0) throw std::logic_error("kernel: chain walk failed");
        std::int32_t w = adj[cur][nxt];
        used[cur][nxt] = true;
        std::int32_t back = edge_index(w, cur, 0);
        used[w][back] = true;
        prev = cur;
        cur = w;
      }
      path.push_back(cur);
      out.kernel.edges.push_back({std::min(v, cur), std::max(v, cur), 1});
      out.paths.push_back(std::move(path));
    }
  }
  out.kernel.normalize();
  return out;
}

MultiGraph core_from_kernel(const KernelDecomp& k, std::int32_t n) {
  MultiGraph c;
  c.n = n;
  if (!k.cycle.empty()) {
    for (std::size_t i = 0; i < k.cycle.size(); ++i) {
      std::int32_t u = k.cycle[i];
      std::int32_t v = k.cycle[(i + 1) % k.cycle.size()];
      c.edges.push_back({std::min(u, v), std::max(u, v), 1});
    }
    c.normalize();
    return c;
  }
  for (const auto& path : k.paths)
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      std::int32_t u = path[i], v = path[i + 1];
      c.edges.push_back({std::min(u, v), std::max(u, v), 1});
    }
  c.normalize();
  return c;
}

void MarkedDfq::validate() const {
  q.validate();
  if (q.flavor != DiscreteExcursion::Flavor::dfq)
    throw std::invalid_argument("marked dfq: dfq flavor required");
  std::vector<std::pair<std::int32_t, std::int32_t>> ms = marks;
  std::sort(ms.begin(), ms.end());
  if (std::adjacent_find(ms.begin(), ms.end()) != ms.end())
    throw std::invalid_argument("marked dfq: duplicate mark");
  for (auto [i, j] : ms) {
    if (i < 1 || i >= static_cast<std::int32_t>(q.q.size()) - 1)
      throw std::invalid_argument("marked dfq: mark index out of range");
    if (j < 1 || j >= q.q[i]) throw std::invalid_argument("marked dfq: mark outside S");
  }
}

DepthFirstResult depth_first_tree(const ConnectedGraph& g) {
  g.validate();
  auto adj = g.adjacency();
  DepthFirstResult out;
  out.tree.n = g.n;
  out.tree.root = 1;
  out.tree.parent.assign(g.n + 1, 0);
  out.tree.parent[1] = 1;
  out.code.q.flavor = DiscreteExcursion::Flavor::dfq;
  out.code.q.q.push_back(1);

  enum : std::uint8_t { fresh, on_stack, explored };
  std::vector<std::uint8_t> state(g.n + 1, fresh);
  std::vector<std::int32_t> stack{1};
  state[1] = on_stack;
  std::int32_t step = 0;  // vertices explored so far
  while (!stack.empty()) {
    std::int32_t v = stack.back();
    stack.pop_back();
    state[v] = explored;
    out.order.push_back(v);
    ++step;
    // neighbours still on the stack are surplus edges, recorded as marks
    // (i, j) with i = step - 1 = the q-index whose stack this is
    for (std::int32_t w : adj[v]) {
      if (state[w] == on_stack) {
        auto pos = std::find(stack.begin(), stack.end(), w);
        std::int32_t j = static_cast<std::int32_t>(pos - stack.begin()) + 1;
        out.code.marks.emplace_back(step - 1, j);
        out.surplus_edges.emplace_back(std::min(v, w), std::max(v, w));
      }
    }
    // children: fresh neighbours, increasing label; push reversed so the
    // smallest label is explored first
    std::vector<std::int32_t> kids;
    for (std::int32_t w : adj[v])
      if (state[w] == fresh) kids.push_back(w);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      state[*it] = on_stack;
      out.tree.parent[*it] = v;
      stack.push_back(*it);
    }
    out.code.q.q.push_back(static_cast<std::int64_t>(stack.size()));
  }
  if (step != g.n) throw std::logic_error("depth_first_tree: exploration incomplete");
  out.code.validate();
  return out;
}

MarkedDfq graph_to_marked_dfq(const ConnectedGraph& g) { return depth_first_tree(g).code; }

ConnectedGraph graph_from_tree_and_marks(
    const LabelledTree& t, const std::vector<std::pair<std::int32_t, std::int32_t>>& marks) {
  t.validate();
  if (t.root != 1) throw std::invalid_argument("graph_from_tree_and_marks: tree must be rooted at 1");
  ConnectedGraph g;
  g.n = t.n;
  for (std::int32_t v = 1; v <= t.n; ++v)
    if (v != t.root) g.edges.emplace_back(std::min(v, t.parent[v]), std::max(v, t.parent[v]));

  if (!marks.empty()) {
    // replay the stack exploration of the tree to resolve mark positions
    std::vector<std::vector<std::int32_t>> kids(t.n + 1);
    for (std::int32_t v = 1; v <= t.n; ++v)
      if (v != t.root) kids[t.parent[v]].push_back(v);
    for (auto& k : kids) std::sort(k.begin(), k.end());
    std::vector<std::pair<std::int32_t, std::int32_t>> ms = marks;
    std::sort(ms.begin(), ms.end());
    std::size_t next_mark = 0;
    std::vector<std::int32_t> stack{1};
    std::int32_t step = 0;
    while (!stack.empty() && next_mark < ms.size()) {
      std::int32_t v = stack.back();
      stack.pop_back();
      ++step;
      while (next_mark < ms.size() && ms[next_mark].first == step - 1) {
        std::int32_t j = ms[next_mark].second;
        if (j < 1 || j > static_cast<std::int32_t>(stack.size()))
          throw std::invalid_argument("marks: position outside the stack");
        std::int32_t w = stack[j - 1];
        g.edges.emplace_back(std::min(v, w), std::max(v, w));
        ++next_mark;
      }
      for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
    }
    if (next_mark != ms.size()) throw std::invalid_argument("marks: index beyond exploration");
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.validate();
  return g;
}

ConnectedGraph marked_dfq_to_graph(const MarkedDfq& code) {
  code.validate();
  OrderedTree shape = tree_from_dfq(code.q);
  // canonical labels: dfs position i gets label i+1
  std::vector<std::int32_t> labels(shape.size());
  std::iota(labels.begin(), labels.end(), 1);
  LabelledTree t = forget_order(shape, labels);
  return graph_from_tree_and_marks(t, code.marks);
}

std::vector<std::pair<std::int32_t, std::int32_t>> mark_slots(const DiscreteExcursion& q) {
  std::vector<std::pair<std::int32_t, std::int32_t>> slots;
  for (std::int32_t i = 1; i < static_cast<std::int32_t>(q.q.size()) - 1; ++i)
    for (std::int32_t j = 1; j < q.q[i]; ++j) slots.emplace_back(i, j);
  return slots;
}

std::int64_t area(const DiscreteExcursion& q) {
  if (q.flavor != DiscreteExcursion::Flavor::dfq)
    throw std::invalid_argument("area: dfq flavor required");
  std::int64_t a = 0;
  for (std::size_t i = 1; i + 1 < q.q.size(); ++i) a += q.q[i] - 1;
  return a;
}

std::int64_t area(const OrderedTree& t) { return area(dfq_of(t)); }

std::vector<ConnectedGraph> enumerate_Gns(std::int32_t n, std::int32_t s) {
  if (n < 1 || n > 8) throw std::invalid_argument("enumerate_Gns: n <= 8 guard");
  if (s < 0) throw std::invalid_argument("enumerate_Gns: s >= 0");
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (std::int32_t u = 1; u <= n; ++u)
    for (std::int32_t v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
  std::int32_t m = n - 1 + s;
  std::vector<ConnectedGraph> out;
  if (m < 0 || m > static_cast<std::int32_t>(pairs.size())) return out;
  if (n == 1) {
    if (s == 0) {
      ConnectedGraph g;
      g.n = 1;
      out.push_back(g);
    }
    return out;
  }
  // iterate over m-subsets of the pair list
  std::vector<std::int32_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  auto advance = [&]() -> bool {
    std::int32_t k = m - 1;
    while (k >= 0 && idx[k] == static_cast<std::int32_t>(pairs.size()) - m + k) --k;
    if (k < 0) return false;
    ++idx[k];
    for (std::int32_t j = k + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    return true;
  };
  do {
    ConnectedGraph g;
    g.n = n;
    g.edges.reserve(m);
    for (std::int32_t i : idx) g.edges.push_back(pairs[i]);
    if (g.as_multigraph().connected()) out.push_back(std::move(g));
  } while (advance());
  return out;
}

double graphs_with_core_count(std::int32_t n, std::int32_t k) {
  if (k < 1 || k > n) throw std::invalid_argument("graphs_with_core_count: need 1 <= k <= n");
  return static_cast<double>(k) * std::pow(static_cast<double>(n), static_cast<double>(n - k - 1));
}

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}

Rational kernel_weight(const MultiGraph& k) {
  auto deg = k.degrees();
  for (std::int32_t v = 1; v <= k.n; ++v)
    if (deg[v] != 0 && deg[v] < 3)
      throw std::invalid_argument("kernel_weight: kernel degrees must be >= 3");
  Rational w(1, 1);
  for (const auto& e : k.edges) {
    std::int64_t fact = 1;
    for (std::int32_t i = 2; i <= e.mult; ++i) fact *= i;
    w = w * Rational(1, fact);
    if (e.u == e.v) w = w * Rational(1, 2);
  }
  return w;
}

std::vector<MultiGraph> enumerate_kernels(std::int32_t s) {
  if (s < 2) throw std::invalid_argument("enumerate_kernels: s >= 2");
  std::int32_t k = 2 * (s - 1);
  // all multisets of edges (loops allowed) with every degree exactly 3
  std::vector<std::pair<std::int32_t, std::int32_t>> slots;  // u <= v including loops
  for (std::int32_t u = 1; u <= k; ++u)
    for (std::int32_t v = u; v <= k; ++v) slots.emplace_back(u, v);
  std::vector<MultiGraph> out;
  std::vector<std::int32_t> mult(slots.size(), 0);
  std::vector<std::int32_t> deg(k + 1, 0);
  // depth-first over slot multiplicities
  std::vector<std::int32_t> stack;
  std::function<void(std::size_t)> rec = [&](std::size_t at) {
    if (at == slots.size()) {
      for (std::int32_t v = 1; v <= k; ++v)
        if (deg[v] != 3) return;
      MultiGraph m;
      m.n = k;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (mult[i] > 0) m.edges.push_back({slots[i].first, slots[i].second, mult[i]});
      if (m.connected()) out.push_back(std::move(m));
      return;
    }
    auto [u, v] = slots[at];
    std::int32_t du = 3 - deg[u];
    std::int32_t dv = (u == v) ? du / 2 : 3 - deg[v];
    std::int32_t cap = (u == v) ? du / 2 : std::min(du, dv);
    for (std::int32_t c = 0; c <= cap; ++c) {
      mult[at] = c;
      deg[u] += (u == v) ? 2 * c : c;
      if (u != v) deg[v] += c;
      rec(at + 1);
      deg[u] -= (u == v) ? 2 * c : c;
      if (u != v) deg[v] -= c;
      mult[at] = 0;
    }
  };
  rec(0);
  return out;
}

Rational kappa(std::int32_t s) {
  if (s < 1) throw std::invalid_argument("kappa: s >= 1");
  if (s == 1) return Rational(1, 1);
  if (s > 4) throw std::invalid_argument("kappa: exact enumeration capped at s <= 4");
  Rational sum(0, 1);
  for (const auto& k : enumerate_kernels(s)) sum = sum + kernel_weight(k);
  std::int64_t f1 = 1, f2 = 1;
  for (std::int32_t i = 2; i <= 2 * s - 2; ++i) f1 *= i;
  for (std::int32_t i = 2; i <= 3 * s - 4; ++i) f2 *= i;
  return sum * Rational(1, f1) * Rational(1, f2);
}

double wright_asymptotic(std::int32_t n, std::int32_t s) {
  if (s < 1) throw std::invalid_argument("wright_asymptotic: s >= 1");
  double integral = std::pow(2.0, (3.0 * s - 4.0) / 2.0) * std::tgamma((3.0 * s - 2.0) / 2.0);
  return kappa(s).value() * std::pow(static_cast<double>(n), n - 2.0 + 1.5 * s) * integral;
}

std::int64_t count_connected_graphs(std::int32_t n) {
  if (n < 1 || n > 8) throw std::invalid_argument("count_connected_graphs: n <= 8 guard");
  std::int64_t total = 0;
  std::int32_t max_s = n * (n - 1) / 2 - (n - 1);
  for (std::int32_t s = 0; s <= max_s; ++s)
    total += static_cast<std::int64_t>(enumerate_Gns(n, s).size());
  return total;
}

std::string to_multigraph_text(const MultiGraph& g) {
  std::ostringstream os;
  for (const auto& e : g.edges) os << e.u << ' ' << e.v << ' ' << e.mult << '\n';
  return os.str();
}

MultiGraph parse_multigraph_text(const std::string& text) {
  MultiGraph g;
  std::istringstream is(text);
  std::int32_t u, v, m;
  while (is >> u >> v >> m) {
    if (u < 1 || v < 1 || m < 1) throw std::invalid_argument("multigraph text: bad row");
    g.edges.push_back({std::min(u, v), std::max(u, v), m});
    g.n = std::max({g.n, u, v});
  }
  g.normalize();
  return g;
}

std::string to_graph_text(const ConnectedGraph& g) {
  std::ostringstream os;
  for (auto [u, v] : g.edges) os << u << ' ' << v << '\n';
  return os.str();
}

ConnectedGraph parse_graph_text(const std::string& text) {
  ConnectedGraph g;
  std::istringstream is(text);
  std::int32_t u, v;
  while (is >> u >> v) {
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
    g.n = std::max({g.n, u, v});
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.validate();
  return g;
}

}  // namespace rtg
