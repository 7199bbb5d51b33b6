#include "rtglab/tree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rtg {

OrderedTree OrderedTree::build(Vertex root, std::vector<Vertex> parent,
                               const std::vector<std::vector<Vertex>>& children) {
  OrderedTree t;
  std::size_t n = parent.size();
  t.root = root;
  t.parent = std::move(parent);
  t.child_off.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) t.child_off[v + 1] = t.child_off[v] + static_cast<std::int64_t>(children[v].size());
  t.child_list.reserve(n ? n - 1 : 0);
  for (std::size_t v = 0; v < n; ++v)
    for (Vertex c : children[v]) t.child_list.push_back(c);
  t.validate();
  return t;
}

OrderedTree OrderedTree::from_dfs_child_counts(std::span<const Vertex> counts) {
  std::size_t n = counts.size();
  if (n == 0) throw std::invalid_argument("tree: empty child-count sequence");
  OrderedTree t;
  t.root = 0;
  t.parent.assign(n, -1);
  t.child_off.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) t.child_off[v + 1] = t.child_off[v] + counts[v];
  if (t.child_off[n] != static_cast<std::int64_t>(n) - 1)
    throw std::invalid_argument("tree: child counts must sum to n-1");
  t.child_list.assign(n ? n - 1 : 0, -1);
  // Vertices in dfs order: the parent of v is the nearest earlier vertex with
  // unfilled child quota.
  std::vector<Vertex> stack;
  std::vector<Vertex> remaining(n);
  stack.push_back(0);
  remaining[0] = counts[0];
  std::vector<std::int64_t> next_slot(t.child_off.begin(), t.child_off.end() - 1);
  for (Vertex v = 1; v < static_cast<Vertex>(n); ++v) {
    while (!stack.empty() && remaining[stack.back()] == 0) stack.pop_back();
    if (stack.empty()) throw std::invalid_argument("tree: child counts do not form a tree");
    Vertex p = stack.back();
    t.parent[v] = p;
    t.child_list[next_slot[p]++] = v;
    --remaining[p];
    stack.push_back(v);
    remaining[v] = counts[v];
  }
  while (!stack.empty() && remaining[stack.back()] == 0) stack.pop_back();
  if (!stack.empty()) throw std::invalid_argument("tree: unfilled child quota");
  return t;
}

void OrderedTree::validate() const {
  std::int64_t n = size();
  if (n <= 0) throw std::invalid_argument("tree: empty");
  if (root < 0 || root >= n) throw std::invalid_argument("tree: root out of range");
  if (parent[root] != -1) throw std::invalid_argument("tree: root must have no parent");
  if (child_off.size() != static_cast<std::size_t>(n) + 1 ||
      child_off[n] != n - 1 || static_cast<std::int64_t>(child_list.size()) != n - 1)
    throw std::invalid_argument("tree: malformed child structure");
  std::int64_t with_parent = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (v != root) {
      if (parent[v] < 0 || parent[v] >= n) throw std::invalid_argument("tree: bad parent");
      ++with_parent;
    }
  }
  if (with_parent != n - 1) throw std::invalid_argument("tree: parent count mismatch");
  // mutual consistency parent <-> children
  for (Vertex v = 0; v < n; ++v)
    for (Vertex c : children(v))
      if (parent[c] != v) throw std::invalid_argument("tree: parent/children inconsistent");
  // connectivity: every vertex reaches the root
  std::vector<Vertex> d = dfs_order(*this);
  if (static_cast<std::int64_t>(d.size()) != n) throw std::invalid_argument("tree: not connected");
}

std::vector<Vertex> dfs_order(const OrderedTree& t) {
  std::vector<Vertex> order;
  order.reserve(t.size());
  std::vector<Vertex> stack;
  stack.push_back(t.root);
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    auto cs = t.children(v);
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<Vertex> depths(const OrderedTree& t) {
  std::vector<Vertex> d(t.size(), 0);
  for (Vertex v : dfs_order(t))
    if (v != t.root) d[v] = d[t.parent[v]] + 1;
  return d;
}

void LabelledTree::validate() const {
  if (n <= 0 || static_cast<std::int32_t>(parent.size()) != n + 1)
    throw std::invalid_argument("labelled tree: bad size");
  if (root < 1 || root > n || parent[root] != root)
    throw std::invalid_argument("labelled tree: bad root");
  for (std::int32_t v = 1; v <= n; ++v)
    if (parent[v] < 1 || parent[v] > n) throw std::invalid_argument("labelled tree: bad parent");
  // acyclic + connected: walk to the root from every vertex with path halving
  std::vector<std::int32_t> depth(n + 1, -1);
  depth[root] = 0;
  for (std::int32_t v = 1; v <= n; ++v) {
    std::vector<std::int32_t> chain;
    std::int32_t u = v;
    while (depth[u] < 0) {
      chain.push_back(u);
      u = parent[u];
      if (static_cast<std::int32_t>(chain.size()) > n)
        throw std::invalid_argument("labelled tree: cycle in parent links");
    }
    std::int32_t d = depth[u];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
  }
}

LabelledTree::OrderedView LabelledTree::ordered_view() const {
  std::vector<std::vector<std::int32_t>> kids(n + 1);
  for (std::int32_t v = 1; v <= n; ++v)
    if (v != root) kids[parent[v]].push_back(v);
  for (auto& k : kids) std::sort(k.begin(), k.end());
  // dfs over labels, children in increasing-label order
  OrderedView out;
  out.label.reserve(n);
  std::vector<std::int32_t> pos(n + 1, -1);
  std::vector<std::int32_t> stack;
  stack.push_back(root);
  while (!stack.empty()) {
    std::int32_t v = stack.back();
    stack.pop_back();
    pos[v] = static_cast<std::int32_t>(out.label.size());
    out.label.push_back(v);
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
  }
  std::vector<Vertex> par(n, -1);
  std::vector<std::vector<Vertex>> okids(n);
  for (std::int32_t i = 0; i < n; ++i) {
    std::int32_t lab = out.label[i];
    if (lab != root) par[i] = pos[parent[lab]];
    for (std::int32_t c : kids[lab]) okids[i].push_back(pos[c]);
  }
  out.tree = OrderedTree::build(0, std::move(par), okids);
  return out;
}

std::vector<std::int32_t> LabelledTree::children_of(std::int32_t label) const {
  std::vector<std::int32_t> kids;
  for (std::int32_t v = 1; v <= n; ++v)
    if (v != root && parent[v] == label) kids.push_back(v);
  return kids;
}

std::int32_t LabelledTree::depth(std::int32_t label) const {
  std::int32_t d = 0;
  while (label != root) {
    label = parent[label];
    ++d;
  }
  return d;
}

std::int32_t LabelledTree::distance(std::int32_t a, std::int32_t b) const {
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

void ChildSequence::validate() const {
  if (c.empty()) throw std::invalid_argument("child sequence: empty");
  std::int64_t sum = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] < 0) throw std::invalid_argument("child sequence: negative entry");
    sum += c[i];
  }
  if (sum != n() - 1) throw std::invalid_argument("child sequence: entries must sum to n-1");
}

ChildSequence child_counts(const LabelledTree& t) {
  t.validate();
  ChildSequence s;
  s.c.assign(t.n + 1, 0);
  for (std::int32_t v = 1; v <= t.n; ++v)
    if (v != t.root) ++s.c[t.parent[v]];
  return s;
}

LabelledTree forget_order(const OrderedTree& t, std::span<const std::int32_t> labels) {
  std::int64_t n = t.size();
  if (static_cast<std::int64_t>(labels.size()) != n)
    throw std::invalid_argument("forget_order: label count mismatch");
  std::vector<bool> seen(n + 1, false);
  for (std::int32_t lab : labels) {
    if (lab < 1 || lab > n || seen[lab]) throw std::invalid_argument("forget_order: labels must be a permutation of 1..n");
    seen[lab] = true;
  }
  LabelledTree out;
  out.n = static_cast<std::int32_t>(n);
  out.parent.assign(n + 1, 0);
  out.root = labels[t.root];
  out.parent[out.root] = out.root;
  for (Vertex v = 0; v < n; ++v)
    if (v != t.root) out.parent[labels[v]] = labels[t.parent[v]];
  return out;
}

std::string to_parent_text(const LabelledTree& t) {
  std::ostringstream os;
  os << t.n << ' ' << t.root << '\n';
  for (std::int32_t v = 1; v <= t.n; ++v) os << v << ' ' << t.parent[v] << '\n';
  return os.str();
}

LabelledTree parse_parent_text(const std::string& text) {
  std::istringstream is(text);
  LabelledTree t;
  if (!(is >> t.n >> t.root)) throw std::invalid_argument("parent text: bad header");
  if (t.n <= 0) throw std::invalid_argument("parent text: bad n");
  t.parent.assign(t.n + 1, 0);
  for (std::int32_t i = 0; i < t.n; ++i) {
    std::int32_t v, p;
    if (!(is >> v >> p)) throw std::invalid_argument("parent text: truncated");
    if (v < 1 || v > t.n) throw std::invalid_argument("parent text: label out of range");
    t.parent[v] = p;
  }
  t.validate();
  return t;
}

std::string to_edge_text(const LabelledTree& t) {
  std::ostringstream os;
  for (std::int32_t v = 1; v <= t.n; ++v)
    if (v != t.root) os << t.parent[v] << ' ' << v << '\n';
  return os.str();
}

LabelledTree parse_edge_text(const std::string& text, std::int32_t root) {
  std::istringstream is(text);
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::int32_t u, v, maxlab = root;
  while (is >> u >> v) {
    edges.emplace_back(u, v);
    maxlab = std::max({maxlab, u, v});
  }
  std::int32_t n = maxlab;
  if (static_cast<std::int32_t>(edges.size()) != n - 1)
    throw std::invalid_argument("edge text: not a tree (need n-1 edges)");
  std::vector<std::vector<std::int32_t>> adj(n + 1);
  for (auto [a, b] : edges) {
    if (a < 1 || b < 1) throw std::invalid_argument("edge text: labels are 1-based");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  LabelledTree t;
  t.n = n;
  t.root = root;
  t.parent.assign(n + 1, 0);
  t.parent[root] = root;
  std::vector<std::int32_t> stack{root};
  std::vector<bool> seen(n + 1, false);
  seen[root] = true;
  while (!stack.empty()) {
    std::int32_t w = stack.back();
    stack.pop_back();
    for (std::int32_t c : adj[w])
      if (!seen[c]) {
        seen[c] = true;
        t.parent[c] = w;
        stack.push_back(c);
      }
  }
  t.validate();
  return t;
}

}  // namespace rtg
