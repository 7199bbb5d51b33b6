#include "rtglab/path_codes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtg {

void DiscreteExcursion::validate() const {
  if (q.empty()) throw std::invalid_argument("path: empty");
  std::int64_t m = steps();
  if (flavor == Flavor::dfq) {
    if (q[0] != 1 && !(m == 0 && q[0] == 0))
      throw std::invalid_argument("dfq path: must start at 1");
    if (q[m] != 0) throw std::invalid_argument("dfq path: must end at 0");
    for (std::int64_t i = 0; i < m; ++i) {
      if (q[i] <= 0) throw std::invalid_argument("dfq path: must stay positive before the end");
      if (q[i + 1] < q[i] - 1) throw std::invalid_argument("dfq path: increment below -1");
    }
  } else {
    if (q[0] != 0 || q[m] != 0) throw std::invalid_argument("contour path: endpoints must be 0");
    if (m % 2 != 0) throw std::invalid_argument("contour path: odd length");
    for (std::int64_t i = 0; i < m; ++i) {
      if (q[i] < 0) throw std::invalid_argument("contour path: negative value");
      if (std::abs(q[i + 1] - q[i]) != 1) throw std::invalid_argument("contour path: step not +-1");
    }
  }
}

void RealExcursion::validate() const {
  if (t.size() < 2 || t.size() != v.size()) throw std::invalid_argument("excursion: bad grid");
  if (t.front() != 0.0) throw std::invalid_argument("excursion: grid must start at 0");
  for (std::size_t j = 1; j < t.size(); ++j)
    if (!(t[j] > t[j - 1])) throw std::invalid_argument("excursion: grid not increasing");
  if (v.front() != 0.0 || v.back() != 0.0)
    throw std::invalid_argument("excursion: endpoint values must be 0");
  for (double x : v)
    if (x < 0.0) throw std::invalid_argument("excursion: negative value");
}

double RealExcursion::value_at(double x) const {
  if (x < 0.0 || x > zeta()) throw std::invalid_argument("excursion: time out of range");
  auto it = std::upper_bound(t.begin(), t.end(), x);
  if (it == t.begin()) return v.front();
  if (it == t.end()) return v.back();
  std::size_t j = static_cast<std::size_t>(it - t.begin());
  double w = (x - t[j - 1]) / (t[j] - t[j - 1]);
  return v[j - 1] + w * (v[j] - v[j - 1]);
}

DiscreteExcursion contour_of(const OrderedTree& t) {
  DiscreteExcursion e;
  e.flavor = DiscreteExcursion::Flavor::contour;
  std::int64_t n = t.size();
  e.q.reserve(2 * n - 1);
  e.q.push_back(0);
  // iterative clockwise walk: (vertex, next child index)
  std::vector<std::pair<Vertex, std::int64_t>> stack;
  stack.emplace_back(t.root, 0);
  std::int64_t h = 0;
  while (!stack.empty()) {
    auto& [v, idx] = stack.back();
    auto cs = t.children(v);
    if (idx < static_cast<std::int64_t>(cs.size())) {
      Vertex c = cs[idx++];
      e.q.push_back(++h);
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) e.q.push_back(--h);
    }
  }
  return e;
}

DiscreteExcursion dfq_of(const OrderedTree& t) {
  DiscreteExcursion e;
  e.flavor = DiscreteExcursion::Flavor::dfq;
  std::int64_t n = t.size();
  e.q.reserve(n + 1);
  e.q.push_back(1);
  std::int64_t q = 1;
  for (Vertex v : dfs_order(t)) {
    q += t.child_count(v) - 1;
    e.q.push_back(q);
  }
  return e;
}

DiscreteExcursion dfq_by_stack(const OrderedTree& t) {
  DiscreteExcursion e;
  e.flavor = DiscreteExcursion::Flavor::dfq;
  std::vector<Vertex> stack{t.root};
  e.q.push_back(1);
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    auto cs = t.children(v);
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) stack.push_back(*it);
    e.q.push_back(static_cast<std::int64_t>(stack.size()));
  }
  return e;
}

OrderedTree tree_from_dfq(const DiscreteExcursion& q) {
  if (q.flavor != DiscreteExcursion::Flavor::dfq)
    throw std::invalid_argument("tree_from_dfq: dfq flavor required");
  q.validate();
  std::int64_t n = q.steps();
  std::vector<Vertex> counts(n);
  for (std::int64_t i = 1; i <= n; ++i) counts[i - 1] = static_cast<Vertex>(q.q[i] - q.q[i - 1] + 1);
  return OrderedTree::from_dfs_child_counts(counts);
}

OrderedTree tree_from_contour(const DiscreteExcursion& e) {
  if (e.flavor != DiscreteExcursion::Flavor::contour)
    throw std::invalid_argument("tree_from_contour: contour flavor required");
  e.validate();
  std::vector<Vertex> parent{-1};
  std::vector<std::vector<Vertex>> kids(1);
  std::vector<Vertex> stack{0};
  for (std::int64_t i = 1; i < static_cast<std::int64_t>(e.q.size()); ++i) {
    if (e.q[i] > e.q[i - 1]) {
      Vertex v = static_cast<Vertex>(parent.size());
      parent.push_back(stack.back());
      kids.emplace_back();
      kids[stack.back()].push_back(v);
      stack.push_back(v);
    } else {
      stack.pop_back();
    }
  }
  return OrderedTree::build(0, std::move(parent), kids);
}

RealExcursion lift(const DiscreteExcursion& q, double time_scale, double space_scale) {
  if (time_scale <= 0.0 || space_scale <= 0.0)
    throw std::invalid_argument("lift: scales must be positive");
  RealExcursion e;
  std::size_t m = q.q.size();
  if (m == 1) {  // degenerate single-vertex contour; keep a 2-point zero grid
    e.t = {0.0, time_scale};
    e.v = {0.0, 0.0};
    return e;
  }
  e.t.resize(m);
  e.v.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    e.t[j] = time_scale * static_cast<double>(j);
    e.v[j] = space_scale * static_cast<double>(q.q[j]);
  }
  // the dfq path ends at 0 but starts at 1; the excursion view pads a zero
  if (q.flavor == DiscreteExcursion::Flavor::dfq && !e.v.empty() && e.v.front() != 0.0) {
    e.t.insert(e.t.begin(), -time_scale);
    for (auto& x : e.t) x += time_scale;
    e.v.insert(e.v.begin(), 0.0);
  }
  return e;
}

double excursion_distance(const RealExcursion& e, double x, double y) {
  if (x > y) std::swap(x, y);
  if (x < 0.0 || y > e.zeta()) throw std::invalid_argument("excursion_distance: time out of range");
  double ex = e.value_at(x), ey = e.value_at(y);
  // min over [x, y]: interior grid points plus the two interpolated endpoints
  double mn = std::min(ex, ey);
  auto lo = std::lower_bound(e.t.begin(), e.t.end(), x);
  auto hi = std::upper_bound(e.t.begin(), e.t.end(), y);
  for (auto it = lo; it != hi; ++it) mn = std::min(mn, e.v[static_cast<std::size_t>(it - e.t.begin())]);
  return ex + ey - 2.0 * mn;
}

std::vector<double> distance_matrix_from_excursion(const RealExcursion& e,
                                                   std::int64_t k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("distance matrix: k must be >= 1");
  std::vector<double> times(k);
  for (auto& x : times) x = rng.uniform(0.0, e.zeta());
  std::vector<double> m(static_cast<std::size_t>(k) * k, 0.0);
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t j = i + 1; j < k; ++j) {
      double d = excursion_distance(e, times[i], times[j]);
      m[i * k + j] = d;
      m[j * k + i] = d;
    }
  return m;
}

DfqContourSeries dfq_contour_series(const OrderedTree& t) {
  std::int64_t n = t.size();
  if (n < 2) throw std::invalid_argument("dfq_contour_series: need n >= 2");
  DfqContourSeries out;
  DiscreteExcursion q = dfq_of(t);
  std::vector<Vertex> dep = depths(t);
  std::vector<Vertex> order = dfs_order(t);
  out.q.reserve(n - 1);
  out.depth.reserve(n - 1);
  for (std::int64_t i = 1; i < n; ++i) {
    out.q.push_back(q.q[i]);
    out.depth.push_back(dep[order[i]]);
  }
  double s = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    double c = static_cast<double>(t.child_count(v));
    s += c * (c - 1.0);
  }
  out.predicted_factor = 0.5 * s / static_cast<double>(n - 1);
  out.degenerate = (s == 0.0);
  return out;
}

std::string to_path_text(const DiscreteExcursion& q) {
  std::ostringstream os;
  for (std::size_t i = 0; i < q.q.size(); ++i) {
    if (i) os << ' ';
    os << q.q[i];
  }
  os << '\n';
  return os.str();
}

DiscreteExcursion parse_path_text(const std::string& text, DiscreteExcursion::Flavor f) {
  DiscreteExcursion q;
  q.flavor = f;
  std::istringstream is(text);
  std::int64_t x;
  while (is >> x) q.q.push_back(x);
  q.validate();
  return q;
}

std::string to_excursion_csv(const RealExcursion& e) {
  std::ostringstream os;
  os << "t,value\n";
  os.precision(17);
  for (std::size_t j = 0; j < e.t.size(); ++j) os << e.t[j] << ',' << e.v[j] << '\n';
  return os.str();
}

RealExcursion parse_excursion_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,value", 0) != 0)
    throw std::invalid_argument("excursion csv: bad header");
  RealExcursion e;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("excursion csv: bad row");
    e.t.push_back(std::stod(line.substr(0, comma)));
    e.v.push_back(std::stod(line.substr(comma + 1)));
  }
  e.validate();
  return e;
}

}  // namespace rtg
