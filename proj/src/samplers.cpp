#include "rtglab/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "rtglab/linebreak.hpp"
#include "rtglab/stats.hpp"

namespace rtg {

OffspringSpec OffspringSpec::geometric_half() {
  OffspringSpec s;
  s.preset = Preset::geometric_half;
  s.mean = 1.0;
  s.variance = 2.0;
  return s;
}

OffspringSpec OffspringSpec::binary() {
  OffspringSpec s;
  s.preset = Preset::binary;
  s.mean = 1.0;
  s.variance = 1.0;
  return s;
}

OffspringSpec OffspringSpec::poisson1() {
  OffspringSpec s;
  s.preset = Preset::poisson1;
  s.mean = 1.0;
  s.variance = 1.0;
  return s;
}

OffspringSpec OffspringSpec::custom_pmf(std::vector<double> pmf) {
  OffspringSpec s;
  s.preset = Preset::custom;
  double total = 0.0;
  for (double p : pmf) {
    if (p < 0.0) throw std::invalid_argument("offspring pmf: negative mass");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("offspring pmf: must sum to 1");
  s.pmf = std::move(pmf);
  double m = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < s.pmf.size(); ++k) {
    m += static_cast<double>(k) * s.pmf[k];
    m2 += static_cast<double>(k) * static_cast<double>(k) * s.pmf[k];
  }
  s.mean = m;
  s.variance = m2 - m * m;
  return s;
}

std::string OffspringSpec::name() const {
  switch (preset) {
    case Preset::geometric_half: return "geometric";
    case Preset::binary: return "binary";
    case Preset::poisson1: return "poisson1";
    default: return "custom";
  }
}

namespace {

// Exchangeable child counts conditioned on sum n-1, one vector per preset.
std::vector<Vertex> conditioned_child_counts(const OffspringSpec& spec, std::int64_t n,
                                             Rng& rng) {
  std::vector<Vertex> xi(n, 0);
  switch (spec.preset) {
    case OffspringSpec::Preset::poisson1: {
      // multinomial: n-1 balls into n boxes
      for (std::int64_t b = 0; b < n - 1; ++b) ++xi[rng.uniform_int(n)];
      return xi;
    }
    case OffspringSpec::Preset::geometric_half: {
      // uniform weak composition of n-1 into n parts (stars and bars)
      std::vector<std::int8_t> sym;
      sym.reserve(2 * n - 2);
      for (std::int64_t i = 0; i < n - 1; ++i) sym.push_back(1);  // star
      for (std::int64_t i = 0; i < n - 1; ++i) sym.push_back(0);  // bar
      rng.shuffle(sym);
      std::int64_t box = 0;
      for (std::int8_t t : sym) {
        if (t == 1)
          ++xi[box];
        else
          ++box;
      }
      return xi;
    }
    case OffspringSpec::Preset::binary: {
      if (n % 2 == 0)
        throw std::invalid_argument("bienayme_conditioned: even n is inadmissible for the binary preset");
      // (n-1)/2 vertices get two children: uniform subset
      std::vector<Vertex> mark(n, 0);
      for (std::int64_t i = 0; i < (n - 1) / 2; ++i) mark[i] = 2;
      rng.shuffle(mark);
      return mark;
    }
    case OffspringSpec::Preset::custom: {
      std::vector<double> cdf(spec.pmf.size());
      std::partial_sum(spec.pmf.begin(), spec.pmf.end(), cdf.begin());
      std::int64_t retries = 200 * (1 + static_cast<std::int64_t>(std::sqrt(static_cast<double>(n))));
      for (std::int64_t attempt = 0; attempt < retries; ++attempt) {
        std::int64_t sum = 0;
        for (std::int64_t i = 0; i < n; ++i) {
          double u = rng.uniform();
          std::size_t k = static_cast<std::size_t>(
              std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
          if (k >= spec.pmf.size()) k = spec.pmf.size() - 1;
          xi[i] = static_cast<Vertex>(k);
          sum += static_cast<std::int64_t>(k);
        }
        if (sum == n - 1) return xi;
      }
      throw std::invalid_argument("bienayme_conditioned: size n not reached after bounded retries");
    }
  }
  throw std::logic_error("conditioned_child_counts: unreachable");
}

// Index after which the unique cycle rotation starts: first position
// attaining the minimum of the partial sums of (xi_i - 1).
std::int64_t first_min_position(const std::vector<Vertex>& xi) {
  std::int64_t sum = 0, best = 0, pos = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    sum += xi[i] - 1;
    if (sum < best) {
      best = sum;
      pos = static_cast<std::int64_t>(i) + 1;
    }
  }
  return pos;  // in 1..n; n means the sequence is already an excursion
}

}  // namespace

OrderedTree bienayme_conditioned(const OffspringSpec& spec, std::int64_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("bienayme_conditioned: n >= 1");
  if (n == 1) return OrderedTree::from_dfs_child_counts(std::vector<Vertex>{0});
  std::vector<Vertex> xi = conditioned_child_counts(spec, n, rng);
  std::int64_t tau = first_min_position(xi);
  std::vector<Vertex> rotated(n);
  for (std::int64_t i = 0; i < n; ++i) rotated[i] = xi[(tau + i) % n];
  return OrderedTree::from_dfs_child_counts(rotated);
}

DiscreteExcursion srw_excursion(std::int64_t m, Rng& rng) {
  if (m < 0) throw std::invalid_argument("srw_excursion: m >= 0");
  DiscreteExcursion e;
  e.flavor = DiscreteExcursion::Flavor::contour;
  if (m == 0) {
    e.q = {0};
    return e;
  }
  // m up-steps and m+1 down-steps; the unique rotation starting after the
  // first minimum is a first-passage path to -1; drop the final down-step.
  std::vector<std::int8_t> steps;
  steps.reserve(2 * m + 1);
  for (std::int64_t i = 0; i < m; ++i) steps.push_back(1);
  for (std::int64_t i = 0; i < m + 1; ++i) steps.push_back(-1);
  rng.shuffle(steps);
  std::int64_t sum = 0, best = 0, pos = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    sum += steps[i];
    if (sum < best) {
      best = sum;
      pos = static_cast<std::int64_t>(i) + 1;
    }
  }
  std::int64_t len = 2 * m + 1;
  e.q.reserve(2 * m + 1);
  e.q.push_back(0);
  std::int64_t h = 0;
  for (std::int64_t i = 0; i < len - 1; ++i) {  // drop the final step
    h += steps[(pos + i) % len];
    e.q.push_back(h);
  }
  return e;
}

WeightedPool::WeightedPool(std::int64_t pool_size, std::uint64_t master_seed,
                           const std::function<double(std::uint64_t)>& weight_of)
    : master_(master_seed) {
  if (pool_size < 1) throw std::invalid_argument("weighted pool: empty");
  cum_.resize(pool_size);
  parallel_for(pool_size, 0, [&](std::int64_t i) {
    cum_[i] = weight_of(static_cast<std::uint64_t>(i));
  });
  double total = 0.0, sq = 0.0, mx = 0.0;
  for (std::int64_t i = 0; i < pool_size; ++i) {
    double w = cum_[i];
    if (w < 0.0) throw std::invalid_argument("weighted pool: negative weight");
    total += w;
    sq += w * w;
    mx = std::max(mx, w);
    cum_[i] = total;
  }
  if (total <= 0.0) throw std::runtime_error("weighted pool: all weights zero (pool exhausted)");
  diag_.pool_size = pool_size;
  diag_.effective_sample_size = total * total / sq;
  diag_.max_weight_share = mx / total;
}

std::uint64_t WeightedPool::sample_stream(Rng& rng) const {
  double x = rng.uniform(0.0, cum_.back());
  auto it = std::lower_bound(cum_.begin(), cum_.end(), x);
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
      it - cum_.begin(), static_cast<std::ptrdiff_t>(cum_.size()) - 1));
}

namespace {

double binom_weight(std::int64_t a, std::int32_t s) {
  if (a < s) return 0.0;
  double w = 1.0;
  for (std::int32_t i = 0; i < s; ++i)
    w *= static_cast<double>(a - i) / static_cast<double>(i + 1);
  return w;
}

LabelledTree tree_from_word_code(std::int32_t n, std::int64_t code) {
  CodingWord w;
  w.n = n;
  w.w.resize(n - 1);
  w.w[0] = 1;
  for (std::int32_t i = 1; i < n - 1; ++i) {
    w.w[i] = static_cast<std::int32_t>(code % n) + 1;
    code /= n;
  }
  return decode(w);
}

}  // namespace

AreaBiasedSampler::AreaBiasedSampler(std::int32_t n, std::int32_t s, std::uint64_t seed,
                                     std::int64_t pool_size)
    : n_(n), s_(s) {
  if (n < 1 || s < 0) throw std::invalid_argument("area_biased: bad arguments");
  if (n <= 8) {
    exact_ = true;
    std::int64_t words = 1;
    for (std::int32_t i = 0; i < n - 2; ++i) words *= n;
    if (n == 1) words = 1;
    cum_.reserve(words);
    word_code_.reserve(words);
    double total = 0.0, sq = 0.0, mx = 0.0;
    for (std::int64_t code = 0; code < words; ++code) {
      double w;
      if (n == 1) {
        w = (s == 0) ? 1.0 : 0.0;
      } else {
        LabelledTree t = tree_from_word_code(n, code);
        auto view = t.ordered_view();
        w = binom_weight(area(view.tree), s);
      }
      total += w;
      sq += w * w;
      mx = std::max(mx, w);
      cum_.push_back(total);
      word_code_.push_back(code);
    }
    if (total <= 0.0) throw std::invalid_argument("area_biased: no tree on [n] admits s marks");
    diag_.pool_size = words;
    diag_.effective_sample_size = total * total / sq;
    diag_.max_weight_share = mx / total;
    return;
  }
  if (pool_size <= 0) pool_size = 64 * 1024;
  seed_ = seed;
  pool_.emplace(pool_size, seed, [n, s, seed](std::uint64_t id) {
    Rng r = Rng::stream(seed, id);
    LabelledTree t = uniform_tree_rooted_at_1(n, r);
    auto view = t.ordered_view();
    return binom_weight(area(view.tree), s);
  });
  diag_ = pool_->diagnostics();
}

LabelledTree AreaBiasedSampler::sample(Rng& rng) const {
  if (exact_) {
    double x = rng.uniform(0.0, cum_.back());
    auto it = std::lower_bound(cum_.begin(), cum_.end(), x);
    std::int64_t idx = std::min<std::ptrdiff_t>(it - cum_.begin(),
                                                static_cast<std::ptrdiff_t>(cum_.size()) - 1);
    if (n_ == 1) {
      LabelledTree t;
      t.n = 1;
      t.root = 1;
      t.parent = {0, 1};
      return t;
    }
    return tree_from_word_code(n_, word_code_[idx]);
  }
  std::uint64_t id = pool_->sample_stream(rng);
  Rng r = Rng::stream(seed_, id);
  return uniform_tree_rooted_at_1(n_, r);
}

LabelledTree area_biased_tree(std::int32_t n, std::int32_t s, Rng& rng,
                              std::uint64_t pool_seed, std::int64_t pool_size) {
  AreaBiasedSampler sampler(n, s, pool_seed, pool_size);
  return sampler.sample(rng);
}

ConnectedGraph uniform_graph_fixed_surplus(std::int32_t n, std::int32_t s, Rng& rng,
                                           const AreaBiasedSampler& trees) {
  LabelledTree t = trees.sample(rng);
  if (t.n != n) throw std::invalid_argument("uniform_graph_fixed_surplus: sampler size mismatch");
  if (s == 0) return graph_from_tree_and_marks(t, {});
  auto view = t.ordered_view();
  DiscreteExcursion q = dfq_of(view.tree);
  auto slots = mark_slots(q);
  std::int64_t a = static_cast<std::int64_t>(slots.size());
  if (a < s) throw std::logic_error("uniform_graph_fixed_surplus: tree with too few slots");
  // uniform s-subset by partial Fisher-Yates
  std::vector<std::pair<std::int32_t, std::int32_t>> marks;
  marks.reserve(s);
  for (std::int32_t i = 0; i < s; ++i) {
    std::int64_t j = i + rng.uniform_int(a - i);
    std::swap(slots[i], slots[j]);
    marks.push_back(slots[i]);
  }
  return graph_from_tree_and_marks(t, marks);
}

double ErParams::p() const {
  if (n < 1) throw std::invalid_argument("er: n >= 1");
  double v = 1.0 / static_cast<double>(n) +
             lambda * std::pow(static_cast<double>(n), -4.0 / 3.0);
  return std::clamp(v, 0.0, 1.0);
}

namespace {

struct Dsu {
  std::vector<std::int32_t> parent, size;
  explicit Dsu(std::int32_t n) : parent(n + 1), size(n + 1, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

ComponentSummary summarize_components(std::int32_t n,
                                      const std::vector<std::pair<std::int32_t, std::int32_t>>& edges,
                                      std::vector<std::int32_t>* component_of) {
  Dsu dsu(n);
  for (auto [u, v] : edges) dsu.unite(u, v);
  std::vector<std::int64_t> edge_cnt(n + 1, 0);
  for (auto [u, v] : edges) ++edge_cnt[dsu.find(u)];
  std::vector<std::int32_t> roots;
  for (std::int32_t v = 1; v <= n; ++v)
    if (dsu.find(v) == v) roots.push_back(v);
  // canonical order: size desc, then surplus desc, so equal-sized components
  // align the same way as in the exploration chain
  std::sort(roots.begin(), roots.end(), [&](std::int32_t a, std::int32_t b) {
    if (dsu.size[a] != dsu.size[b]) return dsu.size[a] > dsu.size[b];
    std::int64_t sa = edge_cnt[a] - dsu.size[a] + 1;
    std::int64_t sb = edge_cnt[b] - dsu.size[b] + 1;
    if (sa != sb) return sa > sb;
    return a < b;
  });
  ComponentSummary out;
  out.sizes.reserve(roots.size());
  out.surpluses.reserve(roots.size());
  std::vector<std::int32_t> index_of(n + 1, -1);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    out.sizes.push_back(dsu.size[roots[i]]);
    out.surpluses.push_back(edge_cnt[roots[i]] - dsu.size[roots[i]] + 1);
    index_of[roots[i]] = static_cast<std::int32_t>(i);
  }
  if (component_of) {
    component_of->assign(n + 1, -1);
    for (std::int32_t v = 1; v <= n; ++v) (*component_of)[v] = index_of[dsu.find(v)];
  }
  return out;
}

}  // namespace

ErGraphResult er_graph(const ErParams& params, Rng& rng) {
  std::int64_t n = params.n;
  double p = params.p();
  ErGraphResult out;
  if (p >= 1.0) {
    for (std::int32_t u = 1; u <= n; ++u)
      for (std::int32_t v = u + 1; v <= n; ++v) out.edges.emplace_back(u, v);
  } else if (p > 0.0) {
    // geometric skips through the lexicographic pair order
    double log1p_ = std::log(1.0 - p);
    std::int64_t total = n * (n - 1) / 2;
    std::int64_t k = -1;
    std::int64_t row = 1, row_start = 0;  // pairs before row u: sum_{i<u} (n-i)
    for (;;) {
      double u01 = rng.uniform();
      std::int64_t skip = static_cast<std::int64_t>(std::floor(std::log(u01) / log1p_));
      k += 1 + skip;
      if (k >= total) break;
      while (k >= row_start + (n - row)) {
        row_start += n - row;
        ++row;
      }
      std::int64_t offset = k - row_start;
      out.edges.emplace_back(static_cast<std::int32_t>(row),
                             static_cast<std::int32_t>(row + 1 + offset));
    }
  }
  out.components = summarize_components(static_cast<std::int32_t>(n), out.edges, &out.component_of);
  return out;
}

ComponentSummary er_explore_markov(const ErParams& params, Rng& rng) {
  std::int64_t n = params.n;
  double p = params.p();
  std::int64_t explored = 0;
  std::int64_t stack = 0;      // q
  std::int64_t untouched = n;  // n - explored - stack
  std::vector<std::pair<std::int64_t, std::int64_t>> comps;
  std::int64_t size = 0, marks = 0;
  while (explored < n) {
    if (stack == 0) {
      stack = 1;
      --untouched;
      size = 0;
      marks = 0;
    }
    std::int64_t children = rng.binomial(untouched, p);
    std::int64_t extra = rng.binomial(stack - 1, p);
    untouched -= children;
    stack += children - 1;
    ++explored;
    ++size;
    marks += extra;
    if (stack == 0) comps.emplace_back(size, marks);
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second > b.second);
  });
  ComponentSummary out;
  for (auto [sz, s] : comps) {
    out.sizes.push_back(sz);
    out.surpluses.push_back(s);
  }
  return out;
}

ConnectedGraph er_largest_component(const ErParams& params, Rng& rng, std::int64_t* surplus_out) {
  ErGraphResult g = er_graph(params, rng);
  if (g.components.sizes.empty()) throw std::logic_error("er: no components");
  // component index 0 is the largest; relabel its vertices by rank
  std::vector<std::int32_t> verts;
  for (std::int32_t v = 1; v <= params.n; ++v)
    if (g.component_of[v] == 0) verts.push_back(v);
  std::vector<std::int32_t> rank(params.n + 1, 0);
  for (std::size_t i = 0; i < verts.size(); ++i) rank[verts[i]] = static_cast<std::int32_t>(i) + 1;
  ConnectedGraph out;
  out.n = static_cast<std::int32_t>(verts.size());
  for (auto [u, v] : g.edges)
    if (g.component_of[u] == 0)
      out.edges.emplace_back(std::min(rank[u], rank[v]), std::max(rank[u], rank[v]));
  std::sort(out.edges.begin(), out.edges.end());
  if (surplus_out) *surplus_out = g.components.surpluses[0];
  return out;
}

ReflectedPath reflected_limit_process(const LimitProcessParams& params, Rng& rng) {
  if (params.dt <= 0.0 || params.horizon <= 0.0)
    throw std::invalid_argument("limit process: dt and horizon must be positive");
  std::int64_t steps = static_cast<std::int64_t>(std::ceil(params.horizon / params.dt));
  ReflectedPath out;
  out.dt = params.dt;
  out.reflected.reserve(steps + 1);
  out.drifted.reserve(steps + 1);
  double b = 0.0, runmin = 0.0;
  out.reflected.push_back(0.0);
  out.drifted.push_back(0.0);
  double sdt = std::sqrt(params.dt);
  std::int64_t exc_start = 0;  // grid index where R last was 0
  std::int64_t exc_marks = 0;
  std::vector<std::pair<double, std::int64_t>> excs;
  for (std::int64_t k = 0; k < steps; ++k) {
    double t = static_cast<double>(k) * params.dt;
    b += (params.drift_linear + params.drift_curvature * t) * params.dt +
         params.diffusivity * sdt * rng.normal();
    bool new_min = b < runmin;
    if (new_min) runmin = b;
    double r = b - runmin;
    out.drifted.push_back(b);
    out.reflected.push_back(r);
    if (r > 0.0 && rng.bernoulli(r * params.dt)) {
      out.mark_times.push_back(t + params.dt);
      ++exc_marks;
    }
    if (r == 0.0) {
      std::int64_t len = (k + 1) - exc_start;
      if (len >= 2) excs.emplace_back(static_cast<double>(len) * params.dt, exc_marks);
      exc_start = k + 1;
      exc_marks = 0;
    }
  }
  std::sort(excs.begin(), excs.end(), [](const auto& a, const auto& b2) {
    return a.first > b2.first || (a.first == b2.first && a.second > b2.second);
  });
  for (auto [len, mk] : excs) {
    out.excursion_lengths.push_back(len);
    out.excursion_marks.push_back(mk);
  }
  return out;
}

LimitProcessParams er_limit_params(double lambda, double horizon, double dt) {
  LimitProcessParams p;
  p.horizon = horizon;
  p.dt = dt;
  p.diffusivity = 1.0;
  p.drift_linear = lambda;
  p.drift_curvature = -1.0;
  return p;
}

double DegreeModelParams::mu() const {
  double m = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) m += static_cast<double>(i + 1) * pmf[i];
  return m;
}

double DegreeModelParams::theta() const {
  double num = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    double k = static_cast<double>(i + 1);
    num += k * (k - 1.0) * pmf[i];
  }
  return num / mu();
}

double DegreeModelParams::beta() const {
  double b = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    double k = static_cast<double>(i + 1);
    b += k * (k - 1.0) * (k - 2.0) * pmf[i];
  }
  return b;
}

void DegreeModelParams::validate() const {
  if (pmf.empty()) throw std::invalid_argument("degree model: empty pmf");
  double total = 0.0;
  for (double p : pmf) {
    if (p < 0.0) throw std::invalid_argument("degree model: negative mass");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("degree model: pmf must sum to 1");
  if (pmf.size() >= 2 && pmf[1] >= 1.0 - 1e-12)
    throw std::invalid_argument("degree model: P(D=2) must be < 1");
}

LimitProcessParams degree_limit_params(const DegreeModelParams& d, double horizon, double dt) {
  LimitProcessParams p;
  p.horizon = horizon;
  p.dt = dt;
  double mu = d.mu(), beta = d.beta();
  p.diffusivity = std::sqrt(beta / mu);
  p.drift_linear = 0.0;
  p.drift_curvature = -beta / (mu * mu);
  return p;
}

DegreeGraphResult degree_model_graph(const DegreeModelParams& params, std::int64_t n, Rng& rng,
                                     std::int64_t max_attempts) {
  params.validate();
  if (n < 1) throw std::invalid_argument("degree model: n >= 1");
  std::vector<double> cdf(params.pmf.size());
  std::partial_sum(params.pmf.begin(), params.pmf.end(), cdf.begin());
  DegreeGraphResult out;
  out.degrees.assign(n + 1, 0);
  std::int64_t total = 0;
  for (std::int64_t v = 1; v <= n; ++v) {
    double u = rng.uniform();
    std::size_t k = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (k >= params.pmf.size()) k = params.pmf.size() - 1;
    out.degrees[v] = static_cast<std::int32_t>(k) + 1;
    total += out.degrees[v];
  }
  if (total % 2 != 0) {
    --out.degrees[n];  // parity fix: reduce the last vertex; it may drop to degree 0
    --total;
  }
  std::vector<std::int32_t> stubs;
  stubs.reserve(total);
  for (std::int32_t v = 1; v <= n; ++v)
    for (std::int32_t i = 0; i < out.degrees[v]; ++i) stubs.push_back(v);

  auto try_pairing = [&](std::vector<std::pair<std::int32_t, std::int32_t>>& edges) -> bool {
    rng.shuffle(stubs);
    edges.clear();
    edges.reserve(stubs.size() / 2);
    std::unordered_set<std::int64_t> seen;
    seen.reserve(stubs.size());
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      std::int32_t u = stubs[i], v = stubs[i + 1];
      if (u == v) return false;  // loop
      std::int64_t key = static_cast<std::int64_t>(std::min(u, v)) * (n + 1) + std::max(u, v);
      if (!seen.insert(key).second) return false;  // multi-edge
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return true;
  };
  bool ok = false;
  for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
    ++out.pairing_attempts;
    if (try_pairing(out.edges)) {
      ok = true;
      break;
    }
  }
  if (!ok)
    throw std::runtime_error("degree model: no simple pairing found after bounded retries (degree sequence effectively non-graphical)");
  out.components = summarize_components(static_cast<std::int32_t>(n), out.edges, nullptr);
  return out;
}

}  // namespace rtg
