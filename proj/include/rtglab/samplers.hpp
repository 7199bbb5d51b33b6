#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rtglab/graph.hpp"
#include "rtglab/path_codes.hpp"
#include "rtglab/rng.hpp"
#include "rtglab/tree.hpp"

namespace rtg {

// Offspring distribution for Bienayme trees. Presets: geometric(1/2)
// (p_k = 2^{-k-1}), binary (p_0 = p_2 = 1/2), poisson1 (p_k = e^{-1}/k!);
// all three are critical (mean 1).
struct OffspringSpec {
  enum class Preset { geometric_half, binary, poisson1, custom };
  Preset preset = Preset::custom;
  std::vector<double> pmf;  // for custom: p_0, p_1, ... (truncated tail)
  double mean = 0.0;
  double variance = 0.0;

  static OffspringSpec geometric_half();
  static OffspringSpec binary();
  static OffspringSpec poisson1();
  static OffspringSpec custom_pmf(std::vector<double> pmf);

  std::string name() const;
};

// Size-conditioned Bienayme tree via the cycle-lemma rotation of increments
// conditioned to sum to -1. Throws if n is inadmissible (after bounded
// retries, or immediately for the binary parity case).
OrderedTree bienayme_conditioned(const OffspringSpec& spec, std::int64_t n, Rng& rng);

// Exact uniform Dyck path of 2m steps: the contour of a uniform rooted
// ordered tree with m edges (SRW conditioned nonnegative and back at 0).
DiscreteExcursion srw_excursion(std::int64_t halfsteps, Rng& rng);

// Weighted-pool resampler: generates `pool` items from deterministic
// substreams, keeps only weights, and regenerates chosen items on demand.
struct PoolDiagnostics {
  std::int64_t pool_size = 0;
  double effective_sample_size = 0.0;
  double max_weight_share = 0.0;
};

class WeightedPool {
 public:
  // weight_of(stream_id) -> weight; items are regenerated from stream ids.
  WeightedPool(std::int64_t pool_size, std::uint64_t master_seed,
               const std::function<double(std::uint64_t)>& weight_of);

  std::uint64_t sample_stream(Rng& rng) const;  // stream id, probability ~ weight
  const PoolDiagnostics& diagnostics() const { return diag_; }

 private:
  std::vector<double> cum_;
  std::uint64_t master_;
  PoolDiagnostics diag_;
};

// Tree rooted at 1 with law proportional to binom(a(T), s); exact
// enumeration for n <= 8, pool resampling above (pool = pool_factor * 1,
// shared across draws via sampler state).
class AreaBiasedSampler {
 public:
  AreaBiasedSampler(std::int32_t n, std::int32_t s, std::uint64_t seed,
                    std::int64_t pool_size = 0);  // 0: 64*1024 default / exact path

  LabelledTree sample(Rng& rng) const;
  const PoolDiagnostics& diagnostics() const { return diag_; }
  bool exact() const { return exact_; }

 private:
  std::int32_t n_, s_;
  bool exact_ = false;
  std::uint64_t seed_ = 0;
  // exact path
  std::vector<double> cum_;
  std::vector<std::int64_t> word_code_;  // word index in [n]^(n-2)
  // pool path
  std::optional<WeightedPool> pool_;
  PoolDiagnostics diag_;
};

LabelledTree area_biased_tree(std::int32_t n, std::int32_t s, Rng& rng,
                              std::uint64_t pool_seed, std::int64_t pool_size = 0);

// Exactly uniform on G_n^s given exact area-biased sampling: area-biased
// tree plus a uniform s-subset of the mark slots.
ConnectedGraph uniform_graph_fixed_surplus(std::int32_t n, std::int32_t s, Rng& rng,
                                           const AreaBiasedSampler& trees);

// Component summary shared by the graph and chain views of G(n,p).
struct ComponentSummary {
  std::vector<std::int64_t> sizes;      // decreasing
  std::vector<std::int64_t> surpluses;  // aligned with sizes
};

struct ErParams {
  std::int64_t n = 0;
  double lambda = 0.0;
  double p() const;  // 1/n + lambda * n^{-4/3}, clamped to [0, 1]
};

// Explicit G(n,p): sparse edge generation, components with sizes/surpluses.
struct ErGraphResult {
  ComponentSummary components;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::vector<std::int32_t> component_of;  // 1-based vertices
};
ErGraphResult er_graph(const ErParams& params, Rng& rng);

// Distributionally exact (sizes, surpluses) via the Markov exploration of
// the concatenated DFQ process, O(n) time, no graph built.
ComponentSummary er_explore_markov(const ErParams& params, Rng& rng);

// Largest component of an explicit G(n,p) draw, with its edge list relabelled
// 1..size (for metric experiments).
ConnectedGraph er_largest_component(const ErParams& params, Rng& rng, std::int64_t* surplus_out);

// Euler discretization of B^lambda_t = sigma B_t + a t + (b/2) t^2 reflected
// at its running minimum, with Poisson marks of intensity R_t.
struct ReflectedPath {
  double dt = 0.0;
  std::vector<double> reflected;   // R at grid points
  std::vector<double> drifted;     // B^lambda at grid points
  std::vector<double> mark_times;
  std::vector<double> excursion_lengths;      // decreasing
  std::vector<std::int64_t> excursion_marks;  // aligned
};

struct LimitProcessParams {
  double horizon = 10.0;
  double dt = 1e-3;
  double diffusivity = 1.0;   // sigma
  double drift_linear = 0.0;  // a: lambda for ER
  double drift_curvature = -1.0;  // b: coefficient of t in the drift a + b t
};
ReflectedPath reflected_limit_process(const LimitProcessParams& params, Rng& rng);

LimitProcessParams er_limit_params(double lambda, double horizon = 10.0, double dt = 1e-3);

// i.i.d.-degree uniform simple graph model.
struct DegreeModelParams {
  std::vector<double> pmf;  // P(D = k) at k = 1, 2, ... (index 0 = P(D=1))
  double mu() const;        // E D
  double theta() const;     // E D(D-1) / E D
  double beta() const;      // E D(D-1)(D-2)
  void validate() const;
};

LimitProcessParams degree_limit_params(const DegreeModelParams& d, double horizon = 10.0,
                                       double dt = 1e-3);

// Degrees drawn i.i.d., odd total fixed by reducing vertex n by 1; uniform
// simple graph by configuration-model pairing with full-resample rejection.
struct DegreeGraphResult {
  ComponentSummary components;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::vector<std::int32_t> degrees;  // realized, 1-based
  std::int64_t pairing_attempts = 0;
};
DegreeGraphResult degree_model_graph(const DegreeModelParams& params, std::int64_t n, Rng& rng,
                                     std::int64_t max_attempts = 1000);

}  // namespace rtg
