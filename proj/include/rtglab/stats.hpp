#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rtglab/rng.hpp"
#include "rtglab/samplers.hpp"

#include "json.hpp"

namespace rtg {

// --- special functions ------------------------------------------------------
double gamma_p(double a, double x);  // regularized lower incomplete gamma
double gamma_q(double a, double x);  // upper tail
double kolmogorov_q(double x);       // P(K > x), asymptotic KS distribution

// --- goodness of fit --------------------------------------------------------
struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample KS against a cdf.
TestResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);
// Two-sample KS.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);
// Plain two-sample KS distance (no p-value).
double ks_distance(std::vector<double> a, std::vector<double> b);

// Chi-square against a pmf over categories 0..k-1. Cells are merged in order
// until every group's expected count is >= 5 (the trailing remainder joins
// the last group).
TestResult chi_square(const std::vector<std::int64_t>& observed, const std::vector<double>& pmf);
// Two-sample chi-square on a shared category set.
TestResult chi_square_two_sample(const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// --- reference densities ----------------------------------------------------
struct ReferenceDensity {
  std::string name;
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  double lo = 0.0, hi = 0.0;  // support used for the quadrature check

  double integral() const;  // Simpson quadrature of pdf over [lo, hi]
};

ReferenceDensity rayleigh_density();                 // x e^{-x^2/2}
ReferenceDensity arrival_time_density(std::int32_t i);  // s_i of the rate-t process
ReferenceDensity core_size_density(std::int32_t s);  // normalized x^{3s-3}e^{-x^2/2}

struct EmpiricalSample {
  std::vector<double> observations;
  std::vector<double> weights;  // empty = unweighted
  nlohmann::json metadata;
};

// --- experiment reports -----------------------------------------------------
enum class CheckStatus { pass, flag, fail };

// pass: p > 0.01; flag: 0.001 < p <= 0.01 (reported, not failed); fail below.
CheckStatus status_from_p(double p);

struct Check {
  std::string name;
  double statistic = 0.0;
  double p_value = -1.0;  // < 0: no p-value (threshold-style check)
  double threshold = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

struct Report {
  std::string experiment;
  std::uint64_t seed = 0;
  nlohmann::json params;
  std::vector<Check> checks;
  nlohmann::json diagnostics;
  std::map<std::string, std::vector<double>> raw;  // series for CSV/SVG

  void add_p_check(const std::string& name, const TestResult& r);
  void add_bound_check(const std::string& name, double value, double bound, bool pass);
  bool all_passed() const;  // flags count as passes
  nlohmann::json to_json() const;
};

// Deterministic fan-out: body(i) runs for i in [0, count) on `threads`
// workers; results must be written to per-index slots.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body);

// --- experiments -------------------------------------------------------------
// Subtree sizes |S_i| of uniform rooted labelled trees vs the rate-t arrival
// law (per-coordinate KS + joint PIT check).
Report experiment_subtree_sizes(std::int64_t n, std::int32_t k, std::int64_t draws,
                                std::uint64_t seed, int threads = 0);

// Two-point distances in conditioned Bienayme trees, rescaled by
// (sigma/2) n^{-1/2}, vs Rayleigh; universality across presets; n-doubling.
Report experiment_crt_distance(std::int64_t n, std::int64_t draws, std::uint64_t seed,
                               int threads = 0);

// Core size of uniform fixed-surplus graphs vs its limiting density;
// kernel frequencies at s = 2.
Report experiment_core_size(std::int32_t n, std::int32_t s, std::int64_t draws,
                            std::uint64_t seed, int threads = 0);

// Critical ER: sizes/surpluses vs the reflected-process excursions, metric
// n-doubling, and the surplus-1 metric law vs the glued excursion graph.
struct CriticalErConfig {
  std::int64_t n = 100000;
  double lambda = 0.0;
  std::int64_t draws = 1200;
  double dt = 1e-3;
  double horizon = 10.0;
  std::int64_t metric_n = 25000;
  std::int64_t metric_draws = 600;
  std::int64_t glue_gridsize = 20000;
  bool run_metric = true;
};
Report experiment_critical_er(const CriticalErConfig& cfg, std::uint64_t seed, int threads = 0);

// i.i.d.-degree model at criticality vs the B-tilde reflected process.
Report experiment_degree_model(const DegreeModelParams& params, std::int64_t n,
                               std::int64_t draws, std::uint64_t seed, int threads = 0);

// Fixed-surplus metric law: distances in uniform G_n^s rescaled by n^{-1/2}
// vs distances in the glued tilted excursion graph.
Report experiment_fixed_surplus_metric(std::int32_t n, std::int32_t s, std::int64_t draws,
                                       std::uint64_t seed, int threads = 0,
                                       std::int64_t glue_gridsize = 20000);

}  // namespace rtg
