#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rtglab/report_io.hpp"
#include "rtglab/stats.hpp"

using namespace rtg;

TEST_CASE("special functions") {
  CHECK(gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(gamma_p(0.5, 0.5) == doctest::Approx(0.6826894921).epsilon(1e-6));  // P(|N|<1)
  CHECK(gamma_q(2.0, 0.0) == doctest::Approx(1.0));
  // known KS quantiles: Q(1.3581) ~ 0.05, Q(1.6276) ~ 0.01
  CHECK(kolmogorov_q(1.3581) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(kolmogorov_q(1.6276) == doctest::Approx(0.01).epsilon(0.02));
  CHECK(kolmogorov_q(0.3) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("reference densities integrate to one") {
  CHECK(std::abs(rayleigh_density().integral() - 1.0) < 1e-6);
  for (std::int32_t i : {1, 2, 3, 5}) CHECK(std::abs(arrival_time_density(i).integral() - 1.0) < 1e-6);
  for (std::int32_t s : {1, 2, 3}) CHECK(std::abs(core_size_density(s).integral() - 1.0) < 1e-6);
}

TEST_CASE("ks test behaviour") {
  Rng rng(1);
  // sample from the reference: p should not be tiny
  std::vector<double> unif(500);
  for (auto& x : unif) x = rng.uniform();
  auto id_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_test(unif, id_cdf).p_value > 0.01);

  // constant sample vs a continuous reference: p ~ 0
  std::vector<double> constant(200, 0.5);
  CHECK(ks_test(constant, id_cdf).p_value < 1e-6);

  // calibration: at the 1% level, rejection rate over 200 repetitions
  // stays within [0, 0.05]
  int rejections = 0;
  for (int rep = 0; rep < 200; ++rep) {
    Rng r(1000 + rep);
    std::vector<double> s(120);
    for (auto& x : s) x = r.uniform();
    if (ks_test(s, id_cdf).p_value <= 0.01) ++rejections;
  }
  CHECK(rejections <= 10);

  // two-sample: same law passes, shifted law fails
  std::vector<double> a(800), b(800), c(800);
  for (auto& x : a) x = rng.normal();
  for (auto& x : b) x = rng.normal();
  for (auto& x : c) x = rng.normal() + 1.0;
  CHECK(ks_two_sample(a, b).p_value > 0.01);
  CHECK(ks_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("chi square behaviour") {
  // exact pmf match: statistic 0
  std::vector<std::int64_t> obs{250, 250, 250, 250};
  TestResult r = chi_square(obs, {0.25, 0.25, 0.25, 0.25});
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.p_value == doctest::Approx(1.0));

  // cells with tiny expectation get merged rather than exploding
  std::vector<std::int64_t> obs2{995, 5, 0, 0};
  std::vector<double> pmf2{0.99, 0.005, 0.0049, 0.0001};
  CHECK_NOTHROW(chi_square(obs2, pmf2));

  // gross mismatch
  TestResult bad = chi_square({900, 100}, {0.5, 0.5});
  CHECK(bad.p_value < 1e-10);

  // two-sample: same distribution passes
  Rng rng(2);
  std::vector<std::int64_t> x(6, 0), y(6, 0);
  for (int i = 0; i < 3000; ++i) {
    ++x[rng.uniform_int(6)];
    ++y[rng.uniform_int(6)];
  }
  CHECK(chi_square_two_sample(x, y).p_value > 0.01);
}

TEST_CASE("total variation") {
  CHECK(total_variation({0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(0.0));
  CHECK(total_variation({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(1.0));
  CHECK(total_variation({0.7, 0.3}, {0.5, 0.5}) == doctest::Approx(0.2));
}

TEST_CASE("report json and determinism") {
  Report rep;
  rep.experiment = "demo";
  rep.seed = 42;
  rep.params = {{"n", 10}};
  rep.add_p_check("alpha", {0.1, 0.5});
  rep.add_p_check("flagged", {0.2, 0.005});
  rep.add_bound_check("bounded", 0.05, 0.1, true);
  auto j = rep.to_json();
  CHECK(j["experiment"] == "demo");
  CHECK(j["seed"] == 42);
  CHECK(j["checks"].size() == 3);
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(j["checks"][1]["status"] == "flag");
  CHECK(j["all_passed"] == true);
  CHECK(rep.all_passed());

  rep.add_p_check("failing", {0.9, 1e-5});
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("parallel_for is deterministic and propagates errors") {
  std::vector<double> a(1000), b(1000);
  parallel_for(1000, 1, [&](std::int64_t i) {
    Rng r = Rng::stream(7, static_cast<std::uint64_t>(i));
    a[i] = r.normal();
  });
  parallel_for(1000, 4, [&](std::int64_t i) {
    Rng r = Rng::stream(7, static_cast<std::uint64_t>(i));
    b[i] = r.normal();
  });
  CHECK(a == b);
  CHECK_THROWS_AS(
      parallel_for(10, 4, [](std::int64_t i) {
        if (i == 5) throw std::runtime_error("boom");
      }),
      std::runtime_error);
}

TEST_CASE("report emission: json, csv row counts, svg") {
  namespace fs = std::filesystem;
  Report rep;
  rep.experiment = "emit-demo";
  rep.seed = 3;
  rep.params = {{"draws", 64}};
  rep.add_p_check("shape", {0.1, 0.9});
  Rng rng(3);
  std::vector<double> series(64);
  for (auto& x : series) x = rng.normal();
  rep.raw["obs"] = series;
  fs::path dir = fs::temp_directory_path() / "rtglab_emit_test";
  fs::create_directories(dir);
  auto written = emit_report(rep, (dir / "rep").string(), {true, true});
  REQUIRE(written.size() == 3);

  std::ifstream jf(dir / "rep.json");
  std::stringstream js;
  js << jf.rdbuf();
  auto parsed = nlohmann::json::parse(js.str());
  CHECK(parsed["experiment"] == "emit-demo");
  CHECK(parsed["seed"] == 3);

  std::ifstream cf(dir / "rep.obs.csv");
  std::string line;
  std::int64_t rows = -1;  // header
  while (std::getline(cf, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 64);

  std::ifstream sf(dir / "rep.obs.svg");
  std::stringstream ss;
  ss << sf.rdbuf();
  CHECK(ss.str().rfind("<svg", 0) == 0);
  CHECK(ss.str().find("</svg>") != std::string::npos);
}

TEST_CASE("small experiment runs produce complete reports") {
  Report r1 = experiment_subtree_sizes(900, 2, 400, 5, 2);
  CHECK(r1.to_json()["checks"].size() >= 3);
  Report r2 = experiment_crt_distance(301, 300, 6, 2);
  CHECK(r2.checks.size() == 5);
  // determinism: identical seeds give identical reports
  Report r3 = experiment_crt_distance(301, 300, 6, 2);
  CHECK(r2.to_json().dump() == r3.to_json().dump());
}
