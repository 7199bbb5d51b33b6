#include "rtglab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace rtg {

// --- special functions ------------------------------------------------------

namespace {

double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double kolmogorov_q(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    // theta-function form, accurate for small arguments
    double y = std::exp(-std::acos(-1.0) * std::acos(-1.0) / (8.0 * x * x));
    double p = std::sqrt(2.0 * std::acos(-1.0)) / x *
               (y + std::pow(y, 9.0) + std::pow(y, 25.0) + std::pow(y, 49.0));
    return 1.0 - p;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * std::exp(-2.0 * static_cast<double>(k) * k * x * x);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::max(sum, 0.0);
}

// --- goodness of fit --------------------------------------------------------

namespace {

double ks_p_from(double d, double effective_n) {
  double rn = std::sqrt(effective_n);
  return kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
}

}  // namespace

TestResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_test: empty sample");
  std::sort(sample.begin(), sample.end());
  double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double f = cdf(sample[i]);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                             f - static_cast<double>(i) / n));
  }
  return {d, ks_p_from(d, n)};
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double d = ks_distance(std::move(a), std::move(b));
  return {d, ks_p_from(d, na * nb / (na + nb))};
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    double fa = static_cast<double>(i) / static_cast<double>(a.size());
    double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

TestResult chi_square(const std::vector<std::int64_t>& observed, const std::vector<double>& pmf) {
  if (observed.size() != pmf.size() || observed.empty())
    throw std::invalid_argument("chi_square: size mismatch");
  std::int64_t total = 0;
  for (auto o : observed) total += o;
  if (total <= 0) throw std::invalid_argument("chi_square: empty sample");
  // merge cells in order until expected >= 5
  std::vector<double> exp_grp;
  std::vector<double> obs_grp;
  double e_acc = 0.0, o_acc = 0.0;
  for (std::size_t c = 0; c < pmf.size(); ++c) {
    e_acc += pmf[c] * static_cast<double>(total);
    o_acc += static_cast<double>(observed[c]);
    if (e_acc >= 5.0) {
      exp_grp.push_back(e_acc);
      obs_grp.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (exp_grp.empty()) {
      exp_grp.push_back(e_acc);
      obs_grp.push_back(o_acc);
    } else {
      exp_grp.back() += e_acc;
      obs_grp.back() += o_acc;
    }
  }
  if (exp_grp.size() < 2) return {0.0, 1.0};
  double x2 = 0.0;
  for (std::size_t g = 0; g < exp_grp.size(); ++g) {
    double diff = obs_grp[g] - exp_grp[g];
    x2 += diff * diff / exp_grp[g];
  }
  double dof = static_cast<double>(exp_grp.size()) - 1.0;
  return {x2, gamma_q(dof / 2.0, x2 / 2.0)};
}

TestResult chi_square_two_sample(const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("chi_square_two_sample: size mismatch");
  double na = 0.0, nb = 0.0;
  for (auto x : a) na += static_cast<double>(x);
  for (auto x : b) nb += static_cast<double>(x);
  if (na <= 0.0 || nb <= 0.0) throw std::invalid_argument("chi_square_two_sample: empty sample");
  // merge adjacent cells until the pooled expected count is >= 5 in both rows
  struct Group {
    double oa = 0.0, ob = 0.0;
  };
  std::vector<Group> groups;
  Group acc;
  auto pooled_ok = [&](const Group& g) {
    double tot = g.oa + g.ob;
    return tot * na / (na + nb) >= 5.0 && tot * nb / (na + nb) >= 5.0;
  };
  for (std::size_t c = 0; c < a.size(); ++c) {
    acc.oa += static_cast<double>(a[c]);
    acc.ob += static_cast<double>(b[c]);
    if (pooled_ok(acc)) {
      groups.push_back(acc);
      acc = {};
    }
  }
  if (acc.oa > 0.0 || acc.ob > 0.0) {
    if (groups.empty())
      groups.push_back(acc);
    else {
      groups.back().oa += acc.oa;
      groups.back().ob += acc.ob;
    }
  }
  if (groups.size() < 2) return {0.0, 1.0};
  double x2 = 0.0;
  for (const auto& g : groups) {
    double tot = g.oa + g.ob;
    double ea = tot * na / (na + nb);
    double eb = tot * nb / (na + nb);
    x2 += (g.oa - ea) * (g.oa - ea) / ea;
    x2 += (g.ob - eb) * (g.ob - eb) / eb;
  }
  double dof = static_cast<double>(groups.size()) - 1.0;
  return {x2, gamma_q(dof / 2.0, x2 / 2.0)};
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

// --- reference densities ----------------------------------------------------

double ReferenceDensity::integral() const {
  // composite Simpson, even panel count
  const int panels = 4000;
  double h = (hi - lo) / panels;
  double sum = pdf(lo) + pdf(hi);
  for (int i = 1; i < panels; ++i) sum += pdf(lo + h * i) * ((i % 2 == 1) ? 4.0 : 2.0);
  return sum * h / 3.0;
}

ReferenceDensity rayleigh_density() {
  ReferenceDensity d;
  d.name = "rayleigh";
  d.pdf = [](double x) { return x <= 0.0 ? 0.0 : x * std::exp(-x * x / 2.0); };
  d.cdf = [](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x * x / 2.0); };
  d.lo = 0.0;
  d.hi = 8.0;
  return d;
}

ReferenceDensity arrival_time_density(std::int32_t i) {
  if (i < 1) throw std::invalid_argument("arrival_time_density: i >= 1");
  ReferenceDensity d;
  d.name = "arrival_time_" + std::to_string(i);
  double a = static_cast<double>(i);
  double lognorm = (a - 1.0) * std::log(2.0) + std::lgamma(a);
  d.pdf = [a, lognorm](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp((2.0 * a - 1.0) * std::log(x) - x * x / 2.0 - lognorm);
  };
  d.cdf = [a](double x) { return x <= 0.0 ? 0.0 : gamma_p(a, x * x / 2.0); };
  d.lo = 0.0;
  d.hi = 8.0 + 2.0 * std::sqrt(a);
  return d;
}

ReferenceDensity core_size_density(std::int32_t s) {
  if (s < 1) throw std::invalid_argument("core_size_density: s >= 1");
  ReferenceDensity d;
  d.name = "core_size_s" + std::to_string(s);
  double a = (3.0 * s - 2.0) / 2.0;
  double lognorm = ((3.0 * s - 4.0) / 2.0) * std::log(2.0) + std::lgamma(a);
  double power = 3.0 * s - 3.0;
  d.pdf = [power, lognorm](double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return power == 0.0 ? std::exp(-lognorm) : 0.0;
    return std::exp(power * std::log(x) - x * x / 2.0 - lognorm);
  };
  d.cdf = [a](double x) { return x <= 0.0 ? 0.0 : gamma_p(a, x * x / 2.0); };
  d.lo = 0.0;
  d.hi = 9.0 + 2.0 * std::sqrt(a);
  return d;
}

// --- report infrastructure ---------------------------------------------------

CheckStatus status_from_p(double p) {
  if (p > 0.01) return CheckStatus::pass;
  if (p > 0.001) return CheckStatus::flag;
  return CheckStatus::fail;
}

void Report::add_p_check(const std::string& name, const TestResult& r) {
  Check c;
  c.name = name;
  c.statistic = r.statistic;
  c.p_value = r.p_value;
  c.threshold = 0.01;
  c.status = status_from_p(r.p_value);
  checks.push_back(std::move(c));
}

void Report::add_bound_check(const std::string& name, double value, double bound, bool pass) {
  Check c;
  c.name = name;
  c.statistic = value;
  c.threshold = bound;
  c.status = pass ? CheckStatus::pass : CheckStatus::fail;
  checks.push_back(std::move(c));
}

bool Report::all_passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) return false;
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["params"] = params;
  j["diagnostics"] = diagnostics;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["statistic"] = c.statistic;
    if (c.p_value >= 0.0) jc["p_value"] = c.p_value;
    jc["threshold"] = c.threshold;
    jc["status"] = c.status == CheckStatus::pass ? "pass"
                   : c.status == CheckStatus::flag ? "flag"
                                                   : "fail";
    if (!c.note.empty()) jc["note"] = c.note;
    j["checks"].push_back(jc);
  }
  j["all_passed"] = all_passed();
  return j;
}

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body) {
  if (threads <= 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::int64_t>(threads, std::max<std::int64_t>(count, 1)));
  if (threads == 1 || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::int64_t i = w; i < count; i += threads) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rtg
