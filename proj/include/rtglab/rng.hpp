#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace rtg {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic RNG stream. Every randomized operation in the library takes
// one of these explicitly; there is no hidden global state. Distributions are
// implemented here rather than via <random> distribution classes so a given
// (seed, stream) pair replays bit-identically.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Stream `id` derived from `master`. Documented scheme: two rounds of
  // splitmix64 over (master, id) give the engine seed.
  static Rng stream(std::uint64_t master, std::uint64_t id) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= id * 0x9e3779b97f4a7c15ull;
    std::uint64_t b = splitmix64(s);
    return Rng(a ^ (b + 0x632be59bd9b4e019ull));
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on (0,1); never returns 0 or 1.
  double uniform() {
    double u = (eng_() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform on {0,...,n-1} by rejection on the top bits.
  std::int64_t uniform_int(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    std::uint64_t un = static_cast<std::uint64_t>(n);
    std::uint64_t limit = ~0ull - ~0ull % un;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % un);
  }

  bool bernoulli(double p) { return uniform() < p; }

  double exponential(double rate = 1.0) { return -std::log(uniform()) / rate; }

  // Marsaglia polar method, one value cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Exact binomial via CDF inversion; cost O(np) expected, fine for the
  // near-critical regimes used here (np = O(1)).
  std::int64_t binomial(std::int64_t n, double p) {
    if (n < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("binomial: bad arguments");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    if (p > 0.5) return n - binomial(n, 1.0 - p);
    double q = 1.0 - p;
    double pk = std::pow(q, static_cast<double>(n));  // P(X = 0)
    double u = uniform();
    std::int64_t k = 0;
    double cdf = pk;
    while (u > cdf && k < n) {
      pk *= p * static_cast<double>(n - k) / (q * static_cast<double>(k + 1));
      ++k;
      cdf += pk;
      if (pk <= 0.0) break;  // underflow guard in the far tail
    }
    return k;
  }

  std::int64_t poisson(double mu) {
    if (mu < 0.0) throw std::invalid_argument("poisson: negative mean");
    if (mu == 0.0) return 0;
    if (mu < 30.0) {
      double L = std::exp(-mu);
      std::int64_t k = 0;
      double prod = uniform();
      while (prod > L) {
        ++k;
        prod *= uniform();
      }
      return k;
    }
    // split recursively for large means
    std::int64_t half = poisson(mu / 2);
    return half + poisson(mu - mu / 2);
  }

  // Gamma(shape a, rate r): needed for half-integer shapes only, but the
  // Marsaglia-Tsang method covers the general case.
  double gamma(double a, double rate) {
    if (a <= 0.0 || rate <= 0.0) throw std::invalid_argument("gamma: bad arguments");
    if (a < 1.0) {
      double u = uniform();
      return gamma(a + 1.0, rate) * std::pow(u, 1.0 / a);
    }
    double d = a - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
  }

  std::vector<double> dirichlet_uniform(std::size_t k) {
    std::vector<double> y(k);
    double sum = 0.0;
    for (auto& v : y) {
      v = exponential();
      sum += v;
    }
    for (auto& v : y) v /= sum;
    return y;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(static_cast<std::int64_t>(i)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rtg
