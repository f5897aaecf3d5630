#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

namespace mecrl {

// splitmix64 step; used to derive independent seeds from one master seed.
inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t base, uint64_t a = 0, uint64_t b = 0, uint64_t c = 0) {
  uint64_t s = base;
  uint64_t out = splitmix64(s);
  s ^= a;
  out ^= splitmix64(s);
  s ^= b;
  out ^= splitmix64(s);
  s ^= c;
  out ^= splitmix64(s);
  return out;
}

// FNV-1a, for naming seed streams.
inline uint64_t hash_stream(std::string_view name) {
  uint64_t h = 1469598103934665603ULL;
  for (char ch : name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return h;
}

// Deterministic random stream. The distributions are implemented explicitly
// (not via <random> distribution classes, whose algorithms are
// implementation-defined) so sequences are identical across toolchains and
// the exact number of engine draws per call is pinned down.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  static Rng derive(uint64_t seed, std::string_view stream, uint64_t a = 0, uint64_t b = 0) {
    return Rng(mix_seed(seed, hash_stream(stream), a, b));
  }

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1); one engine draw.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; consumes exactly two engine draws per call.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Poisson by Knuth's product-of-uniforms; exact for the moderate means used
  // here. lambda <= 0 returns 0 without consuming draws.
  int poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  // Uniform integer in [0, n); one engine draw.
  int uniform_int(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(gen_()) *
                             static_cast<unsigned __int128>(n)) >>
                            64);
  }

  // Fisher-Yates; uniform over all n! orderings.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = uniform_int(i + 1);
      std::swap(p[i], p[j]);
    }
    return p;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace mecrl
