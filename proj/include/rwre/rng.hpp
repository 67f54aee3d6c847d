#ifndef RWRE_RNG_HPP
#define RWRE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace rwre {

// Generator identifier recorded in run manifests.
inline constexpr const char* kRngName = "splitmix64-v1";

// SplitMix64: fast 64-bit generator with a trivially splittable seed space.
// Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Derives the seed of sub-stream `index` from a master seed. Replica i of a
// Monte Carlo run always uses stream i, regardless of how replicas are
// scheduled across threads.
inline std::uint64_t split_stream(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master ^ (0x6a09e667f3bcc909ULL + index * 0x3c6ef372fe94f82bULL));
  g();
  return g();
}

// Convenience wrapper bundling the uniform/normal/exponential draws used
// throughout the toolkit. Deterministic given the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on (0,1); never returns 0 so logs are safe.
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  // Marsaglia polar method; one spare value cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  SplitMix64& bits() { return gen_; }

 private:
  SplitMix64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rwre

#endif  // RWRE_RNG_HPP
