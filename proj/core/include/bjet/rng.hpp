#ifndef BJET_RNG_HPP_
#define BJET_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace bjet {

// Self-contained counter-based RNG. std::uniform_real_distribution is
// implementation-defined, so sampling goes through these helpers to keep
// results bit-reproducible for a fixed seed.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Mixes a stream id (e.g. replicate/stratum index) into a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0xd1b54a32d192ed03ULL)) {}

  std::uint64_t next_u64() {
    state_ = splitmix64(state_);
    return state_;
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [a, b)
  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  // standard complex Gaussian via Box-Muller (E|g|^2 = 2)
  void next_gauss_pair(double& g0, double& g1) {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    g0 = r * std::cos(6.283185307179586476925286766559 * u2);
    g1 = r * std::sin(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace bjet

#endif  // BJET_RNG_HPP_
