// Counter-based pseudo-random generator. Every draw is a pure function of
// (seed, counter), so streams can be forked and replayed exactly; the
// algorithm id is recorded in checkpoints so runs stay reproducible across
// rebuilds.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace gfnet {

class Rng {
 public:
  static constexpr const char* kAlgorithmId = "splitmix64-ctr-v1";

  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : seed_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ull))) {}

  // Independent child stream; drawing from the child does not advance *this.
  Rng fork(uint64_t tag) const { return Rng(seed_, tag + 1); }

  uint64_t next_u64() { return mix(seed_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

  double uniform() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  uint64_t uniform_int(uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * uniform();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  static uint64_t mix(uint64_t z) {  // splitmix64 finalizer
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  uint64_t seed_;
  uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gfnet
