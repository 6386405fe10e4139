#pragma once

#include <cstdint>
#include <functional>

namespace blv {

// Worker count: BLV_THREADS if set (clamped to >= 1), else hardware concurrency.
int thread_cap();

// Runs fn(i) for each i in [0, n). Work is split across threads; determinism
// is achieved by having fn(i) write only to its own output slot i.
void parallel_for(int n, const std::function<void(int)>& fn);

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic RNG with a hand-rolled Gaussian so results do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Stream for one trial of a batch: decorrelates (seed, index) pairs so
  // per-trial results are independent of execution order and thread count.
  static Rng for_trial(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64(state_);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., n-1}; unbiased via rejection.
  int uniform_int(int n);

  // Standard Gaussian via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace blv
