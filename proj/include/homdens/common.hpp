#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace homdens {

/// Thrown when an evaluation would exceed the configured operation budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an input exceeds a hard implementation bound.
struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cost ceiling for density evaluations, counted in weighted multiply-adds.
struct EvalBudget {
  double maxOps = 1e8;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// xoshiro256** seeded through splitmix64. The std:: distributions are not
/// bit-reproducible across library implementations, so all random draws in
/// this project go through this generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  std::uint64_t next() {
    auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform draw from [0, 1).
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  /// Uniform draw from [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (haveSpare_) {
      haveSpare_ = false;
      return spare_;
    }
    double u = 0;
    while (u == 0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    haveSpare_ = true;
    spare_ = r * std::sin(2.0 * M_PI * v);
    return r * std::cos(2.0 * M_PI * v);
  }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    return lo + int(next() % std::uint64_t(hi - lo + 1));
  }

 private:
  std::uint64_t state_[4];
  bool haveSpare_ = false;
  double spare_ = 0;
};

/// Mixes a campaign seed with an instance index into an independent stream
/// seed, so parallel instance evaluation is deterministic per instance.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x517cc1b727220a95ull * (index + 1));
  return splitmix64(s);
}

/// Compensated (Kahan) accumulator.
struct KahanSum {
  double sum = 0;
  double carry = 0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

}  // namespace homdens
