#pragma once

#include <cstdint>
#include <random>

namespace isingq {

// mt19937_64's output sequence is fixed by the standard; the distributions in
// <random> are not, so the conversions below are done by hand.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // uniform on [0,1) with 53 random bits
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, k), rejection sampling
  uint64_t below(uint64_t k) {
    const uint64_t lim = UINT64_MAX - UINT64_MAX % k;
    uint64_t v;
    do v = eng_();
    while (v >= lim);
    return v % k;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace isingq
