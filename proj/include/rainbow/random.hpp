#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

namespace rainbow {

// Counter-based generator: draw i of a stream is splitmix64(key + (i+1)*golden).
// Substreams are derived by hashing a label into the parent key, so the value of a
// draw depends only on (seed, label path, draw index) and never on thread scheduling.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed, std::string_view stream = "root");

  RandomSource split(std::string_view label) const;
  RandomSource split(uint64_t index) const;

  uint64_t next();
  // uniform on [0, 1) with 53 random bits
  double uniform();
  // uniform on (0, 1], safe for log()
  double uniform_open0();
  // uniform on [0, bound), bound > 0, unbiased
  uint64_t below(uint64_t bound);
  bool bernoulli(double p);

  template <class It>
  void shuffle(It first, It last) {
    auto n = static_cast<uint64_t>(last - first);
    for (uint64_t i = n; i > 1; --i) {
      uint64_t j = below(i);
      using std::swap;
      swap(first[i - 1], first[j]);
    }
  }

  uint64_t key() const { return key_; }
  uint64_t draws() const { return counter_; }

 private:
  RandomSource(uint64_t key, uint64_t counter) : key_(key), counter_(counter) {}
  uint64_t key_;
  uint64_t counter_;
};

uint64_t splitmix64(uint64_t x);
uint64_t fnv1a(std::string_view s);
// Order-sensitive mix of two words, used for per-cell and per-trial seeds.
uint64_t hash_combine(uint64_t a, uint64_t b);

}  // namespace rainbow
