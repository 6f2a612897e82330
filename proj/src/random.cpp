#include "rainbow/random.hpp"

namespace rainbow {

namespace {
constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

uint64_t splitmix64(uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t hash_combine(uint64_t a, uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

RandomSource::RandomSource(uint64_t seed, std::string_view stream)
    : key_(hash_combine(splitmix64(seed), fnv1a(stream))), counter_(0) {}

RandomSource RandomSource::split(std::string_view label) const {
  return RandomSource(hash_combine(key_, fnv1a(label)), 0);
}

RandomSource RandomSource::split(uint64_t index) const {
  return RandomSource(hash_combine(key_ ^ 0xa0761d6478bd642fULL, index), 0);
}

uint64_t RandomSource::next() {
  ++counter_;
  return splitmix64(key_ + counter_ * kGolden);
}

double RandomSource::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform_open0() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

uint64_t RandomSource::below(uint64_t bound) {
  // Lemire's multiply-shift with rejection
  uint64_t x = next();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<uint64_t>(m);
  if (low < bound) {
    uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = next();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

bool RandomSource::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform() < p;
}

}  // namespace rainbow
