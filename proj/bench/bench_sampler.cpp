// Serial vs OpenMP layer sampling, plus a check that both give the same arcs.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "rainbow/params.hpp"
#include "rainbow/random.hpp"
#include "rainbow/sampler.hpp"

using namespace rainbow;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool same(const std::vector<std::vector<Arc>>& a, const std::vector<std::vector<Arc>>& b) {
  if (a.size() != b.size()) return false;
  for (size_t u = 0; u < a.size(); ++u) {
    if (a[u].size() != b[u].size()) return false;
    for (size_t i = 0; i < a[u].size(); ++i)
      if (a[u][i].to != b[u][i].to || a[u][i].color != b[u][i].color) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("%8s %10s %12s %12s %8s %s\n", "n", "avg_deg", "serial_ms", "openmp_ms", "speedup", "identical");
  for (int n : {2000, 10000, 50000, 200000}) {
    const double deg = 8.0 * std::log(static_cast<double>(n));
    const double p = deg / n;
    const RandomSource rng = RandomSource(42, "bench").split(static_cast<uint64_t>(n));
    std::vector<std::vector<Arc>> a, b;
    const double ts = best_of(reps, [&] { a = sample_layer_arcs(n, 2 * n, p, rng, Parallelism::Serial); });
    const double tp = best_of(reps, [&] { b = sample_layer_arcs(n, 2 * n, p, rng, Parallelism::OpenMP); });
    std::printf("%8d %10.1f %12.2f %12.2f %8.2f %s\n", n, deg, ts * 1e3, tp * 1e3, ts / tp, same(a, b) ? "yes" : "NO");
    if (!same(a, b)) return 1;
  }
  const ParamSet ps = derive_parameters(20000, 0.3, 0.3);
  const double ts = best_of(reps, [&] { sample_layered(ps, RandomSource(7), Parallelism::Serial); });
  const double tp = best_of(reps, [&] { sample_layered(ps, RandomSource(7), Parallelism::OpenMP); });
  std::printf("full layered sample n=20000: serial %.2f ms, openmp %.2f ms\n", ts * 1e3, tp * 1e3);
  return 0;
}
