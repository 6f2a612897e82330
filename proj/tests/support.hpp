#pragma once

#include <array>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/params.hpp"
#include "rainbow/random.hpp"
#include "rainbow/sampler.hpp"

namespace testing {

using namespace rainbow;

inline ColoredGraph random_colored_graph(int n, int kappa, double p, RandomSource rng) {
  std::vector<Edge> e;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (rng.bernoulli(p)) e.push_back({u, v, static_cast<Color>(1 + rng.below(static_cast<uint64_t>(kappa)))});
  return ColoredGraph(n, kappa, e);
}

inline ColoredDigraph digraph(int n, int kappa, const std::vector<std::array<int, 3>>& arcs) {
  std::vector<std::vector<Arc>> out(static_cast<size_t>(n) + 1);
  for (auto [u, v, c] : arcs) out[u].push_back({v, c});
  return ColoredDigraph(n, kappa, out);
}

// A sample on which every stage goes through: D2 is the directed cycle 1 -> 2 ->
// ... -> n -> 1, D3 holds its reversal, and every other pair is a D1 arc (60%,
// random orientation) or a D3 arc. With n not a multiple of L the tail of the long
// path is left over and has to be absorbed through G3.
inline LayeredSample cycle_backbone_sample(int n, int L, uint64_t seed) {
  const int pairs = n * (n - 3) / 2;
  ParamSet ps = derive_parameters(n, 0.3, 0.3, L);
  ps = apply_override(ps, {std::nullopt, 2 * pairs + 2 * n, std::array<int, 3>{pairs, n, pairs + n}});
  RandomSource rng(seed, "backbone");
  std::vector<std::vector<Arc>> d1(static_cast<size_t>(n) + 1), d2(d1), d3(d1);
  Color c1 = ps.class_begin(1), c2 = ps.class_begin(2), c3 = ps.class_begin(3);
  auto next = [n](Vertex v) { return v == n ? 1 : v + 1; };
  for (Vertex v = 1; v <= n; ++v) {
    d2[v].push_back({next(v), c2++});
    d3[next(v)].push_back({v, c3++});
  }
  for (Vertex v = 1; v <= n; ++v)
    for (Vertex w = v + 1; w <= n; ++w) {
      if (w == next(v) || v == next(w)) continue;
      const double x = rng.uniform();
      if (x < 0.3) d1[v].push_back({w, c1++});
      else if (x < 0.6) d1[w].push_back({v, c1++});
      else if (x < 0.8) d3[v].push_back({w, c3++});
      else d3[w].push_back({v, c3++});
    }
  // the sampler hands out permuted lists with uniform colors; do the same here
  std::vector<Color> perm;
  for (auto& l : d1)
    for (auto& a : l) perm.push_back(a.color);
  rng.shuffle(perm.begin(), perm.end());
  size_t i = 0;
  for (auto* layer : {&d1, &d3})
    for (auto& l : *layer) rng.shuffle(l.begin(), l.end());
  for (auto& l : d1)
    for (auto& a : l) a.color = perm[i++];
  std::array<ColoredDigraph, 3> full{ColoredDigraph(n, ps.kappa, d1), ColoredDigraph(n, ps.kappa, d2),
                                     ColoredDigraph(n, ps.kappa, d3)};
  auto coins = draw_coins(full, RandomSource(seed, "coins"));
  return sample_from_layers(ps, std::move(full), std::move(coins));
}

}  // namespace testing
