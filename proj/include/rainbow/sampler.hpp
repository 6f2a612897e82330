#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/params.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

// One shared coin per unordered pair whose highest-priority layer holds both arcs.
// bit = 0 selects the arc lo->hi, bit = 1 selects hi->lo.
struct Coin {
  Vertex lo;
  Vertex hi;
  uint8_t layer;  // 1..3
  uint8_t bit;
};

struct LayeredSample {
  ParamSet params;
  std::array<ColoredDigraph, 3> full;   // D_i°
  std::array<ColoredDigraph, 3> cls;    // D_i: arcs of D_i° colored in C_i
  std::array<ColoredGraph, 3> g;        // G_i
  std::vector<Coin> coins;              // sorted by (lo, hi)
  double q2 = 0;

  int n() const { return params.n; }
  // coin bit for the pair, or -1 when no coin was drawn for it
  int coin(Vertex u, Vertex v) const;
  // true when the coin for {u,v} selects the arc (u,v)
  bool coin_selects(Vertex u, Vertex v) const;
};

enum class Parallelism { Serial, OpenMP };

// Kernel for one layer: vertex u's out-list comes from substream (layer, u) by
// geometric skipping over the n-1 candidate heads, then is permuted. The serial and
// OpenMP variants produce identical lists.
std::vector<std::vector<Arc>> sample_layer_arcs(int n, int kappa, double p, const RandomSource& layer_rng,
                                                Parallelism par);

LayeredSample sample_layered(const ParamSet& params, const RandomSource& rng,
                             Parallelism par = Parallelism::Serial);

// Builds a sample from explicit layers (hand-made instances and .lay files).
// Every pair that needs a coin must have one; see draw_coins.
LayeredSample sample_from_layers(const ParamSet& params, std::array<ColoredDigraph, 3> full,
                                 std::vector<Coin> coins);
std::vector<Coin> draw_coins(const std::array<ColoredDigraph, 3>& full, const RandomSource& coin_rng);

ColoredGraph merge_to_colored_graph(const LayeredSample& s);

struct ClassSplit {
  std::array<ColoredDigraph, 3> d;
  std::array<ColoredGraph, 3> g;
};

ClassSplit split_color_classes(const ParamSet& params, const std::array<ColoredDigraph, 3>& full,
                               const std::vector<Coin>& coins);

// Bare parameter set for samples read from disk: only n, kappa and class sizes.
ParamSet bare_params(int n, int kappa, std::array<int, 3> class_size);

void write_lay(std::ostream& out, const LayeredSample& s);
LayeredSample read_lay(std::istream& in);

}  // namespace rainbow
