#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/exposure.hpp"
#include "rainbow/random.hpp"
#include "rainbow/sampler.hpp"
#include "rainbow/segments.hpp"

namespace rainbow {

// One generated Γ arc. out == true: generated at `owner` as an out-arc toward
// `other`; otherwise as an in-arc from `other`. x -> y is the underlying D1 arc
// when the Γ graph comes from a sample (0 for model instances).
struct Generation {
  int owner;
  bool out;
  int other;
  Color color;
  Vertex x = 0;
  Vertex y = 0;

  int from() const { return out ? owner : other; }
  int to() const { return out ? other : owner; }
};

struct GammaGraph {
  int r = 0;
  std::vector<Generation> gens;
  std::vector<int> seg_ids;       // segment id per Γ vertex (sample-built only)
  std::vector<uint8_t> removed;   // per generation: F2-type removal (model only)
  size_t distinct_arcs() const;
  size_t duplicate_arcs() const;  // |F1|
  std::vector<int> out_degree() const;  // δ+
  std::vector<int> in_degree() const;   // δ-
};

class DegenerateInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Γ from the final segment system: out-generations of w_k are the D1 arcs from
// b_k into other A endpoints, in-generations the D1 arcs from a_k into other B
// endpoints. Only colors are exposed here; locations are exposed by prune_conflicts.
GammaGraph build_gamma(const SegmentSystem& sys, const LayeredSample& s, ExposureLedger& ledger);

// d-in/d-out model with given degrees, uniform heads/tails and uniform colors in [1, c1].
GammaGraph sample_gamma_model(int r, const std::vector<int>& delta_out, const std::vector<int>& delta_in, int c1,
                              RandomSource rng);

struct Selection {
  // per Γ vertex, generation indices of the 3 chosen out- and in-arcs
  std::vector<std::array<int, 3>> out, in;
};

struct SelectionFailure {
  // W-vertices: 2k is w_k^+, 2k+1 is w_k^-
  std::vector<int> witness;
  int neighborhood = 0;
};

std::variant<Selection, SelectionFailure> select_rainbow_3in3out(const GammaGraph& g);

// Colors adjacent to a set of W-vertices.
int hall_neighborhood(const GammaGraph& g, const std::vector<int>& w_vertices);

struct LinkArc {
  int from, to;
  Color color;
  int generation;
};

struct Pruned {
  std::vector<LinkArc> arcs;      // surviving selected arcs, deduplicated by (from,to)
  std::vector<int> out_kept, in_kept;
  int dropped = 0;
};

struct PruneFailure {
  int vertex;
  bool out_side;
};

// Sample-built Γ: a selected generation survives iff its pair is a G1 edge carrying
// the generation's color, i.e. no reverse D1° arc took the pair from it.
std::variant<Pruned, PruneFailure> prune_conflicts(const GammaGraph& g, const Selection& sel, const LayeredSample& s,
                                                   ExposureLedger& ledger);

// Model Γ: a selected generation is dropped when its arc is generated again by a
// non-selected generation (E3) or was removed with probability f2 (F2).
std::variant<Pruned, PruneFailure> prune_conflicts_model(const GammaGraph& g, const Selection& sel, double f2,
                                                          RandomSource rng);

struct HamiltonOptions {
  int exact_limit = 24;
  int restarts = 20;
  long long budget = -1;  // total extension attempts; default 50 r^2
};

struct NotFound {
  bool proven;  // exact mode proved there is no cycle
};

// Directed Hamilton cycle on vertices 0..r-1 given out-lists.
std::variant<std::vector<int>, NotFound> hamilton_digraph(const std::vector<std::vector<int>>& out,
                                                          const HamiltonOptions& opt = {},
                                                          RandomSource rng = RandomSource(0, "hamilton"));
bool is_hamilton_cycle(const std::vector<std::vector<int>>& out, const std::vector<int>& cycle);

struct LinkResult {
  std::vector<int> cycle;       // Γ vertex order
  std::vector<LinkArc> links;   // links[i] joins cycle[i] to cycle[i+1 mod r]
};

// Concatenates segments along the link cycle, each traversed A -> B, and verifies
// the result against g. Throws InternalInconsistency when it does not verify.
HamiltonCycleCertificate stitch_cycle(const SegmentSystem& sys, const std::vector<int>& seg_ids,
                                      const LinkResult& link, const ColoredGraph& g);

// sample of the d-in/d-out digraph as plain out-lists (colors ignored)
std::vector<std::vector<int>> d_in_d_out(int r, int d, RandomSource rng);

}  // namespace rainbow
