#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/exposure.hpp"
#include "rainbow/random.hpp"
#include "rainbow/sampler.hpp"

namespace rainbow {

struct S0Sets {
  std::vector<Vertex> s01, s02, s03, s0;
  std::array<double, 3> thresholds{};
};

// (ε1θ1/20) ln n, (1/20) ln n, (ε3θ3/20) ln n
std::array<double, 3> s0_thresholds(const ParamSet& ps);

S0Sets compute_S0(const LayeredSample& s, ExposureLedger& ledger);

struct GrowResult {
  std::vector<Vertex> absorbed;                // in absorption order
  std::vector<uint8_t> in_set;                 // size n+1
  std::array<std::vector<int>, 3> toward;      // D_i arcs from v into the final set
};

// Worklist fixed point over the three class digraphs. With order == nullptr the
// smallest eligible id is absorbed first; otherwise a uniformly random eligible vertex.
GrowResult grow_set(const std::array<const ColoredDigraph*, 3>& d, const std::vector<Vertex>& seed,
                    int threshold, RandomSource* order = nullptr);

struct DangerousSets {
  std::vector<Vertex> s01, s02, s03, s0;
  std::vector<Vertex> absorbed;
  std::vector<Vertex> s;  // sorted
  int threshold = 4;
  std::vector<Vertex> s00;
  std::vector<uint8_t> in_s, in_s00;
  std::array<std::vector<int>, 3> out_degree;  // d_i^+(v)
  std::array<std::vector<int>, 3> residual;    // d_i^*(v) = d_i^+(v) - arcs into S

  bool contains(Vertex v) const { return in_s[v] != 0; }
};

DangerousSets grow_S(const LayeredSample& s, const S0Sets& s0, int threshold, ExposureLedger& ledger);

double s00_threshold(int n);
std::vector<Vertex> compute_S00(const ColoredGraph& g2);

// Smallest graph distance between two distinct members of A, nullopt for "infinite".
// With max_depth >= 0 only distances up to max_depth are detected.
std::optional<int> min_pairwise_distance(const ColoredGraph& g, const std::vector<Vertex>& a,
                                         int max_depth = -1);

// Number of distinct ordered pairs (u,v), u,v in the set, that are arcs of some D_i.
size_t arcs_spanned(const LayeredSample& s, const std::vector<uint8_t>& in_set);
// max over v of |N_G(v) ∩ set|
int max_neighbors_in(const ColoredGraph& g, const std::vector<uint8_t>& in_set);

}  // namespace rainbow
