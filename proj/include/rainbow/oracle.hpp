#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

struct ProvenAbsent {};
struct BudgetExhausted {};

using OracleResult = std::variant<HamiltonCycleCertificate, ProvenAbsent, BudgetExhausted>;

// Backtracking over cyclic orders starting at vertex 1, pruning on used colors and
// on unvisited vertices that can no longer get two usable edges. budget counts
// search nodes; negative means unlimited.
OracleResult exact_rainbow_hamilton(const ColoredGraph& g, long long budget = -1);

// Reference: every permutation with order[0] = 1. Only for n <= 9.
OracleResult brute_force_rainbow_hamilton(const ColoredGraph& g);

using Triple = std::array<int, 3>;  // sorted ascending

struct Hypergraph3 {
  int N = 0;
  std::vector<Triple> edges;  // sorted, unique
  bool has(Triple t) const;
};

Hypergraph3 make_hypergraph(int N, std::vector<Triple> triples);
Hypergraph3 graph_to_hypergraph(const ColoredGraph& g);

struct NotRepresentable {
  Triple triple;
  std::string reason;
};

std::variant<ColoredGraph, NotRepresentable> hypergraph_to_graph(const Hypergraph3& h, int n, int kappa);

class ParityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ok iff perm is a permutation of 1..N and every {v_{2i-1}, v_{2i}, v_{2i+1}}
// (indices cyclic) is a hyperedge. Odd N throws ParityError.
std::vector<std::string> loose_hamilton_check(const Hypergraph3& h, const std::vector<int>& perm);

using LooseResult = std::variant<std::vector<int>, ProvenAbsent, BudgetExhausted>;
LooseResult exact_loose_hamilton(const Hypergraph3& h, long long budget = -1);

// Reads a loose cycle of the image of a colored graph back as a vertex order:
// graph vertices sit at the positions where the cycle alternates.
std::vector<Vertex> project_loose_cycle(const std::vector<int>& perm, int n);

void write_h3(std::ostream& out, const Hypergraph3& h);
Hypergraph3 read_h3(std::istream& in);

}  // namespace rainbow
