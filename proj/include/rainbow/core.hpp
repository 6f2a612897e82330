#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rainbow {

// 1-based dense ids throughout; 0 means "none".
using Vertex = int32_t;
using Color = int32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Color c = 0;
  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  Vertex to;
  Color color;
};

inline uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}

inline uint64_t arc_key(Vertex u, Vertex v) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class MalformedCertificate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Undirected simple graph with one color per edge. Construction does not throw on
// invariant violations; validate_colored_graph reports them. Adjacency lists keep
// the order in which edges were supplied.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  ColoredGraph(int n, int kappa, std::vector<Edge> edges = {});

  int n() const { return n_; }
  int kappa() const { return kappa_; }
  const std::vector<Edge>& edges() const { return edges_; }
  size_t edge_count() const { return edges_.size(); }

  std::span<const Neighbor> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  std::optional<Color> color(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return index_.count(pair_key(u, v)) > 0; }

  // edges sorted by (min endpoint, max endpoint), each with u < v
  std::vector<Edge> canonical_edges() const;
  bool operator==(const ColoredGraph& o) const;

 private:
  int n_ = 0;
  int kappa_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adj_;
  std::unordered_map<uint64_t, Color> index_;
};

struct Arc {
  Vertex to;
  Color color;
};

// Simple digraph with colored arcs. Out-lists keep the supplied order (the sampler
// supplies a per-vertex random permutation). Throws std::invalid_argument on loops,
// repeated ordered pairs, or out-of-range ids.
class ColoredDigraph {
 public:
  ColoredDigraph() = default;
  ColoredDigraph(int n, int kappa);
  ColoredDigraph(int n, int kappa, std::vector<std::vector<Arc>> out_lists);

  int n() const { return n_; }
  int kappa() const { return kappa_; }
  std::span<const Arc> out(Vertex u) const { return out_[u]; }
  std::span<const Arc> in(Vertex v) const { return in_[v]; }
  int out_degree(Vertex u) const { return static_cast<int>(out_[u].size()); }
  std::optional<Color> arc_color(Vertex u, Vertex v) const;
  bool has_arc(Vertex u, Vertex v) const { return index_.count(arc_key(u, v)) > 0; }
  size_t arc_count() const { return index_.size(); }

 private:
  int n_ = 0;
  int kappa_ = 0;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::unordered_map<uint64_t, Color> index_;
};

// Colors consumed so far by one pipeline run; shared by every stage.
class UsedColors {
 public:
  UsedColors() = default;
  explicit UsedColors(int kappa) : flag_(static_cast<size_t>(kappa) + 1, 0) {}
  bool contains(Color c) const { return flag_[c] != 0; }
  void add(Color c) {
    if (flag_[c]) throw InternalInconsistency("color " + std::to_string(c) + " used twice");
    flag_[c] = 1;
    ++count_;
  }
  void remove(Color c) {
    if (!flag_[c]) throw InternalInconsistency("color " + std::to_string(c) + " released but unused");
    flag_[c] = 0;
    --count_;
  }
  size_t size() const { return count_; }

 private:
  std::vector<uint8_t> flag_;
  size_t count_ = 0;
};

struct HamiltonCycleCertificate {
  std::vector<Vertex> order;
  std::vector<Color> colors;  // colors[i] is the color of {order[i], order[i+1 mod n]}
};

struct VerificationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

VerificationReport verify_rainbow_hamilton(const ColoredGraph& g,
                                           const HamiltonCycleCertificate& cert);

// Builds a certificate for a vertex order by reading colors off g. Missing edges get color 0.
HamiltonCycleCertificate certificate_from_order(const ColoredGraph& g, std::vector<Vertex> order);

std::vector<std::string> validate_colored_graph(const ColoredGraph& g);

ColoredGraph read_cgr(std::istream& in);
void write_cgr(std::ostream& out, const ColoredGraph& g);
ColoredGraph load_cgr(const std::string& path);
void save_cgr(const std::string& path, const ColoredGraph& g);

}  // namespace rainbow
