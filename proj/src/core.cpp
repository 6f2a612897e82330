#include "rainbow/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace rainbow {

ColoredGraph::ColoredGraph(int n, int kappa, std::vector<Edge> edges)
    : n_(n), kappa_(kappa), edges_(std::move(edges)), adj_(static_cast<size_t>(n) + 1) {
  index_.reserve(edges_.size() * 2);
  for (const Edge& e : edges_) {
    if (e.u < 1 || e.v < 1 || e.u > n_ || e.v > n_ || e.u == e.v) continue;
    if (!index_.emplace(pair_key(e.u, e.v), e.c).second) continue;
    adj_[e.u].push_back({e.v, e.c});
    adj_[e.v].push_back({e.u, e.c});
  }
}

std::optional<Color> ColoredGraph::color(Vertex u, Vertex v) const {
  auto it = index_.find(pair_key(u, v));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> ColoredGraph::canonical_edges() const {
  std::vector<Edge> out;
  out.reserve(index_.size());
  for (auto [key, c] : index_) {
    out.push_back({static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu), c});
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

bool ColoredGraph::operator==(const ColoredGraph& o) const {
  return n_ == o.n_ && kappa_ == o.kappa_ && canonical_edges() == o.canonical_edges();
}

ColoredDigraph::ColoredDigraph(int n, int kappa)
    : n_(n), kappa_(kappa), out_(static_cast<size_t>(n) + 1), in_(static_cast<size_t>(n) + 1) {}

ColoredDigraph::ColoredDigraph(int n, int kappa, std::vector<std::vector<Arc>> out_lists)
    : n_(n), kappa_(kappa), out_(std::move(out_lists)), in_(static_cast<size_t>(n) + 1) {
  if (out_.size() != static_cast<size_t>(n) + 1)
    throw std::invalid_argument("ColoredDigraph: expected n+1 out-lists");
  size_t total = 0;
  for (const auto& l : out_) total += l.size();
  index_.reserve(total);
  for (Vertex u = 1; u <= n_; ++u) {
    for (const Arc& a : out_[u]) {
      if (a.to < 1 || a.to > n_) throw std::invalid_argument("ColoredDigraph: vertex out of range");
      if (a.to == u) throw std::invalid_argument("ColoredDigraph: self-loop");
      if (!index_.emplace(arc_key(u, a.to), a.color).second)
        throw std::invalid_argument("ColoredDigraph: repeated arc");
      in_[a.to].push_back({u, a.color});
    }
  }
  if (!out_[0].empty()) throw std::invalid_argument("ColoredDigraph: vertex 0 used");
}

std::optional<Color> ColoredDigraph::arc_color(Vertex u, Vertex v) const {
  auto it = index_.find(arc_key(u, v));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VerificationReport verify_rainbow_hamilton(const ColoredGraph& g,
                                           const HamiltonCycleCertificate& cert) {
  const int n = g.n();
  if (static_cast<int>(cert.order.size()) != n)
    throw MalformedCertificate("certificate order has length " +
                               std::to_string(cert.order.size()) + ", expected " +
                               std::to_string(n));
  if (static_cast<int>(cert.colors.size()) != n)
    throw MalformedCertificate("certificate colors has length " +
                               std::to_string(cert.colors.size()) + ", expected " +
                               std::to_string(n));
  VerificationReport rep;
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  for (Vertex v : cert.order) {
    if (v < 1 || v > n) {
      rep.violations.push_back("vertex " + std::to_string(v) + " out of range");
    } else if (seen[v]++) {
      rep.violations.push_back("vertex " + std::to_string(v) + " repeated");
    }
  }
  for (int i = 0; i < n; ++i) {
    Vertex a = cert.order[i], b = cert.order[(i + 1) % n];
    auto c = g.color(a, b);
    if (!c) {
      rep.violations.push_back("missing edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    } else if (*c != cert.colors[i]) {
      rep.violations.push_back("color mismatch on (" + std::to_string(a) + "," +
                               std::to_string(b) + "): certificate " +
                               std::to_string(cert.colors[i]) + ", graph " + std::to_string(*c));
    }
  }
  std::vector<Color> sorted = cert.colors;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1] && (i == 1 || sorted[i - 2] != sorted[i]))
      rep.violations.push_back("repeated color " + std::to_string(sorted[i]));
  }
  return rep;
}

HamiltonCycleCertificate certificate_from_order(const ColoredGraph& g, std::vector<Vertex> order) {
  HamiltonCycleCertificate cert;
  const size_t n = order.size();
  cert.colors.resize(n);
  for (size_t i = 0; i < n; ++i) cert.colors[i] = g.color(order[i], order[(i + 1) % n]).value_or(0);
  cert.order = std::move(order);
  return cert;
}

std::vector<std::string> validate_colored_graph(const ColoredGraph& g) {
  std::vector<std::string> out;
  std::unordered_set<uint64_t> seen;
  for (const Edge& e : g.edges()) {
    std::string tag = "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
    if (e.u == e.v) out.push_back("self-loop " + tag);
    if (e.u < 1 || e.v < 1 || e.u > g.n() || e.v > g.n())
      out.push_back("vertex out of range " + tag);
    if (e.c < 1 || e.c > g.kappa())
      out.push_back("color out of range " + tag + " color " + std::to_string(e.c));
    if (e.u != e.v && !seen.insert(pair_key(e.u, e.v)).second) out.push_back("duplicate edge " + tag);
  }
  return out;
}

namespace {

bool next_data_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

ColoredGraph read_cgr(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_data_line(in, line, lineno)) throw ParseError(lineno + 1, "missing header");
  long long n = 0, kappa = 0, m = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> kappa >> m) || (hs >> extra)) throw ParseError(lineno, "expected 'n kappa m'");
  }
  if (n < 0 || kappa < 0 || m < 0 || n > 100000000 || kappa > 1000000000)
    throw ParseError(lineno, "header values out of range");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(m));
  std::unordered_set<uint64_t> seen;
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line, lineno))
      throw ParseError(lineno + 1, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    std::istringstream ls(line);
    long long u, v, c;
    std::string extra;
    if (!(ls >> u >> v >> c) || (ls >> extra)) throw ParseError(lineno, "expected 'u v c'");
    if (u < 1 || v > n || u >= v) throw ParseError(lineno, "need 1 <= u < v <= n");
    if (c < 1 || c > kappa) throw ParseError(lineno, "color out of range");
    if (!seen.insert(pair_key(static_cast<Vertex>(u), static_cast<Vertex>(v))).second)
      throw ParseError(lineno, "duplicate edge");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Color>(c)});
  }
  if (next_data_line(in, line, lineno)) throw ParseError(lineno, "trailing data after edges");
  return ColoredGraph(static_cast<int>(n), static_cast<int>(kappa), std::move(edges));
}

void write_cgr(std::ostream& out, const ColoredGraph& g) {
  auto edges = g.canonical_edges();
  out << g.n() << ' ' << g.kappa() << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) out << e.u << ' ' << e.v << ' ' << e.c << '\n';
}

ColoredGraph load_cgr(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_cgr(in);
}

void save_cgr(const std::string& path, const ColoredGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_cgr(out, g);
}

}  // namespace rainbow
