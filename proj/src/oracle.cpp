#include "rainbow/oracle.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace rainbow {

namespace {

struct RainbowSearch {
  const ColoredGraph& g;
  int n;
  long long budget;
  bool exhausted = false;
  std::vector<uint8_t> visited;
  std::vector<uint8_t> color_used;
  std::vector<Vertex> path;
  std::vector<Color> colors;

  bool prune() const {
    const Vertex end = path.back();
    const int remaining_edges = n - static_cast<int>(path.size()) + 1;
    std::set<Color> free_colors;
    for (Vertex u = 1; u <= n; ++u) {
      if (visited[u]) continue;
      int usable = 0;
      for (const Neighbor& nb : g.neighbors(u)) {
        if (color_used[nb.color]) continue;
        if (!visited[nb.to] || nb.to == end || nb.to == 1) {
          ++usable;
          free_colors.insert(nb.color);
        }
      }
      if (usable < 2) return true;
    }
    for (const Neighbor& nb : g.neighbors(end))
      if (!color_used[nb.color] && (!visited[nb.to] || nb.to == 1)) free_colors.insert(nb.color);
    return static_cast<int>(free_colors.size()) < remaining_edges;
  }

  bool dfs() {
    if (budget >= 0 && budget-- == 0) {
      exhausted = true;
      return false;
    }
    const Vertex end = path.back();
    if (static_cast<int>(path.size()) == n) {
      auto c = g.color(end, 1);
      if (c && !color_used[*c]) {
        colors.push_back(*c);
        return true;
      }
      return false;
    }
    if (path.size() > 1 && prune()) return false;
    for (const Neighbor& nb : g.neighbors(end)) {
      if (visited[nb.to] || color_used[nb.color]) continue;
      visited[nb.to] = 1;
      color_used[nb.color] = 1;
      path.push_back(nb.to);
      colors.push_back(nb.color);
      if (dfs()) return true;
      if (exhausted) return false;
      colors.pop_back();
      path.pop_back();
      color_used[nb.color] = 0;
      visited[nb.to] = 0;
    }
    return false;
  }
};

bool usable_graph(const ColoredGraph& g) {
  for (const Edge& e : g.edges())
    if (e.c < 1 || e.c > g.kappa()) return false;
  return true;
}

}  // namespace

OracleResult exact_rainbow_hamilton(const ColoredGraph& g, long long budget) {
  const int n = g.n();
  if (n < 3 || !usable_graph(g)) return ProvenAbsent{};
  RainbowSearch s{g, n, budget, false, {}, {}, {}, {}};
  s.visited.assign(static_cast<size_t>(n) + 1, 0);
  s.color_used.assign(static_cast<size_t>(g.kappa()) + 1, 0);
  s.path.push_back(1);
  s.visited[1] = 1;
  if (s.dfs()) return HamiltonCycleCertificate{s.path, s.colors};
  if (s.exhausted) return BudgetExhausted{};
  return ProvenAbsent{};
}

OracleResult brute_force_rainbow_hamilton(const ColoredGraph& g) {
  const int n = g.n();
  if (n < 3) return ProvenAbsent{};
  if (n > 9) throw std::invalid_argument("brute force limited to n <= 9");
  std::vector<Vertex> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  do {
    HamiltonCycleCertificate cert = certificate_from_order(g, order);
    if (verify_rainbow_hamilton(g, cert).ok()) return cert;
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return ProvenAbsent{};
}

bool Hypergraph3::has(Triple t) const {
  std::sort(t.begin(), t.end());
  return std::binary_search(edges.begin(), edges.end(), t);
}

Hypergraph3 make_hypergraph(int N, std::vector<Triple> triples) {
  for (auto& t : triples) {
    std::sort(t.begin(), t.end());
    if (t[0] < 1 || t[2] > N || t[0] == t[1] || t[1] == t[2])
      throw std::invalid_argument("triple must hold 3 distinct vertices in 1..N");
  }
  std::sort(triples.begin(), triples.end());
  if (std::adjacent_find(triples.begin(), triples.end()) != triples.end())
    throw std::invalid_argument("duplicate triple");
  return Hypergraph3{N, std::move(triples)};
}

Hypergraph3 graph_to_hypergraph(const ColoredGraph& g) {
  std::vector<Triple> t;
  for (const Edge& e : g.canonical_edges()) t.push_back({e.u, e.v, g.n() + e.c});
  return make_hypergraph(g.n() + g.kappa(), std::move(t));
}

std::variant<ColoredGraph, NotRepresentable> hypergraph_to_graph(const Hypergraph3& h, int n, int kappa) {
  if (h.N != n + kappa) return NotRepresentable{{0, 0, 0}, "N differs from n + kappa"};
  std::vector<Edge> edges;
  std::set<uint64_t> pairs;
  for (const Triple& t : h.edges) {
    // sorted, so a representable triple is (low, low, high)
    if (!(t[1] <= n && t[2] > n)) return NotRepresentable{t, "needs exactly two graph vertices and one color vertex"};
    if (!pairs.insert(pair_key(t[0], t[1])).second) return NotRepresentable{t, "graph pair repeats"};
    edges.push_back({t[0], t[1], t[2] - n});
  }
  return ColoredGraph(n, kappa, std::move(edges));
}

std::vector<std::string> loose_hamilton_check(const Hypergraph3& h, const std::vector<int>& perm) {
  if (h.N % 2) throw ParityError("loose Hamilton cycle needs an even vertex count, N = " + std::to_string(h.N));
  std::vector<std::string> out;
  if (static_cast<int>(perm.size()) != h.N) {
    out.push_back("permutation has " + std::to_string(perm.size()) + " entries, expected " + std::to_string(h.N));
    return out;
  }
  std::vector<uint8_t> seen(static_cast<size_t>(h.N) + 1, 0);
  for (int v : perm) {
    if (v < 1 || v > h.N || seen[v]++) {
      out.push_back("not a permutation at vertex " + std::to_string(v));
      return out;
    }
  }
  for (int i = 0; i < h.N / 2; ++i) {
    Triple t{perm[2 * i], perm[2 * i + 1], perm[(2 * i + 2) % h.N]};
    if (!h.has(t))
      out.push_back("triple " + std::to_string(i + 1) + " {" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                    std::to_string(t[2]) + "} missing");
  }
  return out;
}

namespace {

struct LooseSearch {
  const Hypergraph3& h;
  std::vector<std::vector<int>> incident;
  std::vector<uint8_t> used;
  std::vector<int> perm;
  long long budget;
  bool exhausted = false;

  bool extend(int shared) {
    if (budget >= 0 && budget-- == 0) {
      exhausted = true;
      return false;
    }
    const int placed = static_cast<int>(perm.size());
    if (placed == h.N - 1) {
      // the closing triple {shared, last, perm[0]}
      for (int v = 1; v <= h.N; ++v)
        if (!used[v] && h.has({shared, v, perm[0]})) {
          perm.push_back(v);
          return true;
        }
      return false;
    }
    for (int ti : incident[shared]) {
      const Triple& t = h.edges[ti];
      int a = 0, b = 0;
      for (int x : t)
        if (x != shared) (a ? b : a) = x;
      if (used[a] || used[b]) continue;
      for (int flip = 0; flip < 2; ++flip) {
        const int mid = flip ? b : a, next = flip ? a : b;
        used[mid] = used[next] = 1;
        perm.push_back(mid);
        perm.push_back(next);
        if (extend(next)) return true;
        perm.pop_back();
        perm.pop_back();
        used[mid] = used[next] = 0;
        if (exhausted) return false;
      }
    }
    return false;
  }
};

}  // namespace

LooseResult exact_loose_hamilton(const Hypergraph3& h, long long budget) {
  if (h.N % 2) throw ParityError("loose Hamilton cycle needs an even vertex count, N = " + std::to_string(h.N));
  if (h.N < 4) return ProvenAbsent{};
  LooseSearch s{h, std::vector<std::vector<int>>(static_cast<size_t>(h.N) + 1), {}, {}, budget};
  for (int i = 0; i < static_cast<int>(h.edges.size()); ++i)
    for (int v : h.edges[i]) s.incident[v].push_back(i);
  s.used.assign(static_cast<size_t>(h.N) + 1, 0);
  // vertex 1 either sits at a shared position (rotate it to the front) or in the
  // middle of some triple (rotate that triple's first vertex to the front)
  std::vector<std::array<int, 3>> starts;
  starts.push_back({1, 0, 0});
  for (int ti : s.incident[1]) {
    const Triple& t = h.edges[ti];
    int a = 0, b = 0;
    for (int x : t)
      if (x != 1) (a ? b : a) = x;
    starts.push_back({a, 1, b});
    starts.push_back({b, 1, a});
  }
  for (const auto& st : starts) {
    s.perm.clear();
    std::fill(s.used.begin(), s.used.end(), 0);
    int shared;
    if (st[1] == 0) {
      s.perm = {1};
      s.used[1] = 1;
      shared = 1;
    } else {
      s.perm = {st[0], st[1], st[2]};
      for (int v : s.perm) s.used[v] = 1;
      shared = st[2];
    }
    if (h.N == 4 && st[1] != 0) {
      // perm holds 3 of 4 vertices; the closing triple needs the last one
      if (s.extend(shared)) return s.perm;
    } else if (s.extend(shared)) {
      return s.perm;
    }
    if (s.exhausted) return BudgetExhausted{};
  }
  return ProvenAbsent{};
}

std::vector<Vertex> project_loose_cycle(const std::vector<int>& perm, int n) {
  std::vector<Vertex> out;
  for (int v : perm)
    if (v <= n) out.push_back(v);
  return out;
}

void write_h3(std::ostream& out, const Hypergraph3& h) {
  out << h.N << ' ' << h.edges.size() << '\n';
  for (const Triple& t : h.edges) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

Hypergraph3 read_h3(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto p = line.find_first_not_of(" \t\r");
      if (p != std::string::npos && line[p] != '#') return true;
    }
    return false;
  };
  if (!next()) throw ParseError(lineno + 1, "missing header");
  long long N, m;
  {
    std::istringstream hs(line);
    if (!(hs >> N >> m) || N < 0 || m < 0) throw ParseError(lineno, "expected 'N m'");
  }
  std::vector<Triple> t;
  for (long long i = 0; i < m; ++i) {
    if (!next()) throw ParseError(lineno + 1, "expected " + std::to_string(m) + " triples");
    std::istringstream ls(line);
    Triple x;
    if (!(ls >> x[0] >> x[1] >> x[2])) throw ParseError(lineno, "expected 'a b c'");
    t.push_back(x);
  }
  try {
    return make_hypergraph(static_cast<int>(N), std::move(t));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

}  // namespace rainbow
