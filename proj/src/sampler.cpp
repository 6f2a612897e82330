#include "rainbow/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace rainbow {

namespace {

const Coin* find_coin(const std::vector<Coin>& coins, Vertex u, Vertex v) {
  Vertex lo = std::min(u, v), hi = std::max(u, v);
  auto it = std::lower_bound(coins.begin(), coins.end(), std::pair{lo, hi},
                             [](const Coin& c, const std::pair<Vertex, Vertex>& k) {
                               return c.lo != k.first ? c.lo < k.first : c.hi < k.second;
                             });
  if (it == coins.end() || it->lo != lo || it->hi != hi) return nullptr;
  return &*it;
}

bool selects(const Coin* c, Vertex u, Vertex v) {
  if (!c) throw InternalInconsistency("missing coin for pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
  return (c->bit == 0) == (u < v);
}

std::vector<Arc> sample_out_list(int n, int kappa, double p, RandomSource r, Vertex u) {
  std::vector<Arc> out;
  const int64_t candidates = n - 1;
  if (p <= 0.0 || candidates <= 0) return out;
  auto head = [u](int64_t j) { return static_cast<Vertex>(j + 1 < u ? j + 1 : j + 2); };
  if (p >= 1.0) {
    for (int64_t j = 0; j < candidates; ++j) out.push_back({head(j), 0});
  } else {
    const double log1mp = std::log1p(-p);
    double j = -1.0;
    for (;;) {
      j += 1.0 + std::floor(std::log(r.uniform_open0()) / log1mp);
      if (j >= static_cast<double>(candidates)) break;
      out.push_back({head(static_cast<int64_t>(j)), 0});
    }
  }
  for (Arc& a : out) a.color = static_cast<Color>(1 + r.below(static_cast<uint64_t>(kappa)));
  r.shuffle(out.begin(), out.end());
  return out;
}

}  // namespace

int LayeredSample::coin(Vertex u, Vertex v) const {
  const Coin* c = find_coin(coins, u, v);
  return c ? c->bit : -1;
}

bool LayeredSample::coin_selects(Vertex u, Vertex v) const { return selects(find_coin(coins, u, v), u, v); }

std::vector<std::vector<Arc>> sample_layer_arcs(int n, int kappa, double p, const RandomSource& layer_rng,
                                                Parallelism par) {
  std::vector<std::vector<Arc>> out(static_cast<size_t>(n) + 1);
  if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(dynamic, 256)
    for (Vertex u = 1; u <= n; ++u) out[u] = sample_out_list(n, kappa, p, layer_rng.split(static_cast<uint64_t>(u)), u);
  } else {
    for (Vertex u = 1; u <= n; ++u) out[u] = sample_out_list(n, kappa, p, layer_rng.split(static_cast<uint64_t>(u)), u);
  }
  return out;
}

std::vector<Coin> draw_coins(const std::array<ColoredDigraph, 3>& full, const RandomSource& coin_rng) {
  std::vector<Coin> coins;
  for (int i = 0; i < 3; ++i) {
    const ColoredDigraph& d = full[i];
    for (Vertex u = 1; u <= d.n(); ++u) {
      for (const Arc& a : d.out(u)) {
        if (u > a.to || !d.has_arc(a.to, u)) continue;
        bool higher = false;
        for (int j = 0; j < i; ++j) higher = higher || full[j].has_arc(u, a.to) || full[j].has_arc(a.to, u);
        if (higher) continue;
        RandomSource r = coin_rng.split(pair_key(u, a.to));
        coins.push_back({u, a.to, static_cast<uint8_t>(i + 1), static_cast<uint8_t>(r.next() & 1u)});
      }
    }
  }
  std::sort(coins.begin(), coins.end(),
            [](const Coin& a, const Coin& b) { return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi; });
  return coins;
}

ClassSplit split_color_classes(const ParamSet& params, const std::array<ColoredDigraph, 3>& full,
                               const std::vector<Coin>& coins) {
  const int n = params.n;
  ClassSplit out;
  for (int i = 0; i < 3; ++i) {
    std::vector<std::vector<Arc>> lists(static_cast<size_t>(n) + 1);
    for (Vertex u = 1; u <= n; ++u)
      for (const Arc& a : full[i].out(u))
        if (params.class_of(a.color) == i + 1) lists[u].push_back(a);
    out.d[i] = ColoredDigraph(n, params.kappa, std::move(lists));
  }
  std::array<std::vector<Edge>, 3> edges;
  auto add = [&](int i, Vertex u, Vertex v, Color c) {
    edges[i].push_back({std::min(u, v), std::max(u, v), c});
  };
  for (Vertex u = 1; u <= n; ++u) {
    for (const Arc& a : out.d[0].out(u)) {
      // the reverse arc in D1° (whether or not its color is in C1) hands the pair to the coin
      if (full[0].has_arc(a.to, u)) {
        if (selects(find_coin(coins, u, a.to), u, a.to)) add(0, u, a.to, a.color);
      } else {
        add(0, u, a.to, a.color);
      }
    }
    for (const Arc& a : out.d[1].out(u)) {
      if (full[0].has_arc(u, a.to) || full[0].has_arc(a.to, u) || full[1].has_arc(a.to, u)) continue;
      add(1, u, a.to, a.color);
    }
    for (const Arc& a : out.d[2].out(u)) {
      if (full[0].has_arc(u, a.to) || full[1].has_arc(u, a.to)) continue;
      if (full[0].has_arc(a.to, u) || full[1].has_arc(a.to, u) || full[2].has_arc(a.to, u)) continue;
      add(2, u, a.to, a.color);
    }
  }
  for (int i = 0; i < 3; ++i) out.g[i] = ColoredGraph(n, params.kappa, std::move(edges[i]));
  return out;
}

LayeredSample sample_from_layers(const ParamSet& params, std::array<ColoredDigraph, 3> full,
                                 std::vector<Coin> coins) {
  for (const auto& d : full)
    if (d.n() != params.n) throw std::invalid_argument("layer vertex count differs from params.n");
  LayeredSample s;
  s.params = params;
  std::sort(coins.begin(), coins.end(),
            [](const Coin& a, const Coin& b) { return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi; });
  ClassSplit split = split_color_classes(params, full, coins);
  s.full = std::move(full);
  s.cls = std::move(split.d);
  s.g = std::move(split.g);
  s.coins = std::move(coins);
  s.q2 = q2_of(params);
  return s;
}

LayeredSample sample_layered(const ParamSet& params, const RandomSource& rng, Parallelism par) {
  std::array<ColoredDigraph, 3> full;
  RandomSource layers = rng.split("layer");
  for (int i = 0; i < 3; ++i)
    full[i] = ColoredDigraph(params.n, params.kappa,
                             sample_layer_arcs(params.n, params.kappa, params.p[i],
                                               layers.split(static_cast<uint64_t>(i + 1)), par));
  auto coins = draw_coins(full, rng.split("coin"));
  return sample_from_layers(params, std::move(full), std::move(coins));
}

ColoredGraph merge_to_colored_graph(const LayeredSample& s) {
  const int n = s.n();
  std::vector<Edge> edges;
  for (int i = 0; i < 3; ++i) {
    for (Vertex u = 1; u <= n; ++u) {
      for (const Arc& a : s.full[i].out(u)) {
        Vertex v = a.to;
        bool higher = false;
        for (int j = 0; j < i; ++j) higher = higher || s.full[j].has_arc(u, v) || s.full[j].has_arc(v, u);
        if (higher) continue;
        if (auto rev = s.full[i].arc_color(v, u)) {
          if (u > v) continue;  // emit the pair once
          edges.push_back({u, v, s.coin_selects(u, v) ? a.color : *rev});
        } else {
          edges.push_back({std::min(u, v), std::max(u, v), a.color});
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  return ColoredGraph(n, s.params.kappa, std::move(edges));
}

ParamSet bare_params(int n, int kappa, std::array<int, 3> class_size) {
  ParamSet ps;
  ps.n = n;
  ps.kappa = kappa;
  ps.class_size = class_size;
  return ps;
}

void write_lay(std::ostream& out, const LayeredSample& s) {
  const ParamSet& ps = s.params;
  out << "lay " << ps.n << ' ' << ps.kappa << ' ' << ps.class_size[0] << ' ' << ps.class_size[1] << ' '
      << ps.class_size[2] << '\n';
  for (int i = 0; i < 3; ++i) {
    out << "layer " << (i + 1) << ' ' << s.full[i].arc_count() << '\n';
    for (Vertex u = 1; u <= ps.n; ++u)
      for (const Arc& a : s.full[i].out(u)) out << u << ' ' << a.to << ' ' << a.color << '\n';
  }
  out << "coins " << s.coins.size() << '\n';
  for (const Coin& c : s.coins)
    out << c.lo << ' ' << c.hi << ' ' << int(c.layer) << ' ' << int(c.bit) << '\n';
}

LayeredSample read_lay(std::istream& in) {
  int lineno = 0;
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(lineno + 1, std::string("unexpected end, expected ") + what);
    ++lineno;
    return std::istringstream(line);
  };
  std::string tag;
  int n, kappa;
  std::array<int, 3> cs;
  {
    auto ls = next("header");
    if (!(ls >> tag >> n >> kappa >> cs[0] >> cs[1] >> cs[2]) || tag != "lay")
      throw ParseError(lineno, "expected 'lay n kappa c1 c2 c3'");
  }
  if (n < 1 || kappa < 1 || cs[0] + cs[1] + cs[2] != kappa) throw ParseError(lineno, "inconsistent header");
  ParamSet ps = bare_params(n, kappa, cs);
  std::array<ColoredDigraph, 3> full;
  for (int i = 0; i < 3; ++i) {
    int layer;
    size_t m;
    auto ls = next("layer header");
    if (!(ls >> tag >> layer >> m) || tag != "layer" || layer != i + 1)
      throw ParseError(lineno, "expected 'layer " + std::to_string(i + 1) + " m'");
    std::vector<std::vector<Arc>> lists(static_cast<size_t>(n) + 1);
    for (size_t k = 0; k < m; ++k) {
      int u, v, c;
      auto as = next("arc");
      if (!(as >> u >> v >> c)) throw ParseError(lineno, "expected 'u v c'");
      if (u < 1 || u > n || v < 1 || v > n || u == v || c < 1 || c > kappa) throw ParseError(lineno, "arc out of range");
      lists[u].push_back({v, c});
    }
    try {
      full[i] = ColoredDigraph(n, kappa, std::move(lists));
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  size_t k;
  {
    auto ls = next("coins header");
    if (!(ls >> tag >> k) || tag != "coins") throw ParseError(lineno, "expected 'coins k'");
  }
  std::vector<Coin> coins;
  for (size_t i = 0; i < k; ++i) {
    int lo, hi, layer, bit;
    auto cs2 = next("coin");
    if (!(cs2 >> lo >> hi >> layer >> bit) || lo >= hi || layer < 1 || layer > 3 || (bit != 0 && bit != 1))
      throw ParseError(lineno, "expected 'lo hi layer bit'");
    coins.push_back({lo, hi, static_cast<uint8_t>(layer), static_cast<uint8_t>(bit)});
  }
  return sample_from_layers(ps, std::move(full), std::move(coins));
}

}  // namespace rainbow
