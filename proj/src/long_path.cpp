#include "rainbow/long_path.hpp"

#include <algorithm>
#include <cmath>

namespace rainbow {

double default_stop_below(int n) {
  return n / (2.0 * std::cbrt(std::log(static_cast<double>(n))));
}

int default_path_target(int n) {
  return static_cast<int>(std::ceil(n - n / std::cbrt(std::log(static_cast<double>(n)))));
}

namespace {

constexpr uint8_t kFullD1 = 4;
constexpr uint8_t kFullD2 = 5;

struct Walk {
  const LayeredSample& s;
  const DangerousSets& ds;
  ExposureLedger& ledger;
  UsedColors& used;

  std::vector<uint8_t> in_u, red;
  std::vector<Vertex> order;  // U in restart order
  size_t cursor = 0;
  int u_size = 0;
  std::vector<Vertex> path;
  std::vector<Color> colors;
  int steps = 0, restarts = 0;

  void take(Vertex w) {
    in_u[w] = 0;
    --u_size;
  }

  Vertex first_of_u() {
    while (cursor < order.size() && !in_u[order[cursor]]) ++cursor;
    return cursor < order.size() ? order[cursor] : 0;
  }

  // residual D2 out-list of v: arcs whose head is outside S, in permutation order
  std::vector<Arc> residual(Vertex v) const {
    std::vector<Arc> out;
    for (const Arc& a : s.cls[1].out(v))
      if (!ds.contains(a.to)) out.push_back(a);
    return out;
  }

  std::vector<Arc> half(Vertex v, bool first) {
    ledger.require({Quantity::OutDegree, 2, 0, v, 0});
    auto all = residual(v);
    const size_t split = (all.size() + 1) / 2;
    ledger.reveal({first ? Quantity::OutListFirstHalf : Quantity::OutListSecondHalf, 2, 0, v, 0},
                  static_cast<int64_t>(first ? split : all.size() - split));
    if (first) all.resize(split);
    else all.erase(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(split));
    return all;
  }

  std::optional<Arc> suitable(const std::vector<Arc>& list) const {
    for (const Arc& a : list)
      if (in_u[a.to] && !used.contains(a.color)) return a;
    return std::nullopt;
  }

  bool probe(uint8_t layer, Vertex a, Vertex b) {
    const bool present = s.full[layer - 4].has_arc(a, b);
    ledger.touch({Quantity::ArcProbe, layer, 0, a, b}, present ? 1 : 0);
    return present;
  }

  // true when none of (v,w)∈D1°, (w,v)∈D1°, (w,v)∈D2° holds, i.e. vw is a G2 edge
  bool probes_clear(Vertex v, Vertex w) {
    if (probe(kFullD1, v, w)) return false;
    if (probe(kFullD1, w, v)) return false;
    return !probe(kFullD2, w, v);
  }

  void extend(const Arc& a) {
    path.push_back(a.to);
    colors.push_back(a.color);
    used.add(a.color);
  }

  void backtrack() {
    size_t k = path.size();
    while (k > 0 && red[path[k - 1]]) --k;
    if (k > 0) {
      while (path.size() > k) {
        used.remove(colors.back());
        colors.pop_back();
        path.pop_back();
      }
      red[path.back()] = 1;
      return;
    }
    for (Color c : colors) used.remove(c);
    colors.clear();
    path.clear();
    Vertex fresh = first_of_u();
    if (fresh) {
      take(fresh);
      path.push_back(fresh);
      ++restarts;
    }
  }

  void run(double stop_below) {
    Vertex start = first_of_u();
    if (!start) return;
    take(start);
    path.push_back(start);
    while (u_size >= stop_below && !path.empty()) {
      ++steps;
      const Vertex v = path.back();
      if (!red[v]) {
        auto w = suitable(half(v, true));
        if (!w) {
          red[v] = 1;
          continue;
        }
        take(w->to);
        if (probes_clear(v, w->to)) {
          extend(*w);
        } else {
          red[v] = 1;
          red[w->to] = 1;
        }
      } else {
        auto w = suitable(half(v, false));
        if (!w) {
          backtrack();
          continue;
        }
        take(w->to);
        if (probes_clear(v, w->to)) {
          extend(*w);
        } else {
          red[w->to] = 1;
          backtrack();
        }
      }
    }
  }
};

}  // namespace

std::variant<LongPathResult, LongPathFailure> build_long_path(const LayeredSample& s, const DangerousSets& ds,
                                                              const PathCover& cover, UsedColors& used,
                                                              ExposureLedger& ledger, const RandomSource& rng,
                                                              const LongPathOptions& opt) {
  const int n = s.n();
  std::vector<uint8_t> on_cover(static_cast<size_t>(n) + 1, 0);
  for (const auto& p : cover.paths)
    for (Vertex v : p.vertices) on_cover[v] = 1;

  UsedColors local = used;
  Walk w{s, ds, ledger, local, {}, {}, {}, 0, 0, {}, {}, 0, 0};
  w.in_u.assign(static_cast<size_t>(n) + 1, 0);
  w.red.assign(static_cast<size_t>(n) + 1, 0);
  LongPathResult res;
  for (Vertex v = 1; v <= n; ++v)
    if (!ds.contains(v) && !on_cover[v]) res.v2.push_back(v);
  w.order = res.v2;
  RandomSource order_rng = rng.split("restart-order");
  order_rng.shuffle(w.order.begin(), w.order.end());
  for (Vertex v : res.v2) w.in_u[v] = 1;
  w.u_size = static_cast<int>(res.v2.size());

  double stop = opt.stop_below.value_or(default_stop_below(n));
  if (stop >= static_cast<double>(res.v2.size())) {
    stop = 1.0;
    res.degenerate = true;
  }
  res.stop_below = stop;
  res.target = opt.min_vertices.value_or(default_path_target(n));
  w.run(stop);

  for (size_t k = 0; k + 1 < w.path.size(); ++k) {
    auto c = s.g[1].color(w.path[k], w.path[k + 1]);
    if (!c || *c != w.colors[k]) throw InternalInconsistency("long path edge not in G2");
  }
  for (Vertex v = 1; v <= n; ++v)
    if (w.red[v]) res.red.red.push_back(v);
  res.red.count = static_cast<int>(res.red.red.size());
  for (Vertex v : w.path) res.red.on_path += w.red[v] ? 1 : 0;
  for (Vertex v : res.v2)
    if (w.in_u[v]) res.untouched.push_back(v);
  res.steps = w.steps;
  res.restarts = w.restarts;

  if (static_cast<int>(w.path.size()) < res.target)
    return LongPathFailure{static_cast<int>(w.path.size()), res.red.count, res.target};
  res.path.vertices = std::move(w.path);
  res.path.colors = std::move(w.colors);
  used = local;
  return res;
}

RedDiagnostic red_fraction_diagnostic(const RedReport& r, int n) {
  const double bound = n * std::exp(-std::cbrt(std::log(static_cast<double>(n))) / 300.0);
  return {r.count, bound, r.count <= bound};
}

}  // namespace rainbow
