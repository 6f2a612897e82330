#include "rainbow/dangerous_sets.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <unordered_set>

namespace rainbow {

std::array<double, 3> s0_thresholds(const ParamSet& ps) {
  const double ln = ps.log_n();
  return {ps.epsilon_i[0] * ps.theta_i[0] / 20.0 * ln, ln / 20.0, ps.epsilon_i[2] * ps.theta_i[2] / 20.0 * ln};
}

S0Sets compute_S0(const LayeredSample& s, ExposureLedger& ledger) {
  S0Sets out;
  out.thresholds = s0_thresholds(s.params);
  std::array<std::vector<Vertex>*, 3> parts{&out.s01, &out.s02, &out.s03};
  for (Vertex v = 1; v <= s.n(); ++v) {
    bool any = false;
    for (int i = 0; i < 3; ++i) {
      const int d = s.cls[i].out_degree(v);
      ledger.reveal({Quantity::OutDegree, static_cast<uint8_t>(i + 1), 0, v, 0}, d);
      if (d <= out.thresholds[i]) {
        parts[i]->push_back(v);
        any = true;
      }
    }
    if (any) out.s0.push_back(v);
  }
  return out;
}

GrowResult grow_set(const std::array<const ColoredDigraph*, 3>& d, const std::vector<Vertex>& seed,
                    int threshold, RandomSource* order) {
  const int n = d[0]->n();
  GrowResult r;
  r.in_set.assign(static_cast<size_t>(n) + 1, 0);
  for (auto& t : r.toward) t.assign(static_cast<size_t>(n) + 1, 0);
  std::vector<uint8_t> queued(static_cast<size_t>(n) + 1, 0);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> heap;
  std::vector<Vertex> pool;  // random-order variant

  auto join = [&](Vertex w) {
    r.in_set[w] = 1;
    for (int i = 0; i < 3; ++i) {
      for (const Arc& a : d[i]->in(w)) {
        Vertex x = a.to;
        if (++r.toward[i][x] >= threshold && !r.in_set[x] && !queued[x]) {
          queued[x] = 1;
          if (order) pool.push_back(x);
          else heap.push(x);
        }
      }
    }
  };
  for (Vertex v : seed)
    if (!r.in_set[v]) join(v);
  for (;;) {
    Vertex x;
    if (order) {
      if (pool.empty()) break;
      size_t k = order->below(pool.size());
      x = pool[k];
      pool[k] = pool.back();
      pool.pop_back();
    } else {
      if (heap.empty()) break;
      x = heap.top();
      heap.pop();
    }
    if (r.in_set[x]) continue;
    r.absorbed.push_back(x);
    join(x);
  }
  return r;
}

DangerousSets grow_S(const LayeredSample& s, const S0Sets& s0, int threshold, ExposureLedger& ledger) {
  const int n = s.n();
  DangerousSets ds;
  ds.s01 = s0.s01;
  ds.s02 = s0.s02;
  ds.s03 = s0.s03;
  ds.s0 = s0.s0;
  ds.threshold = threshold;
  GrowResult g = grow_set({&s.cls[0], &s.cls[1], &s.cls[2]}, s0.s0, threshold);
  ds.absorbed = std::move(g.absorbed);
  ds.in_s = std::move(g.in_set);
  for (Vertex v = 1; v <= n; ++v)
    if (ds.in_s[v]) ds.s.push_back(v);
  for (int i = 0; i < 3; ++i) {
    ds.out_degree[i].assign(static_cast<size_t>(n) + 1, 0);
    ds.residual[i].assign(static_cast<size_t>(n) + 1, 0);
    for (Vertex v = 1; v <= n; ++v) {
      ledger.require({Quantity::OutDegree, static_cast<uint8_t>(i + 1), 0, v, 0});
      ds.out_degree[i][v] = s.cls[i].out_degree(v);
      ds.residual[i][v] = ds.out_degree[i][v] - g.toward[i][v];
    }
    // the arcs that point into S are now known by location
    for (Vertex w : ds.s)
      for (const Arc& a : s.cls[i].in(w))
        ledger.touch({Quantity::ArcsTowardSet, static_cast<uint8_t>(i + 1), 0, a.to, w}, a.color);
  }
  ds.s00 = compute_S00(s.g[1]);
  ds.in_s00.assign(static_cast<size_t>(n) + 1, 0);
  for (Vertex v : ds.s00) ds.in_s00[v] = 1;
  return ds;
}

double s00_threshold(int n) { return std::log(static_cast<double>(n)) / 10.0; }

std::vector<Vertex> compute_S00(const ColoredGraph& g2) {
  const double t = s00_threshold(g2.n());
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= g2.n(); ++v)
    if (g2.degree(v) <= t) out.push_back(v);
  return out;
}

std::optional<int> min_pairwise_distance(const ColoredGraph& g, const std::vector<Vertex>& a, int max_depth) {
  const int n = g.n();
  std::vector<int> dist(static_cast<size_t>(n) + 1, -1);
  std::vector<Vertex> owner(static_cast<size_t>(n) + 1, 0);
  std::deque<Vertex> q;
  for (Vertex v : a) {
    if (dist[v] == 0) continue;
    dist[v] = 0;
    owner[v] = v;
    q.push_back(v);
  }
  const int depth_limit = max_depth < 0 ? n : (max_depth + 1) / 2;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    if (dist[x] >= depth_limit) continue;
    for (const Neighbor& nb : g.neighbors(x)) {
      if (dist[nb.to] < 0) {
        dist[nb.to] = dist[x] + 1;
        owner[nb.to] = owner[x];
        q.push_back(nb.to);
      }
    }
  }
  std::optional<int> best;
  for (const Edge& e : g.edges()) {
    if (e.u < 1 || e.v < 1 || e.u > n || e.v > n || e.u == e.v) continue;
    if (dist[e.u] < 0 || dist[e.v] < 0 || owner[e.u] == owner[e.v]) continue;
    int d = dist[e.u] + dist[e.v] + 1;
    if (!best || d < *best) best = d;
  }
  if (best && max_depth >= 0 && *best > max_depth) return std::nullopt;
  return best;
}

size_t arcs_spanned(const LayeredSample& s, const std::vector<uint8_t>& in_set) {
  std::unordered_set<uint64_t> pairs;
  for (int i = 0; i < 3; ++i)
    for (Vertex u = 1; u <= s.n(); ++u)
      if (in_set[u])
        for (const Arc& a : s.cls[i].out(u))
          if (in_set[a.to]) pairs.insert(arc_key(u, a.to));
  return pairs.size();
}

int max_neighbors_in(const ColoredGraph& g, const std::vector<uint8_t>& in_set) {
  int best = 0;
  for (Vertex v = 1; v <= g.n(); ++v) {
    int c = 0;
    for (const Neighbor& nb : g.neighbors(v)) c += in_set[nb.to] ? 1 : 0;
    best = std::max(best, c);
  }
  return best;
}

}  // namespace rainbow
