#include "rainbow/linker.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace rainbow {

namespace {
uint64_t gkey(int from, int to) { return arc_key(from + 1, to + 1); }
}  // namespace

size_t GammaGraph::distinct_arcs() const {
  std::unordered_map<uint64_t, int> seen;
  for (const auto& g : gens) ++seen[gkey(g.from(), g.to())];
  return seen.size();
}

size_t GammaGraph::duplicate_arcs() const {
  std::unordered_map<uint64_t, int> seen;
  for (const auto& g : gens) ++seen[gkey(g.from(), g.to())];
  size_t d = 0;
  for (auto [k, c] : seen) d += c > 1 ? 1 : 0;
  return d;
}

std::vector<int> GammaGraph::out_degree() const {
  std::vector<int> d(static_cast<size_t>(r), 0);
  for (const auto& g : gens)
    if (g.out) ++d[g.owner];
  return d;
}

std::vector<int> GammaGraph::in_degree() const {
  std::vector<int> d(static_cast<size_t>(r), 0);
  for (const auto& g : gens)
    if (!g.out) ++d[g.owner];
  return d;
}

GammaGraph build_gamma(const SegmentSystem& sys, const LayeredSample& s, ExposureLedger& ledger) {
  GammaGraph g;
  g.seg_ids = sys.live();
  g.r = static_cast<int>(g.seg_ids.size());
  if (g.r < 3) throw DegenerateInstance("Γ needs at least 3 segments, have " + std::to_string(g.r));
  std::vector<int> w_of_a(static_cast<size_t>(sys.n) + 1, -1), w_of_b(static_cast<size_t>(sys.n) + 1, -1);
  for (int k = 0; k < g.r; ++k) {
    w_of_a[sys.a_end(g.seg_ids[k])] = k;
    w_of_b[sys.b_end(g.seg_ids[k])] = k;
  }
  const ColoredDigraph& d1 = s.cls[0];
  for (int k = 0; k < g.r; ++k) {
    const Vertex a = sys.a_end(g.seg_ids[k]), b = sys.b_end(g.seg_ids[k]);
    int colors = 0;
    for (const Arc& arc : d1.out(b)) {
      const int j = w_of_a[arc.to];
      if (j < 0 || j == k) continue;
      g.gens.push_back({k, true, j, arc.color, b, arc.to});
      ++colors;
    }
    for (const Arc& arc : d1.out(a)) {
      const int j = w_of_b[arc.to];
      if (j < 0 || j == k) continue;
      g.gens.push_back({k, false, j, arc.color, a, arc.to});
      ++colors;
    }
    ledger.touch({Quantity::GammaColors, 1, 0, static_cast<Vertex>(k + 1), 0}, colors);
  }
  g.removed.assign(g.gens.size(), 0);
  return g;
}

GammaGraph sample_gamma_model(int r, const std::vector<int>& delta_out, const std::vector<int>& delta_in, int c1,
                              RandomSource rng) {
  if (r < 2) throw DegenerateInstance("model Γ needs r >= 2");
  GammaGraph g;
  g.r = r;
  auto pick = [&](int k, int d, bool out) {
    std::vector<int> chosen;
    d = std::min(d, r - 1);
    while (static_cast<int>(chosen.size()) < d) {
      int j = static_cast<int>(rng.below(static_cast<uint64_t>(r - 1)));
      if (j >= k) ++j;
      if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
      chosen.push_back(j);
      const Color c = static_cast<Color>(1 + rng.below(static_cast<uint64_t>(c1)));
      g.gens.push_back({k, out, j, c});
    }
  };
  for (int k = 0; k < r; ++k) {
    pick(k, delta_out[k], true);
    pick(k, delta_in[k], false);
  }
  g.removed.assign(g.gens.size(), 0);
  return g;
}

namespace {

struct Bipartite {
  int left = 0;   // 3 clones per W-vertex
  int right = 0;  // distinct colors
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<int>> gen_of;  // per W-vertex, per right index: first generation with that color
  std::vector<Color> color_of;
};

Bipartite build_bipartite(const GammaGraph& g) {
  Bipartite b;
  const int w = 2 * g.r;
  b.left = 3 * w;
  std::map<Color, int> idx;
  for (const auto& gen : g.gens)
    if (!idx.count(gen.color)) idx.emplace(gen.color, 0);
  for (auto& [c, i] : idx) {
    i = b.right++;
    b.color_of.push_back(c);
  }
  std::vector<std::vector<int>> w_adj(static_cast<size_t>(w));
  b.gen_of.assign(static_cast<size_t>(w), std::vector<int>());
  std::vector<std::unordered_map<int, int>> first(static_cast<size_t>(w));
  for (int i = 0; i < static_cast<int>(g.gens.size()); ++i) {
    const auto& gen = g.gens[i];
    const int t = 2 * gen.owner + (gen.out ? 0 : 1);
    const int c = idx[gen.color];
    if (first[t].emplace(c, i).second) w_adj[t].push_back(c);
  }
  b.adj.resize(static_cast<size_t>(b.left));
  for (int t = 0; t < w; ++t) {
    std::sort(w_adj[t].begin(), w_adj[t].end());
    for (int c = 0; c < 3; ++c) b.adj[3 * t + c] = w_adj[t];
    auto& row = b.gen_of[t];
    row.assign(static_cast<size_t>(b.right), -1);
    for (auto [c, i] : first[t]) row[c] = i;
  }
  return b;
}

}  // namespace

int hall_neighborhood(const GammaGraph& g, const std::vector<int>& w_vertices) {
  std::vector<uint8_t> in_x(static_cast<size_t>(2 * g.r), 0);
  for (int t : w_vertices) in_x[t] = 1;
  std::vector<Color> cs;
  for (const auto& gen : g.gens)
    if (in_x[2 * gen.owner + (gen.out ? 0 : 1)]) cs.push_back(gen.color);
  std::sort(cs.begin(), cs.end());
  return static_cast<int>(std::unique(cs.begin(), cs.end()) - cs.begin());
}

std::variant<Selection, SelectionFailure> select_rainbow_3in3out(const GammaGraph& g) {
  Bipartite b = build_bipartite(g);
  std::vector<int> match_l(static_cast<size_t>(b.left), -1), match_r(static_cast<size_t>(b.right), -1);
  std::vector<int> stamp(static_cast<size_t>(b.right), -1);
  // augmenting path search, iterative to keep the stack flat for large r
  auto augment = [&](int root, int token) {
    struct Frame {
      int l;
      size_t next;
    };
    std::vector<Frame> st{{root, 0}};
    std::vector<int> via;  // right vertex taken from each frame
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.next >= b.adj[f.l].size()) {
        st.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      const int c = b.adj[f.l][f.next++];
      if (stamp[c] == token) continue;
      stamp[c] = token;
      if (match_r[c] < 0) {
        via.push_back(c);
        for (size_t k = 0; k < st.size(); ++k) {
          match_l[st[k].l] = via[k];
          match_r[via[k]] = st[k].l;
        }
        return true;
      }
      via.push_back(c);
      st.push_back({match_r[c], 0});
    }
    return false;
  };
  int token = 0;
  for (int l = 0; l < b.left; ++l) augment(l, token++);

  if (std::find(match_l.begin(), match_l.end(), -1) == match_l.end()) {
    Selection sel;
    sel.out.resize(static_cast<size_t>(g.r));
    sel.in.resize(static_cast<size_t>(g.r));
    for (int t = 0; t < 2 * g.r; ++t) {
      auto& slot = t % 2 == 0 ? sel.out[t / 2] : sel.in[t / 2];
      for (int c = 0; c < 3; ++c) {
        const int gi = b.gen_of[t][match_l[3 * t + c]];
        if (gi < 0) throw InternalInconsistency("matched color without generation");
        slot[c] = gi;
      }
    }
    return sel;
  }
  // alternating reachability from unmatched clones gives a Hall violator
  std::vector<uint8_t> seen_l(static_cast<size_t>(b.left), 0), seen_r(static_cast<size_t>(b.right), 0);
  std::vector<int> queue;
  for (int l = 0; l < b.left; ++l)
    if (match_l[l] < 0) {
      seen_l[l] = 1;
      queue.push_back(l);
    }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    for (int c : b.adj[queue[qi]]) {
      if (seen_r[c]) continue;
      seen_r[c] = 1;
      const int l2 = match_r[c];
      if (l2 >= 0 && !seen_l[l2]) {
        seen_l[l2] = 1;
        queue.push_back(l2);
      }
    }
  }
  SelectionFailure fail;
  for (int t = 0; t < 2 * g.r; ++t)
    if (seen_l[3 * t] || seen_l[3 * t + 1] || seen_l[3 * t + 2]) fail.witness.push_back(t);
  fail.neighborhood = hall_neighborhood(g, fail.witness);
  if (fail.neighborhood >= 3 * static_cast<int>(fail.witness.size()))
    throw InternalInconsistency("Hall witness does not violate the condition");
  return fail;
}

namespace {

std::variant<Pruned, PruneFailure> finish_prune(const GammaGraph& g, const Selection& sel,
                                                const std::vector<uint8_t>& keep) {
  Pruned p;
  p.out_kept.assign(static_cast<size_t>(g.r), 0);
  p.in_kept.assign(static_cast<size_t>(g.r), 0);
  std::unordered_map<uint64_t, int> seen;
  for (int k = 0; k < g.r; ++k) {
    for (const auto* side : {&sel.out[k], &sel.in[k]}) {
      for (int gi : *side) {
        if (!keep[gi]) {
          ++p.dropped;
          continue;
        }
        const auto& gen = g.gens[gi];
        (gen.out ? p.out_kept : p.in_kept)[k]++;
        if (seen.emplace(gkey(gen.from(), gen.to()), gi).second)
          p.arcs.push_back({gen.from(), gen.to(), gen.color, gi});
      }
    }
  }
  for (int k = 0; k < g.r; ++k) {
    if (p.out_kept[k] < 2) return PruneFailure{k, true};
    if (p.in_kept[k] < 2) return PruneFailure{k, false};
  }
  return p;
}

}  // namespace

std::variant<Pruned, PruneFailure> prune_conflicts(const GammaGraph& g, const Selection& sel, const LayeredSample& s,
                                                   ExposureLedger& ledger) {
  std::vector<uint8_t> keep(g.gens.size(), 0);
  for (int k = 0; k < g.r; ++k) {
    for (const auto* side : {&sel.out[k], &sel.in[k]}) {
      for (int gi : *side) {
        const auto& gen = g.gens[gi];
        ledger.touch({Quantity::GammaLocations, 1, 0, gen.x, gen.y}, gen.other);
        const bool rev = s.full[0].has_arc(gen.y, gen.x);
        ledger.touch({Quantity::ArcProbe, 4, 0, gen.y, gen.x}, rev ? 1 : 0);
        auto c = s.g[0].color(gen.x, gen.y);
        keep[gi] = c && *c == gen.color ? 1 : 0;
      }
    }
  }
  return finish_prune(g, sel, keep);
}

std::variant<Pruned, PruneFailure> prune_conflicts_model(const GammaGraph& g, const Selection& sel, double f2,
                                                          RandomSource rng) {
  std::unordered_map<uint64_t, int> mult;
  for (const auto& gen : g.gens) ++mult[gkey(gen.from(), gen.to())];
  std::vector<uint8_t> keep(g.gens.size(), 0);
  for (size_t i = 0; i < g.gens.size(); ++i) {
    const auto& gen = g.gens[i];
    const uint64_t key = gkey(gen.from(), gen.to());
    const bool removed = g.removed[i] || rng.split(key).bernoulli(f2);
    keep[i] = mult[key] == 1 && !removed ? 1 : 0;
  }
  return finish_prune(g, sel, keep);
}

HamiltonCycleCertificate stitch_cycle(const SegmentSystem& sys, const std::vector<int>& seg_ids,
                                      const LinkResult& link, const ColoredGraph& g) {
  const size_t r = link.cycle.size();
  if (link.links.size() != r) throw InternalInconsistency("link count differs from cycle length");
  HamiltonCycleCertificate cert;
  for (size_t i = 0; i < r; ++i) {
    const Segment& seg = sys.segs[seg_ids[link.cycle[i]]];
    cert.order.insert(cert.order.end(), seg.vertices.begin(), seg.vertices.end());
    cert.colors.insert(cert.colors.end(), seg.colors.begin(), seg.colors.end());
    const LinkArc& l = link.links[i];
    if (l.from != link.cycle[i] || l.to != link.cycle[(i + 1) % r])
      throw InternalInconsistency("link arc does not follow the cycle");
    cert.colors.push_back(l.color);
  }
  if (static_cast<int>(cert.order.size()) != g.n())
    throw InternalInconsistency("stitched cycle has " + std::to_string(cert.order.size()) + " vertices, graph has " +
                                std::to_string(g.n()));
  VerificationReport rep = verify_rainbow_hamilton(g, cert);
  if (!rep.ok()) throw InternalInconsistency("stitched cycle fails verification: " + rep.violations.front());
  return cert;
}

std::vector<std::vector<int>> d_in_d_out(int r, int d, RandomSource rng) {
  GammaGraph g = sample_gamma_model(r, std::vector<int>(static_cast<size_t>(r), d),
                                    std::vector<int>(static_cast<size_t>(r), d), 1, rng);
  std::vector<std::vector<int>> out(static_cast<size_t>(r));
  std::unordered_map<uint64_t, int> seen;
  for (const auto& gen : g.gens)
    if (seen.emplace(gkey(gen.from(), gen.to()), 1).second) out[gen.from()].push_back(gen.to());
  return out;
}

}  // namespace rainbow
