#include "rainbow/cover.hpp"

#include <algorithm>
#include <unordered_set>

namespace rainbow {

size_t PathCover::colors_used() const {
  size_t c = 0;
  for (const auto& p : paths) c += p.colors.size();
  return c;
}

const char* to_string(CoverFailureReason r) {
  switch (r) {
    case CoverFailureReason::NoDisjointExtension: return "no-disjoint-extension";
    case CoverFailureReason::NoFreshColors: return "no-fresh-colors";
    case CoverFailureReason::DegreeTooLow: return "degree-too-low";
  }
  return "?";
}

namespace {

// An arm leaves v: [x] with x outside S, or [x, y] with x in S (still uncovered) and y outside S.
struct ArmEdge {
  Vertex to;
  Color color;
};
using Arm = std::vector<ArmEdge>;

struct Cover {
  const ColoredGraph& g2;
  const DangerousSets& ds;
  ExposureLedger& ledger;
  std::vector<uint8_t> on_path;

  void expose(Vertex v) {
    ledger.touch({Quantity::G2Neighborhood, 2, 0, v, 0}, g2.degree(v));
  }

  std::vector<Arm> arms(Vertex v, bool allow_long) {
    std::vector<Arm> out;
    expose(v);
    for (const Neighbor& nx : g2.neighbors(v)) {
      Vertex x = nx.to;
      if (on_path[x]) continue;
      if (!ds.contains(x)) {
        out.push_back({{x, nx.color}});
      } else if (allow_long) {
        expose(x);
        for (const Neighbor& ny : g2.neighbors(x)) {
          if (ny.to == v || on_path[ny.to] || ds.contains(ny.to)) continue;
          out.push_back({{x, nx.color}, {ny.to, ny.color}});
        }
      }
    }
    return out;
  }

  static bool disjoint(const Arm& a, const Arm& b) {
    for (const auto& e : a)
      for (const auto& f : b)
        if (e.to == f.to) return false;
    return true;
  }

  static bool fresh(const Arm& a, const Arm& b, const UsedColors& used) {
    std::vector<Color> cs;
    for (const auto& e : a) cs.push_back(e.color);
    for (const auto& e : b) cs.push_back(e.color);
    for (size_t i = 0; i < cs.size(); ++i) {
      if (used.contains(cs[i])) return false;
      for (size_t j = 0; j < i; ++j)
        if (cs[i] == cs[j]) return false;
    }
    return true;
  }

  std::variant<CoverPath, CoverFailureReason> cover_one(Vertex v, bool s00_phase, const UsedColors& used) {
    int free_deg = 0;
    for (const Neighbor& nb : g2.neighbors(v)) free_deg += on_path[nb.to] ? 0 : 1;
    if (free_deg < 2) return CoverFailureReason::DegreeTooLow;
    auto list = arms(v, s00_phase);
    bool any_disjoint = false;
    for (size_t i = 0; i < list.size(); ++i) {
      for (size_t j = i + 1; j < list.size(); ++j) {
        if (!disjoint(list[i], list[j])) continue;
        any_disjoint = true;
        if (!fresh(list[i], list[j], used)) continue;
        CoverPath p;
        p.s00_phase = s00_phase;
        const Arm& a = list[i];
        for (size_t k = a.size(); k-- > 0;) {
          p.vertices.push_back(a[k].to);
          p.colors.push_back(a[k].color);
        }
        p.vertices.push_back(v);
        for (const auto& e : list[j]) {
          p.vertices.push_back(e.to);
          p.colors.push_back(e.color);
        }
        return p;
      }
    }
    return any_disjoint ? CoverFailureReason::NoFreshColors : CoverFailureReason::NoDisjointExtension;
  }
};

}  // namespace

std::variant<PathCover, CoverFailure> cover_dangerous(const ColoredGraph& g2, const DangerousSets& ds,
                                                      UsedColors& used, ExposureLedger& ledger,
                                                      std::optional<RandomSource> order) {
  const int n = g2.n();
  Cover st{g2, ds, ledger, std::vector<uint8_t>(static_cast<size_t>(n) + 1, 0)};
  UsedColors local = used;
  PathCover pc;
  std::vector<Vertex> phase1, phase2;
  for (Vertex v : ds.s) (ds.in_s00[v] ? phase1 : phase2).push_back(v);
  if (order) {
    order->shuffle(phase1.begin(), phase1.end());
    order->shuffle(phase2.begin(), phase2.end());
  }
  for (int phase = 0; phase < 2; ++phase) {
    for (Vertex v : phase == 0 ? phase1 : phase2) {
      if (st.on_path[v]) continue;
      auto r = st.cover_one(v, phase == 0, local);
      if (auto* why = std::get_if<CoverFailureReason>(&r)) return CoverFailure{v, *why};
      auto& p = std::get<CoverPath>(r);
      for (Vertex x : p.vertices) {
        st.on_path[x] = 1;
        if (ds.contains(x)) ++pc.covered;
      }
      for (Color c : p.colors) local.add(c);
      pc.paths.push_back(std::move(p));
    }
  }
  used = local;
  return pc;
}

std::vector<std::string> check_cover(const ColoredGraph& g2, const DangerousSets& ds, const PathCover& pc) {
  std::vector<std::string> out;
  std::vector<int> hits(static_cast<size_t>(g2.n()) + 1, 0);
  std::unordered_set<Color> colors;
  for (size_t i = 0; i < pc.paths.size(); ++i) {
    const auto& p = pc.paths[i];
    const std::string tag = "path " + std::to_string(i) + ": ";
    const size_t len = p.colors.size();
    if (p.vertices.size() != len + 1) {
      out.push_back(tag + "vertex/color count mismatch");
      continue;
    }
    if (p.s00_phase ? (len < 2 || len > 4) : len != 2) out.push_back(tag + "bad length");
    if (ds.contains(p.vertices.front()) || ds.contains(p.vertices.back())) out.push_back(tag + "endpoint in S");
    for (size_t k = 1; k + 1 < p.vertices.size(); ++k)
      if (!ds.contains(p.vertices[k])) out.push_back(tag + "interior vertex outside S");
    for (Vertex v : p.vertices) ++hits[v];
    for (size_t k = 0; k < len; ++k) {
      auto c = g2.color(p.vertices[k], p.vertices[k + 1]);
      if (!c || *c != p.colors[k]) out.push_back(tag + "edge missing or miscolored in G2");
      if (!colors.insert(p.colors[k]).second) out.push_back(tag + "repeated color " + std::to_string(p.colors[k]));
    }
  }
  for (Vertex v = 1; v <= g2.n(); ++v) {
    if (hits[v] > 1) out.push_back("vertex " + std::to_string(v) + " on two paths");
    if (ds.contains(v) && hits[v] != 1) out.push_back("vertex " + std::to_string(v) + " of S not covered");
  }
  return out;
}

}  // namespace rainbow
