#include "rainbow/segments.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace rainbow {

EndpointThresholds endpoint_thresholds(const ParamSet& ps, int L, std::optional<double> override_value) {
  EndpointThresholds t;
  if (override_value) {
    t.t180 = t.t200 = *override_value;
    t.t1800 = 0;
    t.overridden = true;
    return t;
  }
  const double base = ps.epsilon_i[0] * ps.theta_i[0] * ps.log_n() / L;
  t.t180 = base / 180.0;
  t.t200 = base / 200.0;
  t.t1800 = base / 1800.0;
  return t;
}

bool threshold_relation_exact() {
  // 1/180 - 1/1800 = 1/200  <=>  (1800 - 180) * 200 == 180 * 1800
  constexpr long long lhs = (1800LL - 180LL) * 200LL;
  constexpr long long rhs = 180LL * 1800LL;
  return lhs == rhs;
}

const char* to_string(AbsorbFailureReason r) {
  switch (r) {
    case AbsorbFailureReason::NoUsableG3Arc: return "no-usable-G3-arc";
    case AbsorbFailureReason::ColorExhausted: return "color-exhausted";
    case AbsorbFailureReason::NoSeparatedHost: return "no-separated-host";
  }
  return "?";
}

const char* to_string(MergeFailureReason r) {
  switch (r) {
    case MergeFailureReason::SingleSegmentBlock: return "single-segment-block";
    case MergeFailureReason::TwoSegmentBlock: return "two-segment-block";
    case MergeFailureReason::BadBlockExtreme: return "bad-block-extreme";
    case MergeFailureReason::NoProgress: return "no-progress";
  }
  return "?";
}

std::vector<int> SegmentSystem::live() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(segs.size()); ++i)
    if (segs[i].alive) out.push_back(i);
  return out;
}

int SegmentSystem::live_count() const {
  int c = 0;
  for (const auto& s : segs) c += s.alive ? 1 : 0;
  return c;
}

std::vector<Vertex> SegmentSystem::endpoints(EndType t) const {
  std::vector<Vertex> out;
  for (const auto& s : segs) {
    if (!s.alive) continue;
    out.push_back(t == EndType::A ? s.vertices.front() : s.vertices.back());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Block> SegmentSystem::blocks() const {
  std::vector<Block> out;
  std::vector<char> seen(segs.size(), 0);
  auto far_end = [&](int id, Vertex e) { return e == a_end(id) ? b_end(id) : a_end(id); };
  for (int id : live()) {
    if (seen[id]) continue;
    int s = id;
    Vertex e = a_end(id);
    bool cyclic = false;
    size_t guard = 0;
    while (joint[e]) {
      Vertex p = joint[e];
      s = seg_of_end[p];
      e = far_end(s, p);
      if (++guard > segs.size()) {
        cyclic = true;
        break;
      }
    }
    Block b;
    if (cyclic) {
      b.cyclic = true;
      int cur = id;
      Vertex entry = a_end(id);
      do {
        seen[cur] = 1;
        b.segs.push_back(cur);
        Vertex exit = far_end(cur, entry);
        Vertex p = joint[exit];
        b.facing.push_back({exit, p});
        cur = seg_of_end[p];
        entry = p;
      } while (cur != id && b.segs.size() <= segs.size());
      out.push_back(std::move(b));
      continue;
    }
    b.first = e;
    int cur = s;
    Vertex entry = e;
    for (;;) {
      seen[cur] = 1;
      b.segs.push_back(cur);
      Vertex exit = far_end(cur, entry);
      if (!joint[exit]) {
        b.last = exit;
        break;
      }
      Vertex p = joint[exit];
      b.facing.push_back({exit, p});
      cur = seg_of_end[p];
      entry = p;
    }
    out.push_back(std::move(b));
  }
  return out;
}

SegmentSystem split_into_segments(const RainbowPath& p, int L, int n, const EndpointThresholds& thr) {
  if (L < 2) throw std::invalid_argument("segment length L must be at least 2");
  const int len = static_cast<int>(p.vertices.size());
  if (len < 2 * L) throw PathTooShort("path of " + std::to_string(len) + " vertices is shorter than 2L = " + std::to_string(2 * L));
  SegmentSystem sys;
  sys.n = n;
  sys.L = L;
  sys.thr = thr;
  sys.path = p.vertices;
  sys.path_colors = p.colors;
  int k = len / L;
  if (k % 2) --k;  // both extreme endpoints must be of type A
  sys.intervals = k;
  const size_t sz = static_cast<size_t>(n) + 1;
  sys.pos.assign(sz, -1);
  sys.interval_of.assign(sz, -1);
  sys.seg_of_end.assign(sz, -1);
  sys.joint.assign(sz, 0);
  sys.type.assign(sz, 0);
  sys.in_b1.assign(sz, 0);
  sys.count_b1.assign(sz, -1);
  sys.count_a2.assign(sz, -1);
  sys.count_final.assign(sz, -1);
  sys.interval_used.assign(static_cast<size_t>(k), 0);
  for (int i = 0; i < len; ++i) sys.pos[p.vertices[i]] = i;
  for (int j = 0; j < k; ++j) {
    Segment seg;
    seg.vertices.assign(p.vertices.begin() + j * L, p.vertices.begin() + (j + 1) * L);
    seg.colors.assign(p.colors.begin() + j * L, p.colors.begin() + (j + 1) * L - 1);
    if (j % 2) {
      std::reverse(seg.vertices.begin(), seg.vertices.end());
      std::reverse(seg.colors.begin(), seg.colors.end());
    }
    for (Vertex v : seg.vertices) sys.interval_of[v] = j;
    Vertex a = seg.vertices.front(), b = seg.vertices.back();
    sys.type[a] = static_cast<uint8_t>(EndType::A);
    sys.type[b] = static_cast<uint8_t>(EndType::B);
    sys.in_b1[b] = 1;
    sys.seg_of_end[a] = sys.seg_of_end[b] = j;
    sys.segs.push_back(std::move(seg));
  }
  for (int j = 0; j + 1 < k; ++j) {
    Vertex u = p.vertices[j * L + L - 1], w = p.vertices[(j + 1) * L];
    sys.joint[u] = w;
    sys.joint[w] = u;
  }
  sys.discarded.assign(p.vertices.begin() + k * L, p.vertices.end());
  sys.stats.r_initial = k;
  sys.stats.discarded = static_cast<int>(sys.discarded.size());
  return sys;
}

int expose_endpoint_degrees(const LayeredSample& s, SegmentSystem& sys, ExposeSide side, ExposureLedger& ledger) {
  const ColoredDigraph& d1 = s.cls[0];
  int bad = 0;
  if (side == ExposeSide::TowardB) {
    for (const auto& seg : sys.segs) {
      if (!seg.alive) continue;
      for (Vertex v : seg.vertices) {
        int c = 0;
        for (const Arc& a : d1.out(v)) c += sys.in_b1[a.to] ? 1 : 0;
        ledger.reveal({Quantity::CountToward, 1, 1, v, 0}, c);
        sys.count_b1[v] = c;
      }
    }
    for (Vertex a : sys.endpoints(EndType::A)) bad += sys.count_b1[a] < sys.thr.t180 ? 1 : 0;
    sys.stats.bad_step1 = bad;
  } else {
    std::vector<uint8_t> in_a(static_cast<size_t>(sys.n) + 1, 0);
    for (Vertex a : sys.endpoints(EndType::A)) in_a[a] = 1;
    for (Vertex b : sys.endpoints(EndType::B)) {
      int c = 0;
      for (const Arc& a : d1.out(b)) c += in_a[a.to] ? 1 : 0;
      ledger.reveal({Quantity::CountToward, 1, 2, b, 0}, c);
      sys.count_a2[b] = c;
      bad += c < sys.thr.t180 ? 1 : 0;
    }
    sys.stats.bad_step4 = bad;
  }
  return bad;
}

namespace {

struct HostCandidate {
  Vertex w;
  Color color;
  int interval;
  int index;  // position of w in its segment, A end = 0
};

bool blocked(const SegmentSystem& sys, int j) {
  for (int t = j - 1; t <= j + 1; ++t)
    if (t >= 0 && t < sys.intervals && sys.interval_used[t]) return true;
  return false;
}

int index_in_interval(const SegmentSystem& sys, Vertex w) {
  const int j = sys.interval_of[w];
  const int off = sys.pos[w] - j * sys.L;
  return j % 2 ? sys.L - 1 - off : off;
}

struct HostScan {
  std::vector<HostCandidate> list;
  int g3_arcs = 0;
  int placeable = 0;  // host conditions met, ignoring colors
};

HostScan hosts_for(const SegmentSystem& sys, const LayeredSample& s, Vertex u, const UsedColors& used,
                   ExposureLedger& ledger) {
  HostScan scan;
  ledger.touch({Quantity::G3OutArcs, 3, 0, u, 0}, s.cls[2].out_degree(u));
  for (const Arc& a : s.cls[2].out(u)) {
    const Vertex w = a.to;
    if (!s.g[2].has_edge(u, w)) continue;
    ++scan.g3_arcs;
    const int j = sys.interval_of[w];
    if (j < 0 || blocked(sys, j)) continue;
    const int i = index_in_interval(sys, w);
    if (i < 2 || i > sys.L - 3) continue;
    const Vertex next = sys.segs[j].vertices[i + 1];
    if (!sys.good_b1(next)) continue;
    ++scan.placeable;
    if (used.contains(a.color)) continue;
    scan.list.push_back({w, a.color, j, i});
  }
  std::stable_sort(scan.list.begin(), scan.list.end(),
                   [](const HostCandidate& x, const HostCandidate& y) { return x.interval < y.interval; });
  return scan;
}

// x hosts the item's front, y its back; the piece [a_y..y] is joined to the
// segment facing a_y.
void splice(SegmentSystem& sys, const HostCandidate& x, const HostCandidate& y, const Leftover& item,
            UsedColors& used) {
  const Segment sx = sys.segs[x.interval];
  const Segment sy = sys.segs[y.interval];
  const Vertex ay = sy.vertices.front();
  const Vertex nb = sys.joint[ay];
  const int jn = sys.seg_of_end[nb];
  const Segment sn = sys.segs[jn];

  auto head = [](const Segment& s, int i) {
    Segment out;
    out.vertices.assign(s.vertices.begin(), s.vertices.begin() + i + 1);
    out.colors.assign(s.colors.begin(), s.colors.begin() + i);
    return out;
  };
  auto tail = [](const Segment& s, int i) {
    Segment out;
    out.vertices.assign(s.vertices.begin() + i + 1, s.vertices.end());
    out.colors.assign(s.colors.begin() + i + 1, s.colors.end());
    return out;
  };
  Segment x1 = head(sx, x.index), x2 = tail(sx, x.index);
  Segment y1 = head(sy, y.index), y2 = tail(sy, y.index);

  Segment comb = x1;
  comb.colors.push_back(x.color);
  comb.vertices.insert(comb.vertices.end(), item.vertices.begin(), item.vertices.end());
  comb.colors.insert(comb.colors.end(), item.colors.begin(), item.colors.end());
  comb.colors.push_back(y.color);
  comb.vertices.insert(comb.vertices.end(), y1.vertices.rbegin(), y1.vertices.rend());
  comb.colors.insert(comb.colors.end(), y1.colors.rbegin(), y1.colors.rend());
  comb.colors.push_back(sys.path_colors[std::min(sys.pos[ay], sys.pos[nb])]);
  comb.vertices.insert(comb.vertices.end(), sn.vertices.begin(), sn.vertices.end());
  comb.colors.insert(comb.colors.end(), sn.colors.begin(), sn.colors.end());

  sys.segs[x.interval].alive = false;
  sys.segs[y.interval].alive = false;
  sys.segs[jn].alive = false;
  sys.interval_used[x.interval] = 1;
  sys.interval_used[y.interval] = 1;
  sys.interval_used[sys.interval_of[nb]] = 1;

  const int id_x2 = static_cast<int>(sys.segs.size());
  const int id_y2 = id_x2 + 1;
  const int id_c = id_x2 + 2;
  sys.type[x2.vertices.front()] = static_cast<uint8_t>(EndType::A);
  sys.type[y2.vertices.front()] = static_cast<uint8_t>(EndType::A);
  sys.type[ay] = sys.type[nb] = static_cast<uint8_t>(EndType::None);
  sys.joint[ay] = sys.joint[nb] = 0;
  sys.seg_of_end[ay] = sys.seg_of_end[nb] = -1;
  sys.seg_of_end[x2.vertices.front()] = sys.seg_of_end[x2.vertices.back()] = id_x2;
  sys.seg_of_end[y2.vertices.front()] = sys.seg_of_end[y2.vertices.back()] = id_y2;
  sys.seg_of_end[comb.vertices.front()] = sys.seg_of_end[comb.vertices.back()] = id_c;
  sys.segs.push_back(std::move(x2));
  sys.segs.push_back(std::move(y2));
  sys.segs.push_back(std::move(comb));
  used.add(x.color);
  used.add(y.color);
  ++sys.stats.absorptions;
}

bool any_cyclic(const SegmentSystem& sys) {
  for (const auto& b : sys.blocks())
    if (b.cyclic) return true;
  return false;
}

}  // namespace

std::variant<SegmentSystem, AbsorbFailure> absorb_leftovers(SegmentSystem sys, const std::vector<Leftover>& items,
                                                            const LayeredSample& s, UsedColors& used,
                                                            ExposureLedger& ledger) {
  UsedColors local = used;
  for (int it = 0; it < static_cast<int>(items.size()); ++it) {
    const Leftover& item = items[it];
    const Vertex u = item.vertices.front(), v = item.vertices.back();
    HostScan hu = hosts_for(sys, s, u, local, ledger);
    HostScan hv = u == v ? hu : hosts_for(sys, s, v, local, ledger);
    bool placed = false;
    for (size_t i = 0; i < hu.list.size() && !placed; ++i) {
      for (size_t k = 0; k < hv.list.size() && !placed; ++k) {
        const HostCandidate& x = hu.list[i];
        const HostCandidate& y = hv.list[k];
        if (x.w == y.w || std::abs(x.interval - y.interval) < 2 || x.color == y.color) continue;
        const Vertex ny = sys.joint[sys.a_end(y.interval)];
        const Vertex nx = sys.joint[sys.a_end(x.interval)];
        SegmentSystem trial = sys;
        UsedColors trial_used = local;
        if (ny && std::abs(sys.interval_of[ny] - x.interval) >= 2) {
          splice(trial, x, y, item, trial_used);
        } else if (nx && std::abs(sys.interval_of[nx] - y.interval) >= 2) {
          Leftover rev{{item.vertices.rbegin(), item.vertices.rend()}, {item.colors.rbegin(), item.colors.rend()}};
          splice(trial, y, x, rev, trial_used);
        } else {
          continue;
        }
        if (any_cyclic(trial)) continue;
        sys = std::move(trial);
        local = trial_used;
        placed = true;
      }
    }
    if (!placed) {
      AbsorbFailureReason why = AbsorbFailureReason::NoSeparatedHost;
      if (hu.g3_arcs == 0 || hv.g3_arcs == 0 || (u == v && hu.g3_arcs < 2))
        why = AbsorbFailureReason::NoUsableG3Arc;
      else if ((hu.placeable > 0 && hu.list.empty()) || (hv.placeable > 0 && hv.list.empty()))
        why = AbsorbFailureReason::ColorExhausted;
      return AbsorbFailure{it, why};
    }
  }
  sys.stage = 2;
  sys.stats.r_after_absorb = sys.live_count();
  used = local;
  return sys;
}

namespace {

Segment oriented(const Segment& s, Vertex first) {
  if (s.vertices.front() == first) return s;
  Segment r;
  r.vertices.assign(s.vertices.rbegin(), s.vertices.rend());
  r.colors.assign(s.colors.rbegin(), s.colors.rend());
  return r;
}

// merges segs[i..i+2] of block b
void merge_three(SegmentSystem& sys, const Block& b, size_t i) {
  const int s0 = b.segs[i], s1 = b.segs[i + 1], s2 = b.segs[i + 2];
  const auto f0 = b.facing[i], f1 = b.facing[i + 1];
  const Vertex outer0 = f0.first == sys.a_end(s0) ? sys.b_end(s0) : sys.a_end(s0);
  Segment m = oriented(sys.segs[s0], outer0);
  auto append = [&](const Segment& part, Vertex from, Vertex to) {
    m.colors.push_back(sys.path_colors[std::min(sys.pos[from], sys.pos[to])]);
    Segment o = oriented(part, to);
    m.vertices.insert(m.vertices.end(), o.vertices.begin(), o.vertices.end());
    m.colors.insert(m.colors.end(), o.colors.begin(), o.colors.end());
  };
  append(sys.segs[s1], f0.first, f0.second);
  append(sys.segs[s2], f1.first, f1.second);
  if (sys.type[m.vertices.front()] != static_cast<uint8_t>(EndType::A)) {
    std::reverse(m.vertices.begin(), m.vertices.end());
    std::reverse(m.colors.begin(), m.colors.end());
  }
  if (sys.type[m.vertices.front()] != static_cast<uint8_t>(EndType::A) ||
      sys.type[m.vertices.back()] != static_cast<uint8_t>(EndType::B))
    throw InternalInconsistency("merge broke endpoint parity");
  for (Vertex v : {f0.first, f0.second, f1.first, f1.second}) {
    sys.type[v] = static_cast<uint8_t>(EndType::None);
    sys.joint[v] = 0;
    sys.seg_of_end[v] = -1;
  }
  sys.segs[s0].alive = sys.segs[s1].alive = sys.segs[s2].alive = false;
  const int id = static_cast<int>(sys.segs.size());
  sys.seg_of_end[m.vertices.front()] = sys.seg_of_end[m.vertices.back()] = id;
  sys.segs.push_back(std::move(m));
  ++sys.stats.merges;
}

}  // namespace

std::variant<SegmentSystem, MergeFailure> merge_bad_endpoints(SegmentSystem sys, const LayeredSample& s,
                                                              ExposureLedger& ledger) {
  int round = 0;
  auto bad = [&](Vertex v) {
    const auto t = static_cast<EndType>(sys.type[v]);
    if (round > 0) return sys.count_final[v] < sys.thr.t200;
    if (t == EndType::A) return sys.count_b1[v] < sys.thr.t180;
    return sys.count_a2[v] < sys.thr.t180;
  };
  const int max_rounds = sys.n + 2;
  for (; round < max_rounds; ++round) {
    for (;;) {
      bool merged = false;
      for (const Block& b : sys.blocks()) {
        if (b.cyclic) throw InternalInconsistency("cyclic block");
        if (bad(b.first) || bad(b.last)) {
          const Vertex v = bad(b.first) ? b.first : b.last;
          return MergeFailure{v, b.segs.size() == 1 ? MergeFailureReason::SingleSegmentBlock
                                                    : MergeFailureReason::BadBlockExtreme};
        }
        for (size_t i = 0; i < b.facing.size(); ++i) {
          const auto f = b.facing[i];
          if (!bad(f.first) && !bad(f.second)) continue;
          auto pair_bad = [&](size_t k) { return bad(b.facing[k].first) || bad(b.facing[k].second); };
          const bool has_left = i > 0, has_right = i + 1 < b.facing.size();
          if (!has_left && !has_right) return MergeFailure{bad(f.first) ? f.first : f.second, MergeFailureReason::TwoSegmentBlock};
          size_t start;
          if (has_right && pair_bad(i + 1)) start = i;
          else if (has_left && pair_bad(i - 1)) start = i - 1;
          else start = has_right ? i : i - 1;
          merge_three(sys, b, start);
          merged = true;
          break;
        }
        if (merged) break;
      }
      if (!merged) break;
    }
    // recount against the final endpoint sets
    std::vector<uint8_t> in_a(static_cast<size_t>(sys.n) + 1, 0), in_b(static_cast<size_t>(sys.n) + 1, 0);
    for (Vertex a : sys.endpoints(EndType::A)) in_a[a] = 1;
    for (Vertex b : sys.endpoints(EndType::B)) in_b[b] = 1;
    bool any_bad = false;
    for (int id : sys.live()) {
      for (Vertex v : {sys.a_end(id), sys.b_end(id)}) {
        const auto& target = v == sys.a_end(id) ? in_b : in_a;
        int c = 0;
        for (const Arc& a : s.cls[0].out(v)) c += target[a.to] ? 1 : 0;
        ledger.touch({Quantity::CountToward, 1, static_cast<uint16_t>(3 + round), v, 0}, c);
        sys.count_final[v] = c;
        any_bad = any_bad || c < sys.thr.t200;
      }
    }
    sys.stats.recheck_rounds = round + 1;
    if (!any_bad) {
      sys.stage = 3;
      sys.stats.r_final = sys.live_count();
      return sys;
    }
  }
  return MergeFailure{0, MergeFailureReason::NoProgress};
}

std::vector<std::string> check_segment_system(const SegmentSystem& sys, const ParamSet* ps, bool require_cover) {
  std::vector<std::string> out;
  std::vector<int> hits(static_cast<size_t>(sys.n) + 1, 0);
  std::unordered_set<Color> colors;
  for (int id : sys.live()) {
    const Segment& seg = sys.segs[id];
    const std::string tag = "segment " + std::to_string(id) + ": ";
    if (seg.vertices.size() != seg.colors.size() + 1) {
      out.push_back(tag + "vertex/color count mismatch");
      continue;
    }
    const Vertex a = seg.vertices.front(), b = seg.vertices.back();
    if (sys.type[a] != static_cast<uint8_t>(EndType::A)) out.push_back(tag + "front is not type A");
    if (sys.type[b] != static_cast<uint8_t>(EndType::B)) out.push_back(tag + "back is not type B");
    if (sys.seg_of_end[a] != id || sys.seg_of_end[b] != id) out.push_back(tag + "endpoint index stale");
    for (size_t k = 1; k + 1 < seg.vertices.size(); ++k)
      if (sys.type[seg.vertices[k]] != 0) out.push_back(tag + "interior vertex carries an endpoint type");
    for (Vertex v : seg.vertices) ++hits[v];
    for (Color c : seg.colors) {
      if (!colors.insert(c).second) out.push_back(tag + "repeated color " + std::to_string(c));
      if (ps && ps->class_of(c) != 2 && ps->class_of(c) != 3) out.push_back(tag + "color outside C2 and C3");
    }
  }
  for (Vertex v = 1; v <= sys.n; ++v) {
    if (hits[v] > 1) out.push_back("vertex " + std::to_string(v) + " on two segments");
    if (require_cover && hits[v] != 1) out.push_back("vertex " + std::to_string(v) + " on no segment");
    if (Vertex w = sys.joint[v]) {
      if (sys.joint[w] != v) out.push_back("joint not symmetric at " + std::to_string(v));
      if (sys.pos[v] < 0 || sys.pos[w] < 0 || std::abs(sys.pos[v] - sys.pos[w]) != 1)
        out.push_back("joint " + std::to_string(v) + "-" + std::to_string(w) + " is not a path edge");
      if (sys.type[v] != sys.type[w] || sys.type[v] == 0)
        out.push_back("joint " + std::to_string(v) + "-" + std::to_string(w) + " joins different types");
    }
  }
  for (const Block& b : sys.blocks()) {
    if (b.cyclic) {
      out.push_back("cyclic block");
      continue;
    }
    if (sys.type[b.first] != static_cast<uint8_t>(EndType::A) || sys.type[b.last] != static_cast<uint8_t>(EndType::A))
      out.push_back("block extreme not of type A");
  }
  return out;
}

}  // namespace rainbow
