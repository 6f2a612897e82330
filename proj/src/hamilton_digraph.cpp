#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "rainbow/linker.hpp"

namespace rainbow {

bool is_hamilton_cycle(const std::vector<std::vector<int>>& out, const std::vector<int>& cycle) {
  const size_t r = out.size();
  if (cycle.size() != r || r < 2) return false;
  std::vector<uint8_t> seen(r, 0);
  for (int v : cycle) {
    if (v < 0 || static_cast<size_t>(v) >= r || seen[v]) return false;
    seen[v] = 1;
  }
  for (size_t i = 0; i < r; ++i) {
    const auto& o = out[cycle[i]];
    if (std::find(o.begin(), o.end(), cycle[(i + 1) % r]) == o.end()) return false;
  }
  return true;
}

namespace {

// dp[mask] = set of end vertices v such that some path from 0 visits exactly mask
// and ends at v; masks always contain vertex 0, indexed by mask >> 1.
std::variant<std::vector<int>, NotFound> exact(const std::vector<std::vector<int>>& out) {
  const int r = static_cast<int>(out.size());
  std::vector<uint32_t> in_mask(static_cast<size_t>(r), 0);
  for (int u = 0; u < r; ++u)
    for (int v : out[u])
      if (v != u) in_mask[v] |= 1u << u;
  const uint32_t full = r == 32 ? ~0u : (1u << r) - 1;
  std::vector<uint32_t> dp(static_cast<size_t>(1) << (r - 1), 0);
  dp[0] = 1u;  // mask {0}, end 0
  for (uint32_t half = 0; half < dp.size(); ++half) {
    const uint32_t ends = dp[half];
    if (!ends) continue;
    const uint32_t mask = (half << 1) | 1u;
    for (int v = 1; v < r; ++v) {
      if (mask >> v & 1u) continue;
      if (in_mask[v] & ends) dp[(mask | (1u << v)) >> 1] |= 1u << v;
    }
  }
  const uint32_t last = dp[full >> 1] & in_mask[0];
  if (!last) return NotFound{true};
  std::vector<int> cyc;
  uint32_t mask = full;
  int v = std::countr_zero(last);
  while (v != 0) {
    cyc.push_back(v);
    const uint32_t prev_mask = mask & ~(1u << v);
    const uint32_t cands = dp[prev_mask >> 1] & in_mask[v];
    mask = prev_mask;
    v = std::countr_zero(cands);
  }
  cyc.push_back(0);
  std::reverse(cyc.begin(), cyc.end());
  return cyc;
}

// Depth-first search over arc choices. Each vertex needs one out-arc and one
// in-arc; a choice kills the competing arcs at both ends and the arc that would
// close the grown chain into a short cycle. A vertex left with a single option
// takes it at once, and branching happens at the vertex with the fewest options.
class Search {
 public:
  explicit Search(const std::vector<std::vector<int>>& out) : r_(static_cast<int>(out.size())) {
    out_arcs_.resize(static_cast<size_t>(r_));
    in_arcs_.resize(static_cast<size_t>(r_));
    for (int u = 0; u < r_; ++u)
      for (int v : out[u]) {
        const int a = static_cast<int>(from_.size());
        from_.push_back(u);
        to_.push_back(v);
        out_arcs_[u].push_back(a);
        in_arcs_[v].push_back(a);
      }
  }

  // budget counts arc choices
  bool run(RandomSource& rng, long long budget, std::vector<int>& cycle) {
    budget_ = budget;
    noise_.resize(from_.size());
    for (auto& x : noise_) x = rng.next();
    State st;
    st.alive.assign(from_.size(), 1);
    st.outc.resize(static_cast<size_t>(r_));
    st.inc.resize(static_cast<size_t>(r_));
    for (int u = 0; u < r_; ++u) {
      st.outc[u] = static_cast<int>(out_arcs_[u].size());
      st.inc[u] = static_cast<int>(in_arcs_[u].size());
    }
    st.succ.assign(static_cast<size_t>(r_), -1);
    st.pred.assign(static_cast<size_t>(r_), -1);
    st.other_end.resize(static_cast<size_t>(r_));
    std::iota(st.other_end.begin(), st.other_end.end(), 0);
    st.len.assign(static_cast<size_t>(r_), 1);
    std::vector<int> queue(static_cast<size_t>(r_));
    std::iota(queue.begin(), queue.end(), 0);
    if (!propagate(st, queue) || !solve(st)) return false;
    cycle.clear();
    int v = 0;
    for (int i = 0; i < r_; ++i, v = found_.succ[v]) cycle.push_back(v);
    return true;
  }

 private:
  struct State {
    std::vector<uint8_t> alive;
    std::vector<int> outc, inc, succ, pred;
    std::vector<int> other_end;  // for chain endpoints: the opposite endpoint
    std::vector<int> len;        // chain length, valid at the start vertex
    int chosen = 0;
  };

  int r_;
  std::vector<int> from_, to_;
  std::vector<std::vector<int>> out_arcs_, in_arcs_;
  std::vector<uint64_t> noise_;
  long long budget_ = 0;
  State found_;

  bool kill(State& st, int a, std::vector<int>& queue) const {
    if (!st.alive[a]) return true;
    st.alive[a] = 0;
    const int u = from_[a], v = to_[a];
    if (st.succ[u] < 0) {
      if (--st.outc[u] == 0) return false;
      if (st.outc[u] == 1) queue.push_back(u);
    }
    if (st.pred[v] < 0) {
      if (--st.inc[v] == 0) return false;
      if (st.inc[v] == 1) queue.push_back(v);
    }
    return true;
  }

  bool choose(State& st, int a, std::vector<int>& queue) {
    --budget_;
    const int u = from_[a], v = to_[a];
    if (!st.alive[a] || st.succ[u] >= 0 || st.pred[v] >= 0) return false;
    const int s = st.other_end[u];  // start of the chain ending at u
    const int e = st.other_end[v];  // end of the chain starting at v
    if (s == v) {
      // closing arc, only left alive once the chain spans every vertex
      st.succ[u] = v;
      st.pred[v] = u;
      ++st.chosen;
      return st.len[s] == r_;
    }
    st.succ[u] = v;
    st.pred[v] = u;
    ++st.chosen;
    for (int b : out_arcs_[u])
      if (b != a && !kill(st, b, queue)) return false;
    for (int b : in_arcs_[v])
      if (b != a && !kill(st, b, queue)) return false;
    st.other_end[s] = e;
    st.other_end[e] = s;
    st.len[s] += st.len[v];
    if (st.len[s] < r_)
      for (int b : out_arcs_[e])
        if (to_[b] == s && !kill(st, b, queue)) return false;
    return true;
  }

  bool propagate(State& st, std::vector<int>& queue) {
    while (!queue.empty()) {
      const int x = queue.back();
      queue.pop_back();
      if (st.succ[x] < 0) {
        if (st.outc[x] == 0) return false;
        if (st.outc[x] == 1)
          for (int a : out_arcs_[x])
            if (st.alive[a]) {
              if (!choose(st, a, queue)) return false;
              break;
            }
      }
      if (st.pred[x] < 0) {
        if (st.inc[x] == 0) return false;
        if (st.inc[x] == 1)
          for (int a : in_arcs_[x])
            if (st.alive[a]) {
              if (!choose(st, a, queue)) return false;
              break;
            }
      }
    }
    return true;
  }

  bool solve(State& st) {
    if (st.chosen == r_) {
      found_ = st;
      return true;
    }
    if (budget_ <= 0) return false;
    // most constrained open side
    int best = -1, best_count = 0;
    bool best_out = true;
    for (int x = 0; x < r_; ++x) {
      if (st.succ[x] < 0 && (best < 0 || st.outc[x] < best_count)) {
        best = x;
        best_count = st.outc[x];
        best_out = true;
      }
      if (st.pred[x] < 0 && (best < 0 || st.inc[x] < best_count)) {
        best = x;
        best_count = st.inc[x];
        best_out = false;
      }
    }
    std::vector<int> options;
    for (int a : best_out ? out_arcs_[best] : in_arcs_[best])
      if (st.alive[a]) options.push_back(a);
    std::sort(options.begin(), options.end(), [&](int a, int b) { return noise_[a] < noise_[b]; });
    for (int a : options) {
      State next = st;
      std::vector<int> queue;
      if (choose(next, a, queue) && propagate(next, queue) && solve(next)) return true;
      if (budget_ <= 0) return false;
    }
    return false;
  }
};

}  // namespace

std::variant<std::vector<int>, NotFound> hamilton_digraph(const std::vector<std::vector<int>>& out,
                                                          const HamiltonOptions& opt, RandomSource rng) {
  const int r = static_cast<int>(out.size());
  if (r < 2) return NotFound{true};
  std::vector<std::vector<int>> clean(static_cast<size_t>(r));
  for (int u = 0; u < r; ++u) {
    for (int v : out[u])
      if (v != u && v >= 0 && v < r) clean[u].push_back(v);
    std::sort(clean[u].begin(), clean[u].end());
    clean[u].erase(std::unique(clean[u].begin(), clean[u].end()), clean[u].end());
  }
  for (int u = 0; u < r; ++u)
    if (clean[u].empty()) return NotFound{true};
  if (r <= opt.exact_limit && r <= 30) {
    auto res = exact(clean);
    if (auto* cyc = std::get_if<std::vector<int>>(&res))
      if (!is_hamilton_cycle(clean, *cyc)) throw InternalInconsistency("exact search returned a non-cycle");
    return res;
  }
  const long long total = opt.budget >= 0 ? opt.budget : 50LL * r * r;
  const int restarts = std::max(1, opt.restarts);
  Search search(clean);
  std::vector<int> cycle;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    RandomSource sub = rng.split(static_cast<uint64_t>(attempt));
    if (search.run(sub, total / restarts, cycle)) {
      if (!is_hamilton_cycle(clean, cycle)) throw InternalInconsistency("heuristic returned a non-cycle");
      return cycle;
    }
  }
  return NotFound{false};
}

}  // namespace rainbow
