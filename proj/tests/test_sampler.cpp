#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rainbow/sampler.hpp"
#include "support.hpp"

using namespace rainbow;
using testing::digraph;

namespace {

using ArcList = std::vector<std::array<int, 3>>;

// n = 4, κ = 9, C1 = 1..3, C2 = 4..6, C3 = 7..9
LayeredSample hand(const ArcList& l1, const ArcList& l2, const ArcList& l3, std::vector<Coin> coins = {}) {
  auto ps = bare_params(4, 9, {3, 3, 3});
  std::array<ColoredDigraph, 3> full{digraph(4, 9, l1), digraph(4, 9, l2), digraph(4, 9, l3)};
  return sample_from_layers(ps, std::move(full), std::move(coins));
}

bool same_sample(const LayeredSample& a, const LayeredSample& b) {
  for (int i = 0; i < 3; ++i)
    for (Vertex u = 1; u <= a.n(); ++u) {
      auto x = a.full[i].out(u), y = b.full[i].out(u);
      if (x.size() != y.size()) return false;
      for (size_t k = 0; k < x.size(); ++k)
        if (x[k].to != y[k].to || x[k].color != y[k].color) return false;
    }
  if (a.coins.size() != b.coins.size()) return false;
  for (size_t k = 0; k < a.coins.size(); ++k)
    if (a.coins[k].lo != b.coins[k].lo || a.coins[k].hi != b.coins[k].hi || a.coins[k].bit != b.coins[k].bit ||
        a.coins[k].layer != b.coins[k].layer)
      return false;
  return true;
}

}  // namespace

TEST_CASE("single D1 arc becomes an edge with its color") {
  auto s = hand({{1, 2, 7}}, {}, {});
  auto g = merge_to_colored_graph(s);
  CHECK(g.edge_count() == 1);
  CHECK(*g.color(1, 2) == 7);
  CHECK(s.g[0].edge_count() == 0);  // color 7 is not in C1
}

TEST_CASE("D1 color wins over D3") {
  auto s = hand({{2, 1, 2}}, {}, {{1, 2, 8}});
  auto g = merge_to_colored_graph(s);
  CHECK(*g.color(1, 2) == 2);
  CHECK(s.g[0].has_edge(1, 2));
  CHECK_FALSE(s.g[2].has_edge(1, 2));
}

TEST_CASE("both D1 arcs: the logged coin picks the color") {
  for (uint8_t bit : {0, 1}) {
    auto s = hand({{1, 2, 1}, {2, 1, 3}}, {}, {}, {{1, 2, 1, bit}});
    auto g = merge_to_colored_graph(s);
    CHECK(*g.color(1, 2) == (bit == 0 ? 1 : 3));
    CHECK(*s.g[0].color(1, 2) == (bit == 0 ? 1 : 3));
    CHECK(s.g[0].edge_count() == 1);
    CHECK(s.coin(2, 1) == bit);
  }
}

TEST_CASE("D1 arc against a reverse D1° arc outside C1 enters G1 only with the coin") {
  auto in = hand({{1, 2, 2}, {2, 1, 8}}, {}, {}, {{1, 2, 1, 0}});
  CHECK(*in.g[0].color(1, 2) == 2);
  auto out = hand({{1, 2, 2}, {2, 1, 8}}, {}, {}, {{1, 2, 1, 1}});
  CHECK(out.g[0].edge_count() == 0);
  CHECK(*merge_to_colored_graph(out).color(1, 2) == 8);
}

TEST_CASE("G2 needs the reverse pair clear of D1° and D2°") {
  auto blocked = hand({}, {{1, 2, 5}, {2, 1, 8}}, {}, {{1, 2, 2, 0}});
  CHECK(blocked.cls[1].has_arc(1, 2));
  CHECK(blocked.g[1].edge_count() == 0);
  auto by_d1 = hand({{3, 1, 8}}, {{1, 3, 5}}, {});
  CHECK(by_d1.g[1].edge_count() == 0);
  auto clear = hand({}, {{1, 2, 5}}, {});
  CHECK(*clear.g[1].color(1, 2) == 5);
}

TEST_CASE("G3 needs the pair clear of every reverse arc and of higher layers") {
  CHECK(hand({}, {}, {{1, 2, 8}}).g[2].has_edge(1, 2));
  CHECK_FALSE(hand({}, {}, {{1, 2, 8}, {2, 1, 9}}, {{1, 2, 3, 0}}).g[2].has_edge(1, 2));
  CHECK_FALSE(hand({}, {{2, 1, 8}}, {{1, 2, 8}}).g[2].has_edge(1, 2));
  CHECK_FALSE(hand({}, {{1, 2, 1}}, {{1, 2, 8}}).g[2].has_edge(1, 2));
}

TEST_CASE("empty layers give empty outputs") {
  auto s = hand({}, {}, {});
  for (int i = 0; i < 3; ++i) {
    CHECK(s.cls[i].arc_count() == 0);
    CHECK(s.g[i].edge_count() == 0);
  }
  CHECK(merge_to_colored_graph(s).edge_count() == 0);
}

TEST_CASE("zero probabilities sample nothing") {
  auto ps = apply_override(derive_parameters(100, 0.3, 0.3), {std::array<double, 3>{0, 0, 0}, std::nullopt, std::nullopt});
  auto s = sample_layered(ps, RandomSource(1));
  for (int i = 0; i < 3; ++i) CHECK(s.full[i].arc_count() == 0);
  CHECK(s.coins.empty());
}

TEST_CASE("sampling is deterministic, serial and OpenMP agree") {
  auto ps = derive_parameters(400, 1.5, 0.6);
  auto a = sample_layered(ps, RandomSource(9, "sample"), Parallelism::Serial);
  auto b = sample_layered(ps, RandomSource(9, "sample"), Parallelism::Serial);
  auto c = sample_layered(ps, RandomSource(9, "sample"), Parallelism::OpenMP);
  CHECK(same_sample(a, b));
  CHECK(same_sample(a, c));
  auto d = sample_layered(ps, RandomSource(10, "sample"));
  CHECK_FALSE(same_sample(a, d));
}

TEST_CASE("G layers are edge-disjoint, class-disciplined, and sit inside the merged graph") {
  auto ps = apply_override(derive_parameters(150, 0.9, 0.9),
                           {std::array<double, 3>{0.05, 0.08, 0.05}, std::nullopt, std::nullopt});
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    auto s = sample_layered(ps, RandomSource(seed));
    auto merged = merge_to_colored_graph(s);
    CHECK(validate_colored_graph(merged).empty());
    for (int i = 0; i < 3; ++i) {
      for (const Edge& e : s.g[i].edges()) {
        CHECK(ps.class_of(e.c) == i + 1);
        CHECK(merged.has_edge(e.u, e.v));
        CHECK(*merged.color(e.u, e.v) == e.c);
        for (int j = i + 1; j < 3; ++j) CHECK_FALSE(s.g[j].has_edge(e.u, e.v));
      }
      for (Vertex u = 1; u <= s.n(); ++u)
        for (const Arc& a : s.cls[i].out(u)) {
          CHECK(ps.class_of(a.color) == i + 1);
          CHECK(*s.full[i].arc_color(u, a.to) == a.color);
        }
    }
    // merged edge iff some layer holds either arc
    size_t expect = 0;
    for (Vertex u = 1; u <= s.n(); ++u)
      for (Vertex v = u + 1; v <= s.n(); ++v) {
        bool any = false;
        for (int i = 0; i < 3; ++i) any = any || s.full[i].has_arc(u, v) || s.full[i].has_arc(v, u);
        expect += any;
        CHECK(any == merged.has_edge(u, v));
      }
    CHECK(merged.edge_count() == expect);
  }
}

TEST_CASE("D2° arc frequency matches p2") {
  const int n = 50;
  auto ps = derive_parameters(n, 0.3, 0.3);
  const int samples = 20000;
  RandomSource root(2024, "freq");
  long long arcs = 0;
  for (int t = 0; t < samples; ++t) {
    auto out = sample_layer_arcs(n, ps.kappa, ps.p[1], root.split(static_cast<uint64_t>(t)), Parallelism::Serial);
    for (const auto& l : out) arcs += static_cast<long long>(l.size());
  }
  const double trials = static_cast<double>(samples) * n * (n - 1);
  const double freq = arcs / trials;
  const double se = std::sqrt(ps.p[1] * (1 - ps.p[1]) / trials);
  CHECK(std::abs(freq - ps.p[1]) <= 3 * se);
}

TEST_CASE("out-lists are permuted, colors range over all of [kappa]") {
  auto out = sample_layer_arcs(300, 600, 0.2, RandomSource(5), Parallelism::Serial);
  int descents = 0;
  Color lo = 600, hi = 1;
  for (Vertex u = 1; u <= 300; ++u) {
    for (size_t k = 1; k < out[u].size(); ++k) descents += out[u][k].to < out[u][k - 1].to;
    for (const Arc& a : out[u]) {
      lo = std::min(lo, a.color);
      hi = std::max(hi, a.color);
      CHECK(a.to != u);
    }
  }
  CHECK(descents > 1000);
  CHECK(lo == 1);
  CHECK(hi == 600);
}

TEST_CASE("q2") {
  auto ps = derive_parameters(1000, 0.3, 0.3);
  auto s = sample_layered(ps, RandomSource(1));
  const double p1 = ps.p[0], p2 = ps.p[1];
  CHECK(s.q2 == doctest::Approx(2 * p2 * (1 - p2) * (1 + ps.theta_i[1]) / (1 + ps.theta) * (1 - p1) * (1 - p1))
                    .epsilon(1e-12));
}

TEST_CASE("lay round trip keeps layers and coins") {
  auto ps = derive_parameters(60, 3.0, 1.0);
  auto s = sample_layered(ps, RandomSource(8));
  std::stringstream ss;
  write_lay(ss, s);
  auto t = read_lay(ss);
  CHECK(same_sample(s, t));
  CHECK(merge_to_colored_graph(s) == merge_to_colored_graph(t));
  for (int i = 0; i < 3; ++i) CHECK(s.g[i] == t.g[i]);

  std::istringstream bad("lay 3 3 1 1 1\nlayer 1 1\n1 1 1\n");
  CHECK_THROWS_AS(read_lay(bad), ParseError);
}
