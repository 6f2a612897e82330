#include <doctest.h>

#include <algorithm>

#include "rainbow/cover.hpp"
#include "support.hpp"

using namespace rainbow;

namespace {

DangerousSets sets(int n, std::vector<Vertex> s, std::vector<Vertex> s00) {
  DangerousSets ds;
  std::sort(s.begin(), s.end());
  ds.s = s;
  ds.s0 = s;
  ds.s00 = s00;
  ds.in_s.assign(static_cast<size_t>(n) + 1, 0);
  ds.in_s00.assign(static_cast<size_t>(n) + 1, 0);
  for (Vertex v : s) ds.in_s[v] = 1;
  for (Vertex v : s00) ds.in_s00[v] = 1;
  return ds;
}

std::variant<PathCover, CoverFailure> run(const ColoredGraph& g, const DangerousSets& ds, int kappa) {
  UsedColors used(kappa);
  ExposureLedger l;
  return cover_dangerous(g, ds, used, l);
}

}  // namespace

TEST_CASE("empty S, empty cover") {
  ColoredGraph g(5, 5, {{1, 2, 1}});
  auto r = run(g, sets(5, {}, {}), 5);
  REQUIRE(std::holds_alternative<PathCover>(r));
  CHECK(std::get<PathCover>(r).paths.empty());
}

TEST_CASE("one dangerous vertex with a rainbow cherry") {
  ColoredGraph g(5, 9, {{1, 3, 4}, {3, 5, 7}});
  auto r = run(g, sets(5, {3}, {}), 9);
  REQUIRE(std::holds_alternative<PathCover>(r));
  const auto& pc = std::get<PathCover>(r);
  REQUIRE(pc.paths.size() == 1);
  CHECK(pc.paths[0].vertices == std::vector<Vertex>{1, 3, 5});
  CHECK(pc.paths[0].colors == std::vector<Color>{4, 7});
  CHECK(pc.covered == 1);
}

TEST_CASE("a cherry with one repeated color fails for want of fresh colors") {
  ColoredGraph g(5, 9, {{1, 3, 4}, {3, 5, 4}});
  auto r = run(g, sets(5, {3}, {}), 9);
  REQUIRE(std::holds_alternative<CoverFailure>(r));
  CHECK(std::get<CoverFailure>(r).vertex == 3);
  CHECK(std::get<CoverFailure>(r).reason == CoverFailureReason::NoFreshColors);
}

TEST_CASE("degree too low and no disjoint extension") {
  ColoredGraph one(4, 9, {{1, 2, 1}});
  CHECK(std::get<CoverFailure>(run(one, sets(4, {2}, {}), 9)).reason == CoverFailureReason::DegreeTooLow);
  // 2 has one neighbour outside S; the general phase does not route through S
  ColoredGraph g(4, 9, {{1, 2, 1}, {2, 3, 2}, {3, 4, 3}, {2, 4, 4}});
  auto r = run(g, sets(4, {2, 3, 4}, {}), 9);
  CHECK(std::get<CoverFailure>(r).vertex == 2);
  CHECK(std::get<CoverFailure>(r).reason == CoverFailureReason::NoDisjointExtension);
}

TEST_CASE("colors already used elsewhere are not fresh") {
  ColoredGraph g(5, 9, {{1, 3, 4}, {3, 5, 7}});
  UsedColors used(9);
  used.add(7);
  ExposureLedger l;
  auto r = cover_dangerous(g, sets(5, {3}, {}), used, l);
  CHECK(std::holds_alternative<CoverFailure>(r));
  CHECK(used.size() == 1);
}

TEST_CASE("S00 vertex covered through an S neighbour") {
  // 2 is in S and S00 with neighbours 1 (outside S) and 3 (in S, leading to 4 outside S)
  ColoredGraph g(6, 9, {{1, 2, 1}, {2, 3, 2}, {3, 4, 3}});
  auto r = run(g, sets(6, {2, 3}, {2}), 9);
  REQUIRE(std::holds_alternative<PathCover>(r));
  const auto& pc = std::get<PathCover>(r);
  REQUIRE(pc.paths.size() == 1);
  CHECK(pc.paths[0].vertices == std::vector<Vertex>{1, 2, 3, 4});
  CHECK(pc.paths[0].s00_phase);
  CHECK(check_cover(g, sets(6, {2, 3}, {2}), pc).empty());
}

TEST_CASE("separated S00 vertices never collide") {
  // adversarial: long G2 paths with S00 vertices at distance 5 apart, dense S around them
  RandomSource rng(17, "dist5");
  for (int t = 0; t < 200; ++t) {
    const int k = 2 + static_cast<int>(rng.below(4));  // number of S00 vertices
    const int n = 12 * k + 2;
    std::vector<Edge> e;
    Color c = 1;
    std::vector<Vertex> s, s00;
    // chain 1 - 2 - ... - n with extra chords; S00 at positions 3, 15, 27, ... (distance 12)
    for (Vertex v = 1; v < n; ++v) e.push_back({v, v + 1, c++});
    for (int j = 0; j < k; ++j) {
      const Vertex centre = 3 + 12 * j;
      s00.push_back(centre);
      s.push_back(centre);
      if (rng.bernoulli(0.5)) s.push_back(centre + 1);
      if (rng.bernoulli(0.5)) s.push_back(centre - 1);
      const Vertex far = centre + 6;
      if (far < n) {
        s.push_back(far);
        e.push_back({far - 2, far, c++});
      }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    ColoredGraph g(n, c + 5, e);
    auto ds = sets(n, s, s00);
    REQUIRE(*min_pairwise_distance(g, s00) >= 5);
    auto r = run(g, ds, c + 5);
    if (auto* pc = std::get_if<PathCover>(&r)) CHECK(check_cover(g, ds, *pc).empty());
  }
}

TEST_CASE("cover invariants and colour budget on sampled instances") {
  auto ps = apply_override(derive_parameters(600, 0.9, 0.9),
                           {std::array<double, 3>{0.015, 0.04, 0.015}, std::nullopt, std::array<int, 3>{380, 380, 380}});
  int successes = 0, with_paths = 0;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto s = sample_layered(ps, RandomSource(seed));
    ExposureLedger l(true);
    auto ds = grow_S(s, compute_S0(s, l), 4, l);
    UsedColors used(ps.kappa);
    auto r = cover_dangerous(s.g[1], ds, used, l);
    auto r2 = [&] {
      UsedColors u2(ps.kappa);
      ExposureLedger l2(false);
      return cover_dangerous(s.g[1], ds, u2, l2);
    }();
    CHECK(r.index() == r2.index());
    auto* pc = std::get_if<PathCover>(&r);
    if (!pc) {
      CHECK(used.size() == 0);
      continue;
    }
    ++successes;
    with_paths += !pc->paths.empty();
    CHECK(check_cover(s.g[1], ds, *pc).empty());
    size_t in_s00 = 0;
    for (Vertex v : ds.s) in_s00 += ds.in_s00[v];
    CHECK(used.size() == pc->colors_used());
    CHECK(pc->colors_used() <= 4 * in_s00 + 2 * (ds.s.size() - in_s00));
    CHECK(pc->covered == ds.s.size());
    // the residue after removing covered vertices misses S, and endpoints are outside S
    std::vector<uint8_t> on(static_cast<size_t>(s.n()) + 1, 0);
    for (const auto& p : pc->paths) {
      for (Vertex v : p.vertices) on[v] = 1;
      CHECK_FALSE(ds.contains(p.vertices.front()));
      CHECK_FALSE(ds.contains(p.vertices.back()));
    }
    for (Vertex v = 1; v <= s.n(); ++v)
      if (!on[v]) CHECK_FALSE(ds.contains(v));
    const auto& p2 = std::get<PathCover>(r2);
    REQUIRE(p2.paths.size() == pc->paths.size());
    for (size_t i = 0; i < p2.paths.size(); ++i) CHECK(p2.paths[i].vertices == pc->paths[i].vertices);
  }
  CHECK(successes > 0);
  CHECK(with_paths > 0);
}
