#include <cmath>

#include <doctest.h>

#include "test_util.hpp"
#include "vfts/assembly.hpp"
#include "vfts/verify.hpp"

using namespace vfts;

namespace {

Spanner complete_spanner(const MetricSpace& ms) {
  Spanner s;
  s.n = ms.size();
  for (int i = 0; i < ms.size(); ++i)
    for (int j = i + 1; j < ms.size(); ++j) s.edges.push_back({i, j, ms.dist(i, j), kTagCross, 0});
  return s;
}

Spanner from_pairs(const MetricSpace& ms, const std::vector<std::pair<int, int>>& pairs) {
  Spanner s;
  s.n = ms.size();
  for (auto [u, v] : pairs) s.edges.push_back({u, v, ms.dist(u, v), kTagLocalTree, 0});
  std::sort(s.edges.begin(), s.edges.end(), [](const SpannerEdge& a, const SpannerEdge& b) {
    return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
  });
  return s;
}

}  // namespace

TEST_CASE("complete graph has stretch one under any failures") {
  auto ms = testutil::normalized_uniform(8, 2, 2);
  auto s = complete_spanner(ms);
  auto rep = fault_stretch(s, ms, 2);
  CHECK(rep.exhaustive);
  CHECK(rep.max_stretch == 1.0);
  CHECK(rep.disconnections.empty());
}

TEST_CASE("failing a star center disconnects the leaves") {
  auto ms = testutil::normalized_uniform(4, 2, 3);
  auto s = from_pairs(ms, {{0, 1}, {0, 2}, {0, 3}});
  auto rep = fault_stretch(s, ms, 1);
  REQUIRE_FALSE(rep.disconnections.empty());
  CHECK(rep.disconnections[0].failed == std::vector<int>{0});
}

TEST_CASE("empty spanner on two or more points is a disconnection violation") {
  auto ms = testutil::normalized_uniform(5, 2, 9);
  Spanner s;
  s.n = 5;
  auto rep = fault_stretch(s, ms, 0);
  CHECK_FALSE(rep.disconnections.empty());
}

TEST_CASE("hop-bounded stretch on canonical graphs") {
  auto path = testutil::line({0.0, 1.0, 2.0, 3.0, 4.0});
  auto s = from_pairs(path, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto hr = hop_bounded_stretch(s, path, 1.0);
  CHECK(hr.hops == 4);
  auto complete = complete_spanner(path);
  CHECK(hop_bounded_stretch(complete, path, 1.0).hops == 1);

  SUBCASE("with a failure") {
    auto ms2 = testutil::line({0.0, 1.0, 2.0});
    auto ring = from_pairs(ms2, {{0, 1}, {1, 2}, {0, 2}});
    auto hf = hop_bounded_stretch(ring, ms2, 2.0, {1});
    CHECK(hf.hops == 1);  // the 0-2 edge survives
  }
  SUBCASE("unreachable pair reports a witness") {
    Spanner s2;
    s2.n = 3;
    s2.edges.push_back({0, 1, 1.0, kTagLocalTree, 0});
    auto ms2 = testutil::line({0.0, 1.0, 2.0});
    auto hr2 = hop_bounded_stretch(s2, ms2, 1.5);
    CHECK(hr2.disconnected);
  }
  SUBCASE("stretch that no hop count achieves") {
    auto ms2 = testutil::line({0.0, 1.0, 10.0});
    auto detour = from_pairs(ms2, {{0, 1}, {0, 2}});  // 1-2 only via 0: stretch 11/9
    auto hr3 = hop_bounded_stretch(detour, ms2, 1.01);
    CHECK(hr3.stretch_unmet);
  }
}

TEST_CASE("degree census") {
  auto ms = testutil::normalized_uniform(3, 2, 1);
  Spanner empty;
  empty.n = 3;
  CHECK(degree_census(empty).max_total == 0);
  auto tri = complete_spanner(ms);
  auto dc = degree_census(tri);
  CHECK(dc.max_total == 2);
  CHECK(dc.max_by_tag.at("cross") == 2);
  CHECK(dc.max_by_tag.at("local_tree") == 0);
}

TEST_CASE("lightness") {
  auto ms = testutil::line({0.0, 1.0, 2.0, 4.0});
  auto tree = mst(ms);
  Spanner s;
  s.n = 4;
  for (auto [u, v] : tree.edges) s.edges.push_back({u, v, ms.dist(u, v), kTagLocalTree, 0});
  CHECK(lightness(s, ms) == 1.0);
  // adding one extra pair whose weight equals the heaviest tree edge: 1 + 2/4
  s.edges.push_back({0, 2, ms.dist(0, 2), kTagCross, 0});
  std::sort(s.edges.begin(), s.edges.end(), [](const SpannerEdge& a, const SpannerEdge& b) {
    return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
  });
  CHECK(lightness(s, ms) == 1.5);
}

TEST_CASE("mutation: deleting edges eventually breaks verification") {
  auto ms = testutil::normalized_uniform(12, 2, 37);
  BuildConfig cfg;
  cfg.eps = 0.3;
  cfg.k = 1;
  cfg.dim = 2;
  auto art = build_spanner(ms, cfg);
  Spanner s = art.hstar;
  bool broke = false;
  while (!s.edges.empty()) {
    s.edges.pop_back();
    auto rep = fault_stretch(s, ms, 1);
    if (!rep.disconnections.empty() || rep.max_stretch > 1.3) {
      broke = true;
      break;
    }
  }
  CHECK(broke);
}

TEST_CASE("sampled mode is seed-deterministic and respects the gate") {
  auto ms = testutil::normalized_uniform(14, 2, 50);
  BuildConfig cfg;
  cfg.eps = 0.4;
  cfg.k = 2;
  cfg.dim = 2;
  auto art = build_spanner(ms, cfg);

  VerifyOptions opt;
  opt.mode = VerifyMode::Sampled;
  opt.seed = 99;
  opt.trials = 40;
  auto a = fault_stretch(art.hstar, ms, 2, opt, &art.nets.color);
  auto b = fault_stretch(art.hstar, ms, 2, opt, &art.nets.color);
  CHECK_FALSE(a.exhaustive);
  CHECK(a.max_stretch == b.max_stretch);
  CHECK(a.worst.failed == b.worst.failed);
  CHECK(a.worst.x == b.worst.x);

  SUBCASE("exhaustive auto-downgrades past the subset cap") {
    VerifyOptions tight;
    tight.mode = VerifyMode::Exhaustive;
    tight.exhaustive_cap = 10;  // C(14,2) = 91 > 10
    tight.trials = 20;
    auto c = fault_stretch(art.hstar, ms, 2, tight);
    CHECK_FALSE(c.exhaustive);
  }
  SUBCASE("parallel jobs reduce to the same witness") {
    VerifyOptions par = opt;
    par.jobs = 4;
    auto c = fault_stretch(art.hstar, ms, 2, par, &art.nets.color);
    CHECK(c.max_stretch == a.max_stretch);
    CHECK(c.worst.failed == a.worst.failed);
    CHECK(c.worst.x == a.worst.x);
    CHECK(c.worst.y == a.worst.y);
  }
}

TEST_CASE("weight consistency audit") {
  auto ms = testutil::normalized_uniform(6, 2, 21);
  auto s = complete_spanner(ms);
  CHECK(check_weights(s, ms).empty());
  s.edges[2].w *= 0.5;  // a shorter-than-metric weight would fake good stretch
  auto viol = check_weights(s, ms);
  REQUIRE(viol.size() == 1);
  CHECK(viol[0].find("weight") != std::string::npos);
}

TEST_CASE("stretch report json shape") {
  auto ms = testutil::normalized_uniform(6, 2, 4);
  auto s = complete_spanner(ms);
  auto rep = fault_stretch(s, ms, 1);
  auto j = stretch_report_json(rep);
  CHECK(j["maxStretch"] == 1.0);
  CHECK(j["exhaustive"] == true);
  CHECK(j["setsTested"].get<long long>() == 6);
}
