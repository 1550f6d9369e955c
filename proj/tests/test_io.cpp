#include <sstream>

#include <doctest.h>

#include "test_util.hpp"
#include "vfts/gen.hpp"
#include "vfts/io.hpp"
#include "vfts/spanner.hpp"

using namespace vfts;

TEST_CASE("csv points parse") {
  std::istringstream in("# comment\n0.5,1\n2,3.25\n\n4,5\n");
  auto pts = parse_points_csv(in);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == std::vector<double>{0.5, 1.0});
  CHECK(pts[2] == std::vector<double>{4.0, 5.0});

  std::istringstream bad("1,2\n3,oops\n");
  CHECK_THROWS_AS(parse_points_csv(bad), std::runtime_error);
}

TEST_CASE("json point and matrix parse") {
  auto j = nlohmann::json::parse(R"({"dim":2,"points":[[0,0],[3,4]]})");
  auto ms = parse_metric_json(j);
  CHECK(ms.size() == 2);
  CHECK(ms.dist(0, 1) == 5.0);

  auto m = nlohmann::json::parse("[[0,2],[2,0]]");
  auto mm = parse_metric_json(m);
  CHECK_FALSE(mm.has_coords());
  CHECK(mm.dist(0, 1) == 2.0);

  auto wrongdim = nlohmann::json::parse(R"({"dim":3,"points":[[0,0]]})");
  CHECK_THROWS_AS(parse_metric_json(wrongdim), std::runtime_error);
}

TEST_CASE("ragged points rejected") {
  CHECK_THROWS_AS(MetricSpace::from_points({{0.0, 1.0}, {2.0}}), std::invalid_argument);
}

TEST_CASE("generators") {
  SUBCASE("exp-spread-line doubling gaps") {
    auto pts = gen_exp_spread_line(8);
    std::vector<double> want{0, 2, 6, 14, 30, 62, 126, 254};
    REQUIRE(pts.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(pts[i][0] == want[i]);
  }
  SUBCASE("uniform cube is seed-reproducible") {
    auto a = gen_uniform_cube(10, 3, 7);
    auto b = gen_uniform_cube(10, 3, 7);
    CHECK(a == b);
    auto c = gen_uniform_cube(10, 3, 8);
    CHECK(a != c);
    for (const auto& p : a)
      for (double x : p) {
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
      }
  }
  SUBCASE("single point file") {
    CHECK(gen_points("uniform-cube", 1, 2, 1).size() == 1);
    CHECK(gen_points("exp-spread-line", 1, 1, 1) == std::vector<std::vector<double>>{{0.0}});
  }
  SUBCASE("unknown kind") { CHECK_THROWS_AS(gen_points("donut", 4, 2, 1), std::invalid_argument); }
}

TEST_CASE("points csv round trip") {
  auto pts = gen_uniform_cube(9, 2, 123);
  std::ostringstream out;
  write_points_csv(out, pts);
  std::istringstream in(out.str());
  auto back = parse_points_csv(in);
  CHECK(back == pts);  // %.17g survives the trip bit-exactly
}

TEST_CASE("spanner csv round trip is exact") {
  auto ms = testutil::normalized_uniform(9, 2, 31);
  Spanner s;
  s.n = 9;
  s.edges.push_back({0, 3, ms.dist(0, 3), kTagLocalTree, 0});
  s.edges.push_back({1, 4, ms.dist(1, 4), static_cast<std::uint8_t>(kTagCross | kTagForeign), 1});
  s.edges.push_back({2, 7, ms.dist(2, 7), kTagSingleSink, -1});
  s.edges.push_back({4, 8, ms.dist(4, 8), static_cast<std::uint8_t>(kTagLocalTree | kTagShortcut), 0});

  std::ostringstream out;
  write_spanner_csv(out, s);
  std::istringstream in(out.str());
  Spanner back = read_spanner_csv(in);
  CHECK(back.n == s.n);
  REQUIRE(back.edges.size() == s.edges.size());
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    CHECK(back.edges[i].u == s.edges[i].u);
    CHECK(back.edges[i].v == s.edges[i].v);
    CHECK(back.edges[i].w == s.edges[i].w);
    CHECK(back.edges[i].tags == s.edges[i].tags);
    CHECK(back.edges[i].dir == s.edges[i].dir);
  }
}

TEST_CASE("spanner csv guards") {
  std::istringstream nohdr("u,v,weight,tags,dir\n");
  CHECK_THROWS_AS(read_spanner_csv(nohdr), std::runtime_error);
  std::istringstream badrow("# vfts-spanner schema=1 n=3\n0,5,1.0,cross,none\n");
  CHECK_THROWS_AS(read_spanner_csv(badrow), std::runtime_error);
  std::istringstream badtag("# vfts-spanner schema=1 n=3\n0,1,1.0,sideways,none\n");
  CHECK_THROWS_AS(read_spanner_csv(badtag), std::runtime_error);
  std::istringstream dup(
      "# vfts-spanner schema=1 n=3\n0,1,1.0,cross,none\n0,1,1.0,cross,none\n");
  CHECK_THROWS_AS(read_spanner_csv(dup), std::runtime_error);
}

TEST_CASE("dot export carries tags") {
  Spanner s;
  s.n = 2;
  s.edges.push_back({0, 1, 2.0, static_cast<std::uint8_t>(kTagLocalTree | kTagCross), 1});
  std::ostringstream out;
  write_spanner_dot(out, s);
  auto text = out.str();
  CHECK(text.find("graph spanner {") != std::string::npos);
  CHECK(text.find("0 -- 1") != std::string::npos);
  CHECK(text.find("local_tree|cross") != std::string::npos);
  CHECK(text.find("dir=\"fwd\"") != std::string::npos);
}

TEST_CASE("tag strings") {
  CHECK(tags_to_string(0) == "none");
  CHECK(tags_to_string(kTagLocalTree | kTagSingleSink) == "local_tree|single_sink");
  CHECK(tags_from_string("local_tree|single_sink") ==
        (kTagLocalTree | kTagSingleSink));
  CHECK(tags_from_string("none") == 0);
}
