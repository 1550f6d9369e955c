#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "vfts/incubator.hpp"
#include "vfts/metric.hpp"
#include "vfts/nets.hpp"
#include "vfts/shortcut.hpp"
#include "vfts/single_sink.hpp"
#include "vfts/spanner.hpp"
#include "vfts/verify.hpp"

namespace vfts {

struct BuildConfig {
  double eps = 0.25;  // overall stretch target 1 + eps, 0 < eps < 1/2
  int k = 1;
  int dim = 2;
  bool validate = false;  // run structural validators after each stage

  double eps_base() const { return eps / 3.0; }    // drives the net-tree stage
  double eps_sink() const { return eps / 30.0; }   // root stretch 1 + 10*eps' = 1 + eps/3
};

struct BuildArtifacts {
  ColoredNets nets;
  IncubatorGraph graph;
  SigmaCut cut;
  Spanner h0;     // skeleton + directed non-skeleton edges
  Spanner hstar;  // final spanner after star replacement
  std::vector<int> sinks;                         // points that received a single-sink build
  std::map<int, std::vector<int>> in_star;        // sink -> incoming neighbor points
  std::map<int, std::vector<SinkEdge>> sink_edges;
};

/// Full pipeline: nets -> incubator graph -> zombies -> shortcuts -> induced
/// spanner -> directions, then every directed non-skeleton in-star is
/// replaced by a fault-tolerant single-sink spanner. Deterministic.
inline BuildArtifacts build_spanner(const MetricSpace& ms, const BuildConfig& cfg) {
  if (!(cfg.eps > 0.0 && cfg.eps < 0.5))
    throw std::invalid_argument("build_spanner: need 0 < eps < 1/2");
  const int n = ms.size();
  if (n < 2) throw std::invalid_argument("build_spanner: need n >= 2");
  if (cfg.k < 0 || cfg.k > n - 2)
    throw std::invalid_argument("build_spanner: need 0 <= k <= n-2");

  BuildArtifacts art;
  art.nets = build_nets(ms, cfg.k);
  if (cfg.validate) {
    auto viol = validate_nets(art.nets, ms);
    if (!viol.empty()) throw std::logic_error("net validation failed: " + viol.front().kind);
  }
  art.graph = build_incubator_graph(art.nets, ms, cfg.eps_base());
  assign_zombies(art.graph);
  art.cut = compute_sigma(cfg.k, diameter(ms), n, art.graph.gamma, &art.graph);
  shortcut_trees(art.graph, art.cut);
  art.h0 = induce_spanner(art.graph, ms);
  direct_edges(art.h0, art.nets);

  for (const auto& e : art.h0.edges) {
    if (is_skeleton(e.tags) || e.dir == 0) continue;
    int from = e.dir > 0 ? e.u : e.v;
    int into = e.dir > 0 ? e.v : e.u;
    art.in_star[into].push_back(from);
  }

  std::map<std::pair<int, int>, SpannerEdge> acc;
  for (const auto& e : art.h0.edges)
    if (is_skeleton(e.tags)) acc[{e.u, e.v}] = e;

  for (auto& [sink, incoming] : art.in_star) {
    std::sort(incoming.begin(), incoming.end());
    std::vector<int> pts = incoming;
    pts.push_back(sink);
    std::sort(pts.begin(), pts.end());
    auto edges = build_vftsss(ms, pts, sink, cfg.k, cfg.eps_sink(), cfg.dim);
    art.sinks.push_back(sink);
    for (const auto& se : edges) {
      auto it = acc.find({se.u, se.v});
      if (it == acc.end())
        acc[{se.u, se.v}] = {se.u, se.v, se.w, kTagSingleSink, 0};
      else
        it->second.tags |= kTagSingleSink;
    }
    art.sink_edges[sink] = std::move(edges);
  }

  art.hstar.n = n;
  art.hstar.edges.reserve(acc.size());
  for (const auto& [key, e] : acc) art.hstar.edges.push_back(e);
  return art;
}

/// Stats block for a built spanner. The hop diameter is measured at stretch
/// 1 + eps with no failures.
inline nlohmann::json spanner_stats(const Spanner& s, const MetricSpace& ms,
                                    const BuildConfig& cfg, double build_millis = -1.0) {
  nlohmann::json j;
  j["schema"] = 1;
  j["n"] = s.n;
  j["k"] = cfg.k;
  j["eps"] = cfg.eps;
  j["edges"] = s.edges.size();
  DegreeCensus dc = degree_census(s);
  j["maxDegree"] = dc.max_total;
  j["degreeByTag"] = dc.max_by_tag;
  j["lightness"] = lightness(s, ms);
  HopResult hr = hop_bounded_stretch(s, ms, 1.0 + cfg.eps);
  j["hopDiameter"] = hr.disconnected || hr.stretch_unmet ? -1 : hr.hops;
  if (build_millis >= 0.0) j["buildMillis"] = build_millis;
  return j;
}

}  // namespace vfts
