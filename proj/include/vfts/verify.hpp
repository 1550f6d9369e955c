#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vfts/incubator.hpp"
#include "vfts/metric.hpp"
#include "vfts/nets.hpp"
#include "vfts/spanner.hpp"

namespace vfts {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Single-source shortest paths on the spanner minus a failed set (dense
/// scan, exact doubles).
inline std::vector<double> sssp(const std::vector<std::vector<std::pair<int, double>>>& adj,
                                const std::vector<char>& failed, int src) {
  const int n = static_cast<int>(adj.size());
  std::vector<double> dist(n, kInf);
  std::vector<char> done(n, 0);
  dist[src] = 0.0;
  for (int round = 0; round < n; ++round) {
    int u = -1;
    double bd = kInf;
    for (int i = 0; i < n; ++i)
      if (!done[i] && !failed[i] && dist[i] < bd) {
        bd = dist[i];
        u = i;
      }
    if (u == -1) break;
    done[u] = 1;
    for (auto [v, w] : adj[u])
      if (!failed[v] && dist[u] + w < dist[v]) dist[v] = dist[u] + w;
  }
  return dist;
}

struct StretchWitness {
  std::vector<int> failed;
  int x = -1, y = -1;
  double ratio = 0.0;
  bool disconnected = false;
};

struct FaultStretchReport {
  double max_stretch = 0.0;
  StretchWitness worst;
  long long sets_tested = 0;
  bool exhaustive = false;
  std::vector<StretchWitness> disconnections;  // capped
};

enum class VerifyMode { Exhaustive, Sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Exhaustive;
  std::uint64_t seed = 1;
  int trials = 1000;
  int jobs = 1;
  long long exhaustive_cap = 50000;  // max C(n,k) before falling back to sampling
};

inline long long choose_capped(int n, int k, long long cap) {
  long long c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - i + 1) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

namespace detail {

inline bool witness_less(const StretchWitness& a, const StretchWitness& b) {
  if (a.failed != b.failed) return a.failed < b.failed;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

// Evaluates one failed set; folds the worst surviving-pair ratio and any
// disconnection into the accumulator.
inline void eval_failed_set(const std::vector<std::vector<std::pair<int, double>>>& adj,
                            const MetricSpace& ms, const std::vector<int>& set,
                            FaultStretchReport& acc) {
  const int n = ms.size();
  std::vector<char> failed(n, 0);
  for (int s : set) failed[s] = 1;
  for (int x = 0; x < n; ++x) {
    if (failed[x]) continue;
    std::vector<double> d = sssp(adj, failed, x);
    for (int y = x + 1; y < n; ++y) {
      if (failed[y]) continue;
      if (d[y] == kInf) {
        StretchWitness w{set, x, y, 0.0, true};
        if (acc.disconnections.size() < 16) acc.disconnections.push_back(w);
        continue;
      }
      double ratio = d[y] / ms.dist(x, y);
      StretchWitness w{set, x, y, ratio, false};
      if (ratio > acc.max_stretch ||
          (ratio == acc.max_stretch && acc.worst.x >= 0 && witness_less(w, acc.worst))) {
        acc.max_stretch = ratio;
        acc.worst = w;
      }
    }
  }
  ++acc.sets_tested;
}

inline void merge_reports(FaultStretchReport& into, const FaultStretchReport& from) {
  if (from.max_stretch > into.max_stretch ||
      (from.max_stretch == into.max_stretch && from.worst.x >= 0 &&
       (into.worst.x < 0 || witness_less(from.worst, into.worst))))
    into.max_stretch = from.max_stretch, into.worst = from.worst;
  into.sets_tested += from.sets_tested;
  for (const auto& d : from.disconnections)
    if (into.disconnections.size() < 16) into.disconnections.push_back(d);
}

}  // namespace detail

/// Builds the list of failed sets to test: all size-k subsets when C(n,k)
/// stays under the cap, otherwise seeded uniform samples plus adversarial
/// picks (highest-degree points; one whole color class when colors given).
inline std::vector<std::vector<int>> failed_sets_for(const Spanner& s, int k,
                                                     const VerifyOptions& opt,
                                                     const std::vector<int>* colors,
                                                     bool* exhaustive_out) {
  const int n = s.n;
  std::vector<std::vector<int>> sets;
  bool exhaustive = opt.mode == VerifyMode::Exhaustive &&
                    choose_capped(n, k, opt.exhaustive_cap) <= opt.exhaustive_cap;
  if (exhaustive_out) *exhaustive_out = exhaustive;
  if (k == 0) {
    sets.push_back({});
    return sets;
  }
  if (exhaustive) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      sets.push_back(idx);
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return sets;
  }
  std::mt19937_64 rng(opt.seed);
  for (int t = 0; t < opt.trials; ++t) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> set;
    for (int i = 0; i < k; ++i) {
      std::size_t pick = rng() % pool.size();
      set.push_back(pool[pick]);
      pool.erase(pool.begin() + pick);
    }
    std::sort(set.begin(), set.end());
    sets.push_back(std::move(set));
  }
  std::vector<int> deg(n, 0);
  for (const auto& e : s.edges) ++deg[e.u], ++deg[e.v];
  std::vector<int> by_degree(n);
  for (int i = 0; i < n; ++i) by_degree[i] = i;
  std::sort(by_degree.begin(), by_degree.end(), [&](int a, int b) {
    return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
  });
  std::vector<int> top(by_degree.begin(), by_degree.begin() + k);
  std::sort(top.begin(), top.end());
  sets.push_back(std::move(top));
  if (colors) {
    int cmax = *std::max_element(colors->begin(), colors->end());
    for (int c = 0; c <= cmax; ++c) {
      std::vector<int> cls;
      for (int i = 0; i < n && static_cast<int>(cls.size()) < k; ++i)
        if ((*colors)[i] == c) cls.push_back(i);
      if (!cls.empty()) sets.push_back(std::move(cls));
    }
  }
  return sets;
}

/// Max stretch over tested failed sets; exact shortest paths, disconnections
/// reported separately. Deterministic for a fixed seed regardless of jobs.
inline FaultStretchReport fault_stretch(const Spanner& s, const MetricSpace& ms, int k,
                                        const VerifyOptions& opt = {},
                                        const std::vector<int>* colors = nullptr) {
  if (k < 0 || k > ms.size() - 2)
    throw std::invalid_argument("fault_stretch: need 0 <= k <= n-2");
  auto adj = build_adjacency(s);
  FaultStretchReport rep;
  auto sets = failed_sets_for(s, k, opt, colors, &rep.exhaustive);
  int jobs = std::max(1, opt.jobs);
  if (jobs == 1 || sets.size() < 2) {
    for (const auto& set : sets) detail::eval_failed_set(adj, ms, set, rep);
    return rep;
  }
  std::vector<FaultStretchReport> parts(jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t)
    threads.emplace_back([&, t]() {
      std::size_t i;
      while ((i = next.fetch_add(1)) < sets.size())
        detail::eval_failed_set(adj, ms, sets[i], parts[t]);
    });
  for (auto& th : threads) th.join();
  for (const auto& p : parts) detail::merge_reports(rep, p);
  return rep;
}

struct HopResult {
  int hops = 0;              // minimal h with every surviving pair t-reached in <= h edges
  bool disconnected = false; // some surviving pair unreachable
  bool stretch_unmet = false;  // reachable but no hop count achieves factor t
  int wx = -1, wy = -1;
};

/// Layered relaxation by hop count. Measures the hop radius needed for
/// t-paths between every surviving pair (or from a fixed source when src >= 0).
inline HopResult hop_bounded_stretch(const Spanner& s, const MetricSpace& ms, double t,
                                     const std::vector<int>& failed_set = {}, int src = -1) {
  if (t < 1.0) throw std::invalid_argument("hop_bounded_stretch: need t >= 1");
  const int n = s.n;
  std::vector<char> failed(n, 0);
  for (int f : failed_set) failed[f] = 1;
  auto adj = build_adjacency(s);
  HopResult res;
  std::vector<int> sources;
  if (src >= 0)
    sources.push_back(src);
  else
    for (int i = 0; i < n; ++i)
      if (!failed[i]) sources.push_back(i);

  for (int x : sources) {
    if (failed[x]) continue;
    std::vector<double> cur(n, kInf);
    cur[x] = 0.0;
    int h = 0;
    auto offender = [&]() {
      for (int y = 0; y < n; ++y) {
        if (y == x || failed[y]) continue;
        if (cur[y] > t * ms.dist(x, y)) return y;
      }
      return -1;
    };
    while (offender() >= 0 && h < n) {
      std::vector<double> nxt = cur;
      for (int u = 0; u < n; ++u) {
        if (failed[u] || cur[u] == kInf) continue;
        for (auto [v, w] : adj[u])
          if (!failed[v] && cur[u] + w < nxt[v]) nxt[v] = cur[u] + w;
      }
      cur.swap(nxt);
      ++h;
    }
    int bad = offender();
    if (bad >= 0) {
      res.wx = x;
      res.wy = bad;
      if (cur[bad] == kInf)
        res.disconnected = true;
      else
        res.stretch_unmet = true;
      return res;
    }
    if (h > res.hops) {
      res.hops = h;
      res.wx = x;
    }
  }
  return res;
}

/// Every spanner edge must carry exactly the metric distance of its
/// endpoints; anything else means the file and the point set disagree.
inline std::vector<std::string> check_weights(const Spanner& s, const MetricSpace& ms) {
  std::vector<std::string> out;
  for (const auto& e : s.edges)
    if (e.w != ms.dist(e.u, e.v))
      out.push_back("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                    " weight " + std::to_string(e.w) + " != metric distance " +
                    std::to_string(ms.dist(e.u, e.v)));
  return out;
}

struct DegreeCensus {
  int max_total = 0;
  std::map<std::string, int> max_by_tag;
};

inline DegreeCensus degree_census(const Spanner& s) {
  DegreeCensus dc;
  std::vector<int> total(s.n, 0);
  std::map<std::string, std::vector<int>> per;
  for (const auto& [bit, name] : tag_names()) per[name].assign(s.n, 0);
  for (const auto& e : s.edges) {
    ++total[e.u];
    ++total[e.v];
    for (const auto& [bit, name] : tag_names())
      if (e.tags & bit) {
        ++per[name][e.u];
        ++per[name][e.v];
      }
  }
  for (int t : total) dc.max_total = std::max(dc.max_total, t);
  for (auto& [name, vec] : per) {
    int m = 0;
    for (int t : vec) m = std::max(m, t);
    dc.max_by_tag[name] = m;
  }
  return dc;
}

inline double lightness(const Spanner& s, const MetricSpace& ms) {
  double base = mst(ms).weight;
  if (base == 0.0) throw std::invalid_argument("lightness: degenerate space");
  return s.total_weight() / base;
}

// ---- structural checks against the construction state ----

/// Every incubator must hold a zombie within twice its lowest level radius.
inline std::vector<std::string> check_zombie_displacement(const IncubatorGraph& g,
                                                          const MetricSpace& ms) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < g.incs.size(); ++i) {
    const auto& inc = g.incs[i];
    double bound = 2.0 * std::ldexp(1.0, inc.lo);
    double d = ms.dist(inc.identity, g.zombie[i]);
    if (!(d <= bound))
      out.push_back("zombie displacement " + std::to_string(d) + " > " + std::to_string(bound) +
                    " at incubator (" + std::to_string(inc.identity) + ",[" +
                    std::to_string(inc.lo) + "," + std::to_string(inc.hi) + "])");
  }
  return out;
}

/// Climb from x's leaf to the ancestor covering `level`, reporting the
/// induced zombie path. Consecutive equal zombies collapse.
inline std::vector<int> climb_zombies(const IncubatorGraph& g, int x, int level, int* top_inc) {
  std::vector<int> pts;
  int cur = g.leaf_of(x);
  pts.push_back(g.zombie[cur]);
  while (g.incs[cur].hi < level) {
    cur = g.parent[cur];
    if (cur < 0) throw std::logic_error("climb past root");
    if (g.zombie[cur] != pts.back()) pts.push_back(g.zombie[cur]);
  }
  if (top_inc) *top_inc = cur;
  return pts;
}

inline double path_length(const MetricSpace& ms, const std::vector<int>& pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += ms.dist(pts[i - 1], pts[i]);
  return len;
}

struct ReachPath {
  std::vector<int> points;   // x first, a level-i incubator identity last
  bool used_foreign = false;
  double length = 0.0;
};

/// The concrete level-i color-c path from x: climb x's own tree if colors
/// match, otherwise hop once to the closest color-c incubator one level above
/// x's top and climb there; then descend to the target's identity leaf.
inline ReachPath reach_level_path(const IncubatorGraph& g, const ColoredNets& nets,
                                  const MetricSpace& ms, int x, int level, int c) {
  ReachPath rp;
  std::vector<int> up;
  int top_inc = -1;
  if (nets.color[x] == c) {
    up = climb_zombies(g, x, level, &top_inc);
  } else {
    rp.used_foreign = true;
    int istar = nets.top_level[x];
    int z = closest_member(nets.members[istar + 1][c], x, ms);
    up.push_back(x);
    for (int p : climb_zombies(g, z, level, &top_inc))
      if (p != up.back()) up.push_back(p);
  }
  int ident = g.incs[top_inc].identity;
  std::vector<int> down = climb_zombies(g, ident, level, nullptr);
  std::reverse(down.begin(), down.end());
  rp.points = up;
  for (int p : down)
    if (p != rp.points.back()) rp.points.push_back(p);
  rp.length = path_length(ms, rp.points);
  return rp;
}

/// Exhaustive reachability audit: every (x, level, color) with x outside the
/// level must admit the constructed path, all of whose edges exist in the
/// spanner, with length at most 17 * r_level.
inline std::vector<std::string> check_reachability(const IncubatorGraph& g,
                                                   const ColoredNets& nets, const MetricSpace& ms,
                                                   const Spanner& s) {
  std::vector<std::string> out;
  for (int i = 0; i <= nets.ell; ++i) {
    double bound = 17.0 * nets.level_radius(i);
    for (int x = 0; x < ms.size(); ++x) {
      if (nets.in_net(x, i)) continue;
      for (int c = 0; c <= nets.k; ++c) {
        ReachPath rp = reach_level_path(g, nets, ms, x, i, c);
        if (!(rp.length <= bound)) {
          out.push_back("reach path length " + std::to_string(rp.length) + " > " +
                        std::to_string(bound) + " for (x=" + std::to_string(x) +
                        ", level=" + std::to_string(i) + ", color=" + std::to_string(c) + ")");
          continue;
        }
        for (std::size_t t = 1; t < rp.points.size(); ++t)
          if (!s.find(rp.points[t - 1], rp.points[t])) {
            out.push_back("reach path edge missing: " + std::to_string(rp.points[t - 1]) + "-" +
                          std::to_string(rp.points[t]));
            break;
          }
      }
    }
  }
  return out;
}

struct WitnessPath {
  std::vector<int> points;
  double length = 0.0;
  int foreign_edges = 0;
  int pure_cross_edges = 0;
  bool valid = false;
  std::string error;
};

/// Builds the fault-tolerant witness path between x and y avoiding S: pick a
/// color with no failures, climb both endpoints to a common level and join
/// them by the cross edge the construction guarantees there.
inline WitnessPath build_witness_path(const IncubatorGraph& g, const ColoredNets& nets,
                                      const MetricSpace& ms, const Spanner& s, int x, int y,
                                      const std::vector<int>& failed, double eps) {
  WitnessPath wp;
  double d = ms.dist(x, y);
  int q = 0;
  while (std::ldexp(1.0, q) < 68.0 / eps) ++q;
  int i = 0;
  while (nets.level_radius(i + 1) < d) ++i;  // r_i < d <= r_{i+1}

  if (i <= q - 1) {
    const SpannerEdge* e = s.find(x, y);
    if (!e) {
      wp.error = "expected direct edge missing";
      return wp;
    }
    wp.points = {x, y};
    wp.length = e->w;
    if (is_pure(e->tags, kTagCross)) wp.pure_cross_edges = 1;
    wp.valid = true;
    return wp;
  }
  int j = i - q;
  int c = -1;
  {
    std::vector<char> bad(nets.k + 1, 0);
    for (int f : failed) bad[nets.color[f]] = 1;
    for (int cc = 0; cc <= nets.k; ++cc)
      if (!bad[cc]) {
        c = cc;
        break;
      }
  }
  if (c < 0) {
    wp.error = "no failure-free color";
    return wp;
  }

  auto half = [&](int p) -> ReachPath {
    if (nets.in_net(p, j)) {
      ReachPath rp;
      rp.points = {p};
      return rp;
    }
    return reach_level_path(g, nets, ms, p, j, c);
  };
  ReachPath p1 = half(x), p2 = half(y);
  wp.foreign_edges = (p1.used_foreign ? 1 : 0) + (p2.used_foreign ? 1 : 0);
  wp.points = p1.points;
  int xe = p1.points.back(), ye = p2.points.back();
  if (xe != ye) {
    const SpannerEdge* e = s.find(xe, ye);
    if (!e) {
      wp.error = "expected cross edge missing at joint level";
      return wp;
    }
    if (is_pure(e->tags, kTagCross)) wp.pure_cross_edges = 1;
  }
  for (auto it = p2.points.rbegin(); it != p2.points.rend(); ++it)
    if (*it != wp.points.back()) wp.points.push_back(*it);
  wp.length = path_length(ms, wp.points);
  std::vector<char> bad(ms.size(), 0);
  for (int f : failed) bad[f] = 1;
  for (int p : wp.points)
    if (bad[p]) {
      wp.error = "witness path visits a failed point";
      return wp;
    }
  for (std::size_t t = 1; t < wp.points.size(); ++t)
    if (!s.find(wp.points[t - 1], wp.points[t])) {
      wp.error = "witness path edge missing";
      return wp;
    }
  wp.valid = true;
  return wp;
}

inline nlohmann::json stretch_report_json(const FaultStretchReport& rep) {
  nlohmann::json j;
  j["maxStretch"] = rep.max_stretch;
  j["setsTested"] = rep.sets_tested;
  j["exhaustive"] = rep.exhaustive;
  if (rep.worst.x >= 0)
    j["worst"] = {{"failed", rep.worst.failed}, {"x", rep.worst.x}, {"y", rep.worst.y}};
  j["disconnections"] = nlohmann::json::array();
  for (const auto& d : rep.disconnections)
    j["disconnections"].push_back({{"failed", d.failed}, {"x", d.x}, {"y", d.y}});
  return j;
}

}  // namespace vfts
