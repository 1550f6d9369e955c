#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "vfts/metric.hpp"

namespace vfts {

struct SinkEdge {
  int u = -1, v = -1;  // global point ids, u < v
  double w = 0.0;
  int charge = -1;  // endpoint the weight analysis charges this edge to
};

/// Rings around the sink with geometrically growing radii, one net per ring,
/// clusters by nearest net point and up to k+1 portals per cluster.
struct RingPartition {
  int sink = -1;
  double eps_prime = 0.0;
  double gamma_cap = 0.0;               // net-size cap (1/eps')^{4 dim}, rounded up
  std::vector<double> ring_radius;      // radius of ring i's outer boundary, ring_radius[0] = 1
  std::vector<std::vector<int>> ring_members;
  std::vector<std::vector<int>> ring_net;
  std::map<int, int> ring_of;           // point -> ring index (sink absent)
  std::map<int, int> cluster_of;        // point -> net point (sink absent)
  std::map<int, std::vector<int>> clusters;
  std::map<int, std::vector<int>> portals;
  std::map<int, double> cluster_radius_bound;  // net point -> eps' * r_{i-1}
};

/// Portal groups of size k+1 ordered by distance from the sink. groups[0] is
/// the sink alone; group j >= 1 attaches to group parent[j] < j.
struct PortalGroups {
  std::vector<std::vector<int>> groups;
  std::vector<int> parent;
};

inline int locate_ring(double d, double inv_eps, std::vector<double>& radii) {
  int i = 0;
  while (radii[i] < d) {
    if (i + 1 == static_cast<int>(radii.size())) radii.push_back(radii.back() * inv_eps);
    ++i;
  }
  return i;
}

inline std::vector<int> greedy_net_over(const MetricSpace& ms, const std::vector<int>& pts,
                                        double r) {
  std::vector<int> net;
  for (int x : pts) {
    bool covered = false;
    for (int y : net)
      if (ms.dist(x, y) <= r) {
        covered = true;
        break;
      }
    if (!covered) net.push_back(x);
  }
  return net;
}

inline RingPartition build_ring_partition(const MetricSpace& ms, const std::vector<int>& pts,
                                          int v, int k, double eps_prime, int dim) {
  if (!(eps_prime > 0.0 && eps_prime <= 1.0 / 6.0))
    throw std::invalid_argument("single sink: need 0 < eps' <= 1/6");
  if (dim < 1) throw std::invalid_argument("single sink: need dim >= 1");
  bool saw_sink = false;
  for (int x : pts) {
    if (x < 0 || x >= ms.size()) throw std::invalid_argument("single sink: point id out of range");
    if (x == v) saw_sink = true;
  }
  if (!saw_sink) throw std::invalid_argument("single sink: sink not among the points");

  RingPartition rp;
  rp.sink = v;
  rp.eps_prime = eps_prime;
  double inv = 1.0 / eps_prime;
  double cap = 1.0;
  for (int t = 0; t < 4 * dim; ++t) cap *= inv;
  rp.gamma_cap = std::ceil(cap);
  rp.ring_radius = {1.0};

  for (int x : pts) {
    if (x == v) continue;
    double d = ms.dist(v, x);
    if (!(d > 1.0)) throw std::invalid_argument("single sink: need inter-point distances > 1");
    int ring = locate_ring(d, inv, rp.ring_radius);
    if (ring >= static_cast<int>(rp.ring_members.size())) rp.ring_members.resize(ring + 1);
    rp.ring_members[ring].push_back(x);
    rp.ring_of[x] = ring;
  }

  rp.ring_net.resize(rp.ring_members.size());
  for (int i = 1; i < static_cast<int>(rp.ring_members.size()); ++i) {
    auto& mem = rp.ring_members[i];
    std::sort(mem.begin(), mem.end());
    double net_r = eps_prime * rp.ring_radius[i - 1];
    rp.ring_net[i] = greedy_net_over(ms, mem, net_r);
    for (int x : mem) {
      int y = -1;
      double bd = std::numeric_limits<double>::infinity();
      for (int cand : rp.ring_net[i]) {
        double d = ms.dist(x, cand);
        if (d < bd || (d == bd && cand < y)) {
          bd = d;
          y = cand;
        }
      }
      rp.cluster_of[x] = y;
      rp.clusters[y].push_back(x);
    }
    for (int y : rp.ring_net[i]) rp.cluster_radius_bound[y] = net_r;
  }
  for (auto& [y, c] : rp.clusters) {
    std::sort(c.begin(), c.end());
    int take = std::min<int>(k + 1, static_cast<int>(c.size()));
    rp.portals[y] = std::vector<int>(c.begin(), c.begin() + take);
  }
  return rp;
}

/// Connects consecutive portal groups completely bipartitely; group j hooks
/// halfway back, at least 2*Gamma+1 groups below, so each hop drops at least
/// two rings while the group forest stays logarithmically shallow.
inline PortalGroups group_portals(const std::vector<int>& q_sorted, int v, int k, double gamma_cap,
                                  const MetricSpace& ms, std::vector<SinkEdge>& out) {
  PortalGroups pg;
  pg.groups.push_back({v});
  pg.parent.push_back(-1);
  const int gsize = k + 1;
  for (std::size_t at = 0; at < q_sorted.size(); at += gsize) {
    std::size_t end = std::min(q_sorted.size(), at + gsize);
    pg.groups.emplace_back(q_sorted.begin() + at, q_sorted.begin() + end);
    int j = static_cast<int>(pg.groups.size()) - 1;
    double t = static_cast<double>(j) - 2.0 * gamma_cap - 1.0;
    int par = t <= 0.0 ? 0 : static_cast<int>(std::ceil(t / 2.0));
    pg.parent.push_back(par);
    for (int a : pg.groups[j])
      for (int b : pg.groups[par]) {
        int u = std::min(a, b), w = std::max(a, b);
        out.push_back({u, w, ms.dist(u, w), a});  // charged to the outer group
      }
  }
  return pg;
}

/// Recursion that wires a cluster to its portals: split the non-portal rest
/// evenly, build a half-radius net per side, pick portals per sub-cluster,
/// connect portal sets completely bipartitely, recurse at half radius.
inline void add_cluster_edges(const MetricSpace& ms, const std::vector<int>& cluster,
                              const std::vector<int>& portals, double r, int k,
                              std::vector<SinkEdge>& out, int depth = 0,
                              int* max_depth = nullptr) {
  if (max_depth && depth > *max_depth) *max_depth = depth;
  if (cluster.size() == portals.size()) return;
  std::vector<int> rest;
  std::set<int> pset(portals.begin(), portals.end());
  for (int x : cluster)
    if (!pset.count(x)) rest.push_back(x);
  std::size_t half = (rest.size() + 1) / 2;
  for (int side = 0; side < 2; ++side) {
    std::vector<int> part(side == 0 ? rest.begin() : rest.begin() + half,
                          side == 0 ? rest.begin() + half : rest.end());
    if (part.empty()) continue;
    std::vector<int> net = greedy_net_over(ms, part, r / 2.0);
    std::map<int, std::vector<int>> subs;
    for (int x : part) {
      int z = -1;
      double bd = std::numeric_limits<double>::infinity();
      for (int cand : net) {
        double d = ms.dist(x, cand);
        if (d < bd || (d == bd && cand < z)) {
          bd = d;
          z = cand;
        }
      }
      subs[z].push_back(x);
    }
    for (auto& [z, cz] : subs) {
      std::sort(cz.begin(), cz.end());
      int take = std::min<int>(k + 1, static_cast<int>(cz.size()));
      std::vector<int> qz(cz.begin(), cz.begin() + take);
      for (int a : portals)
        for (int b : qz) {
          int u = std::min(a, b), w = std::max(a, b);
          out.push_back({u, w, ms.dist(u, w), b});  // charged to the sub-cluster portal
        }
      add_cluster_edges(ms, cz, qz, r / 2.0, k, out, depth + 1, max_depth);
    }
  }
}

struct SinkBuildInfo {
  RingPartition rp;
  PortalGroups pg;
  std::vector<int> q_sorted;
  int max_add_depth = 0;
  std::size_t hq_edges = 0;
};

/// Fault-tolerant single-sink spanner over pts (which must contain v): the
/// portal group graph plus the per-cluster recursions. Output edges are
/// deduplicated and sorted.
inline std::vector<SinkEdge> build_vftsss(const MetricSpace& ms, const std::vector<int>& pts,
                                          int v, int k, double eps_prime, int dim,
                                          SinkBuildInfo* info = nullptr) {
  RingPartition rp = build_ring_partition(ms, pts, v, k, eps_prime, dim);
  std::vector<SinkEdge> raw;

  std::vector<int> q;
  for (const auto& [y, qs] : rp.portals) q.insert(q.end(), qs.begin(), qs.end());
  std::sort(q.begin(), q.end(), [&](int a, int b) {
    double da = ms.dist(v, a), db = ms.dist(v, b);
    return da != db ? da < db : a < b;
  });
  PortalGroups pg = group_portals(q, v, k, rp.gamma_cap, ms, raw);
  std::size_t hq = raw.size();

  int max_depth = 0;
  for (int i = 1; i < static_cast<int>(rp.ring_net.size()); ++i)
    for (int y : rp.ring_net[i])
      add_cluster_edges(ms, rp.clusters[y], rp.portals[y], rp.cluster_radius_bound[y], k, raw, 0,
                        &max_depth);

  std::set<std::pair<int, int>> seen;
  std::vector<SinkEdge> out;
  for (const auto& e : raw)
    if (seen.insert({e.u, e.v}).second) out.push_back(e);
  std::sort(out.begin(), out.end(),
            [](const SinkEdge& a, const SinkEdge& b) {
              return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
            });
  if (info) {
    info->rp = std::move(rp);
    info->pg = std::move(pg);
    info->q_sorted = std::move(q);
    info->max_add_depth = max_depth;
    info->hq_edges = hq;
  }
  return out;
}

}  // namespace vfts
