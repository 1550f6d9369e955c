#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "vfts/metric.hpp"
#include "vfts/nets.hpp"
#include "vfts/spanner.hpp"

namespace vfts {

/// Node of the level-annotated net forest. A normal incubator occupies a
/// single level; a super incubator spans the contiguous interval [lo, hi]
/// left by merging a chain of single-child ancestors onto it.
struct Incubator {
  int identity = -1;
  int lo = 0, hi = 0;
  int color = -1;
};

enum class IncEdgeKind { LocalTree, Foreign, Cross, Shortcut };

struct IncubatorEdge {
  int a = -1, b = -1;      // incubator indices; child first for tree kinds
  IncEdgeKind kind = IncEdgeKind::LocalTree;
  int level = -1;          // tree: child-side level; cross: its level; shortcut: -1
};

struct IncubatorGraph {
  int n = 0, ell = 0, k = 0;
  double gamma = 0.0;
  std::vector<Incubator> incs;            // sorted by (identity, lo)
  std::vector<std::vector<int>> segs;     // per point: its incubator indices, ascending lo
  std::vector<int> parent;                // local parent incubator, -1 at roots
  std::vector<std::vector<int>> children; // local children
  std::vector<IncubatorEdge> edges;
  std::vector<int> zombie;                // occupying point per incubator, -1 unassigned
  bool zombies_assigned = false;

  int resolve(int x, int level) const {
    for (int idx : segs[x])
      if (incs[idx].lo <= level && level <= incs[idx].hi) return idx;
    throw std::logic_error("no incubator for point " + std::to_string(x) + " at level " +
                           std::to_string(level));
  }
  int leaf_of(int x) const { return segs[x].front(); }
};

inline double gamma_for(double eps) { return 34.0 + 272.0 / eps; }

inline int closest_member(const std::vector<int>& members, int x, const MetricSpace& ms) {
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (int y : members) {  // ascending, so ties keep the lowest index
    double d = ms.dist(x, y);
    if (d < bd) {
      bd = d;
      best = y;
    }
  }
  return best;
}

/// Builds the merged incubator graph: local/foreign tree edges and per-level
/// cross edges within gamma * r_i, with every chain of single-child incubators
/// collapsed into a super incubator that inherits the chain's edges.
inline IncubatorGraph build_incubator_graph(const ColoredNets& nets, const MetricSpace& ms,
                                            double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("build_incubator_graph: need 0 < eps < 1/2");
  const int n = ms.size();
  IncubatorGraph g;
  g.n = n;
  g.ell = nets.ell;
  g.k = nets.k;
  g.gamma = gamma_for(eps);

  // Closest next-level same-color point for each chain top, and unmerged
  // local child counts cc[x][i].
  std::vector<int> top_parent(n, -1);
  std::vector<std::vector<int>> cc(n);
  for (int x = 0; x < n; ++x) cc[x].assign(nets.top_level[x] + 1, 0);
  for (int z = 0; z < n; ++z) {
    int top = nets.top_level[z];
    for (int j = 0; j + 1 <= top; ++j) ++cc[z][j + 1];
    if (top < nets.ell) {
      int p = closest_member(nets.members[top + 1][nets.color[z]], z, ms);
      top_parent[z] = p;
      ++cc[p][top + 1];
    }
  }

  // Segment each point's level chain: a new incubator starts at every level
  // with two or more local children; single-child levels merge downward.
  g.segs.assign(n, {});
  for (int x = 0; x < n; ++x) {
    int top = nets.top_level[x];
    int lo = 0;
    for (int j = 1; j <= top; ++j) {
      if (cc[x][j] >= 2) {
        g.segs[x].push_back(static_cast<int>(g.incs.size()));
        g.incs.push_back({x, lo, j - 1, nets.color[x]});
        lo = j;
      }
    }
    g.segs[x].push_back(static_cast<int>(g.incs.size()));
    g.incs.push_back({x, lo, top, nets.color[x]});
  }

  const int m = static_cast<int>(g.incs.size());
  g.parent.assign(m, -1);
  g.children.assign(m, {});
  g.zombie.assign(m, -1);

  for (int x = 0; x < n; ++x) {
    for (int si = 0; si < static_cast<int>(g.segs[x].size()); ++si) {
      int idx = g.segs[x][si];
      const Incubator& inc = g.incs[idx];
      int p;
      if (inc.hi == nets.top_level[x]) {
        if (inc.hi == nets.ell) continue;  // color root
        p = g.resolve(top_parent[x], inc.hi + 1);
      } else {
        p = g.segs[x][si + 1];
      }
      g.parent[idx] = p;
      g.children[p].push_back(idx);
      g.edges.push_back({idx, p, IncEdgeKind::LocalTree, inc.hi});
    }
  }
  for (auto& ch : g.children) std::sort(ch.begin(), ch.end());

  // Foreign tree edges: one per other color from each chain top below ell.
  for (int x = 0; x < n; ++x) {
    int top = nets.top_level[x];
    if (top >= nets.ell) continue;
    for (int c = 0; c <= nets.k; ++c) {
      if (c == nets.color[x]) continue;
      int z = closest_member(nets.members[top + 1][c], x, ms);
      g.edges.push_back({g.resolve(x, top), g.resolve(z, top + 1), IncEdgeKind::Foreign, top});
    }
  }

  // Cross edges per level between net points within gamma * r_i.
  for (int i = 0; i <= nets.ell; ++i) {
    std::vector<int> pts = nets.level_points(i);
    double reach = g.gamma * nets.level_radius(i);
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b)
        if (ms.dist(pts[a], pts[b]) <= reach)
          g.edges.push_back(
              {g.resolve(pts[a], i), g.resolve(pts[b], i), IncEdgeKind::Cross, i});
  }
  return g;
}

/// Occupies every incubator with one same-color zombie. Each leaf holds its
/// own identity and releases one clone that climbs to the first unoccupied
/// ancestor; a clone meeting an occupied root disappears. Leaves are
/// processed in ascending identity order, one climb at a time.
inline void assign_zombies(IncubatorGraph& g) {
  if (g.zombies_assigned) throw std::logic_error("zombies already assigned");
  for (std::size_t i = 0; i < g.incs.size(); ++i)
    if (g.children[i].size() == 1)
      throw std::invalid_argument("assign_zombies: unmerged graph (incubator with one child)");

  for (int x = 0; x < g.n; ++x) {
    int leaf = g.leaf_of(x);
    if (g.incs[leaf].lo != 0) throw std::logic_error("leaf without level 0");
    g.zombie[leaf] = x;
  }
  for (int x = 0; x < g.n; ++x) {
    int cur = g.leaf_of(x);
    while (true) {
      if (g.zombie[cur] == -1) {
        g.zombie[cur] = x;
        break;
      }
      if (g.parent[cur] == -1) break;  // occupied root: clone disappears
      cur = g.parent[cur];
    }
  }
  for (std::size_t i = 0; i < g.incs.size(); ++i) {
    if (g.zombie[i] == -1) throw std::logic_error("unoccupied incubator after climb");
    if (g.incs[g.leaf_of(g.zombie[i])].color != g.incs[i].color)
      throw std::logic_error("zombie color mismatch");
  }
  g.zombies_assigned = true;
}

/// Induced point spanner: skeleton incubator edges (local tree, shortcut)
/// join the occupying zombies, foreign and cross edges join the identities.
/// Self-loops drop; parallel inductions union their tags.
inline Spanner induce_spanner(const IncubatorGraph& g, const MetricSpace& ms) {
  if (!g.zombies_assigned) throw std::logic_error("induce_spanner: zombies not assigned");
  std::map<std::pair<int, int>, std::uint8_t> acc;
  for (const auto& e : g.edges) {
    int pu, pv;
    std::uint8_t tag;
    switch (e.kind) {
      case IncEdgeKind::LocalTree:
        pu = g.zombie[e.a], pv = g.zombie[e.b], tag = kTagLocalTree;
        break;
      case IncEdgeKind::Shortcut:
        pu = g.zombie[e.a], pv = g.zombie[e.b], tag = kTagShortcut;
        break;
      case IncEdgeKind::Foreign:
        pu = g.incs[e.a].identity, pv = g.incs[e.b].identity, tag = kTagForeign;
        break;
      default:
        pu = g.incs[e.a].identity, pv = g.incs[e.b].identity, tag = kTagCross;
    }
    if (pu == pv) continue;
    if (pu > pv) std::swap(pu, pv);
    acc[{pu, pv}] |= tag;
  }
  Spanner s;
  s.n = ms.size();
  s.edges.reserve(acc.size());
  for (const auto& [key, tags] : acc)
    s.edges.push_back({key.first, key.second, ms.dist(key.first, key.second), tags, 0});
  return s;
}

/// Orients every foreign- or cross-tagged edge toward the endpoint whose top
/// net level is strictly larger (for a foreign tag that is the parent side);
/// equal top levels fall to the cross rule's tie-break toward the larger
/// point index.
inline void direct_edges(Spanner& s, const ColoredNets& nets) {
  for (auto& e : s.edges) {
    if (!(e.tags & (kTagForeign | kTagCross))) continue;
    int tu = nets.top_level[e.u], tv = nets.top_level[e.v];
    if (tu < tv)
      e.dir = 1;
    else if (tv < tu)
      e.dir = -1;
    else
      e.dir = 1;  // tie: toward larger index, and v > u by storage order
  }
}

}  // namespace vfts
