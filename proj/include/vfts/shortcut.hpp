#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "vfts/incubator.hpp"

namespace vfts {

/// Level cutoff below which whole subtrees carry negligible weight and get
/// shortcut. sigma may be negative (then nothing is shortcut); with k = 0 the
/// cutoff is inactive outright.
struct SigmaCut {
  double rhat = 0.0;
  long long sigma = std::numeric_limits<long long>::min();
  bool active = false;
  std::vector<int> roots;  // incubators whose interval contains the cutoff
};

inline SigmaCut compute_sigma(int k, double delta, int n, double gamma,
                              const IncubatorGraph* g = nullptr) {
  if (delta <= 0.0 || n <= 0 || gamma <= 0.0 || k < 0)
    throw std::invalid_argument("compute_sigma: bad arguments");
  SigmaCut cut;
  cut.rhat = (static_cast<double>(k) * k * delta) / (static_cast<double>(n) * n * gamma);
  if (cut.rhat > 0.0) cut.sigma = std::ilogb(cut.rhat);
  cut.active = cut.rhat > 0.0 && cut.sigma >= 0;
  if (g != nullptr && cut.active) {
    long long lvl = std::min<long long>(cut.sigma, g->ell);
    for (int i = 0; i < static_cast<int>(g->incs.size()); ++i)
      if (g->incs[i].lo <= lvl && lvl <= g->incs[i].hi) cut.roots.push_back(i);
    std::sort(cut.roots.begin(), cut.roots.end(), [&](int a, int b) {
      return std::make_pair(g->incs[a].color, g->incs[a].identity) <
             std::make_pair(g->incs[b].color, g->incs[b].identity);
    });
  }
  return cut;
}

/// Shortcut edges for a path of p positions 0..p-1 (0 = top). Median
/// recursion on the closed interval emits anchor edges {lo,mid} and {mid,hi}
/// and recurses on the open interiors, so every position anchors at most one
/// interval and gains at most two edges; the path endpoints share one extra
/// top-to-bottom edge. Adjacent pairs are left to the existing tree edges.
inline std::vector<std::pair<int, int>> shortcut_positions(int p) {
  std::vector<std::pair<int, int>> out;
  if (p < 3) return out;
  auto emit = [&out](int a, int b) {
    if (b - a >= 2) out.emplace_back(a, b);
  };
  emit(0, p - 1);
  struct Iv {
    int lo, hi;
  };
  std::vector<Iv> stack{{0, p - 1}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi - lo <= 1) continue;
    int mid = (lo + hi) / 2;
    emit(lo, mid);
    emit(mid, hi);
    if (mid - 1 - (lo + 1) >= 1) stack.push_back({lo + 1, mid - 1});
    if (hi - 1 - (mid + 1) >= 1) stack.push_back({mid + 1, hi - 1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Induced point-edge weight of the level-i tree and cross edges, pairs
/// deduplicated within the level. Tree edges induce zombie pairs, foreign and
/// cross edges induce identity pairs.
inline double induced_level_weight(const IncubatorGraph& g, const MetricSpace& ms, int level) {
  std::set<std::pair<int, int>> seen;
  double total = 0.0;
  for (const auto& e : g.edges) {
    if (e.level != level || e.kind == IncEdgeKind::Shortcut) continue;
    int pu, pv;
    if (e.kind == IncEdgeKind::LocalTree) {
      pu = g.zombie[e.a];
      pv = g.zombie[e.b];
    } else {
      pu = g.incs[e.a].identity;
      pv = g.incs[e.b].identity;
    }
    if (pu == pv) continue;
    if (pu > pv) std::swap(pu, pv);
    if (seen.insert({pu, pv}).second) total += ms.dist(pu, pv);
  }
  return total;
}

/// Same, over the union of all levels at or below the cutoff.
inline double induced_below_weight(const IncubatorGraph& g, const MetricSpace& ms,
                                   long long sigma) {
  std::set<std::pair<int, int>> seen;
  double total = 0.0;
  for (const auto& e : g.edges) {
    if (e.kind == IncEdgeKind::Shortcut || e.level > sigma) continue;
    int pu, pv;
    if (e.kind == IncEdgeKind::LocalTree) {
      pu = g.zombie[e.a];
      pv = g.zombie[e.b];
    } else {
      pu = g.incs[e.a].identity;
      pv = g.incs[e.b].identity;
    }
    if (pu == pv) continue;
    if (pu > pv) std::swap(pu, pv);
    if (seen.insert({pu, pv}).second) total += ms.dist(pu, pv);
  }
  return total;
}

/// Adds shortcut incubator edges inside every subtree rooted at a cutoff
/// incubator: heavy-path decomposition (heavy child = most leaves, ties to
/// the lower identity) and the balanced position scheme per heavy path.
/// Returns the number of edges added.
inline int shortcut_trees(IncubatorGraph& g, const SigmaCut& cut) {
  if (!g.zombies_assigned) throw std::logic_error("shortcut_trees: zombies not assigned");
  if (!cut.active) return 0;
  int added = 0;
  std::set<std::pair<int, int>> seen;
  for (int root : cut.roots) {
    // Subtree collection, post-order leaf counts.
    std::vector<int> order;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (int c : g.children[u]) stack.push_back(c);
    }
    std::map<int, long long> leaves;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int u = *it;
      if (g.children[u].empty()) {
        leaves[u] = 1;
      } else {
        long long s = 0;
        for (int c : g.children[u]) s += leaves[c];
        leaves[u] = s;
      }
    }
    // Heavy paths, top to bottom.
    std::vector<std::vector<int>> paths;
    std::vector<int> heads{root};
    while (!heads.empty()) {
      int h = heads.back();
      heads.pop_back();
      std::vector<int> path;
      int u = h;
      while (true) {
        path.push_back(u);
        if (g.children[u].empty()) break;
        int heavy = -1;
        long long best = -1;
        for (int c : g.children[u]) {
          long long lc = leaves[c];
          if (lc > best || (lc == best && g.incs[c].identity < g.incs[heavy].identity)) {
            best = lc;
            heavy = c;
          }
        }
        for (int c : g.children[u])
          if (c != heavy) heads.push_back(c);
        u = heavy;
      }
      paths.push_back(std::move(path));
    }
    for (const auto& path : paths) {
      for (auto [a, b] : shortcut_positions(static_cast<int>(path.size()))) {
        int x = path[a], y = path[b];
        if (x > y) std::swap(x, y);
        if (!seen.insert({x, y}).second) continue;
        g.edges.push_back({x, y, IncEdgeKind::Shortcut, -1});
        ++added;
      }
    }
  }
  return added;
}

}  // namespace vfts
