#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfts/metric.hpp"

namespace vfts {

/// Colored hierarchical nets over a normalized space: k+1 colors, levels
/// 0..ell with radius 2^i at level i, nested per color
/// (members at level i+1 are a subset of level i), each level-i set an
/// r_i-packing, and every non-net point covered within r_i by every color.
struct ColoredNets {
  int k = 0;    // colors 0..k
  int ell = 0;  // top level
  // members[i][c] = point ids of color c present at level i, ascending.
  std::vector<std::vector<std::vector<int>>> members;
  std::vector<int> color;      // per point
  std::vector<int> top_level;  // highest level containing the point

  int colors() const { return k + 1; }
  double level_radius(int i) const { return std::ldexp(1.0, i); }
  bool in_net(int x, int i) const { return top_level[x] >= i; }

  /// All level-i net points across colors, ascending.
  std::vector<int> level_points(int i) const {
    std::vector<int> out;
    for (int c = 0; c <= k; ++c)
      out.insert(out.end(), members[i][c].begin(), members[i][c].end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Top-down greedy construction. Level ell seeds color c with point c; each
/// lower level extends the color's net over the still-uncolored points in
/// ascending index order. Deterministic: identical inputs give identical nets.
inline ColoredNets build_nets(const MetricSpace& ms, int k) {
  const int n = ms.size();
  if (n < 2) throw std::invalid_argument("build_nets: need n >= 2");
  if (k < 0 || k > n - 2)
    throw std::invalid_argument("build_nets: need 0 <= k <= n-2, got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
  MinPairInfo m = min_pair(ms);
  if (!(m.d > 1.0)) throw std::invalid_argument("build_nets: space must be normalized (min distance > 1)");

  ColoredNets nets;
  nets.k = k;
  double delta = diameter(ms);
  int ell = 0;
  while (std::ldexp(1.0, ell) < delta) ++ell;
  nets.ell = ell;
  nets.members.assign(ell + 1, std::vector<std::vector<int>>(k + 1));
  nets.color.assign(n, -1);
  nets.top_level.assign(n, -1);

  for (int c = 0; c <= k; ++c) {
    nets.members[ell][c] = {c};
    nets.color[c] = c;
    nets.top_level[c] = ell;
  }

  for (int i = ell - 1; i >= 0; --i) {
    for (int c = 0; c <= k; ++c) {
      std::vector<int> net = nets.members[i + 1][c];
      double r = nets.level_radius(i);
      for (int x = 0; x < n; ++x) {
        if (nets.color[x] != -1) continue;  // U_c: currently uncolored
        bool covered = false;
        for (int y : net)
          if (ms.dist(x, y) <= r) {
            covered = true;
            break;
          }
        if (!covered) {
          net.push_back(x);
          nets.color[x] = c;
          nets.top_level[x] = i;
        }
      }
      std::sort(net.begin(), net.end());
      nets.members[i][c] = std::move(net);
    }
  }
  return nets;
}

struct NetViolation {
  std::string kind;  // "nesting" | "packing" | "covering" | "color" | "seed" | "top"
  int level = -1;
  int color = -1;
  int a = -1;
  int b = -1;
};

/// Exhaustive structural check of nesting, packing, covering, coloring and
/// seeding. Presence at a level is derived from the membership lists
/// themselves; the cached top_level is cross-checked against them. Empty
/// result means the nets are valid.
inline std::vector<NetViolation> validate_nets(const ColoredNets& nets, const MetricSpace& ms) {
  std::vector<NetViolation> out;
  const int n = ms.size();

  // membership-derived top level per point
  std::vector<int> mtop(n, -1);
  for (int i = 0; i <= nets.ell; ++i)
    for (int c = 0; c <= nets.k; ++c)
      for (int x : nets.members[i][c]) mtop[x] = std::max(mtop[x], i);
  for (int x = 0; x < n; ++x)
    if (mtop[x] != nets.top_level[x]) out.push_back({"top", mtop[x], -1, x, -1});

  for (int c = 0; c <= nets.k; ++c) {
    if (nets.members[nets.ell][c].size() != 1) out.push_back({"seed", nets.ell, c, -1, -1});
    for (int i = 0; i < nets.ell; ++i) {
      const auto& lo = nets.members[i][c];
      for (int x : nets.members[i + 1][c])
        if (!std::binary_search(lo.begin(), lo.end(), x))
          out.push_back({"nesting", i, c, x, -1});
    }
  }
  for (int c = 0; c <= nets.k; ++c)
    for (int c2 = c + 1; c2 <= nets.k; ++c2)
      if (!nets.members[nets.ell][c].empty() && !nets.members[nets.ell][c2].empty() &&
          nets.members[nets.ell][c][0] == nets.members[nets.ell][c2][0])
        out.push_back({"seed", nets.ell, c, nets.members[nets.ell][c][0], c2});

  for (int x = 0; x < n; ++x) {
    if (nets.color[x] < 0 || nets.color[x] > nets.k) out.push_back({"color", -1, -1, x, -1});
  }
  for (int i = 0; i <= nets.ell; ++i)
    for (int c = 0; c <= nets.k; ++c)
      for (int x : nets.members[i][c])
        if (nets.color[x] != c) out.push_back({"color", i, c, x, -1});

  // packing: members pairwise further than r_i
  for (int i = 0; i <= nets.ell; ++i) {
    double r = nets.level_radius(i);
    for (int c = 0; c <= nets.k; ++c) {
      const auto& mem = nets.members[i][c];
      for (std::size_t a = 0; a < mem.size(); ++a)
        for (std::size_t b = a + 1; b < mem.size(); ++b)
          if (!(ms.dist(mem[a], mem[b]) > r))
            out.push_back({"packing", i, c, mem[a], mem[b]});
    }
  }

  // covering: any point absent from level i is within r_i of every color's net
  for (int i = 1; i <= nets.ell; ++i) {
    double r = nets.level_radius(i);
    for (int x = 0; x < n; ++x) {
      if (mtop[x] >= i) continue;
      for (int c = 0; c <= nets.k; ++c) {
        bool covered = false;
        for (int y : nets.members[i][c])
          if (ms.dist(x, y) <= r) {
            covered = true;
            break;
          }
        if (!covered) out.push_back({"covering", i, c, x, -1});
      }
    }
  }
  return out;
}

inline nlohmann::json nets_to_json(const ColoredNets& nets) {
  nlohmann::json j;
  for (int i = 0; i <= nets.ell; ++i) {
    nlohmann::json lvl;
    for (int c = 0; c <= nets.k; ++c) lvl[std::to_string(c)] = nets.members[i][c];
    j[std::to_string(i)] = std::move(lvl);
  }
  return j;
}

}  // namespace vfts
