#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vfts {

/// Finite metric space over point ids 0..n-1, backed either by d-dimensional
/// real coordinates under the Euclidean distance or by an explicit symmetric
/// distance matrix. Immutable after construction; all queries are pure and
/// safe for concurrent use.
class MetricSpace {
 public:
  MetricSpace() = default;

  static MetricSpace from_points(std::vector<std::vector<double>> pts) {
    MetricSpace ms;
    ms.n_ = static_cast<int>(pts.size());
    ms.dim_ = ms.n_ > 0 ? static_cast<int>(pts[0].size()) : 0;
    if (ms.n_ > 0 && ms.dim_ == 0)
      throw std::invalid_argument("zero-dimensional points");
    for (const auto& p : pts) {
      if (static_cast<int>(p.size()) != ms.dim_)
        throw std::invalid_argument("points must share one dimension");
      for (double c : p)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
    }
    ms.pts_ = std::move(pts);
    return ms;
  }

  static MetricSpace from_matrix(const std::vector<std::vector<double>>& rows) {
    MetricSpace ms;
    ms.matrix_ = true;
    ms.n_ = static_cast<int>(rows.size());
    ms.mat_.assign(static_cast<std::size_t>(ms.n_) * ms.n_, 0.0);
    for (int i = 0; i < ms.n_; ++i) {
      if (static_cast<int>(rows[i].size()) != ms.n_)
        throw std::invalid_argument("distance matrix must be square");
      for (int j = 0; j < ms.n_; ++j) {
        double d = rows[i][j];
        if (!std::isfinite(d) || d < 0.0)
          throw std::invalid_argument("distances must be finite and nonnegative");
        ms.mat_[ms.at(i, j)] = d;
      }
      if (rows[i][i] != 0.0) throw std::invalid_argument("nonzero diagonal entry");
    }
    for (int i = 0; i < ms.n_; ++i)
      for (int j = i + 1; j < ms.n_; ++j)
        if (ms.mat_[ms.at(i, j)] != ms.mat_[ms.at(j, i)])
          throw std::invalid_argument("distance matrix must be symmetric");
    return ms;
  }

  int size() const { return n_; }
  int dim() const { return dim_; }
  bool has_coords() const { return !matrix_; }
  const std::vector<std::vector<double>>& points() const { return pts_; }

  double dist(int i, int j) const {
    if (matrix_) return mat_[at(i, j)];
    const auto& a = pts_[i];
    const auto& b = pts_[j];
    double s = 0.0;
    for (int t = 0; t < dim_; ++t) {
      double d = a[t] - b[t];
      s += d * d;
    }
    return std::sqrt(s);
  }

  /// Uniformly scaled copy (distances multiply by s).
  MetricSpace scaled(double s) const {
    MetricSpace ms = *this;
    if (matrix_) {
      for (double& d : ms.mat_) d *= s;
    } else {
      for (auto& p : ms.pts_) for (double& c : p) c *= s;
    }
    return ms;
  }

 private:
  std::size_t at(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_ = 0;
  int dim_ = 0;
  bool matrix_ = false;
  std::vector<std::vector<double>> pts_;
  std::vector<double> mat_;
};

struct MinPairInfo {
  double d = std::numeric_limits<double>::infinity();
  int i = -1;
  int j = -1;
};

/// Smallest pairwise distance together with the first pair attaining it.
inline MinPairInfo min_pair(const MetricSpace& ms) {
  if (ms.size() < 2) throw std::invalid_argument("need at least 2 points");
  MinPairInfo best;
  for (int i = 0; i < ms.size(); ++i)
    for (int j = i + 1; j < ms.size(); ++j) {
      double d = ms.dist(i, j);
      if (d < best.d) best = {d, i, j};
    }
  return best;
}

/// Rescale so the minimum inter-point distance becomes 2 (in particular > 1).
/// Returns the scaled space and the applied factor 2/min. Rejects duplicate
/// points, naming the offending pair.
inline std::pair<MetricSpace, double> normalize(const MetricSpace& ms) {
  MinPairInfo m = min_pair(ms);
  if (m.d == 0.0)
    throw std::invalid_argument("duplicate points " + std::to_string(m.i) + " and " +
                                std::to_string(m.j));
  double scale = 2.0 / m.d;
  return {ms.scaled(scale), scale};
}

inline double diameter(const MetricSpace& ms) {
  if (ms.size() < 1) throw std::invalid_argument("empty space");
  double best = 0.0;
  for (int i = 0; i < ms.size(); ++i)
    for (int j = i + 1; j < ms.size(); ++j) best = std::max(best, ms.dist(i, j));
  return best;
}

struct MstResult {
  std::vector<std::pair<int, int>> edges;  // (u,v) with u < v, sorted
  double weight = 0.0;
};

/// Exact minimum spanning tree of the complete distance graph, dense Prim.
/// The weight is accumulated over the ascending edge-weight sequence, so any
/// two minimum spanning trees of the same space report the same total.
inline MstResult mst(const MetricSpace& ms) {
  if (ms.size() < 1) throw std::invalid_argument("empty space");
  const int n = ms.size();
  MstResult r;
  if (n == 1) return r;
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<int> from(n, -1);
  std::vector<bool> used(n, false);
  key[0] = 0.0;
  for (int round = 0; round < n; ++round) {
    int u = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i] && (u == -1 || key[i] < key[u])) u = i;
    used[u] = true;
    if (from[u] >= 0) r.edges.emplace_back(std::min(u, from[u]), std::max(u, from[u]));
    for (int v = 0; v < n; ++v)
      if (!used[v]) {
        double d = ms.dist(u, v);
        if (d < key[v]) {
          key[v] = d;
          from[v] = u;
        }
      }
  }
  std::sort(r.edges.begin(), r.edges.end());
  std::vector<double> ws;
  ws.reserve(r.edges.size());
  for (auto [u, v] : r.edges) ws.push_back(ms.dist(u, v));
  std::sort(ws.begin(), ws.end());
  for (double w : ws) r.weight += w;
  return r;
}

struct TriangleViolation {
  int i = -1, j = -1, k = -1;
};

/// O(n^3) triangle-inequality scan; first violating triple if any.
inline std::optional<TriangleViolation> validate_triangle(const MetricSpace& ms) {
  const int n = ms.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double dij = ms.dist(i, j);
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (dij > ms.dist(i, k) + ms.dist(k, j)) return TriangleViolation{i, j, k};
      }
    }
  return std::nullopt;
}

}  // namespace vfts
