#pragma once

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vfts/io.hpp"
#include "vfts/metric.hpp"

namespace vfts {

// Edge provenance classes. An induced point edge keeps the union of the
// classes of every incubator edge that produced it.
enum : std::uint8_t {
  kTagLocalTree = 1,
  kTagShortcut = 2,
  kTagForeign = 4,
  kTagCross = 8,
  kTagSingleSink = 16,
};

inline bool is_skeleton(std::uint8_t tags) { return (tags & (kTagLocalTree | kTagShortcut)) != 0; }
inline bool is_pure(std::uint8_t tags, std::uint8_t t) { return tags == t; }

struct SpannerEdge {
  int u = 0, v = 0;  // u < v
  double w = 0.0;
  std::uint8_t tags = 0;
  int dir = 0;  // 0 undirected, +1 directed u->v, -1 directed v->u
};

/// Undirected weighted edge list over point ids; weights equal metric
/// distances of the endpoints. Edges are kept sorted by (u, v).
struct Spanner {
  int n = 0;
  std::vector<SpannerEdge> edges;

  const SpannerEdge* find(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(a, b),
                               [](const SpannerEdge& e, const std::pair<int, int>& key) {
                                 return std::make_pair(e.u, e.v) < key;
                               });
    if (it != edges.end() && it->u == a && it->v == b) return &*it;
    return nullptr;
  }

  double total_weight() const {
    std::vector<double> ws;
    ws.reserve(edges.size());
    for (const auto& e : edges) ws.push_back(e.w);
    std::sort(ws.begin(), ws.end());
    double s = 0.0;
    for (double w : ws) s += w;
    return s;
  }
};

inline std::vector<std::vector<std::pair<int, double>>> build_adjacency(const Spanner& s) {
  std::vector<std::vector<std::pair<int, double>>> adj(s.n);
  for (const auto& e : s.edges) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  return adj;
}

inline const std::vector<std::pair<std::uint8_t, const char*>>& tag_names() {
  static const std::vector<std::pair<std::uint8_t, const char*>> names = {
      {kTagLocalTree, "local_tree"},
      {kTagShortcut, "shortcut"},
      {kTagForeign, "foreign"},
      {kTagCross, "cross"},
      {kTagSingleSink, "single_sink"},
  };
  return names;
}

inline std::string tags_to_string(std::uint8_t tags) {
  std::string out;
  for (const auto& [bit, name] : tag_names())
    if (tags & bit) {
      if (!out.empty()) out += '|';
      out += name;
    }
  return out.empty() ? "none" : out;
}

inline std::uint8_t tags_from_string(const std::string& s) {
  if (s == "none") return 0;
  std::uint8_t tags = 0;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '|')) {
    bool known = false;
    for (const auto& [bit, name] : tag_names())
      if (part == name) {
        tags |= bit;
        known = true;
      }
    if (!known) throw std::runtime_error("unknown edge tag '" + part + "'");
  }
  return tags;
}

/// CSV rows (u,v,weight,tags,dir) under a '# vfts-spanner' header carrying n.
inline void write_spanner_csv(std::ostream& out, const Spanner& s) {
  out << "# vfts-spanner schema=1 n=" << s.n << "\n";
  out << "u,v,weight,tags,dir\n";
  for (const auto& e : s.edges) {
    const char* d = e.dir == 0 ? "none" : (e.dir > 0 ? "fwd" : "rev");
    out << e.u << ',' << e.v << ',' << format_double(e.w) << ',' << tags_to_string(e.tags)
        << ',' << d << '\n';
  }
}

inline Spanner read_spanner_csv(std::istream& in) {
  Spanner s;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty spanner file");
  {
    auto pos = line.find("n=");
    if (line.rfind("# vfts-spanner", 0) != 0 || pos == std::string::npos)
      throw std::runtime_error("missing vfts-spanner header");
    s.n = std::stoi(line.substr(pos + 2));
  }
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("u,v,", 0) == 0) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) throw std::runtime_error("bad spanner row: " + line);
    SpannerEdge e;
    e.u = std::stoi(cells[0]);
    e.v = std::stoi(cells[1]);
    e.w = std::stod(cells[2]);
    e.tags = tags_from_string(cells[3]);
    e.dir = cells[4] == "none" ? 0 : (cells[4] == "fwd" ? 1 : -1);
    if (e.u < 0 || e.v >= s.n || e.u >= e.v) throw std::runtime_error("bad edge ids: " + line);
    s.edges.push_back(e);
  }
  std::sort(s.edges.begin(), s.edges.end(),
            [](const SpannerEdge& a, const SpannerEdge& b) {
              return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
            });
  for (std::size_t i = 1; i < s.edges.size(); ++i)
    if (s.edges[i - 1].u == s.edges[i].u && s.edges[i - 1].v == s.edges[i].v)
      throw std::runtime_error("duplicate edge " + std::to_string(s.edges[i].u) + "-" +
                               std::to_string(s.edges[i].v));
  return s;
}

inline void write_spanner_dot(std::ostream& out, const Spanner& s) {
  out << "graph spanner {\n";
  for (const auto& e : s.edges) {
    out << "  " << e.u << " -- " << e.v << " [weight=" << format_double(e.w) << ", tags=\""
        << tags_to_string(e.tags) << "\"";
    if (e.dir != 0) out << ", dir=\"" << (e.dir > 0 ? "fwd" : "rev") << "\"";
    out << "];\n";
  }
  out << "}\n";
}

}  // namespace vfts
