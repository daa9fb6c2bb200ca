#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "degconn/degree_sequence.hpp"
#include "degconn/error.hpp"

namespace degconn {

using Edge = std::pair<Vertex, Vertex>;

struct HalfEdge {
  Vertex owner;
  int slot;
  HalfEdgeId id;
};

inline HalfEdge half_edge_of(const DegreeSequence& seq, HalfEdgeId id) {
  return {seq.owner(id), seq.slot(id), id};
}

/// Involution on half-edge ids 0..2m-1; may be partial.
class Matching {
 public:
  static constexpr HalfEdgeId kUnmatched = -1;

  Matching() = default;
  explicit Matching(std::size_t half_edges) : partner_(half_edges, kUnmatched) {}

  std::size_t half_edges() const noexcept { return partner_.size(); }
  HalfEdgeId partner(HalfEdgeId h) const { return partner_[static_cast<std::size_t>(h)]; }
  bool matched(HalfEdgeId h) const { return partner(h) != kUnmatched; }

  void pair(HalfEdgeId a, HalfEdgeId b) {
    if (a == b) throw Error(ErrorKind::InvalidArgument, "a half-edge cannot be matched to itself");
    if (matched(a) || matched(b)) throw Error(ErrorKind::InvalidArgument, "half-edge already matched");
    partner_[static_cast<std::size_t>(a)] = b;
    partner_[static_cast<std::size_t>(b)] = a;
  }

  void unpair(HalfEdgeId a) {
    const HalfEdgeId b = partner(a);
    if (b == kUnmatched) return;
    partner_[static_cast<std::size_t>(a)] = kUnmatched;
    partner_[static_cast<std::size_t>(b)] = kUnmatched;
  }

  /// Number of matched pairs.
  std::size_t size() const {
    return static_cast<std::size_t>(std::count_if(partner_.begin(), partner_.end(),
                                                  [](HalfEdgeId p) { return p != kUnmatched; })) / 2;
  }

  bool full() const {
    return std::none_of(partner_.begin(), partner_.end(), [](HalfEdgeId p) { return p == kUnmatched; });
  }

  /// Fixed-point-free involution on the matched ids.
  bool valid() const {
    for (std::size_t h = 0; h < partner_.size(); ++h) {
      const HalfEdgeId p = partner_[h];
      if (p == kUnmatched) continue;
      if (p < 0 || static_cast<std::size_t>(p) >= partner_.size()) return false;
      if (static_cast<std::size_t>(p) == h) return false;
      if (partner_[static_cast<std::size_t>(p)] != static_cast<HalfEdgeId>(h)) return false;
    }
    return true;
  }

  /// Matched pairs (a, b) with a < b, ordered by a.
  std::vector<std::pair<HalfEdgeId, HalfEdgeId>> pairs() const {
    std::vector<std::pair<HalfEdgeId, HalfEdgeId>> out;
    for (std::size_t h = 0; h < partner_.size(); ++h) {
      const HalfEdgeId p = partner_[h];
      if (p != kUnmatched && static_cast<HalfEdgeId>(h) < p) out.emplace_back(static_cast<HalfEdgeId>(h), p);
    }
    return out;
  }

  const std::vector<HalfEdgeId>& partners() const noexcept { return partner_; }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<HalfEdgeId> partner_;
};

/// Partner array as JSON; unmatched entries are -1.
inline nlohmann::json to_json(const Matching& m) { return m.partners(); }

/// Multigraph induced by a matching. Edges are stored with u <= v and keep
/// their multiplicity; a loop adds 2 to its vertex's degree.
class MultiGraph {
 public:
  MultiGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (auto& e : edges_)
      if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges_.begin(), edges_.end());
  }

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::vector<int> degrees() const {
    std::vector<int> d(n_, 0);
    for (const auto& [u, v] : edges_) {
      ++d[static_cast<std::size_t>(u)];
      ++d[static_cast<std::size_t>(v)];
    }
    return d;
  }

  std::size_t loop_count() const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.first == e.second; }));
  }

  /// Multiplicity of every distinct edge.
  std::map<Edge, int> multiplicities() const {
    std::map<Edge, int> out;
    for (const auto& e : edges_) ++out[e];
    return out;
  }

  bool is_simple() const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].first == edges_[i].second) return false;
      if (i > 0 && edges_[i] == edges_[i - 1]) return false;
    }
    return true;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

/// Loop-free, parallel-edge-free graph on vertices 0..n-1 with sorted
/// adjacency lists.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  /// Throws InvalidArgument on loops, duplicates or out-of-range endpoints.
  static SimpleGraph from_edges(std::size_t n, std::span<const Edge> edges) {
    SimpleGraph g;
    g.adjacency_.assign(n, {});
    for (const auto& [u, v] : edges) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
        throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
      if (u == v) throw Error(ErrorKind::InvalidArgument, "loop at vertex " + std::to_string(u + 1));
      g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
      g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : g.adjacency_) {
      std::sort(list.begin(), list.end());
      if (std::adjacent_find(list.begin(), list.end()) != list.end())
        throw Error(ErrorKind::InvalidArgument, "parallel edge");
    }
    g.edge_count_ = static_cast<std::int64_t>(edges.size());
    return g;
  }

  static SimpleGraph from_edges(std::size_t n, std::initializer_list<Edge> edges) {
    std::vector<Edge> v(edges);
    return from_edges(n, std::span<const Edge>(v));
  }

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::int64_t edge_count() const noexcept { return edge_count_; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& a = adjacency_[static_cast<std::size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }

  std::vector<int> degrees() const {
    std::vector<int> d;
    d.reserve(adjacency_.size());
    for (const auto& a : adjacency_) d.push_back(static_cast<int>(a.size()));
    return d;
  }

  bool realizes(const DegreeSequence& seq) const {
    if (seq.size() != vertex_count()) return false;
    return std::equal(seq.degrees().begin(), seq.degrees().end(), degrees().begin());
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (std::size_t u = 0; u < adjacency_.size(); ++u)
      for (Vertex v : adjacency_[u])
        if (static_cast<Vertex>(u) < v) out.emplace_back(static_cast<Vertex>(u), v);
    return out;
  }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;
  friend auto operator<=>(const SimpleGraph& a, const SimpleGraph& b) { return a.adjacency_ <=> b.adjacency_; }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::int64_t edge_count_ = 0;
};

/// One "u v" line per edge, 1-indexed, u < v, lexicographic.
inline std::string to_edge_list(const SimpleGraph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u + 1);
    out += ' ';
    out += std::to_string(v + 1);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json to_json(const SimpleGraph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.vertex_count();
  j["m"] = g.edge_count();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  j["edges"] = std::move(edges);
  return j;
}

/// Reads the edge-list format written by to_edge_list; blank lines and lines
/// starting with '#' are skipped.
inline SimpleGraph parse_edge_list(std::size_t n, const std::string& text) {
  std::vector<Edge> edges;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = 0, v = 0;
    if (!(fields >> u >> v)) throw Error(ErrorKind::Parse, "bad edge line: '" + line + "'");
    edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  }
  return SimpleGraph::from_edges(n, edges);
}

}  // namespace degconn
