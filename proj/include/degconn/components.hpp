#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "degconn/graph.hpp"

namespace degconn {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }
  std::size_t components() const noexcept { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

struct Component {
  std::vector<Vertex> vertices;  // ascending
  std::int64_t edges = 0;
};

/// Components ordered by their smallest vertex.
inline std::vector<Component> connected_components(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  UnionFind uf(n);
  for (const auto& [u, v] : g.edges()) uf.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  std::vector<std::int64_t> index(n, -1);
  std::vector<Component> out;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t root = uf.find(v);
    if (index[root] < 0) {
      index[root] = static_cast<std::int64_t>(out.size());
      out.emplace_back();
    }
    auto& c = out[static_cast<std::size_t>(index[root])];
    c.vertices.push_back(static_cast<Vertex>(v));
    c.edges += g.degree(static_cast<Vertex>(v));
  }
  for (auto& c : out) c.edges /= 2;
  return out;
}

inline bool is_connected(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  UnionFind uf(n);
  for (const auto& [u, v] : g.edges()) uf.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  return uf.components() <= 1;
}

enum class ComponentClass { Edge, Triangle, TrianglePendant, K4MinusE, K4, Cycle, Path, OtherSmall, Large };

inline std::string_view to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::Edge: return "edge";
    case ComponentClass::Triangle: return "triangle";
    case ComponentClass::TrianglePendant: return "triangle_pendant";
    case ComponentClass::K4MinusE: return "k4_minus_e";
    case ComponentClass::K4: return "k4";
    case ComponentClass::Cycle: return "cycle";
    case ComponentClass::Path: return "path";
    case ComponentClass::OtherSmall: return "other_small";
    case ComponentClass::Large: return "large";
  }
  return "?";
}

/// Components with at most this many vertices are classified up to
/// isomorphism; bigger ones that are not cycles or paths are "large".
inline constexpr std::size_t kSmallComponentLimit = 6;

struct ComponentInfo {
  ComponentClass cls = ComponentClass::Large;
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::string key;  // other_small only
};

namespace detail {

/// Smallest upper-triangle adjacency code over all vertex relabelings.
inline std::uint32_t canonical_code(const std::vector<std::vector<bool>>& adj) {
  const std::size_t k = adj.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t best = UINT32_MAX;
  do {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) code = (code << 1) | (adj[perm[i]][perm[j]] ? 1U : 0U);
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace detail

inline ComponentInfo classify_component(const SimpleGraph& g, const Component& c) {
  ComponentInfo info;
  info.vertices = static_cast<std::int64_t>(c.vertices.size());
  info.edges = c.edges;
  const auto nv = info.vertices;
  const auto ne = info.edges;
  std::vector<int> degs;
  degs.reserve(c.vertices.size());
  for (Vertex v : c.vertices) degs.push_back(g.degree(v));
  std::sort(degs.begin(), degs.end());
  const int max_deg = degs.back();

  if (nv == 2) return info.cls = ComponentClass::Edge, info;
  if (nv == 3 && ne == 3) return info.cls = ComponentClass::Triangle, info;
  if (nv == 4 && ne == 4 && degs == std::vector<int>{1, 2, 2, 3}) return info.cls = ComponentClass::TrianglePendant, info;
  if (nv == 4 && ne == 5) return info.cls = ComponentClass::K4MinusE, info;
  if (nv == 4 && ne == 6) return info.cls = ComponentClass::K4, info;
  if (max_deg == 2 && ne == nv) return info.cls = ComponentClass::Cycle, info;
  if (max_deg <= 2 && ne == nv - 1) return info.cls = ComponentClass::Path, info;
  if (c.vertices.size() > kSmallComponentLimit) return info.cls = ComponentClass::Large, info;

  std::vector<std::vector<bool>> adj(c.vertices.size(), std::vector<bool>(c.vertices.size(), false));
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    for (std::size_t j = 0; j < c.vertices.size(); ++j)
      adj[i][j] = i != j && g.has_edge(c.vertices[i], c.vertices[j]);
  std::ostringstream key;
  key << "v" << nv << "e" << ne << ":d=";
  for (std::size_t i = 0; i < degs.size(); ++i) key << (i ? "," : "") << degs[i];
  key << ":c=" << std::hex << detail::canonical_code(adj);
  info.cls = ComponentClass::OtherSmall;
  info.key = key.str();
  return info;
}

/// Component counts per class. Counts add under merge, so tallies from
/// independent workers combine in any order.
struct ComponentTaxonomy {
  std::uint64_t edge = 0, triangle = 0, triangle_pendant = 0, k4_minus_e = 0, k4 = 0;
  std::map<std::int64_t, std::uint64_t> cycle_len;  // by vertex count
  std::map<std::int64_t, std::uint64_t> path_len;   // by edge count
  std::map<std::string, std::uint64_t> other_small;
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> large;  // (vertices, edges)

  void add(const ComponentInfo& c) {
    switch (c.cls) {
      case ComponentClass::Edge: ++edge; break;
      case ComponentClass::Triangle: ++triangle; break;
      case ComponentClass::TrianglePendant: ++triangle_pendant; break;
      case ComponentClass::K4MinusE: ++k4_minus_e; break;
      case ComponentClass::K4: ++k4; break;
      case ComponentClass::Cycle: ++cycle_len[c.vertices]; break;
      case ComponentClass::Path: ++path_len[c.edges]; break;
      case ComponentClass::OtherSmall: ++other_small[c.key]; break;
      case ComponentClass::Large: ++large[{c.vertices, c.edges}]; break;
    }
  }

  void merge(const ComponentTaxonomy& o) {
    edge += o.edge;
    triangle += o.triangle;
    triangle_pendant += o.triangle_pendant;
    k4_minus_e += o.k4_minus_e;
    k4 += o.k4;
    for (const auto& [k, v] : o.cycle_len) cycle_len[k] += v;
    for (const auto& [k, v] : o.path_len) path_len[k] += v;
    for (const auto& [k, v] : o.other_small) other_small[k] += v;
    for (const auto& [k, v] : o.large) large[k] += v;
  }

  std::uint64_t total() const {
    std::uint64_t t = edge + triangle + triangle_pendant + k4_minus_e + k4;
    for (const auto* m : {&cycle_len, &path_len})
      for (const auto& [k, v] : *m) t += v;
    for (const auto& [k, v] : other_small) t += v;
    for (const auto& [k, v] : large) t += v;
    return t;
  }

  friend bool operator==(const ComponentTaxonomy&, const ComponentTaxonomy&) = default;
};

inline ComponentTaxonomy classify_components(const SimpleGraph& g) {
  ComponentTaxonomy t;
  for (const auto& c : connected_components(g)) t.add(classify_component(g, c));
  return t;
}

/// Counts divided by `denominator` (e.g. per-trial means).
inline nlohmann::ordered_json to_json(const ComponentTaxonomy& t, double denominator = 1.0) {
  nlohmann::ordered_json j;
  const auto scale = [denominator](std::uint64_t x) { return static_cast<double>(x) / denominator; };
  j["edge"] = scale(t.edge);
  j["triangle"] = scale(t.triangle);
  j["triangle_pendant"] = scale(t.triangle_pendant);
  j["k4_minus_e"] = scale(t.k4_minus_e);
  j["k4"] = scale(t.k4);
  auto cycles = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.cycle_len) cycles[std::to_string(k)] = scale(v);
  j["cycle_len"] = std::move(cycles);
  auto paths = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.path_len) paths[std::to_string(k)] = scale(v);
  j["path_len"] = std::move(paths);
  auto other = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.other_small) other[k] = scale(v);
  j["other_small"] = std::move(other);
  auto large = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.large) large["v" + std::to_string(k.first) + "e" + std::to_string(k.second)] = scale(v);
  j["large"] = std::move(large);
  return j;
}

}  // namespace degconn
