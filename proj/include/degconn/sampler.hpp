#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "degconn/degree_sequence.hpp"
#include "degconn/error.hpp"
#include "degconn/graph.hpp"
#include "degconn/random.hpp"

namespace degconn {

/// Uniform perfect matching on the 2m half-edges.
///
/// Draw order (part of the random stream contract): start from the identity
/// array a[0..2m-1]; for k = 0, 2, 4, ...: swap a[k] with a[k + below(2m-k)],
/// swap a[k+1] with a[k+1 + below(2m-k-1)], and pair a[k] with a[k+1].
inline Matching random_matching(const DegreeSequence& seq, Rng& rng) {
  const auto total = static_cast<std::size_t>(seq.half_edges());
  std::vector<HalfEdgeId> a(total);
  std::iota(a.begin(), a.end(), 0);
  Matching matching(total);
  for (std::size_t k = 0; k < total; k += 2) {
    std::swap(a[k], a[k + rng.below(total - k)]);
    std::swap(a[k + 1], a[k + 1 + rng.below(total - k - 1)]);
    matching.pair(a[k], a[k + 1]);
  }
  return matching;
}

inline MultiGraph matching_to_multigraph(const DegreeSequence& seq, const Matching& matching) {
  if (matching.half_edges() != static_cast<std::size_t>(seq.half_edges()))
    throw Error(ErrorKind::InvalidArgument, "matching size does not match the degree sequence");
  if (!matching.full()) throw Error(ErrorKind::PartialMatching, "matching leaves half-edges unmatched");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(seq.edges()));
  for (const auto& [a, b] : matching.pairs()) edges.emplace_back(seq.owner(a), seq.owner(b));
  return MultiGraph(seq.size(), std::move(edges));
}

/// Throws InvalidArgument if the multigraph has loops or parallel edges.
inline SimpleGraph to_simple(const MultiGraph& g) {
  return SimpleGraph::from_edges(g.vertex_count(), g.edges());
}

namespace detail {

/// Per-vertex neighbour slots laid out at the half-edge offsets, so adding
/// an edge and testing adjacency need no allocation.
class FlatAdjacency {
 public:
  explicit FlatAdjacency(const DegreeSequence& seq)
      : seq_(&seq), slots_(static_cast<std::size_t>(seq.half_edges())), fill_(seq.size(), 0) {}

  void clear() { std::fill(fill_.begin(), fill_.end(), 0); }

  bool has_edge(Vertex a, Vertex b) const {
    if (fill(b) < fill(a)) std::swap(a, b);
    const auto first = slots_.begin() + seq_->offset(a);
    return std::find(first, first + fill(a), b) != first + fill(a);
  }

  void add(Vertex a, Vertex b) {
    slots_[static_cast<std::size_t>(seq_->offset(a) + fill_[static_cast<std::size_t>(a)]++)] = b;
    slots_[static_cast<std::size_t>(seq_->offset(b) + fill_[static_cast<std::size_t>(b)]++)] = a;
  }

  void replace(Vertex a, Vertex from, Vertex to) {
    const auto first = slots_.begin() + seq_->offset(a);
    *std::find(first, first + fill(a), from) = to;
  }

  int fill(Vertex v) const { return fill_[static_cast<std::size_t>(v)]; }

 private:
  const DegreeSequence* seq_;
  std::vector<Vertex> slots_;
  std::vector<int> fill_;
};

}  // namespace detail

struct RejectionResult {
  SimpleGraph graph;
  std::uint64_t attempts = 0;
};

inline constexpr std::uint64_t kDefaultMaxAttempts = 1'000'000;

/// Configuration-model rejection sampling: draws matchings (same draw order
/// as random_matching) until the multigraph is simple. An attempt is
/// abandoned at the first loop or parallel edge. Exactly uniform.
inline RejectionResult rejection_sample(const DegreeSequence& seq, Rng& rng,
                                        std::uint64_t max_attempts = kDefaultMaxAttempts) {
  require_graphical(seq);
  const auto total = static_cast<std::size_t>(seq.half_edges());
  std::vector<HalfEdgeId> a(total);
  detail::FlatAdjacency adjacency(seq);
  std::vector<Edge> edges;
  edges.reserve(total / 2);
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::iota(a.begin(), a.end(), 0);
    adjacency.clear();
    edges.clear();
    bool simple = true;
    for (std::size_t k = 0; k < total; k += 2) {
      std::swap(a[k], a[k + rng.below(total - k)]);
      std::swap(a[k + 1], a[k + 1 + rng.below(total - k - 1)]);
      const Vertex u = seq.owner(a[k]);
      const Vertex v = seq.owner(a[k + 1]);
      if (u == v || adjacency.has_edge(u, v)) {
        simple = false;
        break;
      }
      adjacency.add(u, v);
      edges.emplace_back(u, v);
    }
    if (simple) return {SimpleGraph::from_edges(seq.size(), edges), attempt};
  }
  throw Error(ErrorKind::AttemptsExhausted,
              "no simple graph after " + std::to_string(max_attempts) + " attempts; use the switch chain");
}

/// Switching on oriented edges (x,y), (u,v): removes xy, uv and adds xv, uy.
/// Throws InvalidSwitch naming the violated condition.
inline SimpleGraph switching(const SimpleGraph& g, Edge xy, Edge uv) {
  const auto [x, y] = xy;
  const auto [u, v] = uv;
  const auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidSwitch, why); };
  if (!g.has_edge(x, y)) fail("xy is not an edge");
  if (!g.has_edge(u, v)) fail("uv is not an edge");
  if (std::minmax(x, y) == std::minmax(u, v)) fail("xy and uv are the same edge");
  if (x == v) fail("x == v");
  if (u == y) fail("u == y");
  if (x == u || y == v) fail("edges share an endpoint in the same role");
  if (g.has_edge(x, v)) fail("xv is already an edge");
  if (g.has_edge(u, y)) fail("uy is already an edge");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count()));
  const auto xy_key = std::minmax(x, y);
  const auto uv_key = std::minmax(u, v);
  for (const auto& e : g.edges()) {
    const auto key = std::minmax(e.first, e.second);
    if (key == xy_key || key == uv_key) continue;
    edges.push_back(e);
  }
  edges.emplace_back(x, v);
  edges.emplace_back(u, y);
  return SimpleGraph::from_edges(g.vertex_count(), edges);
}

/// Every switching of g, with multiplicity: for each unordered pair of
/// distinct edges, all four orientation combinations that are valid.
inline std::vector<SimpleGraph> all_switchings(const SimpleGraph& g) {
  std::vector<SimpleGraph> out;
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      for (int flip_a = 0; flip_a < 2; ++flip_a) {
        for (int flip_b = 0; flip_b < 2; ++flip_b) {
          Edge xy = edges[i], uv = edges[j];
          if (flip_a) std::swap(xy.first, xy.second);
          if (flip_b) std::swap(uv.first, uv.second);
          const auto [x, y] = xy;
          const auto [u, v] = uv;
          if (x == v || u == y || x == u || y == v) continue;
          if (g.has_edge(x, v) || g.has_edge(u, y)) continue;
          out.push_back(switching(g, xy, uv));
        }
      }
    }
  }
  return out;
}

/// Number of switchings taking h to j.
inline std::size_t switchings_between(const SimpleGraph& h, const SimpleGraph& j) {
  const auto all = all_switchings(h);
  return static_cast<std::size_t>(std::count(all.begin(), all.end(), j));
}

/// Deterministic realization: repeatedly take the vertex of largest residual
/// degree (smallest label on ties) and join it to the vertices of next
/// largest residual degree (smallest labels on ties).
inline SimpleGraph havel_hakimi_construct(const DegreeSequence& seq) {
  require_graphical(seq);
  const std::size_t n = seq.size();
  std::vector<int> residual(seq.degrees().begin(), seq.degrees().end());
  std::vector<Vertex> order(n);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(seq.edges()));
  const auto by_residual = [&residual](Vertex a, Vertex b) {
    const int ra = residual[static_cast<std::size_t>(a)], rb = residual[static_cast<std::size_t>(b)];
    return ra != rb ? ra > rb : a < b;
  };
  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), by_residual);
    const Vertex hub = order.front();
    const int need = residual[static_cast<std::size_t>(hub)];
    if (need == 0) break;
    if (static_cast<std::size_t>(need) >= n)
      throw Error(ErrorKind::NotGraphical, "Havel-Hakimi failed");
    residual[static_cast<std::size_t>(hub)] = 0;
    for (int k = 1; k <= need; ++k) {
      const Vertex w = order[static_cast<std::size_t>(k)];
      if (residual[static_cast<std::size_t>(w)] == 0) throw Error(ErrorKind::NotGraphical, "Havel-Hakimi failed");
      --residual[static_cast<std::size_t>(w)];
      edges.emplace_back(hub, w);
    }
  }
  return SimpleGraph::from_edges(n, edges);
}

/// 20 * m * ceil(ln m).
inline std::uint64_t default_switch_steps(std::int64_t m) {
  if (m < 2) return 0;
  return static_cast<std::uint64_t>(20 * m * static_cast<std::int64_t>(std::ceil(std::log(static_cast<double>(m)))));
}

struct ChainStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
};

/// Lazy switch chain. Each step draws e1 = below(m), e2 = below(m-1) (shifted
/// past e1), then one coin per edge for its orientation, giving (x,y) and
/// (u,v); the switching is applied when valid and the chain holds otherwise.
inline SimpleGraph switch_chain_sample(const DegreeSequence& seq, std::uint64_t steps, Rng& rng,
                                       const std::optional<SimpleGraph>& initial = std::nullopt,
                                       ChainStats* stats = nullptr) {
  SimpleGraph start = initial ? *initial : havel_hakimi_construct(seq);
  if (!start.realizes(seq)) throw Error(ErrorKind::InvalidArgument, "initial graph does not realize the sequence");
  std::vector<Edge> edges = start.edges();
  detail::FlatAdjacency adjacency(seq);
  for (const auto& [u, v] : edges) adjacency.add(u, v);
  const auto m = static_cast<std::uint64_t>(edges.size());
  ChainStats local;
  if (m >= 2) {
    for (std::uint64_t step = 0; step < steps; ++step) {
      ++local.proposals;
      const std::uint64_t e1 = rng.below(m);
      std::uint64_t e2 = rng.below(m - 1);
      if (e2 >= e1) ++e2;
      Edge xy = edges[e1], uv = edges[e2];
      if (rng.coin()) std::swap(xy.first, xy.second);
      if (rng.coin()) std::swap(uv.first, uv.second);
      const auto [x, y] = xy;
      const auto [u, v] = uv;
      if (x == v || u == y || x == u || y == v) continue;
      if (adjacency.has_edge(x, v) || adjacency.has_edge(u, y)) continue;
      adjacency.replace(x, y, v);
      adjacency.replace(y, x, u);
      adjacency.replace(u, v, y);
      adjacency.replace(v, u, x);
      edges[e1] = {x, v};
      edges[e2] = {u, y};
      ++local.accepted;
    }
  }
  if (stats) *stats = local;
  return SimpleGraph::from_edges(seq.size(), edges);
}

enum class SamplerKind { Rejection, SwitchChain, Auto };

inline std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Rejection: return "rejection";
    case SamplerKind::SwitchChain: return "switch-chain";
    case SamplerKind::Auto: return "auto";
  }
  return "auto";
}

inline SamplerKind parse_sampler(std::string_view name) {
  if (name == "rejection") return SamplerKind::Rejection;
  if (name == "switch-chain" || name == "switch") return SamplerKind::SwitchChain;
  if (name == "auto") return SamplerKind::Auto;
  throw Error(ErrorKind::InvalidArgument, "unknown sampler '" + std::string(name) + "'");
}

struct SamplerConfig {
  SamplerKind kind = SamplerKind::Auto;
  std::uint64_t max_attempts = kDefaultMaxAttempts;
  std::optional<std::uint64_t> steps;
};

/// Heuristic probability that a configuration-model draw is simple,
/// exp(-lambda/2 - lambda^2/4) with lambda = sum d(d-1) / 2m.
inline double estimated_simple_probability(const DegreeSequence& seq) {
  double s = 0;
  for (int d : seq.degrees()) s += static_cast<double>(d) * (d - 1);
  const double lambda = s / static_cast<double>(seq.half_edges());
  return std::exp(-lambda / 2 - lambda * lambda / 4);
}

/// Auto picks rejection when the estimated acceptance rate is at least
/// 1e-4 and the switch chain otherwise. Deterministic in the sequence.
inline SamplerKind resolve_sampler(const DegreeSequence& seq, SamplerKind kind) {
  if (kind != SamplerKind::Auto) return kind;
  return estimated_simple_probability(seq) >= 1e-4 ? SamplerKind::Rejection : SamplerKind::SwitchChain;
}

inline SimpleGraph sample_graph(const DegreeSequence& seq, const SamplerConfig& config, Rng& rng) {
  if (resolve_sampler(seq, config.kind) == SamplerKind::Rejection)
    return rejection_sample(seq, rng, config.max_attempts).graph;
  return switch_chain_sample(seq, config.steps.value_or(default_switch_steps(seq.edges())), rng);
}

}  // namespace degconn
