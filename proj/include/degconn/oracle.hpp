#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "degconn/components.hpp"
#include "degconn/degree_sequence.hpp"
#include "degconn/error.hpp"
#include "degconn/graph.hpp"

namespace degconn {

/// Exact oracles work by exhaustive enumeration and refuse 2m above this.
inline constexpr std::int64_t kOracleMaxHalfEdges = 20;

inline void require_oracle_size(const DegreeSequence& seq) {
  if (seq.half_edges() > kOracleMaxHalfEdges)
    throw Error(ErrorKind::TooLarge, "2m = " + std::to_string(seq.half_edges()) + " exceeds the oracle limit of " +
                                         std::to_string(kOracleMaxHalfEdges));
}

/// Calls `visit` once for every labeled simple graph realizing `seq`, as an
/// edge list. Vertex i picks its remaining neighbours among vertices j > i,
/// so each graph is produced exactly once. No size guard.
inline void for_each_realization(const DegreeSequence& seq, const std::function<void(const std::vector<Edge>&)>& visit) {
  const auto n = static_cast<Vertex>(seq.size());
  std::vector<int> residual(seq.degrees().begin(), seq.degrees().end());
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(seq.edges()));
  std::function<void(Vertex)> at_vertex;
  std::function<void(Vertex, Vertex, int)> choose;

  choose = [&](Vertex i, Vertex from, int need) {
    if (need == 0) {
      at_vertex(i + 1);
      return;
    }
    int available = 0;
    for (Vertex j = from; j < n; ++j) available += residual[static_cast<std::size_t>(j)] > 0 ? 1 : 0;
    if (available < need) return;
    for (Vertex j = from; j < n; ++j) {
      if (residual[static_cast<std::size_t>(j)] == 0) continue;
      --residual[static_cast<std::size_t>(j)];
      edges.emplace_back(i, j);
      choose(i, j + 1, need - 1);
      edges.pop_back();
      ++residual[static_cast<std::size_t>(j)];
    }
  };

  at_vertex = [&](Vertex i) {
    if (i == n) {
      visit(edges);
      return;
    }
    const int need = residual[static_cast<std::size_t>(i)];
    residual[static_cast<std::size_t>(i)] = 0;
    choose(i, i + 1, need);
    residual[static_cast<std::size_t>(i)] = need;
  };

  at_vertex(0);
}

inline std::vector<SimpleGraph> all_realizations(const DegreeSequence& seq) {
  std::vector<SimpleGraph> out;
  for_each_realization(seq, [&](const std::vector<Edge>& e) { out.push_back(SimpleGraph::from_edges(seq.size(), e)); });
  return out;
}

struct ConnectivityOracleResult {
  Rational p_connected;
  std::uint64_t realizations = 0;
  std::uint64_t connected = 0;
  /// Component counts summed over all realizations; divide by
  /// `realizations` for exact expectations under the uniform law.
  ComponentTaxonomy taxonomy;
};

inline ConnectivityOracleResult exact_connectivity_oracle(const DegreeSequence& seq) {
  require_graphical(seq);
  require_oracle_size(seq);
  ConnectivityOracleResult r;
  for_each_realization(seq, [&](const std::vector<Edge>& e) {
    const auto g = SimpleGraph::from_edges(seq.size(), e);
    ++r.realizations;
    const auto components = connected_components(g);
    if (components.size() == 1) ++r.connected;
    for (const auto& c : components) r.taxonomy.add(classify_component(g, c));
  });
  r.p_connected = Rational(BigInt(r.connected), BigInt(r.realizations));
  return r;
}

/// Calls `visit` for every full matching extending `partial` whose
/// multigraph is simple. The partial matching itself may be non-simple, in
/// which case nothing is visited.
inline void for_each_simple_extension(const DegreeSequence& seq, const Matching& partial,
                                      const std::function<void(const Matching&)>& visit) {
  const auto n = seq.size();
  std::vector<int> multiplicity(n * n, 0);
  const auto key = [n](Vertex a, Vertex b) { return static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b); };
  for (const auto& [a, b] : partial.pairs()) {
    const Vertex u = seq.owner(a), v = seq.owner(b);
    if (u == v) return;
    if (++multiplicity[key(u, v)] > 1) return;
    ++multiplicity[key(v, u)];
  }
  Matching current = partial;
  const auto total = static_cast<HalfEdgeId>(seq.half_edges());
  std::function<void(HalfEdgeId)> extend = [&](HalfEdgeId from) {
    HalfEdgeId h = from;
    while (h < total && current.matched(h)) ++h;
    if (h == total) {
      visit(current);
      return;
    }
    const Vertex u = seq.owner(h);
    for (HalfEdgeId p = h + 1; p < total; ++p) {
      if (current.matched(p)) continue;
      const Vertex v = seq.owner(p);
      if (v == u || multiplicity[key(u, v)] > 0) continue;
      current.pair(h, p);
      ++multiplicity[key(u, v)];
      ++multiplicity[key(v, u)];
      extend(h + 1);
      --multiplicity[key(u, v)];
      --multiplicity[key(v, u)];
      current.unpair(h);
    }
  };
  extend(0);
}

inline bool extendable_to_simple(const DegreeSequence& seq, const Matching& partial) {
  // unwinds at the first simple extension
  bool found = false;
  struct Found {};
  try {
    for_each_simple_extension(seq, partial, [&](const Matching&) {
      found = true;
      throw Found{};
    });
  } catch (const Found&) {
  }
  return found;
}

/// Exact P(hv matched to hw | partial is a submatching), over uniform full
/// matchings extending `partial` whose multigraph is simple.
inline Rational conditional_edge_probability_oracle(const DegreeSequence& seq, const Matching& partial, HalfEdgeId hv,
                                                    HalfEdgeId hw) {
  require_oracle_size(seq);
  if (partial.half_edges() != static_cast<std::size_t>(seq.half_edges()))
    throw Error(ErrorKind::InvalidArgument, "partial matching has the wrong number of half-edges");
  if (hv < 0 || hw < 0 || hv >= seq.half_edges() || hw >= seq.half_edges())
    throw Error(ErrorKind::InvalidArgument, "half-edge id out of range");
  if (partial.matched(hv) || partial.matched(hw))
    throw Error(ErrorKind::InvalidArgument, "hv and hw must be unmatched in the partial matching");
  if (seq.owner(hv) == seq.owner(hw)) throw Error(ErrorKind::InvalidArgument, "hv and hw must have distinct owners");
  std::uint64_t total = 0, hits = 0;
  for_each_simple_extension(seq, partial, [&](const Matching& full) {
    ++total;
    if (full.partner(hv) == hw) ++hits;
  });
  if (total == 0) throw Error(ErrorKind::NotExtendable, "partial matching has no simple extension");
  return Rational(BigInt(hits), BigInt(total));
}

/// Machine-checkable hypotheses of the 4/(3m) conditional-edge bound.
struct EdgeBoundHypotheses {
  bool small_partial = false;      // |N| <= m/8
  bool extendable = false;         // N extends to a simple full matching
  bool unmatched_distinct = false; // hv, hw unmatched with distinct owners
  bool degree_condition = false;   // d(w) <= sqrt(m)/10 or D* <= m/100

  bool hold() const { return small_partial && extendable && unmatched_distinct && degree_condition; }
};

inline EdgeBoundHypotheses edge_bound_hypotheses(const DegreeSequence& seq, const Matching& partial, HalfEdgeId hv,
                                                 HalfEdgeId hw) {
  EdgeBoundHypotheses h;
  const std::int64_t m = seq.edges();
  h.small_partial = 8 * static_cast<std::int64_t>(partial.size()) <= m;
  h.unmatched_distinct = !partial.matched(hv) && !partial.matched(hw) && seq.owner(hv) != seq.owner(hw);
  const std::int64_t dw = seq.degree(seq.owner(hw));
  h.degree_condition = 100 * dw * dw <= m || 100 * seq.d_star() <= m;
  h.extendable = extendable_to_simple(seq, partial);
  return h;
}

/// 4 / (3m).
inline Rational edge_probability_bound(const DegreeSequence& seq) { return Rational(4, 3 * seq.edges()); }

}  // namespace degconn
