#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "degconn/degree_sequence.hpp"
#include "degconn/graph.hpp"
#include "degconn/random.hpp"
#include "degconn/sampler.hpp"

namespace degconn {

struct NewVertex {
  Vertex vertex;
  int degree;
  friend bool operator==(const NewVertex&, const NewVertex&) = default;
};

/// One iteration of the component exploration.
struct IterationRecord {
  std::int64_t i = 0;
  Vertex v = -1;            // selected vertex; -1 in padding records
  int open = 0;             // open half-edges of v at selection
  int j = 0;                // partners of degree 1 outside the tree
  int k = 0;                // partners of degree 2 outside the tree
  int l = 0;                // partners already in the tree
  std::int64_t x_before = 0;
  std::int64_t x_after = 0;
  std::int64_t edges_exposed = 0;
  double x_star = 0;
  std::vector<NewVertex> new_vertices;

  std::int64_t step() const { return x_after - x_before; }
  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct ExplorationTrace {
  Vertex start = 0;
  std::int64_t m = 0;  // edge count of the explored (multi)graph
  std::int64_t x0 = 0;
  std::vector<IterationRecord> records;
  std::vector<Vertex> component;  // ascending
  std::int64_t died_at = 0;       // iteration at which X reached 0
  friend bool operator==(const ExplorationTrace&, const ExplorationTrace&) = default;
};

/// Parameters of the truncated increment X*:
///   d < m^threshold_exponent / (ln m)^log_power : min(cap_multiplier * d, X_i - X_{i-1})
///   otherwise                                  : high_degree_factor * d
struct TruncationParams {
  double cap_multiplier = 3.0;
  double high_degree_factor = 0.9;
  double threshold_exponent = 0.5;
  double log_power = 2.0;

  /// Infinite for m = 1.
  double threshold(std::int64_t m) const {
    const double md = static_cast<double>(m);
    return std::pow(md, threshold_exponent) / std::pow(std::log(md), log_power);
  }
};

/// X* for one record; zero for padding records after the walk has died.
inline double truncated_increment(const IterationRecord& record, std::int64_t m, const TruncationParams& params = {}) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "truncated increment needs m >= 1");
  if (record.open == 0) return 0.0;
  const double d = record.open;
  if (d < params.threshold(m))
    return std::min(params.cap_multiplier * d, static_cast<double>(record.step()));
  return params.high_degree_factor * d;
}

namespace detail {

struct HalfEdgeIndex {
  explicit HalfEdgeIndex(std::span<const int> degrees) : degrees(degrees.begin(), degrees.end()) {
    HalfEdgeId offset = 0;
    for (std::size_t v = 0; v < degrees.size(); ++v) {
      offsets.push_back(offset);
      for (int s = 0; s < degrees[v]; ++s) owner.push_back(static_cast<Vertex>(v));
      offset += degrees[v];
    }
    offsets.push_back(offset);
  }
  std::vector<int> degrees;
  std::vector<HalfEdgeId> offsets;
  std::vector<Vertex> owner;
};

/// The exploration itself. `partner_of(h)` returns the half-edge matched to
/// the open half-edge h, revealing it if necessary.
template <typename PartnerOf>
ExplorationTrace explore_core(const HalfEdgeIndex& index, Vertex start, std::int64_t m, PartnerOf&& partner_of,
                              const TruncationParams& params) {
  const std::size_t n = index.degrees.size();
  if (start < 0 || static_cast<std::size_t>(start) >= n)
    throw Error(ErrorKind::InvalidArgument, "start vertex out of range");
  const auto deg = [&index](Vertex v) { return index.degrees[static_cast<std::size_t>(v)]; };

  std::vector<int> open(n, 0);
  std::vector<bool> in_tree(n, false);
  std::vector<bool> exposed(index.owner.size(), false);
  std::set<std::pair<int, Vertex>> frontier;  // (open count, label) of tree vertices with open > 0

  const auto set_open = [&](Vertex v, int value) {
    auto& o = open[static_cast<std::size_t>(v)];
    if (o > 0) frontier.erase({o, v});
    o = value;
    if (o > 0) frontier.insert({o, v});
  };

  ExplorationTrace trace;
  trace.start = start;
  trace.m = m;
  in_tree[static_cast<std::size_t>(start)] = true;
  set_open(start, deg(start));
  std::int64_t x = deg(start);
  trace.x0 = x;
  trace.component.push_back(start);

  std::int64_t i = 0;
  while (x > 0) {
    ++i;
    const Vertex v = frontier.begin()->second;
    IterationRecord rec;
    rec.i = i;
    rec.v = v;
    rec.open = open[static_cast<std::size_t>(v)];
    rec.x_before = x;
    const HalfEdgeId first = index.offsets[static_cast<std::size_t>(v)];
    for (HalfEdgeId h = first; h < first + deg(v); ++h) {
      if (exposed[static_cast<std::size_t>(h)]) continue;
      const HalfEdgeId p = partner_of(h);
      const Vertex w = index.owner[static_cast<std::size_t>(p)];
      exposed[static_cast<std::size_t>(h)] = true;
      exposed[static_cast<std::size_t>(p)] = true;
      ++rec.edges_exposed;
      set_open(v, open[static_cast<std::size_t>(v)] - 1);
      if (in_tree[static_cast<std::size_t>(w)]) {
        // back edge, parallel edge or loop: both ends leave the open set;
        // a loop spends two of v's half-edges, each matched into the tree
        set_open(w, open[static_cast<std::size_t>(w)] - 1);
        x -= 2;
        rec.l += w == v ? 2 : 1;
      } else {
        in_tree[static_cast<std::size_t>(w)] = true;
        trace.component.push_back(w);
        set_open(w, deg(w) - 1);
        x += deg(w) - 2;
        if (deg(w) == 1) ++rec.j;
        if (deg(w) == 2) ++rec.k;
        rec.new_vertices.push_back({w, deg(w)});
      }
    }
    rec.x_after = x;
    rec.x_star = truncated_increment(rec, std::max<std::int64_t>(m, 1), params);
    trace.records.push_back(std::move(rec));
  }
  trace.died_at = i;
  std::sort(trace.component.begin(), trace.component.end());
  return trace;
}

}  // namespace detail

/// Explores the component of `start` in a full half-edge matching.
inline ExplorationTrace explore(const DegreeSequence& seq, const Matching& matching, Vertex start,
                                const TruncationParams& params = {}) {
  if (!matching.full()) throw Error(ErrorKind::PartialMatching, "exploration needs a full matching");
  const detail::HalfEdgeIndex index(seq.degrees());
  return detail::explore_core(index, start, seq.edges(), [&matching](HalfEdgeId h) { return matching.partner(h); },
                              params);
}

/// Matching of a simple graph in which slot s of v is paired with v's s-th
/// smallest neighbour, so exploring it processes neighbours in label order.
inline Matching canonical_matching(const SimpleGraph& g) {
  const auto degrees = g.degrees();
  const detail::HalfEdgeIndex index(degrees);
  Matching m(index.owner.size());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto nbrs = g.neighbors(static_cast<Vertex>(v));
    for (std::size_t s = 0; s < nbrs.size(); ++s) {
      const Vertex w = nbrs[s];
      if (w < static_cast<Vertex>(v)) continue;
      const auto wn = g.neighbors(w);
      const auto back = std::lower_bound(wn.begin(), wn.end(), static_cast<Vertex>(v)) - wn.begin();
      m.pair(index.offsets[v] + static_cast<HalfEdgeId>(s),
             index.offsets[static_cast<std::size_t>(w)] + static_cast<HalfEdgeId>(back));
    }
  }
  return m;
}

/// Deterministic exploration of a fixed simple graph: v_i has the fewest
/// open half-edges among tree vertices (smallest label on ties) and its
/// neighbours are exposed in ascending label order.
inline ExplorationTrace explore(const SimpleGraph& g, Vertex start, const TruncationParams& params = {}) {
  const auto degrees = g.degrees();
  const detail::HalfEdgeIndex index(degrees);
  const Matching matching = canonical_matching(g);
  return detail::explore_core(index, start, g.edge_count(), [&matching](HalfEdgeId h) { return matching.partner(h); },
                              params);
}

enum class RevealMode { Multigraph, SimpleConditioned };

inline RevealMode parse_reveal_mode(std::string_view name) {
  if (name == "multigraph") return RevealMode::Multigraph;
  if (name == "simple" || name == "simple-conditioned") return RevealMode::SimpleConditioned;
  throw Error(ErrorKind::InvalidArgument, "unknown exploration mode '" + std::string(name) + "'");
}

struct RevealResult {
  ExplorationTrace trace;
  Matching matching;                  // multigraph mode
  std::optional<MultiGraph> multigraph;
  std::optional<SimpleGraph> graph;   // simple-conditioned mode
};

/// Generates the graph together with the exploration.
///
/// Multigraph mode reveals the configuration model online. The unmatched
/// pool starts as 0..2m-1 and removal swaps the removed id with the last
/// entry. To reveal open half-edge h: remove h, draw below(pool size), and
/// remove and return that entry. After the component dies, the remaining
/// half-edges are matched the same way, always taking the smallest
/// unmatched id as h.
///
/// Simple-conditioned mode samples a uniform simple graph first and replays
/// the deterministic exploration on it.
inline RevealResult explore_revealing(const DegreeSequence& seq, Rng& rng, Vertex start, RevealMode mode,
                                      const SamplerConfig& sampler = {}, const TruncationParams& params = {}) {
  RevealResult out;
  if (mode == RevealMode::SimpleConditioned) {
    out.graph = sample_graph(seq, sampler, rng);
    out.trace = explore(*out.graph, start, params);
    return out;
  }
  const auto total = static_cast<std::size_t>(seq.half_edges());
  std::vector<HalfEdgeId> pool(total);
  std::vector<std::size_t> position(total);
  for (std::size_t h = 0; h < total; ++h) {
    pool[h] = static_cast<HalfEdgeId>(h);
    position[h] = h;
  }
  const auto remove = [&](HalfEdgeId h) {
    const std::size_t at = position[static_cast<std::size_t>(h)];
    const HalfEdgeId last = pool.back();
    pool[at] = last;
    position[static_cast<std::size_t>(last)] = at;
    pool.pop_back();
  };
  Matching matching(total);
  const auto reveal = [&](HalfEdgeId h) {
    if (matching.matched(h)) return matching.partner(h);
    remove(h);
    const HalfEdgeId p = pool[rng.below(pool.size())];
    remove(p);
    matching.pair(h, p);
    return p;
  };
  const detail::HalfEdgeIndex index(seq.degrees());
  out.trace = detail::explore_core(index, start, seq.edges(), reveal, params);
  for (HalfEdgeId h = 0; h < static_cast<HalfEdgeId>(total); ++h)
    if (!matching.matched(h)) reveal(h);
  out.multigraph = matching_to_multigraph(seq, matching);
  out.matching = std::move(matching);
  return out;
}

/// Records padded with zero steps up to `steps` iterations.
inline std::vector<IterationRecord> padded_records(const ExplorationTrace& trace, std::int64_t steps) {
  std::vector<IterationRecord> out = trace.records;
  for (auto i = static_cast<std::int64_t>(out.size()) + 1; i <= steps; ++i) {
    IterationRecord pad;
    pad.i = i;
    out.push_back(pad);
  }
  return out;
}

inline std::int64_t isqrt(std::int64_t x) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

/// Violation counts for the per-iteration inequalities of a trace.
struct TraceCheck {
  std::uint64_t records = 0;
  std::uint64_t jkl_exceeds_open = 0;     // J + K + L <= d
  std::uint64_t step_lower_bound = 0;     // step >= d - 2J - K - 3L
  std::uint64_t step_floor = 0;           // step >= -2d
  std::uint64_t back_edge_sqrt = 0;       // L <= floor(sqrt(X_{i-1}))
  std::uint64_t back_edge_capacity = 0;   // L >= 1  =>  X_{i-1} >= d (L + 1)
  std::uint64_t open_vs_back_edges = 0;   // X_i >= L (L - 1)

  std::uint64_t violations() const {
    return jkl_exceeds_open + step_lower_bound + step_floor + back_edge_sqrt + back_edge_capacity + open_vs_back_edges;
  }

  void merge(const TraceCheck& o) {
    records += o.records;
    jkl_exceeds_open += o.jkl_exceeds_open;
    step_lower_bound += o.step_lower_bound;
    step_floor += o.step_floor;
    back_edge_sqrt += o.back_edge_sqrt;
    back_edge_capacity += o.back_edge_capacity;
    open_vs_back_edges += o.open_vs_back_edges;
  }
};

inline TraceCheck check_trace(const ExplorationTrace& trace) {
  TraceCheck c;
  for (const auto& r : trace.records) {
    ++c.records;
    const std::int64_t d = r.open, j = r.j, k = r.k, l = r.l;
    if (j + k + l > d) ++c.jkl_exceeds_open;
    if (r.step() < d - 2 * j - k - 3 * l) ++c.step_lower_bound;
    if (r.step() < -2 * d) ++c.step_floor;
    if (l > isqrt(r.x_before)) ++c.back_edge_sqrt;
    if (l >= 1 && r.x_before < d * (l + 1)) ++c.back_edge_capacity;
    if (r.x_after < l * (l - 1)) ++c.open_vs_back_edges;
  }
  return c;
}

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) { return nlohmann::json(x).dump(); }

/// CSV with columns i,v_i,d_i,J,K,L,X,X_star (vertex labels 1-based).
inline std::string trace_to_csv(const ExplorationTrace& trace) {
  std::ostringstream out;
  out << "i,v_i,d_i,J,K,L,X,X_star\n";
  for (const auto& r : trace.records)
    out << r.i << ',' << (r.v + 1) << ',' << r.open << ',' << r.j << ',' << r.k << ',' << r.l << ',' << r.x_after
        << ',' << format_double(r.x_star) << '\n';
  return out.str();
}

inline nlohmann::ordered_json to_json(const ExplorationTrace& trace) {
  nlohmann::ordered_json j;
  j["start"] = trace.start + 1;
  j["m"] = trace.m;
  j["x0"] = trace.x0;
  j["died_at"] = trace.died_at;
  auto comp = nlohmann::ordered_json::array();
  for (Vertex v : trace.component) comp.push_back(v + 1);
  j["component"] = std::move(comp);
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : trace.records) {
    nlohmann::ordered_json rec;
    rec["i"] = r.i;
    rec["v_i"] = r.v + 1;
    rec["d_i"] = r.open;
    rec["J"] = r.j;
    rec["K"] = r.k;
    rec["L"] = r.l;
    rec["X"] = r.x_after;
    rec["X_star"] = r.x_star;
    auto added = nlohmann::ordered_json::array();
    for (const auto& nv : r.new_vertices) added.push_back({nv.vertex + 1, nv.degree});
    rec["new_vertices"] = std::move(added);
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  return j;
}

}  // namespace degconn
