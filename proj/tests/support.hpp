#pragma once

// Test-only oracles. The brute-force enumerators below share no code with
// the library's realization enumerator or samplers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "degconn/degconn.hpp"

namespace degconn::test_support {

/// Degree vectors of all labeled graphs on n vertices (n <= 7).
inline std::set<std::vector<std::int64_t>> brute_force_degree_vectors(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::set<std::vector<std::int64_t>> out;
  for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(n), 0);
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask & (1U << b)) ++d[static_cast<std::size_t>(pairs[b].first)], ++d[static_cast<std::size_t>(pairs[b].second)];
    out.insert(d);
  }
  return out;
}

/// Every perfect matching on `total` half-edges (no simplicity filter).
inline void for_each_perfect_matching(std::size_t total, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> partner(total, -1);
  std::function<void()> rec = [&] {
    const auto it = std::find(partner.begin(), partner.end(), -1);
    if (it == partner.end()) {
      visit(partner);
      return;
    }
    const auto h = static_cast<int>(it - partner.begin());
    for (int p = h + 1; p < static_cast<int>(total); ++p) {
      if (partner[static_cast<std::size_t>(p)] != -1) continue;
      partner[static_cast<std::size_t>(h)] = p;
      partner[static_cast<std::size_t>(p)] = h;
      rec();
      partner[static_cast<std::size_t>(h)] = -1;
      partner[static_cast<std::size_t>(p)] = -1;
    }
  };
  rec();
}

inline std::vector<int> owners_of(const std::vector<std::int64_t>& degrees) {
  std::vector<int> owner;
  for (std::size_t v = 0; v < degrees.size(); ++v)
    for (std::int64_t s = 0; s < degrees[v]; ++s) owner.push_back(static_cast<int>(v));
  return owner;
}

/// Simple graphs (as sorted edge lists) reached from all matchings, with
/// the number of matchings producing each.
inline std::map<std::vector<Edge>, std::uint64_t> simple_graphs_from_matchings(const std::vector<std::int64_t>& degrees) {
  const auto owner = owners_of(degrees);
  std::map<std::vector<Edge>, std::uint64_t> out;
  for_each_perfect_matching(owner.size(), [&](const std::vector<int>& partner) {
    std::vector<Edge> edges;
    for (std::size_t h = 0; h < partner.size(); ++h) {
      if (static_cast<int>(h) > partner[h]) continue;
      Vertex a = owner[h], b = owner[static_cast<std::size_t>(partner[h])];
      if (a == b) return;
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return;
    ++out[edges];
  });
  return out;
}

/// All nondecreasing graphical sequences (degrees >= 1) with 2 <= 2m <= max_half_edges.
inline std::vector<std::vector<std::int64_t>> graphical_sequences(int max_half_edges) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> current;
  std::function<void(int, int)> parts = [&](int remaining, int max_part) {
    if (remaining == 0) {
      std::vector<std::int64_t> seq(current.rbegin(), current.rend());
      if (is_graphical(seq)) out.push_back(seq);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      parts(remaining - p, p);
      current.pop_back();
    }
  };
  for (int total = 2; total <= max_half_edges; total += 2) parts(total, total);
  return out;
}

/// Injective 64-bit key: the adjacency bitmask when n(n-1)/2 <= 64,
/// otherwise pair indices packed 7 bits each (n <= 16, m <= 9).
inline std::uint64_t graph_key(const SimpleGraph& g) {
  const auto n = static_cast<std::uint64_t>(g.vertex_count());
  const bool bitmask = n * (n - 1) / 2 <= 64;
  if (!bitmask && (n > 16 || g.edge_count() > 9)) throw std::runtime_error("graph too large for a 64-bit key");
  std::uint64_t key = 0;
  for (const auto& [u, v] : g.edges()) {
    const auto index = static_cast<std::uint64_t>(v * (v - 1) / 2 + u);
    key = bitmask ? key | (std::uint64_t{1} << index) : (key << 7) | index;
  }
  return key;
}

inline std::uint64_t graph_key(std::size_t n, const std::vector<Edge>& edges) {
  return graph_key(SimpleGraph::from_edges(n, edges));
}

/// Uniform law over realizations folded into `bins` classes by rank, so
/// that coarse goodness-of-fit tests stay meaningful when realizations
/// outnumber samples.
class BinnedUniform {
 public:
  BinnedUniform(std::vector<std::uint64_t> keys, std::size_t bins) : keys_(std::move(keys)) {
    std::sort(keys_.begin(), keys_.end());
    bins_ = std::min(bins, keys_.size());
    probability_.assign(bins_, 0.0);
    for (std::size_t r = 0; r < keys_.size(); ++r) probability_[r % bins_] += 1.0;
    for (auto& p : probability_) p /= static_cast<double>(keys_.size());
  }

  std::size_t bins() const { return bins_; }
  std::size_t realizations() const { return keys_.size(); }
  const std::vector<double>& probability() const { return probability_; }

  /// Bin of a realization; throws if the key is unknown.
  std::size_t bin_of(std::uint64_t key) const {
    const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) throw std::runtime_error("graph is not a realization");
    return static_cast<std::size_t>(it - keys_.begin()) % bins_;
  }

  /// Chi-square goodness-of-fit p-value of the observed bin counts.
  double chi_square_p(const std::vector<std::uint64_t>& counts) const {
    if (bins_ < 2) return 1.0;
    double total = 0;
    for (auto c : counts) total += static_cast<double>(c);
    double stat = 0;
    for (std::size_t b = 0; b < bins_; ++b) {
      const double expected = total * probability_[b];
      const double diff = static_cast<double>(counts[b]) - expected;
      stat += diff * diff / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(bins_ - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
  }

  double total_variation(const std::vector<std::uint64_t>& counts) const {
    double total = 0;
    for (auto c : counts) total += static_cast<double>(c);
    double tv = 0;
    for (std::size_t b = 0; b < bins_; ++b) tv += std::abs(static_cast<double>(counts[b]) / total - probability_[b]);
    return tv / 2;
  }

 private:
  std::vector<std::uint64_t> keys_;
  std::size_t bins_ = 1;
  std::vector<double> probability_;
};

inline BinnedUniform binned_realizations(const DegreeSequence& seq, std::size_t bins) {
  std::vector<std::uint64_t> keys;
  for_each_realization(seq, [&](const std::vector<Edge>& e) { keys.push_back(graph_key(seq.size(), e)); });
  return BinnedUniform(std::move(keys), bins);
}

}  // namespace degconn::test_support
