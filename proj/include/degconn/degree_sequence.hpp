#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "degconn/error.hpp"

namespace degconn {

using Vertex = std::int32_t;
using HalfEdgeId = std::int32_t;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parity plus the Erdos-Gallai inequalities. Accepts degrees in any order;
/// does not check positivity.
inline bool is_graphical(std::span<const std::int64_t> degrees) {
  std::vector<std::int64_t> d(degrees.begin(), degrees.end());
  std::sort(d.begin(), d.end(), std::greater<>());
  const auto n = static_cast<std::int64_t>(d.size());
  if (n == 0) return true;
  if (d.back() < 0) return false;
  std::vector<std::int64_t> suffix(n + 1, 0);
  for (std::int64_t i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + d[i];
  if (suffix[0] % 2 != 0) return false;
  std::int64_t prefix = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    prefix += d[k - 1];
    // first index (0-based) with d < k; d is non-increasing
    const auto it = std::partition_point(d.begin(), d.end(), [k](std::int64_t x) { return x >= k; });
    const std::int64_t big_end = std::max<std::int64_t>(it - d.begin(), k);
    const std::int64_t rhs = k * (k - 1) + k * (big_end - k) + suffix[big_end];
    if (prefix > rhs) return false;
  }
  return true;
}

/// A graphical degree sequence with every degree at least one. Immutable.
///
/// Vertices are indexed 0..n-1 internally; all external formats use labels
/// 1..n.  Half-edges of vertex v occupy the global ids
/// offset(v) .. offset(v) + d(v) - 1, where offset is the prefix sum of the
/// degrees in label order.
class DegreeSequence {
 public:
  static DegreeSequence validate(std::span<const std::int64_t> degrees) {
    check_positive_even(degrees);
    if (!is_graphical(degrees)) throw Error(ErrorKind::NotGraphical, "sequence fails the Erdos-Gallai criterion");
    return DegreeSequence(degrees, true);
  }

  /// Configuration-model sequence: positive degrees with an even sum, not
  /// necessarily graphical (e.g. [2], realizable only with a loop). Only the
  /// multigraph operations accept these.
  static DegreeSequence configuration(std::span<const std::int64_t> degrees) {
    check_positive_even(degrees);
    return DegreeSequence(degrees, is_graphical(degrees));
  }

  static DegreeSequence validate(std::initializer_list<std::int64_t> degrees) {
    std::vector<std::int64_t> v(degrees);
    return validate(std::span<const std::int64_t>(v));
  }

  static DegreeSequence configuration(std::initializer_list<std::int64_t> degrees) {
    std::vector<std::int64_t> v(degrees);
    return configuration(std::span<const std::int64_t>(v));
  }

  bool graphical() const noexcept { return graphical_; }
  std::size_t size() const noexcept { return degrees_.size(); }
  std::int64_t edges() const noexcept { return edges_; }
  std::int64_t half_edges() const noexcept { return 2 * edges_; }

  int degree(Vertex v) const { return degrees_[static_cast<std::size_t>(v)]; }
  std::span<const int> degrees() const noexcept { return degrees_; }
  /// Nondecreasing copy of the degrees.
  std::span<const int> sorted() const noexcept { return sorted_; }
  int max_degree() const noexcept { return sorted_.back(); }
  int min_degree() const noexcept { return sorted_.front(); }

  /// n_d: number of vertices of degree d.
  std::int64_t count(int d) const {
    auto it = counts_.find(d);
    return it == counts_.end() ? 0 : it->second;
  }
  const std::map<int, std::int64_t>& counts() const noexcept { return counts_; }

  HalfEdgeId offset(Vertex v) const { return offsets_[static_cast<std::size_t>(v)]; }
  HalfEdgeId half_edge(Vertex v, int slot) const { return offsets_[static_cast<std::size_t>(v)] + slot; }
  Vertex owner(HalfEdgeId h) const { return owner_[static_cast<std::size_t>(h)]; }
  int slot(HalfEdgeId h) const { return h - offsets_[static_cast<std::size_t>(owner(h))]; }

  /// D*: sum of the d(n) largest degrees.
  std::int64_t d_star() const noexcept { return d_star_; }

  std::vector<std::int64_t> as_vector() const { return {degrees_.begin(), degrees_.end()}; }

  friend bool operator==(const DegreeSequence& a, const DegreeSequence& b) { return a.degrees_ == b.degrees_; }

 private:
  static void check_positive_even(std::span<const std::int64_t> degrees) {
    if (degrees.empty()) throw Error(ErrorKind::EmptySequence, "degree sequence is empty");
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      if (degrees[i] < 0)
        throw Error(ErrorKind::NegativeDegree, "vertex " + std::to_string(i + 1) + " has negative degree");
      if (degrees[i] == 0)
        throw Error(ErrorKind::ZeroDegree, "vertex " + std::to_string(i + 1) + " has degree 0");
      sum += degrees[i];
    }
    if (sum % 2 != 0) throw Error(ErrorKind::OddSum, "degree sum " + std::to_string(sum) + " is odd");
  }

  DegreeSequence(std::span<const std::int64_t> degrees, bool graphical) : graphical_(graphical) {
    degrees_.reserve(degrees.size());
    offsets_.reserve(degrees.size() + 1);
    HalfEdgeId offset = 0;
    for (std::size_t v = 0; v < degrees.size(); ++v) {
      const int d = static_cast<int>(degrees[v]);
      degrees_.push_back(d);
      offsets_.push_back(offset);
      for (int s = 0; s < d; ++s) owner_.push_back(static_cast<Vertex>(v));
      offset += d;
      ++counts_[d];
    }
    offsets_.push_back(offset);
    edges_ = offset / 2;
    sorted_ = degrees_;
    std::sort(sorted_.begin(), sorted_.end());
    const auto top = std::min<std::size_t>(static_cast<std::size_t>(sorted_.back()), sorted_.size());
    d_star_ = std::accumulate(sorted_.end() - static_cast<std::ptrdiff_t>(top), sorted_.end(), std::int64_t{0});
  }

  std::vector<int> degrees_;
  std::vector<int> sorted_;
  std::vector<HalfEdgeId> offsets_;
  std::vector<Vertex> owner_;
  std::map<int, std::int64_t> counts_;
  std::int64_t edges_ = 0;
  std::int64_t d_star_ = 0;
  bool graphical_ = true;
};

/// Simple-graph operations reject configuration-only sequences.
inline void require_graphical(const DegreeSequence& seq) {
  if (!seq.graphical()) throw Error(ErrorKind::NotGraphical, "operation needs a graphical sequence");
}

/// Closed-form invariants of a degree sequence. Each u-value is kept as an
/// exact rational; the double fields mirror them for reporting.
struct InvariantSet {
  Rational u_edge, u_triangle, u_triangle_pendant, u_k4_minus_e, u_k4, u_k5_plus;
  std::int64_t d_star = 0;
  std::int64_t delta_star = 1;

  /// Sum of the six u-invariants: the disconnection bound without its
  /// unspecified constant.
  Rational bound() const {
    return u_edge + u_triangle + u_triangle_pendant + u_k4_minus_e + u_k4 + u_k5_plus;
  }
};

inline double to_double(const Rational& r) { return static_cast<double>(r); }

/// "p/q" with q >= 1, also for integers.
inline std::string rational_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline constexpr std::int64_t kDeltaStarCap = 1'000'000;

/// delta* = min(10^6, max{k >= 1 : n_1 + ... + n_k <= n / 10^24}).
/// When even k = 1 fails the max is taken as 0 and the result clamped to 1.
inline std::int64_t compute_delta_star(const DegreeSequence& seq) {
  static const BigInt kScale = boost::multiprecision::pow(BigInt(10), 24);
  const BigInt n = static_cast<std::int64_t>(seq.size());
  std::int64_t best = 0;
  std::int64_t cumulative = 0;
  for (std::int64_t k = 1; k <= std::min<std::int64_t>(seq.max_degree(), kDeltaStarCap); ++k) {
    cumulative += seq.count(static_cast<int>(k));
    if (BigInt(cumulative) * kScale <= n) best = k; else break;
  }
  // the cumulative count reaches n at k = dmax, where the inequality fails
  return std::clamp<std::int64_t>(best, 1, kDeltaStarCap);
}

inline InvariantSet compute_invariants(const DegreeSequence& seq) {
  using boost::multiprecision::pow;
  const BigInt m = seq.edges();
  const BigInt n = static_cast<std::int64_t>(seq.size());
  const auto pos = [](std::int64_t x) { return BigInt(std::max<std::int64_t>(x, 0)); };
  const std::int64_t n1 = seq.count(1), n2 = seq.count(2), n3 = seq.count(3);

  InvariantSet inv;
  inv.u_edge = Rational(pow(pos(n1 - 1), 2), m);
  inv.u_triangle = Rational(pow(pos(n2 - 2), 3), pow(m, 3));
  inv.u_triangle_pendant = Rational(BigInt(n1) * pow(pos(n2 - 1), 2) * BigInt(n3), pow(m, 4));
  inv.u_k4_minus_e = Rational(pow(pos(n2 - 1), 2) * pow(pos(n3 - 1), 2), pow(m, 5));
  inv.u_k4 = Rational(pow(pos(n3 - 3), 4), pow(m, 6));
  inv.u_k5_plus = Rational(n, pow(m, 6));
  inv.d_star = seq.d_star();
  inv.delta_star = compute_delta_star(seq);
  return inv;
}

inline Rational theorem1_bound(const InvariantSet& inv) { return inv.bound(); }

inline nlohmann::ordered_json to_json(const InvariantSet& inv) {
  nlohmann::ordered_json j;
  const auto put = [&j](const char* name, const Rational& r) {
    j[name] = {{"rational", rational_string(r)}, {"float", to_double(r)}};
  };
  put("u_edge", inv.u_edge);
  put("u_triangle", inv.u_triangle);
  put("u_triangle_pendant", inv.u_triangle_pendant);
  put("u_k4_minus_e", inv.u_k4_minus_e);
  put("u_k4", inv.u_k4);
  put("u_k5_plus", inv.u_k5_plus);
  j["d_star"] = inv.d_star;
  j["delta_star"] = inv.delta_star;
  put("theorem1_bound", inv.bound());
  return j;
}

/// Parses a degree list given either as a JSON array or as integers
/// separated by whitespace and/or commas.
inline std::vector<std::int64_t> parse_degree_list(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw Error(ErrorKind::Parse, "empty degree list");
  std::vector<std::int64_t> out;
  if (text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, e.what());
    }
    if (!j.is_array()) throw Error(ErrorKind::Parse, "expected a JSON array of integers");
    for (const auto& x : j) {
      if (!x.is_number_integer()) throw Error(ErrorKind::Parse, "non-integer entry " + x.dump());
      out.push_back(x.get<std::int64_t>());
    }
    return out;
  }
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "not an integer: '" + token + "'");
    }
    if (used != token.size()) throw Error(ErrorKind::Parse, "not an integer: '" + token + "'");
    out.push_back(value);
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "empty degree list");
  return out;
}

inline std::vector<std::int64_t> read_degree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_degree_list(buffer.str());
}

}  // namespace degconn
