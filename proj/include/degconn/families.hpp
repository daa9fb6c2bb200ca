#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "degconn/degree_sequence.hpp"
#include "degconn/error.hpp"

namespace degconn {

// Named sequence families. Low-degree vertices take the smallest labels.
//   regular(d, n)          n vertices of degree d
//   with-leaves(n1, d, n)  n1 vertices of degree 1, the rest degree d
//   with-twos(n2, d, n)    n2 vertices of degree 2, the rest degree d
//   star(n)                d(n) = n-1, the rest degree 1
//   two-stars(n)           d(n) = d(n-1) = n-1, the rest degree 2

namespace detail {

inline void require_family(bool ok, const std::string& spec, const std::string& why) {
  if (!ok) throw Error(ErrorKind::InfeasibleFamily, spec + ": " + why);
}

inline std::vector<std::int64_t> mixed_family(std::int64_t low_count, std::int64_t low_degree, std::int64_t d,
                                              std::int64_t n, const std::string& spec) {
  require_family(n >= 1, spec, "n must be positive");
  require_family(low_count >= 0 && low_count <= n, spec, "count out of range");
  require_family(d >= 1 && (d < n || low_count == n), spec, "degree must be in 1..n-1");
  std::vector<std::int64_t> out(static_cast<std::size_t>(n), d);
  std::fill(out.begin(), out.begin() + low_count, low_degree);
  return out;
}

}  // namespace detail

namespace detail {
inline std::vector<std::int64_t> family_degrees_unchecked(const std::string& spec);
}

/// Degree list of a named family; InfeasibleFamily unless it is graphical.
inline std::vector<std::int64_t> family_degrees(const std::string& spec) {
  auto degrees = detail::family_degrees_unchecked(spec);
  detail::require_family(std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0}) % 2 == 0, spec,
                         "degree sum is odd");
  detail::require_family(is_graphical(degrees), spec, "not graphical");
  return degrees;
}

inline std::vector<std::int64_t> detail::family_degrees_unchecked(const std::string& spec) {
  static const std::regex pattern(R"(^\s*([a-z\-]+)\s*\(\s*([0-9\s,]*)\)\s*$)");
  std::smatch match;
  if (!std::regex_match(spec, match, pattern))
    throw Error(ErrorKind::Parse, "bad family '" + spec + "'; expected name(arg, ...)");
  const std::string name = match[1];
  std::vector<std::int64_t> args;
  {
    std::string list = match[2];
    std::replace(list.begin(), list.end(), ',', ' ');
    std::istringstream in(list);
    std::int64_t x = 0;
    while (in >> x) args.push_back(x);
  }
  const auto arity = [&](std::size_t k) {
    if (args.size() != k)
      throw Error(ErrorKind::Parse, name + " takes " + std::to_string(k) + " argument(s)");
  };
  if (name == "regular") {
    arity(2);
    return detail::mixed_family(0, 0, args[0], args[1], spec);
  }
  if (name == "with-leaves") {
    arity(3);
    return detail::mixed_family(args[0], 1, args[1], args[2], spec);
  }
  if (name == "with-twos") {
    arity(3);
    return detail::mixed_family(args[0], 2, args[1], args[2], spec);
  }
  if (name == "star") {
    arity(1);
    detail::require_family(args[0] >= 2, spec, "a star needs n >= 2");
    std::vector<std::int64_t> out(static_cast<std::size_t>(args[0]), 1);
    out.back() = args[0] - 1;
    return out;
  }
  if (name == "two-stars") {
    arity(1);
    detail::require_family(args[0] >= 3, spec, "two-stars needs n >= 3");
    std::vector<std::int64_t> out(static_cast<std::size_t>(args[0]), 2);
    out[out.size() - 1] = out[out.size() - 2] = args[0] - 1;
    return out;
  }
  throw Error(ErrorKind::Parse, "unknown family '" + name + "'");
}

inline DegreeSequence family_sequence(const std::string& spec) {
  const auto degrees = family_degrees(spec);
  return DegreeSequence::validate(degrees);
}

}  // namespace degconn
