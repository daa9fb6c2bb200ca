#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <nlohmann/json.hpp>

#include "degconn/components.hpp"
#include "degconn/degree_sequence.hpp"
#include "degconn/exploration.hpp"
#include "degconn/random.hpp"
#include "degconn/sampler.hpp"

namespace degconn {

struct Interval {
  double lower = 0;
  double upper = 1;
};

inline constexpr double kZ95 = 1.959963984540054;

inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95) {
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

inline Interval clopper_pearson_interval(std::uint64_t successes, std::uint64_t trials, double alpha = 0.05) {
  if (trials == 0) return {0, 1};
  using boost::math::beta_distribution;
  using boost::math::quantile;
  const double x = static_cast<double>(successes), n = static_cast<double>(trials);
  Interval ci;
  ci.lower = successes == 0 ? 0.0 : quantile(beta_distribution<>(x, n - x + 1), alpha / 2);
  ci.upper = successes == trials ? 1.0 : quantile(beta_distribution<>(x + 1, n - x), 1 - alpha / 2);
  return ci;
}

/// 4 (ln m)^4, the edge count above which a component counts as large.
inline double large_component_threshold(std::int64_t m) {
  return 4 * std::pow(std::log(static_cast<double>(m)), 4);
}

/// The five classes with a closed-form u-invariant.
inline constexpr std::array<ComponentClass, 5> kBoundedClasses = {
    ComponentClass::Edge, ComponentClass::Triangle, ComponentClass::TrianglePendant, ComponentClass::K4MinusE,
    ComponentClass::K4};

inline const Rational& invariant_for(const InvariantSet& inv, ComponentClass c) {
  switch (c) {
    case ComponentClass::Edge: return inv.u_edge;
    case ComponentClass::Triangle: return inv.u_triangle;
    case ComponentClass::TrianglePendant: return inv.u_triangle_pendant;
    case ComponentClass::K4MinusE: return inv.u_k4_minus_e;
    case ComponentClass::K4: return inv.u_k4;
    default: return inv.u_k5_plus;
  }
}

inline std::uint64_t count_of(const ComponentTaxonomy& t, ComponentClass c) {
  switch (c) {
    case ComponentClass::Edge: return t.edge;
    case ComponentClass::Triangle: return t.triangle;
    case ComponentClass::TrianglePendant: return t.triangle_pendant;
    case ComponentClass::K4MinusE: return t.k4_minus_e;
    case ComponentClass::K4: return t.k4;
    default: return 0;
  }
}

/// Integer tallies over a set of trials; merge is exact and associative.
struct CensusTally {
  std::uint64_t trials = 0;
  std::uint64_t disconnected = 0;
  std::uint64_t two_large = 0;
  std::uint64_t components = 0;
  ComponentTaxonomy taxonomy;
  std::map<std::int64_t, std::uint64_t> second_largest_edges;
  std::array<std::uint64_t, 5> class_squares{};  // sum of squared per-trial counts, kBoundedClasses order

  void merge(const CensusTally& o) {
    trials += o.trials;
    disconnected += o.disconnected;
    two_large += o.two_large;
    components += o.components;
    taxonomy.merge(o.taxonomy);
    for (const auto& [k, v] : o.second_largest_edges) second_largest_edges[k] += v;
    for (std::size_t c = 0; c < class_squares.size(); ++c) class_squares[c] += o.class_squares[c];
  }

  friend bool operator==(const CensusTally&, const CensusTally&) = default;
};

/// Adds one sampled graph to the tally.
inline void tally_graph(CensusTally& tally, const SimpleGraph& g, double large_threshold) {
  const auto components = connected_components(g);
  ++tally.trials;
  tally.components += components.size();
  if (components.size() > 1) ++tally.disconnected;
  ComponentTaxonomy local;
  std::int64_t largest = 0, second = 0;
  std::uint64_t large = 0;
  for (const auto& c : components) {
    local.add(classify_component(g, c));
    if (static_cast<double>(c.edges) > large_threshold) ++large;
    if (c.edges > largest) {
      second = largest;
      largest = c.edges;
    } else if (c.edges > second) {
      second = c.edges;
    }
  }
  if (large >= 2) ++tally.two_large;
  ++tally.second_largest_edges[second];
  for (std::size_t c = 0; c < kBoundedClasses.size(); ++c) {
    const auto x = count_of(local, kBoundedClasses[c]);
    tally.class_squares[c] += x * x;
  }
  tally.taxonomy.merge(local);
}

/// Runs trials [0, trials) on `threads` workers, each over a contiguous block
/// of trial indices. `run(trial, tally)` must depend only on the trial index.
template <typename Tally, typename Run>
Tally run_trials(std::uint64_t trials, unsigned threads, Run&& run) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(trials, 1))));
  std::vector<Tally> partial(threads);
  std::vector<std::exception_ptr> errors(threads);
  const auto work = [&](unsigned w) {
    const std::uint64_t begin = trials * w / threads, end = trials * (w + 1) / threads;
    try {
      for (std::uint64_t t = begin; t < end; ++t) run(t, partial[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Tally total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

struct CensusOptions {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  SamplerConfig sampler;
  unsigned threads = 1;
  std::optional<double> max_interval_width;  // TrialsTooFew when the Wilson interval is wider
};

struct ClassComparison {
  ComponentClass cls;
  double mean = 0;
  double std_error = 0;
  Rational u;
  std::optional<double> ratio;  // mean / u, absent when u = 0
};

struct CensusReport {
  std::vector<std::int64_t> degrees;
  std::int64_t n = 0, m = 0;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::Rejection;
  CensusTally tally;
  double p_hat = 0;
  Interval wilson;
  Interval clopper_pearson;
  bool near_boundary = false;  // fewer than 10 successes or failures: prefer Clopper-Pearson
  InvariantSet invariants;
  std::optional<double> bound_ratio;  // p_hat / theorem-1 bound, absent when the bound is 0
  double large_threshold = 0;
  double two_large_frequency = 0;
  std::vector<ClassComparison> classes;
};

inline std::vector<ClassComparison> compare_classes(const CensusTally& tally, const InvariantSet& inv) {
  std::vector<ClassComparison> out;
  const double n = static_cast<double>(tally.trials);
  for (std::size_t c = 0; c < kBoundedClasses.size(); ++c) {
    ClassComparison cc;
    cc.cls = kBoundedClasses[c];
    cc.mean = static_cast<double>(count_of(tally.taxonomy, cc.cls)) / n;
    const double second_moment = static_cast<double>(tally.class_squares[c]) / n;
    const double var = n > 1 ? std::max(0.0, second_moment - cc.mean * cc.mean) * n / (n - 1) : 0.0;
    cc.std_error = std::sqrt(var / n);
    cc.u = invariant_for(inv, cc.cls);
    if (cc.u != 0) cc.ratio = cc.mean / to_double(cc.u);
    out.push_back(std::move(cc));
  }
  return out;
}

/// Monte Carlo estimate of P(disconnected) with the full component census.
/// Trial t draws from Rng(trial_seed(seed, t)); results do not depend on
/// the thread count.
inline CensusReport estimate_disconnection(const DegreeSequence& seq, const CensusOptions& options) {
  if (options.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  CensusReport r;
  r.degrees = seq.as_vector();
  r.n = static_cast<std::int64_t>(seq.size());
  r.m = seq.edges();
  r.seed = options.seed;
  r.sampler = resolve_sampler(seq, options.sampler.kind);
  r.large_threshold = large_component_threshold(r.m);
  SamplerConfig sampler = options.sampler;
  sampler.kind = r.sampler;
  r.tally = run_trials<CensusTally>(options.trials, options.threads, [&](std::uint64_t t, CensusTally& tally) {
    Rng rng(trial_seed(options.seed, t));
    tally_graph(tally, sample_graph(seq, sampler, rng), r.large_threshold);
  });
  const auto& t = r.tally;
  r.p_hat = static_cast<double>(t.disconnected) / static_cast<double>(t.trials);
  r.wilson = wilson_interval(t.disconnected, t.trials);
  r.clopper_pearson = clopper_pearson_interval(t.disconnected, t.trials);
  r.near_boundary = std::min(t.disconnected, t.trials - t.disconnected) < 10;
  r.invariants = compute_invariants(seq);
  const Rational bound = r.invariants.bound();
  if (bound != 0) r.bound_ratio = r.p_hat / to_double(bound);
  r.two_large_frequency = static_cast<double>(t.two_large) / static_cast<double>(t.trials);
  r.classes = compare_classes(t, r.invariants);
  if (options.max_interval_width && r.wilson.upper - r.wilson.lower > *options.max_interval_width)
    throw Error(ErrorKind::TrialsTooFew, "Wilson interval width " + std::to_string(r.wilson.upper - r.wilson.lower) +
                                             " exceeds the requested " + std::to_string(*options.max_interval_width));
  return r;
}

inline nlohmann::ordered_json optional_json(const std::optional<double>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json("N/A");
}

inline nlohmann::ordered_json to_json(const CensusReport& r) {
  nlohmann::ordered_json j;
  j["degrees"] = r.degrees;
  j["n"] = r.n;
  j["m"] = r.m;
  j["trials"] = r.tally.trials;
  j["seed"] = r.seed;
  j["sampler"] = to_string(r.sampler);
  j["disconnected"] = r.tally.disconnected;
  j["p_hat"] = r.p_hat;
  j["wilson95"] = {r.wilson.lower, r.wilson.upper};
  j["clopper_pearson95"] = {r.clopper_pearson.lower, r.clopper_pearson.upper};
  j["near_boundary"] = r.near_boundary;
  j["invariants"] = to_json(r.invariants);
  j["bound_ratio"] = optional_json(r.bound_ratio);
  j["large_threshold"] = r.large_threshold;
  j["two_large_frequency"] = r.two_large_frequency;
  auto second = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.tally.second_largest_edges) second[std::to_string(k)] = v;
  j["second_largest_edges"] = std::move(second);
  j["mean_components"] = static_cast<double>(r.tally.components) / static_cast<double>(r.tally.trials);
  j["taxonomy_means"] = to_json(r.tally.taxonomy, static_cast<double>(r.tally.trials));
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : r.classes) {
    nlohmann::ordered_json cj;
    cj["class"] = to_string(c.cls);
    cj["mean"] = c.mean;
    cj["std_error"] = c.std_error;
    cj["u"] = rational_string(c.u);
    cj["u_float"] = to_double(c.u);
    cj["ratio"] = optional_json(c.ratio);
    classes.push_back(std::move(cj));
  }
  j["classes"] = std::move(classes);
  return j;
}

/// Two-column field,value CSV of the scalar statistics and class means.
inline std::string census_to_csv(const CensusReport& r) {
  std::ostringstream out;
  const auto num = [](double x) { return format_double(x); };
  const auto opt = [&num](const std::optional<double>& x) { return x ? num(*x) : std::string("NA"); };
  out << "field,value\n";
  out << "n," << r.n << "\nm," << r.m << "\ntrials," << r.tally.trials << "\nseed," << r.seed << "\nsampler,"
      << to_string(r.sampler) << "\ndisconnected," << r.tally.disconnected << "\np_hat," << num(r.p_hat)
      << "\nwilson_lower," << num(r.wilson.lower) << "\nwilson_upper," << num(r.wilson.upper) << "\ncp_lower,"
      << num(r.clopper_pearson.lower) << "\ncp_upper," << num(r.clopper_pearson.upper) << "\ntheorem1_bound,"
      << num(to_double(r.invariants.bound())) << "\nbound_ratio," << opt(r.bound_ratio) << "\nlarge_threshold,"
      << num(r.large_threshold) << "\ntwo_large_frequency," << num(r.two_large_frequency) << '\n';
  for (const auto& c : r.classes)
    out << "mean." << to_string(c.cls) << ',' << num(c.mean) << "\nratio." << to_string(c.cls) << ','
        << opt(c.ratio) << '\n';
  return out.str();
}

/// Number of K2 components of a configuration-model matching: pairs joining
/// two degree-1 half-edges.
inline std::uint64_t configuration_edge_components(const DegreeSequence& seq, const Matching& matching) {
  std::uint64_t count = 0;
  for (const auto& [a, b] : matching.pairs())
    if (seq.degree(seq.owner(a)) == 1 && seq.degree(seq.owner(b)) == 1) ++count;
  return count;
}

/// binom(n1, 2) / (2m - 1), the configuration-model expectation: each of
/// the binom(n1, 2) pairs of degree-1 half-edges is matched with
/// probability 1 / (2m - 1).
inline Rational expected_configuration_edge_components(const DegreeSequence& seq) {
  const BigInt n1 = seq.count(1);
  return Rational(n1 * (n1 - 1) / 2, BigInt(seq.half_edges() - 1));
}

struct MomentTally {
  std::uint64_t trials = 0;
  std::uint64_t sum = 0;
  std::uint64_t sum_squares = 0;

  void add(std::uint64_t x) {
    ++trials;
    sum += x;
    sum_squares += x * x;
  }
  void merge(const MomentTally& o) {
    trials += o.trials;
    sum += o.sum;
    sum_squares += o.sum_squares;
  }
  double mean() const { return static_cast<double>(sum) / static_cast<double>(trials); }
  double variance() const {
    const double n = static_cast<double>(trials);
    return (static_cast<double>(sum_squares) - n * mean() * mean()) / (n - 1);
  }
  double std_error() const { return std::sqrt(variance() / static_cast<double>(trials)); }
};

/// Edge-component counts over unconditioned configuration-model draws.
inline MomentTally configuration_edge_component_census(const DegreeSequence& seq, std::uint64_t trials,
                                                       std::uint64_t seed, unsigned threads = 1) {
  return run_trials<MomentTally>(trials, threads, [&](std::uint64_t t, MomentTally& tally) {
    Rng rng(trial_seed(seed, t));
    tally.add(configuration_edge_components(seq, random_matching(seq, rng)));
  });
}

struct TightnessRow {
  std::string family;
  std::int64_t n = 0, m = 0;
  bool d_star_ok = true;  // D* <= m/3
  std::uint64_t trials = 0;
  ClassComparison comparison;
};

/// Mean small-component counts against the matching u-invariants for each
/// member of a sequence family.
inline std::vector<TightnessRow> tightness_experiment(const std::vector<std::pair<std::string, DegreeSequence>>& family,
                                                      const CensusOptions& options) {
  std::vector<TightnessRow> rows;
  for (std::size_t s = 0; s < family.size(); ++s) {
    const auto& [label, seq] = family[s];
    CensusOptions o = options;
    o.seed = trial_seed(options.seed, s);
    o.max_interval_width.reset();
    const auto report = estimate_disconnection(seq, o);
    for (const auto& c : report.classes) {
      TightnessRow row;
      row.family = label;
      row.n = report.n;
      row.m = report.m;
      row.d_star_ok = 3 * seq.d_star() <= seq.edges();
      row.trials = report.tally.trials;
      row.comparison = c;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::string tightness_to_csv(const std::vector<TightnessRow>& rows) {
  std::ostringstream out;
  out << "family,n,m,d_star_ok,trials,class,mean,std_error,u_J,u_J_float,ratio\n";
  for (const auto& r : rows) {
    const auto& c = r.comparison;
    out << '"' << r.family << "\"," << r.n << ',' << r.m << ',' << (r.d_star_ok ? 1 : 0) << ',' << r.trials << ','
        << to_string(c.cls) << ',' << format_double(c.mean) << ',' << format_double(c.std_error) << ','
        << rational_string(c.u) << ',' << format_double(to_double(c.u)) << ','
        << (c.ratio ? format_double(*c.ratio) : std::string("NA")) << '\n';
  }
  return out.str();
}

inline nlohmann::ordered_json to_json(const std::vector<TightnessRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["family"] = r.family;
    j["n"] = r.n;
    j["m"] = r.m;
    j["d_star_ok"] = r.d_star_ok;
    j["trials"] = r.trials;
    j["class"] = to_string(r.comparison.cls);
    j["mean"] = r.comparison.mean;
    j["std_error"] = r.comparison.std_error;
    j["u_J"] = rational_string(r.comparison.u);
    j["u_J_float"] = to_double(r.comparison.u);
    j["ratio"] = optional_json(r.comparison.ratio);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace degconn
