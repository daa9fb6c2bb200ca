#include <gtest/gtest.h>

#include <cmath>
#include <iostream>

#include "degconn/degconn.hpp"
#include "support.hpp"

using namespace degconn;
namespace ts = degconn::test_support;

namespace {

CensusOptions options(std::uint64_t trials, std::uint64_t seed, SamplerKind kind = SamplerKind::Auto,
                      unsigned threads = 1) {
  CensusOptions o;
  o.trials = trials;
  o.seed = seed;
  o.sampler.kind = kind;
  o.threads = threads;
  return o;
}

ComponentClass only_class(const SimpleGraph& g) {
  const auto cs = connected_components(g);
  EXPECT_EQ(cs.size(), 1u);
  return classify_component(g, cs.front()).cls;
}

}  // namespace

TEST(Components, Basics) {
  const auto k4 = SimpleGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto cs = connected_components(k4);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].vertices.size(), 4u);
  EXPECT_EQ(cs[0].edges, 6);
  EXPECT_TRUE(is_connected(k4));

  const auto two = SimpleGraph::from_edges(4, {{0, 3}, {1, 2}});
  const auto parts = connected_components(two);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].vertices, (std::vector<Vertex>{0, 3}));
  EXPECT_EQ(parts[1].vertices, (std::vector<Vertex>{1, 2}));
  EXPECT_FALSE(is_connected(two));
}

TEST(Components, TrianglePendantIsTheUniqueRealization) {
  const auto seq = DegreeSequence::validate({1, 2, 2, 3});
  const auto graphs = all_realizations(seq);
  ASSERT_EQ(graphs.size(), 1u);
  EXPECT_EQ(only_class(graphs[0]), ComponentClass::TrianglePendant);
}

TEST(Components, NamedClasses) {
  EXPECT_EQ(only_class(SimpleGraph::from_edges(2, {{0, 1}})), ComponentClass::Edge);
  EXPECT_EQ(only_class(SimpleGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}})), ComponentClass::Triangle);
  EXPECT_EQ(only_class(SimpleGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})), ComponentClass::Cycle);
  EXPECT_EQ(only_class(SimpleGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}})), ComponentClass::K4MinusE);
  EXPECT_EQ(only_class(SimpleGraph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})), ComponentClass::TrianglePendant);
  EXPECT_EQ(only_class(SimpleGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}})), ComponentClass::Path);
  EXPECT_EQ(only_class(SimpleGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}})), ComponentClass::OtherSmall);
  const auto c4 = classify_components(SimpleGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  EXPECT_EQ(c4.cycle_len.at(4), 1u);
  const auto p3 = classify_components(SimpleGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(p3.path_len.at(3), 1u);
}

TEST(Components, OtherSmallKeysAreIsomorphismInvariant) {
  std::vector<Edge> k5;
  for (Vertex i = 0; i < 5; ++i)
    for (Vertex j = i + 1; j < 5; ++j) k5.emplace_back(i, j);
  const auto a = classify_components(SimpleGraph::from_edges(5, k5));
  ASSERT_EQ(a.other_small.size(), 1u);
  EXPECT_EQ(a.other_small.begin()->first.substr(0, 16), "v5e10:d=4,4,4,4,");
  // two labelings of the "bull" graph
  const auto bull1 = classify_components(SimpleGraph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 4}}));
  const auto bull2 = classify_components(SimpleGraph::from_edges(5, {{2, 3}, {3, 4}, {2, 4}, {4, 0}, {3, 1}}));
  EXPECT_EQ(bull1, bull2);
  // same degree multiset, not isomorphic
  const auto a6 = classify_components(SimpleGraph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}}));
  const auto b6 = classify_components(SimpleGraph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}}));
  ASSERT_EQ(a6.other_small.size(), 1u);
  ASSERT_EQ(b6.other_small.size(), 1u);
  EXPECT_NE(a6.other_small.begin()->first, b6.other_small.begin()->first);
}

TEST(Components, LargeAndLongCycles) {
  const auto seq = family_sequence("regular(3,12)");
  Rng rng(1);
  const auto g = rejection_sample(seq, rng).graph;
  const auto t = classify_components(g);
  EXPECT_EQ(t.total(), connected_components(g).size());
  std::vector<Edge> cycle;
  for (Vertex i = 0; i < 9; ++i) cycle.emplace_back(i, (i + 1) % 9);
  EXPECT_EQ(classify_components(SimpleGraph::from_edges(9, cycle)).cycle_len.at(9), 1u);
}

TEST(Components, PartitionOverSampledGraphs) {
  Rng rng(4);
  for (const auto* family : {"with-twos(10,3,30)", "with-leaves(10,2,30)", "regular(2,15)"}) {
    const auto seq = family_sequence(family);
    for (int t = 0; t < 200; ++t) {
      const auto g = sample_graph(seq, {}, rng);
      const auto cs = connected_components(g);
      EXPECT_EQ(classify_components(g).total(), cs.size());
      std::int64_t edges = 0;
      std::size_t vertices = 0;
      for (const auto& c : cs) edges += c.edges, vertices += c.vertices.size();
      EXPECT_EQ(edges, g.edge_count());
      EXPECT_EQ(vertices, g.vertex_count());
    }
  }
}

TEST(Intervals, FrozenValues) {
  const auto w = wilson_interval(5, 10);
  EXPECT_NEAR(w.lower, 0.2366, 1e-4);
  EXPECT_NEAR(w.upper, 0.7634, 1e-4);
  const auto cp = clopper_pearson_interval(5, 10);
  EXPECT_NEAR(cp.lower, 0.1871, 1e-4);
  EXPECT_NEAR(cp.upper, 0.8129, 1e-4);
  const auto zero = clopper_pearson_interval(0, 100);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_NEAR(zero.upper, 0.0362, 1e-4);
  const auto all = wilson_interval(100, 100);
  EXPECT_LE(all.upper, 1.0);
  EXPECT_GT(all.lower, 0.96);
}

TEST(Census, SpecExamples) {
  const auto twos = estimate_disconnection(DegreeSequence::validate({2, 2, 2, 2, 2, 2}), options(20000, 1));
  const double sigma = std::sqrt((1.0 / 7) * (6.0 / 7) / 20000);
  EXPECT_NEAR(twos.p_hat, 1.0 / 7, 3 * sigma);
  EXPECT_LE(twos.wilson.lower, twos.p_hat);
  EXPECT_GE(twos.wilson.upper, twos.p_hat);

  EXPECT_EQ(estimate_disconnection(DegreeSequence::validate({1, 1, 1, 1}), options(100, 2)).p_hat, 1.0);
  EXPECT_EQ(estimate_disconnection(DegreeSequence::validate({3, 3, 3, 3}), options(100, 3)).p_hat, 0.0);
}

TEST(Census, DeterministicClaims) {
  for (const auto* spec : {"star(12)", "two-stars(9)"}) {
    for (auto kind : {SamplerKind::Rejection, SamplerKind::SwitchChain}) {
      const auto r = estimate_disconnection(family_sequence(spec), options(300, 5, kind));
      EXPECT_EQ(r.tally.disconnected, 0u) << spec;
    }
  }
  for (const auto* spec : {"with-leaves(12,2,16)", "with-leaves(30,3,34)"}) {
    const auto seq = family_sequence(spec);
    ASSERT_GT(seq.count(1), seq.edges());
    EXPECT_EQ(estimate_disconnection(seq, options(300, 6)).p_hat, 1.0) << spec;
  }
}

TEST(Census, ThreadCountDoesNotChangeResults) {
  const auto seq = family_sequence("with-twos(10,3,40)");
  const auto base = estimate_disconnection(seq, options(3000, 9, SamplerKind::Auto, 1));
  for (unsigned threads : {2U, 4U, 8U}) {
    const auto r = estimate_disconnection(seq, options(3000, 9, SamplerKind::Auto, threads));
    EXPECT_EQ(r.tally, base.tally);
    EXPECT_EQ(to_json(r).dump(), to_json(base).dump());
  }
}

TEST(Census, MergeIsAssociative) {
  const auto seq = family_sequence("with-twos(6,3,20)");
  std::vector<CensusTally> parts(3);
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng(trial_seed(4, t));
    tally_graph(parts[t % 3], sample_graph(seq, {}, rng), large_component_threshold(seq.edges()));
  }
  CensusTally left = parts[0], right = parts[1];
  left.merge(parts[1]);
  left.merge(parts[2]);
  right.merge(parts[2]);
  CensusTally other = parts[0];
  other.merge(right);
  EXPECT_EQ(left, other);
  EXPECT_EQ(left.trials, 300u);
}

TEST(Census, SamplersAgree) {
  for (const auto* spec : {"with-twos(8,3,24)", "with-leaves(6,3,20)"}) {
    const auto seq = family_sequence(spec);
    const auto a = estimate_disconnection(seq, options(20000, 11, SamplerKind::Rejection));
    const auto b = estimate_disconnection(seq, options(20000, 12, SamplerKind::SwitchChain));
    const double se = std::sqrt(a.p_hat * (1 - a.p_hat) / 20000 + b.p_hat * (1 - b.p_hat) / 20000);
    EXPECT_LE(std::abs(a.p_hat - b.p_hat), 3 * se + 1e-12) << spec;
  }
}

// |p_hat - exact| < 4 sigma in at least 99% of runs, over every graphical
// sequence with 2m <= 16.
TEST(Census, OracleEquivalence) {
  std::size_t runs = 0, misses = 0;
  for (const auto& d : ts::graphical_sequences(16)) {
    const auto seq = DegreeSequence::validate(d);
    const double exact = 1.0 - to_double(exact_connectivity_oracle(seq).p_connected);
    const std::uint64_t trials = 2000;
    const auto r = estimate_disconnection(seq, options(trials, runs));
    const double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(trials));
    if (std::abs(r.p_hat - exact) > 4 * sigma + 1e-12) ++misses;
    ++runs;
  }
  EXPECT_EQ(runs, 209u);
  EXPECT_LE(static_cast<double>(misses), 0.01 * static_cast<double>(runs));
}

TEST(Census, CubicEightExactDisconnection) {
  // two disjoint K4s: binom(8,4)/2 = 35 of 19355 labeled cubic graphs
  const auto seq = family_sequence("regular(3,8)");
  std::uint64_t total = 0, disconnected = 0;
  for_each_realization(seq, [&](const std::vector<Edge>& e) {
    ++total;
    disconnected += is_connected(SimpleGraph::from_edges(8, e)) ? 0 : 1;
  });
  EXPECT_EQ(total, 19355u);
  EXPECT_EQ(disconnected, 35u);
  const auto r = estimate_disconnection(seq, options(100000, 13, SamplerKind::Rejection));
  const double p = 35.0 / 19355;
  EXPECT_NEAR(r.p_hat, p, 4 * std::sqrt(p * (1 - p) / 100000));
  EXPECT_TRUE(r.bound_ratio.has_value());
}

TEST(Census, CubicDisconnectionFallsWithSize) {
  double previous = 1, c_min = 1e300, c_max = 0;
  for (int n : {8, 16, 32}) {
    const auto seq = family_sequence("regular(3," + std::to_string(n) + ")");
    const auto r = estimate_disconnection(seq, options(200000, 31, SamplerKind::Rejection));
    const double m = static_cast<double>(seq.edges());
    const double scale = (std::pow(n, 4) + n) / std::pow(m, 6);
    EXPECT_LT(r.p_hat, previous) << "n = " << n;
    EXPECT_GT(r.tally.disconnected, 0u) << "n = " << n;
    previous = r.p_hat;
    c_min = std::min(c_min, r.p_hat / scale);
    c_max = std::max(c_max, r.p_hat / scale);
  }
  RecordProperty("fitted_C", std::to_string(c_max));
  std::cout << "fitted C = " << c_max << " (smallest ratio " << c_min << ")\n";
  EXPECT_LT(c_max, 4 * c_min);
}

TEST(Census, IntervalWidthGuard) {
  auto o = options(50, 1);
  o.max_interval_width = 0.01;
  try {
    estimate_disconnection(DegreeSequence::validate({2, 2, 2, 2, 2, 2}), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TrialsTooFew);
  }
  EXPECT_THROW(estimate_disconnection(DegreeSequence::validate({1, 1}), options(0, 1)), Error);
}

TEST(Census, ReportFields) {
  const auto r = estimate_disconnection(DegreeSequence::validate({1, 1, 1, 1}), options(100, 2));
  const auto j = to_json(r);
  EXPECT_EQ(j["p_hat"], 1.0);
  EXPECT_EQ(j["near_boundary"], true);
  EXPECT_EQ(j["taxonomy_means"]["edge"], 2.0);
  EXPECT_EQ(j["classes"][1]["ratio"], "N/A");  // u_triangle = 0
  EXPECT_EQ(j["second_largest_edges"]["1"], 100);
  EXPECT_NE(census_to_csv(r).find("p_hat,1"), std::string::npos);
  EXPECT_DOUBLE_EQ(large_component_threshold(100), 4 * std::pow(std::log(100.0), 4));
}

TEST(ConfigurationCensus, MeanMatchesExactExpectation) {
  const auto seq = family_sequence("with-leaves(10,3,40)");
  const auto tally = configuration_edge_component_census(seq, 50000, 3, 4);
  EXPECT_EQ(tally.trials, 50000u);
  const double expected = to_double(expected_configuration_edge_components(seq));
  EXPECT_NEAR(tally.mean(), expected, 3 * tally.std_error());
  const auto single = configuration_edge_component_census(seq, 50000, 3, 1);
  EXPECT_EQ(single.sum, tally.sum);
  EXPECT_EQ(single.sum_squares, tally.sum_squares);
}

TEST(Tightness, CubicTrianglesAreNotApplicable) {
  std::vector<std::pair<std::string, DegreeSequence>> family = {{"regular(3,20)", family_sequence("regular(3,20)")}};
  const auto rows = tightness_experiment(family, options(200, 1));
  ASSERT_EQ(rows.size(), kBoundedClasses.size());
  const auto& tri = rows[1];
  EXPECT_EQ(tri.comparison.cls, ComponentClass::Triangle);
  EXPECT_EQ(tri.comparison.mean, 0.0);
  EXPECT_EQ(tri.comparison.u, 0);
  EXPECT_FALSE(tri.comparison.ratio.has_value());
  const auto csv = tightness_to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,n,m,d_star_ok,trials,class,mean,std_error,u_J,u_J_float,ratio");
  EXPECT_NE(csv.find("triangle,0.0,0.0,0/1,0.0,NA"), std::string::npos);
  EXPECT_EQ(to_json(rows)[1]["ratio"], "N/A");
}

TEST(Tightness, FlagsDStar) {
  std::vector<std::pair<std::string, DegreeSequence>> family = {{"star(10)", family_sequence("star(10)")},
                                                                {"regular(3,20)", family_sequence("regular(3,20)")}};
  const auto rows = tightness_experiment(family, options(50, 1));
  EXPECT_FALSE(rows.front().d_star_ok);
  EXPECT_TRUE(rows.back().d_star_ok);
}

TEST(Families, Sequences) {
  EXPECT_EQ(family_degrees("regular(3,4)"), (std::vector<std::int64_t>{3, 3, 3, 3}));
  EXPECT_EQ(family_degrees("star(4)"), (std::vector<std::int64_t>{1, 1, 1, 3}));
  EXPECT_EQ(family_degrees("two-stars(5)"), (std::vector<std::int64_t>{2, 2, 2, 4, 4}));
  EXPECT_EQ(family_degrees("with-leaves(2,3,6)"), (std::vector<std::int64_t>{1, 1, 3, 3, 3, 3}));
  EXPECT_EQ(family_degrees("with-twos(2,3,4)"), (std::vector<std::int64_t>{2, 2, 3, 3}));
  const auto kind = [](const char* spec) {
    try {
      family_degrees(spec);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind("regular(3,5)"), ErrorKind::InfeasibleFamily);
  EXPECT_EQ(kind("regular(5,3)"), ErrorKind::InfeasibleFamily);
  EXPECT_EQ(kind("cubic(10)"), ErrorKind::Parse);
  EXPECT_EQ(kind("regular(3)"), ErrorKind::Parse);
}
