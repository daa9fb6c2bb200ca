#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "degconn/census.hpp"
#include "degconn/degree_sequence.hpp"
#include "degconn/error.hpp"
#include "degconn/exploration.hpp"
#include "degconn/families.hpp"
#include "degconn/oracle.hpp"
#include "degconn/sampler.hpp"

namespace degconn {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { Json, Csv, Text };

inline OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw Error(ErrorKind::InvalidArgument, "unknown format '" + std::string(name) + "'");
}

inline std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
  }
  return "json";
}

/// Everything a command needs. The seed determines all randomness; the
/// thread count never changes any reported value.
struct ExperimentConfig {
  std::optional<std::string> seq;       // inline list
  std::optional<std::string> seq_file;  // JSON array or whitespace-separated
  std::vector<std::string> families;    // named families; tightness takes several
  SamplerKind sampler = SamplerKind::Auto;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> steps;
  std::uint64_t max_attempts = kDefaultMaxAttempts;
  std::optional<OutputFormat> format;
  unsigned threads = 1;
  std::int64_t start = 1;  // explore: 1-based start vertex
  RevealMode mode = RevealMode::SimpleConditioned;
  std::optional<std::string> graph_file;  // explore an explicit edge list
  std::optional<double> max_interval_width;
};

struct CommandResult {
  int exit_code = 0;
  std::string output;   // report body (JSON, CSV or text)
  std::string summary;  // one line for the terminal
};

/// Resolved config for provenance; the thread count and output paths are
/// left out so reports are identical across parallelism degrees.
inline nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  if (c.seq) j["seq"] = *c.seq;
  if (c.seq_file) j["seq_file"] = *c.seq_file;
  if (!c.families.empty()) j["families"] = c.families;
  j["sampler"] = to_string(c.sampler);
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["steps"] = c.steps ? nlohmann::ordered_json(*c.steps) : nlohmann::ordered_json("default");
  j["max_attempts"] = c.max_attempts;
  return j;
}

inline std::vector<std::int64_t> source_degrees(const ExperimentConfig& c) {
  const int sources = (c.seq ? 1 : 0) + (c.seq_file ? 1 : 0) + (c.families.empty() ? 0 : 1);
  if (sources != 1) throw Error(ErrorKind::InvalidArgument, "give exactly one of --seq, --seq-file, --family");
  if (c.seq) return parse_degree_list(*c.seq);
  if (c.seq_file) return read_degree_file(*c.seq_file);
  if (c.families.size() != 1) throw Error(ErrorKind::InvalidArgument, "this command takes a single --family");
  return family_degrees(c.families.front());
}

inline DegreeSequence source_sequence(const ExperimentConfig& c) {
  const auto degrees = source_degrees(c);
  return DegreeSequence::validate(degrees);
}

inline SamplerConfig sampler_config(const ExperimentConfig& c) {
  SamplerConfig s;
  s.kind = c.sampler;
  s.max_attempts = c.max_attempts;
  s.steps = c.steps;
  return s;
}

inline nlohmann::ordered_json header_json(const char* command, const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = config_json(c);
  return j;
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

/// Feasibility verdict and invariants; exit code 0 iff graphical.
inline CommandResult cmd_check(const ExperimentConfig& c) {
  const auto degrees = source_degrees(c);
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "check";
  j["degrees"] = degrees;
  CommandResult r;
  try {
    const auto seq = DegreeSequence::validate(degrees);
    const auto inv = compute_invariants(seq);
    j["graphical"] = true;
    j["n"] = seq.size();
    j["m"] = seq.edges();
    j["invariants"] = to_json(inv);
    r.summary = "graphical; n = " + std::to_string(seq.size()) + ", m = " + std::to_string(seq.edges()) +
                ", theorem-1 bound = " + rational_string(inv.bound());
  } catch (const Error& e) {
    j["graphical"] = false;
    j["reason"] = to_string(e.kind());
    j["message"] = e.what();
    r.exit_code = exit_code(e.kind());
    r.summary = std::string("not graphical: ") + e.what();
  }
  if (c.format.value_or(OutputFormat::Json) == OutputFormat::Csv) {
    std::ostringstream out;
    out << "field,value\ngraphical," << (j["graphical"].get<bool>() ? "true" : "false") << '\n';
    if (j.contains("invariants")) {
      out << "n," << j["n"].dump() << "\nm," << j["m"].dump() << '\n';
      for (const auto& [k, v] : j["invariants"].items())
        out << k << ',' << (v.is_object() ? v["rational"].get<std::string>() : v.dump()) << '\n';
    } else {
      out << "reason," << j["reason"].get<std::string>() << '\n';
    }
    r.output = out.str();
  } else {
    r.output = dump(j);
  }
  return r;
}

/// `trials` independent uniform samples; graph t uses trial_seed(seed, t).
inline CommandResult cmd_sample(const ExperimentConfig& c) {
  const auto seq = source_sequence(c);
  const auto sampler = sampler_config(c);
  const SamplerKind used = resolve_sampler(seq, sampler.kind);
  std::vector<SimpleGraph> graphs;
  for (std::uint64_t t = 0; t < std::max<std::uint64_t>(c.trials, 1); ++t) {
    Rng rng(trial_seed(c.seed, t));
    graphs.push_back(sample_graph(seq, sampler, rng));
  }
  CommandResult r;
  const auto format = c.format.value_or(OutputFormat::Text);
  if (format == OutputFormat::Json) {
    auto j = header_json("sample", c);
    j["sampler_used"] = to_string(used);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& g : graphs) arr.push_back(to_json(g));
    j["graphs"] = std::move(arr);
    r.output = dump(j);
  } else {
    // text and csv both use the "u v" edge list
    for (std::size_t t = 0; t < graphs.size(); ++t) {
      if (graphs.size() > 1) r.output += "# graph " + std::to_string(t) + "\n";
      r.output += to_edge_list(graphs[t]);
    }
  }
  r.summary = "sampled " + std::to_string(graphs.size()) + " graph(s) with " + std::string(to_string(used));
  return r;
}

inline SimpleGraph read_graph_file(const std::string& path, std::optional<std::size_t> n) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (!n) {
    std::size_t max_label = 0;
    std::istringstream scan(text);
    std::string line;
    while (std::getline(scan, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      long long u = 0, v = 0;
      if (fields >> u >> v) max_label = std::max<std::size_t>(max_label, static_cast<std::size_t>(std::max(u, v)));
    }
    n = max_label;
  }
  return parse_edge_list(*n, text);
}

inline CommandResult cmd_explore(const ExperimentConfig& c) {
  ExplorationTrace trace;
  auto j = header_json("explore", c);
  j["config"]["start"] = c.start;
  if (c.graph_file) {
    std::optional<std::size_t> n;
    if (c.seq || c.seq_file || !c.families.empty()) n = source_sequence(c).size();
    const auto g = read_graph_file(*c.graph_file, n);
    trace = explore(g, static_cast<Vertex>(c.start - 1));
    j["config"]["graph_file"] = *c.graph_file;
    j["graph"] = to_json(g);
  } else {
    const auto degrees = source_degrees(c);
    const auto seq = c.mode == RevealMode::Multigraph ? DegreeSequence::configuration(degrees)
                                                      : DegreeSequence::validate(degrees);
    if (c.start < 1 || c.start > static_cast<std::int64_t>(seq.size()))
      throw Error(ErrorKind::InvalidArgument, "start vertex out of range");
    Rng rng(trial_seed(c.seed, 0));
    const auto reveal = explore_revealing(seq, rng, static_cast<Vertex>(c.start - 1), c.mode, sampler_config(c));
    trace = reveal.trace;
    j["config"]["mode"] = c.mode == RevealMode::Multigraph ? "multigraph" : "simple-conditioned";
    if (reveal.graph) j["graph"] = to_json(*reveal.graph);
    if (reveal.multigraph) {
      auto edges = nlohmann::ordered_json::array();
      for (const auto& [u, v] : reveal.multigraph->edges()) edges.push_back({u + 1, v + 1});
      j["multigraph_edges"] = std::move(edges);
      j["matching"] = to_json(reveal.matching);
    }
  }
  CommandResult r;
  if (c.format.value_or(OutputFormat::Csv) == OutputFormat::Json) {
    j["trace"] = to_json(trace);
    r.output = dump(j);
  } else {
    r.output = trace_to_csv(trace);
  }
  r.summary = "explored component of vertex " + std::to_string(c.start) + ": " +
              std::to_string(trace.component.size()) + " vertices, died at iteration " +
              std::to_string(trace.died_at);
  return r;
}

inline CensusOptions census_options(const ExperimentConfig& c) {
  CensusOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.sampler = sampler_config(c);
  o.threads = c.threads;
  o.max_interval_width = c.max_interval_width;
  return o;
}

inline CommandResult cmd_census(const ExperimentConfig& c) {
  const auto seq = source_sequence(c);
  const auto report = estimate_disconnection(seq, census_options(c));
  CommandResult r;
  if (c.format.value_or(OutputFormat::Json) == OutputFormat::Csv) {
    r.output = census_to_csv(report);
  } else {
    auto j = header_json("census", c);
    j["report"] = to_json(report);
    r.output = dump(j);
  }
  r.summary = "p_hat = " + format_double(report.p_hat) + " over " + std::to_string(report.tally.trials) +
              " trials (" + std::string(to_string(report.sampler)) + ")";
  return r;
}

inline CommandResult cmd_oracle(const ExperimentConfig& c) {
  const auto seq = source_sequence(c);
  const auto result = exact_connectivity_oracle(seq);
  auto j = header_json("oracle", c);
  j["degrees"] = seq.as_vector();
  j["realizations"] = result.realizations;
  j["connected"] = result.connected;
  j["p_connected"] = rational_string(result.p_connected);
  j["p_connected_float"] = to_double(result.p_connected);
  j["p_disconnected"] = rational_string(1 - result.p_connected);
  j["expected_components"] = to_json(result.taxonomy, static_cast<double>(result.realizations));
  CommandResult r;
  if (c.format.value_or(OutputFormat::Json) == OutputFormat::Csv) {
    std::ostringstream out;
    out << "field,value\nrealizations," << result.realizations << "\nconnected," << result.connected
        << "\np_connected," << rational_string(result.p_connected) << "\np_connected_float,"
        << format_double(to_double(result.p_connected)) << '\n';
    r.output = out.str();
  } else {
    r.output = dump(j);
  }
  r.summary = "P(connected) = " + rational_string(result.p_connected) + " (" + std::to_string(result.connected) +
              " of " + std::to_string(result.realizations) + " realizations)";
  return r;
}

inline CommandResult cmd_tightness(const ExperimentConfig& c) {
  if (c.families.empty()) throw Error(ErrorKind::InvalidArgument, "tightness needs one or more --family");
  std::vector<std::pair<std::string, DegreeSequence>> family;
  for (const auto& f : c.families) family.emplace_back(f, family_sequence(f));
  const auto rows = tightness_experiment(family, census_options(c));
  CommandResult r;
  if (c.format.value_or(OutputFormat::Csv) == OutputFormat::Json) {
    auto j = header_json("tightness", c);
    j["rows"] = to_json(rows);
    r.output = dump(j);
  } else {
    r.output = tightness_to_csv(rows);
  }
  std::size_t flagged = 0;
  for (const auto& row : rows) flagged += row.d_star_ok ? 0 : 1;
  r.summary = std::to_string(rows.size()) + " rows" +
              (flagged ? ", " + std::to_string(flagged / kBoundedClasses.size()) + " sequence(s) with D* > m/3" : "");
  return r;
}

/// Dispatches by subcommand name; module errors become exit codes, with the
/// body replaced by error JSON when `error_json` is set.
inline CommandResult run_command(const std::string& name, const ExperimentConfig& c, bool error_json = false) {
  try {
    const auto alternative = name == "sample" ? OutputFormat::Text : OutputFormat::Csv;
    if (c.format && *c.format != OutputFormat::Json && *c.format != alternative)
      throw Error(ErrorKind::InvalidArgument,
                  "format '" + std::string(to_string(*c.format)) + "' is not available for " + name);
    if (name == "check") return cmd_check(c);
    if (name == "sample") return cmd_sample(c);
    if (name == "explore") return cmd_explore(c);
    if (name == "census") return cmd_census(c);
    if (name == "oracle") return cmd_oracle(c);
    if (name == "tightness") return cmd_tightness(c);
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + name + "'");
  } catch (const Error& e) {
    CommandResult r;
    r.exit_code = exit_code(e.kind());
    r.summary = e.what();
    if (error_json) {
      nlohmann::ordered_json j;
      j["error"] = to_string(e.kind());
      j["message"] = e.what();
      j["exit_code"] = r.exit_code;
      r.output = dump(j);
    }
    return r;
  }
}

}  // namespace degconn
