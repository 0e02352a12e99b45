#pragma once

// Command-line front end.  Results go to `out`; diagnostics and progress go
// to `err`.  Exit codes: 0 success, 1 input error, 2 validation failed,
// 3 cap exceeded.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "diarykit/diary.hpp"
#include "diarykit/errors.hpp"
#include "diarykit/graph.hpp"
#include "diarykit/oracle.hpp"
#include "diarykit/search.hpp"
#include "diarykit/tangent.hpp"

namespace diarykit {

inline constexpr const char* kVersion = "0.3.0";

namespace cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kValidationFailed = 2, kCapExceeded = 3 };

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

// DIARYKIT_LOG: quiet | info | debug (default info).
inline LogLevel log_level_from_env() {
  const char* raw = std::getenv("DIARYKIT_LOG");
  if (!raw) return LogLevel::Info;
  const std::string v(raw);
  if (v == "quiet" || v == "0" || v == "off") return LogLevel::Quiet;
  if (v == "debug" || v == "2" || v == "trace") return LogLevel::Debug;
  return LogLevel::Info;
}

// Fields are kept in insertion order so plain output is stable.
class OutputRecord {
 public:
  OutputRecord(std::string command, std::string input) {
    fields_.push_back({"command", std::move(command)});
    fields_.push_back({"input", std::move(input)});
  }

  void set(const std::string& key, std::string value) { fields_.push_back({key, std::move(value)}); }
  void set(const std::string& key, const BigInt& value) { set(key, to_decimal(value)); }

  void write(std::ostream& out, const std::string& format, double seconds) const {
    if (format == "json") {
      nlohmann::ordered_json doc;
      for (const auto& [k, v] : fields_) doc[k] = v;
      doc["elapsed_seconds"] = seconds;
      doc["version"] = kVersion;
      out << doc.dump() << "\n";
      return;
    }
    for (std::size_t k = 2; k < fields_.size(); ++k) out << fields_[k].first << " " << fields_[k].second << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

struct SearchFlags {
  int depth_cap = 0;
  std::uint64_t node_cap = 0;
  int workers = 1;
  int max_vertices = 4;
  bool progress = false;
};

inline void add_search_flags(CLI::App* cmd, SearchFlags& flags) {
  cmd->add_option("--depth-cap", flags.depth_cap, "Maximum diary height (0 = automatic bound)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--node-cap", flags.node_cap, "Abort after exploring this many search nodes (0 = unlimited)");
  cmd->add_option("--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--max-vertices", flags.max_vertices, "Largest target graph the enumerator accepts")
      ->check(CLI::Range(1, kMaxLeaves));
  cmd->add_flag("--progress", flags.progress, "Periodic status lines on stderr");
}

inline SearchLimits to_limits(const SearchFlags& flags, std::ostream& err, LogLevel level) {
  SearchLimits limits;
  limits.depth_cap = flags.depth_cap;
  if (flags.node_cap > 0) limits.node_cap = flags.node_cap;
  limits.workers = flags.workers;
  limits.max_vertices = flags.max_vertices;
  if (flags.progress || level == LogLevel::Debug) {
    limits.progress = [&err](const Progress& p) {
      err << "progress nodes=" << p.nodes_explored << " depth=" << p.depth << " partial=" << p.partial_count
          << std::endl;
    };
  }
  return limits;
}

inline std::string format_graph(const SmallGraph& g) { return graph_to_json(g).dump(); }

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli;
  const LogLevel level = log_level_from_env();

  CLI::App app{"Enumerate K4-free diaries and compute big Ramsey degrees in the universal K4-free graph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string format = "plain";
  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "json"}));
  };

  SearchFlags search;
  std::string spec;
  std::string spec2;
  std::string emit = "json";
  std::string path;
  int number = 0;
  OracleConfig oracle_cfg;

  auto* degree = app.add_subcommand("degree", "Count T(G) and the big Ramsey degree |T(G)|·|Aut(G)|");
  degree->add_option("spec", spec, "Graph spec, e.g. clique:3 or complement:path:2")->required();
  add_format(degree);
  add_search_flags(degree, search);

  auto* enumerate = app.add_subcommand("enumerate", "Stream every diary of a graph");
  enumerate->add_option("spec", spec, "Graph spec")->required();
  enumerate->add_option("--emit", emit, "Output per diary")->check(CLI::IsMember({"json", "dot"}));
  add_search_flags(enumerate, search);

  auto* validate_cmd = app.add_subcommand("validate", "Check a diary JSON file and list its events");
  validate_cmd->add_option("path", path, "Diary JSON file ('-' for stdin)")->required();
  add_format(validate_cmd);

  auto* oracle = app.add_subcommand("oracle", "Naive explicit-word enumeration of small diaries");
  oracle->add_option("--max-leaves", oracle_cfg.max_leaves, "Largest diary size")->check(CLI::Range(1, 3));
  oracle->add_option("--depth-cap", oracle_cfg.depth_cap, "Maximum diary height")->check(CLI::PositiveNumber);
  add_format(oracle);

  auto* anticlique = app.add_subcommand("anticlique", "Memoized count of diaries of the n-vertex anticlique");
  anticlique->add_option("n", number, "Number of vertices")->required()->check(CLI::Range(1, 8));
  add_format(anticlique);
  add_search_flags(anticlique, search);

  auto* tangent = app.add_subcommand("tangent", "The n-th odd tangent number");
  tangent->add_option("n", number, "Index, from 1")->required()->check(CLI::PositiveNumber);
  add_format(tangent);

  auto* aut = app.add_subcommand("aut", "Automorphism group order of a graph");
  aut->add_option("spec", spec, "Graph spec")->required();
  add_format(aut);

  auto* iso = app.add_subcommand("iso", "Test two graphs for isomorphism");
  iso->add_option("first", spec, "Graph spec")->required();
  iso->add_option("second", spec2, "Graph spec")->required();
  add_format(iso);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const auto started = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  try {
    if (degree->parsed()) {
      const SmallGraph g = parse_spec(spec);
      const auto result = count_diaries(g, to_limits(search, err, level));
      OutputRecord rec("degree", spec);
      rec.set("vertices", std::to_string(g.vertex_count()));
      rec.set("k4_free", is_k4_free(g) ? "true" : "false");
      rec.set("diary_count", result.diary_count);
      rec.set("aut", std::to_string(result.aut));
      rec.set("degree", result.degree);
      rec.set("nodes_explored", std::to_string(result.nodes_explored));
      rec.write(out, format, elapsed());
      return kOk;
    }

    if (enumerate->parsed()) {
      const SmallGraph g = parse_spec(spec);
      std::uint64_t emitted = 0;
      for_each_diary_path(g, to_limits(search, err, level), [&](const std::vector<EventSpec>& p) {
        const auto m = materialize(p);
        if (emit == "dot") {
          ValidationReport report{true, m.events, std::nullopt, {}};
          out << diary_to_dot(m.diary, report);
        } else {
          out << diary_to_json(m.diary).dump() << "\n";
        }
        ++emitted;
      });
      if (level != LogLevel::Quiet) err << "emitted " << emitted << " diaries\n";
      return kOk;
    }

    if (validate_cmd->parsed()) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(path));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid diary JSON: ") + e.what(), e.byte);
      }
      const Diary d = diary_from_json(doc);
      const auto report = validate(d);
      if (format == "json") {
        nlohmann::ordered_json j;
        j["command"] = "validate";
        j["input"] = path;
        j["valid"] = report.valid;
        nlohmann::json events = nlohmann::json::array();
        for (const auto& e : report.events) {
          nlohmann::json parts = nlohmann::json::array();
          for (const auto& w : e.participants) parts.push_back(w.str());
          events.push_back({{"level", e.level}, {"kind", std::string(event_name(e.kind))}, {"participants", parts}});
        }
        j["events"] = events;
        if (!report.valid) {
          j["failure_level"] = report.failure_level ? nlohmann::json(*report.failure_level) : nlohmann::json();
          j["failure"] = report.failure;
        } else {
          j["graph"] = graph_to_json(extract_graph(d));
        }
        j["version"] = kVersion;
        out << j.dump() << "\n";
      } else if (report.valid) {
        out << "valid\n";
        for (const auto& e : report.events) out << describe(e) << "\n";
        out << "graph " << format_graph(extract_graph(d)) << "\n";
      } else {
        out << "invalid";
        if (report.failure_level) out << " at level " << *report.failure_level;
        out << ": " << report.failure << "\n";
      }
      return report.valid ? kOk : kValidationFailed;
    }

    if (oracle->parsed()) {
      // Counts refer to diaries with exactly max_leaves leaves; smaller ones
      // are reported on their own line.
      std::vector<Diary> full;
      std::size_t smaller = 0;
      for (auto& d : naive_enumerate(oracle_cfg)) {
        if (static_cast<int>(d.words.size()) == oracle_cfg.max_leaves) full.push_back(std::move(d));
        else ++smaller;
      }
      const auto classes = count_by_class(full);
      OutputRecord rec("oracle", "max_leaves=" + std::to_string(oracle_cfg.max_leaves));
      rec.set("diaries", std::to_string(full.size()));
      rec.set("smaller_diaries", std::to_string(smaller));
      for (const auto& [form, cls] : classes) {
        rec.set("class " + to_graph6(cls.representative) + " " + format_graph(cls.representative),
                std::to_string(cls.count));
      }
      rec.write(out, format, elapsed());
      return kOk;
    }

    if (anticlique->parsed()) {
      const auto count = count_anticlique_memoized(number, to_limits(search, err, level));
      std::uint64_t factorial = 1;
      for (int k = 2; k <= number; ++k) factorial *= static_cast<std::uint64_t>(k);
      OutputRecord rec("anticlique", std::to_string(number));
      rec.set("diary_count", count);
      rec.set("aut", std::to_string(factorial));
      rec.set("degree", count * factorial);
      rec.write(out, format, elapsed());
      return kOk;
    }

    if (tangent->parsed()) {
      OutputRecord rec("tangent", std::to_string(number));
      rec.set("value", tangent_number(number));
      if (format == "json") {
        rec.write(out, format, elapsed());
      } else {
        out << to_decimal(tangent_number(number)) << "\n";
      }
      return kOk;
    }

    if (aut->parsed()) {
      const SmallGraph g = parse_spec(spec);
      OutputRecord rec("aut", spec);
      rec.set("aut", std::to_string(aut_order(g)));
      rec.write(out, format, elapsed());
      return kOk;
    }

    if (iso->parsed()) {
      const bool same = is_isomorphic(parse_spec(spec), parse_spec(spec2));
      OutputRecord rec("iso", spec + " " + spec2);
      rec.set("isomorphic", same ? "true" : "false");
      rec.write(out, format, elapsed());
      return kOk;
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " after " << e.nodes_explored() << " nodes (partial count " << e.partial_count()
        << ")\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace diarykit
