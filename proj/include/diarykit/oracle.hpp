#pragma once

// Naive enumeration of diaries over explicit words.  Shares nothing with the
// flag engine in state.hpp: every clause is evaluated by scanning letters, so
// the two only agree if both are right.

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "diarykit/diary.hpp"
#include "diarykit/errors.hpp"
#include "diarykit/graph.hpp"
#include "diarykit/search.hpp"
#include "diarykit/words.hpp"

namespace diarykit {

struct OracleConfig {
  int max_leaves = 2;
  int depth_cap = 40;
};

// Breadth-first over (front, members emitted so far).  A front needs at least
// one further leaf per word, which bounds the walk.
inline std::vector<Diary> naive_enumerate(const OracleConfig& cfg) {
  struct Node {
    WordSet front;
    std::vector<Word> leaves;
  };
  std::vector<Diary> out;
  std::deque<Node> queue;
  queue.push_back({WordSet{Word()}, {}});
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (node.front.empty()) {
      if (node.leaves.empty()) continue;
      Diary d{WordSet(node.leaves.begin(), node.leaves.end())};
      const auto report = validate(d);
      if (!report.valid) throw Error("oracle produced an invalid diary: " + report.failure);
      out.push_back(std::move(d));
      continue;
    }
    const std::size_t level = node.front.begin()->size();
    if (static_cast<int>(level) >= cfg.depth_cap) {
      throw CapExceeded("oracle depth cap of " + std::to_string(cfg.depth_cap) + " exceeded", out.size(),
                        std::to_string(out.size()));
    }
    for (const auto& e : allowed_events(node.front, level, node.leaves)) {
      Node child{clause::successor(node.front, e), node.leaves};
      if (e.kind == EventKind::Leaf) child.leaves.push_back(e.participants[0]);
      if (static_cast<int>(child.leaves.size() + child.front.size()) > cfg.max_leaves) continue;
      queue.push_back(std::move(child));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct GraphClassCount {
  SmallGraph representative;
  std::size_t count = 0;
};

// Diaries bucketed by the isomorphism class of their graph.
inline std::map<std::vector<std::uint8_t>, GraphClassCount> count_by_class(const std::vector<Diary>& diaries) {
  std::map<std::vector<std::uint8_t>, GraphClassCount> out;
  for (const auto& d : diaries) {
    const auto g = extract_graph(d);
    auto& slot = out[canonical_form(g)];
    if (slot.count == 0) slot.representative = g;
    ++slot.count;
  }
  return out;
}

struct CrossCheckReport {
  bool ok = false;
  std::size_t oracle_count = 0;
  std::size_t engine_count = 0;
  std::vector<Diary> only_in_oracle;
  std::vector<Diary> only_in_engine;
};

inline CrossCheckReport cross_check(const SmallGraph& g, const OracleConfig& cfg, const SearchLimits& limits = {}) {
  if (g.vertex_count() > cfg.max_leaves) {
    throw Error("cross_check needs max_leaves >= " + std::to_string(g.vertex_count()));
  }
  std::set<Diary> oracle;
  for (auto& d : naive_enumerate(cfg))
    if (is_isomorphic(extract_graph(d), g)) oracle.insert(std::move(d));
  std::set<Diary> engine;
  for (auto& d : enumerate_diaries(g, limits)) engine.insert(std::move(d));

  CrossCheckReport report;
  report.oracle_count = oracle.size();
  report.engine_count = count_diaries(g, limits).diary_count.convert_to<std::size_t>();
  std::set_difference(oracle.begin(), oracle.end(), engine.begin(), engine.end(),
                      std::back_inserter(report.only_in_oracle));
  std::set_difference(engine.begin(), engine.end(), oracle.begin(), oracle.end(),
                      std::back_inserter(report.only_in_engine));
  report.ok = report.only_in_oracle.empty() && report.only_in_engine.empty() &&
              report.oracle_count == report.engine_count && engine.size() == report.engine_count;
  return report;
}

}  // namespace diarykit
