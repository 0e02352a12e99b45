#pragma once

// Explicit diaries: finite antichains of words whose prefix closure grows one
// level at a time by exactly one of seven events.  Everything here works on
// the words themselves; the flag-based engine lives in state.hpp.

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "diarykit/errors.hpp"
#include "diarykit/graph.hpp"
#include "diarykit/words.hpp"

namespace diarykit {

enum class EventKind { Splitting, New1, New2, New11, New22, New111, Leaf };

inline constexpr std::array<EventKind, 7> kAllEventKinds = {EventKind::Splitting, EventKind::New1,   EventKind::New2,
                                                            EventKind::New11,     EventKind::New22,  EventKind::New111,
                                                            EventKind::Leaf};

inline std::string_view event_name(EventKind kind) {
  switch (kind) {
    case EventKind::Splitting: return "Splitting";
    case EventKind::New1: return "New1";
    case EventKind::New2: return "New2";
    case EventKind::New11: return "New11";
    case EventKind::New22: return "New22";
    case EventKind::New111: return "New111";
    case EventKind::Leaf: return "Leaf";
  }
  return "?";
}

inline int participant_count(EventKind kind) {
  switch (kind) {
    case EventKind::New11:
    case EventKind::New22: return 2;
    case EventKind::New111: return 3;
    default: return 1;
  }
}

struct Diary {
  WordSet words;

  friend bool operator==(const Diary&, const Diary&) = default;
  friend auto operator<=>(const Diary&, const Diary&) = default;
};

// One level of a diary.  Participants are the words of length `level` the
// clause names, in increasing order.
struct EventRecord {
  std::size_t level = 0;
  EventKind kind = EventKind::Splitting;
  std::vector<Word> participants;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

inline std::string display(const Word& w) { return w.empty() ? std::string("ε") : w.str(); }

inline std::string describe(const EventRecord& e) {
  std::string out(event_name(e.kind));
  out += "(";
  for (std::size_t k = 0; k < e.participants.size(); ++k) {
    if (k) out += ",";
    out += display(e.participants[k]);
  }
  out += ")@" + std::to_string(e.level);
  return out;
}

class ClassificationError : public Error {
 public:
  ClassificationError(const std::string& what, std::size_t level) : Error(what), level_(level) {}
  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

// ---------------------------------------------------------------------------
// Clause preconditions and extension rules on explicit fronts.

namespace clause {

inline bool letter_one_at(const Word& w, std::size_t i) { return w.at(i) == Letter::One; }

// Words of the front other than w that are not perpendicular to w.
inline std::vector<Word> non_perp_to(const WordSet& front, const Word& w) {
  std::vector<Word> out;
  for (const auto& z : front)
    if (z != w && !perp(z, w)) out.push_back(z);
  return out;
}

// Returns the violated condition, or nothing when the event is allowed.
// `earlier_leaves` are the members of the diary shorter than the front.
inline std::optional<std::string> violation(const WordSet& front, const EventRecord& e,
                                            const std::vector<Word>& earlier_leaves) {
  const auto& p = e.participants;
  switch (e.kind) {
    case EventKind::Splitting:
      return std::nullopt;
    case EventKind::New1:
      if (pred_one(p[0])) return "New1 requires ¬1(w)";
      return std::nullopt;
    case EventKind::New2:
      if (!pred_one(p[0])) return "New2 requires 1(w)";
      if (pred_two(p[0])) return "New2 requires ¬2(w)";
      return std::nullopt;
    case EventKind::New11:
      if (!pred_one(p[0]) || !pred_one(p[1])) return "New11 requires 1(v) and 1(w)";
      if (pred_oneone(p[0], p[1])) return "New11 requires ¬11(v,w)";
      return std::nullopt;
    case EventKind::New22: {
      const Word& v = p[0];
      const Word& w = p[1];
      if (!pred_two(v) || !pred_two(w)) return "New22 requires 2(v) and 2(w)";
      if (!pred_oneone(v, w)) return "New22 requires 11(v,w)";
      if (pred_twotwo(v, w)) return "New22 requires ¬22(v,w)";
      for (const auto& u : front) {
        if (u == v || u == w) continue;
        if (pred_oneone(u, v) && pred_oneone(u, w) && !pred_oneoneone(u, v, w)) {
          return "New22 requires 111(u,v,w) for u=" + display(u);
        }
      }
      return std::nullopt;
    }
    case EventKind::New111: {
      const Word& u = p[0];
      const Word& v = p[1];
      const Word& w = p[2];
      if (!pred_oneone(u, v) || !pred_oneone(u, w) || !pred_oneone(v, w)) return "New111 requires pairwise 11";
      if (pred_twotwo(u, v) || pred_twotwo(u, w) || pred_twotwo(v, w)) return "New111 requires pairwise ¬22";
      if (pred_oneoneone(u, v, w)) return "New111 requires ¬111(u,v,w)";
      return std::nullopt;
    }
    case EventKind::Leaf: {
      const Word& w = p[0];
      if (!pred_two(w)) return "Leaf requires 2(w)";
      const auto near = non_perp_to(front, w);
      for (std::size_t a = 0; a < near.size(); ++a)
        for (std::size_t b = a + 1; b < near.size(); ++b)
          if (!pred_oneone(near[a], near[b])) return "Leaf (a) no new 11: " + display(near[a]) + "," + display(near[b]);
      for (std::size_t a = 0; a < near.size(); ++a)
        for (std::size_t b = a + 1; b < near.size(); ++b)
          for (std::size_t c = b + 1; c < near.size(); ++c) {
            if (perp(near[a], near[b]) || perp(near[b], near[c]) || perp(near[a], near[c])) continue;
            if (!pred_oneoneone(near[a], near[b], near[c])) return "Leaf (b) no new 111";
          }
      for (const auto& u : near)
        for (const auto& leaf : earlier_leaves) {
          const auto at = leaf.size();
          if (letter_one_at(w, at) && letter_one_at(u, at) && !pred_two(u)) {
            return "Leaf (c) no new 2: " + display(u) + " shares leaf " + display(leaf);
          }
        }
      for (std::size_t a = 0; a < near.size(); ++a)
        for (std::size_t b = a + 1; b < near.size(); ++b) {
          const Word& u = near[a];
          const Word& v = near[b];
          if (pred_twotwo(u, v)) continue;
          if (pred_oneoneone(u, v, w)) return "Leaf (d) no new 22: 111 with " + display(u) + "," + display(v);
          for (const auto& leaf : earlier_leaves) {
            const auto at = leaf.size();
            if (letter_one_at(w, at) && letter_one_at(u, at) && letter_one_at(v, at)) {
              return "Leaf (d) no new 22: common leaf " + display(leaf);
            }
          }
        }
      return std::nullopt;
    }
  }
  return "unknown event";
}

// The next front the clause's extension rule produces.
inline WordSet successor(const WordSet& front, const EventRecord& e) {
  const auto& p = e.participants;
  const auto named = [&](const Word& z) { return std::find(p.begin(), p.end(), z) != p.end(); };
  WordSet next;
  switch (e.kind) {
    case EventKind::Splitting:
      for (const auto& z : front) next.insert(z.extended(Letter::Zero));
      next.insert(p[0].extended(Letter::One));
      break;
    case EventKind::New1:
    case EventKind::New11:
    case EventKind::New111:
      for (const auto& z : front) next.insert(z.extended(named(z) ? Letter::One : Letter::Zero));
      break;
    case EventKind::New2:
    case EventKind::New22:
      for (const auto& z : front) next.insert(z.extended(named(z) ? Letter::Two : Letter::Zero));
      break;
    case EventKind::Leaf:
      for (const auto& z : front) {
        if (z == p[0]) continue;
        next.insert(z.extended(perp(z, p[0]) ? Letter::Zero : Letter::One));
      }
      break;
  }
  return next;
}

// Every (kind, participants) choice for a front, ignoring preconditions.
inline std::vector<EventRecord> all_choices(const WordSet& front, std::size_t level) {
  const std::vector<Word> f(front.begin(), front.end());
  std::vector<EventRecord> out;
  for (auto kind : kAllEventKinds) {
    const int k = participant_count(kind);
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (k == 1) {
        out.push_back({level, kind, {f[a]}});
        continue;
      }
      for (std::size_t b = a + 1; b < f.size(); ++b) {
        if (k == 2) {
          out.push_back({level, kind, {f[a], f[b]}});
          continue;
        }
        for (std::size_t c = b + 1; c < f.size(); ++c) out.push_back({level, kind, {f[a], f[b], f[c]}});
      }
    }
  }
  return out;
}

}  // namespace clause

// Events whose preconditions hold on an explicit front.
inline std::vector<EventRecord> allowed_events(const WordSet& front, std::size_t level,
                                               const std::vector<Word>& earlier_leaves) {
  std::vector<EventRecord> out;
  for (auto& e : clause::all_choices(front, level))
    if (!clause::violation(front, e, earlier_leaves)) out.push_back(std::move(e));
  return out;
}

// Number of (kind, participants) choices that are allowed and produce
// `front_next`.  A diary needs exactly one at every level.
inline int count_matching_clauses(const WordSet& front_i, const WordSet& front_next,
                                  const std::vector<Word>& earlier_leaves) {
  const std::size_t level = front_i.empty() ? 0 : front_i.begin()->size();
  int matches = 0;
  for (const auto& e : clause::all_choices(front_i, level))
    if (clause::successor(front_i, e) == front_next && !clause::violation(front_i, e, earlier_leaves)) ++matches;
  return matches;
}

inline EventRecord classify_level(const WordSet& front_i, const WordSet& front_next,
                                  const std::vector<Word>& earlier_leaves = {}) {
  if (front_i.empty()) throw ClassificationError("cannot classify an empty front", 0);
  const std::size_t level = front_i.begin()->size();
  for (const auto& w : front_i)
    if (w.size() != level) throw std::invalid_argument("front words have different lengths");
  for (const auto& w : front_next)
    if (w.size() != level + 1) throw std::invalid_argument("next front words must be one letter longer");

  std::optional<EventRecord> found;
  int matches = 0;
  std::string near_miss;
  for (const auto& e : clause::all_choices(front_i, level)) {
    if (clause::successor(front_i, e) != front_next) continue;
    if (auto why = clause::violation(front_i, e, earlier_leaves)) {
      if (near_miss.empty()) near_miss = describe(e) + ": " + *why;
      continue;
    }
    ++matches;
    found = e;
  }
  if (matches > 1) {
    throw ClassificationError("internal: " + std::to_string(matches) + " clauses match at level " +
                                  std::to_string(level),
                              level);
  }
  if (!found) {
    std::string msg = "no clause matches at level " + std::to_string(level);
    msg += near_miss.empty() ? std::string(" (no extension rule produces the next front)") : "; nearest: " + near_miss;
    throw ClassificationError(msg, level);
  }
  return *found;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  bool valid = false;
  std::vector<EventRecord> events;
  std::optional<std::size_t> failure_level;
  std::string failure;
};

inline ValidationReport validate(const Diary& diary) {
  ValidationReport report;
  const auto fail = [&](std::optional<std::size_t> level, std::string why) {
    report.valid = false;
    report.events.clear();
    report.failure_level = level;
    report.failure = std::move(why);
    return report;
  };

  for (const auto& u : diary.words)
    for (const auto& v : diary.words)
      if (u != v && u.is_prefix_of(v)) {
        return fail(u.size(), "antichain violated: '" + u.str() + "' is a prefix of '" + v.str() + "'");
      }

  if (diary.words.empty()) {
    report.valid = true;
    return report;
  }

  const WordSet closure = prefix_closure(diary.words);
  std::size_t max_len = 0;
  for (const auto& w : diary.words) max_len = std::max(max_len, w.size());

  std::vector<Word> earlier_leaves;
  for (std::size_t level = 0; level <= max_len; ++level) {
    const WordSet front = level_slice(closure, level);
    const WordSet next = level_slice(closure, level + 1);
    if (level == max_len && front.size() > 1) {
      return fail(level, "final front nonempty: " + std::to_string(front.size()) +
                             " words of maximal length cannot all be consumed");
    }
    try {
      report.events.push_back(classify_level(front, next, earlier_leaves));
    } catch (const ClassificationError& e) {
      return fail(level, e.what());
    }
    const auto& last = report.events.back();
    if (last.kind == EventKind::Leaf) earlier_leaves.push_back(last.participants[0]);
  }
  report.valid = true;
  return report;
}

// ---------------------------------------------------------------------------
// Graph extraction: vertices are the members ordered by length; u, v with
// |u| < |v| are adjacent iff v has letter 1 at index |u|.

inline std::vector<Word> leaves_by_length(const Diary& diary) {
  std::vector<Word> order(diary.words.begin(), diary.words.end());
  std::stable_sort(order.begin(), order.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (order[k].size() == order[k - 1].size()) {
      throw Error("two members of length " + std::to_string(order[k].size()) + " in diary");
    }
  }
  return order;
}

inline SmallGraph extract_graph(const Diary& diary) {
  const auto order = leaves_by_length(diary);
  SmallGraph g(static_cast<int>(order.size()));
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (order[b].at(order[a].size()) == Letter::One) g.add_edge(static_cast<int>(a), static_cast<int>(b));
  return g;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json diary_to_json(const Diary& diary) {
  nlohmann::json words = nlohmann::json::array();
  for (const auto& w : diary.words) words.push_back(w.str());
  return {{"words", words}};
}

inline Diary diary_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("words") || !doc["words"].is_array()) {
    throw ParseError("diary JSON needs an array field \"words\"", 0);
  }
  Diary d;
  const auto& words = doc["words"];
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (!words[k].is_string()) throw ParseError("word " + std::to_string(k) + " is not a string", k);
    try {
      d.words.insert(Word(words[k].get<std::string>()));
    } catch (const ParseError& e) {
      throw ParseError("word " + std::to_string(k) + ": " + e.what(), k);
    }
  }
  return d;
}

// The tree of prefixes with one node per word, leaves doubled, and a column
// of level labels naming the event that happens at each level.
inline std::string diary_to_dot(const Diary& diary, const ValidationReport& report) {
  const WordSet closure = prefix_closure(diary.words);
  const auto id = [](const Word& w) { return "\"w" + w.str() + "\""; };
  std::ostringstream out;
  out << "digraph diary {\n  rankdir=TB;\n  node [shape=circle];\n";
  for (const auto& w : closure) {
    out << "  " << id(w) << " [label=\"" << (w.empty() ? std::string("ε") : std::string(1, w.str().back()))
        << "\", tooltip=\"" << display(w) << "\"";
    if (diary.words.count(w)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& w : closure)
    if (!w.empty()) out << "  " << id(w.prefix(w.size() - 1)) << " -> " << id(w) << ";\n";
  for (const auto& e : report.events) {
    const std::string level_id = "\"level" + std::to_string(e.level) + "\"";
    out << "  " << level_id << " [shape=plaintext, label=\"" << e.level << ": " << describe(e) << "\"];\n";
    out << "  { rank=same; " << level_id;
    for (const auto& w : level_slice(closure, e.level)) out << "; " << id(w);
    out << "; }\n";
    if (e.level > 0) out << "  \"level" << e.level - 1 << "\" -> " << level_id << " [style=invis];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace diarykit
