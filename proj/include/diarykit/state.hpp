#pragma once

// Abstract search state for diaries under construction.
//
// A front of live words is represented only by the predicate values that the
// diary clauses inspect: per-branch 1/2 flags, per-pair 11/22 flags, per-triple
// 111 flags, plus for every branch the set of already emitted leaves it is
// adjacent to (its letter at that leaf's level is 1).  Letter positions are
// otherwise forgotten, which is what makes counting and memoization feasible.
//
// Branches are positional.  Splitting branch p puts the 0-child at p and the
// 1-child at p + 1; a Leaf removes its branch and shifts the rest down.

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "diarykit/diary.hpp"
#include "diarykit/errors.hpp"
#include "diarykit/graph.hpp"

namespace diarykit {

inline constexpr int kMaxBranches = 12;
inline constexpr int kMaxLeaves = 24;

using BranchMask = std::uint16_t;
using LeafMask = std::uint32_t;

static_assert(kMaxBranches <= 16 && kMaxLeaves <= 32);

struct EventSpec {
  EventKind kind = EventKind::Splitting;
  // Branch indices in increasing order; unused slots hold -1.
  std::array<int, 3> branches{-1, -1, -1};

  int arity() const { return participant_count(kind); }

  friend bool operator==(const EventSpec&, const EventSpec&) = default;
};

inline EventSpec make_event(EventKind kind, int a, int b = -1, int c = -1) {
  EventSpec e{kind, {a, b, c}};
  std::sort(e.branches.begin(), e.branches.begin() + e.arity());
  return e;
}

inline std::string describe(const EventSpec& e) {
  std::string out(event_name(e.kind));
  out += "(";
  for (int k = 0; k < e.arity(); ++k) {
    if (k) out += ",";
    out += std::to_string(e.branches[k]);
  }
  return out + ")";
}

struct BranchInfo {
  bool has1 = false;
  bool has2 = false;
  std::vector<int> leaf_adjacency;

  friend bool operator==(const BranchInfo&, const BranchInfo&) = default;
};

class FrontState {
 public:
  int level() const noexcept { return level_; }
  int branch_count() const noexcept { return branches_; }
  int leaf_count() const noexcept { return leaves_; }
  int split_count() const noexcept { return splits_; }

  bool has1(int b) const noexcept { return (one_ >> b) & 1U; }
  bool has2(int b) const noexcept { return (two_ >> b) & 1U; }
  bool has11(int a, int b) const noexcept { return (pair11_[a] >> b) & 1U; }
  bool has22(int a, int b) const noexcept { return (pair22_[a] >> b) & 1U; }
  bool has111(int a, int b, int c) const noexcept { return (triple_[a][b] >> c) & 1U; }
  bool perp(int a, int b) const noexcept { return !has1(a) || !has1(b) || has22(a, b); }

  BranchMask ones() const noexcept { return one_; }
  BranchMask twos() const noexcept { return two_; }
  BranchMask pair11_row(int a) const noexcept { return pair11_[a]; }
  BranchMask pair22_row(int a) const noexcept { return pair22_[a]; }
  BranchMask triple_row(int a, int b) const noexcept { return triple_[a][b]; }

  // Emitted leaves that branch b is adjacent to.
  LeafMask leaf_adjacency(int b) const noexcept { return leaf_adj_[b]; }
  // Earlier leaves adjacent to leaf l.
  LeafMask leaf_neighbors(int l) const noexcept { return leaf_graph_[l]; }

  // Branches z != w with z not perpendicular to w.
  BranchMask non_perp_to(int w) const noexcept {
    if (!has1(w)) return 0;
    return static_cast<BranchMask>(one_ & ~pair22_[w] & ~bit(w));
  }

  BranchInfo branch(int b) const {
    BranchInfo info{has1(b), has2(b), {}};
    for (LeafMask m = leaf_adj_[b]; m; m &= m - 1) info.leaf_adjacency.push_back(std::countr_zero(m));
    return info;
  }

  std::vector<BranchInfo> branches() const {
    std::vector<BranchInfo> out;
    for (int b = 0; b < branches_; ++b) out.push_back(branch(b));
    return out;
  }

  SmallGraph leaf_graph() const {
    SmallGraph g(leaves_);
    for (int l = 0; l < leaves_; ++l)
      for (LeafMask m = leaf_graph_[l]; m; m &= m - 1) g.add_edge(l, std::countr_zero(m));
    return g;
  }

  // Pair and triple flags plus per-branch 1/2 flags; ignores leaf bookkeeping.
  bool same_predicates(const FrontState& other) const noexcept {
    return branches_ == other.branches_ && one_ == other.one_ && two_ == other.two_ && pair11_ == other.pair11_ &&
           pair22_ == other.pair22_ && triple_ == other.triple_;
  }

  friend bool operator==(const FrontState&, const FrontState&) = default;

  friend FrontState initial_state();
  friend FrontState apply_unchecked(const FrontState& s, const EventSpec& e);

 private:
  static constexpr BranchMask bit(int i) noexcept { return static_cast<BranchMask>(1U << i); }

  int level_ = 0;
  int branches_ = 0;
  int leaves_ = 0;
  int splits_ = 0;
  BranchMask one_ = 0;
  BranchMask two_ = 0;
  std::array<BranchMask, kMaxBranches> pair11_{};
  std::array<BranchMask, kMaxBranches> pair22_{};
  // triple_[a][b] bit c <=> 111(a, b, c); stored for all orderings.
  std::array<std::array<BranchMask, kMaxBranches>, kMaxBranches> triple_{};
  std::array<LeafMask, kMaxBranches> leaf_adj_{};
  std::array<LeafMask, kMaxLeaves> leaf_graph_{};
};

inline FrontState initial_state() {
  FrontState s;
  s.branches_ = 1;
  return s;
}

// ---------------------------------------------------------------------------
// Legal events

namespace detail {

inline bool new22_allowed(const FrontState& s, int v, int w) {
  if (!s.has2(v) || !s.has2(w) || !s.has11(v, w) || s.has22(v, w)) return false;
  for (int u = 0; u < s.branch_count(); ++u) {
    if (u == v || u == w) continue;
    if (s.has11(u, v) && s.has11(u, w) && !s.has111(u, v, w)) return false;
  }
  return true;
}

inline bool new111_allowed(const FrontState& s, int u, int v, int w) {
  return s.has11(u, v) && s.has11(u, w) && s.has11(v, w) && !s.has22(u, v) && !s.has22(u, w) && !s.has22(v, w) &&
         !s.has111(u, v, w);
}

inline bool leaf_allowed(const FrontState& s, int w) {
  if (!s.has2(w)) return false;
  const BranchMask near = s.non_perp_to(w);
  const LeafMask w_adj = s.leaf_adjacency(w);
  for (BranchMask mu = near; mu; mu &= mu - 1) {
    const int u = std::countr_zero(mu);
    // (c) a leaf adjacent to both u and w forces 2(u)
    if ((s.leaf_adjacency(u) & w_adj) && !s.has2(u)) return false;
    const BranchMask later = static_cast<BranchMask>(near & ~((2U << u) - 1));
    // (a) pairwise 11 inside the neighbourhood
    if ((later & s.pair11_row(u)) != later) return false;
    for (BranchMask mv = later; mv; mv &= mv - 1) {
      const int v = std::countr_zero(mv);
      if (!s.has22(u, v)) {
        // (d) 111 with w, or a common leaf neighbour with w, forces 22(u, v)
        if (s.has111(u, v, w)) return false;
        if (s.leaf_adjacency(u) & s.leaf_adjacency(v) & w_adj) return false;
        // (b) pairwise non-perpendicular triples need 111
        const BranchMask third = static_cast<BranchMask>(later & ~((2U << v) - 1) & ~s.pair22_row(u) & ~s.pair22_row(v));
        if ((third & s.triple_row(u, v)) != third) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

inline bool is_legal(const FrontState& s, const EventSpec& e) {
  const int n = s.branch_count();
  for (int k = 0; k < 3; ++k) {
    const int b = e.branches[k];
    if (k < e.arity()) {
      if (b < 0 || b >= n) return false;
      if (k > 0 && b <= e.branches[k - 1]) return false;
    } else if (b != -1) {
      return false;
    }
  }
  const auto& p = e.branches;
  switch (e.kind) {
    case EventKind::Splitting: return true;
    case EventKind::New1: return !s.has1(p[0]);
    case EventKind::New2: return s.has1(p[0]) && !s.has2(p[0]);
    case EventKind::New11: return s.has1(p[0]) && s.has1(p[1]) && !s.has11(p[0], p[1]);
    case EventKind::New22: return detail::new22_allowed(s, p[0], p[1]);
    case EventKind::New111: return detail::new111_allowed(s, p[0], p[1], p[2]);
    case EventKind::Leaf: return detail::leaf_allowed(s, p[0]);
  }
  return false;
}

// Calls visit(EventSpec) for every legal event in a fixed order: kind as in
// EventKind, then participants lexicographically.
template <class Visit>
void for_each_legal_event(const FrontState& s, Visit&& visit) {
  const int n = s.branch_count();
  for (int w = 0; w < n; ++w) visit(make_event(EventKind::Splitting, w));
  for (int w = 0; w < n; ++w)
    if (!s.has1(w)) visit(make_event(EventKind::New1, w));
  for (int w = 0; w < n; ++w)
    if (s.has1(w) && !s.has2(w)) visit(make_event(EventKind::New2, w));
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (s.has1(v) && s.has1(w) && !s.has11(v, w)) visit(make_event(EventKind::New11, v, w));
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (detail::new22_allowed(s, v, w)) visit(make_event(EventKind::New22, v, w));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w)
        if (detail::new111_allowed(s, u, v, w)) visit(make_event(EventKind::New111, u, v, w));
  for (int w = 0; w < n; ++w)
    if (detail::leaf_allowed(s, w)) visit(make_event(EventKind::Leaf, w));
}

inline std::vector<EventSpec> legal_events(const FrontState& s) {
  std::vector<EventSpec> out;
  for_each_legal_event(s, [&](const EventSpec& e) { out.push_back(e); });
  return out;
}

// ---------------------------------------------------------------------------
// Transitions

inline FrontState apply_unchecked(const FrontState& s, const EventSpec& e) {
  using Mask = BranchMask;
  FrontState t = s;
  t.level_ = s.level_ + 1;
  const auto& p = e.branches;
  const auto bit = FrontState::bit;

  switch (e.kind) {
    case EventKind::Splitting: {
      if (s.branches_ >= kMaxBranches) throw CapabilityError("front exceeds " + std::to_string(kMaxBranches) + " branches");
      const int w = p[0];
      const int n = s.branches_ + 1;
      // New index i comes from old index src(i); w and w + 1 both come from w.
      const auto src = [w](int i) { return i <= w ? i : i - 1; };
      // Spread an old row mask to new indices, duplicating bit w.
      const auto spread = [w](Mask m) -> Mask {
        const Mask low = static_cast<Mask>(m & ((2U << w) - 1));
        const Mask high = static_cast<Mask>((m >> w) << (w + 1));
        return static_cast<Mask>(low | high);
      };
      t.branches_ = n;
      t.splits_ = s.splits_ + 1;
      t.one_ = static_cast<Mask>(spread(s.one_) | bit(w + 1));
      t.two_ = spread(s.two_);
      for (int i = 0; i < n; ++i) {
        t.pair11_[i] = spread(s.pair11_[src(i)]);
        t.pair22_[i] = spread(s.pair22_[src(i)]);
        t.leaf_adj_[i] = s.leaf_adj_[src(i)];
      }
      for (int i = n; i < kMaxBranches; ++i) t.pair11_[i] = t.pair22_[i] = 0, t.leaf_adj_[i] = 0;
      // The two children share w's whole history.
      const Mask sibling_clear = static_cast<Mask>(~(bit(w) | bit(w + 1)));
      t.pair11_[w] &= sibling_clear;
      t.pair11_[w + 1] &= sibling_clear;
      t.pair22_[w] &= sibling_clear;
      t.pair22_[w + 1] &= sibling_clear;
      if (s.has1(w)) t.pair11_[w] |= bit(w + 1), t.pair11_[w + 1] |= bit(w);
      if (s.has2(w)) t.pair22_[w] |= bit(w + 1), t.pair22_[w + 1] |= bit(w);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.triple_[i][j] = (i == j) ? Mask{0} : spread(s.triple_[src(i)][src(j)]);
      for (int i = n; i < kMaxBranches; ++i)
        for (int j = 0; j < kMaxBranches; ++j) t.triple_[i][j] = t.triple_[j][i] = 0;
      // Triples holding both children: 111 iff 11 between w and the third.
      for (int u = 0; u < n; ++u) {
        if (u == w || u == w + 1) continue;
        const bool on = s.has11(w, src(u));
        const auto set = [&](int a, int b, int c) {
          if (on) t.triple_[a][b] |= bit(c);
          else t.triple_[a][b] &= static_cast<Mask>(~bit(c));
        };
        set(w, w + 1, u), set(w + 1, w, u), set(w, u, w + 1), set(u, w, w + 1), set(w + 1, u, w), set(u, w + 1, w);
      }
      t.triple_[w][w + 1] &= sibling_clear;
      t.triple_[w + 1][w] &= sibling_clear;
      for (int u = 0; u < n; ++u) t.triple_[u][u] = 0;
      break;
    }
    case EventKind::New1:
      t.one_ |= bit(p[0]);
      break;
    case EventKind::New2:
      t.two_ |= bit(p[0]);
      break;
    case EventKind::New11:
      t.pair11_[p[0]] |= bit(p[1]);
      t.pair11_[p[1]] |= bit(p[0]);
      break;
    case EventKind::New22:
      t.pair22_[p[0]] |= bit(p[1]);
      t.pair22_[p[1]] |= bit(p[0]);
      break;
    case EventKind::New111: {
      const int a = p[0], b = p[1], c = p[2];
      t.triple_[a][b] |= bit(c), t.triple_[b][a] |= bit(c);
      t.triple_[a][c] |= bit(b), t.triple_[c][a] |= bit(b);
      t.triple_[b][c] |= bit(a), t.triple_[c][b] |= bit(a);
      break;
    }
    case EventKind::Leaf: {
      const int w = p[0];
      if (s.leaves_ >= kMaxLeaves) throw CapabilityError("more than " + std::to_string(kMaxLeaves) + " leaves");
      const int leaf = s.leaves_;
      const Mask near = s.non_perp_to(w);
      t.leaf_graph_[leaf] = s.leaf_adj_[w];
      for (LeafMask m = s.leaf_adj_[w]; m; m &= m - 1) t.leaf_graph_[std::countr_zero(m)] |= LeafMask{1} << leaf;
      t.leaves_ = leaf + 1;
      // Every branch not perpendicular to w takes letter 1 at this level.
      for (Mask mu = near; mu; mu &= mu - 1) {
        const int u = std::countr_zero(mu);
        t.leaf_adj_[u] |= LeafMask{1} << leaf;
        t.pair11_[u] |= static_cast<Mask>(near & ~bit(u));
        for (Mask mv = near; mv; mv &= mv - 1) {
          const int v = std::countr_zero(mv);
          if (v != u) t.triple_[u][v] |= static_cast<Mask>(near & ~bit(u) & ~bit(v));
        }
      }
      // Drop branch w.
      const int n = s.branches_ - 1;
      const auto squeeze = [w](Mask m) -> Mask {
        const Mask low = static_cast<Mask>(m & ((1U << w) - 1));
        const Mask high = static_cast<Mask>((m >> (w + 1)) << w);
        return static_cast<Mask>(low | high);
      };
      const auto src = [w](int i) { return i < w ? i : i + 1; };
      FrontState r = t;
      r.branches_ = n;
      r.one_ = squeeze(t.one_);
      r.two_ = squeeze(t.two_);
      for (int i = 0; i < kMaxBranches; ++i) {
        const bool live = i < n;
        r.pair11_[i] = live ? squeeze(t.pair11_[src(i)]) : Mask{0};
        r.pair22_[i] = live ? squeeze(t.pair22_[src(i)]) : Mask{0};
        r.leaf_adj_[i] = live ? t.leaf_adj_[src(i)] : LeafMask{0};
        for (int j = 0; j < kMaxBranches; ++j)
          r.triple_[i][j] = (live && j < n) ? squeeze(t.triple_[src(i)][src(j)]) : Mask{0};
      }
      return r;
    }
  }
  return t;
}

inline FrontState apply_event(const FrontState& s, const EventSpec& e) {
  if (!is_legal(s, e)) throw Error("illegal event " + describe(e) + " at level " + std::to_string(s.level()));
  return apply_unchecked(s, e);
}

// ---------------------------------------------------------------------------
// Debug dump

inline nlohmann::json state_to_json(const FrontState& s) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& b : s.branches())
    branches.push_back({{"has1", b.has1}, {"has2", b.has2}, {"leaf_adjacency", b.leaf_adjacency}});
  nlohmann::json pairs = nlohmann::json::array();
  nlohmann::json triples = nlohmann::json::array();
  const int n = s.branch_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      pairs.push_back({{"branches", {a, b}}, {"has11", s.has11(a, b)}, {"has22", s.has22(a, b)}});
      for (int c = b + 1; c < n; ++c)
        if (s.has111(a, b, c)) triples.push_back({a, b, c});
    }
  return {{"level", s.level()},       {"branches", branches},
          {"pairs", pairs},           {"triples", triples},
          {"leaves", s.leaf_count()}, {"leaf_graph", graph_to_json(s.leaf_graph())["edges"]}};
}

}  // namespace diarykit
