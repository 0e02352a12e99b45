#pragma once

// Depth-first enumeration of diaries for a target graph.
//
// The walk runs over FrontState values; a complete diary is a path from the
// initial state to a state with no branches.  Distinct paths give distinct
// diaries, so counting paths counts diaries.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "diarykit/bigint.hpp"
#include "diarykit/diary.hpp"
#include "diarykit/errors.hpp"
#include "diarykit/graph.hpp"
#include "diarykit/state.hpp"

namespace diarykit {

struct Progress {
  std::uint64_t nodes_explored = 0;
  int depth = 0;
  std::string partial_count;
};

struct SearchLimits {
  // 0 selects default_depth_cap(n).
  int depth_cap = 0;
  std::optional<std::uint64_t> node_cap;
  int workers = 1;
  // Largest target accepted by the plain enumerator.
  int max_vertices = 4;
  // Called roughly every `progress_interval` nodes when set.
  std::function<void(const Progress&)> progress;
  std::uint64_t progress_interval = std::uint64_t{1} << 22;
};

struct CountResult {
  BigInt diary_count;
  std::uint64_t aut = 0;
  BigInt degree;
  std::uint64_t nodes_explored = 0;
};

// Splits, leaves, per-node 1/2 events, per-node-pair 11/22 events and
// per-node-triple 111 events, with at most 2n - 1 nodes in the split tree.
inline int default_depth_cap(int n) {
  const long long nodes = 2LL * n - 1;
  const long long pairs = nodes * (nodes - 1) / 2;
  const long long triples = nodes * (nodes - 1) * (nodes - 2) / 6;
  return static_cast<int>((n - 1) + n + 2 * nodes + 2 * pairs + triples);
}

// Replays an event path on explicit words.  Returns the diary and, per level,
// the event record naming the participating words.
struct MaterializedDiary {
  Diary diary;
  std::vector<EventRecord> events;
};

inline MaterializedDiary materialize(const std::vector<EventSpec>& path) {
  MaterializedDiary out;
  std::vector<Word> words{Word()};
  FrontState s = initial_state();
  for (const auto& e : path) {
    EventRecord rec{static_cast<std::size_t>(s.level()), e.kind, {}};
    for (int k = 0; k < e.arity(); ++k) rec.participants.push_back(words[e.branches[k]]);
    std::sort(rec.participants.begin(), rec.participants.end());
    out.events.push_back(std::move(rec));

    const auto named = [&](int i) {
      for (int k = 0; k < e.arity(); ++k)
        if (e.branches[k] == i) return true;
      return false;
    };
    std::vector<Word> next;
    const int n = static_cast<int>(words.size());
    switch (e.kind) {
      case EventKind::Splitting:
        for (int i = 0; i < n; ++i) {
          next.push_back(words[i].extended(Letter::Zero));
          if (i == e.branches[0]) next.push_back(words[i].extended(Letter::One));
        }
        break;
      case EventKind::New1:
      case EventKind::New11:
      case EventKind::New111:
        for (int i = 0; i < n; ++i) next.push_back(words[i].extended(named(i) ? Letter::One : Letter::Zero));
        break;
      case EventKind::New2:
      case EventKind::New22:
        for (int i = 0; i < n; ++i) next.push_back(words[i].extended(named(i) ? Letter::Two : Letter::Zero));
        break;
      case EventKind::Leaf: {
        const int w = e.branches[0];
        out.diary.words.insert(words[w]);
        for (int i = 0; i < n; ++i)
          if (i != w) next.push_back(words[i].extended(s.perp(i, w) ? Letter::Zero : Letter::One));
        break;
      }
    }
    words = std::move(next);
    s = apply_unchecked(s, e);
  }
  return out;
}

namespace detail {

// Can the emitted leaves be mapped onto distinct target vertices as an
// induced subgraph, with every live branch mapped to a further distinct
// vertex whose neighbours among the images are exactly the images of the
// branch's leaf adjacency?  Every branch still owes at least one leaf, and
// branches with 22 between them only ever produce non-adjacent leaves.
class TargetEmbedding {
 public:
  explicit TargetEmbedding(const SmallGraph& target) : n_(target.vertex_count()) {
    for (int v = 0; v < n_; ++v) adj_[v] = static_cast<std::uint32_t>(target.neighbors(v));
  }

  bool feasible(const FrontState& s) const {
    const int leaves = s.leaf_count();
    const int branches = s.branch_count();
    if (leaves + branches > n_) return false;
    std::array<int, kMaxLeaves> image{};
    return place_leaf(s, 0, leaves, branches, 0, image);
  }

 private:
  bool place_leaf(const FrontState& s, int l, int leaves, int branches, std::uint32_t used,
                  std::array<int, kMaxLeaves>& image) const {
    if (l == leaves) {
      std::array<int, kMaxBranches> branch_image{};
      return place_branch(s, 0, branches, leaves, used, image, branch_image);
    }
    const LeafMask earlier = s.leaf_neighbors(l) & ((LeafMask{1} << l) - 1);
    for (int v = 0; v < n_; ++v) {
      if ((used >> v) & 1U) continue;
      bool ok = true;
      for (int k = 0; k < l && ok; ++k) ok = (((adj_[v] >> image[k]) & 1U) != 0) == (((earlier >> k) & 1U) != 0);
      if (!ok) continue;
      image[l] = v;
      if (place_leaf(s, l + 1, leaves, branches, used | (1U << v), image)) return true;
    }
    return false;
  }

  bool place_branch(const FrontState& s, int b, int branches, int leaves, std::uint32_t used,
                    const std::array<int, kMaxLeaves>& image, std::array<int, kMaxBranches>& branch_image) const {
    if (b == branches) return true;
    const LeafMask pattern = s.leaf_adjacency(b);
    for (int v = 0; v < n_; ++v) {
      if ((used >> v) & 1U) continue;
      bool ok = true;
      for (int k = 0; k < leaves && ok; ++k) ok = (((adj_[v] >> image[k]) & 1U) != 0) == (((pattern >> k) & 1U) != 0);
      for (int c = 0; c < b && ok; ++c) ok = !(s.has22(b, c) && ((adj_[v] >> branch_image[c]) & 1U));
      if (!ok) continue;
      branch_image[b] = v;
      if (place_branch(s, b + 1, branches, leaves, used | (1U << v), image, branch_image)) return true;
    }
    return false;
  }

  int n_;
  std::array<std::uint32_t, 32> adj_{};
};

// Shared bookkeeping for one search: node counting, caps, progress.
class SearchMonitor {
 public:
  SearchMonitor(const SearchLimits& limits, int depth_cap) : limits_(limits), depth_cap_(depth_cap) {}

  int depth_cap() const { return depth_cap_; }

  void visit(int depth, const std::function<std::string()>& partial) {
    const auto n = ++nodes_;
    if (limits_.node_cap && n > *limits_.node_cap) {
      throw CapExceeded("node cap of " + std::to_string(*limits_.node_cap) + " exceeded", n, partial());
    }
    if (depth > depth_cap_) {
      throw CapExceeded("depth cap of " + std::to_string(depth_cap_) + " exceeded", n, partial());
    }
    if (limits_.progress && n % limits_.progress_interval == 0) {
      std::lock_guard lock(progress_mutex_);
      limits_.progress(Progress{n, depth, partial()});
    }
  }

  std::uint64_t nodes() const { return nodes_.load(); }

 private:
  const SearchLimits& limits_;
  int depth_cap_;
  std::atomic<std::uint64_t> nodes_{0};
  std::mutex progress_mutex_;
};

// The pruned walk for one target.  `on_complete(path)` fires for each diary.
class DiaryWalker {
 public:
  DiaryWalker(const SmallGraph& target, SearchMonitor& monitor)
      : target_(target), n_(target.vertex_count()), embedding_(target), monitor_(monitor) {}

  // Children of s that survive pruning, in legal-event order.
  template <class Visit>
  void for_each_child(const FrontState& s, Visit&& visit) const {
    for_each_legal_event(s, [&](const EventSpec& e) {
      if (e.kind == EventKind::Splitting && s.split_count() >= n_ - 1) return;
      if (e.kind == EventKind::Leaf && s.leaf_count() >= n_) return;
      // The last branch may only close the diary once all n leaves exist.
      if (e.kind == EventKind::Leaf && s.branch_count() == 1 && s.leaf_count() + 1 != n_) return;
      FrontState child = apply_unchecked(s, e);
      if ((e.kind == EventKind::Leaf || e.kind == EventKind::Splitting) && !embedding_.feasible(child)) return;
      visit(e, child);
    });
  }

  bool complete(const FrontState& s) const { return s.branch_count() == 0; }

  // Final acceptance; pruning already guarantees an induced embedding of
  // n leaves into n vertices, which is an isomorphism.
  bool accepts(const FrontState& s) const { return s.leaf_count() == n_ && is_isomorphic(s.leaf_graph(), target_); }

  template <class OnComplete>
  void walk(const FrontState& s, std::vector<EventSpec>& path, std::uint64_t& found, OnComplete&& on_complete) {
    monitor_.visit(s.level(), [&] { return std::to_string(found); });
    if (complete(s)) {
      if (accepts(s)) {
        ++found;
        on_complete(path);
      }
      return;
    }
    for_each_child(s, [&](const EventSpec& e, const FrontState& child) {
      path.push_back(e);
      walk(child, path, found, on_complete);
      path.pop_back();
    });
  }

 private:
  const SmallGraph& target_;
  int n_;
  TargetEmbedding embedding_;
  SearchMonitor& monitor_;
};

// A subtree root for one worker.  A `done` node is an accepted diary reached
// while building the frontier; it stays in place so output order matches the
// sequential walk.
struct FrontierNode {
  FrontState state;
  std::vector<EventSpec> path;
  bool done = false;
};

// Expands the walk breadth-first until there are enough independent subtrees
// to spread across workers.  Nodes expanded here count as explored, and
// accepted diaries met on the way are added to `found`.
template <class Walker>
std::vector<FrontierNode> build_frontier(Walker& walker, SearchMonitor& monitor, std::size_t wanted,
                                         std::uint64_t& found) {
  std::vector<FrontierNode> layer{{initial_state(), {}}};
  for (int round = 0; round < 64 && layer.size() < wanted; ++round) {
    if (std::all_of(layer.begin(), layer.end(), [](const FrontierNode& f) { return f.done; })) break;
    std::vector<FrontierNode> next;
    for (auto& node : layer) {
      if (node.done) {
        next.push_back(std::move(node));
        continue;
      }
      monitor.visit(node.state.level(), [&] { return std::to_string(found); });
      if (walker.complete(node.state)) {
        if (walker.accepts(node.state)) {
          ++found;
          node.done = true;
          next.push_back(std::move(node));
        }
        continue;
      }
      walker.for_each_child(node.state, [&](const EventSpec& e, const FrontState& child) {
        auto path = node.path;
        path.push_back(e);
        next.push_back({child, std::move(path)});
      });
    }
    layer = std::move(next);
  }
  return layer;
}

// Runs `work(index)` for every index in [0, count) on `workers` threads.
template <class Work>
void run_parallel(std::size_t count, int workers, Work&& work) {
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto loop = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      {
        std::lock_guard lock(error_mutex);
        if (error) return;
      }
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 1; t < workers; ++t) threads.emplace_back(loop);
  loop();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

inline void check_target(const SmallGraph& g, const SearchLimits& limits) {
  const int n = g.vertex_count();
  if (n < 1) throw Error("target graph must have at least one vertex");
  if (n > limits.max_vertices) {
    throw CapabilityError("target has " + std::to_string(n) + " vertices; the enumerator is configured for at most " +
                          std::to_string(limits.max_vertices));
  }
  if (limits.workers < 1) throw Error("workers must be at least 1");
}

inline int effective_depth_cap(const SearchLimits& limits, int n) {
  return limits.depth_cap > 0 ? limits.depth_cap : default_depth_cap(n);
}

}  // namespace detail

// Calls visit(path) for each event path that yields a diary of the target, in
// a deterministic order independent of the worker count.  Returns the number
// of nodes explored.
template <class Visit>
std::uint64_t for_each_diary_path(const SmallGraph& g, const SearchLimits& limits, Visit&& visit) {
  detail::check_target(g, limits);
  if (!is_k4_free(g)) return 0;
  detail::SearchMonitor monitor(limits, detail::effective_depth_cap(limits, g.vertex_count()));
  detail::DiaryWalker walker(g, monitor);
  std::uint64_t found = 0;
  if (limits.workers == 1) {
    std::vector<EventSpec> path;
    walker.walk(initial_state(), path, found, visit);
    return monitor.nodes();
  }
  auto frontier = detail::build_frontier(walker, monitor, static_cast<std::size_t>(limits.workers) * 16, found);
  std::vector<std::vector<std::vector<EventSpec>>> per_subtree(frontier.size());
  detail::run_parallel(frontier.size(), limits.workers, [&](std::size_t i) {
    if (frontier[i].done) {
      per_subtree[i].push_back(frontier[i].path);
      return;
    }
    std::uint64_t local = 0;
    auto path = frontier[i].path;
    walker.walk(frontier[i].state, path, local,
                [&](const std::vector<EventSpec>& p) { per_subtree[i].push_back(p); });
  });
  for (const auto& paths : per_subtree)
    for (const auto& p : paths) visit(p);
  return monitor.nodes();
}

inline std::vector<Diary> enumerate_diaries(const SmallGraph& g, const SearchLimits& limits = {}) {
  std::vector<Diary> out;
  for_each_diary_path(g, limits, [&](const std::vector<EventSpec>& path) { out.push_back(materialize(path).diary); });
  return out;
}

inline CountResult count_diaries(const SmallGraph& g, const SearchLimits& limits = {}) {
  detail::check_target(g, limits);
  CountResult result;
  result.aut = aut_order(g);
  if (!is_k4_free(g)) {
    result.diary_count = 0;
    result.degree = 0;
    return result;
  }
  detail::SearchMonitor monitor(limits, detail::effective_depth_cap(limits, g.vertex_count()));
  detail::DiaryWalker walker(g, monitor);
  const auto ignore = [](const std::vector<EventSpec>&) {};
  std::uint64_t found = 0;
  if (limits.workers == 1) {
    std::vector<EventSpec> path;
    walker.walk(initial_state(), path, found, ignore);
  } else {
    auto frontier = detail::build_frontier(walker, monitor, static_cast<std::size_t>(limits.workers) * 16, found);
    std::vector<std::uint64_t> counts(frontier.size(), 0);
    detail::run_parallel(frontier.size(), limits.workers, [&](std::size_t i) {
      if (frontier[i].done) return;
      auto path = frontier[i].path;
      walker.walk(frontier[i].state, path, counts[i], ignore);
    });
    for (auto c : counts) found += c;
  }
  result.diary_count = found;
  result.degree = result.diary_count * result.aut;
  result.nodes_explored = monitor.nodes();
  return result;
}

// ---------------------------------------------------------------------------
// Memoized counting for anticliques.
//
// With an edgeless target every Leaf needs all other branches perpendicular
// to it, so leaf adjacency never forms and the number of completions depends
// only on the predicate flags up to relabelling the branches, plus the number
// of leaves still owed.

namespace detail {

inline constexpr int kMemoMaxBranches = 8;

using StateCode = unsigned __int128;

struct MemoKey {
  StateCode code = 0;
  int branches = 0;
  int remaining = 0;

  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    const auto lo = static_cast<std::uint64_t>(k.code);
    const auto hi = static_cast<std::uint64_t>(k.code >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6) + (lo >> 2));
    h ^= static_cast<std::uint64_t>(k.branches) << 56 ^ static_cast<std::uint64_t>(k.remaining) << 48;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Flags read in the order given by perm: per branch (1, 2), per pair (11, 22),
// per triple 111.
inline StateCode encode(const FrontState& s, const std::array<int, kMemoMaxBranches>& perm) {
  const int n = s.branch_count();
  StateCode code = 0;
  const auto push = [&](bool b) { code = (code << 1) | (b ? 1U : 0U); };
  for (int i = 0; i < n; ++i) push(s.has1(perm[i])), push(s.has2(perm[i]));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) push(s.has11(perm[i], perm[j])), push(s.has22(perm[i], perm[j]));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) push(s.has111(perm[i], perm[j], perm[k]));
  return code;
}

// Minimum code over branch orders that sort branches by a relabelling-invariant
// signature; only orders within equal-signature blocks are tried.
inline StateCode canonical_code(const FrontState& s) {
  const int n = s.branch_count();
  if (n > kMemoMaxBranches) throw CapabilityError("memoized counting supports at most 8 branches");
  std::array<std::uint32_t, kMemoMaxBranches> sig{};
  for (int b = 0; b < n; ++b) {
    int t = 0;
    for (int c = 0; c < n; ++c)
      if (c != b) t += std::popcount(s.triple_row(b, c));
    sig[b] = (s.has1(b) ? 1U : 0U) << 30 | (s.has2(b) ? 1U : 0U) << 29 |
             static_cast<std::uint32_t>(std::popcount(s.pair11_row(b))) << 20 |
             static_cast<std::uint32_t>(std::popcount(s.pair22_row(b))) << 12 | static_cast<std::uint32_t>(t);
  }
  std::array<int, kMemoMaxBranches> perm{};
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.begin() + n, [&](int a, int b) { return sig[a] != sig[b] ? sig[a] > sig[b] : a < b; });
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && sig[perm[j]] == sig[perm[i]]) ++j;
    if (j - i > 1) blocks.emplace_back(i, j);
    i = j;
  }
  for (auto [lo, hi] : blocks) std::sort(perm.begin() + lo, perm.begin() + hi);
  StateCode best = encode(s, perm);
  // Odometer over the permutations of every block.
  for (;;) {
    std::size_t k = 0;
    for (; k < blocks.size(); ++k) {
      auto [lo, hi] = blocks[k];
      if (std::next_permutation(perm.begin() + lo, perm.begin() + hi)) break;
    }
    if (k == blocks.size()) break;
    best = std::min(best, encode(s, perm));
  }
  return best;
}

class MemoTable {
 public:
  std::optional<BigInt> find(const MemoKey& key) {
    auto& shard = shards_[MemoKeyHash{}(key) % kShards];
    std::lock_guard lock(shard.mutex);
    auto it = shard.map.find(key);
    if (it == shard.map.end()) return std::nullopt;
    return it->second;
  }

  void insert(const MemoKey& key, const BigInt& value) {
    auto& shard = shards_[MemoKeyHash{}(key) % kShards];
    std::lock_guard lock(shard.mutex);
    shard.map.emplace(key, value);
  }

  std::size_t size() {
    std::size_t total = 0;
    for (auto& shard : shards_) {
      std::lock_guard lock(shard.mutex);
      total += shard.map.size();
    }
    return total;
  }

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    std::mutex mutex;
    std::unordered_map<MemoKey, BigInt, MemoKeyHash> map;
  };
  std::array<Shard, kShards> shards_;
};

class AnticliqueCounter {
 public:
  AnticliqueCounter(int n, MemoTable& memo, SearchMonitor& monitor) : n_(n), memo_(memo), monitor_(monitor) {}

  template <class Visit>
  void for_each_child(const FrontState& s, Visit&& visit) const {
    for_each_legal_event(s, [&](const EventSpec& e) {
      if (e.kind == EventKind::Splitting && s.split_count() >= n_ - 1) return;
      if (e.kind == EventKind::Leaf && s.non_perp_to(e.branches[0]) != 0) return;
      if (e.kind == EventKind::Leaf && s.branch_count() == 1 && s.leaf_count() + 1 != n_) return;
      visit(e, apply_unchecked(s, e));
    });
  }

  bool complete(const FrontState& s) const { return s.branch_count() == 0; }
  bool accepts(const FrontState& s) const { return s.leaf_count() == n_; }

  BigInt count(const FrontState& s) {
    monitor_.visit(s.level(), [] { return std::string("?"); });
    if (complete(s)) return accepts(s) ? BigInt(1) : BigInt(0);
    const MemoKey key{canonical_code(s), s.branch_count(), n_ - s.leaf_count()};
    if (auto hit = memo_.find(key)) return *hit;
    BigInt total = 0;
    for_each_child(s, [&](const EventSpec&, const FrontState& child) { total += count(child); });
    memo_.insert(key, total);
    return total;
  }

 private:
  int n_;
  MemoTable& memo_;
  SearchMonitor& monitor_;
};

}  // namespace detail

inline BigInt count_anticlique_memoized(int n, const SearchLimits& limits = {}) {
  if (n < 1) throw Error("anticlique size must be at least 1");
  if (n > detail::kMemoMaxBranches) throw CapabilityError("memoized counting supports anticliques up to 8 vertices");
  if (limits.workers < 1) throw Error("workers must be at least 1");
  detail::SearchMonitor monitor(limits, detail::effective_depth_cap(limits, n));
  detail::MemoTable memo;
  detail::AnticliqueCounter counter(n, memo, monitor);
  if (limits.workers == 1) return counter.count(initial_state());

  std::uint64_t early = 0;
  auto frontier = detail::build_frontier(counter, monitor, static_cast<std::size_t>(limits.workers) * 16, early);
  std::vector<BigInt> parts(frontier.size());
  detail::run_parallel(frontier.size(), limits.workers, [&](std::size_t i) {
    if (!frontier[i].done) parts[i] = counter.count(frontier[i].state);
  });
  BigInt total = early;
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace diarykit
