#include <gtest/gtest.h>

#include <set>

#include "diarykit/diary.hpp"
#include "diarykit/search.hpp"

using namespace diarykit;

namespace {

std::set<Diary> as_set(const std::vector<Diary>& v) { return {v.begin(), v.end()}; }

// Every yielded diary must validate, extract to the target and keep no
// duplicates.
void expect_sound(const SmallGraph& g, const std::vector<Diary>& diaries) {
  EXPECT_EQ(as_set(diaries).size(), diaries.size());
  for (const auto& d : diaries) {
    const auto report = validate(d);
    ASSERT_TRUE(report.valid) << report.failure;
    const auto h = extract_graph(d);
    EXPECT_TRUE(is_isomorphic(h, g));
    EXPECT_TRUE(is_k4_free(h));
  }
}

}  // namespace

TEST(Search, SingleVertex) {
  const auto diaries = enumerate_diaries(clique(1));
  ASSERT_EQ(diaries.size(), 1u);
  EXPECT_EQ(diaries[0].words, WordSet{Word("12")});
}

TEST(Search, TwoVertices) {
  const auto k2 = enumerate_diaries(clique(2));
  const auto e2 = enumerate_diaries(empty_graph(2));
  EXPECT_EQ(k2.size(), 36u);
  EXPECT_EQ(e2.size(), 23u);
  expect_sound(clique(2), k2);
  expect_sound(empty_graph(2), e2);
}

TEST(Search, CountsAndDegrees) {
  const auto k2 = count_diaries(clique(2));
  EXPECT_EQ(k2.diary_count, 36);
  EXPECT_EQ(k2.aut, 2u);
  EXPECT_EQ(k2.degree, 72);
  const auto e2 = count_diaries(empty_graph(2));
  EXPECT_EQ(e2.diary_count, 23);
  EXPECT_EQ(e2.degree, 46);
  EXPECT_EQ(count_diaries(clique(1)).degree, 1);
}

TEST(Search, ThreeVertices) {
  EXPECT_EQ(count_diaries(clique(3)).diary_count, 22658);
  EXPECT_EQ(count_diaries(path2()).diary_count, 160488);
  EXPECT_EQ(count_diaries(complement(path2())).diary_count, 267900);
  EXPECT_EQ(count_diaries(empty_graph(3)).diary_count, 197613);
}

TEST(Search, TrianglesAreSound) { expect_sound(clique(3), enumerate_diaries(clique(3))); }

TEST(Search, NotK4FreeHasNoDiaries) {
  const auto r = count_diaries(clique(4));
  EXPECT_EQ(r.diary_count, 0);
  EXPECT_EQ(r.degree, 0);
  EXPECT_TRUE(enumerate_diaries(clique(4)).empty());
}

TEST(Search, TargetTooLarge) {
  EXPECT_THROW(count_diaries(empty_graph(5)), CapabilityError);
  SearchLimits limits;
  limits.max_vertices = 2;
  EXPECT_THROW(count_diaries(clique(3), limits), CapabilityError);
  EXPECT_THROW(count_diaries(SmallGraph(0)), Error);
}

TEST(Search, WorkerCountDoesNotMatter) {
  for (const auto& g : {clique(2), empty_graph(2), clique(3), path2()}) {
    SearchLimits one, four;
    four.workers = 4;
    const auto a = count_diaries(g, one);
    const auto b = count_diaries(g, four);
    EXPECT_EQ(a.diary_count, b.diary_count);
    EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  }
  for (const auto& g : {clique(1), clique(2), empty_graph(2), clique(3)}) {
    for (int workers : {2, 4}) {
      SearchLimits limits;
      limits.workers = workers;
      EXPECT_EQ(enumerate_diaries(g), enumerate_diaries(g, limits));
    }
  }
}

TEST(Search, MemoizedAgreesWithDirectSearch) {
  for (int n = 1; n <= 3; ++n) {
    EXPECT_EQ(count_anticlique_memoized(n), count_diaries(empty_graph(n)).diary_count) << "n=" << n;
  }
  SearchLimits four;
  four.workers = 4;
  EXPECT_EQ(count_anticlique_memoized(4, four), count_anticlique_memoized(4));
}

TEST(Search, MemoizedFourAndFive) {
  EXPECT_EQ(count_anticlique_memoized(4), BigInt("272252729538223"));
  EXPECT_EQ(count_anticlique_memoized(5), BigInt("43391315736159690773738687637585"));
}

TEST(Search, DefaultDepthCap) {
  EXPECT_EQ(default_depth_cap(1), 3);
  EXPECT_EQ(default_depth_cap(3), 45);
  // The longest diary found stays well below the default cap.
  std::size_t longest = 0;
  for_each_diary_path(clique(3), {}, [&](const std::vector<EventSpec>& p) { longest = std::max(longest, p.size()); });
  EXPECT_LT(longest, static_cast<std::size_t>(default_depth_cap(3)));
}

TEST(Search, DepthCapExceeded) {
  SearchLimits limits;
  limits.depth_cap = 3;
  EXPECT_THROW(count_diaries(clique(2), limits), CapExceeded);
}

TEST(Search, NodeCapReportsProgress) {
  SearchLimits limits;
  limits.node_cap = 1000;
  try {
    count_diaries(clique(3), limits);
    FAIL() << "node cap not enforced";
  } catch (const CapExceeded& e) {
    EXPECT_GE(e.nodes_explored(), 1000u);
    EXPECT_FALSE(e.partial_count().empty());
  }
}

TEST(Search, ProgressCallback) {
  SearchLimits limits;
  limits.progress_interval = 1000;
  int calls = 0;
  limits.progress = [&](const Progress& p) {
    ++calls;
    EXPECT_GT(p.nodes_explored, 0u);
  };
  count_diaries(clique(3), limits);
  EXPECT_GT(calls, 0);
}

TEST(Search, MaterializedPathMatchesValidation) {
  for_each_diary_path(empty_graph(2), {}, [](const std::vector<EventSpec>& p) {
    const auto m = materialize(p);
    const auto report = validate(m.diary);
    ASSERT_TRUE(report.valid);
    ASSERT_EQ(report.events.size(), m.events.size());
    for (std::size_t i = 0; i < m.events.size(); ++i) EXPECT_EQ(describe(report.events[i]), describe(m.events[i]));
  });
}
