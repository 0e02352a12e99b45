#include <gtest/gtest.h>

#include <algorithm>

#include "diarykit/diary.hpp"
#include "diarykit/state.hpp"
#include "support/shadow.hpp"

using namespace diarykit;

namespace {

FrontState run(std::initializer_list<EventSpec> events) {
  FrontState s = initial_state();
  for (const auto& e : events) s = apply_event(s, e);
  return s;
}

EventSpec split(int w) { return make_event(EventKind::Splitting, w); }
EventSpec new1(int w) { return make_event(EventKind::New1, w); }
EventSpec new2(int w) { return make_event(EventKind::New2, w); }
EventSpec leaf(int w) { return make_event(EventKind::Leaf, w); }

bool contains(const std::vector<EventSpec>& events, const EventSpec& e) {
  return std::find(events.begin(), events.end(), e) != events.end();
}

}  // namespace

TEST(State, InitialState) {
  const auto s = initial_state();
  EXPECT_EQ(s.level(), 0);
  ASSERT_EQ(s.branch_count(), 1);
  EXPECT_EQ(s.branch(0), (BranchInfo{false, false, {}}));
  EXPECT_EQ(legal_events(s), (std::vector<EventSpec>{split(0), new1(0)}));
}

TEST(State, LegalEventsSingleBranch) {
  EXPECT_EQ(legal_events(run({new1(0)})), (std::vector<EventSpec>{split(0), new2(0)}));
  EXPECT_EQ(legal_events(run({new1(0), new2(0)})), (std::vector<EventSpec>{split(0), leaf(0)}));
}

TEST(State, LegalEventsTwoBranches) {
  // Split before any 1: children share no 1, then both acquire one.
  const auto s = run({split(0), new1(0)});
  ASSERT_TRUE(s.has1(0) && s.has1(1));
  ASSERT_FALSE(s.has11(0, 1));
  const auto events = legal_events(s);
  EXPECT_TRUE(contains(events, make_event(EventKind::New11, 0, 1)));
  EXPECT_FALSE(contains(events, make_event(EventKind::New22, 0, 1)));
}

TEST(State, SplittingInheritsSharedPrefix) {
  const auto s = run({new1(0), split(0)});
  EXPECT_TRUE(s.has11(0, 1));
  EXPECT_FALSE(s.has22(0, 1));
  EXPECT_EQ(s.split_count(), 1);
}

TEST(State, LeafAddsAdjacency) {
  const auto s = run({new1(0), split(0), new2(1)});
  ASSERT_FALSE(s.perp(0, 1));
  const auto t = apply_event(s, leaf(1));
  EXPECT_EQ(t.branch_count(), 1);
  EXPECT_EQ(t.leaf_count(), 1);
  EXPECT_EQ(t.branch(0).leaf_adjacency, std::vector<int>{0});
}

TEST(State, IllegalEventsRejected) {
  EXPECT_THROW(apply_event(initial_state(), new2(0)), Error);
  EXPECT_THROW(apply_event(initial_state(), leaf(0)), Error);
  EXPECT_THROW(apply_event(initial_state(), split(1)), Error);
  EXPECT_THROW(apply_event(run({split(0)}), make_event(EventKind::New11, 0, 1)), Error);
}

TEST(State, JsonDump) {
  const auto j = state_to_json(run({new1(0), split(0), new2(1)}));
  EXPECT_EQ(j["level"], 3);
  EXPECT_EQ(j["branches"].size(), 2U);
  EXPECT_EQ(j["branches"][1]["has2"], true);
  EXPECT_EQ(j["pairs"][0]["has11"], true);
}

// Random legal event paths applied to both the flag state and explicit words
// agree on every predicate and on the legal event set at every level; flags
// are monotone, the front-size law holds and Leaf events are neutral.
TEST(StateProperty, ShadowConsistency) {
  const auto run = diarykit::testing::run_shadow_sequences(20240611, 1500, 40);
  EXPECT_EQ(run.failure, "");
  EXPECT_EQ(run.sequences, 1500);
  EXPECT_GT(run.leaf_events, 1000);
  // Some Leaf events must switch on a 111 flag, or the deviation is untested.
  EXPECT_GT(run.leaf_triples_switched, 0);
  RecordProperty("leaf_triples_switched", run.leaf_triples_switched);
}

TEST(StateProperty, ShadowConsistencyWideFronts) {
  const auto run = diarykit::testing::run_shadow_sequences(99, 300, 60, 9);
  EXPECT_EQ(run.failure, "");
}
