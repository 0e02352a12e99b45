#include <gtest/gtest.h>

#include "diarykit/diary.hpp"
#include "diarykit/search.hpp"

using namespace diarykit;

namespace {

Diary diary(std::initializer_list<const char*> words) {
  Diary d;
  for (const char* w : words) d.words.insert(Word(w));
  return d;
}

WordSet front(std::initializer_list<const char*> words) {
  WordSet s;
  for (const char* w : words) s.insert(Word(w));
  return s;
}

}  // namespace

TEST(Diary, ClassifyLevel) {
  auto e = classify_level(front({""}), front({"0", "1"}));
  EXPECT_EQ(e.kind, EventKind::Splitting);
  EXPECT_EQ(e.participants, std::vector<Word>{Word("")});

  e = classify_level(front({""}), front({"1"}));
  EXPECT_EQ(e.kind, EventKind::New1);

  e = classify_level(front({"1"}), front({"12"}));
  EXPECT_EQ(e.kind, EventKind::New2);
  EXPECT_EQ(e.participants, std::vector<Word>{Word("1")});
}

TEST(Diary, ClassifyLevelReportsNearMiss) {
  // "0" -> "02" has the shape of New2 but ¬1("0").
  try {
    classify_level(front({"0"}), front({"02"}));
    FAIL();
  } catch (const ClassificationError& e) {
    EXPECT_NE(std::string(e.what()).find("New2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("1(w)"), std::string::npos);
  }
  // Nothing produces two 2-letters from a single word.
  EXPECT_THROW(classify_level(front({"1"}), front({"12", "11"})), ClassificationError);
}

TEST(Diary, ValidateUniqueOneLeafDiary) {
  const auto r = validate(diary({"12"}));
  ASSERT_TRUE(r.valid) << r.failure;
  ASSERT_EQ(r.events.size(), 3U);
  EXPECT_EQ(r.events[0], (EventRecord{0, EventKind::New1, {Word("")}}));
  EXPECT_EQ(r.events[1], (EventRecord{1, EventKind::New2, {Word("1")}}));
  EXPECT_EQ(r.events[2], (EventRecord{2, EventKind::Leaf, {Word("12")}}));
}

TEST(Diary, ValidateRejects) {
  auto r = validate(diary({""}));
  EXPECT_FALSE(r.valid);
  ASSERT_TRUE(r.failure_level.has_value());
  EXPECT_EQ(*r.failure_level, 0U);
  EXPECT_NE(r.failure.find("Leaf requires 2(w)"), std::string::npos);

  r = validate(diary({"1", "11"}));
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.failure.find("antichain"), std::string::npos);

  // Literal-range reading would accept {"1"}; the last member must also leave.
  EXPECT_FALSE(validate(diary({"1"})).valid);

  r = validate(diary({"012", "112"}));
  EXPECT_FALSE(r.valid);
}

TEST(Diary, ValidateTwoLeafDiaries) {
  // Split, 2 on the 1-branch, leaf; the survivor has no 1, so it is ⊥ and
  // takes a 0, then acquires 1 and 2 on its own and leaves.
  const auto r = validate(diary({"12", "00012"}));
  ASSERT_TRUE(r.valid) << r.failure;
  EXPECT_EQ(r.events[0].kind, EventKind::Splitting);
  EXPECT_EQ(r.events[1].kind, EventKind::New2);
  EXPECT_EQ(r.events[2].kind, EventKind::Leaf);
  EXPECT_TRUE(is_isomorphic(extract_graph(diary({"12", "00012"})), empty_graph(2)));
}

TEST(Diary, ExtractGraph) {
  EXPECT_EQ(extract_graph(diary({"1", "01"})), clique(2));
  EXPECT_EQ(extract_graph(diary({"1", "00"})), empty_graph(2));
  EXPECT_EQ(extract_graph(diary({"12"})), empty_graph(1));
  EXPECT_THROW(extract_graph(diary({"10", "01"})), Error);
}

TEST(Diary, JsonAndDot) {
  const auto d = diary({"12", "00012"});
  EXPECT_EQ(diary_to_json(d).dump(), R"({"words":["00012","12"]})");
  EXPECT_EQ(diary_from_json(diary_to_json(d)), d);
  EXPECT_THROW(diary_from_json(nlohmann::json::parse(R"({"words":["13"]})")), ParseError);
  EXPECT_THROW(diary_from_json(nlohmann::json::parse(R"({"w":[]})")), ParseError);

  const auto dot = diary_to_dot(d, validate(d));
  EXPECT_NE(dot.find("digraph diary"), std::string::npos);
  EXPECT_NE(dot.find("\"w0\" -> \"w00\""), std::string::npos);
  EXPECT_NE(dot.find("Splitting(ε)@0"), std::string::npos);
  EXPECT_NE(dot.find("doublecircle"), std::string::npos);
}

// Every level of every diary with at most two leaves is matched by exactly
// one (kind, participants) choice, and validation recovers the event path the
// search executed.
TEST(DiaryProperty, ClassificationUniqueAndRoundTrip) {
  for (const auto& g : {clique(1), clique(2), empty_graph(2)}) {
    for_each_diary_path(g, {}, [&](const std::vector<EventSpec>& path) {
      const auto m = materialize(path);
      const auto closure = prefix_closure(m.diary.words);
      std::vector<Word> leaves;
      for (std::size_t level = 0; level < path.size(); ++level) {
        ASSERT_EQ(count_matching_clauses(level_slice(closure, level), level_slice(closure, level + 1), leaves), 1);
        if (m.events[level].kind == EventKind::Leaf) leaves.push_back(m.events[level].participants[0]);
      }
      const auto r = validate(m.diary);
      ASSERT_TRUE(r.valid) << r.failure;
      ASSERT_EQ(r.events, m.events);
    });
  }
}
