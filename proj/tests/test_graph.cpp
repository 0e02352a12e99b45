#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <map>

#include "diarykit/graph.hpp"

using namespace diarykit;

namespace {

// Every labelled graph on n vertices, indexed by its upper-triangle bit mask.
std::vector<SmallGraph> all_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<SmallGraph> out;
  for (unsigned mask = 0; mask < (1U << slots.size()); ++mask) {
    SmallGraph g(n);
    for (std::size_t k = 0; k < slots.size(); ++k)
      if ((mask >> k) & 1U) g.add_edge(slots[k].first, slots[k].second);
    out.push_back(g);
  }
  return out;
}

std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(Graph, Isomorphism) {
  EXPECT_TRUE(is_isomorphic(clique(3), clique(3)));
  EXPECT_FALSE(is_isomorphic(path2(), complement(path2())));
  EXPECT_FALSE(is_isomorphic(empty_graph(2), clique(2)));
  EXPECT_TRUE(is_isomorphic(path2(), relabel(path2(), {1, 2, 0})));
}

TEST(Graph, AutomorphismOrder) {
  EXPECT_EQ(aut_order(clique(3)), 6U);
  EXPECT_EQ(aut_order(path2()), 2U);
  EXPECT_EQ(aut_order(empty_graph(2)), 2U);
  EXPECT_EQ(aut_order(empty_graph(1)), 1U);
  EXPECT_EQ(aut_order(clique(10)), 3628800U);
  EXPECT_THROW(aut_order(empty_graph(11)), CapabilityError);
}

TEST(Graph, CanonicalForm) {
  SmallGraph a(2);
  a.add_edge(1, 0);
  EXPECT_EQ(canonical_form(clique(2)), canonical_form(a));
  EXPECT_NE(canonical_form(path2()), canonical_form(clique(3)));
  EXPECT_EQ(canonical_form(empty_graph(1)), std::vector<std::uint8_t>{1});
  EXPECT_THROW(canonical_form(clique(11)), CapabilityError);
}

TEST(Graph, K4Freeness) {
  EXPECT_FALSE(is_k4_free(clique(4)));
  EXPECT_TRUE(is_k4_free(clique(3)));
  EXPECT_TRUE(is_k4_free(complement(clique(4))));
  SmallGraph g = clique(5);
  g.remove_edge(0, 1);
  EXPECT_FALSE(is_k4_free(g));  // {1,2,3,4}
}

TEST(Graph, Constructors) {
  EXPECT_EQ(parse_spec("clique:3"), clique(3));
  const auto cp = parse_spec("complement:path:2");
  EXPECT_EQ(cp.vertex_count(), 3);
  EXPECT_EQ(cp.edge_count(), 1);
  EXPECT_EQ(cp, complement(path2()));
  EXPECT_EQ(complement(empty_graph(3)), clique(3));
  EXPECT_EQ(parse_spec("empty:4"), empty_graph(4));
}

TEST(Graph, ParseErrorsCarryPosition) {
  try {
    parse_spec("complement:clique:x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 18U);
  }
  EXPECT_THROW(parse_spec("cycle:3"), ParseError);
  EXPECT_THROW(parse_spec("clique"), ParseError);
  EXPECT_THROW(parse_spec("path:3"), ParseError);
  EXPECT_THROW(parse_spec("g6:C"), ParseError);
}

TEST(Graph, Graph6) {
  EXPECT_EQ(to_graph6(clique(3)), "Bw");
  EXPECT_EQ(to_graph6(empty_graph(3)), "B?");
  EXPECT_EQ(parse_spec("g6:Bw"), clique(3));
  EXPECT_EQ(to_graph6(clique(4)), "C~");
  for (int n = 0; n <= 5; ++n)
    for (const auto& g : all_graphs(n)) ASSERT_EQ(parse_graph6(to_graph6(g)), g);
}

TEST(Graph, JsonSpec) {
  const std::string path = testing::TempDir() + "graph_spec.json";
  {
    std::ofstream out(path);
    out << R"({"n": 3, "edges": [[0, 1], [1, 2]]})";
  }
  EXPECT_TRUE(is_isomorphic(parse_spec("json:" + path), path2()));
  {
    std::ofstream out(path);
    out << R"({"n": 2, "edges": [[0, 5]]})";
  }
  EXPECT_THROW(parse_spec("json:" + path), ParseError);
  EXPECT_THROW(parse_spec("json:/nonexistent/graph.json"), ParseError);
  std::remove(path.c_str());
}

TEST(GraphProperty, IsomorphismMatchesCanonicalFormExhaustively) {
  for (int n = 0; n <= 4; ++n) {
    const auto graphs = all_graphs(n);
    for (const auto& g : graphs)
      for (const auto& h : graphs) ASSERT_EQ(is_isomorphic(g, h), canonical_form(g) == canonical_form(h));
  }
  // n = 5: bucket by canonical form, then compare against bucket representatives.
  const auto graphs = all_graphs(5);
  std::map<std::vector<std::uint8_t>, SmallGraph> reps;
  for (const auto& g : graphs) {
    auto [it, inserted] = reps.emplace(canonical_form(g), g);
    if (!inserted) ASSERT_TRUE(is_isomorphic(g, it->second));
  }
  EXPECT_EQ(reps.size(), 34U);  // graphs on 5 vertices up to isomorphism
  for (auto a = reps.begin(); a != reps.end(); ++a)
    for (auto b = std::next(a); b != reps.end(); ++b) ASSERT_FALSE(is_isomorphic(a->second, b->second));
}

TEST(GraphProperty, AutomorphismInvariants) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : all_graphs(n)) {
      const auto a = aut_order(g);
      ASSERT_EQ(factorial(n) % a, 0U);
      ASSERT_EQ(a, aut_order(complement(g)));
      ASSERT_EQ(complement(complement(g)), g);
    }
}
