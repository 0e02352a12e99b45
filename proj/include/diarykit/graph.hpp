#pragma once

// Finite simple graphs on at most 62 vertices: isomorphism, automorphism
// counting, canonical forms and the small graph-spec language used by the CLI.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "diarykit/errors.hpp"

namespace diarykit {

class SmallGraph {
 public:
  static constexpr int kMaxVertices = 62;

  SmallGraph() = default;

  explicit SmallGraph(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > kMaxVertices) {
      throw CapabilityError("graph with " + std::to_string(n) + " vertices exceeds the limit of " +
                            std::to_string(kMaxVertices));
    }
  }

  int vertex_count() const noexcept { return n_; }

  bool has_edge(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    return (rows_[i] >> j) & 1U;
  }

  void add_edge(int i, int j) { set_edge(i, j, true); }
  void remove_edge(int i, int j) { set_edge(i, j, false); }

  void set_edge(int i, int j, bool present) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw Error("self-loop on vertex " + std::to_string(i));
    if (present) {
      rows_[i] |= bit(j);
      rows_[j] |= bit(i);
    } else {
      rows_[i] &= ~bit(j);
      rows_[j] &= ~bit(i);
    }
  }

  // Bit j set iff {i, j} is an edge.
  std::uint64_t neighbors(int i) const {
    check_vertex(i);
    return rows_[i];
  }

  int degree(int i) const { return std::popcount(neighbors(i)); }

  int edge_count() const {
    int twice = 0;
    for (auto row : rows_) twice += std::popcount(row);
    return twice / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const SmallGraph&, const SmallGraph&) = default;

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

  void check_vertex(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("vertex " + std::to_string(i) + " out of range");
  }

  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

// ---------------------------------------------------------------------------
// Constructors

inline SmallGraph clique(int n) {
  SmallGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline SmallGraph empty_graph(int n) { return SmallGraph(n); }

// Path with two edges: 0 - 1 - 2.
inline SmallGraph path2() {
  SmallGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

inline SmallGraph complement(const SmallGraph& g) {
  SmallGraph out(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i)
    for (int j = i + 1; j < g.vertex_count(); ++j)
      if (!g.has_edge(i, j)) out.add_edge(i, j);
  return out;
}

// Graph whose vertex i is vertex perm[i] of g.
inline SmallGraph relabel(const SmallGraph& g, const std::vector<int>& perm) {
  const int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n) throw Error("permutation size does not match graph");
  SmallGraph out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.has_edge(perm[i], perm[j])) out.add_edge(i, j);
  return out;
}

inline SmallGraph induced_subgraph(const SmallGraph& g, const std::vector<int>& vertices) {
  SmallGraph out(static_cast<int>(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (g.has_edge(vertices[a], vertices[b])) out.add_edge(static_cast<int>(a), static_cast<int>(b));
  return out;
}

// ---------------------------------------------------------------------------
// Structural queries

inline bool is_k4_free(const SmallGraph& g) {
  const int n = g.vertex_count();
  for (int a = 0; a < n; ++a) {
    const auto na = g.neighbors(a);
    for (int b = a + 1; b < n; ++b) {
      if (!((na >> b) & 1U)) continue;
      auto common = na & g.neighbors(b) & ~((std::uint64_t{2} << b) - 1);
      // Any edge inside the common neighbourhood above b closes a K4.
      while (common) {
        const int c = std::countr_zero(common);
        common &= common - 1;
        if (common & g.neighbors(c)) return false;
      }
    }
  }
  return true;
}

namespace detail {

constexpr int kBruteForceLimit = 10;

inline void require_brute_force_size(const SmallGraph& g, const char* what) {
  if (g.vertex_count() > kBruteForceLimit) {
    throw CapabilityError(std::string(what) + " supports at most " + std::to_string(kBruteForceLimit) +
                          " vertices, got " + std::to_string(g.vertex_count()));
  }
}

// Backtracking over vertex maps g -> h that preserve adjacency and
// non-adjacency.  `visit` is called for every complete map and returns false
// to stop the enumeration.
template <class Visit>
bool for_each_isomorphism(const SmallGraph& g, const SmallGraph& h, Visit&& visit) {
  const int n = g.vertex_count();
  if (n != h.vertex_count()) return true;
  std::vector<int> image(static_cast<std::size_t>(n), -1);
  std::uint64_t used = 0;

  auto extend = [&](auto&& self, int v) -> bool {
    if (v == n) return visit(image);
    for (int c = 0; c < n; ++c) {
      if ((used >> c) & 1U) continue;
      if (g.degree(v) != h.degree(c)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = g.has_edge(u, v) == h.has_edge(image[u], c);
      if (!ok) continue;
      image[v] = c;
      used |= std::uint64_t{1} << c;
      const bool keep_going = self(self, v + 1);
      used &= ~(std::uint64_t{1} << c);
      image[v] = -1;
      if (!keep_going) return false;
    }
    return true;
  };
  return extend(extend, 0);
}

inline std::vector<int> sorted_degrees(const SmallGraph& g) {
  std::vector<int> d;
  for (int i = 0; i < g.vertex_count(); ++i) d.push_back(g.degree(i));
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace detail

inline bool is_isomorphic(const SmallGraph& g, const SmallGraph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  if (detail::sorted_degrees(g) != detail::sorted_degrees(h)) return false;
  bool found = false;
  detail::for_each_isomorphism(g, h, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

inline std::uint64_t aut_order(const SmallGraph& g) {
  detail::require_brute_force_size(g, "aut_order");
  std::uint64_t count = 0;
  detail::for_each_isomorphism(g, g, [&](const std::vector<int>&) {
    ++count;
    return true;
  });
  return count;
}

// First byte is the vertex count; the rest is the upper triangle (row-major,
// i < j) of the lexicographically smallest relabelling, one byte per bit.
inline std::vector<std::uint8_t> canonical_form(const SmallGraph& g) {
  detail::require_brute_force_size(g, "canonical_form");
  const int n = g.vertex_count();
  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2;
  std::vector<std::uint8_t> best(bits, 1);
  std::vector<std::uint8_t> current(bits, 0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::size_t k = 0;
    bool smaller = false;
    bool larger = false;
    for (int i = 0; i < n && !larger; ++i) {
      for (int j = i + 1; j < n; ++j, ++k) {
        current[k] = g.has_edge(perm[i], perm[j]) ? 1 : 0;
        if (!smaller) {
          if (current[k] < best[k]) {
            smaller = true;
          } else if (current[k] > best[k]) {
            larger = true;
            break;
          }
        }
      }
    }
    if (smaller) std::copy(current.begin(), current.end(), best.begin());
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<std::uint8_t> out;
  out.reserve(bits + 1);
  out.push_back(static_cast<std::uint8_t>(n));
  out.insert(out.end(), best.begin(), best.end());
  return out;
}

// ---------------------------------------------------------------------------
// graph6

inline std::string to_graph6(const SmallGraph& g) {
  const int n = g.vertex_count();
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

// `offset` shifts reported error positions when the text is embedded in a spec.
inline SmallGraph parse_graph6(std::string_view text, std::size_t offset = 0) {
  if (text.starts_with(">>graph6<<")) {
    text.remove_prefix(10);
    offset += 10;
  }
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty graph6 string", offset);
  const int n = static_cast<unsigned char>(text[0]) - 63;
  if (n < 0 || n > SmallGraph::kMaxVertices) {
    throw ParseError("graph6 vertex count must be a single character in '?'..'}'", offset);
  }
  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2;
  const std::size_t expected = 1 + (bits + 5) / 6;
  if (text.size() != expected) {
    throw ParseError("graph6 string for " + std::to_string(n) + " vertices needs " + std::to_string(expected) +
                         " characters, got " + std::to_string(text.size()),
                     offset + std::min(text.size(), expected));
  }
  SmallGraph g(n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const std::size_t pos = 1 + k / 6;
      const int value = static_cast<unsigned char>(text[pos]) - 63;
      if (value < 0 || value > 63) throw ParseError("invalid graph6 character", offset + pos);
      if ((value >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  for (std::size_t pos = 1; pos < text.size(); ++pos) {
    const int value = static_cast<unsigned char>(text[pos]) - 63;
    if (value < 0 || value > 63) throw ParseError("invalid graph6 character", offset + pos);
  }
  return g;
}

// ---------------------------------------------------------------------------
// JSON: {"n": int, "edges": [[i, j], ...]} with 0-based vertices.

inline nlohmann::json graph_to_json(const SmallGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [i, j] : g.edges()) edges.push_back({i, j});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

inline SmallGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError("graph JSON needs an integer field \"n\"", 0);
  }
  SmallGraph g(doc["n"].get<int>());
  if (doc.contains("edges")) {
    const auto& edges = doc["edges"];
    if (!edges.is_array()) throw ParseError("\"edges\" must be an array", 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& pair = edges[e];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
        throw ParseError("edge " + std::to_string(e) + " must be a pair of integers", e);
      }
      const int i = pair[0].get<int>();
      const int j = pair[1].get<int>();
      if (i < 0 || j < 0 || i >= g.vertex_count() || j >= g.vertex_count() || i == j) {
        throw ParseError("edge " + std::to_string(e) + " has invalid endpoints", e);
      }
      g.add_edge(i, j);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Spec grammar:
//   clique:N | empty:N | path:2 | complement:<spec> | g6:<graph6> | json:<path>

namespace detail {

inline int parse_count(std::string_view text, std::size_t offset) {
  if (text.empty()) throw ParseError("expected a vertex count", offset);
  int value = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (c < '0' || c > '9') throw ParseError(std::string("unexpected character '") + c + "'", offset + k);
    value = value * 10 + (c - '0');
    if (value > SmallGraph::kMaxVertices) throw ParseError("vertex count too large", offset + k);
  }
  return value;
}

inline SmallGraph parse_spec_at(std::string_view text, std::size_t offset) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("expected '<kind>:<argument>'", offset + text.size());
  const auto kind = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  const std::size_t arg_offset = offset + colon + 1;
  if (kind == "clique") return clique(parse_count(arg, arg_offset));
  if (kind == "empty") return empty_graph(parse_count(arg, arg_offset));
  if (kind == "path") {
    if (parse_count(arg, arg_offset) != 2) throw ParseError("only path:2 is supported", arg_offset);
    return path2();
  }
  if (kind == "complement") return complement(parse_spec_at(arg, arg_offset));
  if (kind == "g6") return parse_graph6(arg, arg_offset);
  if (kind == "json") {
    std::ifstream in{std::string(arg)};
    if (!in) throw ParseError("cannot open graph file '" + std::string(arg) + "'", arg_offset);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid graph JSON: ") + e.what(), arg_offset);
    }
    return graph_from_json(doc);
  }
  throw ParseError("unknown graph kind '" + std::string(kind) + "'", offset);
}

}  // namespace detail

inline SmallGraph parse_spec(std::string_view text) { return detail::parse_spec_at(text, 0); }

}  // namespace diarykit
