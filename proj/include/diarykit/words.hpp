#pragma once

// Words over {0,1,2}, the predicates 1, 2, 11, 22, 111 and perpendicularity,
// prefix closures, and the type graph a word describes.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diarykit/errors.hpp"
#include "diarykit/graph.hpp"

namespace diarykit {

enum class Letter : std::uint8_t { Zero = 0, One = 1, Two = 2 };

inline char to_char(Letter c) { return static_cast<char>('0' + static_cast<int>(c)); }

class Word {
 public:
  Word() = default;

  // Parses a string over "012".
  explicit Word(std::string_view text) : letters_(text) {
    for (std::size_t k = 0; k < letters_.size(); ++k) {
      if (letters_[k] < '0' || letters_[k] > '2') {
        throw ParseError(std::string("invalid letter '") + letters_[k] + "' in word", k);
      }
    }
  }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Letter at(std::size_t i) const {
    if (i >= letters_.size()) {
      throw std::out_of_range("letter index " + std::to_string(i) + " beyond word of length " +
                              std::to_string(letters_.size()));
    }
    return static_cast<Letter>(letters_[i] - '0');
  }

  Word extended(Letter c) const {
    Word w = *this;
    w.letters_.push_back(to_char(c));
    return w;
  }

  Word prefix(std::size_t length) const {
    if (length > letters_.size()) throw std::out_of_range("prefix longer than word");
    Word w;
    w.letters_ = letters_.substr(0, length);
    return w;
  }

  bool is_prefix_of(const Word& other) const {
    return letters_.size() <= other.letters_.size() && other.letters_.compare(0, letters_.size(), letters_) == 0;
  }

  const std::string& str() const noexcept { return letters_; }

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::string letters_;
};

using WordSet = std::set<Word>;

namespace detail {

inline void require_same_level(const Word& u, const Word& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("predicate arguments have different lengths: '" + u.str() + "' and '" + v.str() +
                                "'");
  }
  if (u == v) throw std::invalid_argument("predicate arguments must be distinct: '" + u.str() + "'");
}

inline bool has_letter(const Word& w, Letter c) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w.at(i) == c) return true;
  return false;
}

}  // namespace detail

inline bool pred_one(const Word& w) { return detail::has_letter(w, Letter::One); }
inline bool pred_two(const Word& w) { return detail::has_letter(w, Letter::Two); }

inline bool pred_oneone(const Word& u, const Word& v) {
  detail::require_same_level(u, v);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.at(i) == Letter::One && v.at(i) == Letter::One) return true;
  return false;
}

inline bool pred_twotwo(const Word& u, const Word& v) {
  detail::require_same_level(u, v);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.at(i) == Letter::Two && v.at(i) == Letter::Two) return true;
  return false;
}

inline bool pred_oneoneone(const Word& u, const Word& v, const Word& w) {
  detail::require_same_level(u, v);
  detail::require_same_level(u, w);
  detail::require_same_level(v, w);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.at(i) == Letter::One && v.at(i) == Letter::One && w.at(i) == Letter::One) return true;
  return false;
}

inline bool perp(const Word& u, const Word& v) {
  detail::require_same_level(u, v);
  return !pred_one(u) || !pred_one(v) || pred_twotwo(u, v);
}

inline WordSet prefix_closure(const WordSet& words) {
  WordSet out;
  for (const auto& w : words)
    for (std::size_t len = 0; len <= w.size(); ++len) out.insert(w.prefix(len));
  return out;
}

inline WordSet level_slice(const WordSet& words, std::size_t length) {
  WordSet out;
  for (const auto& w : words)
    if (w.size() == length) out.insert(w);
  return out;
}

// Type graph of a word: ordinary vertices 0..m-1 and the type vertex t = m.
struct TypeGraph {
  SmallGraph graph;
  int type_vertex = 0;
};

// Position ell of w occupies vertex ell + |{j < ell : w_j = 2}|; a letter 2
// occupies that vertex and the next one.
inline int type_vertex_index(const Word& w, std::size_t ell) {
  int twos = 0;
  for (std::size_t j = 0; j < ell; ++j)
    if (w.at(j) == Letter::Two) ++twos;
  return static_cast<int>(ell) + twos;
}

inline TypeGraph word_to_type(const Word& w) {
  const int ordinary = type_vertex_index(w, w.size());
  TypeGraph out{SmallGraph(ordinary + 1), ordinary};
  for (std::size_t ell = 0; ell < w.size(); ++ell) {
    const int v = type_vertex_index(w, ell);
    switch (w.at(ell)) {
      case Letter::Zero:
        break;
      case Letter::One:
        out.graph.add_edge(v, out.type_vertex);
        break;
      case Letter::Two:
        out.graph.add_edge(v, v + 1);
        out.graph.add_edge(v, out.type_vertex);
        out.graph.add_edge(v + 1, out.type_vertex);
        break;
    }
  }
  return out;
}

}  // namespace diarykit
