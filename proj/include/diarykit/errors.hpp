#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diarykit {

// Base of every error this library throws on bad input or exhausted limits.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph spec, graph6 text, diary JSON or word string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Operation asked for something beyond a hard size limit (e.g. brute-force
// canonical forms for more than 10 vertices).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A search ran into its depth or node cap.  Carries how far it got.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, unsigned long long nodes_explored, std::string partial_count)
      : Error(what), nodes_explored_(nodes_explored), partial_count_(std::move(partial_count)) {}

  unsigned long long nodes_explored() const noexcept { return nodes_explored_; }
  const std::string& partial_count() const noexcept { return partial_count_; }

 private:
  unsigned long long nodes_explored_;
  std::string partial_count_;
};

}  // namespace diarykit
