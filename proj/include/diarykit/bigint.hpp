#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace diarykit {

// Exact counts.  Anticlique diary counts pass 2^64 at five vertices.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& value) { return value.str(); }

}  // namespace diarykit
