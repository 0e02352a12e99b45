#pragma once

// Odd tangent numbers 1, 2, 16, 272, 7936, ... (OEIS A000182): the big Ramsey
// degrees of n-chains in the rationals, counted up to automorphism.

#include <vector>

#include "diarykit/bigint.hpp"
#include "diarykit/errors.hpp"

namespace diarykit {

// Rows of the Seidel boustrophedon triangle up to row m; entry (m, m) is the
// Euler zigzag number E_m.  Row k is built by running sums over row k - 1
// read backwards.
inline std::vector<BigInt> zigzag_numbers(int m) {
  std::vector<BigInt> out{BigInt(1)};
  std::vector<BigInt> row{BigInt(1)};
  for (int k = 1; k <= m; ++k) {
    std::vector<BigInt> next(static_cast<std::size_t>(k) + 1);
    next[0] = 0;
    for (int j = 1; j <= k; ++j) next[j] = next[j - 1] + row[k - j];
    row = std::move(next);
    out.push_back(row.back());
  }
  return out;
}

// The n-th odd tangent number, tan^(2n-1)(0).
inline BigInt tangent_number(int n) {
  if (n < 1) throw Error("tangent numbers are indexed from 1");
  return zigzag_numbers(2 * n - 1).back();
}

inline std::vector<BigInt> tangent_table(int count) {
  if (count < 1) throw Error("tangent numbers are indexed from 1");
  const auto zigzag = zigzag_numbers(2 * count - 1);
  std::vector<BigInt> out;
  for (int n = 1; n <= count; ++n) out.push_back(zigzag[2 * n - 1]);
  return out;
}

}  // namespace diarykit
