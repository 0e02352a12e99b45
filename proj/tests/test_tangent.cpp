#include <gtest/gtest.h>

#include <vector>

#include "diarykit/tangent.hpp"

using namespace diarykit;

namespace {

// Taylor coefficients a_m = tan^(m)(0) from tan' = 1 + tan^2:
// a_1 = 1 and a_{m+1} = sum_k C(m,k) a_k a_{m-k} for m >= 1.
std::vector<BigInt> derivatives_at_zero(int count) {
  std::vector<BigInt> a(count + 1);
  if (count >= 1) a[1] = 1;
  for (int m = 1; m < count; ++m) {
    BigInt binom = 1, sum = 0;
    for (int k = 0; k <= m; ++k) {
      sum += binom * a[k] * a[m - k];
      binom = binom * (m - k) / (k + 1);
    }
    a[m + 1] = sum;
  }
  return a;
}

}  // namespace

TEST(Tangent, FirstValues) {
  const std::vector<const char*> expected{"1",          "2",           "16",           "272",
                                          "7936",       "353792",      "22368256",     "1903757312",
                                          "209865342976", "29088885112832"};
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(to_decimal(tangent_number(n)), expected[n - 1]) << "n=" << n;
}

TEST(Tangent, AgreesWithDerivativeRecurrence) {
  const auto a = derivatives_at_zero(2 * 25);
  const auto table = tangent_table(25);
  ASSERT_EQ(table.size(), 25u);
  for (int n = 1; n <= 25; ++n) {
    EXPECT_EQ(tangent_number(n), a[2 * n - 1]) << "n=" << n;
    EXPECT_EQ(table[n - 1], a[2 * n - 1]);
    EXPECT_EQ(a[2 * n], 0);
  }
}

TEST(Tangent, RejectsNonPositive) {
  EXPECT_THROW(tangent_number(0), Error);
  EXPECT_THROW(tangent_number(-3), Error);
}
