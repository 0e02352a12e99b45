// Prints the diary count and big Ramsey degree of every K4-free graph on at
// most three vertices, one isomorphism class per line.

#include <iostream>
#include <map>

#include "diarykit/diarykit.hpp"

int main() {
  using namespace diarykit;
  for (int n = 1; n <= 3; ++n) {
    std::map<std::vector<std::uint8_t>, SmallGraph> classes;
    const int pairs = n * (n - 1) / 2;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
      SmallGraph g(n);
      int bit = 0;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
          if ((mask >> bit) & 1) g.add_edge(u, v);
      classes.emplace(canonical_form(g), g);
    }
    for (const auto& [form, g] : classes) {
      const auto r = count_diaries(g);
      std::cout << to_graph6(g) << "\tdiaries " << to_decimal(r.diary_count) << "\tdegree " << to_decimal(r.degree)
                << "\n";
    }
  }
}
