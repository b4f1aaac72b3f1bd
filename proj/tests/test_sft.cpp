#include <random>

#include "doctest.h"
#include "gibbsfactor/error.hpp"
#include "gibbsfactor/sft.hpp"
#include "oracles.hpp"
#include "systems.hpp"

using namespace gf;

namespace {

// Random 0/1 matrix with no zero rows or columns.
std::vector<std::vector<int>> random_rows(std::mt19937& rng, int k) {
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    std::vector<std::vector<int>> a(k, std::vector<int>(k));
    for (auto& r : a)
      for (auto& v : r) v = coin(rng);
    bool ok = true;
    for (int i = 0; i < k; ++i) {
      int rs = 0, cs = 0;
      for (int j = 0; j < k; ++j) rs += a[i][j], cs += a[j][i];
      ok = ok && rs && cs;
    }
    if (ok) return a;
  }
}

}  // namespace

TEST_CASE("golden mean shift") {
  auto s = build_system(2, sys::golden);
  CHECK(s.size() == 2);
  CHECK(!s.allowed(1, 1));
  CHECK(s.allowed(2, 1));
  CHECK(words(s, 3) == std::vector<Word>{"121", "122", "212", "221", "222"});
  CHECK(count_words(s, 10) == 144);
  CHECK(s.allowed_word("2122"));
  CHECK(!s.allowed_word("2112"));
}

TEST_CASE("construction errors") {
  CHECK(sys::code_of([] { build_system(2, {{1, 1}}); }) == Errc::bad_dimension);
  CHECK(sys::code_of([] { build_system(0, {}); }) == Errc::bad_dimension);
  CHECK(sys::code_of([] { build_system(2, {{1, 2}, {1, 1}}); }) == Errc::bad_dimension);
  CHECK(sys::code_of([] { build_system(2, {{0, 0}, {1, 1}}); }) == Errc::zero_row_or_column);
  CHECK(sys::code_of([] { build_system(2, {{1, 0}, {1, 0}}); }) == Errc::zero_row_or_column);
}

TEST_CASE("structure of small shifts") {
  auto g = structure_report(build_system(2, sys::golden));
  CHECK(g.irreducible);
  REQUIRE(g.mixing_power);
  CHECK(*g.mixing_power == 2);

  // period 2: irreducible, never mixing
  auto cyc = structure_report(build_system(2, {{0, 1}, {1, 0}}));
  CHECK(cyc.irreducible);
  CHECK(!cyc.mixing());

  auto red = structure_report(build_system(2, {{1, 1}, {0, 1}}));
  CHECK(!red.irreducible);
  CHECK(!red.mixing());

  auto full = structure_report(build_system(3, sys::full3));
  CHECK(*full.mixing_power == 1);
}

TEST_CASE("words match brute force enumeration") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 1 + trial % 4;
    auto a = random_rows(rng, k);
    auto s = build_system(k, a);
    for (int n = 1; n <= 6; ++n) {
      auto w = words(s, n);
      CHECK(w == oracle::all_words(a, n));
      CHECK(count_words(s, n) == static_cast<double>(w.size()));
    }
    // |B_{n+1}| is the sum of out-degrees of final symbols
    auto b4 = words(s, 4);
    double next = 0;
    for (const auto& w : b4) next += s.out_degree(symbol_at(w, 3));
    CHECK(count_words(s, 5) == next);
  }
}

TEST_CASE("mixing implies irreducible") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int k = 1 + trial % 5;
    auto s = build_system(k, random_rows(rng, k));
    auto r = structure_report(s, 20);
    if (r.mixing()) CHECK(r.irreducible);
    if (r.mixing_power) {
      // every pair is connected by a word of length mixing_power + 1
      auto ws = words(s, *r.mixing_power + 1);
      for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
          bool found = false;
          for (const auto& w : ws) found = found || (symbol_at(w, 0) == i && symbol_at(w, w.size() - 1) == j);
          CHECK(found);
        }
    }
  }
}
