#include <cstdlib>
#include <random>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "gibbsfactor/error.hpp"
#include "gibbsfactor/pressure.hpp"
#include "oracles.hpp"
#include "systems.hpp"

using namespace gf;

namespace {

Rational H(const FactorSystem& fs, const Word& y) { return h_value<Rational>(fs, sys::zero_exact(fs), y); }

// log f_n(y) = phi summed over the n - 1 inner blocks
LogTable additive_table(const TransitionSystem& y, const std::vector<std::vector<double>>& phi, int depth) {
  LogTable t;
  t.depth = depth;
  for (int n = 1; n <= depth; ++n) {
    t.words.push_back(words(y, n));
    std::vector<double> v;
    for (const auto& w : t.words.back()) {
      double s = 0;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) s += phi[symbol_at(w, i) - 1][symbol_at(w, i + 1) - 1];
      v.push_back(s);
    }
    t.values.push_back(v);
  }
  return t;
}

}  // namespace

TEST_CASE("h on SYS-A is constant 2") {
  auto a = sys::sys_a();
  for (int n = 1; n <= 30; ++n) {
    CHECK(H(a, repeat(2, n)) == 2);
    CHECK(H(a, repeat(2, n) + "1") == 2);
    CHECK(H(a, "1" + repeat(2, n)) == 2);
    CHECK(H(a, "1" + repeat(2, n) + "1") == 2);
  }
}

TEST_CASE("h on SYS-B grows linearly") {
  auto b = sys::sys_b();
  for (int n = 1; n <= 30; ++n) {
    CHECK(H(b, repeat(2, n)) == n + 1);
    CHECK(H(b, repeat(2, n) + "1") == n + 1);
    CHECK(H(b, "1" + repeat(2, n)) == n);
    CHECK(H(b, "1" + repeat(2, n) + "1") == n);
  }
  // length one: fiber size weighted by the best continuation
  CHECK(H(b, "1") == 1);
  CHECK(H(b, "2") == 2);
}

TEST_CASE("h and g against preimage enumeration") {
  std::mt19937 rng(23);
  for (int i = 0; i < 24; ++i) {
    auto s = gen::random_settingc(rng, static_cast<JordanCase>(i % 4), true);
    auto f = gen::potential(s, true);
    auto w = sys::weights_of(s.x_rows, s.exact);
    auto h = h_table<Rational>(s.fs, f, 7);
    auto g = g_table<Rational>(s.fs, f, 7);
    for (int n = 1; n <= 7; ++n)
      for (std::size_t j = 0; j < h.level_words(n).size(); ++j) {
        const auto& y = h.level_words(n)[j];
        CHECK(h.level_values(n)[j] == oracle::h<Rational>(s.x_rows, w, gen::map(), y));
        CHECK(g.level_values(n)[j] == oracle::g<Rational>(s.x_rows, w, gen::map(), y));
      }
    auto href = h_table_reference<Rational>(s.fs, f, 7);
    CHECK(href.values == h.values);
    CHECK(g_table_reference<Rational>(s.fs, f, 7).values == g.values);
  }
}

TEST_CASE("parallel and serial tables agree in binary64") {
  std::mt19937 rng(29);
  for (int i = 0; i < 12; ++i) {
    auto s = gen::random_settingc(rng, static_cast<JordanCase>(i % 4));
    auto f = gen::potential(s, false);
    auto a = h_table<double>(s.fs, f, 10);
    auto b = h_table_reference<double>(s.fs, f, 10);
    for (int n = 1; n <= 10; ++n)
      for (std::size_t j = 0; j < a.level_values(n).size(); ++j)
        CHECK(a.level_values(n)[j] == doctest::Approx(b.level_values(n)[j]).epsilon(1e-12));
  }
}

TEST_CASE("g equals h for the zero potential") {
  auto b = sys::sys_b();
  auto f = sys::zero_exact(b);
  CHECK(g_table<Rational>(b, f, 10).values == h_table<Rational>(b, f, 10).values);
}

TEST_CASE("g is sandwiched by h") {
  std::mt19937 rng(31);
  for (int i = 0; i < 50; ++i) {
    auto s = gen::random_settingc(rng, static_cast<JordanCase>(i % 4));
    auto f = gen::potential(s, false);
    auto h = log_table(h_table<double>(s.fs, f, 8));
    auto g = log_table(g_table<double>(s.fs, f, 8));
    for (int n = 2; n <= 8; ++n)
      for (std::size_t j = 0; j < h.level_values(n).size(); ++j) {
        double d = g.level_values(n)[j] - h.level_values(n)[j];
        CHECK(d >= f.min_value() - 1e-9);
        CHECK(d <= f.max_value() + 1e-9);
      }
  }
}

TEST_CASE("additivity of the fixtures") {
  auto a = additivity_report(log_table(h_table<Rational>(sys::sys_a(), sys::zero_exact(sys::sys_a()), 20)), 20);
  CHECK(a.classification == Additivity::almost_additive);
  CHECK(a.max_defect <= std::log(2.0) + 1e-12);

  auto b = additivity_report(log_table(h_table<Rational>(sys::sys_b(), sys::zero_exact(sys::sys_b()), 24)), 24);
  CHECK(b.classification == Additivity::weakly_almost_additive);
  for (int n = 1; n < 24; ++n)
    for (int m = 1; n + m <= 24; ++m) CHECK(b.defect[n][m] <= std::log(3.0 * (std::min(n, m) + 1)) + 1e-12);
  CHECK(b.schedule_factor <= 3.0);
  CHECK(b.bound(5) == doctest::Approx(std::log(b.schedule_factor * 6)));
}

TEST_CASE("additive sequences are almost additive") {
  auto y = build_system(2, sys::full2);
  std::vector<std::vector<double>> phi{{0.3, -0.2}, {0.1, 0.7}};
  auto t = additive_table(y, phi, 12);
  auto r = additivity_report(t, 12);
  CHECK(r.classification == Additivity::almost_additive);
  CHECK(r.max_defect == doctest::Approx(0.7));
  CHECK(defect_table(t, 12) == defect_table_reference(t, 12));
  CHECK(sys::code_of([&] { additivity_report(t, 13); }) == Errc::insufficient_depth);
}

TEST_CASE("defect table parallel matches serial") {
  auto t = log_table(h_table<Rational>(sys::sys_b(), sys::zero_exact(sys::sys_b()), 14));
  CHECK(defect_table(t, 14) == defect_table_reference(t, 14));
}

TEST_CASE("budget overflow") {
  setenv("GIBBSFACTOR_BUDGET", "100", 1);
  auto code = sys::code_of([] { h_table<double>(sys::sys_b(), TwoBlockPotential::zero(sys::sys_b().domain, Mode::binary64), 12); });
  unsetenv("GIBBSFACTOR_BUDGET");
  CHECK(code == Errc::depth_overflow);
  CHECK(table_budget() == 1e7);
}

TEST_CASE("go1 on an additive sequence is constant") {
  auto a = sys::sys_a();
  std::vector<std::vector<double>> v{{0, 0.5, -1}, {0.25, 2, 0}, {1.5, 0, 0.75}};
  auto phi = TwoBlockPotential::from_values(a.domain, v);
  auto r = go1_fhat(additive_view(phi), "1231321231", 2, 9);
  CHECK(r.flag == Convergence::converged);
  REQUIRE(r.stable_from);
  CHECK(*r.stable_from == 2);
  for (double x : r.value) CHECK(x == doctest::Approx(0.5));
  CHECK(sys::code_of([&] { go1_fhat(additive_view(phi), "123", 2, 9); }) == Errc::insufficient_depth);
}

TEST_CASE("go1 on the h tables") {
  auto b = sys::sys_b();
  auto hb = log_table(h_table<Rational>(b, sys::zero_exact(b), 14));
  // 2^k 1 ...: the ratio is (k+1)/k once the whole run is visible
  auto r = go1_fhat(table_view(hb), "2221" + repeat(2, 10), 5, 14);
  CHECK(r.flag == Convergence::converged);
  CHECK(r.value.back() == doctest::Approx(std::log(4.0 / 3.0)));

  auto d = sys::sys_d();
  auto hd = log_table(h_table<Rational>(d, sys::sys_d_weights(d), 14));
  auto o = go1_fhat(table_view(hd), repeat(2, 14), 6, 14);
  CHECK(o.flag == Convergence::oscillating);
}

TEST_CASE("cando1 on Markov measures") {
  auto y = build_system(2, sys::golden);
  // P(1,2) = 1, P(2,1) = 1/3, P(2,2) = 2/3, stationary (1/4, 3/4)
  auto mass = [](std::string_view w) {
    Rational m = w[0] == '1' ? Rational(1, 4) : Rational(3, 4);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == '1') m *= w[i + 1] == '2' ? 1 : 0;
      else m *= w[i + 1] == '1' ? Rational(1, 3) : Rational(2, 3);
    }
    return m;
  };
  auto r = cando1_r<Rational>(mass, 0.0, "2212221222", 1, 10);
  CHECK(r.flag == Convergence::converged);
  CHECK(*r.stable_from == 2);
  CHECK(r.value[0] == doctest::Approx(std::log(0.75)));
  auto same = cando1_r<Rational>(mass, 0.0, repeat(2, 10), 2, 10);
  CHECK(same.flag == Convergence::converged);
  CHECK(*same.stable_from == 2);
  CHECK(same.value.back() == doctest::Approx(std::log(2.0 / 3.0)));

  auto bern = [](std::string_view w) { return Rational(1, 1 << w.size()); };
  auto z = cando1_r<Rational>(bern, std::log(2.0), "1211221", 1, 7);
  for (double v : z.value) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));

  auto none = [](std::string_view) { return Rational(0); };
  CHECK(sys::code_of([&] { cando1_r<Rational>(none, 0.0, "12", 1, 2); }) == Errc::zero_mass);
  (void)y;
}

TEST_CASE("sandwich check against an additive potential") {
  auto a = sys::sys_a();
  // on SYS-A every 2-run doubles h, which phi[21] = log 2 tracks up to the last run
  auto h = log_table(h_table<Rational>(a, sys::zero_exact(a), 10));
  std::vector<std::vector<double>> v{{0, 0}, {std::log(2.0), 0}};
  auto phi = TwoBlockPotential::from_values(a.codomain, v);
  auto pass = sandwich_check(h, potential_birkhoff(phi), [](int) { return std::log(2.0); }, 10);
  CHECK(pass.pass);
  CHECK(pass.worst == doctest::Approx(std::log(2.0)));
  auto fail = sandwich_check(h, potential_birkhoff(phi), [](int) { return 0.5; }, 10);
  CHECK(!fail.pass);
  CHECK(fail.worst_excess == doctest::Approx(std::log(2.0) - 0.5));
}

TEST_CASE("sequence csv") {
  auto b = sys::sys_b();
  auto h = h_table<Rational>(b, sys::zero_exact(b), 3);
  std::ostringstream os;
  write_sequence_csv(os, h);
  CHECK(os.str() ==
        "word,length,value\n1,1,1\n2,1,2\n12,2,1\n21,2,2\n22,2,3\n121,3,1\n122,3,2\n212,3,2\n221,3,3\n222,3,4\n");
}
