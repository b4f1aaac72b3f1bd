#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "gibbsfactor/error.hpp"
#include "gibbsfactor/measures.hpp"
#include "oracles.hpp"
#include "systems.hpp"

using namespace gf;

namespace {

Matrix<Rational> uniform3() {
  Matrix<Rational> p(3, 3);
  for (auto& v : p.data) v = Rational(1, 3);
  return p;
}

oracle::Table<double> table_of(const Matrix<double>& m) {
  oracle::Table<double> t(m.rows, std::vector<double>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t[i][j] = m(i, j);
  return t;
}

}  // namespace

TEST_CASE("markov measure validation") {
  auto full = build_system(3, sys::full3);
  auto mu = markov_measure<Rational>(full, uniform3());
  CHECK(mu.stationary == std::vector<Rational>(3, Rational(1, 3)));
  CHECK(mu.cylinder("123") == Rational(1, 27));

  auto g = build_system(2, sys::golden);
  Matrix<Rational> p(2, 2);
  p(0, 1) = 1;
  p(1, 0) = Rational(1, 2);
  p(1, 1) = Rational(1, 2);
  auto m = markov_measure<Rational>(g, p);
  CHECK(m.stationary == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
  CHECK(m.cylinder("11") == 0);

  Matrix<Rational> bad = p;
  bad(0, 0) = Rational(1, 2);
  bad(0, 1) = Rational(1, 2);
  CHECK(sys::code_of([&] { markov_measure<Rational>(g, bad); }) == Errc::support_mismatch);
  Matrix<Rational> heavy = p;
  heavy(1, 1) = 1;
  CHECK(sys::code_of([&] { markov_measure<Rational>(g, heavy); }) == Errc::not_stochastic);

  auto md = markov_measure<double>(g, convert<double>(p));
  CHECK(md.stationary[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("stationary vectors against Gaussian elimination") {
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int t = 0; t < 20; ++t) {
    auto s = gen::random_settingc(rng, static_cast<JordanCase>(t % 4));
    const auto& x = s.fs.domain;
    Matrix<double> p(3, 3);
    for (int i = 0; i < 3; ++i) {
      double row = 0;
      for (int j = 0; j < 3; ++j)
        if (x.allowed(i + 1, j + 1)) row += (p(i, j) = u(rng));
      for (int j = 0; j < 3; ++j) p(i, j) /= row;
    }
    auto mu = markov_measure<double>(x, p);
    auto ref = oracle::stationary(table_of(p));
    for (int i = 0; i < 3; ++i) CHECK(mu.stationary[i] == doctest::Approx(ref[i]).epsilon(1e-10));
  }
}

TEST_CASE("Parry measures") {
  auto b = parry_measure<Rational>(sys::sys_b().domain);
  REQUIRE(b.perron.exact_lambda);
  CHECK(*b.perron.exact_lambda == 2);
  CHECK(b.pressure == doctest::Approx(std::log(2.0)));
  CHECK(b.measure.stationary == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)});
  CHECK(b.measure.stochastic(1, 0) == Rational(1, 4));
  CHECK(b.measure.stochastic(2, 2) == Rational(1, 2));

  auto a = parry_measure<Rational>(sys::sys_a().domain);
  CHECK(a.measure.stationary == std::vector<Rational>(3, Rational(1, 3)));

  // golden mean: the root is irrational
  auto g = build_system(2, sys::golden);
  CHECK(sys::code_of([&] { parry_measure<Rational>(g); }) == Errc::not_rational);
  auto gd = parry_measure<double>(g);
  CHECK(gd.pressure == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)));

  CHECK(sys::code_of([] { parry_measure<double>(build_system(2, {{1, 1}, {0, 1}})); }) == Errc::not_irreducible);
}

TEST_CASE("equilibrium measure of a potential") {
  auto x = build_system(2, sys::full2);
  // f[ij] = log q_j gives the Bernoulli(q) measure with zero pressure
  std::vector<std::vector<Rational>> w{{Rational(1, 3), Rational(2, 3)}, {Rational(1, 3), Rational(2, 3)}};
  auto e = gibbs_from_potential<Rational>(x, TwoBlockPotential::from_weights(x, w));
  CHECK(*e.perron.exact_lambda == 1);
  CHECK(e.measure.cylinder("122") == Rational(4, 27));

  // zero potential reproduces the Parry measure
  auto b = sys::sys_b();
  auto z = gibbs_from_potential<Rational>(b.domain, sys::zero_exact(b));
  CHECK(z.measure.stochastic == parry_measure<Rational>(b.domain).measure.stochastic);

  // the result is Gibbs for its potential with a flat defect band once every (first, last) pair occurs
  auto d = sys::sys_d();
  auto fd = sys::sys_d_weights(d);
  auto ed = gibbs_from_potential<double>(d.domain, fd);
  auto diag = check_gibbs_on_domain(ed.measure, fd, ed.pressure, 12);
  CHECK(diag.kind == GibbsKind::gibbs);
  CHECK(diag.variation(3, 12) < 1e-9);

  // log mu[w] + nP - S_n f depends only on the first and last symbols of w
  std::mt19937 rng(71);
  for (int t = 0; t < 12; ++t) {
    auto s = gen::random_settingc(rng, static_cast<JordanCase>(t % 4));
    auto f = gen::potential(s, false);
    auto eq = gibbs_from_potential<double>(s.fs.domain, f);
    std::map<std::pair<char, char>, double> seen;
    for (int n = 2; n <= 9; ++n)
      for (const auto& w : words(s.fs.domain, n)) {
        double sum = 0;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) sum += f.value(symbol_at(w, i), symbol_at(w, i + 1));
        double v = std::log(eq.measure.cylinder(w)) + n * eq.pressure - sum;
        auto [it, fresh] = seen.emplace(std::pair{w.front(), w.back()}, v);
        if (!fresh) CHECK(std::fabs(it->second - v) < 1e-9);
      }
  }
}

TEST_CASE("uniform Bernoulli pushforward") {
  auto fs = sys::full();
  auto mu = markov_measure<Rational>(fs.domain, uniform3());
  auto t = pushforward<Rational>(fs, mu, 8);
  for (int n = 1; n <= 8; ++n)
    for (std::size_t i = 0; i < t.level_words(n).size(); ++i) {
      const auto& y = t.level_words(n)[i];
      Rational expect = 1;
      for (char c : y) expect *= c == '1' ? Rational(1, 3) : Rational(2, 3);
      CHECK(t.level_values(n)[i] == expect);
    }
  CHECK(pushforward_reference<Rational>(fs, mu, 8).values == t.values);
}

TEST_CASE("pushforward against preimage enumeration") {
  for (auto* make : {&sys::sys_a, &sys::sys_b, &sys::sys_c}) {
    auto fs = make();
    auto e = parry_measure<Rational>(fs.domain);
    auto t = pushforward<Rational>(fs, e.measure, 8);
    oracle::Table<Rational> P(3, std::vector<Rational>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) P[i][j] = e.measure.stochastic(i, j);
    for (int n = 1; n <= 8; ++n) {
      Rational total = 0;
      for (std::size_t i = 0; i < t.level_words(n).size(); ++i) {
        const auto& y = t.level_words(n)[i];
        CHECK(t.level_values(n)[i] == oracle::pushforward(fs.domain.rows(), e.measure.stationary, P, fs.symbol_map, y));
        total += t.level_values(n)[i];
        // consistency: the mass of y is the mass of its one-symbol extensions
        if (n < 8) {
          Rational ext = 0;
          for (char c : std::string("12"))
            if (const Rational* m = t.find(y + c)) ext += *m;
          CHECK(ext == t.level_values(n)[i]);
        }
      }
      CHECK(total == 1);
    }
    CHECK(pushforward_reference<Rational>(fs, e.measure, 8).values == t.values);
  }
}

TEST_CASE("SYS-B pushforward of Parry on runs of 2") {
  auto fs = sys::sys_b();
  auto e = parry_measure<Rational>(fs.domain);
  auto t = pushforward<Rational>(fs, e.measure, 12);
  // preimages 2^j 3^{n-j}: 2^n has mass 2^{-n}, the other n have 2^{-(n+1)} each
  for (int n = 1; n <= 12; ++n) CHECK(t.at(repeat(2, n)) == sys::q(n + 2, 1L << (n + 1)));
}

TEST_CASE("pushforward diagnostics") {
  auto a = sys::sys_a();
  auto fa = sys::zero_exact(a);
  auto e = parry_measure<Rational>(a.domain);
  auto masses = log_table(pushforward<Rational>(a, e.measure, 14));
  auto vs_h = gibbs_diagnostics_vs_sequence(masses, log_table(h_table<Rational>(a, fa, 14)), e.pressure, 14);
  CHECK(vs_h.kind == GibbsKind::gibbs);
  auto pp = build_hhat(a, fa).potential;
  auto vs_p = gibbs_diagnostics_vs_potential(masses, pp, e.pressure, 14);
  CHECK(vs_p.kind == GibbsKind::gibbs);
  CHECK(vs_p.variation(7, 14) < 1e-9);

  // the SYS-B band against the potential widens like log n
  auto b = sys::sys_b();
  auto eb = parry_measure<Rational>(b.domain);
  auto mb = log_table(pushforward<Rational>(b, eb.measure, 14));
  auto bp = build_hhat(b, sys::zero_exact(b)).potential;
  auto vb = gibbs_diagnostics_vs_potential(mb, bp, eb.pressure, 14);
  CHECK(vb.max_abs[14] > vb.max_abs[7]);
}

TEST_CASE("defect against the potential follows from the two bounds") {
  for (auto* make : {&sys::sys_a, &sys::sys_b, &sys::sys_c}) {
    auto fs = make();
    auto f = sys::zero_exact(fs);
    auto e = parry_measure<Rational>(fs.domain);
    auto masses = log_table(pushforward<Rational>(fs, e.measure, 12));
    auto h = log_table(h_table<Rational>(fs, f, 12));
    auto add = additivity_report(h, 12);
    auto pp = build_hhat(fs, f).potential;
    auto vs_h = gibbs_diagnostics_vs_sequence(masses, h, e.pressure, 12);
    auto vs_p = gibbs_diagnostics_vs_potential(masses, pp, e.pressure, 12);
    for (int k = 1; k <= 12; ++k) CHECK(vs_p.max_abs[k] <= vs_h.max_abs[k] + add.bound(k) + 1e-9);
  }
}

TEST_CASE("h and g diagnostics differ by at most the oscillation of f") {
  std::mt19937 rng(73);
  for (int t = 0; t < 10; ++t) {
    auto s = gen::random_settingc(rng, static_cast<JordanCase>(t % 4));
    auto f = gen::potential(s, false);
    auto eq = gibbs_from_potential<double>(s.fs.domain, f);
    auto masses = log_table(pushforward<double>(s.fs, eq.measure, 9));
    auto h = log_table(h_table<double>(s.fs, f, 9));
    auto g = log_table(g_table<double>(s.fs, f, 9));
    double osc = f.max_value() - f.min_value();
    for (int n = 2; n <= 9; ++n)
      for (std::size_t i = 0; i < h.level_values(n).size(); ++i)
        CHECK(std::fabs(h.level_values(n)[i] - g.level_values(n)[i]) <= osc + 1e-9);
    auto dh = gibbs_diagnostics_vs_sequence(masses, h, eq.pressure, 9);
    auto dg = gibbs_diagnostics_vs_sequence(masses, g, eq.pressure, 9);
    for (int n = 2; n <= 9; ++n) CHECK(std::fabs(dh.max_defect[n] - dg.max_defect[n]) <= osc + 1e-9);
  }
}

TEST_CASE("cando1 stabilizes on a Markov measure") {
  auto b = sys::sys_b();
  auto e = parry_measure<Rational>(b.domain);
  std::function<Rational(std::string_view)> mass = [&](std::string_view w) { return e.measure.cylinder(w); };
  auto r = cando1_r<Rational>(mass, e.pressure, "2312223312", 2, 10);
  CHECK(r.flag == Convergence::converged);
  CHECK(*r.stable_from == 2);
}

TEST_CASE("csv output") {
  auto fs = sys::full();
  auto mu = markov_measure<Rational>(fs.domain, uniform3());
  std::ostringstream os;
  write_measure_csv(os, pushforward<Rational>(fs, mu, 1));
  CHECK(os.str() == "word,length,mass\n1,1,1/3\n2,1,2/3\n");

  GibbsDiagnostics d;
  d.depth = 1;
  d.max_defect = {0, 0.5};
  d.min_defect = {0, -0.25};
  std::ostringstream od;
  write_defects_csv(od, d);
  CHECK(od.str() == "n,max_defect,min_defect\n1,0.5,-0.25\n");
}
