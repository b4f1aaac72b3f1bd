#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gibbsfactor/error.hpp"
#include "gibbsfactor/factor.hpp"
#include "gibbsfactor/matrix.hpp"
#include "gibbsfactor/potential.hpp"

namespace gen {

struct SettingC {
  gf::FactorSystem fs;
  std::vector<std::vector<int>> x_rows, y_rows;
  std::vector<std::vector<double>> f;  // f[i][j] = log weight
  std::vector<std::vector<gf::Rational>> exact;  // rational weights, filled when rational_weights was requested
  gf::JordanCase target;
};

inline const std::vector<int>& map() {
  static const std::vector<int> m{1, 2, 2};
  return m;
}

// Random 3-to-2 system whose submatrix on {2,3} has the requested Jordan shape; weights in (0, 2].
inline SettingC random_settingc(std::mt19937& rng, gf::JordanCase target, bool rational_weights = false) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> num(1, 20);
  std::uniform_real_distribution<double> real(0.05, 2.0);
  for (;;) {
    std::vector<std::vector<int>> a(3, std::vector<int>(3, 0));
    bool full = bit(rng);
    a[0][0] = full ? 1 : 0;
    a[0][1] = bit(rng);
    a[0][2] = bit(rng);
    a[1][0] = bit(rng);
    a[2][0] = bit(rng);
    switch (target) {
      case gf::JordanCase::distinct_diagonal:
        for (int i = 1; i < 3; ++i)
          for (int j = 1; j < 3; ++j) a[i][j] = bit(rng);
        break;
      case gf::JordanCase::jordan_block:
        a[1][1] = a[2][2] = 1;
        (bit(rng) ? a[1][2] : a[2][1]) = 1;
        break;
      case gf::JordanCase::scalar_diagonal:
        a[1][1] = a[2][2] = 1;
        break;
      case gf::JordanCase::antidiagonal:
        a[1][2] = a[2][1] = 1;
        break;
    }
    std::vector<std::vector<int>> y = full ? std::vector<std::vector<int>>{{1, 1}, {1, 1}}
                                           : std::vector<std::vector<int>>{{0, 1}, {1, 1}};
    try {
      auto xs = gf::build_system(3, a);
      auto ys = gf::build_system(2, y);
      SettingC s{gf::build_factor(xs, ys, map(), 6), a, y, {}, {}, target};
      if (!gf::settingc_profile(s.fs).valid) continue;
      s.f.assign(3, std::vector<double>(3, 0.0));
      s.exact.assign(3, std::vector<gf::Rational>(3, gf::Rational(1)));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (!a[i][j]) continue;
          if (rational_weights) {
            s.exact[i][j] = gf::Rational(num(rng), 10);
            s.exact[i][j].canonicalize();
            s.f[i][j] = std::log(s.exact[i][j].get_d());
          } else {
            s.f[i][j] = std::log(real(rng));
          }
        }
      // the repeated-root shapes need equal diagonal weights
      if (target == gf::JordanCase::jordan_block || target == gf::JordanCase::scalar_diagonal) {
        s.f[2][2] = s.f[1][1];
        s.exact[2][2] = s.exact[1][1];
      }
      if (target == gf::JordanCase::distinct_diagonal) {
        // reject accidental repeated roots and antidiagonal shapes
        auto f = gf::TwoBlockPotential::from_values(s.fs.domain, s.f);
        auto wm = gf::weight_matrices<double>(s.fs, f);
        double p = wm.sub22(0, 0), q = wm.sub22(0, 1), r = wm.sub22(1, 0), t = wm.sub22(1, 1);
        double disc = (p - t) * (p - t) + 4 * q * r;
        if (disc < 1e-3 || (p == 0 && t == 0)) continue;
      }
      return s;
    } catch (const gf::Error&) {
      continue;
    }
  }
}

inline gf::TwoBlockPotential potential(const SettingC& s, bool exact) {
  return exact ? gf::TwoBlockPotential::from_weights(s.fs.domain, s.exact)
               : gf::TwoBlockPotential::from_values(s.fs.domain, s.f);
}

}  // namespace gen
