#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gibbsfactor/factor.hpp"
#include "gibbsfactor/potential.hpp"

namespace gf {

// Weight matrix of a 3-to-2 factor map split by image blocks.
template <class T>
struct WeightMatrices {
  Matrix<T> full;              // M(i,j) = e^{f[ij]} a_ij
  Matrix<T> block[2][2];       // block[b1-1][b2-1](i,j) = M(i,j) when pi(i)=b1, pi(j)=b2
  Matrix<T> sub22;             // M restricted to the fiber {2,3} of 2
  T z{}, w{};                  // M(1,2), M(1,3)
  T xbar{}, ybar{};            // M(2,1), M(3,1)

  const Matrix<T>& of(int b1, int b2) const { return block[b1 - 1][b2 - 1]; }
};

// Requires a valid 3-symbol profile; throws SettingCViolation.
template <class T>
WeightMatrices<T> weight_matrices(const FactorSystem& fs, const TwoBlockPotential& f);

template <class T>
struct BlockProduct {
  Matrix<T> product;
  T entry_sum{};
};

// M_{b1 b2} M_{b2 b3} ... M_{b_{n-1} b_n} for |y| >= 2.
template <class T>
BlockProduct<T> block_product(const WeightMatrices<T>& wm, const Word& y);

enum class JordanCase { distinct_diagonal, jordan_block, scalar_diagonal, antidiagonal };
const char* jordan_case_name(JordanCase c);

// sub22 = P J P^{-1} with P = (a b; c d).
struct Jordan2x2Report {
  JordanCase kind = JordanCase::distinct_diagonal;
  double alpha = 0, beta = 0;  // |alpha| >= |beta|; beta = alpha for the repeated cases
  double a = 1, b = 0, c = 0, d = 1;
  double a1 = 0, a2 = 0;       // off-diagonal entries in the antidiagonal case
  bool ambiguous = false;
  std::string warning;
  bool exact_test = false;     // degeneracies decided on exact rationals

  Matrix<double> jordan_form() const;
  Matrix<double> basis() const;
  Matrix<double> reconstruct() const;  // P J P^{-1}
  double det() const { return a * d - b * c; }
};

// Throws ZeroMatrix.
Jordan2x2Report jordan2x2(const Matrix<double>& m, double tol = 1e-10);
Jordan2x2Report jordan2x2(const Matrix<Rational>& m);

// 2^{n+2}, 12^{n+2}, 2^{n+2}1, 12^{n+2}1.
enum class Pattern { run, one_run, run_one, one_run_one };
const char* pattern_name(Pattern p);
Word pattern_word(Pattern p, int n);

// Closed-form entry sum for the pattern word; antidiagonal matrices use their 2-periodic powers.
double closed_form(const Jordan2x2Report& rep, const WeightMatrices<double>& wm, Pattern p, int n);

// Leading behaviour coef * n^degree * rate^n of a pattern sequence in the closed form.
struct Growth {
  double rate = 0;
  int degree = 0;
  double coef = 0;
  std::string rule;
};

struct LimitValue {
  std::optional<double> value;  // natural log of the limiting ratio; empty when the limit does not exist
  std::string rule;
};

// The class values of the piecewise potential that are given by limits, plus log h[21] and f[11].
struct RatioLimits {
  LimitValue block21;        // log h[21]
  LimitValue run_one_tail;   // lim log(h[2^{n+1}1] / h[2^n 1])
  LimitValue two_inf;        // lim log(h[2^{n+1}] / h[2^n])
  LimitValue ones;           // f[11], vacuous on the golden-mean shift
  LimitValue one_run_one_tail;  // lim log(h[12^n 1] / h[2^n 1])
  LimitValue one_two_inf;    // lim log(h[12^n] / h[2^n])
  // subsequence limits, only for the antidiagonal case
  std::optional<double> one_run_one_even, one_run_one_odd;
};

RatioLimits ratio_limits(const Jordan2x2Report& rep, const WeightMatrices<double>& wm, std::optional<double> f11);

}  // namespace gf
