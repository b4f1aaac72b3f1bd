#pragma once

#include <optional>
#include <vector>

#include "gibbsfactor/scalar.hpp"
#include "gibbsfactor/sft.hpp"

namespace gf {

// Potential depending on two coordinates, f(x) = f[x1 x2].
// In exact mode the weights e^{f[ij]} are given directly as positive rationals.
class TwoBlockPotential {
 public:
  TwoBlockPotential() = default;

  static TwoBlockPotential zero(const TransitionSystem& sys, Mode mode);
  // values[i-1][j-1] = f[ij]; entries on forbidden blocks are ignored.
  static TwoBlockPotential from_values(const TransitionSystem& sys, const std::vector<std::vector<double>>& values);
  // weights[i-1][j-1] = e^{f[ij]} > 0 on allowed blocks.
  static TwoBlockPotential from_weights(const TransitionSystem& sys, const std::vector<std::vector<Rational>>& weights);

  Mode mode() const { return exact_ ? Mode::exact : Mode::binary64; }
  int size() const { return k_; }
  double value(int i, int j) const { return f_[idx(i, j)]; }
  const Rational& exact_weight(int i, int j) const;

  template <class T>
  T weight(int i, int j) const;

  // Weight matrix M(i,j) = e^{f[ij]} a_ij.
  template <class T>
  Matrix<T> weight_matrix() const;

  // Extremes of f over allowed blocks.
  double min_value() const;
  double max_value() const;

  const TransitionSystem& system() const { return sys_; }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i - 1) * k_ + (j - 1); }

  TransitionSystem sys_;
  int k_ = 0;
  std::vector<double> f_;
  std::optional<std::vector<Rational>> exact_;
};

template <>
double TwoBlockPotential::weight<double>(int i, int j) const;
template <>
Rational TwoBlockPotential::weight<Rational>(int i, int j) const;

}  // namespace gf
