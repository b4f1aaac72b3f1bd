#include "gibbsfactor/potential.hpp"

#include <algorithm>
#include <limits>

#include "gibbsfactor/error.hpp"

namespace gf {

TwoBlockPotential TwoBlockPotential::zero(const TransitionSystem& sys, Mode mode) {
  TwoBlockPotential p;
  p.sys_ = sys;
  p.k_ = sys.size();
  p.f_.assign(static_cast<std::size_t>(p.k_) * p.k_, 0.0);
  if (mode == Mode::exact) p.exact_ = std::vector<Rational>(p.f_.size(), Rational(1));
  return p;
}

TwoBlockPotential TwoBlockPotential::from_values(const TransitionSystem& sys,
                                                 const std::vector<std::vector<double>>& values) {
  auto p = zero(sys, Mode::binary64);
  if (static_cast<int>(values.size()) != p.k_) throw Error(Errc::bad_dimension, "potential table has wrong row count");
  for (int i = 1; i <= p.k_; ++i) {
    if (static_cast<int>(values[i - 1].size()) != p.k_) throw Error(Errc::bad_dimension, "potential row has wrong length");
    for (int j = 1; j <= p.k_; ++j)
      if (sys.allowed(i, j)) p.f_[p.idx(i, j)] = values[i - 1][j - 1];
  }
  return p;
}

TwoBlockPotential TwoBlockPotential::from_weights(const TransitionSystem& sys,
                                                  const std::vector<std::vector<Rational>>& weights) {
  auto p = zero(sys, Mode::exact);
  if (static_cast<int>(weights.size()) != p.k_) throw Error(Errc::bad_dimension, "weight table has wrong row count");
  for (int i = 1; i <= p.k_; ++i) {
    if (static_cast<int>(weights[i - 1].size()) != p.k_) throw Error(Errc::bad_dimension, "weight row has wrong length");
    for (int j = 1; j <= p.k_; ++j) {
      if (!sys.allowed(i, j)) continue;
      Rational w = weights[i - 1][j - 1];
      w.canonicalize();
      if (sgn(w) <= 0)
        throw Error(Errc::bad_dimension, "weight on block " + Word{symbol_char(i), symbol_char(j)} + " must be positive");
      (*p.exact_)[p.idx(i, j)] = w;
      p.f_[p.idx(i, j)] = log_of(w);
    }
  }
  return p;
}

const Rational& TwoBlockPotential::exact_weight(int i, int j) const {
  if (!exact_) throw Error(Errc::not_rational, "potential has no exact weights");
  return (*exact_)[idx(i, j)];
}

template <>
double TwoBlockPotential::weight<double>(int i, int j) const {
  if (exact_) return (*exact_)[idx(i, j)].get_d();
  return std::exp(f_[idx(i, j)]);
}

template <>
Rational TwoBlockPotential::weight<Rational>(int i, int j) const {
  return exact_weight(i, j);
}

template <class T>
Matrix<T> TwoBlockPotential::weight_matrix() const {
  Matrix<T> m(k_, k_);
  for (int i = 1; i <= k_; ++i)
    for (int j : sys_.successors(i)) m(i - 1, j - 1) = weight<T>(i, j);
  return m;
}

template Matrix<double> TwoBlockPotential::weight_matrix<double>() const;
template Matrix<Rational> TwoBlockPotential::weight_matrix<Rational>() const;

double TwoBlockPotential::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= k_; ++i)
    for (int j : sys_.successors(i)) m = std::min(m, value(i, j));
  return m;
}

double TwoBlockPotential::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= k_; ++i)
    for (int j : sys_.successors(i)) m = std::max(m, value(i, j));
  return m;
}

}  // namespace gf
