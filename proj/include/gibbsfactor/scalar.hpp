#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace gf {

using Rational = mpq_class;

enum class Mode { exact, binary64 };

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

inline double log_of(double v) { return std::log(v); }
// Does not overflow for numerators and denominators far outside the double range.
double log_of(const Rational& v);

template <class T>
double log_ratio(const T& num, const T& den) {
  return log_of(num) - log_of(den);
}

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const Rational& v) { return sgn(v) == 0; }

// Exact fraction ("3/2", "7") or 17 significant digits.
std::string format_value(const Rational& v);
std::string format_value(double v);

// Accepts "p/q", integers and finite decimals ("0.25").
Rational parse_rational(std::string_view text);

// Best rational approximation with denominator at most max_den.
Rational rational_approximation(double v, long max_den);

// Dense row-major matrix; the systems handled here are tiny.
template <class T>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, T(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  T& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  T entry_sum() const {
    T s(0);
    for (const auto& v : data) s += v;
    return s;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (is_zero(a(i, k))) continue;
      for (int j = 0; j < b.cols; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class To, class From>
Matrix<To> convert(const Matrix<From>& m) {
  Matrix<To> out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    if constexpr (std::is_same_v<To, double>)
      out.data[i] = to_double(m.data[i]);
    else
      out.data[i] = To(m.data[i]);
  }
  return out;
}

// Nonzero solution x of x*A = 0 when the left null space is one dimensional, else empty.
std::vector<Rational> left_null_vector(const Matrix<Rational>& a);
std::vector<Rational> right_null_vector(const Matrix<Rational>& a);

}  // namespace gf
