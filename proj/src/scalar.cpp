#include "gibbsfactor/scalar.hpp"

#include <cstdio>
#include <cstdlib>

#include "gibbsfactor/error.hpp"

namespace gf {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::zero_row_or_column: return "ZeroRowOrColumn";
    case Errc::bad_dimension: return "BadDimension";
    case Errc::not_in_language: return "NotInLanguage";
    case Errc::not_shift_commuting: return "NotShiftCommuting";
    case Errc::not_surjective: return "NotSurjective";
    case Errc::empty_fiber: return "EmptyFiber";
    case Errc::depth_overflow: return "DepthOverflow";
    case Errc::insufficient_depth: return "InsufficientDepth";
    case Errc::zero_mass: return "ZeroMass";
    case Errc::setting_c_violation: return "SettingCViolation";
    case Errc::zero_matrix: return "ZeroMatrix";
    case Errc::case_mismatch: return "CaseMismatch";
    case Errc::undefined_branch: return "UndefinedBranch";
    case Errc::undefined_at_point: return "UndefinedAtPoint";
    case Errc::support_mismatch: return "SupportMismatch";
    case Errc::not_stochastic: return "NotStochastic";
    case Errc::not_irreducible: return "NotIrreducible";
    case Errc::not_rational: return "NotRational";
    case Errc::config: return "ConfigError";
  }
  return "Error";
}

namespace {

double log_of_integer(const mpz_class& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

double log_of(const Rational& v) {
  if (sgn(v) <= 0) return sgn(v) == 0 ? -INFINITY : NAN;
  return log_of_integer(v.get_num()) - log_of_integer(v.get_den());
}

std::string format_value(const Rational& v) { return v.get_str(); }

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::config, "empty number");
  Rational out;
  auto slash = s.find('/');
  auto dot = s.find('.');
  try {
    if (slash != std::string::npos) {
      out = Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
      if (sgn(out.get_den()) == 0) throw Error(Errc::config, "zero denominator in '" + s + "'");
    } else if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+") throw Error(Errc::config, "bad number '" + s + "'");
      mpz_class den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      out = Rational(mpz_class(digits), den);
    } else {
      out = Rational(mpz_class(s));
    }
  } catch (const std::invalid_argument&) {
    throw Error(Errc::config, "bad number '" + s + "'");
  }
  out.canonicalize();
  return out;
}

Rational rational_approximation(double v, long max_den) {
  // continued fraction convergents
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    mpz_class ai(a);
    mpz_class h2 = ai * h1 + h0;
    mpz_class k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (k1 == 0) return Rational(mpz_class(static_cast<long>(std::llround(v))));
  Rational r(h1, k1);
  r.canonicalize();
  return r;
}

namespace {

// Row reduces in place; returns pivot column per row (-1 for zero rows).
std::vector<int> rref(Matrix<Rational>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (sgn(m(i, c)) != 0) { p = i; break; }
    if (p < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m(r, j), m(p, j));
    Rational inv = 1 / m(r, c);
    for (int j = 0; j < m.cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (int j = 0; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<Rational> right_null_vector(const Matrix<Rational>& a) {
  Matrix<Rational> m = a;
  auto pivots = rref(m);
  if (static_cast<int>(pivots.size()) != a.cols - 1) return {};
  int free_col = 0;
  for (int c = 0; c < a.cols; ++c) {
    bool is_pivot = false;
    for (int p : pivots) is_pivot = is_pivot || p == c;
    if (!is_pivot) { free_col = c; break; }
  }
  std::vector<Rational> x(a.cols, Rational(0));
  x[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m(static_cast<int>(r), free_col);
  return x;
}

std::vector<Rational> left_null_vector(const Matrix<Rational>& a) {
  Matrix<Rational> t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return right_null_vector(t);
}

}  // namespace gf
