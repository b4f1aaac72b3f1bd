#include "gibbsfactor/matrix.hpp"

#include <cmath>

#include "gibbsfactor/error.hpp"

namespace gf {

template <class T>
WeightMatrices<T> weight_matrices(const FactorSystem& fs, const TwoBlockPotential& f) {
  auto prof = settingc_profile(fs);
  if (!prof.valid) {
    std::string why;
    for (const auto& s : prof.failures) why += (why.empty() ? "" : "; ") + s;
    throw Error(Errc::setting_c_violation, why);
  }
  WeightMatrices<T> wm;
  wm.full = f.weight_matrix<T>();
  for (int b1 = 1; b1 <= 2; ++b1)
    for (int b2 = 1; b2 <= 2; ++b2) {
      Matrix<T> m(3, 3);
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          if (fs.image(i) == b1 && fs.image(j) == b2) m(i - 1, j - 1) = wm.full(i - 1, j - 1);
      wm.block[b1 - 1][b2 - 1] = m;
    }
  wm.sub22 = Matrix<T>(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) wm.sub22(i, j) = wm.full(i + 1, j + 1);
  wm.z = wm.full(0, 1);
  wm.w = wm.full(0, 2);
  wm.xbar = wm.full(1, 0);
  wm.ybar = wm.full(2, 0);
  return wm;
}

template <class T>
BlockProduct<T> block_product(const WeightMatrices<T>& wm, const Word& y) {
  if (y.size() < 2) throw Error(Errc::insufficient_depth, "block product needs a word of length >= 2");
  BlockProduct<T> out;
  out.product = wm.of(symbol_at(y, 0), symbol_at(y, 1));
  for (std::size_t i = 1; i + 1 < y.size(); ++i) out.product = out.product * wm.of(symbol_at(y, i), symbol_at(y, i + 1));
  out.entry_sum = out.product.entry_sum();
  return out;
}

template WeightMatrices<double> weight_matrices<double>(const FactorSystem&, const TwoBlockPotential&);
template WeightMatrices<Rational> weight_matrices<Rational>(const FactorSystem&, const TwoBlockPotential&);
template BlockProduct<double> block_product<double>(const WeightMatrices<double>&, const Word&);
template BlockProduct<Rational> block_product<Rational>(const WeightMatrices<Rational>&, const Word&);

const char* jordan_case_name(JordanCase c) {
  switch (c) {
    case JordanCase::distinct_diagonal: return "distinct-diagonal";
    case JordanCase::jordan_block: return "jordan-block";
    case JordanCase::scalar_diagonal: return "scalar-diagonal";
    case JordanCase::antidiagonal: return "antidiagonal";
  }
  return "?";
}

Matrix<double> Jordan2x2Report::jordan_form() const {
  Matrix<double> j(2, 2);
  j(0, 0) = alpha;
  j(1, 1) = beta;
  if (kind == JordanCase::jordan_block) j(0, 1) = 1;
  return j;
}

Matrix<double> Jordan2x2Report::basis() const {
  Matrix<double> p(2, 2);
  p(0, 0) = a;
  p(0, 1) = b;
  p(1, 0) = c;
  p(1, 1) = d;
  return p;
}

Matrix<double> Jordan2x2Report::reconstruct() const {
  Matrix<double> inv(2, 2);
  double dt = det();
  inv(0, 0) = d / dt;
  inv(0, 1) = -b / dt;
  inv(1, 0) = -c / dt;
  inv(1, 1) = a / dt;
  return basis() * jordan_form() * inv;
}

namespace {

void eigenvector(double p, double q, double r, double s, double lambda, double tol, double& v0, double& v1) {
  if (std::fabs(q) > tol) {
    v0 = q;
    v1 = lambda - p;
  } else if (std::fabs(r) > tol) {
    v0 = lambda - s;
    v1 = r;
  } else if (std::fabs(lambda - p) <= std::fabs(lambda - s)) {
    v0 = 1;
    v1 = 0;
  } else {
    v0 = 0;
    v1 = 1;
  }
}

Jordan2x2Report fill(JordanCase kind, const Matrix<double>& m, double tol) {
  double p = m(0, 0), q = m(0, 1), r = m(1, 0), s = m(1, 1);
  Jordan2x2Report rep;
  rep.kind = kind;
  switch (kind) {
    case JordanCase::antidiagonal: {
      rep.a1 = q;
      rep.a2 = r;
      rep.alpha = std::sqrt(q * r);
      rep.beta = -rep.alpha;
      rep.a = std::sqrt(q);
      rep.b = std::sqrt(q);
      rep.c = std::sqrt(r);
      rep.d = -std::sqrt(r);
      break;
    }
    case JordanCase::scalar_diagonal: {
      rep.alpha = rep.beta = (p + s) / 2;
      break;
    }
    case JordanCase::jordan_block: {
      double alpha = (p + s) / 2;
      rep.alpha = rep.beta = alpha;
      // P = (v1 v2) with (M - alpha) v2 = v1
      if (std::fabs(q) > tol || std::fabs(s - alpha) > tol) {
        rep.a = q;
        rep.c = s - alpha;
        rep.b = 0;
        rep.d = 1;
      } else {
        rep.a = p - alpha;
        rep.c = r;
        rep.b = 1;
        rep.d = 0;
      }
      break;
    }
    case JordanCase::distinct_diagonal: {
      double disc = (p - s) * (p - s) + 4 * q * r;
      double root = std::sqrt(std::max(disc, 0.0));
      rep.alpha = (p + s + root) / 2;
      rep.beta = (p + s - root) / 2;
      eigenvector(p, q, r, s, rep.alpha, tol, rep.a, rep.c);
      eigenvector(p, q, r, s, rep.beta, tol, rep.b, rep.d);
      break;
    }
  }
  return rep;
}

}  // namespace

Jordan2x2Report jordan2x2(const Matrix<double>& m, double tol) {
  if (m.rows != 2 || m.cols != 2) throw Error(Errc::bad_dimension, "jordan2x2 needs a 2x2 matrix");
  double p = m(0, 0), q = m(0, 1), r = m(1, 0), s = m(1, 1);
  double scale = std::max({std::fabs(p), std::fabs(q), std::fabs(r), std::fabs(s)});
  if (scale == 0) throw Error(Errc::zero_matrix, "submatrix is zero");
  double t = tol * scale;
  double disc = (p - s) * (p - s) + 4 * q * r;
  JordanCase kind;
  bool ambiguous = false;
  if (std::fabs(p) <= t && std::fabs(s) <= t && q > t && r > t) {
    kind = JordanCase::antidiagonal;
    ambiguous = (p != 0 || s != 0);
  } else if (std::fabs(disc) <= tol * scale * scale) {
    bool scalar = std::fabs(q) <= t && std::fabs(r) <= t;
    kind = scalar ? JordanCase::scalar_diagonal : JordanCase::jordan_block;
    ambiguous = disc != 0 || (scalar && (q != 0 || r != 0));
  } else {
    kind = JordanCase::distinct_diagonal;
    ambiguous = std::fabs(disc) <= 1e3 * tol * scale * scale;
  }
  auto rep = fill(kind, m, t);
  rep.ambiguous = ambiguous;
  if (ambiguous) rep.warning = "numerically ambiguous case: degeneracy decided at tolerance " + format_value(tol);
  return rep;
}

Jordan2x2Report jordan2x2(const Matrix<Rational>& m) {
  if (m.rows != 2 || m.cols != 2) throw Error(Errc::bad_dimension, "jordan2x2 needs a 2x2 matrix");
  const Rational &p = m(0, 0), &q = m(0, 1), &r = m(1, 0), &s = m(1, 1);
  if (sgn(p) == 0 && sgn(q) == 0 && sgn(r) == 0 && sgn(s) == 0) throw Error(Errc::zero_matrix, "submatrix is zero");
  Rational disc = (p - s) * (p - s) + 4 * q * r;
  JordanCase kind;
  if (sgn(p) == 0 && sgn(s) == 0 && sgn(q) > 0 && sgn(r) > 0)
    kind = JordanCase::antidiagonal;
  else if (sgn(disc) == 0)
    kind = (sgn(q) == 0 && sgn(r) == 0) ? JordanCase::scalar_diagonal : JordanCase::jordan_block;
  else
    kind = JordanCase::distinct_diagonal;
  auto rep = fill(kind, convert<double>(m), 0.0);
  rep.exact_test = true;
  return rep;
}

const char* pattern_name(Pattern p) {
  switch (p) {
    case Pattern::run: return "2^(n+2)";
    case Pattern::one_run: return "12^(n+2)";
    case Pattern::run_one: return "2^(n+2)1";
    case Pattern::one_run_one: return "12^(n+2)1";
  }
  return "?";
}

Word pattern_word(Pattern p, int n) {
  Word run = repeat(2, n + 2);
  switch (p) {
    case Pattern::run: return run;
    case Pattern::one_run: return "1" + run;
    case Pattern::run_one: return run + "1";
    case Pattern::one_run_one: return "1" + run + "1";
  }
  return run;
}

namespace {

struct Ends {
  double l0, l1, r0, r1;
};

Ends ends(const WeightMatrices<double>& wm, Pattern p) {
  bool left_one = p == Pattern::one_run || p == Pattern::one_run_one;
  bool right_one = p == Pattern::run_one || p == Pattern::one_run_one;
  return {left_one ? wm.z : 1.0, left_one ? wm.w : 1.0, right_one ? wm.xbar : 1.0, right_one ? wm.ybar : 1.0};
}

// l^T M^m r for the antidiagonal matrix (0 a1; a2 0)
double antidiagonal_power_sum(const Jordan2x2Report& rep, const Ends& e, int m) {
  double base = std::pow(rep.a1 * rep.a2, m / 2);
  if (m % 2 == 0) return base * (e.l0 * e.r0 + e.l1 * e.r1);
  return base * (e.l0 * rep.a1 * e.r1 + e.l1 * rep.a2 * e.r0);
}

}  // namespace

double closed_form(const Jordan2x2Report& rep, const WeightMatrices<double>& wm, Pattern p, int n) {
  if (n < 0) throw Error(Errc::insufficient_depth, "closed form index must be >= 0");
  {
    Matrix<double> back = rep.kind == JordanCase::antidiagonal ? Matrix<double>(2, 2) : rep.reconstruct();
    if (rep.kind == JordanCase::antidiagonal) {
      back(0, 1) = rep.a1;
      back(1, 0) = rep.a2;
    }
    double scale = 0, err = 0;
    for (int i = 0; i < 4; ++i) {
      scale = std::max(scale, std::fabs(wm.sub22.data[i]));
      err = std::max(err, std::fabs(back.data[i] - wm.sub22.data[i]));
    }
    if (err > 1e-8 * std::max(1.0, scale))
      throw Error(Errc::case_mismatch, std::string("report (") + jordan_case_name(rep.kind) + ") does not describe the submatrix");
  }
  if (rep.kind == JordanCase::antidiagonal) return antidiagonal_power_sum(rep, ends(wm, p), n + 1);

  const double a = rep.a, b = rep.b, c = rep.c, d = rep.d;
  const double z = wm.z, w = wm.w, x = wm.xbar, y = wm.ybar;
  const double det = a * d - b * c;
  const double al1 = std::pow(rep.alpha, n + 1), al0 = std::pow(rep.alpha, n), be1 = std::pow(rep.beta, n + 1);
  const double k = n + 1;
  if (rep.kind == JordanCase::jordan_block) {
    switch (p) {
      case Pattern::run: return (2 * det * al1 + k * (a * a - c * c) * al0) / det;
      case Pattern::one_run: return (det * (z + w) * al1 + k * (a * z + c * w) * (a - c) * al0) / det;
      case Pattern::run_one: return (det * (x + y) * al1 + k * (a + c) * (-c * x + a * y) * al0) / det;
      case Pattern::one_run_one: return (det * (x * z + y * w) * al1 + k * al0 * (w * c + a * z) * (-c * x + a * y)) / det;
    }
  }
  switch (p) {
    case Pattern::run: return ((a + c) * (d - b) * al1 + (a - c) * (d + b) * be1) / det;
    case Pattern::one_run: return (al1 * (d - b) * (a * z + c * w) + be1 * (a - c) * (b * z + d * w)) / det;
    case Pattern::run_one: return ((d * x - b * y) * (a + c) * al1 + (a * y - c * x) * (b + d) * be1) / det;
    case Pattern::one_run_one: return ((a * z + c * w) * (d * x - b * y) * al1 + (a * y - c * x) * (b * z + d * w) * be1) / det;
  }
  return 0;
}

namespace {

// Coefficients of l^T P J^{n+1} P^{-1} r: lead (alpha^{n+1}), second (beta^{n+1}), linear ((n+1) alpha^n).
struct Coeffs {
  double lead, second, linear;
};

Coeffs coefficients(const Jordan2x2Report& rep, const Ends& e) {
  double L1 = e.l0 * rep.a + e.l1 * rep.c;
  double L2 = e.l0 * rep.b + e.l1 * rep.d;
  double R1 = rep.d * e.r0 - rep.b * e.r1;
  double R2 = -rep.c * e.r0 + rep.a * e.r1;
  double det = rep.det();
  if (rep.kind == JordanCase::jordan_block) return {(L1 * R1 + L2 * R2) / det, 0.0, L1 * R2 / det};
  return {L1 * R1 / det, L2 * R2 / det, 0.0};
}

bool negligible(double v, double scale) { return std::fabs(v) <= 1e-10 * std::max(1.0, scale); }

const char* factor_text(Pattern p, bool jordan) {
  if (jordan) {
    switch (p) {
      case Pattern::run: return "(a^2-c^2)";
      case Pattern::one_run: return "(az+cw)(a-c)";
      case Pattern::run_one: return "(a+c)(-c*xbar+a*ybar)";
      case Pattern::one_run_one: return "(wc+az)(-c*xbar+a*ybar)";
    }
  }
  switch (p) {
    case Pattern::run: return "(a+c)(d-b)";
    case Pattern::one_run: return "(d-b)(az+cw)";
    case Pattern::run_one: return "(d*xbar-b*ybar)(a+c)";
    case Pattern::one_run_one: return "(az+cw)(d*xbar-b*ybar)";
  }
  return "?";
}

Growth growth(const Jordan2x2Report& rep, const WeightMatrices<double>& wm, Pattern p) {
  Coeffs k = coefficients(rep, ends(wm, p));
  double scale = std::fabs(k.lead) + std::fabs(k.second) + std::fabs(k.linear);
  Growth g;
  std::string f = factor_text(p, rep.kind == JordanCase::jordan_block);
  switch (rep.kind) {
    case JordanCase::jordan_block:
      if (!negligible(k.linear, scale)) {
        g = {rep.alpha, 1, k.linear / rep.alpha, "jordan-block, " + f + " != 0"};
      } else {
        g = {rep.alpha, 0, k.lead, "jordan-block, " + f + " = 0"};
      }
      break;
    case JordanCase::scalar_diagonal:
      g = {rep.alpha, 0, k.lead + k.second, "scalar-diagonal, alpha = beta"};
      break;
    case JordanCase::distinct_diagonal:
      if (!negligible(k.lead, scale)) {
        g = {rep.alpha, 0, k.lead, "distinct-diagonal, " + f + " != 0"};
      } else {
        g = {rep.beta, 0, k.second, "distinct-diagonal, " + f + " = 0"};
      }
      break;
    case JordanCase::antidiagonal:
      break;
  }
  return g;
}

LimitValue growth_rate_limit(const Growth& g) {
  if (g.rate <= 0) return {std::nullopt, g.rule + ", leading eigenvalue not positive"};
  return {std::log(g.rate), g.rule};
}

LimitValue growth_ratio_limit(const Growth& num, const Growth& den) {
  if (std::fabs(num.rate - den.rate) > 1e-12 * std::max(1.0, std::fabs(den.rate)) || num.degree != den.degree)
    return {std::nullopt, "growth orders differ: " + num.rule + " / " + den.rule};
  double q = num.coef / den.coef;
  if (!(q > 0)) return {std::nullopt, "nonpositive limiting ratio: " + num.rule + " / " + den.rule};
  return {std::log(q), num.rule + " / " + den.rule};
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)}); }

LimitValue two_step_limit(double even, double odd, const std::string& what) {
  if (close(even, odd)) return {std::log(even), "antidiagonal, " + what + " subsequences agree"};
  return {std::nullopt, "antidiagonal, " + what + " subsequences differ (" + format_value(even) + " vs " +
                            format_value(odd) + ")"};
}

}  // namespace

RatioLimits ratio_limits(const Jordan2x2Report& rep, const WeightMatrices<double>& wm, std::optional<double> f11) {
  RatioLimits out;
  out.block21 = {std::log(wm.xbar + wm.ybar), "log(xbar + ybar)"};
  if (f11)
    out.ones = {*f11, "f[11]"};
  else
    out.ones = {std::nullopt, "vacuous: 11 is not a Y-block"};

  if (rep.kind == JordanCase::antidiagonal) {
    auto s = [&](Pattern p, int m) { return antidiagonal_power_sum(rep, ends(wm, p), m); };
    // successive ratios of s(m) alternate between s(1)/s(0) and s(2)/s(1)
    out.two_inf = two_step_limit(s(Pattern::run, 1) / s(Pattern::run, 0), s(Pattern::run, 2) / s(Pattern::run, 1), "run ratio");
    out.run_one_tail =
        two_step_limit(s(Pattern::run_one, 1) / s(Pattern::run_one, 0), s(Pattern::run_one, 2) / s(Pattern::run_one, 1), "tail ratio");
    out.one_two_inf =
        two_step_limit(s(Pattern::one_run, 0) / s(Pattern::run, 0), s(Pattern::one_run, 1) / s(Pattern::run, 1), "12^n/2^n");
    double even = s(Pattern::one_run_one, 0) / s(Pattern::run_one, 0);
    double odd = s(Pattern::one_run_one, 1) / s(Pattern::run_one, 1);
    out.one_run_one_even = std::log(even);
    out.one_run_one_odd = std::log(odd);
    out.one_run_one_tail = two_step_limit(even, odd, "12^n1/2^n1");
    return out;
  }
  Growth run = growth(rep, wm, Pattern::run);
  Growth one_run = growth(rep, wm, Pattern::one_run);
  Growth run_one = growth(rep, wm, Pattern::run_one);
  Growth one_run_one = growth(rep, wm, Pattern::one_run_one);
  out.two_inf = growth_rate_limit(run);
  out.run_one_tail = growth_rate_limit(run_one);
  out.one_two_inf = growth_ratio_limit(one_run, run);
  out.one_run_one_tail = growth_ratio_limit(one_run_one, run_one);
  return out;
}

}  // namespace gf
