#include "gibbsfactor/hhat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gibbsfactor/error.hpp"

namespace gf {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::hhat: return "hhat";
    case Variant::hhat1: return "hhat1";
    case Variant::hhat2: return "hhat2";
  }
  return "?";
}

const char* point_kind_name(PointKind k) {
  switch (k) {
    case PointKind::block21: return "[21]";
    case PointKind::run_one: return "[2^n1]";
    case PointKind::two_inf: return "2^inf";
    case PointKind::ones: return "[1^n2]";
    case PointKind::one_inf: return "1^inf";
    case PointKind::one_run_one: return "[12^n1]";
    case PointKind::one_two_inf: return "12^inf";
  }
  return "?";
}

const char* continuity_name(Continuity c) {
  switch (c) {
    case Continuity::continuous: return "continuous";
    case Continuity::discontinuous: return "discontinuous";
    case Continuity::unknown: return "unknown";
  }
  return "?";
}

const char* phd1_case_name(Phd1Case c) {
  switch (c) {
    case Phd1Case::ii_continuous: return "(ii)-continuous";
    case Phd1Case::iii_symmetric_antidiagonal: return "(iii)-symmetric-antidiagonal";
    case Phd1Case::antidiagonal_measurable: return "antidiagonal-measurable";
    case Phd1Case::open_antidiagonal_asymmetric: return "open-antidiagonal-asymmetric";
    case Phd1Case::generic_continuous: return "generic-continuous";
  }
  return "?";
}

namespace {

std::size_t leading(const Word& w, std::size_t from, char c) {
  std::size_t i = from;
  while (i < w.size() && w[i] == c) ++i;
  return i - from;
}

[[noreturn]] void undecided(const Word& w) {
  throw Error(Errc::undefined_at_point, "class of '" + w + "' depends on its continuation");
}

}  // namespace

PointClass point_class(const Word& w, Continuation cont) {
  if (w.empty()) throw Error(Errc::undefined_at_point, "empty word");
  for (char ch : w)
    if (ch != '1' && ch != '2') throw Error(Errc::not_in_language, "'" + w + "' is not a word over {1,2}");
  if (w[0] == '2') {
    int m = static_cast<int>(leading(w, 0, '2'));
    if (static_cast<std::size_t>(m) == w.size()) {
      if (cont == Continuation::twos) return {PointKind::two_inf, 0};
      if (cont == Continuation::none) undecided(w);
    }
    return m == 1 ? PointClass{PointKind::block21, 1} : PointClass{PointKind::run_one, m};
  }
  if (w.size() == 1) {
    if (cont == Continuation::ones) return {PointKind::one_inf, 0};
    if (cont == Continuation::twos) return {PointKind::one_two_inf, 0};
    undecided(w);
  }
  if (w[1] == '1') {
    int m = static_cast<int>(leading(w, 0, '1'));
    if (static_cast<std::size_t>(m) == w.size()) {
      if (cont == Continuation::ones) return {PointKind::one_inf, 0};
      if (cont == Continuation::none) undecided(w);
    }
    return {PointKind::ones, m};
  }
  int m = static_cast<int>(leading(w, 1, '2'));
  if (static_cast<std::size_t>(1 + m) == w.size()) {
    if (cont == Continuation::twos) return {PointKind::one_two_inf, 0};
    if (cont == Continuation::none) undecided(w);
  }
  return {PointKind::one_run_one, m};
}

namespace {

double need(const LimitValue& v, const char* where, Errc code = Errc::undefined_at_point) {
  if (!v.value) throw Error(code, std::string("value at ") + where + " is undefined (" + v.rule + ")");
  return *v.value;
}

// (h[...2^n 1], h[...2^{n-1} 1]) for the run ratio, or (h[1 2^n 1], h[2^n 1]).
template <class T>
std::pair<T, T> tail_pair(const WeightMatrices<T>& wm, bool leading_one, int n) {
  const Matrix<T>& s = wm.sub22;
  auto apply = [&](const std::vector<T>& u) {
    return std::vector<T>{s(0, 0) * u[0] + s(0, 1) * u[1], s(1, 0) * u[0] + s(1, 1) * u[1]};
  };
  auto normalize = [](std::vector<T>& u) {
    if constexpr (!is_exact_v<T>) {
      double m = std::max(std::fabs(u[0]), std::fabs(u[1]));
      if (m > 0) {
        u[0] /= m;
        u[1] /= m;
      }
    }
  };
  std::vector<T> u{wm.xbar, wm.ybar};
  if (leading_one) {
    for (int i = 1; i < n; ++i) {
      u = apply(u);
      normalize(u);
    }
    return {wm.z * u[0] + wm.w * u[1], u[0] + u[1]};
  }
  for (int i = 2; i < n; ++i) {
    u = apply(u);
    normalize(u);
  }
  auto v = apply(u);
  return {v[0] + v[1], u[0] + u[1]};
}

std::string log_text(const Rational& q) {
  if (q == 1) return "0";
  return "log(" + format_value(q) + ")";
}

// log of an exactly known ratio when the limit is a small rational, else the decimal value.
std::string limit_text(const LimitValue& v, Mode mode) {
  if (!v.value) return "undefined";
  if (mode == Mode::exact) {
    Rational q = rational_approximation(std::exp(*v.value), 1000000);
    if (sgn(q) > 0 && std::fabs(log_of(q) - *v.value) < 1e-13) return log_text(q);
  }
  return format_value(*v.value);
}

bool same(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)}); }

}  // namespace

std::optional<Rational> PiecewisePotential::ratio(bool leading_one, int n) const {
  if (!wm_exact) return std::nullopt;
  auto [num, den] = tail_pair(*wm_exact, leading_one, n);
  return Rational(num / den);
}

double PiecewisePotential::generate_run_one(int n) const {
  if (n < 2) throw Error(Errc::insufficient_depth, "[2^n1] tail values start at n = 2");
  if (wm_exact) return log_of(*ratio(false, n));
  auto [num, den] = tail_pair(wm, false, n);
  return std::log(num / den);
}

double PiecewisePotential::generate_one_run_one(int n) const {
  if (n < 1) throw Error(Errc::insufficient_depth, "[12^n1] tail values start at n = 1");
  if (wm_exact) return log_of(*ratio(true, n));
  auto [num, den] = tail_pair(wm, true, n);
  return std::log(num / den);
}

double PiecewisePotential::run_one_value(int n) const {
  if (n >= 2 && n <= depth) return run_one_[n];
  return generate_run_one(n);
}

double PiecewisePotential::one_run_one_value(int n) const {
  if (n >= 1 && n <= depth) return one_run_one_[n];
  return generate_one_run_one(n);
}

std::optional<Rational> PiecewisePotential::run_one_ratio(int n) const {
  if (n >= 2 && n <= depth) return run_one_exact_[n];
  return ratio(false, n);
}

std::optional<Rational> PiecewisePotential::one_run_one_ratio(int n) const {
  if (n >= 1 && n <= depth) return one_run_one_exact_[n];
  return ratio(true, n);
}

double PiecewisePotential::eval(const PointClass& p) const {
  switch (p.kind) {
    case PointKind::block21: return *block21.value;
    case PointKind::run_one: return run_one_value(p.n);
    case PointKind::two_inf: return need(two_inf, "2^inf");
    case PointKind::ones:
    case PointKind::one_inf: return need(ones, "[1^n2] / 1^inf", Errc::undefined_branch);
    case PointKind::one_run_one: return one_run_one_value(p.n);
    case PointKind::one_two_inf: return need(one_two_inf, "12^inf");
  }
  return 0;
}

PiecewisePotential build_variant(const FactorSystem& fs, const TwoBlockPotential& f, Variant v, int depth) {
  PiecewisePotential pp;
  pp.variant = v;
  pp.mode = f.mode();
  pp.depth = std::max(depth, 2);
  pp.wm = weight_matrices<double>(fs, f);
  pp.y_type = settingc_profile(fs).y_type;
  if (pp.mode == Mode::exact) {
    pp.wm_exact = weight_matrices<Rational>(fs, f);
    pp.jordan = jordan2x2(pp.wm_exact->sub22);
  } else {
    pp.jordan = jordan2x2(pp.wm.sub22);
  }
  if (v == Variant::hhat1 && pp.jordan.kind != JordanCase::jordan_block && pp.jordan.kind != JordanCase::scalar_diagonal)
    throw Error(Errc::undefined_branch, std::string("hhat1 needs a jordan-block or scalar-diagonal submatrix, got ") +
                                            jordan_case_name(pp.jordan.kind));
  if (v == Variant::hhat2 && pp.jordan.kind != JordanCase::antidiagonal)
    throw Error(Errc::undefined_branch, std::string("hhat2 needs an antidiagonal submatrix, got ") +
                                            jordan_case_name(pp.jordan.kind));

  std::optional<double> f11;
  if (fs.codomain.allowed(1, 1)) f11 = f.value(1, 1);
  pp.limits = ratio_limits(pp.jordan, pp.wm, f11);
  pp.ones = pp.limits.ones;
  pp.block21 = pp.limits.block21;
  if (pp.wm_exact) pp.block21.value = log_of(Rational(pp.wm_exact->xbar + pp.wm_exact->ybar));
  pp.two_inf = pp.limits.two_inf;
  pp.one_two_inf = pp.limits.one_two_inf;
  pp.two_inf_text = limit_text(pp.two_inf, pp.mode);
  pp.one_two_inf_text = limit_text(pp.one_two_inf, pp.mode);

  if (v == Variant::hhat1) {
    if (pp.wm_exact) {
      const auto& e = *pp.wm_exact;
      Rational q = (e.xbar * e.z + e.ybar * e.w) / (e.xbar + e.ybar);
      pp.one_two_inf = {log_of(q), "override log((xbar z + ybar w)/(xbar + ybar))"};
      pp.one_two_inf_text = log_text(q);
    } else {
      const auto& e = pp.wm;
      pp.one_two_inf = {std::log((e.xbar * e.z + e.ybar * e.w) / (e.xbar + e.ybar)),
                        "override log((xbar z + ybar w)/(xbar + ybar))"};
      pp.one_two_inf_text = format_value(*pp.one_two_inf.value);
    }
  }
  if (v == Variant::hhat2) {
    std::string text;
    double value;
    if (pp.wm_exact) {
      Rational prod = pp.wm_exact->sub22(0, 1) * pp.wm_exact->sub22(1, 0);
      value = log_of(prod) / 2;
      text = prod == 1 ? "0" : "log(" + format_value(prod) + ")/2";
    } else {
      value = std::log(pp.jordan.a1 * pp.jordan.a2) / 2;
      text = format_value(value);
    }
    pp.two_inf = {value, "override log(a1 a2)/2"};
    pp.one_two_inf = {value, "override log(a1 a2)/2"};
    pp.two_inf_text = pp.one_two_inf_text = text;
  }

  pp.run_one_.assign(pp.depth + 1, 0.0);
  pp.one_run_one_.assign(pp.depth + 1, 0.0);
  pp.run_one_exact_.assign(pp.depth + 1, std::nullopt);
  pp.one_run_one_exact_.assign(pp.depth + 1, std::nullopt);
  for (int n = 1; n <= pp.depth; ++n) {
    if (n >= 2) {
      pp.run_one_[n] = pp.generate_run_one(n);
      pp.run_one_exact_[n] = pp.ratio(false, n);
    }
    pp.one_run_one_[n] = pp.generate_one_run_one(n);
    pp.one_run_one_exact_[n] = pp.ratio(true, n);
  }
  return pp;
}

ContinuityReport continuity_report(const PiecewisePotential& pp) {
  ContinuityReport r;
  auto judge = [&](const LimitValue& used, const LimitValue& nearby, const char* where) {
    if (!used.value) {
      r.notes.push_back(std::string("no value at ") + where + ": " + used.rule);
      return Continuity::discontinuous;
    }
    if (!nearby.value) {
      r.notes.push_back(std::string("neighbouring class values do not converge at ") + where + ": " + nearby.rule);
      return Continuity::discontinuous;
    }
    if (!same(*used.value, *nearby.value)) {
      r.notes.push_back(std::string("value at ") + where + " is " + format_value(*used.value) +
                        ", neighbouring classes tend to " + format_value(*nearby.value));
      return Continuity::discontinuous;
    }
    return Continuity::continuous;
  };
  r.at_two_inf = judge(pp.two_inf, pp.limits.run_one_tail, "2^inf");
  r.at_one_two_inf = judge(pp.one_two_inf, pp.limits.one_run_one_tail, "12^inf");
  r.elsewhere = Continuity::continuous;
  if (pp.jordan.kind == JordanCase::antidiagonal) {
    double lhs = pp.jordan.a2 * pp.wm.xbar * pp.wm.xbar;
    double rhs = pp.jordan.a1 * pp.wm.ybar * pp.wm.ybar;
    r.notes.push_back(std::string("a2 xbar^2 = a1 ybar^2 (coefficient read as a1): ") +
                      (same(lhs, rhs) ? "holds" : "fails"));
  }
  return r;
}

Phd1Classification classify_phd1(const FactorSystem& fs, const TwoBlockPotential& f) {
  Phd1Classification c;
  auto wm = weight_matrices<double>(fs, f);
  std::optional<WeightMatrices<Rational>> ex;
  if (f.mode() == Mode::exact) {
    ex = weight_matrices<Rational>(fs, f);
    c.jordan = jordan2x2(ex->sub22);
  } else {
    c.jordan = jordan2x2(wm.sub22);
  }
  const auto& j = c.jordan;
  c.conditions.push_back(std::string("M22 restricted to the fiber of 22 is ") + jordan_case_name(j.kind));
  if (j.ambiguous) c.conditions.push_back(j.warning);

  if (j.kind == JordanCase::antidiagonal) {
    c.conditions.push_back("a1 = " + format_value(j.a1) + ", a2 = " + format_value(j.a2));
    bool equal = ex ? ex->sub22(0, 1) == ex->sub22(1, 0) : same(j.a1, j.a2);
    if (!equal) {
      c.kind = Phd1Case::antidiagonal_measurable;
      c.variant = Variant::hhat2;
      c.conditions.push_back("a1 != a2");
      c.potential_regularity = "borel-measurable";
    } else {
      bool col = ex ? ex->xbar == ex->ybar : same(wm.xbar, wm.ybar);
      bool row = ex ? ex->z == ex->w : same(wm.z, wm.w);
      c.conditions.push_back(std::string("a1 = a2; xbar = ybar ") + (col ? "holds" : "fails") + "; z = w " +
                             (row ? "holds" : "fails"));
      if (col || row) {
        c.kind = Phd1Case::iii_symmetric_antidiagonal;
        c.variant = Variant::hhat;
        c.potential_regularity = "continuous";
      } else {
        c.kind = Phd1Case::open_antidiagonal_asymmetric;
        c.variant = Variant::hhat2;
        c.potential_regularity = "unknown, left open: existence of a continuous potential is not settled";
      }
    }
  } else {
    c.kind = Phd1Case::ii_continuous;
    c.potential_regularity = "continuous";
    c.variant = Variant::hhat;
    if (j.kind == JordanCase::scalar_diagonal) {
      c.variant = Variant::hhat1;
    } else if (j.kind == JordanCase::jordan_block) {
      double prod = (wm.w * j.c + j.a * wm.z) * (-j.c * wm.xbar + j.a * wm.ybar);
      bool vanishes;
      if (ex) {
        // v1 = (q, 0) when q > 0, else (0, r): the product is q^2 z ybar or -r^2 w xbar
        vanishes = sgn(ex->sub22(0, 1)) != 0 ? (sgn(ex->z) == 0 || sgn(ex->ybar) == 0)
                                             : (sgn(ex->w) == 0 || sgn(ex->xbar) == 0);
      } else {
        vanishes = std::fabs(prod) <= 1e-12 * std::max(1.0, std::fabs(prod));
      }
      c.conditions.push_back("(wc+az)(-c xbar+a ybar) = " + format_value(prod));
      if (vanishes) c.variant = Variant::hhat1;
    }
  }
  auto pp = build_variant(fs, f, c.variant, 2);
  c.continuity = continuity_report(pp);
  return c;
}

HhatBuild build_hhat(const FactorSystem& fs, const TwoBlockPotential& f, int depth, const AdditivityReport* additivity) {
  HhatBuild b;
  b.classification = classify_phd1(fs, f);
  if (additivity) b.classification.additivity = *additivity;
  b.potential = build_variant(fs, f, b.classification.variant, depth);
  b.classification.continuity = continuity_report(b.potential);
  return b;
}

Interval birkhoff_interval(const PiecewisePotential& pp, const Word& y) {
  const int n = static_cast<int>(y.size());
  if (n == 0) return {0, 0};
  int r = static_cast<int>(y.size() - y.find_last_not_of('2') - 1);
  if (y.find_last_not_of('2') == Word::npos) r = n;
  int run_start = n - r;
  bool one_before = r > 0 && run_start > 0;
  int resolved_end = r > 0 ? (one_before ? run_start - 1 : run_start) : n - 1;

  double exact = 0;
  for (int i = 0; i < resolved_end; ++i) {
    Word s = y.substr(static_cast<std::size_t>(i));
    if (s.find_first_not_of('1') == Word::npos)  // 1^m with m >= 2: f[11] whatever follows
      exact += pp.eval(PointClass{PointKind::ones, static_cast<int>(s.size())});
    else
      exact += pp.eval(point_class(s));
  }

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  auto take = [&](double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  const int top = std::max(pp.depth, r) + 2;
  if (r == 0) {
    // trailing 1: the next symbol is 1 (if allowed) or starts 2^L 1 / 2^inf
    if (pp.ones.value) take(*pp.ones.value);
    for (int L = 1; L <= top; ++L) take(pp.one_run_one_value(L));
    take(need(pp.one_two_inf, "12^inf"));
  } else {
    auto run_value = [&](int m) { return m == 1 ? *pp.block21.value : pp.run_one_value(m); };
    for (int L = r; L <= top; ++L) {
      double s = 0;
      for (int j = 0; j < r; ++j) s += run_value(L - j);
      if (one_before) s += pp.one_run_one_value(L);
      take(s);
    }
    double s = r * need(pp.two_inf, "2^inf");
    if (one_before) s += need(pp.one_two_inf, "12^inf");
    take(s);
  }
  return {exact + lo, exact + hi};
}

BirkhoffFn hhat_birkhoff(const PiecewisePotential& pp) {
  return [&pp](const Word& y) { return birkhoff_interval(pp, y); };
}

void write_hhat(std::ostream& os, const PiecewisePotential& pp, const Phd1Classification& cls, int listed_depth) {
  auto value_text = [&](std::optional<Rational> q, double v) { return q ? log_text(*q) : format_value(v); };
  os << "variant: " << variant_name(pp.variant) << "\n";
  os << "classification: " << phd1_case_name(cls.kind) << "\n";
  os << "potential: " << cls.potential_regularity << "\n";
  for (const auto& s : cls.conditions) os << "condition: " << s << "\n";
  os << "jordan: " << jordan_case_name(pp.jordan.kind) << " alpha=" << format_value(pp.jordan.alpha)
     << " beta=" << format_value(pp.jordan.beta) << "\n";
  os << "y-type: " << ytype_name(pp.y_type) << "\n";
  os << "mode: " << (pp.mode == Mode::exact ? "exact" : "f64") << "\n";
  std::optional<Rational> h21;
  if (pp.wm_exact) h21 = pp.wm_exact->xbar + pp.wm_exact->ybar;
  os << "class [21]: " << value_text(h21, *pp.block21.value) << "\n";
  if (pp.ones.value) {
    os << "class [1^n2] n>=2: " << format_value(*pp.ones.value) << "\n";
    os << "point 1^inf: " << format_value(*pp.ones.value) << "\n";
  } else {
    os << "class [1^n2] n>=2: vacuous (11 is not a Y-block)\n";
    os << "point 1^inf: vacuous\n";
  }
  int shown = std::min(listed_depth, pp.depth);
  for (int n = 2; n <= shown; ++n)
    os << "class [2^" << n << " 1]: " << value_text(pp.run_one_ratio(n), pp.run_one_value(n)) << "\n";
  for (int n = 1; n <= shown; ++n)
    os << "class [1 2^" << n << " 1]: " << value_text(pp.one_run_one_ratio(n), pp.one_run_one_value(n)) << "\n";
  os << "tail: tables to n=" << pp.depth << ", closed-form generator beyond\n";
  os << "point 2^inf: " << pp.two_inf_text << " [" << pp.two_inf.rule << "]\n";
  os << "point 12^inf: " << pp.one_two_inf_text << " [" << pp.one_two_inf.rule << "]\n";
  os << "limit [2^n1]: " << limit_text(pp.limits.run_one_tail, pp.mode) << " [" << pp.limits.run_one_tail.rule << "]\n";
  os << "limit [12^n1]: " << limit_text(pp.limits.one_run_one_tail, pp.mode) << " [" << pp.limits.one_run_one_tail.rule
     << "]\n";
  const auto& c = cls.continuity;
  os << "continuity: 2^inf " << continuity_name(c.at_two_inf) << ", 12^inf " << continuity_name(c.at_one_two_inf)
     << ", elsewhere " << continuity_name(c.elsewhere) << "\n";
  for (const auto& s : c.notes) os << "note: " << s << "\n";
}

}  // namespace gf
