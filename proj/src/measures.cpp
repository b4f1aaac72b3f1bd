#include "gibbsfactor/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gibbsfactor/error.hpp"

namespace gf {

template <class T>
T MarkovMeasure<T>::cylinder(std::string_view w) const {
  if (w.empty()) return T(1);
  if (!system.allowed_word(w)) return T(0);
  T m = stationary[symbol_at(w, 0) - 1];
  for (std::size_t i = 0; i + 1 < w.size(); ++i) m *= stochastic(symbol_at(w, i) - 1, symbol_at(w, i + 1) - 1);
  return m;
}

namespace {

std::vector<double> power_iterate(const Matrix<double>& m, bool left) {
  // M + I keeps the Perron direction and is primitive for irreducible M
  int k = m.rows;
  std::vector<double> v(k, 1.0), next(k);
  for (int it = 0; it < 1000000; ++it) {
    for (int i = 0; i < k; ++i) {
      double s = v[i];
      for (int j = 0; j < k; ++j) s += (left ? m(j, i) : m(i, j)) * v[j];
      next[i] = s;
    }
    double norm = *std::max_element(next.begin(), next.end());
    double change = 0;
    for (int i = 0; i < k; ++i) {
      next[i] /= norm;
      change = std::max(change, std::fabs(next[i] - v[i]));
    }
    v.swap(next);
    if (change < 1e-15) break;
  }
  return v;
}

void require_irreducible(const TransitionSystem& sys) {
  if (!structure_report(sys).irreducible) throw Error(Errc::not_irreducible, "transition system is not irreducible");
}

bool all_positive(const std::vector<Rational>& v) {
  if (v.empty()) return false;
  int s = sgn(v[0]);
  if (s == 0) return false;
  for (const auto& x : v)
    if (sgn(x) != s) return false;
  return true;
}

void make_positive(std::vector<Rational>& v) {
  if (sgn(v[0]) < 0)
    for (auto& x : v) x = -x;
}

}  // namespace

template <class T>
MarkovMeasure<T> markov_measure(const TransitionSystem& sys, const Matrix<T>& p) {
  int k = sys.size();
  if (p.rows != k || p.cols != k) throw Error(Errc::bad_dimension, "stochastic matrix has the wrong size");
  for (int i = 0; i < k; ++i) {
    T row(0);
    for (int j = 0; j < k; ++j) {
      const T& v = p(i, j);
      if (v < 0) throw Error(Errc::not_stochastic, "negative entry in row " + std::to_string(i + 1));
      if (!is_zero(v) != sys.allowed(i + 1, j + 1))
        throw Error(Errc::support_mismatch, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                ") does not match the transition matrix");
      row += v;
    }
    bool ok;
    if constexpr (is_exact_v<T>)
      ok = row == 1;
    else
      ok = std::fabs(row - 1.0) <= 1e-12;
    if (!ok) throw Error(Errc::not_stochastic, "row " + std::to_string(i + 1) + " sums to " + format_value(T(row)));
  }
  MarkovMeasure<T> mu;
  mu.system = sys;
  mu.stochastic = p;
  if constexpr (is_exact_v<T>) {
    Matrix<Rational> a = p;
    for (int i = 0; i < k; ++i) a(i, i) -= 1;
    auto v = left_null_vector(a);
    if (!all_positive(v)) throw Error(Errc::not_irreducible, "stationary vector is not unique and positive");
    make_positive(v);
    Rational s = 0;
    for (const auto& x : v) s += x;
    for (auto& x : v) x /= s;
    mu.stationary = v;
  } else {
    // lazy chain (P + I)/2 has the same stationary vector and is aperiodic
    std::vector<double> v(k, 1.0 / k), next(k);
    for (int it = 0; it < 1000000; ++it) {
      double change = 0;
      for (int j = 0; j < k; ++j) {
        double s = v[j];
        for (int i = 0; i < k; ++i) s += v[i] * p(i, j);
        next[j] = s / 2;
      }
      double total = 0;
      for (double x : next) total += x;
      for (int j = 0; j < k; ++j) {
        next[j] /= total;
        change = std::max(change, std::fabs(next[j] - v[j]));
      }
      v.swap(next);
      if (change < 1e-16) break;
    }
    mu.stationary = v;
  }
  return mu;
}

template <>
PerronData<double> perron<double>(const Matrix<double>& m) {
  PerronData<double> d;
  d.right = power_iterate(m, false);
  d.left = power_iterate(m, true);
  int i = static_cast<int>(std::max_element(d.right.begin(), d.right.end()) - d.right.begin());
  double s = 0;
  for (int j = 0; j < m.cols; ++j) s += m(i, j) * d.right[j];
  d.lambda = s / d.right[i];
  return d;
}

template <>
PerronData<Rational> perron<Rational>(const Matrix<Rational>& m) {
  auto approx = perron<double>(convert<double>(m));
  PerronData<Rational> d;
  Rational q = rational_approximation(approx.lambda, 1000000);
  Matrix<Rational> a = m;
  for (int i = 0; i < m.rows; ++i) a(i, i) -= q;
  d.right = right_null_vector(a);
  d.left = left_null_vector(a);
  if (!all_positive(d.right) || !all_positive(d.left))
    throw Error(Errc::not_rational, "Perron root " + format_value(approx.lambda) + " is not a small rational");
  make_positive(d.right);
  make_positive(d.left);
  d.exact_lambda = q;
  d.lambda = q.get_d();
  return d;
}

namespace {

template <class T>
EquilibriumMeasure<T> from_weights(const TransitionSystem& sys, const Matrix<T>& m) {
  require_irreducible(sys);
  EquilibriumMeasure<T> e;
  e.perron = perron<T>(m);
  T lambda;
  if constexpr (is_exact_v<T>)
    lambda = *e.perron.exact_lambda;
  else
    lambda = e.perron.lambda;
  const auto& r = e.perron.right;
  const auto& l = e.perron.left;
  int k = m.rows;
  Matrix<T> p(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (!is_zero(m(i, j))) p(i, j) = m(i, j) * r[j] / (lambda * r[i]);
  if constexpr (!is_exact_v<T>) {
    // renormalize rows against rounding
    for (int i = 0; i < k; ++i) {
      double s = 0;
      for (int j = 0; j < k; ++j) s += p(i, j);
      for (int j = 0; j < k; ++j) p(i, j) /= s;
    }
  }
  e.measure.system = sys;
  e.measure.stochastic = p;
  std::vector<T> st(k);
  T total(0);
  for (int i = 0; i < k; ++i) {
    st[i] = l[i] * r[i];
    total += st[i];
  }
  for (auto& x : st) x /= total;
  e.measure.stationary = st;
  e.pressure = std::log(e.perron.lambda);
  if constexpr (is_exact_v<T>) e.pressure = log_of(lambda);
  return e;
}

}  // namespace

template <class T>
EquilibriumMeasure<T> parry_measure(const TransitionSystem& sys) {
  Matrix<T> a(sys.size(), sys.size());
  for (int i = 1; i <= sys.size(); ++i)
    for (int j = 1; j <= sys.size(); ++j)
      if (sys.allowed(i, j)) a(i - 1, j - 1) = T(1);
  return from_weights<T>(sys, a);
}

template <class T>
EquilibriumMeasure<T> gibbs_from_potential(const TransitionSystem& sys, const TwoBlockPotential& f) {
  if (f.size() != sys.size()) throw Error(Errc::bad_dimension, "potential and system sizes differ");
  return from_weights<T>(sys, f.weight_matrix<T>());
}

template <class T>
CylinderMeasureTable<T> pushforward(const FactorSystem& fs, const MarkovMeasure<T>& mu, int depth) {
  check_budget(fs, depth);
  FiberRecurrence<T> rec{mu.stationary, mu.stochastic, std::vector<T>(mu.stationary.size(), T(1)),
                         std::vector<T>(mu.stationary.size(), T(1))};
  return fiber_table(fs, rec, depth);
}

template <class T>
CylinderMeasureTable<T> pushforward_reference(const FactorSystem& fs, const MarkovMeasure<T>& mu, int depth) {
  FiberRecurrence<T> rec{mu.stationary, mu.stochastic, std::vector<T>(mu.stationary.size(), T(1)),
                         std::vector<T>(mu.stationary.size(), T(1))};
  return fiber_table_reference(fs, rec, depth);
}

const char* gibbs_kind_name(GibbsKind k) {
  switch (k) {
    case GibbsKind::gibbs: return "gibbs";
    case GibbsKind::weak_gibbs: return "weak-gibbs";
    case GibbsKind::fail: return "fail";
  }
  return "?";
}

double GibbsDiagnostics::variation(int lo, int hi) const {
  lo = std::max(lo, 1);
  hi = std::min(hi, depth);
  if (lo > hi) return 0;
  auto spread = [&](const std::vector<double>& v) {
    auto [a, b] = std::minmax_element(v.begin() + lo, v.begin() + hi + 1);
    return *b - *a;
  };
  return std::max(spread(max_defect), spread(min_defect));
}

void classify_gibbs(GibbsDiagnostics& d) {
  d.max_abs.assign(d.depth + 1, 0.0);
  d.constant = 0;
  for (int n = 1; n <= d.depth; ++n) {
    d.max_abs[n] = std::max(std::fabs(d.max_defect[n]), std::fabs(d.min_defect[n]));
    d.constant = std::max(d.constant, d.max_abs[n]);
  }
  int lo = std::max(1, d.depth / 2);
  auto [a, b] = std::minmax_element(d.max_abs.begin() + lo, d.max_abs.begin() + d.depth + 1);
  d.band_variation = *b - *a;

  // slope of the band centre against n
  double sn = 0, sy = 0, snn = 0, sny = 0;
  int cnt = 0;
  for (int n = 1; n <= d.depth; ++n) {
    double y = (d.max_defect[n] + d.min_defect[n]) / 2;
    sn += n;
    sy += y;
    snn += double(n) * n;
    sny += n * y;
    ++cnt;
  }
  double denom = cnt * snn - sn * sn;
  double slope = denom != 0 ? (cnt * sny - sn * sy) / denom : 0;
  d.best_fit_pressure = d.pressure - slope;

  if (d.band_variation < 1e-6) {
    d.kind = GibbsKind::gibbs;
    d.schedule = "C = " + format_value(d.constant);
    return;
  }
  bool decreasing = d.depth > lo && d.ratio_at(d.depth) < d.ratio_at(lo);
  if (d.ratio_at(d.depth) < 1e-3 && decreasing) {
    d.kind = GibbsKind::weak_gibbs;
    d.schedule = "max defect(n)/n = " + format_value(d.ratio_at(d.depth)) + " at n = " + std::to_string(d.depth);
    return;
  }
  d.kind = GibbsKind::fail;
  d.schedule = "max defect(n)/n = " + format_value(d.ratio_at(d.depth)) + " at n = " + std::to_string(d.depth) +
               (decreasing ? ", decreasing" : ", not decreasing");
}

namespace {

GibbsDiagnostics blank(double pressure, int depth) {
  GibbsDiagnostics d;
  d.pressure = pressure;
  d.depth = depth;
  d.max_defect.assign(depth + 1, -std::numeric_limits<double>::infinity());
  d.min_defect.assign(depth + 1, std::numeric_limits<double>::infinity());
  d.max_defect[0] = d.min_defect[0] = 0;
  return d;
}

void widen(GibbsDiagnostics& d, int n, double lo, double hi) {
  d.min_defect[n] = std::min(d.min_defect[n], lo);
  d.max_defect[n] = std::max(d.max_defect[n], hi);
}

}  // namespace

template <class T>
GibbsDiagnostics check_gibbs_on_domain(const MarkovMeasure<T>& mu, const TwoBlockPotential& f, double pressure, int depth) {
  auto d = blank(pressure, depth);
  for (int n = 1; n <= depth; ++n)
    for (const auto& w : words(mu.system, n)) {
      double s = 0;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) s += f.value(symbol_at(w, i), symbol_at(w, i + 1));
      double v = log_of(mu.cylinder(w)) + n * pressure - s;
      widen(d, n, v, v);
    }
  classify_gibbs(d);
  return d;
}

GibbsDiagnostics gibbs_diagnostics_vs_sequence(const LogTable& masses, const LogTable& seq, double pressure, int depth) {
  depth = std::min({depth, masses.depth, seq.depth});
  auto d = blank(pressure, depth);
  for (int n = 1; n <= depth; ++n) {
    const auto& ws = masses.level_words(n);
    const auto& ms = masses.level_values(n);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      double v = ms[i] + n * pressure - seq.at(ws[i]);
      widen(d, n, v, v);
    }
  }
  classify_gibbs(d);
  return d;
}

GibbsDiagnostics gibbs_diagnostics_vs_potential(const LogTable& masses, const PiecewisePotential& pp, double pressure,
                                                int depth) {
  depth = std::min(depth, masses.depth);
  auto d = blank(pressure, depth);
  for (int n = 1; n <= depth; ++n) {
    const auto& ws = masses.level_words(n);
    const auto& ms = masses.level_values(n);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      Interval s = birkhoff_interval(pp, ws[i]);
      double base = ms[i] + n * pressure;
      widen(d, n, base - s.hi, base - s.lo);
    }
  }
  classify_gibbs(d);
  return d;
}

template <class T>
void write_measure_csv(std::ostream& os, const CylinderMeasureTable<T>& t) {
  write_table_csv(os, t, "mass");
}

void write_defects_csv(std::ostream& os, const GibbsDiagnostics& d) {
  os << "n,max_defect,min_defect\n";
  for (int n = 1; n <= d.depth; ++n)
    os << n << ',' << format_value(d.max_defect[n]) << ',' << format_value(d.min_defect[n]) << "\n";
}

#define GF_INSTANTIATE(T)                                                                                      \
  template struct MarkovMeasure<T>;                                                                            \
  template MarkovMeasure<T> markov_measure<T>(const TransitionSystem&, const Matrix<T>&);                      \
  template EquilibriumMeasure<T> parry_measure<T>(const TransitionSystem&);                                    \
  template EquilibriumMeasure<T> gibbs_from_potential<T>(const TransitionSystem&, const TwoBlockPotential&);   \
  template CylinderMeasureTable<T> pushforward<T>(const FactorSystem&, const MarkovMeasure<T>&, int);          \
  template CylinderMeasureTable<T> pushforward_reference<T>(const FactorSystem&, const MarkovMeasure<T>&, int); \
  template GibbsDiagnostics check_gibbs_on_domain<T>(const MarkovMeasure<T>&, const TwoBlockPotential&, double, int); \
  template void write_measure_csv<T>(std::ostream&, const CylinderMeasureTable<T>&);

GF_INSTANTIATE(double)
GF_INSTANTIATE(Rational)

}  // namespace gf
