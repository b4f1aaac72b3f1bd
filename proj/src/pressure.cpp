#include "gibbsfactor/pressure.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gibbsfactor/error.hpp"

namespace gf {

namespace {

template <class T>
std::vector<T> best_continuation(const TwoBlockPotential& f) {
  const auto& sys = f.system();
  std::vector<T> out(sys.size(), T(0));
  for (int x = 1; x <= sys.size(); ++x) {
    bool first = true;
    for (int a : sys.successors(x)) {
      T w = f.weight<T>(x, a);
      if (first || w > out[x - 1]) out[x - 1] = w;
      first = false;
    }
  }
  return out;
}

template <class T>
SequenceTable<T> as_sequence(WordTable<T>&& t, SequenceKind kind) {
  SequenceTable<T> s;
  static_cast<WordTable<T>&>(s) = std::move(t);
  s.kind = kind;
  return s;
}

}  // namespace

template <class T>
FiberRecurrence<T> h_recurrence(const FactorSystem& fs, const TwoBlockPotential& f) {
  int k = fs.domain.size();
  FiberRecurrence<T> rec;
  rec.init.assign(k, T(1));
  rec.step = f.weight_matrix<T>();
  rec.tail_first = best_continuation<T>(f);
  rec.tail_rest.assign(k, T(1));
  return rec;
}

template <class T>
FiberRecurrence<T> g_recurrence(const FactorSystem& fs, const TwoBlockPotential& f) {
  auto rec = h_recurrence<T>(fs, f);
  rec.tail_rest = rec.tail_first;
  return rec;
}

template <class T>
SequenceTable<T> h_table(const FactorSystem& fs, const TwoBlockPotential& f, int depth) {
  check_budget(fs, depth);
  return as_sequence(fiber_table(fs, h_recurrence<T>(fs, f), depth), SequenceKind::h);
}

template <class T>
SequenceTable<T> g_table(const FactorSystem& fs, const TwoBlockPotential& f, int depth) {
  check_budget(fs, depth);
  return as_sequence(fiber_table(fs, g_recurrence<T>(fs, f), depth), SequenceKind::g);
}

template <class T>
SequenceTable<T> h_table_reference(const FactorSystem& fs, const TwoBlockPotential& f, int depth) {
  return as_sequence(fiber_table_reference(fs, h_recurrence<T>(fs, f), depth), SequenceKind::h);
}

template <class T>
SequenceTable<T> g_table_reference(const FactorSystem& fs, const TwoBlockPotential& f, int depth) {
  return as_sequence(fiber_table_reference(fs, g_recurrence<T>(fs, f), depth), SequenceKind::g);
}

template <class T>
T h_value(const FactorSystem& fs, const TwoBlockPotential& f, const Word& y) {
  return fiber_value(fs, h_recurrence<T>(fs, f), y);
}

template <class T>
T g_value(const FactorSystem& fs, const TwoBlockPotential& f, const Word& y) {
  return fiber_value(fs, g_recurrence<T>(fs, f), y);
}

template <class T>
void write_sequence_csv(std::ostream& os, const SequenceTable<T>& t) {
  write_table_csv(os, static_cast<const WordTable<T>&>(t), "value");
}

#define GF_INSTANTIATE(T)                                                                                  \
  template FiberRecurrence<T> h_recurrence<T>(const FactorSystem&, const TwoBlockPotential&);              \
  template FiberRecurrence<T> g_recurrence<T>(const FactorSystem&, const TwoBlockPotential&);              \
  template SequenceTable<T> h_table<T>(const FactorSystem&, const TwoBlockPotential&, int);                \
  template SequenceTable<T> g_table<T>(const FactorSystem&, const TwoBlockPotential&, int);                \
  template SequenceTable<T> h_table_reference<T>(const FactorSystem&, const TwoBlockPotential&, int);      \
  template SequenceTable<T> g_table_reference<T>(const FactorSystem&, const TwoBlockPotential&, int);      \
  template T h_value<T>(const FactorSystem&, const TwoBlockPotential&, const Word&);                       \
  template T g_value<T>(const FactorSystem&, const TwoBlockPotential&, const Word&);                       \
  template void write_sequence_csv<T>(std::ostream&, const SequenceTable<T>&);

GF_INSTANTIATE(double)
GF_INSTANTIATE(Rational)
#undef GF_INSTANTIATE

// ---- additivity ----

const char* additivity_name(Additivity a) {
  switch (a) {
    case Additivity::almost_additive: return "almost-additive";
    case Additivity::weakly_almost_additive: return "weakly-almost-additive";
    case Additivity::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

using Grid = std::vector<std::vector<double>>;

Grid empty_grid(int depth) { return Grid(depth + 1, std::vector<double>(depth + 1, 0.0)); }

void word_defects(const LogTable& t, const Word& y, double log_y, Grid& d) {
  int L = static_cast<int>(y.size());
  std::string_view v(y);
  for (int n = 1; n < L; ++n) {
    double e = std::fabs(log_y - t.at(v.substr(0, n)) - t.at(v.substr(n)));
    if (e > d[n][L - n]) d[n][L - n] = e;
  }
}

}  // namespace

std::vector<std::vector<double>> defect_table(const LogTable& t, int depth) {
  depth = std::min(depth, t.depth);
  Grid d = empty_grid(depth);
  for (int L = 2; L <= depth; ++L) {
    const auto& ws = t.level_words(L);
    const auto& vs = t.level_values(L);
    long count = static_cast<long>(ws.size());
#pragma omp parallel
    {
      Grid local = empty_grid(depth);
#pragma omp for schedule(static) nowait
      for (long i = 0; i < count; ++i) word_defects(t, ws[i], vs[i], local);
#pragma omp critical
      for (int n = 1; n < L; ++n) d[n][L - n] = std::max(d[n][L - n], local[n][L - n]);
    }
  }
  return d;
}

std::vector<std::vector<double>> defect_table_reference(const LogTable& t, int depth) {
  depth = std::min(depth, t.depth);
  Grid d = empty_grid(depth);
  for (int L = 2; L <= depth; ++L) {
    const auto& ws = t.level_words(L);
    for (std::size_t i = 0; i < ws.size(); ++i) word_defects(t, ws[i], t.level_values(L)[i], d);
  }
  return d;
}

double AdditivityReport::bound(int k) const {
  if (classification == Additivity::almost_additive) return max_defect;
  return std::log(schedule_factor * (k + 1));
}

AdditivityReport additivity_report(const LogTable& t, int depth) {
  if (depth > t.depth) throw Error(Errc::insufficient_depth, "table depth " + std::to_string(t.depth) + " < " + std::to_string(depth));
  AdditivityReport r;
  r.depth = depth;
  r.defect = defect_table(t, depth);

  std::vector<double> running(depth + 1, 0.0);
  for (int L = 2; L <= depth; ++L) {
    double m = 0;
    for (int n = 1; n < L; ++n) m = std::max(m, r.defect[n][L - n]);
    running[L] = std::max(running[L - 1], m);
  }
  r.max_defect = running[depth];

  r.schedule_factor = 0;
  for (int n = 1; n < depth; ++n)
    for (int m = 1; n + m <= depth; ++m)
      r.schedule_factor = std::max(r.schedule_factor, std::exp(r.defect[n][m]) / (std::min(n, m) + 1));

  int quarter = std::max(1, depth / 4);
  std::ostringstream fb;
  fb.precision(12);
  if (depth >= 4 && running[depth] - running[depth - quarter] < 1e-9) {
    r.classification = Additivity::almost_additive;
    fb << "C = " << r.max_defect << " (max defect constant over the last " << quarter << " lengths)";
  } else {
    // D(n,m)/min(n,m) as a function of j = min(n,m)
    int J = depth / 2;
    std::vector<double> ratio(J + 1, 0.0);
    for (int n = 1; n < depth; ++n)
      for (int m = 1; n + m <= depth; ++m) {
        int j = std::min(n, m);
        ratio[j] = std::max(ratio[j], r.defect[n][m] / j);
      }
    bool decreasing = J >= 4;
    for (int j = std::max(1, J / 2); j < J && decreasing; ++j) decreasing = ratio[j + 1] < ratio[j] - 1e-12;
    if (decreasing) {
      r.classification = Additivity::weakly_almost_additive;
      fb << "D(n,m) <= log(c*(min(n,m)+1)) with c = " << r.schedule_factor << "; max D(n,m)/min(n,m) at min = " << J
         << " is " << ratio[J];
    } else {
      r.classification = Additivity::inconclusive;
      fb << "max defect " << r.max_defect << " still growing; c = " << r.schedule_factor;
    }
  }
  r.fitted_bound = fb.str();
  return r;
}

// ---- ratio estimators ----

const char* convergence_name(Convergence c) {
  switch (c) {
    case Convergence::converged: return "converged";
    case Convergence::oscillating: return "oscillating";
    case Convergence::undetermined: return "undetermined";
  }
  return "undetermined";
}

LogSequenceView table_view(const LogTable& t) {
  return {0, [&t](std::string_view w) { return t.at(w); }};
}

LogSequenceView additive_view(const TwoBlockPotential& phi) {
  return {1, [phi](std::string_view w) {
            double s = 0;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) s += phi.value(symbol_at(w, i), symbol_at(w, i + 1));
            return s;
          }};
}

namespace {

void classify_window(RatioEstimates& r, double tol, const std::function<bool(std::size_t, std::size_t)>& same) {
  std::size_t count = r.value.size();
  if (count == 0) return;
  std::size_t last = count - 1;
  std::size_t from = last;
  while (from > 0 && same(from - 1, last)) --from;
  r.stable_from = r.n[from];
  std::size_t window = std::min<std::size_t>(4, count);
  if (count >= 2 && last - from + 1 >= window) {
    r.flag = Convergence::converged;
    return;
  }
  if (count >= 4) {
    bool periodic = true;
    for (std::size_t i = count - 4; i + 2 < count; ++i) periodic = periodic && same(i, i + 2);
    if (periodic && !same(last, last - 1)) {
      r.flag = Convergence::oscillating;
      return;
    }
  }
  r.flag = Convergence::undetermined;
  (void)tol;
}

}  // namespace

RatioEstimates go1_fhat(const LogSequenceView& seq, const Word& prefix, int n_lo, int n_hi, double tol) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(Errc::insufficient_depth, "empty depth range");
  if (n_hi + seq.lookahead > static_cast<int>(prefix.size()))
    throw Error(Errc::insufficient_depth, "prefix of length " + std::to_string(prefix.size()) + " does not determine f_" +
                                              std::to_string(n_hi));
  RatioEstimates r;
  std::string_view p(prefix);
  for (int n = n_lo; n <= n_hi; ++n) {
    double num = seq.log_f(p.substr(0, n + seq.lookahead));
    double den = n > 1 ? seq.log_f(p.substr(1, n - 1 + seq.lookahead)) : 0.0;
    r.n.push_back(n);
    r.value.push_back(num - den);
  }
  classify_window(r, tol, [&](std::size_t i, std::size_t j) { return std::fabs(r.value[i] - r.value[j]) < tol; });
  return r;
}

template <class T>
RatioEstimates cando1_r(const std::function<T(std::string_view)>& mass, double pressure, const Word& prefix, int n_lo,
                        int n_hi, double tol) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(Errc::insufficient_depth, "empty depth range");
  if (n_hi > static_cast<int>(prefix.size()))
    throw Error(Errc::insufficient_depth, "prefix shorter than " + std::to_string(n_hi));
  RatioEstimates r;
  std::vector<T> ratios;
  std::string_view p(prefix);
  for (int n = n_lo; n <= n_hi; ++n) {
    T num = mass(p.substr(0, n));
    T den = n > 1 ? mass(p.substr(1, n - 1)) : T(1);
    if (is_zero(num) || is_zero(den)) throw Error(Errc::zero_mass, "zero mass cylinder in prefix " + prefix);
    T q = num / den;
    r.n.push_back(n);
    r.value.push_back(log_of(q) + pressure);
    ratios.push_back(q);
  }
  classify_window(r, tol, [&](std::size_t i, std::size_t j) {
    if constexpr (is_exact_v<T>)
      return ratios[i] == ratios[j];
    else
      return std::fabs(r.value[i] - r.value[j]) < tol;
  });
  return r;
}

template RatioEstimates cando1_r<double>(const std::function<double(std::string_view)>&, double, const Word&, int, int,
                                         double);
template RatioEstimates cando1_r<Rational>(const std::function<Rational(std::string_view)>&, double, const Word&, int,
                                           int, double);

// ---- sandwich ----

SandwichResult sandwich_check(const LogTable& t, const BirkhoffFn& birkhoff, const std::function<double(int)>& bound,
                              int k_max, double slack) {
  SandwichResult res;
  int top = std::min(k_max, t.depth);
  for (int k = 1; k <= top; ++k) {
    double c = bound(k);
    const auto& ws = t.level_words(k);
    const auto& vs = t.level_values(k);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      Interval s = birkhoff(ws[i]);
      double lo = vs[i] - s.hi;
      double hi = vs[i] - s.lo;
      double w = std::max(std::fabs(lo), std::fabs(hi));
      double excess = std::max(hi - c, -c - lo);
      if (w > res.worst) {
        res.worst = w;
        res.witness = ws[i];
      }
      if (excess > slack) {
        res.pass = false;
        res.worst_excess = std::max(res.worst_excess, excess);
      }
    }
  }
  return res;
}

BirkhoffFn potential_birkhoff(const TwoBlockPotential& phi) {
  return [phi](const Word& w) {
    double s = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) s += phi.value(symbol_at(w, i), symbol_at(w, i + 1));
    int last = symbol_at(w, w.size() - 1);
    double lo = INFINITY, hi = -INFINITY;
    for (int a : phi.system().successors(last)) {
      lo = std::min(lo, phi.value(last, a));
      hi = std::max(hi, phi.value(last, a));
    }
    return Interval{s + lo, s + hi};
  };
}

}  // namespace gf
