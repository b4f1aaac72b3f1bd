#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gibbsfactor/factor.hpp"
#include "gibbsfactor/potential.hpp"
#include "gibbsfactor/word_table.hpp"

namespace gf {

enum class SequenceKind { h, g };

template <class T>
struct SequenceTable : WordTable<T> {
  SequenceKind kind = SequenceKind::h;
};

// h_n(y): sum over preimage words of exp(f[x1x2] + ... + f[x_{n-1}x_n]); h_1 = g_1.
template <class T>
SequenceTable<T> h_table(const FactorSystem& fs, const TwoBlockPotential& f, int depth);
// g_n(y): as h_n with each summand multiplied by the best one-symbol continuation exp(f[x_n a]).
template <class T>
SequenceTable<T> g_table(const FactorSystem& fs, const TwoBlockPotential& f, int depth);

// Serial preimage enumeration, same values.
template <class T>
SequenceTable<T> h_table_reference(const FactorSystem& fs, const TwoBlockPotential& f, int depth);
template <class T>
SequenceTable<T> g_table_reference(const FactorSystem& fs, const TwoBlockPotential& f, int depth);

// One entry without building the table.
template <class T>
T h_value(const FactorSystem& fs, const TwoBlockPotential& f, const Word& y);
template <class T>
T g_value(const FactorSystem& fs, const TwoBlockPotential& f, const Word& y);

template <class T>
FiberRecurrence<T> h_recurrence(const FactorSystem& fs, const TwoBlockPotential& f);
template <class T>
FiberRecurrence<T> g_recurrence(const FactorSystem& fs, const TwoBlockPotential& f);

template <class T>
void write_sequence_csv(std::ostream& os, const SequenceTable<T>& t);

// ---- additivity ----

enum class Additivity { almost_additive, weakly_almost_additive, inconclusive };
const char* additivity_name(Additivity a);

struct AdditivityReport {
  int depth = 0;
  // defect[n][m] for n, m >= 1 and n + m <= depth; other cells are 0.
  std::vector<std::vector<double>> defect;
  Additivity classification = Additivity::inconclusive;
  double max_defect = 0;
  // smallest c with D(n,m) <= log(c (min(n,m) + 1)) on the whole table
  double schedule_factor = 0;
  std::string fitted_bound;

  // Comparison constant C_k: the uniform constant when almost additive, else log(c (k + 1)).
  double bound(int k) const;
};

// Exhaustive defect table, OpenMP over words.
std::vector<std::vector<double>> defect_table(const LogTable& t, int depth);
std::vector<std::vector<double>> defect_table_reference(const LogTable& t, int depth);

AdditivityReport additivity_report(const LogTable& t, int depth);

// ---- ratio estimators ----

enum class Convergence { converged, oscillating, undetermined };
const char* convergence_name(Convergence c);

// log f_n evaluated on the first n + lookahead symbols of a point.
struct LogSequenceView {
  int lookahead = 0;
  std::function<double(std::string_view)> log_f;
};

LogSequenceView table_view(const LogTable& t);
// f_n = exp(phi[x1x2] + ... + phi[x_n x_{n+1}]), the additive sequence of a two-block potential.
LogSequenceView additive_view(const TwoBlockPotential& phi);

struct RatioEstimates {
  std::vector<int> n;
  std::vector<double> value;
  Convergence flag = Convergence::undetermined;
  std::optional<int> stable_from;  // first n after which every value agrees with the last within tolerance
};

// log(f_n(x) / f_{n-1}(shift x)) for n in [n_lo, n_hi] at the point starting with prefix.
RatioEstimates go1_fhat(const LogSequenceView& seq, const Word& prefix, int n_lo, int n_hi, double tol = 1e-9);

// log(nu[x1..xn] / nu[x2..xn]) + P. Stability is decided on the exact mass ratios when T is rational.
template <class T>
RatioEstimates cando1_r(const std::function<T(std::string_view)>& mass, double pressure, const Word& prefix, int n_lo,
                        int n_hi, double tol = 1e-12);

// ---- sandwich ----

struct Interval {
  double lo = 0;
  double hi = 0;
};

struct SandwichResult {
  bool pass = true;
  double worst = 0;        // largest |log f_k - S_k| endpoint seen
  double worst_excess = 0; // largest amount by which an endpoint leaves [-C_k, C_k]
  Word witness;
};

using BirkhoffFn = std::function<Interval(const Word&)>;

// Checks [log f_k(y) - hi, log f_k(y) - lo] within [-C_k, C_k] for every table word of length <= k_max.
SandwichResult sandwich_check(const LogTable& t, const BirkhoffFn& birkhoff, const std::function<double(int)>& bound,
                              int k_max, double slack = 1e-9);

// Birkhoff sums of a two-block potential over X-cylinders: the last term ranges over allowed continuations.
BirkhoffFn potential_birkhoff(const TwoBlockPotential& phi);

}  // namespace gf
