#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gibbsfactor/hhat.hpp"
#include "gibbsfactor/pressure.hpp"
#include "gibbsfactor/word_table.hpp"

namespace gf {

template <class T>
struct MarkovMeasure {
  TransitionSystem system;
  Matrix<T> stochastic;
  std::vector<T> stationary;

  // p_{x1} P_{x1 x2} ... P_{x_{n-1} x_n}; 0 off the language.
  T cylinder(std::string_view w) const;
};

// Throws SupportMismatch, NotStochastic.
template <class T>
MarkovMeasure<T> markov_measure(const TransitionSystem& sys, const Matrix<T>& stochastic);

template <class T>
struct PerronData {
  double lambda = 0;
  std::optional<Rational> exact_lambda;
  std::vector<T> left, right;
};

// Perron root and eigenvectors of a nonnegative irreducible matrix. For Rational the root must itself be
// rational (NotRational otherwise).
template <class T>
PerronData<T> perron(const Matrix<T>& m);
template <>
PerronData<double> perron<double>(const Matrix<double>& m);
template <>
PerronData<Rational> perron<Rational>(const Matrix<Rational>& m);

template <class T>
struct EquilibriumMeasure {
  MarkovMeasure<T> measure;
  double pressure = 0;  // log of the Perron root
  PerronData<T> perron;
};

// Throws NotIrreducible; NotRational in exact mode when the root is irrational.
template <class T>
EquilibriumMeasure<T> parry_measure(const TransitionSystem& sys);
template <class T>
EquilibriumMeasure<T> gibbs_from_potential(const TransitionSystem& sys, const TwoBlockPotential& f);

// Masses of Y-cylinders, pi mu[y] = mu(pi^{-1}[y]).
template <class T>
using CylinderMeasureTable = WordTable<T>;

// Parallel over Y-word subtrees. Throws DepthOverflow.
template <class T>
CylinderMeasureTable<T> pushforward(const FactorSystem& fs, const MarkovMeasure<T>& mu, int depth);
template <class T>
CylinderMeasureTable<T> pushforward_reference(const FactorSystem& fs, const MarkovMeasure<T>& mu, int depth);

enum class GibbsKind { gibbs, weak_gibbs, fail };
const char* gibbs_kind_name(GibbsKind k);

struct GibbsDiagnostics {
  double pressure = 0;
  int depth = 0;
  // indexed by n = 1..depth (slot 0 unused)
  std::vector<double> max_defect, min_defect, max_abs;
  GibbsKind kind = GibbsKind::fail;
  double constant = 0;         // max |defect| over the whole table
  double band_variation = 0;   // spread of max |defect| over n in [depth/2, depth]
  double best_fit_pressure = 0;
  std::string schedule;

  // Spread of the defect band (both edges) over n in [lo, hi].
  double variation(int lo, int hi) const;
  double ratio_at(int n) const { return max_abs[n] / n; }
};

// log mu[w] + nP - (f[w1w2] + ... + f[w_{n-1}w_n]) over B_n(X), n <= depth.
template <class T>
GibbsDiagnostics check_gibbs_on_domain(const MarkovMeasure<T>& mu, const TwoBlockPotential& f, double pressure, int depth);

// log pi mu[y] + nP - log f_n(y) for every table word.
GibbsDiagnostics gibbs_diagnostics_vs_sequence(const LogTable& masses, const LogTable& seq, double pressure, int depth);
// Defect intervals log pi mu[y] + nP - birkhoff_interval(y); the worst endpoint counts. Throws UndefinedAtPoint.
GibbsDiagnostics gibbs_diagnostics_vs_potential(const LogTable& masses, const PiecewisePotential& pp, double pressure,
                                                int depth);

// Classification from the per-n defect band.
void classify_gibbs(GibbsDiagnostics& d);

template <class T>
void write_measure_csv(std::ostream& os, const CylinderMeasureTable<T>& t);
void write_defects_csv(std::ostream& os, const GibbsDiagnostics& d);

}  // namespace gf
