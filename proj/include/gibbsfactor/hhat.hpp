#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gibbsfactor/matrix.hpp"
#include "gibbsfactor/pressure.hpp"

namespace gf {

enum class Variant { hhat, hhat1, hhat2 };
const char* variant_name(Variant v);

// Cylinder classes of Y on which the piecewise potential is constant, plus the three special points.
enum class PointKind {
  block21,      // [21]
  run_one,      // [2^n 1], n >= 2
  two_inf,      // 2^inf
  ones,         // [1^n 2], n >= 2
  one_inf,      // 1^inf
  one_run_one,  // [1 2^n 1], n >= 1
  one_two_inf   // 1 2^inf
};
const char* point_kind_name(PointKind k);

struct PointClass {
  PointKind kind = PointKind::block21;
  int n = 0;
};

// How a finite word continues: either its class is already decided, or it is followed by 2^inf or 1^inf.
enum class Continuation { none, twos, ones };

// Throws UndefinedAtPoint when the word plus continuation does not decide a class.
PointClass point_class(const Word& word, Continuation cont = Continuation::none);

enum class Continuity { continuous, discontinuous, unknown };
const char* continuity_name(Continuity c);

struct ContinuityReport {
  Continuity at_two_inf = Continuity::unknown;
  Continuity at_one_two_inf = Continuity::unknown;
  Continuity elsewhere = Continuity::continuous;
  std::vector<std::string> notes;
};

class PiecewisePotential {
 public:
  Variant variant = Variant::hhat;
  Mode mode = Mode::binary64;
  YType y_type = YType::golden_mean;
  int depth = 0;  // tail tables cover n <= depth

  WeightMatrices<double> wm;
  std::optional<WeightMatrices<Rational>> wm_exact;
  Jordan2x2Report jordan;
  RatioLimits limits;  // raw limits before any override

  LimitValue block21;
  LimitValue ones;          // empty value when 11 is not a Y-block
  LimitValue two_inf;       // value used at 2^inf
  LimitValue one_two_inf;   // value used at 12^inf
  std::string two_inf_text, one_two_inf_text;

  double eval(const PointClass& p) const;
  double eval(const Word& word, Continuation cont = Continuation::none) const { return eval(point_class(word, cont)); }

  // log(h[2^n 1] / h[2^{n-1} 1]) for n >= 2 and log(h[1 2^n 1] / h[2^n 1]) for n >= 1.
  double run_one_value(int n) const;
  double one_run_one_value(int n) const;
  // Exact ratios, exact mode only.
  std::optional<Rational> run_one_ratio(int n) const;
  std::optional<Rational> one_run_one_ratio(int n) const;

  // The tail generator, evaluated in the potential's arithmetic; the stored tables are its values for n <= depth.
  double generate_run_one(int n) const;
  double generate_one_run_one(int n) const;

  const std::vector<double>& run_one_table() const { return run_one_; }
  const std::vector<double>& one_run_one_table() const { return one_run_one_; }

 private:
  friend PiecewisePotential build_variant(const FactorSystem&, const TwoBlockPotential&, Variant, int);
  std::vector<double> run_one_, one_run_one_;  // indexed by n, unused slots are 0
  std::vector<std::optional<Rational>> run_one_exact_, one_run_one_exact_;
  std::optional<Rational> ratio(bool leading_one, int n) const;
};

enum class Phd1Case {
  ii_continuous,
  iii_symmetric_antidiagonal,
  antidiagonal_measurable,
  open_antidiagonal_asymmetric,
  generic_continuous
};
const char* phd1_case_name(Phd1Case c);

struct Phd1Classification {
  Phd1Case kind = Phd1Case::generic_continuous;
  Variant variant = Variant::hhat;
  Jordan2x2Report jordan;
  std::vector<std::string> conditions;  // the algebraic facts that decided the case
  ContinuityReport continuity;          // of the emitted potential
  std::string potential_regularity;     // continuous, borel-measurable, or unknown
  std::optional<AdditivityReport> additivity;
};

// Throws SettingCViolation.
Phd1Classification classify_phd1(const FactorSystem& fs, const TwoBlockPotential& f);

struct HhatBuild {
  PiecewisePotential potential;
  Phd1Classification classification;
};

// Picks the variant from the classification. Throws SettingCViolation, UndefinedBranch.
HhatBuild build_hhat(const FactorSystem& fs, const TwoBlockPotential& f, int depth = 64,
                     const AdditivityReport* additivity = nullptr);
// Forces a variant. hhat1 needs a Jordan-block or scalar-diagonal submatrix, hhat2 an antidiagonal one
// (UndefinedBranch otherwise). hhat may have undefined limits; eval then throws UndefinedAtPoint there.
PiecewisePotential build_variant(const FactorSystem& fs, const TwoBlockPotential& f, Variant v, int depth = 64);

ContinuityReport continuity_report(const PiecewisePotential& pp);

// Bounds S_n pp over the cylinder [y_word], n = |y_word|. Throws UndefinedAtPoint.
Interval birkhoff_interval(const PiecewisePotential& pp, const Word& y_word);
BirkhoffFn hhat_birkhoff(const PiecewisePotential& pp);

void write_hhat(std::ostream& os, const PiecewisePotential& pp, const Phd1Classification& cls, int listed_depth = 12);

}  // namespace gf
