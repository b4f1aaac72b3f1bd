#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gibbsfactor/sft.hpp"

namespace gf {

// One-block factor map X -> Y given by a symbol table.
struct FactorSystem {
  TransitionSystem domain;
  TransitionSystem codomain;
  std::vector<int> symbol_map;  // symbol_map[x - 1] is the image of x
  int validation_depth = 0;

  int image(int x) const { return symbol_map[x - 1]; }
  std::vector<int> fiber(int y) const;
  Word image_word(const Word& x) const;
};

// Throws BadDimension, NotShiftCommuting or NotSurjective.
FactorSystem build_factor(const TransitionSystem& x, const TransitionSystem& y, const std::vector<int>& map,
                          int validation_depth = 8);

// All X-words of the same length mapping letter-wise onto y_word, lexicographic.
std::vector<Word> preimage_words(const FactorSystem& fs, const Word& y_word);

enum class YType { full_2_shift, golden_mean, other };

struct SettingCProfile {
  bool valid = false;
  YType y_type = YType::other;
  std::vector<int> fiber_of_1;
  std::vector<std::string> failures;
};

SettingCProfile settingc_profile(const FactorSystem& fs);
const char* ytype_name(YType t);

struct MixingCounterexample {
  int k = 0;
  Word w, u, v;
};

struct FiberMixingReport {
  std::optional<int> witnessed_k;
  int checked_up_to = 0;
  std::vector<MixingCounterexample> counterexamples;  // one per failed k, lexicographically smallest (w,u,v)
};

// Parallel over Y-words.
FiberMixingReport fiber_submixing(const FactorSystem& fs, int k_bound = 8);
// Serial triple loop over (w, u, v); kept as a reference for tests and benchmarks.
FiberMixingReport fiber_submixing_reference(const FactorSystem& fs, int k_bound = 8);

}  // namespace gf
