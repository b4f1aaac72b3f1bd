#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gf {

// Words are strings of digit characters, symbol s stored as '0' + s.
// Symbols run from 1 to 9, so std::string ordering is lexicographic order on symbols.
using Word = std::string;

inline int symbol_at(std::string_view w, std::size_t i) { return w[i] - '0'; }
inline char symbol_char(int s) { return static_cast<char>('0' + s); }

// "2^3 1" style helper used all over the tests and reports: repeat(symbol, count).
inline Word repeat(int symbol, int count) { return Word(static_cast<std::size_t>(count), symbol_char(symbol)); }

class TransitionSystem {
 public:
  TransitionSystem() = default;

  int size() const { return k_; }
  bool allowed(int i, int j) const { return a_[index(i, j)] != 0; }
  int out_degree(int i) const;
  const std::vector<int>& successors(int i) const { return succ_[i - 1]; }
  bool allowed_word(std::string_view w) const;
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int nonzero_count() const;

  friend TransitionSystem build_system(int k, const std::vector<std::vector<int>>& rows);

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i - 1) * k_ + (j - 1); }

  int k_ = 0;
  std::vector<unsigned char> a_;
  std::vector<std::vector<int>> rows_;
  std::vector<std::vector<int>> succ_;
};

// Throws BadDimension or ZeroRowOrColumn.
TransitionSystem build_system(int k, const std::vector<std::vector<int>>& rows);

// Allowed n-blocks in lexicographic order.
std::vector<Word> words(const TransitionSystem& sys, int n);

// Number of allowed n-blocks, without enumerating them.
double count_words(const TransitionSystem& sys, int n);

struct StructureReport {
  bool irreducible = false;
  std::optional<int> mixing_power;   // smallest p <= bound with A^p > 0
  std::optional<int> weak_spec_gap;  // smallest gap p <= bound that connects every pair of symbols
  int bound = 0;

  bool mixing() const { return mixing_power.has_value(); }
};

StructureReport structure_report(const TransitionSystem& sys, int power_bound = 20);

}  // namespace gf
