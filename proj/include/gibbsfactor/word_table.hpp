#pragma once

#include <cstddef>
#include <ostream>
#include <string_view>
#include <vector>

#include "gibbsfactor/factor.hpp"
#include "gibbsfactor/scalar.hpp"

namespace gf {

// Values indexed by Y-words, one lexicographically sorted level per length 1..depth.
template <class T>
struct WordTable {
  int depth = 0;
  std::vector<std::vector<Word>> words;
  std::vector<std::vector<T>> values;

  const std::vector<Word>& level_words(int n) const { return words[n - 1]; }
  const std::vector<T>& level_values(int n) const { return values[n - 1]; }

  const T* find(std::string_view w) const;
  // Throws NotInLanguage when w is absent.
  const T& at(std::string_view w) const;
  std::size_t size() const;
};

// Word-indexed table of natural logs, used by every diagnostic.
using LogTable = WordTable<double>;

template <class T>
LogTable log_table(const WordTable<T>& t);

// Fiber sums over B_n(Y): state v(x) carried along a Y-word,
//   v_1(x) = init(x) for x over y_1,  v_{i+1}(x') = sum_x v_i(x) W(x, x') for x' over y_{i+1},
//   value at length 1 = sum v_1(x) tail_first(x),  value at length n >= 2 = sum v_n(x) tail_rest(x).
template <class T>
struct FiberRecurrence {
  std::vector<T> init;
  Matrix<T> step;
  std::vector<T> tail_first;
  std::vector<T> tail_rest;
};

// OpenMP over subtrees of Y-words.
template <class T>
WordTable<T> fiber_table(const FactorSystem& fs, const FiberRecurrence<T>& rec, int depth);
// Serial reference: enumerates every X-word and accumulates into its image.
template <class T>
WordTable<T> fiber_table_reference(const FactorSystem& fs, const FiberRecurrence<T>& rec, int depth);
// Single word, same recurrence.
template <class T>
T fiber_value(const FactorSystem& fs, const FiberRecurrence<T>& rec, std::string_view y);

// GIBBSFACTOR_BUDGET caps sum_n |B_n(Y)| * |alphabet(X)|; default 1e7.
double table_budget();
// Throws DepthOverflow when a depth-N fiber table would exceed the budget.
void check_budget(const FactorSystem& fs, int depth);

template <class T>
void write_table_csv(std::ostream& os, const WordTable<T>& t, std::string_view value_column);

}  // namespace gf
