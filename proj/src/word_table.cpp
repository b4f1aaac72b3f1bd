#include "gibbsfactor/word_table.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <map>

#include "gibbsfactor/error.hpp"

namespace gf {

template <class T>
const T* WordTable<T>::find(std::string_view w) const {
  int n = static_cast<int>(w.size());
  if (n < 1 || n > depth) return nullptr;
  const auto& lw = words[n - 1];
  auto it = std::lower_bound(lw.begin(), lw.end(), w, [](const Word& a, std::string_view b) { return a < b; });
  if (it == lw.end() || *it != w) return nullptr;
  return &values[n - 1][static_cast<std::size_t>(it - lw.begin())];
}

template <class T>
const T& WordTable<T>::at(std::string_view w) const {
  const T* p = find(w);
  if (!p) throw Error(Errc::not_in_language, "no table entry for '" + std::string(w) + "'");
  return *p;
}

template <class T>
std::size_t WordTable<T>::size() const {
  std::size_t s = 0;
  for (const auto& l : words) s += l.size();
  return s;
}

template <class T>
LogTable log_table(const WordTable<T>& t) {
  LogTable out;
  out.depth = t.depth;
  out.words = t.words;
  out.values.resize(t.values.size());
  for (std::size_t n = 0; n < t.values.size(); ++n) {
    out.values[n].reserve(t.values[n].size());
    for (const auto& v : t.values[n]) out.values[n].push_back(log_of(v));
  }
  return out;
}

namespace {

template <class T>
struct Walker {
  const FactorSystem& fs;
  const FiberRecurrence<T>& rec;
  int depth;
  std::vector<std::vector<int>> fibers;  // by Y symbol

  Walker(const FactorSystem& f, const FiberRecurrence<T>& r, int d) : fs(f), rec(r), depth(d) {
    fibers.resize(fs.codomain.size() + 1);
    for (int b = 1; b <= fs.codomain.size(); ++b) fibers[b] = fs.fiber(b);
  }

  std::vector<T> start(int b) const {
    std::vector<T> v(fs.domain.size(), T(0));
    for (int x : fibers[b]) v[x - 1] = rec.init[x - 1];
    return v;
  }

  std::vector<T> advance(const std::vector<T>& v, int b) const {
    std::vector<T> out(v.size(), T(0));
    for (int x2 : fibers[b])
      for (std::size_t x = 0; x < v.size(); ++x)
        if (!is_zero(v[x]) && !is_zero(rec.step(static_cast<int>(x), x2 - 1))) out[x2 - 1] += v[x] * rec.step(static_cast<int>(x), x2 - 1);
    return out;
  }

  T value(const std::vector<T>& v, std::size_t n) const {
    const auto& tail = n == 1 ? rec.tail_first : rec.tail_rest;
    T s(0);
    for (std::size_t x = 0; x < v.size(); ++x)
      if (!is_zero(v[x])) s += v[x] * tail[x];
    return s;
  }

  void walk(Word& y, const std::vector<T>& v, std::vector<std::vector<Word>>& ws, std::vector<std::vector<T>>& vs) const {
    ws[y.size() - 1].push_back(y);
    vs[y.size() - 1].push_back(value(v, y.size()));
    if (static_cast<int>(y.size()) == depth) return;
    for (int b : fs.codomain.successors(symbol_at(y, y.size() - 1))) {
      y.push_back(symbol_char(b));
      walk(y, advance(v, b), ws, vs);
      y.pop_back();
    }
  }
};

}  // namespace

template <class T>
WordTable<T> fiber_table(const FactorSystem& fs, const FiberRecurrence<T>& rec, int depth) {
  Walker<T> wk(fs, rec, depth);
  WordTable<T> t;
  t.depth = depth;
  t.words.resize(depth);
  t.values.resize(depth);
  if (depth < 1) return t;

  // Serial breadth-first expansion up to the split level, then one task per prefix.
  int split = 1;
  std::vector<std::pair<Word, std::vector<T>>> frontier;
  for (int b = 1; b <= fs.codomain.size(); ++b) frontier.emplace_back(Word(1, symbol_char(b)), wk.start(b));
  auto record = [&](const std::vector<std::pair<Word, std::vector<T>>>& level) {
    for (const auto& [w, v] : level) {
      t.words[w.size() - 1].push_back(w);
      t.values[w.size() - 1].push_back(wk.value(v, w.size()));
    }
  };
  record(frontier);
  while (split < depth && frontier.size() < 64) {
    std::vector<std::pair<Word, std::vector<T>>> next;
    for (const auto& [w, v] : frontier)
      for (int b : fs.codomain.successors(symbol_at(w, w.size() - 1))) next.emplace_back(w + symbol_char(b), wk.advance(v, b));
    frontier = std::move(next);
    ++split;
    record(frontier);
  }
  if (split == depth) return t;

  long n = static_cast<long>(frontier.size());
  std::vector<std::vector<std::vector<Word>>> local_words(n);
  std::vector<std::vector<std::vector<T>>> local_values(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    local_words[i].resize(depth);
    local_values[i].resize(depth);
    Word y = frontier[i].first;
    const auto& v = frontier[i].second;
    for (int b : fs.codomain.successors(symbol_at(y, y.size() - 1))) {
      y.push_back(symbol_char(b));
      wk.walk(y, wk.advance(v, b), local_words[i], local_values[i]);
      y.pop_back();
    }
  }
  for (int L = split; L < depth; ++L)
    for (long i = 0; i < n; ++i) {
      auto& lw = local_words[i][L];
      auto& lv = local_values[i][L];
      std::move(lw.begin(), lw.end(), std::back_inserter(t.words[L]));
      std::move(lv.begin(), lv.end(), std::back_inserter(t.values[L]));
    }
  return t;
}

template <class T>
WordTable<T> fiber_table_reference(const FactorSystem& fs, const FiberRecurrence<T>& rec, int depth) {
  WordTable<T> t;
  t.depth = depth;
  t.words.resize(depth);
  t.values.resize(depth);
  for (int n = 1; n <= depth; ++n) {
    std::map<Word, T> acc;
    for (const auto& x : words(fs.domain, n)) {
      T weight = rec.init[symbol_at(x, 0) - 1];
      for (std::size_t i = 0; i + 1 < x.size(); ++i) weight *= rec.step(symbol_at(x, i) - 1, symbol_at(x, i + 1) - 1);
      const auto& tail = n == 1 ? rec.tail_first : rec.tail_rest;
      weight *= tail[symbol_at(x, x.size() - 1) - 1];
      auto [it, fresh] = acc.try_emplace(fs.image_word(x), T(0));
      it->second += weight;
    }
    for (auto& [w, v] : acc) {
      if (!fs.codomain.allowed_word(w)) continue;
      t.words[n - 1].push_back(w);
      t.values[n - 1].push_back(v);
    }
  }
  return t;
}

template <class T>
T fiber_value(const FactorSystem& fs, const FiberRecurrence<T>& rec, std::string_view y) {
  if (!fs.codomain.allowed_word(y)) throw Error(Errc::not_in_language, "'" + std::string(y) + "' is not a Y word");
  Walker<T> wk(fs, rec, static_cast<int>(y.size()));
  auto v = wk.start(symbol_at(y, 0));
  for (std::size_t i = 1; i < y.size(); ++i) v = wk.advance(v, symbol_at(y, i));
  return wk.value(v, y.size());
}

double table_budget() {
  if (const char* env = std::getenv("GIBBSFACTOR_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 1e7;
}

void check_budget(const FactorSystem& fs, int depth) {
  double total = 0;
  for (int n = 1; n <= depth; ++n) total += count_words(fs.codomain, n);
  total *= fs.domain.size();
  if (total > table_budget())
    throw Error(Errc::depth_overflow, "depth " + std::to_string(depth) + " needs " + format_value(total) +
                                          " table entries, budget is " + format_value(table_budget()));
}

template <class T>
void write_table_csv(std::ostream& os, const WordTable<T>& t, std::string_view value_column) {
  os << "word,length," << value_column << "\n";
  for (int n = 1; n <= t.depth; ++n)
    for (std::size_t i = 0; i < t.words[n - 1].size(); ++i)
      os << t.words[n - 1][i] << ',' << n << ',' << format_value(t.values[n - 1][i]) << "\n";
}

#define GF_INSTANTIATE(T)                                                                             \
  template struct WordTable<T>;                                                                       \
  template LogTable log_table<T>(const WordTable<T>&);                                                \
  template WordTable<T> fiber_table<T>(const FactorSystem&, const FiberRecurrence<T>&, int);          \
  template WordTable<T> fiber_table_reference<T>(const FactorSystem&, const FiberRecurrence<T>&, int); \
  template T fiber_value<T>(const FactorSystem&, const FiberRecurrence<T>&, std::string_view);        \
  template void write_table_csv<T>(std::ostream&, const WordTable<T>&, std::string_view);

GF_INSTANTIATE(double)
GF_INSTANTIATE(Rational)

}  // namespace gf
