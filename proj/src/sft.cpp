#include "gibbsfactor/sft.hpp"

#include <algorithm>

#include "gibbsfactor/error.hpp"

namespace gf {

TransitionSystem build_system(int k, const std::vector<std::vector<int>>& rows) {
  if (k < 1 || k > 9) throw Error(Errc::bad_dimension, "alphabet size must be in 1..9, got " + std::to_string(k));
  if (static_cast<int>(rows.size()) != k)
    throw Error(Errc::bad_dimension, "expected " + std::to_string(k) + " rows, got " + std::to_string(rows.size()));
  TransitionSystem s;
  s.k_ = k;
  s.a_.assign(static_cast<std::size_t>(k) * k, 0);
  s.rows_ = rows;
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(rows[i].size()) != k)
      throw Error(Errc::bad_dimension, "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                           " entries, expected " + std::to_string(k));
    for (int j = 0; j < k; ++j) {
      int v = rows[i][j];
      if (v != 0 && v != 1)
        throw Error(Errc::bad_dimension, "transition entries must be 0 or 1, row " + std::to_string(i + 1));
      s.a_[static_cast<std::size_t>(i) * k + j] = static_cast<unsigned char>(v);
    }
  }
  for (int i = 1; i <= k; ++i) {
    bool row = false, col = false;
    for (int j = 1; j <= k; ++j) {
      row = row || s.allowed(i, j);
      col = col || s.allowed(j, i);
    }
    if (!row) throw Error(Errc::zero_row_or_column, "symbol " + std::to_string(i) + " has no successor");
    if (!col) throw Error(Errc::zero_row_or_column, "symbol " + std::to_string(i) + " has no predecessor");
  }
  s.succ_.resize(k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (s.allowed(i, j)) s.succ_[i - 1].push_back(j);
  return s;
}

int TransitionSystem::out_degree(int i) const { return static_cast<int>(succ_[i - 1].size()); }

int TransitionSystem::nonzero_count() const {
  return static_cast<int>(std::count(a_.begin(), a_.end(), 1));
}

bool TransitionSystem::allowed_word(std::string_view w) const {
  if (w.empty()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    int s = symbol_at(w, i);
    if (s < 1 || s > k_) return false;
    if (i + 1 < w.size() && !allowed(s, symbol_at(w, i + 1))) return false;
  }
  return true;
}

namespace {

void extend(const TransitionSystem& sys, Word& cur, int n, std::vector<Word>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int j : sys.successors(symbol_at(cur, cur.size() - 1))) {
    cur.push_back(symbol_char(j));
    extend(sys, cur, n, out);
    cur.pop_back();
  }
}

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  std::size_t k = a.size();
  BoolMatrix c(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < k; ++j)
          if (b[l][j]) c[i][j] = true;
  return c;
}

}  // namespace

std::vector<Word> words(const TransitionSystem& sys, int n) {
  std::vector<Word> out;
  if (n < 1) return out;
  Word cur;
  for (int s = 1; s <= sys.size(); ++s) {
    cur.assign(1, symbol_char(s));
    extend(sys, cur, n, out);
  }
  return out;
}

double count_words(const TransitionSystem& sys, int n) {
  int k = sys.size();
  std::vector<double> v(k, 1.0);
  for (int step = 1; step < n; ++step) {
    std::vector<double> w(k, 0.0);
    for (int i = 1; i <= k; ++i)
      for (int j : sys.successors(i)) w[j - 1] += v[i - 1];
    v = std::move(w);
  }
  double total = 0;
  for (double x : v) total += x;
  return total;
}

StructureReport structure_report(const TransitionSystem& sys, int power_bound) {
  int k = sys.size();
  StructureReport rep;
  rep.bound = power_bound;

  BoolMatrix a(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a[i][j] = sys.allowed(i + 1, j + 1);

  // transitive closure for strong connectivity
  BoolMatrix reach = a;
  for (int m = 0; m < k; ++m)
    for (int i = 0; i < k; ++i)
      if (reach[i][m])
        for (int j = 0; j < k; ++j)
          if (reach[m][j]) reach[i][j] = true;
  rep.irreducible = true;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) rep.irreducible = rep.irreducible && reach[i][j];

  // power = A^p; connected accumulates A^1 .. A^(p+1)
  BoolMatrix power = a;
  BoolMatrix connected = a;
  for (int p = 1; p <= power_bound; ++p) {
    bool positive = true;
    for (int i = 0; i < k && positive; ++i)
      for (int j = 0; j < k && positive; ++j) positive = power[i][j];
    if (positive && !rep.mixing_power) rep.mixing_power = p;

    // gap p - 1 means words of length 0..p-1 may be inserted
    bool all = true;
    for (int i = 0; i < k && all; ++i)
      for (int j = 0; j < k && all; ++j) all = connected[i][j];
    if (all && !rep.weak_spec_gap) rep.weak_spec_gap = p - 1;

    if (rep.mixing_power && rep.weak_spec_gap) break;
    power = bool_product(power, a);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (power[i][j]) connected[i][j] = true;
  }
  if (!rep.irreducible) {
    rep.mixing_power.reset();
    rep.weak_spec_gap.reset();
  }
  return rep;
}

}  // namespace gf
