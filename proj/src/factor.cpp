#include "gibbsfactor/factor.hpp"

#include <omp.h>

#include <array>
#include <set>

#include "gibbsfactor/error.hpp"

namespace gf {

std::vector<int> FactorSystem::fiber(int y) const {
  std::vector<int> out;
  for (int x = 1; x <= domain.size(); ++x)
    if (image(x) == y) out.push_back(x);
  return out;
}

Word FactorSystem::image_word(const Word& x) const {
  Word y(x.size(), '0');
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = symbol_char(image(symbol_at(x, i)));
  return y;
}

namespace {

// Depth-first walk over B_n(Y) carrying the set of X-symbols that can end a preimage.
bool surjective_below(const FactorSystem& fs, Word& y, unsigned mask, int depth, Word& bad) {
  if (mask == 0) {
    bad = y;
    return false;
  }
  if (static_cast<int>(y.size()) == depth) return true;
  int last = symbol_at(y, y.size() - 1);
  for (int b : fs.codomain.successors(last)) {
    unsigned next = 0;
    for (int x = 1; x <= fs.domain.size(); ++x) {
      if (!(mask & (1u << x))) continue;
      for (int x2 : fs.domain.successors(x))
        if (fs.image(x2) == b) next |= 1u << x2;
    }
    y.push_back(symbol_char(b));
    bool ok = surjective_below(fs, y, next, depth, bad);
    y.pop_back();
    if (!ok) return false;
  }
  return true;
}

void preimages_rec(const FactorSystem& fs, const Word& y, Word& cur, std::vector<Word>& out) {
  if (cur.size() == y.size()) {
    out.push_back(cur);
    return;
  }
  int target = symbol_at(y, cur.size());
  int last = symbol_at(cur, cur.size() - 1);
  for (int x : fs.domain.successors(last)) {
    if (fs.image(x) != target) continue;
    cur.push_back(symbol_char(x));
    preimages_rec(fs, y, cur, out);
    cur.pop_back();
  }
}

// Lexicographically smallest failing (u, v) for one Y-word, if any.
std::optional<std::pair<Word, Word>> first_failure(const std::vector<Word>& fiber) {
  if (fiber.empty()) return std::nullopt;
  std::size_t k = fiber.front().size();
  std::array<std::array<bool, 10>, 10> connected{};
  for (const auto& a : fiber) connected[symbol_at(a, 0)][symbol_at(a, k - 1)] = true;
  std::array<int, 10> smallest_bad_v;
  smallest_bad_v.fill(-1);
  for (int s = 1; s <= 9; ++s)
    for (std::size_t i = 0; i < fiber.size(); ++i)
      if (!connected[s][symbol_at(fiber[i], k - 1)]) {
        smallest_bad_v[s] = static_cast<int>(i);
        break;
      }
  for (const auto& u : fiber) {
    int idx = smallest_bad_v[symbol_at(u, 0)];
    if (idx >= 0) return std::make_pair(u, fiber[idx]);
  }
  return std::nullopt;
}

}  // namespace

FactorSystem build_factor(const TransitionSystem& x, const TransitionSystem& y, const std::vector<int>& map,
                          int validation_depth) {
  if (static_cast<int>(map.size()) != x.size())
    throw Error(Errc::bad_dimension, "symbol map has " + std::to_string(map.size()) + " entries, domain has " +
                                         std::to_string(x.size()) + " symbols");
  for (int v : map)
    if (v < 1 || v > y.size()) throw Error(Errc::bad_dimension, "symbol map value " + std::to_string(v) + " out of range");
  FactorSystem fs{x, y, map, validation_depth};
  for (int i = 1; i <= x.size(); ++i)
    for (int j : x.successors(i))
      if (!y.allowed(fs.image(i), fs.image(j)))
        throw Error(Errc::not_shift_commuting, "block " + Word{symbol_char(i), symbol_char(j)} + " maps to " +
                                                   Word{symbol_char(fs.image(i)), symbol_char(fs.image(j))} +
                                                   " which is not allowed in Y");
  for (int b = 1; b <= y.size(); ++b) {
    unsigned mask = 0;
    for (int xs : fs.fiber(b)) mask |= 1u << xs;
    Word w(1, symbol_char(b));
    Word bad;
    if (validation_depth >= 1 && !surjective_below(fs, w, mask, validation_depth, bad))
      throw Error(Errc::not_surjective, "Y word " + bad + " has no preimage");
  }
  return fs;
}

std::vector<Word> preimage_words(const FactorSystem& fs, const Word& y_word) {
  if (!fs.codomain.allowed_word(y_word)) throw Error(Errc::not_in_language, "'" + y_word + "' is not a Y word");
  std::vector<Word> out;
  Word cur;
  for (int x : fs.fiber(symbol_at(y_word, 0))) {
    cur.assign(1, symbol_char(x));
    preimages_rec(fs, y_word, cur, out);
  }
  if (out.empty()) throw Error(Errc::empty_fiber, "no preimage for " + y_word);
  return out;
}

const char* ytype_name(YType t) {
  switch (t) {
    case YType::full_2_shift: return "full-2-shift";
    case YType::golden_mean: return "golden-mean";
    case YType::other: return "other";
  }
  return "other";
}

SettingCProfile settingc_profile(const FactorSystem& fs) {
  SettingCProfile p;
  const auto& X = fs.domain;
  const auto& Y = fs.codomain;
  if (X.size() != 3) p.failures.push_back("X must have 3 symbols");
  if (Y.size() != 2) p.failures.push_back("Y must have 2 symbols");
  if (X.size() == 3 && Y.size() == 2) {
    if (fs.symbol_map != std::vector<int>{1, 2, 2}) p.failures.push_back("symbol map must be 1->1, 2->2, 3->2");
    p.fiber_of_1 = fs.fiber(1);
    if (p.fiber_of_1 != std::vector<int>{1}) p.failures.push_back("fiber of 1 must be {1}");
    if (Y.rows() == std::vector<std::vector<int>>{{1, 1}, {1, 1}})
      p.y_type = YType::full_2_shift;
    else if (Y.rows() == std::vector<std::vector<int>>{{0, 1}, {1, 1}})
      p.y_type = YType::golden_mean;
    else
      p.failures.push_back("Y must be the full 2-shift or the golden-mean shift");
  }
  if (!structure_report(X, 20).irreducible) p.failures.push_back("X must be irreducible");
  p.valid = p.failures.empty();
  return p;
}

FiberMixingReport fiber_submixing(const FactorSystem& fs, int k_bound) {
  FiberMixingReport rep;
  for (int k = 1; k <= k_bound; ++k) {
    rep.checked_up_to = k;
    auto ys = words(fs.codomain, k);
    std::vector<std::optional<std::pair<Word, Word>>> fails(ys.size());
    long n = static_cast<long>(ys.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) fails[i] = first_failure(preimage_words(fs, ys[i]));
    std::optional<MixingCounterexample> first;
    for (std::size_t i = 0; i < ys.size() && !first; ++i)
      if (fails[i]) first = MixingCounterexample{k, ys[i], fails[i]->first, fails[i]->second};
    if (!first) {
      rep.witnessed_k = k;
      break;
    }
    rep.counterexamples.push_back(*first);
  }
  return rep;
}

FiberMixingReport fiber_submixing_reference(const FactorSystem& fs, int k_bound) {
  FiberMixingReport rep;
  for (int k = 1; k <= k_bound; ++k) {
    rep.checked_up_to = k;
    std::optional<MixingCounterexample> found;
    for (const auto& w : words(fs.codomain, k)) {
      auto fiber = preimage_words(fs, w);
      for (const auto& u : fiber) {
        for (const auto& v : fiber) {
          bool ok = false;
          for (const auto& a : fiber)
            if (a.front() == u.front() && a.back() == v.back()) {
              ok = true;
              break;
            }
          if (!ok) {
            found = MixingCounterexample{k, w, u, v};
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) {
      rep.witnessed_k = k;
      break;
    }
    rep.counterexamples.push_back(*found);
  }
  return rep;
}

}  // namespace gf
