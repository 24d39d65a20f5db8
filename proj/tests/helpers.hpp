#pragma once

#include <cstdint>
#include <vector>

#include "varcirc/varcirc.hpp"

namespace vt {

using namespace varcirc;

// Deterministic pseudo-random DFAs for property loops.
struct Lcg {
  uint64_t state;
  explicit Lcg(uint64_t seed) : state(seed) {}
  uint32_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<uint32_t>(state >> 33);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<uint32_t>(n)); }
};

inline Dfa random_dfa(Lcg& rng, const Alphabet& a, int max_states) {
  Dfa d;
  d.alphabet = a;
  d.state_count = 1 + rng.below(max_states);
  d.initial = rng.below(d.state_count);
  d.accepting.resize(d.state_count);
  for (int q = 0; q < d.state_count; ++q) d.accepting[q] = rng.below(2) == 1;
  d.transition.resize(static_cast<size_t>(d.state_count) * a.size());
  for (auto& t : d.transition) t = rng.below(d.state_count);
  return d;
}

inline bool agree_up_to(const LanguageOracle& x, const LanguageOracle& y, int max_len) {
  return !bounded_equivalence(x, y, max_len).has_value();
}

// Assorted regular languages over {a,b} used by the monoid and profinite tests.
inline std::vector<std::pair<std::string, Dfa>> ab_language_zoo() {
  Alphabet ab({"a", "b"});
  const int A = 0, B = 1;
  auto dfa = [&](int states, int initial, std::vector<int> acc, std::vector<int> table) {
    Dfa d;
    d.alphabet = ab;
    d.state_count = states;
    d.initial = initial;
    d.accepting.assign(states, false);
    for (int q : acc) d.accepting[q] = true;
    d.transition = std::move(table);
    d.validate();
    return d;
  };
  (void)A;
  (void)B;
  std::vector<std::pair<std::string, Dfa>> zoo;
  // all letters a, even length
  zoo.emplace_back("a-even", dfa(3, 0, {0}, {1, 2, 0, 2, 2, 2}));
  // all letters a, odd length
  zoo.emplace_back("a-odd", dfa(3, 0, {1}, {1, 2, 0, 2, 2, 2}));
  // a*
  zoo.emplace_back("a-star", dfa(2, 0, {0}, {0, 1, 1, 1}));
  zoo.emplace_back("all", builtin_language("all", {}, ab));
  zoo.emplace_back("none", builtin_language("none", {}, ab));
  // even number of a's
  zoo.emplace_back("even-a", dfa(2, 0, {0}, {1, 0, 0, 1}));
  // number of a's = 0 mod 3
  zoo.emplace_back("mod3-a", dfa(3, 0, {0}, {1, 0, 2, 1, 0, 2}));
  // contains at least one b
  zoo.emplace_back("has-b", dfa(2, 0, {1}, {0, 1, 1, 1}));
  // ends with a
  zoo.emplace_back("ends-a", dfa(2, 0, {1}, {1, 0, 1, 0}));
  // starts with b
  zoo.emplace_back("starts-b", dfa(3, 0, {1}, {2, 1, 1, 1, 2, 2}));
  // exactly "ab"
  zoo.emplace_back("just-ab", builtin_language("single_word", {0, 1}, ab));
  // even length
  zoo.emplace_back("even-len", dfa(2, 0, {0}, {1, 1, 0, 0}));
  return zoo;
}

}  // namespace vt
