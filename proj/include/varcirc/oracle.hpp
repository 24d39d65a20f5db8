#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "varcirc/dfa.hpp"

namespace varcirc {

/// A total, deterministic membership predicate on words over a fixed
/// alphabet. Backed by a DFA, a named predicate, a finite table, or any
/// closure (circuit families, block languages). `max_len` < 0 means
/// unbounded; table-backed oracles reject queries past their bound.
struct LanguageOracle {
  Alphabet alphabet;
  std::string name;
  int max_len = -1;
  std::function<bool(const Word&)> predicate;

  bool contains(const Word& w) const {
    if (max_len >= 0 && static_cast<int>(w.size()) > max_len)
      throw std::invalid_argument("oracle '" + name + "': undefined beyond length " +
                                  std::to_string(max_len));
    return predicate(w);
  }

  static LanguageOracle from_dfa(Dfa d, std::string name = "dfa") {
    auto shared = std::make_shared<Dfa>(std::move(d));
    return LanguageOracle{shared->alphabet, std::move(name), -1,
                          [shared](const Word& w) { return membership(*shared, w); }};
  }

  /// 1^*: every letter is "1".
  static LanguageOracle and_language() {
    return from_dfa(builtin_language("and", {}, binary_alphabet()), "and");
  }

  /// Even number of "1"s.
  static LanguageOracle parity_language() {
    return from_dfa(builtin_language("parity", {}, binary_alphabet()), "parity");
  }

  static LanguageOracle from_table(Alphabet a, std::map<Word, bool> table, int bound,
                                   std::string name = "table") {
    auto shared = std::make_shared<std::map<Word, bool>>(std::move(table));
    return LanguageOracle{std::move(a), std::move(name), bound, [shared](const Word& w) {
                            auto it = shared->find(w);
                            if (it == shared->end())
                              throw std::invalid_argument("table oracle: word not in table");
                            return it->second;
                          }};
  }
};

inline const LanguageOracle& oracle_of(const LanguageOracle& o) { return o; }
inline LanguageOracle oracle_of(const Dfa& d) { return LanguageOracle::from_dfa(d); }

}  // namespace varcirc
