#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace varcirc {

/// A word is a sequence of letter indices into some Alphabet.
using Word = std::vector<int>;

/// Finite ordered alphabet of distinct non-empty letter names.
/// The order of `letters` is fixed and observable: it drives canonical
/// serialization, BFS state orderings and length-lexicographic word
/// enumeration throughout the library.
struct Alphabet {
  std::vector<std::string> letters;

  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> ls) : letters(std::move(ls)) {
    validate();
  }

  int size() const { return static_cast<int>(letters.size()); }

  bool operator==(const Alphabet&) const = default;

  std::optional<int> index_of(const std::string& letter) const {
    for (int i = 0; i < size(); ++i)
      if (letters[i] == letter) return i;
    return std::nullopt;
  }

  const std::string& name(int i) const { return letters.at(i); }

  void validate() const {
    for (const auto& l : letters) {
      if (l.empty()) throw std::invalid_argument("alphabet: empty letter name");
      if (std::count(letters.begin(), letters.end(), l) != 1)
        throw std::invalid_argument("alphabet: duplicate letter '" + l + "'");
    }
  }
};

inline Alphabet binary_alphabet() { return Alphabet({"0", "1"}); }

/// Greedy longest-match tokenization of a word string; every letter name
/// must match at the current offset. Works for single-character alphabets
/// ("110") as well as product alphabets with letters like "(1,0)".
inline Word parse_word(const Alphabet& a, const std::string& text) {
  Word w;
  size_t pos = 0;
  while (pos < text.size()) {
    int best = -1;
    size_t best_len = 0;
    for (int i = 0; i < a.size(); ++i) {
      const auto& l = a.letters[i];
      if (l.size() > best_len && text.compare(pos, l.size(), l) == 0) {
        best = i;
        best_len = l.size();
      }
    }
    if (best < 0)
      throw std::invalid_argument("word: no letter of the alphabet matches at '" +
                                  text.substr(pos) + "'");
    w.push_back(best);
    pos += best_len;
  }
  return w;
}

inline std::string format_word(const Alphabet& a, const Word& w) {
  std::string out;
  for (int x : w) out += a.name(x);
  return out;
}

/// Enumerates all words over `a` of length <= max_len in length-lexicographic
/// order (letter 0 < letter 1 < ...) and calls `fn` on each. `fn` returning
/// false stops the enumeration early.
template <typename Fn>
void for_each_word(const Alphabet& a, int max_len, Fn&& fn) {
  const int k = a.size();
  for (int len = 0; len <= max_len; ++len) {
    Word w(len, 0);
    if (len == 0) {
      if (!fn(static_cast<const Word&>(w))) return;
      continue;
    }
    if (k == 0) return;  // no non-empty words over the empty alphabet
    while (true) {
      if (!fn(static_cast<const Word&>(w))) return;
      int i = len - 1;
      while (i >= 0 && w[i] == k - 1) {
        w[i] = 0;
        --i;
      }
      if (i < 0) break;
      ++w[i];
    }
  }
}

}  // namespace varcirc
