#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "varcirc/dfa.hpp"

namespace varcirc {

/// Finite monoid as an explicit multiplication table. Elements are anonymous
/// indices; element `identity` is two-sided neutral.
struct FiniteMonoid {
  int size = 1;
  int identity = 0;
  std::vector<int> table;  // size * size, row-major: table[x*size+y] = x*y

  int mul(int x, int y) const { return table[static_cast<size_t>(x) * size + y]; }

  int pow(int x, uint64_t n) const {
    int acc = identity;
    int base = x;
    while (n > 0) {
      if (n & 1) acc = mul(acc, base);
      base = mul(base, base);
      n >>= 1;
    }
    return acc;
  }

  bool is_idempotent(int x) const { return mul(x, x) == x; }

  bool operator==(const FiniteMonoid&) const = default;

  /// Exhaustive check of the monoid laws (<= size^3 products).
  void validate() const {
    if (size < 1) throw std::invalid_argument("monoid: size must be >= 1");
    if (identity < 0 || identity >= size)
      throw std::invalid_argument("monoid: identity out of range");
    if (table.size() != static_cast<size_t>(size) * size)
      throw std::invalid_argument("monoid: table size mismatch");
    for (int t : table)
      if (t < 0 || t >= size) throw std::invalid_argument("monoid: product out of range");
    for (int x = 0; x < size; ++x)
      if (mul(identity, x) != x || mul(x, identity) != x)
        throw std::invalid_argument("monoid: identity law fails");
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y)
        for (int z = 0; z < size; ++z)
          if (mul(mul(x, y), z) != mul(x, mul(y, z)))
            throw std::invalid_argument("monoid: associativity fails");
  }

  bool commutative() const {
    for (int x = 0; x < size; ++x)
      for (int y = x + 1; y < size; ++y)
        if (mul(x, y) != mul(y, x)) return false;
    return true;
  }
};

/// Assignment of a monoid element to every letter of an alphabet; words
/// evaluate by the left-to-right table product starting at the identity.
struct MonoidMorphism {
  Alphabet source;
  FiniteMonoid target;
  std::vector<int> image;  // indexed by letter

  void validate() const {
    source.validate();
    target.validate();
    if (image.size() != static_cast<size_t>(source.size()))
      throw std::invalid_argument("monoid morphism: image not total on the alphabet");
    for (int e : image)
      if (e < 0 || e >= target.size)
        throw std::invalid_argument("monoid morphism: image element out of range");
  }

  int apply(const Word& w) const {
    int acc = target.identity;
    for (int x : w) acc = target.mul(acc, image[x]);
    return acc;
  }
};

/// Transition monoid of a DFA together with the generating morphism and the
/// state action of every element. For a minimal complete DFA this is the
/// syntactic monoid and the syntactic morphism.
struct DfaMonoid {
  FiniteMonoid monoid;
  MonoidMorphism morphism;
  std::vector<std::vector<int>> action;  // element -> state transformation
  Dfa dfa;                               // automaton the action refers to

  /// Whether the words in the class of element e belong to the language.
  /// Well-defined on syntactic monoids: classes are two-sided-context classes.
  bool element_accepts(int e) const { return dfa.accepting[action[e][dfa.initial]]; }
};

/// Monoid of distinct state transformations generated by the letters, closed
/// under composition. Element 0 is the identity transformation; the rest are
/// numbered in BFS discovery order (by shortest generating word, letters in
/// alphabet order).
inline DfaMonoid transition_monoid(const Dfa& d) {
  d.validate();
  const int n = d.state_count;
  const int k = d.alphabet.size();

  auto letter_transform = [&](int a) {
    std::vector<int> t(n);
    for (int q = 0; q < n; ++q) t[q] = d.step(q, a);
    return t;
  };
  // t1 followed by t2, i.e. the transformation of a word uv from those of u, v
  auto compose = [&](const std::vector<int>& t1, const std::vector<int>& t2) {
    std::vector<int> t(n);
    for (int q = 0; q < n; ++q) t[q] = t2[t1[q]];
    return t;
  };

  std::vector<std::vector<int>> elems;
  std::map<std::vector<int>, int> index;
  std::vector<int> ident(n);
  for (int q = 0; q < n; ++q) ident[q] = q;
  elems.push_back(ident);
  index.emplace(ident, 0);

  std::vector<int> gen(k);
  for (int a = 0; a < k; ++a) {
    auto t = letter_transform(a);
    auto it = index.find(t);
    if (it == index.end()) {
      index.emplace(t, static_cast<int>(elems.size()));
      gen[a] = static_cast<int>(elems.size());
      elems.push_back(std::move(t));
    } else {
      gen[a] = it->second;
    }
  }
  for (size_t h = 0; h < elems.size(); ++h)
    for (int a = 0; a < k; ++a) {
      auto t = compose(elems[h], elems[gen[a]]);
      if (!index.count(t)) {
        index.emplace(t, static_cast<int>(elems.size()));
        elems.push_back(std::move(t));
      }
    }

  const int m = static_cast<int>(elems.size());
  FiniteMonoid mon;
  mon.size = m;
  mon.identity = 0;
  mon.table.assign(static_cast<size_t>(m) * m, 0);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      mon.table[static_cast<size_t>(x) * m + y] = index.at(compose(elems[x], elems[y]));

  DfaMonoid out;
  out.monoid = std::move(mon);
  out.morphism = MonoidMorphism{d.alphabet, out.monoid, gen};
  out.action = std::move(elems);
  out.dfa = d;
  return out;
}

/// Syntactic monoid and syntactic morphism of the language of d, obtained as
/// the transition monoid of the canonical minimal DFA.
inline DfaMonoid syntactic_monoid(const Dfa& d) { return transition_monoid(minimize(d)); }

/// The unique idempotent in the cyclic sub-semigroup generated by x: detect
/// the cycle x^i = x^{i+p} and return x^k for the k in the cycle with p | k.
/// This is the stabilized value of x^{n!} for large n.
inline int omega_power(const FiniteMonoid& m, int x) {
  if (x < 0 || x >= m.size) throw std::invalid_argument("omega_power: element out of range");
  std::map<int, int> seen;  // element -> exponent of first occurrence
  int cur = x;
  int e = 1;
  while (!seen.count(cur)) {
    seen.emplace(cur, e);
    cur = m.mul(cur, x);
    ++e;
  }
  const int start = seen.at(cur);   // cycle entry exponent
  const int period = e - start;
  int k = ((start + period - 1) / period) * period;  // smallest multiple of period >= start
  return m.pow(x, static_cast<uint64_t>(k));
}

}  // namespace varcirc
