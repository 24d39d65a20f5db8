#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "varcirc/alphabet.hpp"

namespace varcirc {

/// Complete deterministic finite automaton. Every regular language in the
/// library is represented by one of these; `minimize` produces the canonical
/// form used as the equality witness for languages.
struct Dfa {
  Alphabet alphabet;
  int state_count = 0;
  int initial = 0;
  std::vector<bool> accepting;       // indexed by state
  std::vector<int> transition;       // state_count * |alphabet|, row-major

  int step(int state, int letter) const {
    return transition[static_cast<size_t>(state) * alphabet.size() + letter];
  }
  int& step_ref(int state, int letter) {
    return transition[static_cast<size_t>(state) * alphabet.size() + letter];
  }

  int run(int state, const Word& w) const {
    for (int x : w) state = step(state, x);
    return state;
  }

  bool operator==(const Dfa&) const = default;

  void validate() const {
    alphabet.validate();
    if (state_count < 1) throw std::invalid_argument("dfa: state_count must be >= 1");
    if (initial < 0 || initial >= state_count)
      throw std::invalid_argument("dfa: initial state out of range");
    if (static_cast<int>(accepting.size()) != state_count)
      throw std::invalid_argument("dfa: accepting vector size mismatch");
    if (transition.size() != static_cast<size_t>(state_count) * alphabet.size())
      throw std::invalid_argument("dfa: transition table is not total");
    for (int t : transition)
      if (t < 0 || t >= state_count)
        throw std::invalid_argument("dfa: transition target out of range");
  }
};

inline bool membership(const Dfa& d, const Word& w) {
  for (int x : w)
    if (x < 0 || x >= d.alphabet.size())
      throw std::invalid_argument("membership: letter index outside the alphabet");
  return d.accepting[d.run(d.initial, w)];
}

/// Canonical minimal complete DFA for the same language: unreachable states
/// dropped, Moore refinement, states renumbered by BFS from the initial state
/// in alphabet order. Equal languages over equal alphabets yield identical
/// structs, so == on minimized DFAs decides language equality.
inline Dfa minimize(const Dfa& d) {
  d.validate();
  const int k = d.alphabet.size();

  // reachable part, BFS order
  std::vector<int> order;
  std::vector<int> idx(d.state_count, -1);
  order.push_back(d.initial);
  idx[d.initial] = 0;
  for (size_t h = 0; h < order.size(); ++h)
    for (int a = 0; a < k; ++a) {
      int t = d.step(order[h], a);
      if (idx[t] < 0) {
        idx[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  const int n = static_cast<int>(order.size());

  // Moore partition refinement on the reachable part
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = d.accepting[order[i]] ? 1 : 0;
  while (true) {
    std::map<std::vector<int>, int> sig_to_class;
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[i]);
      for (int a = 0; a < k; ++a) sig.push_back(cls[idx[d.step(order[i], a)]]);
      auto [it, inserted] = sig_to_class.emplace(std::move(sig), static_cast<int>(sig_to_class.size()));
      next[i] = it->second;
    }
    if (next == cls) break;
    cls = std::move(next);
  }

  // quotient automaton, renumbered by BFS from the initial class
  const int init_cls = cls[0];
  std::vector<int> rep_of_class(n, -1);  // class -> representative reachable-index
  for (int i = 0; i < n; ++i)
    if (rep_of_class[cls[i]] < 0) rep_of_class[cls[i]] = i;

  std::vector<int> renum(n, -1);  // class -> final state number
  std::vector<int> bfs;
  renum[init_cls] = 0;
  bfs.push_back(init_cls);
  for (size_t h = 0; h < bfs.size(); ++h) {
    int c = bfs[h];
    int rep = rep_of_class[c];
    for (int a = 0; a < k; ++a) {
      int tc = cls[idx[d.step(order[rep], a)]];
      if (renum[tc] < 0) {
        renum[tc] = static_cast<int>(bfs.size());
        bfs.push_back(tc);
      }
    }
  }
  const int m = static_cast<int>(bfs.size());

  Dfa out;
  out.alphabet = d.alphabet;
  out.state_count = m;
  out.initial = 0;
  out.accepting.assign(m, false);
  out.transition.assign(static_cast<size_t>(m) * k, 0);
  for (int c : bfs) {
    int q = renum[c];
    int rep = rep_of_class[c];
    out.accepting[q] = d.accepting[order[rep]];
    for (int a = 0; a < k; ++a)
      out.step_ref(q, a) = renum[cls[idx[d.step(order[rep], a)]]];
  }
  return out;
}

namespace detail {
inline void require_letters_01(const Alphabet& a) {
  if (!a.index_of("0") || !a.index_of("1"))
    throw std::invalid_argument("builtin_language: alphabet must contain letters '0' and '1'");
}
}  // namespace detail

/// Named stock languages. `and` = all letters are 1; `or` = at least one 1;
/// `mod(p)` = number of 1s congruent to 0 mod p; `parity` = mod(2);
/// `single_word(i...)` = exactly the word with those letter indices.
inline Dfa builtin_language(const std::string& name, const std::vector<int>& params,
                            const Alphabet& alphabet) {
  alphabet.validate();
  const int k = alphabet.size();
  Dfa d;
  d.alphabet = alphabet;

  auto fill_total = [&](int states) {
    d.state_count = states;
    d.accepting.assign(states, false);
    d.transition.assign(static_cast<size_t>(states) * k, 0);
  };

  if (name == "all" || name == "none") {
    fill_total(1);
    d.accepting[0] = (name == "all");
    for (int a = 0; a < k; ++a) d.step_ref(0, a) = 0;
  } else if (name == "and") {
    detail::require_letters_01(alphabet);
    const int one = *alphabet.index_of("1");
    fill_total(2);
    d.accepting[0] = true;
    for (int a = 0; a < k; ++a) {
      d.step_ref(0, a) = (a == one) ? 0 : 1;
      d.step_ref(1, a) = 1;
    }
  } else if (name == "or") {
    detail::require_letters_01(alphabet);
    const int one = *alphabet.index_of("1");
    fill_total(2);
    d.accepting[1] = true;
    for (int a = 0; a < k; ++a) {
      d.step_ref(0, a) = (a == one) ? 1 : 0;
      d.step_ref(1, a) = 1;
    }
  } else if (name == "mod" || name == "parity") {
    int p = 2;
    if (name == "mod") {
      if (params.empty()) throw std::invalid_argument("builtin_language: mod needs a modulus");
      p = params[0];
      if (p < 1) throw std::invalid_argument("builtin_language: mod needs modulus >= 1");
    }
    detail::require_letters_01(alphabet);
    const int one = *alphabet.index_of("1");
    fill_total(p);
    d.accepting[0] = true;
    for (int q = 0; q < p; ++q)
      for (int a = 0; a < k; ++a) d.step_ref(q, a) = (a == one) ? (q + 1) % p : q;
  } else if (name == "single_word") {
    const int len = static_cast<int>(params.size());
    for (int x : params)
      if (x < 0 || x >= k)
        throw std::invalid_argument("builtin_language: single_word letter index out of range");
    fill_total(len + 2);  // chain + sink
    const int sink = len + 1;
    d.accepting[len] = true;
    for (int q = 0; q <= len; ++q)
      for (int a = 0; a < k; ++a)
        d.step_ref(q, a) = (q < len && a == params[q]) ? q + 1 : sink;
    for (int a = 0; a < k; ++a) d.step_ref(sink, a) = sink;
  } else {
    throw std::invalid_argument("builtin_language: unknown tag '" + name + "'");
  }
  return minimize(d);
}

enum class LangOp { Union, Intersection, Complement, Difference };

/// Boolean combinations via the product construction (complement flips the
/// accepting set of a complete DFA). Result is always minimized.
inline Dfa combine(const Dfa& lhs, const std::optional<Dfa>& rhs, LangOp op) {
  lhs.validate();
  if (op == LangOp::Complement) {
    Dfa out = lhs;
    for (int q = 0; q < out.state_count; ++q) out.accepting[q] = !out.accepting[q];
    return minimize(out);
  }
  if (!rhs) throw std::invalid_argument("combine: binary operation needs two languages");
  rhs->validate();
  if (lhs.alphabet != rhs->alphabet)
    throw std::invalid_argument("combine: alphabet mismatch");
  const int k = lhs.alphabet.size();
  const int n1 = lhs.state_count, n2 = rhs->state_count;

  Dfa out;
  out.alphabet = lhs.alphabet;
  out.state_count = n1 * n2;
  out.initial = lhs.initial * n2 + rhs->initial;
  out.accepting.assign(n1 * n2, false);
  out.transition.assign(static_cast<size_t>(n1) * n2 * k, 0);
  for (int p = 0; p < n1; ++p)
    for (int q = 0; q < n2; ++q) {
      bool a1 = lhs.accepting[p], a2 = rhs->accepting[q];
      bool acc = false;
      switch (op) {
        case LangOp::Union: acc = a1 || a2; break;
        case LangOp::Intersection: acc = a1 && a2; break;
        case LangOp::Difference: acc = a1 && !a2; break;
        case LangOp::Complement: break;
      }
      out.accepting[p * n2 + q] = acc;
      for (int a = 0; a < k; ++a)
        out.step_ref(p * n2 + q, a) = lhs.step(p, a) * n2 + rhs->step(q, a);
    }
  return minimize(out);
}

inline Dfa lang_union(const Dfa& a, const Dfa& b) { return combine(a, b, LangOp::Union); }
inline Dfa lang_intersection(const Dfa& a, const Dfa& b) { return combine(a, b, LangOp::Intersection); }
inline Dfa lang_difference(const Dfa& a, const Dfa& b) { return combine(a, b, LangOp::Difference); }
inline Dfa lang_complement(const Dfa& a) { return combine(a, std::nullopt, LangOp::Complement); }

inline bool is_empty_language(const Dfa& d) {
  Dfa m = minimize(d);
  return m.state_count == 1 && !m.accepting[0];
}

/// Canonical text form of a minimized DFA, used to order and deduplicate
/// languages deterministically.
inline std::string canonical_key(const Dfa& minimized) {
  std::string s;
  s += std::to_string(minimized.state_count);
  s += '|';
  for (int q = 0; q < minimized.state_count; ++q) s += minimized.accepting[q] ? '1' : '0';
  s += '|';
  for (int t : minimized.transition) {
    s += std::to_string(t);
    s += ',';
  }
  return s;
}

/// One two-sided quotient x^{-1} L y^{-1} together with witness context words.
struct QuotientWitness {
  Dfa language;  // minimized canonical form
  Word x;
  Word y;
};

/// All distinct languages x^{-1} L y^{-1}. On the minimal DFA these are the
/// automata (start = state reached by x, accepting = preimage of F under y);
/// both coordinates are saturated letter-by-letter. Output is ordered by
/// canonical key.
inline std::vector<QuotientWitness> two_sided_quotients_with_witnesses(const Dfa& d) {
  Dfa m = minimize(d);
  const int k = m.alphabet.size();
  const int n = m.state_count;

  // start states reachable via some x, with a witness word each
  std::vector<Word> x_of_state(n);
  std::vector<bool> seen(n, false);
  std::vector<int> starts;
  seen[m.initial] = true;
  starts.push_back(m.initial);
  for (size_t h = 0; h < starts.size(); ++h)
    for (int a = 0; a < k; ++a) {
      int t = m.step(starts[h], a);
      if (!seen[t]) {
        seen[t] = true;
        x_of_state[t] = x_of_state[starts[h]];
        x_of_state[t].push_back(a);
        starts.push_back(t);
      }
    }

  // accepting sets {q | delta(q, y) in F}, saturated by prepending letters
  std::map<std::vector<bool>, Word> acc_sets;
  std::vector<std::vector<bool>> work;
  std::vector<bool> f(m.accepting.begin(), m.accepting.end());
  acc_sets.emplace(f, Word{});
  work.push_back(f);
  for (size_t h = 0; h < work.size(); ++h) {
    std::vector<bool> cur = work[h];
    Word ycur = acc_sets[cur];
    for (int a = 0; a < k; ++a) {
      std::vector<bool> pre(n, false);
      for (int q = 0; q < n; ++q) pre[q] = cur[m.step(q, a)];
      if (!acc_sets.count(pre)) {
        Word y;
        y.push_back(a);
        y.insert(y.end(), ycur.begin(), ycur.end());
        acc_sets.emplace(pre, y);
        work.push_back(pre);
      }
    }
  }

  std::map<std::string, QuotientWitness> dedup;
  for (int s : starts)
    for (const auto& [acc, y] : acc_sets) {
      Dfa q = m;
      q.initial = s;
      q.accepting = acc;
      Dfa qmin = minimize(q);
      std::string key = canonical_key(qmin);
      if (!dedup.count(key)) dedup.emplace(key, QuotientWitness{std::move(qmin), x_of_state[s], y});
    }

  std::vector<QuotientWitness> out;
  out.reserve(dedup.size());
  for (auto& [key, qw] : dedup) out.push_back(std::move(qw));
  return out;
}

inline std::vector<Dfa> two_sided_quotients(const Dfa& d) {
  std::vector<Dfa> out;
  for (auto& qw : two_sided_quotients_with_witnesses(d)) out.push_back(std::move(qw.language));
  return out;
}

/// The language {w | x w y in L}, as a canonical minimal DFA.
inline Dfa context_quotient(const Dfa& d, const Word& x, const Word& y) {
  Dfa m = minimize(d);
  Dfa q = m;
  q.initial = m.run(m.initial, x);
  for (int s = 0; s < m.state_count; ++s) q.accepting[s] = m.accepting[m.run(s, y)];
  return minimize(q);
}

/// Morphism between free monoids, given by letter images.
struct FreeMorphism {
  Alphabet source;
  Alphabet target;
  std::vector<Word> image;  // indexed by source letter

  void validate() const {
    source.validate();
    target.validate();
    if (image.size() != static_cast<size_t>(source.size()))
      throw std::invalid_argument("free morphism: image not total on the source alphabet");
    for (const auto& w : image)
      for (int x : w)
        if (x < 0 || x >= target.size())
          throw std::invalid_argument("free morphism: image letter outside target alphabet");
  }

  Word apply(const Word& w) const {
    Word out;
    for (int x : w) out.insert(out.end(), image[x].begin(), image[x].end());
    return out;
  }
};

/// h^{-1}(L(d)) over the morphism's source alphabet: the a-transition is the
/// composite of d's transitions along h(a).
inline Dfa inverse_morphism_image(const Dfa& d, const FreeMorphism& h) {
  d.validate();
  h.validate();
  if (h.target != d.alphabet)
    throw std::invalid_argument("inverse_morphism_image: morphism target must match the DFA alphabet");
  Dfa out;
  out.alphabet = h.source;
  out.state_count = d.state_count;
  out.initial = d.initial;
  out.accepting = d.accepting;
  out.transition.assign(static_cast<size_t>(d.state_count) * h.source.size(), 0);
  for (int q = 0; q < d.state_count; ++q)
    for (int a = 0; a < h.source.size(); ++a)
      out.step_ref(q, a) = d.run(q, h.image[a]);
  return minimize(out);
}

/// Letter permutation closure test: on the minimal DFA, L is commutative iff
/// every pair of letter transformations commutes (the transition monoid of
/// the minimal DFA is the syntactic monoid).
inline bool is_commutative(const Dfa& d) {
  Dfa m = minimize(d);
  const int k = m.alphabet.size();
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int q = 0; q < m.state_count; ++q)
        if (m.step(m.step(q, a), b) != m.step(m.step(q, b), a)) return false;
  return true;
}

}  // namespace varcirc
