#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "varcirc/catalog.hpp"
#include "varcirc/circuit.hpp"
#include "varcirc/oracle.hpp"
#include "varcirc/partition.hpp"
#include "varcirc/term.hpp"

namespace varcirc {

/// A position addressed by its distance from the start and from the end:
/// (i, n) means position i in words of length i + n + 1.
struct PositionPair {
  long i = 0;
  long n = 0;

  long word_length() const { return i + n + 1; }
  bool operator==(const PositionPair&) const = default;
};

/// Replaces the letters of w at the positions p by the letters of s, when the
/// input is a correct substitution (|s| = |p|, every pair addresses a word of
/// length |w|, first components strictly increasing below |w|); otherwise w
/// is returned unchanged.
inline Word substitute(const Word& w, const Word& s, const std::vector<PositionPair>& p) {
  if (s.size() != p.size()) return w;
  const long m = static_cast<long>(w.size());
  long prev = -1;
  for (const auto& pp : p) {
    if (pp.i + pp.n != m - 1) return w;
    if (pp.i <= prev || pp.i >= m) return w;
    prev = pp.i;
  }
  Word out = w;
  for (size_t t = 0; t < p.size(); ++t) out[p[t].i] = s[t];
  return out;
}

/// Whether exchanging the letters at two positions can never change
/// membership. Pairs addressing different word lengths are unrelated
/// constraints and count as respected; otherwise every word of the addressed
/// length is checked.
inline bool swap_respects(const LanguageOracle& lang, const PositionPair& a,
                          const PositionPair& b) {
  if (a.word_length() != b.word_length()) return true;
  const int len = static_cast<int>(a.word_length());
  const int pi = static_cast<int>(a.i), pj = static_cast<int>(b.i);
  bool ok = true;
  for_each_word(lang.alphabet, len, [&](const Word& w) {
    if (static_cast<int>(w.size()) != len) return true;
    Word sw = w;
    std::swap(sw[pi], sw[pj]);
    if (lang.contains(w) != lang.contains(sw)) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

/// A finite-index position partition, a monoid morphism on the base alphabet
/// and a length threshold: the hypothesis that per-class images determine
/// membership for words of length >= n0.
struct Candidate {
  PartitionSpec partition;
  MonoidMorphism morphism;
  int n0 = 0;
  std::string label;  // for reports

  void validate() const {
    partition.validate();
    morphism.validate();
    if (n0 < 0) throw std::invalid_argument("candidate: threshold must be a natural");
  }
};

/// Searches for equal-length words with identical per-class morphism images
/// but different membership; returns the length-lexicographically first such
/// pair, or nothing. Words of each length are grouped by their image vector.
inline std::optional<std::pair<Word, Word>> candidate_counterexample(const LanguageOracle& lang,
                                                                     const Candidate& c,
                                                                     int max_len) {
  c.validate();
  if (max_len < c.n0)
    throw std::invalid_argument("candidate_counterexample: max_len must be >= the threshold");
  if (c.morphism.source != lang.alphabet)
    throw std::invalid_argument("candidate_counterexample: morphism alphabet mismatch");
  const int nc = c.partition.class_count();

  for (int len = c.n0; len <= max_len; ++len) {
    // first member / non-member per image vector, in lexicographic word order
    std::map<std::vector<int>, std::pair<std::optional<Word>, std::optional<Word>>> groups;
    for_each_word(lang.alphabet, len, [&](const Word& w) {
      if (static_cast<int>(w.size()) != len) return true;
      std::vector<int> key(nc);
      for (int k = 0; k < nc; ++k) key[k] = c.morphism.apply(extract_class(c.partition, w, k));
      auto& [first_in, first_out] = groups[key];
      auto& slot = lang.contains(w) ? first_in : first_out;
      if (!slot) slot = w;
      return true;
    });
    // (s, t): s is the lex-first word of a mixed group, t the first word of
    // the group with the opposite membership; the smallest s wins
    std::optional<std::pair<Word, Word>> best;
    for (const auto& [key, firsts] : groups) {
      const auto& [first_in, first_out] = firsts;
      if (!first_in || !first_out) continue;
      std::pair<Word, Word> pair = *first_in < *first_out
                                       ? std::make_pair(*first_in, *first_out)
                                       : std::make_pair(*first_out, *first_in);
      if (!best || pair < *best) best = pair;
    }
    if (best) return best;
  }
  return std::nullopt;
}

/// Bounds for enumerating position partitions from the atom grammar.
struct PartitionBounds {
  int max_classes = 2;
  int max_modulus = 2;
  int max_threshold = 2;
};

/// All partitions with at most max_classes classes whose non-final predicates
/// are threshold or residue atoms within the bounds, deduplicated by their
/// class function on [0, grid_extent]^2. Deterministic order.
inline std::vector<PartitionSpec> enumerate_partitions(const PartitionBounds& b,
                                                       int grid_extent) {
  std::vector<PosPred> atoms;
  for (int c = 1; c <= b.max_threshold; ++c) atoms.push_back(PosPred::i_less(c));
  for (int c = 1; c <= b.max_threshold; ++c) atoms.push_back(PosPred::j_less(c));
  for (int m = 2; m <= b.max_modulus; ++m)
    for (int r = 0; r < m; ++r) atoms.push_back(PosPred::i_mod(m, r));
  for (int m = 2; m <= b.max_modulus; ++m)
    for (int r = 0; r < m; ++r) atoms.push_back(PosPred::j_mod(m, r));

  auto grid_key = [&](const PartitionSpec& p) {
    std::string key;
    for (long i = 0; i <= grid_extent; ++i)
      for (long j = 0; j <= grid_extent; ++j) {
        key += static_cast<char>('0' + p.class_of(i, j));
      }
    return key;
  };

  std::vector<PartitionSpec> out;
  std::map<std::string, bool> seen;
  auto push = [&](PartitionSpec p) {
    auto key = grid_key(p);
    if (!seen.count(key)) {
      seen.emplace(std::move(key), true);
      out.push_back(std::move(p));
    }
  };

  push(PartitionSpec::single_class());
  if (b.max_classes >= 2) {
    // lists of non-final atoms, by class count then atom order
    std::vector<std::vector<int>> stack{{}};
    for (int depth = 1; depth < b.max_classes; ++depth) {
      std::vector<std::vector<int>> next;
      for (const auto& prefix : stack)
        for (int a = 0; a < static_cast<int>(atoms.size()); ++a) {
          auto ext = prefix;
          ext.push_back(a);
          PartitionSpec p;
          for (int idx : ext) p.classes.push_back(atoms[idx]);
          p.classes.push_back(PosPred::truth());
          push(std::move(p));
          next.push_back(std::move(ext));
        }
      stack = std::move(next);
    }
  }
  return out;
}

struct CandidateOutcome {
  Candidate candidate;
  bool refuted = false;
  Word witness_s;
  Word witness_t;
};

struct RefutationReport {
  std::string target;
  std::vector<Identity> identities;
  PartitionBounds bounds;
  int max_len = 0;
  std::vector<std::string> skipped_monoids;  // catalog entries failing an identity
  std::vector<CandidateOutcome> outcomes;
  bool vacuous = false;        // no candidate was admitted
  bool all_refuted = false;    // every admitted candidate has a witness

  bool evidenced() const { return all_refuted && !vacuous; }
};

namespace detail {

inline void revalidate_witness(const LanguageOracle& lang, const Candidate& c, const Word& s,
                               const Word& t) {
  if (s.size() != t.size() || static_cast<int>(s.size()) < c.n0)
    throw std::logic_error("refutation witness: length constraint violated");
  for (int k = 0; k < c.partition.class_count(); ++k)
    if (c.morphism.apply(extract_class(c.partition, s, k)) !=
        c.morphism.apply(extract_class(c.partition, t, k)))
      throw std::logic_error("refutation witness: per-class images differ");
  if (lang.contains(s) == lang.contains(t))
    throw std::logic_error("refutation witness: memberships agree");
}

}  // namespace detail

/// Tries to refute every candidate within the bounds: all partitions from the
/// atom grammar, all letter assignments into every admitted catalog monoid,
/// and thresholds 0..3. A candidate is refuted by a re-validated witness
/// pair. The summary claims evidence within the stated bounds only.
inline RefutationReport refute_candidates(const LanguageOracle& lang,
                                          const std::vector<Identity>& identities,
                                          const PartitionBounds& bounds,
                                          const std::vector<NamedMonoid>& catalog, int max_len) {
  RefutationReport report;
  report.target = lang.name;
  report.identities = identities;
  report.bounds = bounds;
  report.max_len = max_len;

  std::vector<NamedMonoid> admitted;
  for (const auto& nm : catalog) {
    nm.monoid.validate();
    bool ok = true;
    for (const auto& id : identities)
      if (!monoid_satisfies(nm.monoid, id)) {
        report.skipped_monoids.push_back(nm.name + " fails " + id.to_string());
        ok = false;
        break;
      }
    if (ok) admitted.push_back(nm);
  }

  const auto partitions = enumerate_partitions(bounds, max_len);
  const int letters = lang.alphabet.size();

  for (const auto& partition : partitions)
    for (const auto& nm : admitted) {
      // all letter assignments, odometer over letters in alphabet order
      std::vector<int> image(letters, 0);
      while (true) {
        MonoidMorphism h{lang.alphabet, nm.monoid, image};
        // witnesses are shared across thresholds: precompute per length
        std::optional<std::pair<Word, Word>> first_witness;
        for (int n0 = 0; n0 <= 3; ++n0) {
          Candidate c{partition, h, n0, nm.name};
          if (!first_witness || static_cast<int>(first_witness->first.size()) < n0)
            first_witness = candidate_counterexample(lang, c, max_len);
          CandidateOutcome outcome;
          outcome.candidate = c;
          if (first_witness) {
            detail::revalidate_witness(lang, c, first_witness->first, first_witness->second);
            outcome.refuted = true;
            outcome.witness_s = first_witness->first;
            outcome.witness_t = first_witness->second;
          }
          report.outcomes.push_back(std::move(outcome));
        }
        int pos = letters;
        while (pos > 0 && image[pos - 1] == nm.monoid.size - 1) image[--pos] = 0;
        if (pos == 0) break;
        ++image[pos - 1];
      }
    }

  report.vacuous = report.outcomes.empty();
  report.all_refuted = true;
  for (const auto& o : report.outcomes)
    if (!o.refuted) report.all_refuted = false;
  return report;
}

/// Renders the report as a plain-text table.
inline std::string render_report_text(const RefutationReport& r) {
  std::ostringstream os;
  os << "target: " << r.target << "\n";
  os << "identities:";
  for (const auto& id : r.identities) os << " [" << id.to_string() << "]";
  os << "\n";
  os << "bounds: classes<=" << r.bounds.max_classes << " modulus<=" << r.bounds.max_modulus
     << " threshold<=" << r.bounds.max_threshold << " max_len=" << r.max_len << "\n";
  for (const auto& s : r.skipped_monoids) os << "skipped: " << s << "\n";
  os << "candidates: " << r.outcomes.size() << "\n";
  for (const auto& o : r.outcomes) {
    os << "  " << o.candidate.partition.to_string() << "  " << o.candidate.label << " h=(";
    for (size_t a = 0; a < o.candidate.morphism.image.size(); ++a)
      os << (a ? "," : "") << o.candidate.morphism.source.name(static_cast<int>(a)) << "->"
         << o.candidate.morphism.image[a];
    os << ") n0=" << o.candidate.n0 << "  ";
    if (o.refuted)
      os << "refuted by ("
         << format_word(o.candidate.morphism.source, o.witness_s) << ", "
         << format_word(o.candidate.morphism.source, o.witness_t) << ")";
    else
      os << "UNREFUTED";
    os << "\n";
  }
  if (r.vacuous)
    os << "summary: vacuous (no admitted candidates)\n";
  else
    os << "summary: " << (r.all_refuted ? "all candidates refuted (evidence within stated bounds)"
                                        : "separation NOT evidenced")
       << "\n";
  return os.str();
}

/// The candidate a layered family semantically guarantees: its own partition
/// with the morphism collecting, per layer gate and class, the syntactic
/// image of the letter's encoded bits. Equal per-class images then force
/// equal gate values, so this candidate can never be refuted.
inline Candidate candidate_from_family(const LayeredCircuitFamily& fam) {
  fam.validate();
  const int nc = fam.partition.class_count();

  std::vector<FiniteMonoid> components;
  std::vector<DfaMonoid> syntactic;
  syntactic.reserve(fam.layer.size());
  for (const auto& g : fam.layer) syntactic.push_back(syntactic_monoid(fam.gate_types[g.gate_type].language));
  for (size_t gi = 0; gi < fam.layer.size(); ++gi)
    for (int k = 0; k < nc; ++k) components.push_back(syntactic[gi].monoid);

  std::vector<std::vector<int>> generators;
  for (int a = 0; a < fam.alphabet.size(); ++a) {
    std::vector<int> tuple;
    for (size_t gi = 0; gi < fam.layer.size(); ++gi)
      for (int k = 0; k < nc; ++k) {
        Word bits;
        for (const auto& s : fam.layer[gi].wiring[k])
          bits.push_back(letter_set_contains(s, a) ? 1 : 0);
        tuple.push_back(syntactic[gi].morphism.apply(bits));
      }
    generators.push_back(std::move(tuple));
  }

  auto [monoid, gen_idx] = generated_submonoid(components, generators);
  Candidate c;
  c.partition = fam.partition;
  c.morphism = MonoidMorphism{fam.alphabet, std::move(monoid), std::move(gen_idx)};
  c.n0 = 0;
  c.label = "family-induced";
  return c;
}

/// Exhaustive search over single-layer circuits at one fixed input length:
/// each of k gates picks a type from the base and wires every position with
/// one letter-set (or none); the top combiner ranges over all Boolean
/// functions of the gate bits. Space: (|base| * (2^|A|+1)^n)^k * 2^(2^k).
inline std::optional<Circuit> brute_force_circuit_search(const LanguageOracle& target,
                                                         const std::vector<GateType>& base,
                                                         int k, int multiplicity, int n) {
  if (target.alphabet.size() > 2 || k < 1 || k > 2 || multiplicity != 1 || n < 0 || n > 8)
    throw std::invalid_argument(
        "brute_force_circuit_search: bounds exceeded (|A|<=2, k<=2, multiplicity=1, n<=8)");
  if (base.empty()) return std::nullopt;
  const int letters = target.alphabet.size();

  // all words of length n, lexicographic
  std::vector<Word> words;
  for_each_word(target.alphabet, n, [&](const Word& w) {
    if (static_cast<int>(w.size()) == n) words.push_back(w);
    return true;
  });
  std::vector<char> want(words.size());
  for (size_t wi = 0; wi < words.size(); ++wi) want[wi] = target.contains(words[wi]) ? 1 : 0;

  // letter-set choices per position: none, then subsets in mask order
  std::vector<std::optional<LetterSet>> choices;
  choices.emplace_back(std::nullopt);
  for (int mask = 0; mask < (1 << letters); ++mask) {
    std::vector<int> s;
    for (int a = 0; a < letters; ++a)
      if (mask & (1 << a)) s.push_back(a);
    choices.emplace_back(make_letter_set(std::move(s)));
  }
  const long per_pos = static_cast<long>(choices.size());

  long wirings = 1;
  for (int i = 0; i < n; ++i) wirings *= per_pos;

  struct GateChoice {
    int type;
    long wiring_code;
    std::vector<char> bits;  // value on each word
  };

  // precompute the bit vector of every (type, wiring) pair
  std::vector<GateChoice> gate_choices;
  gate_choices.reserve(static_cast<size_t>(base.size()) * wirings);
  for (int t = 0; t < static_cast<int>(base.size()); ++t)
    for (long code = 0; code < wirings; ++code) {
      std::vector<int> pick(n);
      long rest = code;
      for (int i = 0; i < n; ++i) {
        pick[i] = static_cast<int>(rest % per_pos);
        rest /= per_pos;
      }
      GateChoice gc{t, code, std::vector<char>(words.size())};
      for (size_t wi = 0; wi < words.size(); ++wi) {
        std::vector<int> bits;
        for (int i = 0; i < n; ++i)
          if (choices[pick[i]])
            bits.push_back(letter_set_contains(*choices[pick[i]], words[wi][i]) ? 1 : 0);
        gc.bits[wi] = base[t].fires(bits) ? 1 : 0;
      }
      gate_choices.push_back(std::move(gc));
    }

  auto build_circuit = [&](const std::vector<const GateChoice*>& picked,
                           const std::vector<int>& top_value) {
    Circuit c;
    c.alphabet = target.alphabet;
    c.input_count = n;
    c.gate_types = base;
    detail::CircuitBuilder b;
    b.c = std::move(c);
    std::vector<int> gate_nodes;
    for (const auto* gc : picked) {
      std::vector<int> preds;
      long rest = gc->wiring_code;
      for (int i = 0; i < n; ++i) {
        int pick = static_cast<int>(rest % per_pos);
        rest /= per_pos;
        if (choices[pick]) preds.push_back(b.input(i, *choices[pick]));
      }
      gate_nodes.push_back(b.gate(gc->type, std::move(preds)));
    }
    // top combiner as a DNF over the gate bits
    BoolTree top = BoolTree::constant(0);
    for (int combo = 0; combo < (1 << k); ++combo) {
      if (!top_value[combo]) continue;
      BoolTree term = BoolTree::constant(1);
      for (int g = 0; g < k; ++g) {
        BoolTree leaf = BoolTree::leaf_of(g);
        if (((combo >> g) & 1) == 0) leaf = BoolTree::make_not(std::move(leaf));
        term = BoolTree::make_and(std::move(term), std::move(leaf));
      }
      top = BoolTree::make_or(std::move(top), std::move(term));
    }
    b.c.output = b.tree(top, gate_nodes);
    b.c.validate();
    return std::move(b.c);
  };

  // k gate slots, each ranging over gate_choices in order
  std::vector<size_t> slot(k, 0);
  while (true) {
    std::vector<const GateChoice*> picked;
    for (int g = 0; g < k; ++g) picked.push_back(&gate_choices[slot[g]]);

    // the top function exists iff no two words with the same gate bits want
    // different outputs
    std::vector<int> top_value(1 << k, -1);
    bool ok = true;
    for (size_t wi = 0; wi < words.size() && ok; ++wi) {
      int combo = 0;
      for (int g = 0; g < k; ++g) combo |= picked[g]->bits[wi] << g;
      if (top_value[combo] < 0)
        top_value[combo] = want[wi];
      else if (top_value[combo] != want[wi])
        ok = false;
    }
    if (ok) {
      for (auto& v : top_value)
        if (v < 0) v = 0;  // unconstrained combinations
      Circuit c = build_circuit(picked, top_value);
      // re-check exact agreement on every word before reporting
      for (size_t wi = 0; wi < words.size(); ++wi)
        if (evaluate_circuit(c, words[wi]) != want[wi])
          throw std::logic_error("brute_force_circuit_search: candidate fails re-check");
      return c;
    }

    int g = k;
    while (g > 0 && slot[g - 1] + 1 == gate_choices.size()) slot[--g] = 0;
    if (g == 0) break;
    ++slot[g - 1];
  }
  return std::nullopt;
}

}  // namespace varcirc
