#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "varcirc/circuit.hpp"
#include "varcirc/monoid.hpp"
#include "varcirc/oracle.hpp"
#include "varcirc/partition.hpp"

namespace varcirc {

/// One atom of a presented block language: an encoding of product letters
/// into bit words, and a gate language applied to the concatenated image of
/// the transduced word.
struct BlockAtom {
  std::vector<std::vector<Word>> encoding;  // [base letter][class] -> bit word
  GateType gate;

  Word encode(const Word& transduced, int class_count) const {
    Word bits;
    for (int x : transduced) {
      const Word& img = encoding[x / class_count][x % class_count];
      bits.insert(bits.end(), img.begin(), img.end());
    }
    return bits;
  }
};

struct RawBlockForm {
  Dfa language;  // over the product alphabet
};

struct PresentedBlockForm {
  std::vector<BlockAtom> atoms;
  BoolTree formula;  // leaves index atoms
};

/// A language of base words given through the position-class transduction:
/// either a raw automaton over the product alphabet, or a Boolean combination
/// of encoded gate atoms.
struct BlockLang {
  Alphabet base;
  PartitionSpec partition;
  std::variant<RawBlockForm, PresentedBlockForm> form;

  bool raw() const { return std::holds_alternative<RawBlockForm>(form); }

  void validate() const {
    base.validate();
    partition.validate();
    const int nc = partition.class_count();
    if (raw()) {
      const auto& r = std::get<RawBlockForm>(form);
      r.language.validate();
      Alphabet want = ProductAlphabet{base, partition}.alphabet();
      if (r.language.alphabet != want)
        throw std::invalid_argument("block language: raw automaton alphabet must be the product alphabet");
    } else {
      const auto& p = std::get<PresentedBlockForm>(form);
      for (const auto& atom : p.atoms) {
        atom.gate.validate();
        if (static_cast<int>(atom.encoding.size()) != base.size())
          throw std::invalid_argument("block language: encoding not total on the base alphabet");
        for (const auto& per_class : atom.encoding) {
          if (static_cast<int>(per_class.size()) != nc)
            throw std::invalid_argument("block language: encoding not total on the classes");
          for (const auto& bits : per_class)
            for (int b : bits)
              if (b != 0 && b != 1)
                throw std::invalid_argument("block language: encoding images must be bit words");
        }
      }
      p.formula.validate(static_cast<int>(p.atoms.size()));
    }
  }
};

inline bool block_membership(const BlockLang& b, const Word& w) {
  for (int x : w)
    if (x < 0 || x >= b.base.size())
      throw std::invalid_argument("block_membership: letter outside the base alphabet");
  const Word tw = transduce(b.partition, w);
  if (b.raw()) return membership(std::get<RawBlockForm>(b.form).language, tw);
  const auto& p = std::get<PresentedBlockForm>(b.form);
  const int nc = b.partition.class_count();
  return p.formula.evaluate([&](int atom) {
           const auto& a = p.atoms[atom];
           return a.gate.fires(a.encode(tw, nc)) ? 1 : 0;
         }) == 1;
}

inline LanguageOracle oracle_of(const BlockLang& b, std::string name = "blocklang") {
  auto shared = std::make_shared<BlockLang>(b);
  return LanguageOracle{b.base, std::move(name), -1,
                        [shared](const Word& w) { return block_membership(*shared, w); }};
}

/// Converts a presented block language to raw form: each atom becomes the
/// inverse image of its gate language under the encoding morphism on the
/// product alphabet; the formula combines the automata.
inline BlockLang to_raw(const BlockLang& b) {
  b.validate();
  if (b.raw()) return b;
  const auto& p = std::get<PresentedBlockForm>(b.form);
  const Alphabet product = ProductAlphabet{b.base, b.partition}.alphabet();
  const int nc = b.partition.class_count();

  std::vector<Dfa> atom_langs;
  atom_langs.reserve(p.atoms.size());
  for (const auto& atom : p.atoms) {
    FreeMorphism h;
    h.source = product;
    h.target = binary_alphabet();
    h.image.resize(product.size());
    for (int a = 0; a < b.base.size(); ++a)
      for (int k = 0; k < nc; ++k) h.image[a * nc + k] = atom.encoding[a][k];
    atom_langs.push_back(inverse_morphism_image(atom.gate.language, h));
  }

  // fold the formula over the atom automata
  auto build = [&](const BoolTree& t, auto&& self) -> Dfa {
    switch (t.kind) {
      case BoolTree::Kind::Const:
        return builtin_language(t.value ? "all" : "none", {}, product);
      case BoolTree::Kind::Leaf:
        return atom_langs[t.leaf];
      case BoolTree::Kind::And:
        return lang_intersection(self(t.children[0], self), self(t.children[1], self));
      case BoolTree::Kind::Or:
        return lang_union(self(t.children[0], self), self(t.children[1], self));
      case BoolTree::Kind::Not:
        return lang_complement(self(t.children[0], self));
    }
    throw std::logic_error("to_raw: unreachable");
  };

  BlockLang out;
  out.base = b.base;
  out.partition = b.partition;
  out.form = RawBlockForm{build(p.formula, build)};
  return out;
}

/// Reads a layered family as a presented block language: the encoding of
/// (a, k) for a layer gate is the bit word of a's membership in the gate's
/// class-k letter-sets; the formula is the family's top tree.
inline BlockLang family_to_blocklang(const LayeredCircuitFamily& fam) {
  fam.validate();
  PresentedBlockForm p;
  p.atoms.reserve(fam.layer.size());
  for (const auto& g : fam.layer) {
    BlockAtom atom;
    atom.gate = fam.gate_types[g.gate_type];
    atom.encoding.assign(fam.alphabet.size(), std::vector<Word>(fam.partition.class_count()));
    for (int a = 0; a < fam.alphabet.size(); ++a)
      for (int k = 0; k < fam.partition.class_count(); ++k) {
        Word bits;
        for (const auto& s : g.wiring[k]) bits.push_back(letter_set_contains(s, a) ? 1 : 0);
        atom.encoding[a][k] = std::move(bits);
      }
    p.atoms.push_back(std::move(atom));
  }
  p.formula = fam.top;

  BlockLang out;
  out.base = fam.alphabet;
  out.partition = fam.partition;
  out.form = std::move(p);
  return out;
}

namespace detail {

/// A bit whose insertion never changes membership in the gate language, i.e.
/// a letter the syntactic morphism maps to the identity. Used to pad
/// encodings of unequal length within a class.
inline std::optional<int> neutral_bit(const GateType& g) {
  DfaMonoid syn = syntactic_monoid(g.language);
  for (int bit = 0; bit < 2; ++bit)
    if (syn.morphism.image[bit] == syn.monoid.identity) return bit;
  return std::nullopt;
}

}  // namespace detail

/// Realizes a presented block language as a layered family: one layer gate
/// per atom, whose class-k wiring reads the encoding words bit by bit via
/// letter-sets. Encodings of unequal length within a class are padded with a
/// neutral bit of the gate language; if none exists the operation fails
/// rather than altering semantics.
inline LayeredCircuitFamily blocklang_to_family(const BlockLang& b) {
  b.validate();
  if (b.raw())
    throw std::invalid_argument("blocklang_to_family: needs the presented form");
  const auto& p = std::get<PresentedBlockForm>(b.form);
  const int nc = b.partition.class_count();

  LayeredCircuitFamily out;
  out.alphabet = b.base;
  out.partition = b.partition;
  for (const auto& atom : p.atoms) {
    out.gate_types.push_back(atom.gate);
    LayerGate g;
    g.gate_type = static_cast<int>(out.gate_types.size()) - 1;
    g.wiring.resize(nc);
    for (int k = 0; k < nc; ++k) {
      size_t width = 0;
      bool uneven = false;
      for (int a = 0; a < b.base.size(); ++a) {
        const auto len = atom.encoding[a][k].size();
        if (a == 0) width = len;
        else if (len != width) uneven = true;
        width = std::max(width, len);
      }
      int pad = 0;
      if (uneven) {
        auto n = detail::neutral_bit(atom.gate);
        if (!n)
          throw std::invalid_argument(
              "blocklang_to_family: encodings of unequal length within a class and gate '" +
              atom.gate.name + "' has no neutral padding bit");
        pad = *n;
      }
      for (size_t t = 0; t < width; ++t) {
        std::vector<int> letters;
        for (int a = 0; a < b.base.size(); ++a) {
          const Word& bits = atom.encoding[a][k];
          const int bit = t < bits.size() ? bits[t] : pad;
          if (bit == 1) letters.push_back(a);
        }
        g.wiring[k].push_back(make_letter_set(std::move(letters)));
      }
    }
    out.layer.push_back(std::move(g));
  }
  out.top = p.formula;
  out.validate();
  return out;
}

/// Exhaustive membership comparison over all words of length <= max_len in
/// length-lexicographic order; returns the first disagreement, if any.
inline std::optional<Word> bounded_equivalence(const LanguageOracle& x, const LanguageOracle& y,
                                               int max_len) {
  if (x.alphabet != y.alphabet)
    throw std::invalid_argument("bounded_equivalence: alphabet mismatch");
  std::optional<Word> found;
  for_each_word(x.alphabet, max_len, [&](const Word& w) {
    if (x.contains(w) != y.contains(w)) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

template <typename X, typename Y>
std::optional<Word> bounded_equivalence(const X& x, const Y& y, int max_len) {
  return bounded_equivalence(oracle_of(x), oracle_of(y), max_len);
}

}  // namespace varcirc
