#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "varcirc/dfa.hpp"
#include "varcirc/oracle.hpp"
#include "varcirc/partition.hpp"

namespace varcirc {

/// Sorted set of base-alphabet letter indices; an input node (i, S) reads 1
/// iff the i-th letter of the word lies in S.
using LetterSet = std::vector<int>;

inline bool letter_set_contains(const LetterSet& s, int letter) {
  return std::binary_search(s.begin(), s.end(), letter);
}

inline LetterSet make_letter_set(std::vector<int> letters) {
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  return letters;
}

/// A gate type is a commutative regular language over {0,1}: the gate of
/// fan-in k outputs 1 iff the word of its input bits belongs to the language.
struct GateType {
  std::string name;
  Dfa language;  // canonical minimal DFA over exactly {"0","1"}

  GateType() = default;
  GateType(std::string n, Dfa lang) : name(std::move(n)), language(minimize(lang)) {
    validate();
  }

  void validate() const {
    if (language.alphabet != binary_alphabet())
      throw std::invalid_argument("gate type '" + name + "': language must be over {0,1}");
    if (!is_commutative(language))
      throw std::invalid_argument("gate type '" + name + "': language must be commutative");
  }

  bool fires(const std::vector<int>& bits) const {
    // bits coincide with letter indices in the canonical {0,1} alphabet
    return membership(language, bits);
  }

  bool operator==(const GateType&) const = default;
};

/// Stock gate types; "co-" prefixes the complement.
inline GateType builtin_gate(const std::string& spec) {
  if (spec.rfind("co-", 0) == 0) {
    GateType g = builtin_gate(spec.substr(3));
    return GateType(spec, lang_complement(g.language));
  }
  const Alphabet bits = binary_alphabet();
  if (spec == "and" || spec == "or" || spec == "parity")
    return GateType(spec, builtin_language(spec, {}, bits));
  if (spec.rfind("mod", 0) == 0 && spec.size() > 3) {
    int p = std::stoi(spec.substr(3));
    return GateType(spec, builtin_language("mod", {p}, bits));
  }
  throw std::invalid_argument("builtin_gate: unknown gate '" + spec + "'");
}

enum class BoolOpKind { And2, Or2, Not1 };

inline std::string bool_op_name(BoolOpKind op) {
  switch (op) {
    case BoolOpKind::And2: return "and2";
    case BoolOpKind::Or2: return "or2";
    case BoolOpKind::Not1: return "not1";
  }
  return {};
}

/// Bounded Boolean tree; leaves index into a context-dependent sequence
/// (layer gates of a family, atoms of a block language).
struct BoolTree {
  enum class Kind { Const, Leaf, And, Or, Not };

  Kind kind = Kind::Const;
  int value = 0;  // Const
  int leaf = 0;   // Leaf
  std::vector<BoolTree> children;

  static BoolTree constant(int v) { return BoolTree{Kind::Const, v, 0, {}}; }
  static BoolTree leaf_of(int i) { return BoolTree{Kind::Leaf, 0, i, {}}; }

  // The make_* builders fold constants so normalization output stays lean.
  static BoolTree make_and(BoolTree a, BoolTree b) {
    if (a.kind == Kind::Const) return a.value ? b : a;
    if (b.kind == Kind::Const) return b.value ? a : b;
    return BoolTree{Kind::And, 0, 0, {std::move(a), std::move(b)}};
  }
  static BoolTree make_or(BoolTree a, BoolTree b) {
    if (a.kind == Kind::Const) return a.value ? a : b;
    if (b.kind == Kind::Const) return b.value ? b : a;
    return BoolTree{Kind::Or, 0, 0, {std::move(a), std::move(b)}};
  }
  static BoolTree make_not(BoolTree a) {
    if (a.kind == Kind::Const) return constant(1 - a.value);
    if (a.kind == Kind::Not) return std::move(a.children.front());
    return BoolTree{Kind::Not, 0, 0, {std::move(a)}};
  }

  template <typename LeafFn>
  int evaluate(const LeafFn& leaf_value) const {
    switch (kind) {
      case Kind::Const: return value;
      case Kind::Leaf: return leaf_value(leaf);
      case Kind::And: return children[0].evaluate(leaf_value) & children[1].evaluate(leaf_value);
      case Kind::Or: return children[0].evaluate(leaf_value) | children[1].evaluate(leaf_value);
      case Kind::Not: return 1 - children[0].evaluate(leaf_value);
    }
    return 0;
  }

  void validate(int leaf_count) const {
    switch (kind) {
      case Kind::Const:
        if (value != 0 && value != 1) throw std::invalid_argument("bool tree: constant not a bit");
        return;
      case Kind::Leaf:
        if (leaf < 0 || leaf >= leaf_count)
          throw std::invalid_argument("bool tree: leaf index out of range");
        return;
      case Kind::And:
      case Kind::Or:
        if (children.size() != 2) throw std::invalid_argument("bool tree: and/or take two children");
        break;
      case Kind::Not:
        if (children.size() != 1) throw std::invalid_argument("bool tree: not takes one child");
        break;
    }
    for (const auto& c : children) c.validate(leaf_count);
  }
};

// ---------------------------------------------------------------------------
// Fixed-length circuits
// ---------------------------------------------------------------------------

struct CircuitNode {
  enum class Kind { Constant, Input, Gate, BoolOp };

  Kind kind = Kind::Constant;
  int value = 0;          // Constant
  int position = 0;       // Input
  LetterSet letters;      // Input
  int gate_type = 0;      // Gate
  BoolOpKind op = BoolOpKind::And2;  // BoolOp
  std::vector<int> preds;            // Gate / BoolOp
};

/// Circuit for words of one fixed length; nodes are topologically ordered.
struct Circuit {
  Alphabet alphabet;
  int input_count = 0;
  std::vector<GateType> gate_types;
  std::vector<CircuitNode> nodes;
  int output = 0;

  void validate() const {
    alphabet.validate();
    if (input_count < 0) throw std::invalid_argument("circuit: negative input count");
    for (const auto& g : gate_types) g.validate();
    if (nodes.empty()) throw std::invalid_argument("circuit: needs at least one node");
    if (output < 0 || output >= static_cast<int>(nodes.size()))
      throw std::invalid_argument("circuit: output node out of range");
    for (size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      switch (n.kind) {
        case CircuitNode::Kind::Constant:
          if (n.value != 0 && n.value != 1)
            throw std::invalid_argument("circuit: constant node must be a bit");
          break;
        case CircuitNode::Kind::Input:
          if (n.position < 0 || n.position >= input_count)
            throw std::invalid_argument("circuit: input position out of range");
          for (int l : n.letters)
            if (l < 0 || l >= alphabet.size())
              throw std::invalid_argument("circuit: input letter-set outside the alphabet");
          break;
        case CircuitNode::Kind::Gate:
          if (n.gate_type < 0 || n.gate_type >= static_cast<int>(gate_types.size()))
            throw std::invalid_argument("circuit: gate type out of range");
          break;
        case CircuitNode::Kind::BoolOp: {
          size_t want = n.op == BoolOpKind::Not1 ? 1 : 2;
          if (n.preds.size() != want)
            throw std::invalid_argument("circuit: " + bool_op_name(n.op) + " arity mismatch");
          break;
        }
      }
      for (int p : n.preds)
        if (p < 0 || p >= static_cast<int>(i))
          throw std::invalid_argument("circuit: predecessor must be an earlier node");
    }
  }
};

inline int evaluate_circuit(const Circuit& c, const Word& w) {
  if (static_cast<int>(w.size()) != c.input_count)
    throw std::invalid_argument("evaluate_circuit: word length does not match the circuit");
  std::vector<int> val(c.nodes.size(), 0);
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    switch (n.kind) {
      case CircuitNode::Kind::Constant:
        val[i] = n.value;
        break;
      case CircuitNode::Kind::Input:
        val[i] = letter_set_contains(n.letters, w[n.position]) ? 1 : 0;
        break;
      case CircuitNode::Kind::Gate: {
        std::vector<int> bits;
        bits.reserve(n.preds.size());
        for (int p : n.preds) bits.push_back(val[p]);
        val[i] = c.gate_types[n.gate_type].fires(bits) ? 1 : 0;
        break;
      }
      case CircuitNode::Kind::BoolOp:
        switch (n.op) {
          case BoolOpKind::And2: val[i] = val[n.preds[0]] & val[n.preds[1]]; break;
          case BoolOpKind::Or2: val[i] = val[n.preds[0]] | val[n.preds[1]]; break;
          case BoolOpKind::Not1: val[i] = 1 - val[n.preds[0]]; break;
        }
        break;
    }
  }
  return val[c.output];
}

// ---------------------------------------------------------------------------
// Constant-size circuit families
// ---------------------------------------------------------------------------

/// Per-class input wiring of one gate: wiring[k] is the list of letter-sets
/// (with multiplicity) every position of class k contributes to the gate.
using ClassWiring = std::vector<std::vector<LetterSet>>;

struct FamilyGate {
  enum class Kind { Constant, Language, BoolOp };

  Kind kind = Kind::Constant;
  int value = 0;                     // Constant
  int gate_type = 0;                 // Language
  ClassWiring wiring;                // Language: indexed by class
  BoolOpKind op = BoolOpKind::And2;  // BoolOp
  std::vector<int> preds;            // Language (extra single-bit feeds) / BoolOp
};

/// Constant-size circuit family: a fixed DAG of gates whose input wiring is
/// keyed by the class of each position under a finite partition of N^2.
struct GeneralCircuitFamily {
  Alphabet alphabet;
  PartitionSpec partition;
  std::vector<GateType> gate_types;
  std::vector<FamilyGate> gates;  // topological
  int output = 0;

  void validate() const {
    alphabet.validate();
    partition.validate();
    for (const auto& g : gate_types) g.validate();
    if (gates.empty()) throw std::invalid_argument("family: needs at least one gate");
    if (output < 0 || output >= static_cast<int>(gates.size()))
      throw std::invalid_argument("family: output gate out of range");
    for (size_t i = 0; i < gates.size(); ++i) {
      const auto& g = gates[i];
      for (int p : g.preds)
        if (p < 0 || p >= static_cast<int>(i))
          throw std::invalid_argument("family: predecessor must be an earlier gate");
      switch (g.kind) {
        case FamilyGate::Kind::Constant:
          if (g.value != 0 && g.value != 1)
            throw std::invalid_argument("family: constant gate must be a bit");
          break;
        case FamilyGate::Kind::Language:
          if (g.gate_type < 0 || g.gate_type >= static_cast<int>(gate_types.size()))
            throw std::invalid_argument("family: gate type out of range");
          if (static_cast<int>(g.wiring.size()) != partition.class_count())
            throw std::invalid_argument("family: wiring must cover every partition class");
          for (const auto& sets : g.wiring)
            for (const auto& s : sets)
              for (int l : s)
                if (l < 0 || l >= alphabet.size())
                  throw std::invalid_argument("family: wiring letter-set outside the alphabet");
          break;
        case FamilyGate::Kind::BoolOp: {
          size_t want = g.op == BoolOpKind::Not1 ? 1 : 2;
          if (g.preds.size() != want)
            throw std::invalid_argument("family: " + bool_op_name(g.op) + " arity mismatch");
          break;
        }
      }
    }
  }
};

struct LayerGate {
  int gate_type = 0;
  ClassWiring wiring;
};

/// Normal form: a single layer of language gates touching the inputs and a
/// bounded Boolean tree above them.
struct LayeredCircuitFamily {
  Alphabet alphabet;
  PartitionSpec partition;
  std::vector<GateType> gate_types;
  std::vector<LayerGate> layer;
  BoolTree top;

  void validate() const {
    alphabet.validate();
    partition.validate();
    for (const auto& g : gate_types) g.validate();
    for (const auto& g : layer) {
      if (g.gate_type < 0 || g.gate_type >= static_cast<int>(gate_types.size()))
        throw std::invalid_argument("layered family: gate type out of range");
      if (static_cast<int>(g.wiring.size()) != partition.class_count())
        throw std::invalid_argument("layered family: wiring must cover every partition class");
      for (const auto& sets : g.wiring)
        for (const auto& s : sets)
          for (int l : s)
            if (l < 0 || l >= alphabet.size())
              throw std::invalid_argument("layered family: wiring letter-set outside the alphabet");
    }
    top.validate(static_cast<int>(layer.size()));
  }
};

namespace detail {

struct CircuitBuilder {
  Circuit c;
  std::map<std::pair<int, LetterSet>, int> input_nodes;

  int input(int position, const LetterSet& s) {
    auto key = std::make_pair(position, s);
    auto it = input_nodes.find(key);
    if (it != input_nodes.end()) return it->second;
    CircuitNode n;
    n.kind = CircuitNode::Kind::Input;
    n.position = position;
    n.letters = s;
    c.nodes.push_back(std::move(n));
    int idx = static_cast<int>(c.nodes.size()) - 1;
    input_nodes.emplace(key, idx);
    return idx;
  }

  int constant(int v) {
    CircuitNode n;
    n.kind = CircuitNode::Kind::Constant;
    n.value = v;
    c.nodes.push_back(std::move(n));
    return static_cast<int>(c.nodes.size()) - 1;
  }

  int gate(int type, std::vector<int> preds) {
    CircuitNode n;
    n.kind = CircuitNode::Kind::Gate;
    n.gate_type = type;
    n.preds = std::move(preds);
    c.nodes.push_back(std::move(n));
    return static_cast<int>(c.nodes.size()) - 1;
  }

  int boolop(BoolOpKind op, std::vector<int> preds) {
    CircuitNode n;
    n.kind = CircuitNode::Kind::BoolOp;
    n.op = op;
    n.preds = std::move(preds);
    c.nodes.push_back(std::move(n));
    return static_cast<int>(c.nodes.size()) - 1;
  }

  int tree(const BoolTree& t, const std::vector<int>& leaf_nodes) {
    switch (t.kind) {
      case BoolTree::Kind::Const: return constant(t.value);
      case BoolTree::Kind::Leaf: return leaf_nodes[t.leaf];
      case BoolTree::Kind::And:
        return boolop(BoolOpKind::And2,
                      {tree(t.children[0], leaf_nodes), tree(t.children[1], leaf_nodes)});
      case BoolTree::Kind::Or:
        return boolop(BoolOpKind::Or2,
                      {tree(t.children[0], leaf_nodes), tree(t.children[1], leaf_nodes)});
      case BoolTree::Kind::Not:
        return boolop(BoolOpKind::Not1, {tree(t.children[0], leaf_nodes)});
    }
    return 0;
  }
};

inline std::vector<int> wired_inputs(CircuitBuilder& b, const ClassWiring& wiring,
                                     const std::vector<int>& pos_class) {
  std::vector<int> wires;
  for (int i = 0; i < static_cast<int>(pos_class.size()); ++i)
    for (const auto& s : wiring[pos_class[i]]) wires.push_back(b.input(i, s));
  return wires;
}

}  // namespace detail

/// The length-n member of the family: every position i is classified by
/// (i, n-1-i); each letter-set in the wiring of that class becomes one wire,
/// in position order then wiring-list order. Inter-gate edges are copied
/// verbatim after the input wires.
inline Circuit instantiate_family(const GeneralCircuitFamily& fam, int n) {
  fam.validate();
  if (n < 0) throw std::invalid_argument("instantiate_family: negative length");
  detail::CircuitBuilder b;
  b.c.alphabet = fam.alphabet;
  b.c.input_count = n;
  b.c.gate_types = fam.gate_types;
  const auto pos_class = position_classes(fam.partition, n);

  std::vector<int> node_of_gate(fam.gates.size(), 0);
  for (size_t gi = 0; gi < fam.gates.size(); ++gi) {
    const auto& g = fam.gates[gi];
    switch (g.kind) {
      case FamilyGate::Kind::Constant:
        node_of_gate[gi] = b.constant(g.value);
        break;
      case FamilyGate::Kind::Language: {
        std::vector<int> preds = detail::wired_inputs(b, g.wiring, pos_class);
        for (int p : g.preds) preds.push_back(node_of_gate[p]);
        node_of_gate[gi] = b.gate(g.gate_type, std::move(preds));
        break;
      }
      case FamilyGate::Kind::BoolOp: {
        std::vector<int> preds;
        for (int p : g.preds) preds.push_back(node_of_gate[p]);
        node_of_gate[gi] = b.boolop(g.op, std::move(preds));
        break;
      }
    }
  }
  b.c.output = node_of_gate[fam.output];
  b.c.validate();
  return std::move(b.c);
}

inline Circuit instantiate_family(const LayeredCircuitFamily& fam, int n) {
  fam.validate();
  if (n < 0) throw std::invalid_argument("instantiate_family: negative length");
  detail::CircuitBuilder b;
  b.c.alphabet = fam.alphabet;
  b.c.input_count = n;
  b.c.gate_types = fam.gate_types;
  const auto pos_class = position_classes(fam.partition, n);

  std::vector<int> leaf_nodes;
  leaf_nodes.reserve(fam.layer.size());
  for (const auto& g : fam.layer)
    leaf_nodes.push_back(b.gate(g.gate_type, detail::wired_inputs(b, g.wiring, pos_class)));
  b.c.output = b.tree(fam.top, leaf_nodes);
  b.c.validate();
  return std::move(b.c);
}

template <typename Family>
bool family_membership(const Family& fam, const Word& w) {
  return evaluate_circuit(instantiate_family(fam, static_cast<int>(w.size())), w) == 1;
}

// Family-backed oracles cache one instantiated circuit per word length.
inline LanguageOracle oracle_of(const GeneralCircuitFamily& fam, std::string name = "family") {
  auto shared = std::make_shared<GeneralCircuitFamily>(fam);
  auto cache = std::make_shared<std::map<int, Circuit>>();
  return LanguageOracle{fam.alphabet, std::move(name), -1, [shared, cache](const Word& w) {
                          int n = static_cast<int>(w.size());
                          auto it = cache->find(n);
                          if (it == cache->end())
                            it = cache->emplace(n, instantiate_family(*shared, n)).first;
                          return evaluate_circuit(it->second, w) == 1;
                        }};
}

inline LanguageOracle oracle_of(const LayeredCircuitFamily& fam, std::string name = "layered") {
  auto shared = std::make_shared<LayeredCircuitFamily>(fam);
  auto cache = std::make_shared<std::map<int, Circuit>>();
  return LanguageOracle{fam.alphabet, std::move(name), -1, [shared, cache](const Word& w) {
                          int n = static_cast<int>(w.size());
                          auto it = cache->find(n);
                          if (it == cache->end())
                            it = cache->emplace(n, instantiate_family(*shared, n)).first;
                          return evaluate_circuit(it->second, w) == 1;
                        }};
}

namespace detail {

/// Interns layer gates during normalization, keyed by the canonical language
/// and the wiring, so each quotient (and complement) is emitted once.
struct LayerInterner {
  LayeredCircuitFamily* out;
  std::map<std::pair<std::string, ClassWiring>, int> seen;

  int intern(const Dfa& minimized_lang, const ClassWiring& wiring, const std::string& name) {
    auto key = std::make_pair(canonical_key(minimized_lang), wiring);
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    out->gate_types.emplace_back(name, minimized_lang);
    out->layer.push_back(LayerGate{static_cast<int>(out->gate_types.size()) - 1, wiring});
    int idx = static_cast<int>(out->layer.size()) - 1;
    seen.emplace(std::move(key), idx);
    return idx;
  }

  int complement_of(int layer_idx) {
    const auto& g = out->layer[layer_idx];
    Dfa co = lang_complement(out->gate_types[g.gate_type].language);
    return intern(co, g.wiring, "co-" + out->gate_types[g.gate_type].name);
  }
};

/// Negation normal form over layer leaves: Not is pushed to the leaves and
/// absorbed by switching to the complemented layer gate.
inline BoolTree to_nnf(const BoolTree& t, bool negate, LayerInterner& interner) {
  switch (t.kind) {
    case BoolTree::Kind::Const: return BoolTree::constant(negate ? 1 - t.value : t.value);
    case BoolTree::Kind::Leaf:
      return BoolTree::leaf_of(negate ? interner.complement_of(t.leaf) : t.leaf);
    case BoolTree::Kind::And: {
      BoolTree a = to_nnf(t.children[0], negate, interner);
      BoolTree b = to_nnf(t.children[1], negate, interner);
      return negate ? BoolTree::make_or(std::move(a), std::move(b))
                    : BoolTree::make_and(std::move(a), std::move(b));
    }
    case BoolTree::Kind::Or: {
      BoolTree a = to_nnf(t.children[0], negate, interner);
      BoolTree b = to_nnf(t.children[1], negate, interner);
      return negate ? BoolTree::make_and(std::move(a), std::move(b))
                    : BoolTree::make_or(std::move(a), std::move(b));
    }
    case BoolTree::Kind::Not: return to_nnf(t.children[0], !negate, interner);
  }
  return BoolTree::constant(0);
}

}  // namespace detail

/// Rewrites a general family into the layered normal form: only language
/// gates touch the inputs, everything above is a bounded Boolean tree.
///
/// A language gate fed by r earlier gates is replaced, for each bit pattern
/// of those feeds, by the right quotient of its language under that pattern
/// (a two-sided quotient, so again a legal gate) wired exactly as the
/// original gate; the gate's value becomes a DNF over these quotient gates
/// and the rewritten feed expressions. Negation is absorbed by complemented
/// layer gates, which the closure of the gate variety also provides.
inline LayeredCircuitFamily normalize_family(const GeneralCircuitFamily& fam) {
  fam.validate();
  LayeredCircuitFamily out;
  out.alphabet = fam.alphabet;
  out.partition = fam.partition;
  detail::LayerInterner interner{&out, {}};

  std::vector<BoolTree> expr(fam.gates.size());
  for (size_t gi = 0; gi < fam.gates.size(); ++gi) {
    const auto& g = fam.gates[gi];
    switch (g.kind) {
      case FamilyGate::Kind::Constant:
        expr[gi] = BoolTree::constant(g.value);
        break;
      case FamilyGate::Kind::BoolOp:
        switch (g.op) {
          case BoolOpKind::And2:
            expr[gi] = BoolTree::make_and(expr[g.preds[0]], expr[g.preds[1]]);
            break;
          case BoolOpKind::Or2:
            expr[gi] = BoolTree::make_or(expr[g.preds[0]], expr[g.preds[1]]);
            break;
          case BoolOpKind::Not1:
            expr[gi] = BoolTree::make_not(expr[g.preds[0]]);
            break;
        }
        break;
      case FamilyGate::Kind::Language: {
        const GateType& type = fam.gate_types[g.gate_type];
        const int r = static_cast<int>(g.preds.size());
        BoolTree acc = BoolTree::constant(0);
        for (int mask = 0; mask < (1 << r); ++mask) {
          Word beta;
          for (int j = 0; j < r; ++j) beta.push_back((mask >> j) & 1);
          Dfa quotient = context_quotient(type.language, {}, beta);
          std::string name =
              beta.empty() ? type.name : type.name + "/" + format_word(binary_alphabet(), beta);
          int leaf = interner.intern(quotient, g.wiring, name);
          BoolTree term = BoolTree::leaf_of(leaf);
          for (int j = 0; j < r; ++j) {
            BoolTree feed = expr[g.preds[j]];
            if (((mask >> j) & 1) == 0) feed = BoolTree::make_not(std::move(feed));
            term = BoolTree::make_and(std::move(term), std::move(feed));
          }
          acc = BoolTree::make_or(std::move(acc), std::move(term));
        }
        expr[gi] = std::move(acc);
        break;
      }
    }
  }

  out.top = detail::to_nnf(expr[fam.output], false, interner);
  out.validate();
  return out;
}

}  // namespace varcirc
