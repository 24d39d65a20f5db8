#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "varcirc/blocklang.hpp"
#include "varcirc/circuit.hpp"
#include "varcirc/dfa.hpp"
#include "varcirc/monoid.hpp"
#include "varcirc/partition.hpp"
#include "varcirc/separation.hpp"
#include "varcirc/term.hpp"

namespace varcirc {

using json = nlohmann::json;

/// Input error carrying the offending field, so diagnostics can name it.
struct JsonError : std::runtime_error {
  explicit JsonError(const std::string& what) : std::runtime_error(what) {}
};

namespace jio {

inline const json& require(const json& j, const char* field, const char* ctx) {
  if (!j.is_object() || !j.contains(field))
    throw JsonError(std::string(ctx) + ": missing field '" + field + "'");
  return j.at(field);
}

template <typename T>
T as(const json& j, const char* field, const char* ctx) {
  try {
    return require(j, field, ctx).get<T>();
  } catch (const json::exception&) {
    throw JsonError(std::string(ctx) + ": field '" + field + "' has the wrong type");
  }
}

}  // namespace jio

// --- alphabet, words -------------------------------------------------------

inline json alphabet_to_json(const Alphabet& a) { return json(a.letters); }

inline Alphabet alphabet_from_json(const json& j, const char* ctx = "alphabet") {
  if (!j.is_array()) throw JsonError(std::string(ctx) + ": alphabet must be an array of letters");
  std::vector<std::string> letters;
  for (const auto& l : j) {
    if (!l.is_string()) throw JsonError(std::string(ctx) + ": letters must be strings");
    letters.push_back(l.get<std::string>());
  }
  try {
    return Alphabet(std::move(letters));
  } catch (const std::invalid_argument& e) {
    throw JsonError(std::string(ctx) + ": " + e.what());
  }
}

inline json word_to_json(const Alphabet& a, const Word& w) {
  json arr = json::array();
  for (int x : w) arr.push_back(a.name(x));
  return arr;
}

inline Word word_from_json(const Alphabet& a, const json& j, const char* ctx = "word") {
  if (j.is_string()) return parse_word(a, j.get<std::string>());
  if (!j.is_array()) throw JsonError(std::string(ctx) + ": word must be a string or letter array");
  Word w;
  for (const auto& l : j) {
    if (!l.is_string()) throw JsonError(std::string(ctx) + ": word letters must be strings");
    auto idx = a.index_of(l.get<std::string>());
    if (!idx) throw JsonError(std::string(ctx) + ": letter '" + l.get<std::string>() +
                              "' outside the alphabet");
    w.push_back(*idx);
  }
  return w;
}

// --- dfa ---------------------------------------------------------------------

inline json dfa_to_json(const Dfa& d) {
  json out;
  out["alphabet"] = alphabet_to_json(d.alphabet);
  out["states"] = d.state_count;
  out["initial"] = d.initial;
  json acc = json::array();
  for (int q = 0; q < d.state_count; ++q)
    if (d.accepting[q]) acc.push_back(q);
  out["accepting"] = acc;
  // canonical order: by source state, then letter name
  std::vector<std::pair<std::string, int>> letters_sorted;
  for (int a = 0; a < d.alphabet.size(); ++a) letters_sorted.emplace_back(d.alphabet.name(a), a);
  std::sort(letters_sorted.begin(), letters_sorted.end());
  json trans = json::array();
  for (int q = 0; q < d.state_count; ++q)
    for (const auto& [name, a] : letters_sorted)
      trans.push_back(json{{"from", q}, {"on", name}, {"to", d.step(q, a)}});
  out["transitions"] = trans;
  return out;
}

inline Dfa dfa_from_json(const json& j, const char* ctx = "dfa") {
  Dfa d;
  d.alphabet = alphabet_from_json(jio::require(j, "alphabet", ctx), ctx);
  d.state_count = jio::as<int>(j, "states", ctx);
  d.initial = jio::as<int>(j, "initial", ctx);
  if (d.state_count < 1) throw JsonError(std::string(ctx) + ": field 'states' must be >= 1");
  d.accepting.assign(d.state_count, false);
  for (const auto& q : jio::require(j, "accepting", ctx)) {
    if (!q.is_number_integer() || q.get<int>() < 0 || q.get<int>() >= d.state_count)
      throw JsonError(std::string(ctx) + ": field 'accepting' has a state out of range");
    d.accepting[q.get<int>()] = true;
  }
  d.transition.assign(static_cast<size_t>(d.state_count) * d.alphabet.size(), -1);
  for (const auto& t : jio::require(j, "transitions", ctx)) {
    int from = jio::as<int>(t, "from", "transition");
    std::string on = jio::as<std::string>(t, "on", "transition");
    int to = jio::as<int>(t, "to", "transition");
    auto letter = d.alphabet.index_of(on);
    if (!letter) throw JsonError(std::string(ctx) + ": transition letter '" + on +
                                 "' outside the alphabet");
    if (from < 0 || from >= d.state_count || to < 0 || to >= d.state_count)
      throw JsonError(std::string(ctx) + ": transition state out of range");
    d.step_ref(from, *letter) = to;
  }
  for (int q = 0; q < d.state_count; ++q)
    for (int a = 0; a < d.alphabet.size(); ++a)
      if (d.step(q, a) < 0)
        throw JsonError(std::string(ctx) + ": field 'transitions' is not total (state " +
                        std::to_string(q) + ", letter '" + d.alphabet.name(a) + "')");
  return d;
}

// --- monoid ------------------------------------------------------------------

inline json monoid_to_json(const FiniteMonoid& m) {
  json rows = json::array();
  for (int x = 0; x < m.size; ++x) {
    json row = json::array();
    for (int y = 0; y < m.size; ++y) row.push_back(m.mul(x, y));
    rows.push_back(row);
  }
  return json{{"size", m.size}, {"identity", m.identity}, {"table", rows}};
}

inline FiniteMonoid monoid_from_json(const json& j, const char* ctx = "monoid") {
  FiniteMonoid m;
  m.size = jio::as<int>(j, "size", ctx);
  m.identity = jio::as<int>(j, "identity", ctx);
  if (m.size < 1) throw JsonError(std::string(ctx) + ": field 'size' must be >= 1");
  const json& rows = jio::require(j, "table", ctx);
  if (!rows.is_array() || static_cast<int>(rows.size()) != m.size)
    throw JsonError(std::string(ctx) + ": field 'table' must have one row per element");
  m.table.reserve(static_cast<size_t>(m.size) * m.size);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != m.size)
      throw JsonError(std::string(ctx) + ": field 'table' row width mismatch");
    for (const auto& v : row) m.table.push_back(v.get<int>());
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw JsonError(std::string(ctx) + ": " + e.what());
  }
  return m;
}

// --- terms and identities ------------------------------------------------------

inline json term_to_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Letter: return json{{"kind", "sym"}, {"tag", "letter"}, {"name", t.name()}};
    case Term::Kind::Variable: return json{{"kind", "sym"}, {"tag", "var"}, {"name", t.name()}};
    case Term::Kind::Concat:
      return json{{"kind", "cat"}, {"left", term_to_json(t.left())}, {"right", term_to_json(t.right())}};
    case Term::Kind::Omega: return json{{"kind", "omega"}, {"child", term_to_json(t.child())}};
  }
  throw std::logic_error("term_to_json: unreachable");
}

inline Term term_from_json(const json& j, const char* ctx = "term") {
  std::string kind = jio::as<std::string>(j, "kind", ctx);
  if (kind == "sym") {
    std::string tag = jio::as<std::string>(j, "tag", ctx);
    std::string name = jio::as<std::string>(j, "name", ctx);
    if (tag == "letter") return Term::letter(name);
    if (tag == "var") return Term::variable(name);
    throw JsonError(std::string(ctx) + ": field 'tag' must be 'var' or 'letter'");
  }
  if (kind == "cat")
    return Term::concat(term_from_json(jio::require(j, "left", ctx), ctx),
                        term_from_json(jio::require(j, "right", ctx), ctx));
  if (kind == "omega") return Term::omega(term_from_json(jio::require(j, "child", ctx), ctx));
  throw JsonError(std::string(ctx) + ": field 'kind' must be 'sym', 'cat' or 'omega'");
}

inline json identity_to_json(const Identity& id) {
  return json{{"lhs", term_to_json(id.lhs)}, {"rhs", term_to_json(id.rhs)}};
}

inline Identity identity_from_json(const json& j, const char* ctx = "identity") {
  return Identity{term_from_json(jio::require(j, "lhs", ctx), ctx),
                  term_from_json(jio::require(j, "rhs", ctx), ctx)};
}

inline std::vector<Identity> identities_from_json(const json& j) {
  std::vector<Identity> out;
  for (const auto& e : jio::require(j, "identities", "identities"))
    out.push_back(identity_from_json(e));
  return out;
}

// --- partitions ---------------------------------------------------------------

inline json pred_to_json(const PosPred& p) {
  switch (p.kind) {
    case PosPred::Kind::True: return json{{"atom", "true"}};
    case PosPred::Kind::ILess: return json{{"atom", "i_lt"}, {"c", p.c}};
    case PosPred::Kind::JLess: return json{{"atom", "j_lt"}, {"c", p.c}};
    case PosPred::Kind::IMod: return json{{"atom", "i_mod"}, {"m", p.m}, {"r", p.r}};
    case PosPred::Kind::JMod: return json{{"atom", "j_mod"}, {"m", p.m}, {"r", p.r}};
    case PosPred::Kind::And: {
      json arr = json::array();
      for (const auto& c : p.children) arr.push_back(pred_to_json(c));
      return json{{"and", arr}};
    }
    case PosPred::Kind::Or: {
      json arr = json::array();
      for (const auto& c : p.children) arr.push_back(pred_to_json(c));
      return json{{"or", arr}};
    }
    case PosPred::Kind::Not: return json{{"not", pred_to_json(p.children.front())}};
  }
  throw std::logic_error("pred_to_json: unreachable");
}

inline PosPred pred_from_json(const json& j, const char* ctx = "partition") {
  if (!j.is_object()) throw JsonError(std::string(ctx) + ": predicate must be an object");
  if (j.contains("atom")) {
    std::string atom = j.at("atom").get<std::string>();
    if (atom == "true") return PosPred::truth();
    if (atom == "i_lt") return PosPred::i_less(jio::as<long>(j, "c", ctx));
    if (atom == "j_lt") return PosPred::j_less(jio::as<long>(j, "c", ctx));
    if (atom == "i_mod") return PosPred::i_mod(jio::as<long>(j, "m", ctx), jio::as<long>(j, "r", ctx));
    if (atom == "j_mod") return PosPred::j_mod(jio::as<long>(j, "m", ctx), jio::as<long>(j, "r", ctx));
    throw JsonError(std::string(ctx) + ": unknown atom '" + atom + "'");
  }
  if (j.contains("and") || j.contains("or")) {
    const bool is_and = j.contains("and");
    std::vector<PosPred> children;
    for (const auto& c : j.at(is_and ? "and" : "or")) children.push_back(pred_from_json(c, ctx));
    return is_and ? PosPred::conj(std::move(children)) : PosPred::disj(std::move(children));
  }
  if (j.contains("not")) return PosPred::negation(pred_from_json(j.at("not"), ctx));
  throw JsonError(std::string(ctx) + ": predicate needs 'atom', 'and', 'or' or 'not'");
}

inline json partition_to_json(const PartitionSpec& p) {
  json classes = json::array();
  for (const auto& c : p.classes) classes.push_back(json{{"pred", pred_to_json(c)}});
  return json{{"classes", classes}};
}

inline PartitionSpec partition_from_json(const json& j, const char* ctx = "partition") {
  PartitionSpec p;
  for (const auto& c : jio::require(j, "classes", ctx))
    p.classes.push_back(pred_from_json(jio::require(c, "pred", ctx), ctx));
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw JsonError(std::string(ctx) + ": " + e.what());
  }
  return p;
}

// --- circuits and families ------------------------------------------------------

inline json gate_type_to_json(const GateType& g) {
  return json{{"name", g.name}, {"language", dfa_to_json(g.language)}};
}

inline GateType gate_type_from_json(const json& j, const char* ctx = "gate type") {
  if (j.is_string()) return builtin_gate(j.get<std::string>());
  if (j.contains("builtin")) return builtin_gate(jio::as<std::string>(j, "builtin", ctx));
  std::string name = jio::as<std::string>(j, "name", ctx);
  try {
    return GateType(name, dfa_from_json(jio::require(j, "language", ctx), ctx));
  } catch (const std::invalid_argument& e) {
    throw JsonError(std::string(ctx) + ": " + e.what());
  }
}

inline json letter_set_to_json(const Alphabet& a, const LetterSet& s) {
  json arr = json::array();
  for (int l : s) arr.push_back(a.name(l));
  return arr;
}

inline LetterSet letter_set_from_json(const Alphabet& a, const json& j, const char* ctx) {
  std::vector<int> letters;
  if (!j.is_array()) throw JsonError(std::string(ctx) + ": letter-set must be an array");
  for (const auto& l : j) {
    auto idx = a.index_of(l.get<std::string>());
    if (!idx) throw JsonError(std::string(ctx) + ": letter '" + l.get<std::string>() +
                              "' outside the alphabet");
    letters.push_back(*idx);
  }
  return make_letter_set(std::move(letters));
}

inline json bool_tree_to_json(const BoolTree& t) {
  switch (t.kind) {
    case BoolTree::Kind::Const: return json{{"kind", "const"}, {"value", t.value}};
    case BoolTree::Kind::Leaf: return json{{"kind", "leaf"}, {"index", t.leaf}};
    case BoolTree::Kind::And:
      return json{{"kind", "and2"},
                  {"children", json::array({bool_tree_to_json(t.children[0]),
                                            bool_tree_to_json(t.children[1])})}};
    case BoolTree::Kind::Or:
      return json{{"kind", "or2"},
                  {"children", json::array({bool_tree_to_json(t.children[0]),
                                            bool_tree_to_json(t.children[1])})}};
    case BoolTree::Kind::Not:
      return json{{"kind", "not1"}, {"child", bool_tree_to_json(t.children[0])}};
  }
  throw std::logic_error("bool_tree_to_json: unreachable");
}

inline BoolTree bool_tree_from_json(const json& j, const char* ctx = "tree") {
  std::string kind = jio::as<std::string>(j, "kind", ctx);
  if (kind == "const") return BoolTree::constant(jio::as<int>(j, "value", ctx));
  if (kind == "leaf") return BoolTree::leaf_of(jio::as<int>(j, "index", ctx));
  if (kind == "not1")
    return BoolTree{BoolTree::Kind::Not, 0, 0, {bool_tree_from_json(jio::require(j, "child", ctx), ctx)}};
  if (kind == "and2" || kind == "or2") {
    const json& ch = jio::require(j, "children", ctx);
    if (!ch.is_array() || ch.size() != 2)
      throw JsonError(std::string(ctx) + ": field 'children' must hold two trees");
    return BoolTree{kind == "and2" ? BoolTree::Kind::And : BoolTree::Kind::Or, 0, 0,
                    {bool_tree_from_json(ch[0], ctx), bool_tree_from_json(ch[1], ctx)}};
  }
  throw JsonError(std::string(ctx) + ": unknown tree kind '" + kind + "'");
}

inline json circuit_to_json(const Circuit& c) {
  json out;
  out["kind"] = "circuit";
  out["alphabet"] = alphabet_to_json(c.alphabet);
  out["inputs"] = c.input_count;
  json types = json::array();
  for (const auto& g : c.gate_types) types.push_back(gate_type_to_json(g));
  out["gate_types"] = types;
  json nodes = json::array();
  for (const auto& n : c.nodes) {
    switch (n.kind) {
      case CircuitNode::Kind::Constant:
        nodes.push_back(json{{"kind", "const"}, {"value", n.value}});
        break;
      case CircuitNode::Kind::Input:
        nodes.push_back(json{{"kind", "input"},
                             {"position", n.position},
                             {"letters", letter_set_to_json(c.alphabet, n.letters)}});
        break;
      case CircuitNode::Kind::Gate:
        nodes.push_back(json{{"kind", "gate"}, {"type", n.gate_type}, {"preds", n.preds}});
        break;
      case CircuitNode::Kind::BoolOp:
        nodes.push_back(json{{"kind", "boolop"}, {"op", bool_op_name(n.op)}, {"preds", n.preds}});
        break;
    }
  }
  out["nodes"] = nodes;
  out["output"] = c.output;
  return out;
}

inline BoolOpKind bool_op_from_name(const std::string& name, const char* ctx) {
  if (name == "and2") return BoolOpKind::And2;
  if (name == "or2") return BoolOpKind::Or2;
  if (name == "not1") return BoolOpKind::Not1;
  throw JsonError(std::string(ctx) + ": unknown boolop '" + name + "'");
}

inline Circuit circuit_from_json(const json& j, const char* ctx = "circuit") {
  Circuit c;
  c.alphabet = alphabet_from_json(jio::require(j, "alphabet", ctx), ctx);
  c.input_count = jio::as<int>(j, "inputs", ctx);
  for (const auto& g : jio::require(j, "gate_types", ctx))
    c.gate_types.push_back(gate_type_from_json(g, ctx));
  for (const auto& n : jio::require(j, "nodes", ctx)) {
    CircuitNode node;
    std::string kind = jio::as<std::string>(n, "kind", ctx);
    if (kind == "const") {
      node.kind = CircuitNode::Kind::Constant;
      node.value = jio::as<int>(n, "value", ctx);
    } else if (kind == "input") {
      node.kind = CircuitNode::Kind::Input;
      node.position = jio::as<int>(n, "position", ctx);
      node.letters = letter_set_from_json(c.alphabet, jio::require(n, "letters", ctx), ctx);
    } else if (kind == "gate") {
      node.kind = CircuitNode::Kind::Gate;
      node.gate_type = jio::as<int>(n, "type", ctx);
      node.preds = jio::as<std::vector<int>>(n, "preds", ctx);
    } else if (kind == "boolop") {
      node.kind = CircuitNode::Kind::BoolOp;
      node.op = bool_op_from_name(jio::as<std::string>(n, "op", ctx), ctx);
      node.preds = jio::as<std::vector<int>>(n, "preds", ctx);
    } else {
      throw JsonError(std::string(ctx) + ": unknown node kind '" + kind + "'");
    }
    c.nodes.push_back(std::move(node));
  }
  c.output = jio::as<int>(j, "output", ctx);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw JsonError(std::string(ctx) + ": " + e.what());
  }
  return c;
}

inline json wiring_to_json(const Alphabet& a, const ClassWiring& w) {
  json per_class = json::array();
  for (const auto& sets : w) {
    json list = json::array();
    for (const auto& s : sets) list.push_back(letter_set_to_json(a, s));
    per_class.push_back(list);
  }
  return per_class;
}

inline ClassWiring wiring_from_json(const Alphabet& a, const json& j, int class_count,
                                    const char* ctx) {
  if (!j.is_array() || static_cast<int>(j.size()) != class_count)
    throw JsonError(std::string(ctx) + ": field 'wiring' must have one list per class");
  ClassWiring w;
  for (const auto& sets : j) {
    std::vector<LetterSet> list;
    if (!sets.is_array()) throw JsonError(std::string(ctx) + ": wiring class entry must be an array");
    for (const auto& s : sets) list.push_back(letter_set_from_json(a, s, ctx));
    w.push_back(std::move(list));
  }
  return w;
}

inline json family_to_json(const GeneralCircuitFamily& f) {
  json out;
  out["kind"] = "general_family";
  out["alphabet"] = alphabet_to_json(f.alphabet);
  out["partition"] = partition_to_json(f.partition);
  json types = json::array();
  for (const auto& g : f.gate_types) types.push_back(gate_type_to_json(g));
  out["gate_types"] = types;
  json gates = json::array();
  for (const auto& g : f.gates) {
    switch (g.kind) {
      case FamilyGate::Kind::Constant:
        gates.push_back(json{{"kind", "const"}, {"value", g.value}});
        break;
      case FamilyGate::Kind::Language:
        gates.push_back(json{{"kind", "language"},
                             {"type", g.gate_type},
                             {"wiring", wiring_to_json(f.alphabet, g.wiring)},
                             {"preds", g.preds}});
        break;
      case FamilyGate::Kind::BoolOp:
        gates.push_back(json{{"kind", "boolop"}, {"op", bool_op_name(g.op)}, {"preds", g.preds}});
        break;
    }
  }
  out["gates"] = gates;
  out["output"] = f.output;
  return out;
}

inline GeneralCircuitFamily family_from_json(const json& j, const char* ctx = "family") {
  GeneralCircuitFamily f;
  f.alphabet = alphabet_from_json(jio::require(j, "alphabet", ctx), ctx);
  f.partition = partition_from_json(jio::require(j, "partition", ctx), ctx);
  for (const auto& g : jio::require(j, "gate_types", ctx))
    f.gate_types.push_back(gate_type_from_json(g, ctx));
  for (const auto& g : jio::require(j, "gates", ctx)) {
    FamilyGate gate;
    std::string kind = jio::as<std::string>(g, "kind", ctx);
    if (kind == "const") {
      gate.kind = FamilyGate::Kind::Constant;
      gate.value = jio::as<int>(g, "value", ctx);
    } else if (kind == "language") {
      gate.kind = FamilyGate::Kind::Language;
      gate.gate_type = jio::as<int>(g, "type", ctx);
      gate.wiring = wiring_from_json(f.alphabet, jio::require(g, "wiring", ctx),
                                     f.partition.class_count(), ctx);
      if (g.contains("preds")) gate.preds = jio::as<std::vector<int>>(g, "preds", ctx);
    } else if (kind == "boolop") {
      gate.kind = FamilyGate::Kind::BoolOp;
      gate.op = bool_op_from_name(jio::as<std::string>(g, "op", ctx), ctx);
      gate.preds = jio::as<std::vector<int>>(g, "preds", ctx);
    } else {
      throw JsonError(std::string(ctx) + ": unknown gate kind '" + kind + "'");
    }
    f.gates.push_back(std::move(gate));
  }
  f.output = jio::as<int>(j, "output", ctx);
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw JsonError(std::string(ctx) + ": " + e.what());
  }
  return f;
}

inline json layered_to_json(const LayeredCircuitFamily& f) {
  json out;
  out["kind"] = "layered_family";
  out["alphabet"] = alphabet_to_json(f.alphabet);
  out["partition"] = partition_to_json(f.partition);
  json types = json::array();
  for (const auto& g : f.gate_types) types.push_back(gate_type_to_json(g));
  out["gate_types"] = types;
  json layer = json::array();
  for (const auto& g : f.layer)
    layer.push_back(json{{"type", g.gate_type}, {"wiring", wiring_to_json(f.alphabet, g.wiring)}});
  out["layer"] = layer;
  out["top"] = bool_tree_to_json(f.top);
  return out;
}

inline LayeredCircuitFamily layered_from_json(const json& j, const char* ctx = "layered family") {
  LayeredCircuitFamily f;
  f.alphabet = alphabet_from_json(jio::require(j, "alphabet", ctx), ctx);
  f.partition = partition_from_json(jio::require(j, "partition", ctx), ctx);
  for (const auto& g : jio::require(j, "gate_types", ctx))
    f.gate_types.push_back(gate_type_from_json(g, ctx));
  for (const auto& g : jio::require(j, "layer", ctx)) {
    LayerGate gate;
    gate.gate_type = jio::as<int>(g, "type", ctx);
    gate.wiring = wiring_from_json(f.alphabet, jio::require(g, "wiring", ctx),
                                   f.partition.class_count(), ctx);
    f.layer.push_back(std::move(gate));
  }
  f.top = bool_tree_from_json(jio::require(j, "top", ctx), ctx);
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw JsonError(std::string(ctx) + ": " + e.what());
  }
  return f;
}

// --- block languages -------------------------------------------------------------

inline json blocklang_to_json(const BlockLang& b) {
  json out;
  out["kind"] = "blocklang";
  out["base"] = alphabet_to_json(b.base);
  out["partition"] = partition_to_json(b.partition);
  if (b.raw()) {
    out["form"] = "raw";
    out["language"] = dfa_to_json(std::get<RawBlockForm>(b.form).language);
  } else {
    const auto& p = std::get<PresentedBlockForm>(b.form);
    out["form"] = "presented";
    json atoms = json::array();
    for (const auto& atom : p.atoms) {
      json enc = json::array();
      for (const auto& per_class : atom.encoding) {
        json row = json::array();
        for (const auto& bits : per_class) row.push_back(format_word(binary_alphabet(), bits));
        enc.push_back(row);
      }
      atoms.push_back(json{{"gate", gate_type_to_json(atom.gate)}, {"encoding", enc}});
    }
    out["atoms"] = atoms;
    out["formula"] = bool_tree_to_json(p.formula);
  }
  return out;
}

inline BlockLang blocklang_from_json(const json& j, const char* ctx = "blocklang") {
  BlockLang b;
  b.base = alphabet_from_json(jio::require(j, "base", ctx), ctx);
  b.partition = partition_from_json(jio::require(j, "partition", ctx), ctx);
  std::string form = jio::as<std::string>(j, "form", ctx);
  if (form == "raw") {
    b.form = RawBlockForm{dfa_from_json(jio::require(j, "language", ctx), ctx)};
  } else if (form == "presented") {
    PresentedBlockForm p;
    for (const auto& a : jio::require(j, "atoms", ctx)) {
      BlockAtom atom;
      atom.gate = gate_type_from_json(jio::require(a, "gate", ctx), ctx);
      const json& enc = jio::require(a, "encoding", ctx);
      for (const auto& row : enc) {
        std::vector<Word> per_class;
        for (const auto& bits : row)
          per_class.push_back(parse_word(binary_alphabet(), bits.get<std::string>()));
        atom.encoding.push_back(std::move(per_class));
      }
      p.atoms.push_back(std::move(atom));
    }
    p.formula = bool_tree_from_json(jio::require(j, "formula", ctx), ctx);
    b.form = std::move(p);
  } else {
    throw JsonError(std::string(ctx) + ": field 'form' must be 'raw' or 'presented'");
  }
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw JsonError(std::string(ctx) + ": " + e.what());
  }
  return b;
}

// --- candidates and reports --------------------------------------------------------

inline json candidate_to_json(const Candidate& c) {
  json image = json::object();
  for (size_t a = 0; a < c.morphism.image.size(); ++a)
    image[c.morphism.source.name(static_cast<int>(a))] = c.morphism.image[a];
  return json{{"partition", partition_to_json(c.partition)},
              {"alphabet", alphabet_to_json(c.morphism.source)},
              {"monoid", monoid_to_json(c.morphism.target)},
              {"image", image},
              {"n0", c.n0},
              {"label", c.label}};
}

inline Candidate candidate_from_json(const json& j, const char* ctx = "candidate") {
  Candidate c;
  c.partition = partition_from_json(jio::require(j, "partition", ctx), ctx);
  Alphabet a = alphabet_from_json(jio::require(j, "alphabet", ctx), ctx);
  FiniteMonoid m = monoid_from_json(jio::require(j, "monoid", ctx), ctx);
  const json& image = jio::require(j, "image", ctx);
  std::vector<int> img(a.size(), -1);
  for (int i = 0; i < a.size(); ++i) {
    if (!image.contains(a.name(i)))
      throw JsonError(std::string(ctx) + ": field 'image' misses letter '" + a.name(i) + "'");
    img[i] = image.at(a.name(i)).get<int>();
  }
  c.morphism = MonoidMorphism{std::move(a), std::move(m), std::move(img)};
  c.n0 = j.contains("n0") ? jio::as<int>(j, "n0", ctx) : 0;
  if (j.contains("label")) c.label = jio::as<std::string>(j, "label", ctx);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw JsonError(std::string(ctx) + ": " + e.what());
  }
  return c;
}

inline json report_to_json(const RefutationReport& r) {
  json ids = json::array();
  for (const auto& id : r.identities) ids.push_back(identity_to_json(id));
  json outcomes = json::array();
  for (const auto& o : r.outcomes) {
    json image = json::object();
    for (size_t a = 0; a < o.candidate.morphism.image.size(); ++a)
      image[o.candidate.morphism.source.name(static_cast<int>(a))] = o.candidate.morphism.image[a];
    json entry{{"partition", partition_to_json(o.candidate.partition)},
               {"monoid", o.candidate.label},
               {"monoid_size", o.candidate.morphism.target.size},
               {"image", image},
               {"n0", o.candidate.n0},
               {"refuted", o.refuted}};
    if (o.refuted)
      entry["witness"] = json::array({format_word(o.candidate.morphism.source, o.witness_s),
                                      format_word(o.candidate.morphism.source, o.witness_t)});
    outcomes.push_back(std::move(entry));
  }
  return json{{"target", r.target},
              {"identities", ids},
              {"bounds", json{{"max_classes", r.bounds.max_classes},
                              {"max_modulus", r.bounds.max_modulus},
                              {"max_threshold", r.bounds.max_threshold}}},
              {"max_len", r.max_len},
              {"skipped_monoids", r.skipped_monoids},
              {"candidates", outcomes},
              {"vacuous", r.vacuous},
              {"all_refuted", r.all_refuted},
              {"evidenced_within_bounds", r.evidenced()}};
}

}  // namespace varcirc
