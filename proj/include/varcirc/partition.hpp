#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "varcirc/alphabet.hpp"

namespace varcirc {

/// Predicate over a position pair (i, j) = (distance from start, distance
/// from end). Atoms are thresholds and residues on either coordinate.
struct PosPred {
  enum class Kind { True, ILess, JLess, IMod, JMod, And, Or, Not };

  Kind kind = Kind::True;
  long c = 0;   // threshold for ILess/JLess
  long m = 1;   // modulus for IMod/JMod
  long r = 0;   // residue for IMod/JMod
  std::vector<PosPred> children;

  static PosPred truth() { return PosPred{}; }
  static PosPred i_less(long c) { return PosPred{Kind::ILess, c, 1, 0, {}}; }
  static PosPred j_less(long c) { return PosPred{Kind::JLess, c, 1, 0, {}}; }
  static PosPred i_mod(long m, long r) { return PosPred{Kind::IMod, 0, m, r, {}}; }
  static PosPred j_mod(long m, long r) { return PosPred{Kind::JMod, 0, m, r, {}}; }
  static PosPred conj(std::vector<PosPred> ps) { return PosPred{Kind::And, 0, 1, 0, std::move(ps)}; }
  static PosPred disj(std::vector<PosPred> ps) { return PosPred{Kind::Or, 0, 1, 0, std::move(ps)}; }
  static PosPred negation(PosPred p) { return PosPred{Kind::Not, 0, 1, 0, {std::move(p)}}; }

  bool eval(long i, long j) const {
    switch (kind) {
      case Kind::True: return true;
      case Kind::ILess: return i < c;
      case Kind::JLess: return j < c;
      case Kind::IMod: return i % m == r;
      case Kind::JMod: return j % m == r;
      case Kind::And:
        for (const auto& p : children)
          if (!p.eval(i, j)) return false;
        return true;
      case Kind::Or:
        for (const auto& p : children)
          if (p.eval(i, j)) return true;
        return false;
      case Kind::Not: return !children.front().eval(i, j);
    }
    return false;
  }

  void validate() const {
    switch (kind) {
      case Kind::True: return;
      case Kind::ILess:
      case Kind::JLess:
        if (c < 0) throw std::invalid_argument("partition: threshold must be a natural");
        return;
      case Kind::IMod:
      case Kind::JMod:
        if (m < 1) throw std::invalid_argument("partition: modulus must be >= 1");
        if (r < 0 || r >= m) throw std::invalid_argument("partition: residue out of range");
        return;
      case Kind::And:
      case Kind::Or:
        for (const auto& p : children) p.validate();
        return;
      case Kind::Not:
        if (children.size() != 1) throw std::invalid_argument("partition: not takes one child");
        children.front().validate();
        return;
    }
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::True: return "true";
      case Kind::ILess: return "i<" + std::to_string(c);
      case Kind::JLess: return "j<" + std::to_string(c);
      case Kind::IMod: return "i=" + std::to_string(r) + "(mod " + std::to_string(m) + ")";
      case Kind::JMod: return "j=" + std::to_string(r) + "(mod " + std::to_string(m) + ")";
      case Kind::And: {
        std::string s = "(";
        for (size_t i = 0; i < children.size(); ++i)
          s += (i ? " & " : "") + children[i].to_string();
        return s + ")";
      }
      case Kind::Or: {
        std::string s = "(";
        for (size_t i = 0; i < children.size(); ++i)
          s += (i ? " | " : "") + children[i].to_string();
        return s + ")";
      }
      case Kind::Not: return "!" + children.front().to_string();
    }
    return {};
  }
};

/// Finite partition of N^2 as an ordered list of predicates with first-match
/// semantics; the final class is the constant true, so every pair lands in
/// exactly one class.
struct PartitionSpec {
  std::vector<PosPred> classes;

  static PartitionSpec single_class() { return PartitionSpec{{PosPred::truth()}}; }

  int class_count() const { return static_cast<int>(classes.size()); }

  void validate() const {
    if (classes.empty()) throw std::invalid_argument("partition: needs at least one class");
    if (classes.back().kind != PosPred::Kind::True)
      throw std::invalid_argument("partition: final class predicate must be 'true'");
    for (const auto& p : classes) p.validate();
  }

  int class_of(long i, long j) const {
    for (size_t k = 0; k + 1 < classes.size(); ++k)
      if (classes[k].eval(i, j)) return static_cast<int>(k);
    return static_cast<int>(classes.size()) - 1;
  }

  std::string to_string() const {
    std::string s = "[";
    for (size_t k = 0; k < classes.size(); ++k) s += (k ? ", " : "") + classes[k].to_string();
    return s + "]";
  }
};

inline int class_of(const PartitionSpec& p, long i, long j) { return p.class_of(i, j); }

/// Classes of the positions of a word of length n: position i pairs with
/// (i, n-1-i).
inline std::vector<int> position_classes(const PartitionSpec& p, int n) {
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = p.class_of(i, n - 1 - i);
  return cls;
}

/// The product alphabet A x D with letters "(a,k)"; letter-major order.
struct ProductAlphabet {
  Alphabet base;
  PartitionSpec partition;

  int pair_index(int letter, int cls) const { return letter * partition.class_count() + cls; }

  Alphabet alphabet() const {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(base.size()) * partition.class_count());
    for (int a = 0; a < base.size(); ++a)
      for (int k = 0; k < partition.class_count(); ++k)
        names.push_back("(" + base.name(a) + "," + std::to_string(k) + ")");
    return Alphabet(std::move(names));
  }
};

/// Length-preserving relabeling: position i of w becomes the pair of its
/// letter and the class of (i, |w|-i-1).
inline Word transduce(const PartitionSpec& p, const Word& w) {
  const int nc = p.class_count();
  Word out;
  out.reserve(w.size());
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i) out.push_back(w[i] * nc + p.class_of(i, n - 1 - i));
  return out;
}

/// Subword of w at the positions classified k, in position order.
inline Word extract_class(const PartitionSpec& p, const Word& w, int k) {
  if (k < 0 || k >= p.class_count())
    throw std::invalid_argument("extract_class: class index out of range");
  Word out;
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i)
    if (p.class_of(i, n - 1 - i) == k) out.push_back(w[i]);
  return out;
}

}  // namespace varcirc
