#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "varcirc/monoid.hpp"

namespace varcirc {

/// Syntax tree over letters and variables with concatenation and omega-power.
/// A ground term (letters only) denotes a profinite word; terms with
/// variables are identity sides.
class Term {
 public:
  enum class Kind { Letter, Variable, Concat, Omega };

  static Term letter(std::string name) { return Term(Kind::Letter, std::move(name), {}, {}); }
  static Term variable(std::string name) { return Term(Kind::Variable, std::move(name), {}, {}); }
  static Term concat(Term l, Term r) {
    return Term(Kind::Concat, {}, std::make_shared<Term>(std::move(l)),
                std::make_shared<Term>(std::move(r)));
  }
  static Term omega(Term child) {
    return Term(Kind::Omega, {}, std::make_shared<Term>(std::move(child)), {});
  }
  /// Concatenation of single letters, e.g. word("110").
  static Term word(const std::string& letters) {
    if (letters.empty()) throw std::invalid_argument("term: empty ground word has no term form");
    Term t = letter(std::string(1, letters[0]));
    for (size_t i = 1; i < letters.size(); ++i)
      t = concat(std::move(t), letter(std::string(1, letters[i])));
    return t;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Term& left() const { return *left_; }
  const Term& right() const { return *right_; }
  const Term& child() const { return *left_; }

  bool ground() const {
    switch (kind_) {
      case Kind::Letter: return true;
      case Kind::Variable: return false;
      case Kind::Concat: return left_->ground() && right_->ground();
      case Kind::Omega: return left_->ground();
    }
    return false;
  }

  void collect_variables(std::set<std::string>& out) const {
    switch (kind_) {
      case Kind::Letter: return;
      case Kind::Variable: out.insert(name_); return;
      case Kind::Concat:
        left_->collect_variables(out);
        right_->collect_variables(out);
        return;
      case Kind::Omega: left_->collect_variables(out); return;
    }
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Letter: return name_;
      case Kind::Variable: return name_;
      case Kind::Concat: return left_->to_string() + right_->to_string();
      case Kind::Omega: {
        std::string c = left_->to_string();
        if (c.size() > 1) c = "(" + c + ")";
        return c + "^w";
      }
    }
    return {};
  }

 private:
  Term(Kind k, std::string n, std::shared_ptr<Term> l, std::shared_ptr<Term> r)
      : kind_(k), name_(std::move(n)), left_(std::move(l)), right_(std::move(r)) {}

  Kind kind_;
  std::string name_;
  std::shared_ptr<Term> left_;   // Concat left / Omega child
  std::shared_ptr<Term> right_;  // Concat right
};

struct Identity {
  Term lhs;
  Term rhs;

  std::vector<std::string> variables() const {
    std::set<std::string> vars;
    lhs.collect_variables(vars);
    rhs.collect_variables(vars);
    return {vars.begin(), vars.end()};
  }
  bool ground() const { return lhs.ground() && rhs.ground(); }
  std::string to_string() const { return lhs.to_string() + " = " + rhs.to_string(); }
};

using Assignment = std::map<std::string, int>;  // variable -> monoid element

/// Letters are read through the morphism, variables through the assignment,
/// concatenation is the table product and omega the idempotent power.
inline int evaluate_term(const Term& t, const FiniteMonoid& m, const MonoidMorphism* h,
                         const Assignment& assignment) {
  switch (t.kind()) {
    case Term::Kind::Letter: {
      if (!h) throw std::invalid_argument("evaluate_term: ground letter without a morphism");
      auto idx = h->source.index_of(t.name());
      if (!idx)
        throw std::invalid_argument("evaluate_term: letter '" + t.name() +
                                    "' outside the morphism alphabet");
      return h->image[*idx];
    }
    case Term::Kind::Variable: {
      auto it = assignment.find(t.name());
      if (it == assignment.end())
        throw std::invalid_argument("evaluate_term: unbound variable '" + t.name() + "'");
      return it->second;
    }
    case Term::Kind::Concat:
      return m.mul(evaluate_term(t.left(), m, h, assignment),
                   evaluate_term(t.right(), m, h, assignment));
    case Term::Kind::Omega:
      return omega_power(m, evaluate_term(t.child(), m, h, assignment));
  }
  throw std::logic_error("evaluate_term: unreachable");
}

inline int evaluate_term(const Term& t, const MonoidMorphism& h,
                         const Assignment& assignment = {}) {
  return evaluate_term(t, h.target, &h, assignment);
}

/// Outcome of an identity check: satisfied, or the lexicographically first
/// failing variable assignment.
struct SatisfactionResult {
  bool satisfied = true;
  Assignment witness;  // populated when !satisfied and variables exist

  explicit operator bool() const { return satisfied; }
};

/// Exhaustive check over all assignments of the identity's variables to
/// monoid elements, in lexicographic order (variables sorted by name,
/// elements by index). Ground letters require a morphism.
inline SatisfactionResult monoid_satisfies(const FiniteMonoid& m, const Identity& id,
                                           const MonoidMorphism* h = nullptr) {
  const auto vars = id.variables();
  std::vector<int> vals(vars.size(), 0);
  while (true) {
    Assignment a;
    for (size_t i = 0; i < vars.size(); ++i) a.emplace(vars[i], vals[i]);
    if (evaluate_term(id.lhs, m, h, a) != evaluate_term(id.rhs, m, h, a))
      return SatisfactionResult{false, a};
    if (vars.empty()) return SatisfactionResult{};
    size_t i = vars.size();
    while (i > 0 && vals[i - 1] == m.size - 1) vals[--i] = 0;
    if (i == 0) return SatisfactionResult{};
    ++vals[i - 1];
  }
}

/// A language satisfies an identity when the syntactic morphism equates both
/// sides under every variable assignment; for ground identities this is
/// equality of the two syntactic images (quotient-wise agreement).
inline SatisfactionResult language_satisfies(const Dfa& d, const Identity& id) {
  DfaMonoid syn = syntactic_monoid(d);
  return monoid_satisfies(syn.monoid, id, &syn.morphism);
}

/// Whether L(d) belongs to the ultrafilter denoted by a ground term: evaluate
/// the term under the syntactic morphism and test whether that syntactic
/// class is accepted.
inline bool profinite_membership(const Dfa& d, const Term& t) {
  if (!t.ground())
    throw std::invalid_argument("profinite_membership: term must be ground (letters only)");
  DfaMonoid syn = syntactic_monoid(d);
  int e = evaluate_term(t, syn.morphism);
  return syn.element_accepts(e);
}

// Identity presets for the stock gate bases: and/or gates, mod gates, both.
inline Identity identity_commutation() {
  return Identity{Term::concat(Term::variable("x"), Term::variable("y")),
                  Term::concat(Term::variable("y"), Term::variable("x"))};
}
inline Identity identity_idempotent_commutative() {  // x^2 y = x y^2
  Term x = Term::variable("x"), y = Term::variable("y");
  return Identity{Term::concat(Term::concat(x, x), y), Term::concat(x, Term::concat(y, y))};
}
inline Identity identity_omega_equal() {  // x^w = y^w
  return Identity{Term::omega(Term::variable("x")), Term::omega(Term::variable("y"))};
}

inline std::vector<Identity> identity_preset(const std::string& name) {
  if (name == "ac0") return {identity_commutation(), identity_idempotent_commutative()};
  if (name == "acc0") return {identity_commutation()};
  if (name == "cc0") return {identity_commutation(), identity_omega_equal()};
  throw std::invalid_argument("identity preset: unknown name '" + name + "'");
}

}  // namespace varcirc
