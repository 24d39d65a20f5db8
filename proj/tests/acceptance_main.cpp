// Acceptance suite: end-to-end checks with one pass/fail line each. Each
// criterion produces a deterministic report string; the final criterion
// reruns everything and compares bytes.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "helpers.hpp"

using namespace varcirc;

namespace {

struct CriterionResult {
  bool pass = true;
  std::string report;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      report += "FAIL " + what + "\n";
    } else {
      report += "ok " + what + "\n";
    }
  }
};

// --- criterion 1: identity classification of the stock gate languages -------

CriterionResult gate_classification() {
  CriterionResult r;
  Alphabet bits = binary_alphabet();
  struct Row {
    std::string name;
    Dfa lang;
    bool comm, idem, omega;
  };
  std::vector<Row> rows = {
      {"and", builtin_language("and", {}, bits), true, true, false},
      {"or", builtin_language("or", {}, bits), true, true, false},
      {"mod2", builtin_language("mod", {2}, bits), true, false, true},
      {"mod3", builtin_language("mod", {3}, bits), true, false, true},
      {"mod5", builtin_language("mod", {5}, bits), true, false, true},
  };
  for (const auto& row : rows) {
    r.check(language_satisfies(row.lang, identity_commutation()).satisfied == row.comm,
            row.name + " xy=yx");
    r.check(language_satisfies(row.lang, identity_idempotent_commutative()).satisfied == row.idem,
            row.name + " x2y=xy2");
    r.check(language_satisfies(row.lang, identity_omega_equal()).satisfied == row.omega,
            row.name + " xw=yw");
  }
  return r;
}

// --- criterion 2: syntactic monoid sizes vs the congruence oracle -----------

int context_class_count(const Dfa& d, int word_len, int ctx_len) {
  std::vector<Word> contexts;
  for_each_word(d.alphabet, ctx_len, [&](const Word& c) {
    contexts.push_back(c);
    return true;
  });
  std::set<std::vector<bool>> signatures;
  for_each_word(d.alphabet, word_len, [&](const Word& w) {
    std::vector<bool> sig;
    for (const auto& x : contexts)
      for (const auto& y : contexts) {
        Word xwy = x;
        xwy.insert(xwy.end(), w.begin(), w.end());
        xwy.insert(xwy.end(), y.begin(), y.end());
        sig.push_back(membership(d, xwy));
      }
    signatures.insert(std::move(sig));
    return true;
  });
  return static_cast<int>(signatures.size());
}

CriterionResult monoid_sizes() {
  CriterionResult r;
  Alphabet bits = binary_alphabet();
  struct Row {
    std::string name;
    Dfa lang;
    int size;
  };
  std::vector<Row> rows = {
      {"and", builtin_language("and", {}, bits), 2},
      {"mod2", builtin_language("mod", {2}, bits), 2},
      {"mod3", builtin_language("mod", {3}, bits), 3},
      {"mod5", builtin_language("mod", {5}, bits), 5},
      {"all", builtin_language("all", {}, bits), 1},
  };
  for (const auto& row : rows) {
    int computed = syntactic_monoid(row.lang).monoid.size;
    int oracle = context_class_count(row.lang, 5, 4);
    r.check(computed == row.size, row.name + " computed size " + std::to_string(computed));
    r.check(oracle == row.size, row.name + " oracle size " + std::to_string(oracle));
  }
  return r;
}

// --- criterion 3: profinite membership vs stabilized factorial powers -------

CriterionResult profinite_vs_factorial() {
  CriterionResult r;
  auto zoo = vt::ab_language_zoo();
  r.check(zoo.size() == 12, "12 test languages");
  struct TermRow {
    std::string label;
    Term term;
    std::string base;
  };
  std::vector<TermRow> terms = {{"a^w", Term::omega(Term::letter("a")), "a"},
                                {"(ab)^w", Term::omega(Term::word("ab")), "ab"}};
  for (const auto& [name, lang] : zoo)
    for (const auto& tr : terms) {
      Word base = parse_word(lang.alphabet, tr.base);
      bool first = true, stable = false, consistent = true;
      for (int n = 4; n <= 7; ++n) {
        uint64_t fact = 1;
        for (int i = 2; i <= n; ++i) fact *= static_cast<uint64_t>(i);
        Word power;
        power.reserve(base.size() * fact);
        for (uint64_t k = 0; k < fact; ++k)
          power.insert(power.end(), base.begin(), base.end());
        bool in = membership(lang, power);
        if (first)
          stable = in;
        else if (in != stable)
          consistent = false;
        first = false;
      }
      bool member = profinite_membership(lang, tr.term);
      r.check(consistent && member == stable,
              name + " " + tr.label + (member ? " in" : " out"));
    }
  return r;
}

// --- criterion 4: normalization preserves the family language ---------------

CriterionResult normalization_soundness() {
  CriterionResult r;
  auto corpus = vt::family_corpus();
  r.check(corpus.size() >= 10, "corpus has >= 10 families");
  for (const auto& [name, fam] : corpus) {
    LayeredCircuitFamily norm = normalize_family(fam);
    auto cx = bounded_equivalence(fam, norm, 8);
    r.check(!cx.has_value(),
            name + (cx ? " differs on '" + format_word(fam.alphabet, *cx) + "'" : ""));
  }
  return r;
}

// --- criterion 5: block-product round trips ----------------------------------

CriterionResult block_round_trips() {
  CriterionResult r;
  std::vector<std::pair<std::string, LayeredCircuitFamily>> layered;
  for (const auto& [name, fam] : vt::family_corpus())
    layered.emplace_back(name, normalize_family(fam));
  r.check(layered.size() >= 10, "layered corpus has >= 10 families");

  for (const auto& [name, fam] : layered) {
    BlockLang b = family_to_blocklang(fam);
    auto cx1 = bounded_equivalence(fam, b, 8);
    r.check(!cx1.has_value(), name + " family->block");
    LayeredCircuitFamily back = blocklang_to_family(b);
    auto cx2 = bounded_equivalence(fam, back, 8);
    r.check(!cx2.has_value(), name + " family->block->family");
  }

  std::vector<std::pair<std::string, BlockLang>> blocks = vt::presented_corpus();
  for (size_t i = 0; i < 5; ++i)
    blocks.emplace_back("derived-" + layered[i].first, family_to_blocklang(layered[i].second));
  r.check(blocks.size() >= 10, "presented corpus has >= 10 instances");
  for (const auto& [name, b] : blocks) {
    LayeredCircuitFamily fam = blocklang_to_family(b);
    auto cx1 = bounded_equivalence(b, fam, 8);
    r.check(!cx1.has_value(), name + " block->family");
    BlockLang again = family_to_blocklang(fam);
    auto cx2 = bounded_equivalence(b, again, 8);
    r.check(!cx2.has_value(), name + " block->family->block");
    auto cx3 = bounded_equivalence(b, to_raw(b), 8);
    r.check(!cx3.has_value(), name + " presented vs raw");
  }
  return r;
}

// --- criteria 6 and 7: exhaustive candidate refutation ----------------------

void revalidate(CriterionResult& r, const LanguageOracle& lang, const RefutationReport& rep) {
  for (const auto& o : rep.outcomes) {
    if (!o.refuted) continue;
    bool ok = o.witness_s.size() == o.witness_t.size() &&
              static_cast<int>(o.witness_s.size()) >= o.candidate.n0 &&
              lang.contains(o.witness_s) != lang.contains(o.witness_t);
    for (int k = 0; ok && k < o.candidate.partition.class_count(); ++k)
      ok = o.candidate.morphism.apply(extract_class(o.candidate.partition, o.witness_s, k)) ==
           o.candidate.morphism.apply(extract_class(o.candidate.partition, o.witness_t, k));
    if (!ok) {
      r.check(false, "witness re-validation");
      return;
    }
  }
  r.check(true, "all witnesses re-validated");
}

CriterionResult refute_and_vs_mod_gates(std::string* report_json) {
  CriterionResult r;
  LanguageOracle lang = LanguageOracle::and_language();
  RefutationReport rep = refute_candidates(lang, identity_preset("cc0"), PartitionBounds{2, 2, 2},
                                           catalog_commutative_groups(4), 12);
  r.check(!rep.vacuous, "candidates admitted");
  r.check(rep.outcomes.size() >= 100, "candidate space is non-trivial");
  for (const auto& o : rep.outcomes)
    if (!o.refuted) r.check(false, "unrefuted: " + o.candidate.partition.to_string());
  r.check(rep.all_refuted, "every candidate refuted");
  revalidate(r, lang, rep);
  *report_json = report_to_json(rep).dump(2);
  return r;
}

CriterionResult refute_parity_vs_and_or_gates(std::string* report_json) {
  CriterionResult r;
  LanguageOracle lang = LanguageOracle::parity_language();
  RefutationReport rep = refute_candidates(lang, identity_preset("ac0"), PartitionBounds{2, 2, 2},
                                           catalog_aperiodic_commutative(4), 12);
  r.check(!rep.vacuous, "candidates admitted");
  for (const auto& o : rep.outcomes)
    if (!o.refuted) r.check(false, "unrefuted: " + o.candidate.partition.to_string());
  r.check(rep.all_refuted, "every candidate refuted");
  revalidate(r, lang, rep);
  *report_json = report_to_json(rep).dump(2);
  return r;
}

// --- criterion 8: independent brute-force circuit oracle --------------------

CriterionResult brute_force_agreement() {
  CriterionResult r;
  LanguageOracle and_lang = LanguageOracle::and_language();
  LanguageOracle parity = LanguageOracle::parity_language();
  std::vector<GateType> mod_pm = {builtin_gate("mod2"), builtin_gate("co-mod2")};
  std::vector<GateType> andor_pm = {builtin_gate("and"), builtin_gate("or"),
                                    builtin_gate("co-and"), builtin_gate("co-or")};

  r.check(!brute_force_circuit_search(and_lang, mod_pm, 1, 1, 4).has_value(),
          "and_4 has no single mod2-style gate");
  r.check(!brute_force_circuit_search(parity, andor_pm, 1, 1, 4).has_value(),
          "parity_4 has no single and/or-style gate");
  r.check(!brute_force_circuit_search(parity, andor_pm, 2, 1, 4).has_value(),
          "parity_4 has no two-gate and/or-style circuit");
  r.check(brute_force_circuit_search(and_lang, {builtin_gate("and")}, 1, 1, 4).has_value(),
          "and_4 found over the and gate");
  r.check(brute_force_circuit_search(parity, {builtin_gate("mod2")}, 1, 1, 4).has_value(),
          "parity_4 found over the mod2 gate");
  return r;
}

// --- criterion 9: family-induced candidates are never refuted ---------------

CriterionResult family_candidates_unrefuted() {
  CriterionResult r;
  for (const auto& [name, fam] : vt::family_corpus()) {
    LayeredCircuitFamily layered = normalize_family(fam);
    Candidate c = candidate_from_family(layered);
    auto cx = candidate_counterexample(oracle_of(layered, name), c, 10);
    r.check(!cx.has_value(),
            name + (cx ? " refuted by " + format_word(fam.alphabet, cx->first) + "/" +
                             format_word(fam.alphabet, cx->second)
                       : ""));
  }
  return r;
}

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<CriterionResult()> run;
};

}  // namespace

int main() {
  std::string refute_a_json, refute_b_json;
  std::vector<Criterion> criteria = {
      {"gate language identity classification", 1.0, gate_classification},
      {"syntactic monoid sizes vs congruence oracle", 1.0, monoid_sizes},
      {"profinite membership vs factorial powers", 5.0, profinite_vs_factorial},
      {"normalization soundness on the family corpus", 120.0, normalization_soundness},
      {"block-product round trips", 120.0, block_round_trips},
      {"exhaustive refutation: and vs mod gates", 300.0,
       [&] { return refute_and_vs_mod_gates(&refute_a_json); }},
      {"exhaustive refutation: parity vs and/or gates", 300.0,
       [&] { return refute_parity_vs_and_or_gates(&refute_b_json); }},
      {"brute-force circuit search agreement", 300.0, brute_force_agreement},
      {"family-induced candidates stay unrefuted", 120.0, family_candidates_unrefuted},
  };

  bool all_pass = true;
  std::vector<std::string> first_reports;

  auto run_all = [&](bool print) {
    std::vector<std::string> reports;
    for (auto& c : criteria) {
      auto t0 = std::chrono::steady_clock::now();
      CriterionResult res = c.run();
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      bool pass = res.pass && secs <= c.time_limit_s;
      if (print) {
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (pass ? "[PASS] " : "[FAIL] ") << c.name << " (" << secs << " s, limit "
             << c.time_limit_s << " s)";
        std::cout << line.str() << "\n";
        if (!res.pass) std::cout << res.report;
      }
      all_pass = all_pass && pass;
      reports.push_back(res.report);
    }
    reports.push_back(refute_a_json);
    reports.push_back(refute_b_json);
    return reports;
  };

  first_reports = run_all(true);
  std::vector<std::string> second_reports = run_all(false);
  bool deterministic = first_reports == second_reports;
  std::cout << (deterministic ? "[PASS] " : "[FAIL] ")
            << "byte-identical reports on rerun" << "\n";
  all_pass = all_pass && deterministic;

  std::cout << (all_pass ? "acceptance: all criteria passed" : "acceptance: FAILURES above")
            << "\n";
  return all_pass ? 0 : 1;
}
