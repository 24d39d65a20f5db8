// Command-line front end: every library module as a subcommand with JSON
// input/output. Exit codes: 0 result, 1 semantic negative (property fails,
// counterexample found), 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varcirc/varcirc.hpp"

namespace {

using namespace varcirc;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct Output {
  std::string path;     // empty = stdout
  std::string format = "json";
  bool meta = false;

  void emit(const json& payload, const std::string& text_form = "") const {
    std::string body;
    if (format == "text" && !text_form.empty())
      body = text_form;
    else
      body = payload.dump(2) + "\n";
    if (path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
      out << body;
    }
    if (meta) {
      auto now = std::chrono::system_clock::now().time_since_epoch();
      std::cerr << "meta: emitted " << body.size() << " bytes at "
                << std::chrono::duration_cast<std::chrono::milliseconds>(now).count() << " ms\n";
    }
  }
};

json load_json(const std::string& spec) {
  std::string text;
  if (!spec.empty() && spec.front() == '{') {
    text = spec;
  } else {
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw JsonError("cannot open input file '" + spec + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonError("malformed JSON in '" + spec + "': " + e.what());
  }
}

LanguageOracle load_target(const std::string& spec) {
  if (spec == "and") return LanguageOracle::and_language();
  if (spec == "parity") return LanguageOracle::parity_language();
  return LanguageOracle::from_dfa(dfa_from_json(load_json(spec), "target"), spec);
}

std::vector<Identity> load_identities(const std::string& spec) {
  if (spec == "ac0" || spec == "acc0" || spec == "cc0") return identity_preset(spec);
  return identities_from_json(load_json(spec));
}

std::vector<NamedMonoid> load_catalog(const std::string& spec, int max_size) {
  if (spec == "groups" || spec == "aperiodic") return catalog_preset(spec, max_size);
  std::vector<NamedMonoid> out;
  json j = load_json(spec);
  for (const auto& e : jio::require(j, "monoids", "catalog"))
    out.push_back(NamedMonoid{jio::as<std::string>(e, "name", "catalog"),
                              monoid_from_json(jio::require(e, "monoid", "catalog"), "catalog")});
  return out;
}

PositionPair parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw JsonError("position pair must look like 'i,n': got '" + s + "'");
  return PositionPair{std::stol(s.substr(0, comma)), std::stol(s.substr(comma + 1))};
}

PartitionBounds parse_bounds(const std::string& s) {
  PartitionBounds b;
  std::istringstream in(s);
  char c1 = 0, c2 = 0;
  if (!(in >> b.max_classes >> c1 >> b.max_modulus >> c2 >> b.max_threshold) || c1 != ',' ||
      c2 != ',')
    throw JsonError("bounds must look like 'classes,modulus,threshold': got '" + s + "'");
  return b;
}

// Families and block languages are told apart by their "kind" field.
LanguageOracle load_language_object(const std::string& path) {
  json j = load_json(path);
  std::string kind = jio::as<std::string>(j, "kind", "input");
  if (kind == "general_family") return oracle_of(family_from_json(j), path);
  if (kind == "layered_family") return oracle_of(layered_from_json(j), path);
  if (kind == "blocklang") return oracle_of(blocklang_from_json(j), path);
  throw JsonError("input: unknown kind '" + kind + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"syntactic monoids, profinite identities and constant-size circuit families"};
  app.require_subcommand(1);
  app.fallthrough();  // --out/--format/--meta may follow the subcommand
  Output out;
  app.add_option("--out", out.path, "write the payload to a file instead of stdout");
  app.add_option("--format", out.format, "payload format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_flag("--meta", out.meta, "print run metadata on stderr (payload stays deterministic)");

  int exit_code = kExitOk;

  // ----- lang ---------------------------------------------------------------
  auto* lang = app.add_subcommand("lang", "regular language operations");
  lang->require_subcommand(1);
  static std::string lang_in, lang_term, lang_ids;

  auto* lang_min = lang->add_subcommand("minimize", "canonical minimal DFA");
  lang_min->add_option("--in", lang_in, "DFA JSON file")->required();
  lang_min->callback([&] { out.emit(dfa_to_json(minimize(dfa_from_json(load_json(lang_in))))); });

  auto* lang_mon = lang->add_subcommand("monoid", "syntactic monoid and morphism");
  lang_mon->add_option("--in", lang_in, "DFA JSON file")->required();
  lang_mon->callback([&] {
    DfaMonoid syn = syntactic_monoid(dfa_from_json(load_json(lang_in)));
    json image = json::object();
    json accepts = json::array();
    for (int a = 0; a < syn.morphism.source.size(); ++a)
      image[syn.morphism.source.name(a)] = syn.morphism.image[a];
    for (int e = 0; e < syn.monoid.size; ++e)
      if (syn.element_accepts(e)) accepts.push_back(e);
    json payload{{"monoid", monoid_to_json(syn.monoid)},
                 {"image", image},
                 {"accepting_elements", accepts}};
    std::ostringstream text;
    text << "syntactic monoid size " << syn.monoid.size << "\n";
    out.emit(payload, text.str());
  });

  auto* lang_id = lang->add_subcommand("identity", "check profinite identities");
  lang_id->add_option("--in", lang_in, "DFA JSON file")->required();
  lang_id->add_option("--identities", lang_ids, "preset ac0|acc0|cc0 or identities JSON file")
      ->required();
  lang_id->callback([&] {
    Dfa d = dfa_from_json(load_json(lang_in));
    json results = json::array();
    std::ostringstream text;
    bool all = true;
    for (const Identity& id : load_identities(lang_ids)) {
      SatisfactionResult res = language_satisfies(d, id);
      json entry{{"identity", identity_to_json(id)}, {"satisfied", res.satisfied}};
      if (!res.satisfied && !res.witness.empty()) entry["witness"] = res.witness;
      results.push_back(std::move(entry));
      text << id.to_string() << ": " << (res.satisfied ? "holds" : "fails") << "\n";
      all = all && res.satisfied;
    }
    out.emit(json{{"results", results}, {"all_satisfied", all}}, text.str());
    if (!all) exit_code = kExitNegative;
  });

  auto* lang_pro = lang->add_subcommand("profinite-member",
                                        "membership of the language in a ground term's ultrafilter");
  lang_pro->add_option("--in", lang_in, "DFA JSON file")->required();
  lang_pro->add_option("--term", lang_term, "term JSON file or inline JSON")->required();
  lang_pro->callback([&] {
    Dfa d = dfa_from_json(load_json(lang_in));
    Term t = term_from_json(load_json(lang_term));
    bool member = profinite_membership(d, t);
    out.emit(json{{"term", term_to_json(t)}, {"member", member}},
             std::string(member ? "member" : "not a member") + "\n");
    if (!member) exit_code = kExitNegative;
  });

  auto* lang_comm = lang->add_subcommand("commutative", "letter permutation closure");
  lang_comm->add_option("--in", lang_in, "DFA JSON file")->required();
  lang_comm->callback([&] {
    bool c = is_commutative(dfa_from_json(load_json(lang_in)));
    out.emit(json{{"commutative", c}}, std::string(c ? "commutative" : "not commutative") + "\n");
    if (!c) exit_code = kExitNegative;
  });

  // ----- circuit ------------------------------------------------------------
  auto* circuit = app.add_subcommand("circuit", "constant-size circuits and families");
  circuit->require_subcommand(1);
  static std::string circ_in, circ_word, circ_a, circ_b;
  static int circ_max_len = 8;

  auto* circ_eval = circuit->add_subcommand("eval", "evaluate a fixed-length circuit");
  circ_eval->add_option("--in", circ_in, "circuit JSON file")->required();
  circ_eval->add_option("--word", circ_word, "input word over the circuit alphabet")->required();
  circ_eval->callback([&] {
    Circuit c = circuit_from_json(load_json(circ_in));
    int bit = evaluate_circuit(c, parse_word(c.alphabet, circ_word));
    out.emit(json{{"value", bit}}, std::to_string(bit) + "\n");
    if (bit == 0) exit_code = kExitNegative;
  });

  auto* circ_norm = circuit->add_subcommand("normalize", "layered normal form of a family");
  circ_norm->add_option("--in", circ_in, "general family JSON file")->required();
  circ_norm->callback([&] {
    GeneralCircuitFamily fam = family_from_json(load_json(circ_in));
    LayeredCircuitFamily norm = normalize_family(fam);
    std::ostringstream text;
    text << "layer gates emitted: " << norm.layer.size() << " (from " << fam.gates.size()
         << " original gates)\n";
    out.emit(layered_to_json(norm), text.str());
  });

  auto* circ_tob = circuit->add_subcommand("to-block", "layered family as a block language");
  circ_tob->add_option("--in", circ_in, "layered family JSON file")->required();
  circ_tob->callback([&] {
    out.emit(blocklang_to_json(family_to_blocklang(layered_from_json(load_json(circ_in)))));
  });

  auto* circ_fromb = circuit->add_subcommand("from-block", "block language as a layered family");
  circ_fromb->add_option("--in", circ_in, "presented block language JSON file")->required();
  circ_fromb->callback([&] {
    out.emit(layered_to_json(blocklang_to_family(blocklang_from_json(load_json(circ_in)))));
  });

  auto* circ_eq = circuit->add_subcommand("equiv", "bounded equivalence of families/block languages");
  circ_eq->add_option("--a", circ_a, "family or block language JSON file")->required();
  circ_eq->add_option("--b", circ_b, "family or block language JSON file")->required();
  circ_eq->add_option("--max-len", circ_max_len, "word length bound")->capture_default_str();
  circ_eq->callback([&] {
    LanguageOracle x = load_language_object(circ_a);
    LanguageOracle y = load_language_object(circ_b);
    auto cx = bounded_equivalence(x, y, circ_max_len);
    if (cx) {
      out.emit(json{{"equivalent", false}, {"counterexample", format_word(x.alphabet, *cx)}},
               "differ on '" + format_word(x.alphabet, *cx) + "'\n");
      exit_code = kExitNegative;
    } else {
      out.emit(json{{"equivalent", true}, {"max_len", circ_max_len}},
               "equivalent up to length " + std::to_string(circ_max_len) + "\n");
    }
  });

  // ----- separate -----------------------------------------------------------
  auto* sep = app.add_subcommand("separate", "finite-scale separation experiments");
  sep->require_subcommand(1);
  static std::string sep_target, sep_pa, sep_pb, sep_cand, sep_ids, sep_catalog = "groups",
                     sep_bounds = "2,2,2", sep_base;
  static int sep_max_len = 12, sep_k = 1, sep_mult = 1, sep_n = 4, sep_max_size = 4;

  auto* sep_swap = sep->add_subcommand("swap", "does exchanging two positions respect the language");
  sep_swap->add_option("--target", sep_target, "and | parity | DFA JSON file")->required();
  sep_swap->add_option("--pair-a", sep_pa, "position pair 'i,n'")->required();
  sep_swap->add_option("--pair-b", sep_pb, "position pair 'j,m'")->required();
  sep_swap->callback([&] {
    LanguageOracle lang = load_target(sep_target);
    bool ok = swap_respects(lang, parse_pair(sep_pa), parse_pair(sep_pb));
    out.emit(json{{"respects", ok}}, std::string(ok ? "respected" : "violated") + "\n");
    if (!ok) exit_code = kExitNegative;
  });

  auto* sep_cx = sep->add_subcommand("counterexample", "refute one candidate");
  sep_cx->add_option("--target", sep_target, "and | parity | DFA JSON file")->required();
  sep_cx->add_option("--candidate", sep_cand, "candidate JSON file")->required();
  sep_cx->add_option("--max-len", sep_max_len, "word length bound")->capture_default_str();
  sep_cx->callback([&] {
    LanguageOracle lang = load_target(sep_target);
    Candidate c = candidate_from_json(load_json(sep_cand));
    auto cx = candidate_counterexample(lang, c, sep_max_len);
    if (cx) {
      out.emit(json{{"refuted", true},
                    {"witness", json::array({format_word(lang.alphabet, cx->first),
                                             format_word(lang.alphabet, cx->second)})}},
               "witness: " + format_word(lang.alphabet, cx->first) + " vs " +
                   format_word(lang.alphabet, cx->second) + "\n");
      exit_code = kExitNegative;
    } else {
      out.emit(json{{"refuted", false}}, "no counterexample within bounds\n");
    }
  });

  auto* sep_ref = sep->add_subcommand("refute", "refute every candidate within bounds");
  sep_ref->add_option("--target", sep_target, "and | parity | DFA JSON file")->required();
  sep_ref->add_option("--identities", sep_ids, "preset ac0|acc0|cc0 or identities JSON file")
      ->required();
  sep_ref->add_option("--bounds", sep_bounds, "partition bounds 'classes,modulus,threshold'")
      ->capture_default_str();
  sep_ref->add_option("--catalog", sep_catalog, "groups | aperiodic | catalog JSON file")
      ->capture_default_str();
  sep_ref->add_option("--max-size", sep_max_size, "size bound for preset catalogs")
      ->capture_default_str();
  sep_ref->add_option("--max-len", sep_max_len, "word length bound")->capture_default_str();
  sep_ref->callback([&] {
    LanguageOracle lang = load_target(sep_target);
    RefutationReport r =
        refute_candidates(lang, load_identities(sep_ids), parse_bounds(sep_bounds),
                          load_catalog(sep_catalog, sep_max_size), sep_max_len);
    out.emit(report_to_json(r), render_report_text(r));
    if (!r.evidenced()) exit_code = kExitNegative;
  });

  auto* sep_bf = sep->add_subcommand("brute-force", "exhaustive circuit search at one length");
  sep_bf->add_option("--target", sep_target, "and | parity | DFA JSON file")->required();
  sep_bf->add_option("--base", sep_base, "comma-separated gates, e.g. 'mod2,co-mod2'")->required();
  sep_bf->add_option("--k", sep_k, "number of gates (<= 2)")->capture_default_str();
  sep_bf->add_option("--multiplicity", sep_mult, "wires per position (= 1)")->capture_default_str();
  sep_bf->add_option("--n", sep_n, "input length (<= 8)")->capture_default_str();
  sep_bf->callback([&] {
    LanguageOracle lang = load_target(sep_target);
    std::vector<GateType> base;
    std::istringstream ss(sep_base);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) base.push_back(builtin_gate(item));
    auto found = brute_force_circuit_search(lang, base, sep_k, sep_mult, sep_n);
    if (found) {
      out.emit(json{{"found", true}, {"circuit", circuit_to_json(*found)}}, "found\n");
    } else {
      out.emit(json{{"found", false}}, "no circuit in the searched space\n");
      exit_code = kExitNegative;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitError;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
