#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace varcirc;

namespace {

// Independent Myhill-style oracle: the number of distinct two-sided-context
// signatures of words up to word_len, with contexts up to ctx_len.
int congruence_class_count(const Dfa& d, int word_len, int ctx_len) {
  std::vector<Word> contexts;
  for_each_word(d.alphabet, ctx_len, [&](const Word& c) {
    contexts.push_back(c);
    return true;
  });
  std::set<std::vector<bool>> signatures;
  for_each_word(d.alphabet, word_len, [&](const Word& w) {
    std::vector<bool> sig;
    sig.reserve(contexts.size() * contexts.size());
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

}  // namespace

TEST_CASE("transition monoid of small automata") {
  SECTION("one-state automaton gives the trivial monoid") {
    DfaMonoid tm = transition_monoid(builtin_language("all", {}, Alphabet({"a"})));
    REQUIRE(tm.monoid.size == 1);
    tm.monoid.validate();
  }

  SECTION("parity gives Z2") {
    DfaMonoid tm = transition_monoid(builtin_language("parity", {}, binary_alphabet()));
    REQUIRE(tm.monoid.size == 2);
    tm.monoid.validate();
    int flip = tm.morphism.image[*tm.morphism.source.index_of("1")];
    REQUIRE(flip != tm.monoid.identity);
    REQUIRE(tm.monoid.mul(flip, flip) == tm.monoid.identity);
    REQUIRE(tm.morphism.image[*tm.morphism.source.index_of("0")] == tm.monoid.identity);
  }

  SECTION("1* gives identity plus an absorbing element") {
    DfaMonoid tm = transition_monoid(builtin_language("and", {}, binary_alphabet()));
    REQUIRE(tm.monoid.size == 2);
    int z = tm.morphism.image[*tm.morphism.source.index_of("0")];
    REQUIRE(z != tm.monoid.identity);
    REQUIRE(tm.monoid.mul(z, z) == z);
    REQUIRE(tm.monoid.mul(z, tm.monoid.identity) == z);
    REQUIRE(tm.morphism.image[*tm.morphism.source.index_of("1")] == tm.monoid.identity);
  }

  SECTION("morphism evaluation matches composed transformations") {
    vt::Lcg rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      Dfa d = vt::random_dfa(rng, binary_alphabet(), 4);
      DfaMonoid tm = transition_monoid(d);
      tm.monoid.validate();
      for_each_word(d.alphabet, 5, [&](const Word& w) {
        int e = tm.morphism.apply(w);
        REQUIRE(tm.action[e][d.initial] == d.run(d.initial, w));
        return true;
      });
    }
  }
}

TEST_CASE("syntactic monoid sizes match the congruence oracle") {
  Alphabet bits = binary_alphabet();

  struct Row {
    Dfa lang;
    int expected;
  };
  std::vector<Row> rows = {
      {builtin_language("and", {}, bits), 2},
      {builtin_language("mod", {2}, bits), 2},
      {builtin_language("mod", {3}, bits), 3},
      {builtin_language("mod", {5}, bits), 5},
      {builtin_language("all", {}, bits), 1},
  };
  for (const auto& row : rows) {
    DfaMonoid syn = syntactic_monoid(row.lang);
    REQUIRE(syn.monoid.size == row.expected);
    REQUIRE(congruence_class_count(row.lang, 5, 4) == row.expected);
  }

  SECTION("the syntactic morphism separates exactly the context classes") {
    for (const auto& [name, lang] : vt::ab_language_zoo()) {
      DfaMonoid syn = syntactic_monoid(lang);
      syn.monoid.validate();
      INFO(name);
      REQUIRE(congruence_class_count(lang, 4, 3) <= syn.monoid.size);
    }
  }
}

TEST_CASE("omega power is the idempotent of the cyclic subsemigroup") {
  std::vector<FiniteMonoid> monoids = {cyclic_group(2), cyclic_group(3), cyclic_group(4),
                                       u1_monoid(), saturating_chain(4),
                                       direct_product(cyclic_group(2), u1_monoid())};
  for (const auto& m : monoids) {
    m.validate();
    for (int x = 0; x < m.size; ++x) {
      int w = omega_power(m, x);
      REQUIRE(m.is_idempotent(w));
      // stabilized factorial powers computed independently by repeated squaring
      uint64_t fact = 1;
      for (int n = 1; n <= m.size + 3; ++n) {
        fact *= static_cast<uint64_t>(n);
        if (n >= m.size) REQUIRE(m.pow(x, fact) == w);
      }
    }
  }

  SECTION("named cases") {
    FiniteMonoid z2 = cyclic_group(2);
    REQUIRE(omega_power(z2, 0) == 0);
    REQUIRE(omega_power(z2, 1) == 0);  // generator powers stabilize at e
    FiniteMonoid u1 = u1_monoid();
    REQUIRE(omega_power(u1, 1) == 1);  // absorbing element is already idempotent
  }
}

TEST_CASE("catalog monoids are lawful and commutative") {
  for (const auto& preset : {"groups", "aperiodic"})
    for (int max_size : {4, 8}) {
      auto cat = catalog_preset(preset, max_size);
      REQUIRE_FALSE(cat.empty());
      for (const auto& nm : cat) {
        INFO(nm.name);
        nm.monoid.validate();
        REQUIRE(nm.monoid.commutative());
        REQUIRE(nm.monoid.size <= std::max(max_size, 8));
      }
    }
  REQUIRE(catalog_commutative_groups(5).size() == 5);  // Z2..Z5 plus Z2xZ2
}
