#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace varcirc;

namespace {

int count_ones(const Alphabet& a, const Word& w) {
  int one = *a.index_of("1");
  int c = 0;
  for (int x : w)
    if (x == one) ++c;
  return c;
}

}  // namespace

TEST_CASE("builtin languages match their definitions") {
  Alphabet bits = binary_alphabet();

  SECTION("and is 1*") {
    Dfa d = builtin_language("and", {}, bits);
    REQUIRE(d.state_count == 2);
    for_each_word(bits, 8, [&](const Word& w) {
      bool all_ones = count_ones(bits, w) == static_cast<int>(w.size());
      REQUIRE(membership(d, w) == all_ones);
      return true;
    });
  }

  SECTION("all over a unary alphabet is one accepting state") {
    Dfa d = builtin_language("all", {}, Alphabet({"a"}));
    REQUIRE(d.state_count == 1);
    REQUIRE(d.accepting[0]);
  }

  SECTION("mod 3 counts ones modulo 3") {
    Dfa d = builtin_language("mod", {3}, bits);
    REQUIRE(d.state_count == 3);
    for_each_word(bits, 8, [&](const Word& w) {
      REQUIRE(membership(d, w) == (count_ones(bits, w) % 3 == 0));
      return true;
    });
  }

  SECTION("error paths") {
    REQUIRE_THROWS_AS(builtin_language("mod", {0}, bits), std::invalid_argument);
    REQUIRE_THROWS_AS(builtin_language("nope", {}, bits), std::invalid_argument);
    REQUIRE_THROWS_AS(builtin_language("and", {}, Alphabet({"a", "b"})), std::invalid_argument);
  }
}

TEST_CASE("membership handles the empty word and foreign letters") {
  Dfa ones = builtin_language("and", {}, binary_alphabet());
  REQUIRE(membership(ones, parse_word(ones.alphabet, "111")));
  REQUIRE(membership(ones, {}));
  REQUIRE_FALSE(membership(ones, parse_word(ones.alphabet, "101")));
  REQUIRE_THROWS_AS(membership(ones, Word{7}), std::invalid_argument);
}

TEST_CASE("minimize reaches the canonical fixpoint") {
  Alphabet bits = binary_alphabet();
  Dfa ones = builtin_language("and", {}, bits);
  REQUIRE(minimize(ones) == ones);

  SECTION("duplicated sink state collapses") {
    // 1* with two copies of the sink
    Dfa d;
    d.alphabet = bits;
    d.state_count = 3;
    d.initial = 0;
    d.accepting = {true, false, false};
    d.transition = {1, 0, 2, 1, 1, 2};
    Dfa m = minimize(d);
    REQUIRE(m == ones);
  }

  SECTION("parity with redundant states collapses to two") {
    Dfa p = builtin_language("parity", {}, bits);
    Dfa d;
    d.alphabet = bits;
    d.state_count = 4;
    d.initial = 0;
    d.accepting = {true, false, true, false};
    // states 2,3 mirror 0,1
    d.transition = {0, 1, 1, 2, 2, 3, 3, 0};
    Dfa m = minimize(d);
    REQUIRE(m.state_count == 2);
    REQUIRE(m == p);
  }

  SECTION("membership is preserved on random DFAs") {
    vt::Lcg rng(42);
    Alphabet abc({"a", "b", "c"});
    for (int trial = 0; trial < 20; ++trial) {
      Dfa d = vt::random_dfa(rng, trial % 2 ? bits : abc, 5);
      Dfa m = minimize(d);
      for_each_word(d.alphabet, 8, [&](const Word& w) {
        REQUIRE(membership(d, w) == membership(m, w));
        return true;
      });
    }
  }
}

TEST_CASE("combine implements the Boolean operations") {
  Alphabet bits = binary_alphabet();
  Dfa ones = builtin_language("and", {}, bits);
  Dfa parity = builtin_language("parity", {}, bits);

  SECTION("complement of 1* accepts exactly the words containing a 0") {
    Dfa c = lang_complement(ones);
    for_each_word(bits, 6, [&](const Word& w) {
      REQUIRE(membership(c, w) == !membership(ones, w));
      return true;
    });
  }

  SECTION("intersection(1*, parity) is the even-length all-ones language") {
    Dfa x = lang_intersection(ones, parity);
    for_each_word(bits, 6, [&](const Word& w) {
      bool expect = count_ones(bits, w) == static_cast<int>(w.size()) && w.size() % 2 == 0;
      REQUIRE(membership(x, w) == expect);
      return true;
    });
  }

  SECTION("union with the complement is everything") {
    Dfa full = lang_union(parity, lang_complement(parity));
    REQUIRE(full == builtin_language("all", {}, bits));
  }

  SECTION("De Morgan up to length 6") {
    vt::Lcg rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      Dfa x = vt::random_dfa(rng, bits, 4);
      Dfa y = vt::random_dfa(rng, bits, 4);
      Dfa lhs = lang_complement(lang_union(x, y));
      Dfa rhs = lang_intersection(lang_complement(x), lang_complement(y));
      REQUIRE(lhs == rhs);  // canonical forms coincide, not just bounded agreement
      for_each_word(bits, 6, [&](const Word& w) {
        REQUIRE(membership(lhs, w) == membership(rhs, w));
        return true;
      });
    }
  }

  SECTION("alphabet mismatch is rejected") {
    REQUIRE_THROWS_AS(lang_union(ones, builtin_language("all", {}, Alphabet({"a"}))),
                      std::invalid_argument);
  }
}

TEST_CASE("two-sided quotients") {
  Alphabet bits = binary_alphabet();

  SECTION("1* has exactly 1* and the empty language") {
    auto qs = two_sided_quotients(builtin_language("and", {}, bits));
    REQUIRE(qs.size() == 2);
    std::vector<Dfa> expect = {builtin_language("and", {}, bits),
                               builtin_language("none", {}, bits)};
    for (const auto& e : expect)
      REQUIRE(std::count(qs.begin(), qs.end(), e) == 1);
  }

  SECTION("the full language has only itself") {
    auto qs = two_sided_quotients(builtin_language("all", {}, bits));
    REQUIRE(qs.size() == 1);
  }

  SECTION("parity has itself and its complement") {
    Dfa p = builtin_language("parity", {}, bits);
    auto qs = two_sided_quotients(p);
    REQUIRE(qs.size() == 2);
    REQUIRE(std::count(qs.begin(), qs.end(), p) == 1);
    REQUIRE(std::count(qs.begin(), qs.end(), lang_complement(p)) == 1);
  }

  SECTION("every quotient is witnessed by concrete context words") {
    vt::Lcg rng(11);
    for (int trial = 0; trial < 8; ++trial) {
      Dfa d = vt::random_dfa(rng, bits, 4);
      for (const auto& qw : two_sided_quotients_with_witnesses(d)) {
        for_each_word(bits, 6, [&](const Word& w) {
          Word xwy = qw.x;
          xwy.insert(xwy.end(), w.begin(), w.end());
          xwy.insert(xwy.end(), qw.y.begin(), qw.y.end());
          REQUIRE(membership(qw.language, w) == membership(d, xwy));
          return true;
        });
      }
    }
  }
}

TEST_CASE("inverse morphism images") {
  Alphabet bits = binary_alphabet();
  Alphabet ab({"a", "b"});
  Dfa ones = builtin_language("and", {}, bits);

  SECTION("a maps to 1, b maps to 0: preimage of 1* is a*") {
    FreeMorphism h{ab, bits, {parse_word(bits, "1"), parse_word(bits, "0")}};
    Dfa pre = inverse_morphism_image(ones, h);
    for_each_word(ab, 6, [&](const Word& w) {
      REQUIRE(membership(pre, w) == membership(ones, h.apply(w)));
      bool a_star = std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
      REQUIRE(membership(pre, w) == a_star);
      return true;
    });
  }

  SECTION("identity morphism preserves the language") {
    FreeMorphism id{bits, bits, {parse_word(bits, "0"), parse_word(bits, "1")}};
    REQUIRE(inverse_morphism_image(ones, id) == ones);
  }

  SECTION("erasing morphism yields all or nothing depending on epsilon") {
    FreeMorphism erase{ab, bits, {Word{}, Word{}}};
    REQUIRE(inverse_morphism_image(ones, erase) == builtin_language("all", {}, ab));
    Dfa no_eps = lang_difference(ones, builtin_language("single_word", {}, bits));
    REQUIRE(inverse_morphism_image(no_eps, erase) == builtin_language("none", {}, ab));
  }

  SECTION("alphabet mismatch is rejected") {
    FreeMorphism bad{ab, ab, {Word{0}, Word{1}}};
    REQUIRE_THROWS_AS(inverse_morphism_image(ones, bad), std::invalid_argument);
  }
}

TEST_CASE("commutativity test agrees with the permutation oracle") {
  Alphabet bits = binary_alphabet();
  Alphabet ab({"a", "b"});

  REQUIRE(is_commutative(builtin_language("and", {}, bits)));
  REQUIRE(is_commutative(builtin_language("all", {}, ab)));
  REQUIRE_FALSE(is_commutative(builtin_language("single_word", {0, 1}, ab)));

  // oracle: membership constant on each multiset of letters, up to length 6
  auto permutation_closed = [&](const Dfa& d) {
    std::map<std::vector<int>, bool> sorted_class;
    bool closed = true;
    for_each_word(d.alphabet, 6, [&](const Word& w) {
      std::vector<int> key = w;
      std::sort(key.begin(), key.end());
      auto it = sorted_class.find(key);
      if (it == sorted_class.end())
        sorted_class.emplace(key, membership(d, w));
      else if (it->second != membership(d, w)) {
        closed = false;
        return false;
      }
      return true;
    });
    return closed;
  };

  vt::Lcg rng(23);
  int commutative_seen = 0, noncommutative_seen = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Dfa d = vt::random_dfa(rng, ab, 4);
    bool fast = is_commutative(d);
    (fast ? commutative_seen : noncommutative_seen)++;
    REQUIRE(fast == permutation_closed(d));
  }
  REQUIRE(commutative_seen > 0);
  REQUIRE(noncommutative_seen > 0);
}
