#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace varcirc;

namespace {

PartitionSpec first_position_split() {
  return PartitionSpec{{PosPred::i_less(1), PosPred::truth()}};
}
PartitionSpec even_odd_split() {
  return PartitionSpec{{PosPred::i_mod(2, 0), PosPred::truth()}};
}

}  // namespace

TEST_CASE("class_of uses first-match semantics") {
  PartitionSpec head = first_position_split();
  REQUIRE(head.class_of(0, 5) == 0);
  REQUIRE(head.class_of(3, 2) == 1);

  PartitionSpec even = even_odd_split();
  REQUIRE(even.class_of(4, 0) == 0);
  REQUIRE(even.class_of(3, 7) == 1);

  SECTION("totality over the grid for every enumerated partition") {
    for (const auto& p : enumerate_partitions(PartitionBounds{3, 3, 2}, 12))
      for (long i = 0; i <= 50; ++i)
        for (long j = 0; j <= 50; ++j) {
          int k = p.class_of(i, j);
          REQUIRE(k >= 0);
          REQUIRE(k < p.class_count());
        }
  }

  SECTION("a partition whose last class is not 'true' is rejected") {
    PartitionSpec bad{{PosPred::i_less(1)}};
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  }
}

TEST_CASE("transduction is length preserving and classifies positions") {
  Alphabet ab({"a", "b"});
  PartitionSpec even = even_odd_split();

  REQUIRE(transduce(even, {}).empty());

  SECTION("ab under the even/odd split") {
    Word w = parse_word(ab, "ab");
    Word t = transduce(even, w);
    ProductAlphabet prod{ab, even};
    REQUIRE(t == Word{prod.pair_index(0, 0), prod.pair_index(1, 1)});
  }

  SECTION("single class tags everything with class 0") {
    PartitionSpec one = PartitionSpec::single_class();
    Word w = parse_word(ab, "aba");
    Word t = transduce(one, w);
    REQUIRE(t.size() == w.size());
    for (size_t i = 0; i < w.size(); ++i) REQUIRE(t[i] == w[i] * 1 + 0);
  }

  SECTION("length preservation on random words") {
    vt::Lcg rng(3);
    for (const auto& p : enumerate_partitions(PartitionBounds{2, 2, 2}, 8))
      for (int trial = 0; trial < 5; ++trial) {
        Word w;
        int len = rng.below(9);
        for (int i = 0; i < len; ++i) w.push_back(rng.below(2));
        REQUIRE(transduce(p, w).size() == w.size());
      }
  }
}

TEST_CASE("class extraction") {
  Alphabet ab({"a", "b"});
  PartitionSpec one = PartitionSpec::single_class();
  PartitionSpec even = even_odd_split();
  PartitionSpec head = first_position_split();

  REQUIRE(extract_class(one, parse_word(ab, "abba"), 0) == parse_word(ab, "abba"));
  REQUIRE(extract_class(even, parse_word(ab, "abba"), 0) == parse_word(ab, "ab"));
  REQUIRE(extract_class(even, parse_word(ab, "abba"), 1) == parse_word(ab, "ba"));
  REQUIRE(extract_class(head, parse_word(ab, "aba"), 0) == parse_word(ab, "a"));
  REQUIRE_THROWS_AS(extract_class(head, parse_word(ab, "aba"), 2), std::invalid_argument);

  SECTION("classes cover the word without loss") {
    vt::Lcg rng(17);
    for (const auto& p : enumerate_partitions(PartitionBounds{3, 2, 2}, 8))
      for (int trial = 0; trial < 5; ++trial) {
        Word w;
        int len = rng.below(10);
        for (int i = 0; i < len; ++i) w.push_back(rng.below(2));
        std::vector<int> all;
        size_t total = 0;
        for (int k = 0; k < p.class_count(); ++k) {
          Word part = extract_class(p, w, k);
          total += part.size();
          all.insert(all.end(), part.begin(), part.end());
        }
        REQUIRE(total == w.size());
        std::vector<int> sorted_all = all, sorted_w = w;
        std::sort(sorted_all.begin(), sorted_all.end());
        std::sort(sorted_w.begin(), sorted_w.end());
        REQUIRE(sorted_all == sorted_w);
      }
  }
}

TEST_CASE("partition enumeration is deterministic and deduplicated") {
  auto ps1 = enumerate_partitions(PartitionBounds{2, 2, 2}, 12);
  auto ps2 = enumerate_partitions(PartitionBounds{2, 2, 2}, 12);
  REQUIRE(ps1.size() == ps2.size());
  for (size_t i = 0; i < ps1.size(); ++i)
    REQUIRE(ps1[i].to_string() == ps2[i].to_string());

  // single class + 8 distinct two-class splits within these bounds
  REQUIRE(ps1.size() == 9);

  // pairwise distinct class functions on the grid
  for (size_t x = 0; x < ps1.size(); ++x)
    for (size_t y = x + 1; y < ps1.size(); ++y) {
      bool differ = false;
      for (long i = 0; i <= 12 && !differ; ++i)
        for (long j = 0; j <= 12 && !differ; ++j)
          if (ps1[x].class_of(i, j) != ps1[y].class_of(i, j)) differ = true;
      REQUIRE(differ);
    }
}
