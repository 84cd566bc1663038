#include "doctest.h"

#include <random>

#include "anagraph/words.hpp"
#include "oracles.hpp"

using namespace anagraph::words;

TEST_CASE("find_abelian_square examples") {
  auto hit = find_abelian_square(Word::parse("0011", 2));
  REQUIRE(hit);
  CHECK(*hit == SquareLocation{0, 1});
  CHECK_FALSE(find_abelian_square(Word::parse("0102", 3)));
  auto mid = find_abelian_square(Word::parse("0110", 2));
  REQUIRE(mid);
  CHECK(*mid == SquareLocation{0, 2});
  CHECK_FALSE(find_abelian_square(Word::parse("", 1)));
}

TEST_CASE("find_abelian_square agrees with the quadratic scan") {
  std::mt19937 gen(42);
  for (int trial = 0; trial < 3000; ++trial) {
    const int k = 2 + static_cast<int>(gen() % 3);
    const int len = static_cast<int>(gen() % 31);
    Word w;
    w.alphabet_size = k;
    for (int i = 0; i < len; ++i) w.symbols.push_back(static_cast<int>(gen() % k));
    CHECK(find_abelian_square(w).has_value() == oracle::has_abelian_square(w.symbols));
  }
}

TEST_CASE("find_abelian_square returns the smallest location") {
  std::mt19937 gen(8);
  for (int trial = 0; trial < 500; ++trial) {
    Word w;
    w.alphabet_size = 3;
    for (int i = 0; i < 14; ++i) w.symbols.push_back(static_cast<int>(gen() % 3));
    auto hit = find_abelian_square(w);
    if (!hit) continue;
    bool found_earlier = false;
    for (std::size_t s = 0; s <= hit->start && !found_earlier; ++s) {
      for (std::size_t h = 1; 2 * h + s <= w.size(); ++h) {
        if (s == hit->start && h >= hit->half) break;
        std::vector<int> window(w.symbols.begin() + s, w.symbols.begin() + s + 2 * h);
        if (oracle::halves_match(window)) found_earlier = true;
      }
    }
    CHECK_FALSE(found_earlier);
  }
}

TEST_CASE("symbol relabelling preserves abelian squares") {
  std::mt19937 gen(17);
  for (int trial = 0; trial < 500; ++trial) {
    Word w;
    w.alphabet_size = 4;
    for (int i = 0; i < 16; ++i) w.symbols.push_back(static_cast<int>(gen() % 4));
    Word relabelled = w;
    for (int& s : relabelled.symbols) s = (s + 1) % 4;
    CHECK(find_abelian_square(w).has_value() == find_abelian_square(relabelled).has_value());
  }
}

TEST_CASE("builder matches recomputation and prefixes stay free") {
  FreeWordBuilder b(3);
  std::mt19937 gen(4);
  for (int step = 0; step < 200; ++step) {
    const int s = static_cast<int>(gen() % 3);
    Word extended = b.word();
    extended.symbols.push_back(s);
    CHECK(b.can_push(s) == !find_abelian_square(extended).has_value());
    if (b.can_push(s)) {
      b.push(s);
    } else if (b.size() > 0 && gen() % 2) {
      b.pop();
    }
  }
}

TEST_CASE("word parse and print") {
  Word w = Word::parse("0123", 4);
  CHECK(w.to_string() == "0123");
  CHECK_THROWS_AS(Word::parse("03", 3), std::invalid_argument);
}

TEST_CASE("generation examples") {
  auto four = generate_anagram_free_word(4, 20, 1000000, 1);
  CHECK(four.success);
  CHECK(four.word.size() >= 20);
  CHECK_FALSE(find_abelian_square(four.word));
  CHECK_FALSE(generate_anagram_free_word(1, 2, 1000, 1).success);
  auto binary = generate_anagram_free_word(2, 4, 100000, 1);
  CHECK_FALSE(binary.success);
  CHECK(binary.word.size() == 3);
}

TEST_CASE("generation is deterministic per seed") {
  auto a = generate_anagram_free_word(4, 40, 1000000, 9);
  auto b = generate_anagram_free_word(4, 40, 1000000, 9);
  CHECK(a.word == b.word);
  CHECK(a.steps == b.steps);
}

TEST_CASE("maximum free lengths for small alphabets") {
  CHECK(max_anagram_free_length(1, 100).length == 1);
  auto two = max_anagram_free_length(2, 100);
  CHECK(two.length == 3);
  CHECK_FALSE(find_abelian_square(two.witness));
  auto three = max_anagram_free_length(3, 100);
  CHECK(three.length == 7);
  CHECK_FALSE(three.reached_cap);
  CHECK_FALSE(oracle::has_abelian_square(three.witness.symbols));
  CHECK(max_anagram_free_length(4, 30).reached_cap);
}
