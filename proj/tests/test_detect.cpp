#include "doctest.h"

#include <random>

#include "anagraph/construct.hpp"
#include "anagraph/detect.hpp"
#include "oracles.hpp"

using namespace anagraph;
using detect::Mode;
using detect::Verdict;

namespace {

constexpr std::uint64_t kBudget = 100000000;

Coloring random_colors(int n, int palette, std::mt19937& gen) {
  std::vector<int> raw(n);
  for (int& x : raw) x = static_cast<int>(gen() % palette);
  return Coloring(raw);
}

}  // namespace

TEST_CASE("path abab has a full-length anagram") {
  Graph p = construct::path_graph(4);
  Coloring c({0, 1, 0, 1});
  auto r = detect::find_anagram(p, c, Mode::Exhaustive, kBudget);
  REQUIRE(r.verdict == Verdict::Found);
  CHECK(verify_witness(p, c, *r.witness));
  CHECK(r.witness->path.vertices.size() == 4);
}

TEST_CASE("star with uniform leaves is free") {
  std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}};
  Graph star(4, e);
  Coloring c({0, 1, 1, 1});
  CHECK(detect::find_anagram(star, c, Mode::Exhaustive, kBudget).verdict == Verdict::None);
  CHECK(detect::find_anagram(star, c, Mode::Tree, kBudget).verdict == Verdict::None);
}

TEST_CASE("monochromatic edge gives a length two witness") {
  Graph g = construct::petersen_graph();
  std::vector<int> raw(10);
  for (int i = 0; i < 10; ++i) raw[i] = i;
  raw[5] = raw[0];
  Coloring c(raw);
  for (Mode m : {Mode::Exhaustive, Mode::Randomized}) {
    auto r = detect::find_anagram(g, c, m, kBudget, 3);
    REQUIRE(r.verdict == Verdict::Found);
    CHECK(r.witness->path.vertices.size() == 2);
    CHECK(verify_witness(g, c, *r.witness));
  }
}

TEST_CASE("certificates") {
  auto t3 = construct::perfect_binary_tree(3);
  CHECK(detect::certify_anagram_free(t3.graph, Coloring(t3.vertex_depth), kBudget).kind ==
        detect::CertificateKind::Free);
  Graph c4 = construct::cycle_graph(4);
  auto cert = detect::certify_anagram_free(c4, Coloring({0, 1, 0, 1}), kBudget);
  REQUIRE(cert.kind == detect::CertificateKind::Witness);
  CHECK(verify_witness(c4, Coloring({0, 1, 0, 1}), *cert.witness));
  Graph g = construct::random_regular(40, 4, 1);
  std::vector<int> distinct(40);
  for (int i = 0; i < 40; ++i) distinct[i] = i;
  CHECK(detect::certify_anagram_free(g, Coloring(distinct), kBudget).kind == detect::CertificateKind::Free);
}

TEST_CASE("exhaustive budget exhaustion is inconclusive") {
  Graph p = construct::path_graph(7);
  Coloring c({0, 1, 0, 2, 0, 1, 0});
  CHECK(detect::find_anagram(p, c, Mode::Exhaustive, 3).verdict == Verdict::Inconclusive);
  CHECK(detect::find_anagram(p, c, Mode::Exhaustive, kBudget).verdict == Verdict::None);
}

TEST_CASE("exhaustive search agrees with the naive path oracle") {
  std::mt19937 gen(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(gen() % 5);
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (gen() % 2) e.emplace_back(u, v);
      }
    }
    Graph g(n, e);
    Coloring c = random_colors(n, 2 + static_cast<int>(gen() % 3), gen);
    auto r = detect::find_anagram(g, c, Mode::Exhaustive, kBudget);
    std::vector<int> raw(c.colors().begin(), c.colors().end());
    CHECK((r.verdict == Verdict::None) == oracle::anagram_free(g, raw));
    if (r.witness) CHECK(verify_witness(g, c, *r.witness));
  }
}

TEST_CASE("tree mode matches exhaustive mode on trees") {
  std::mt19937 gen(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 199);
    Graph t = construct::random_tree(n, trial);
    Coloring c = random_colors(n, 3 + static_cast<int>(gen() % 6), gen);
    auto tree = detect::find_anagram(t, c, Mode::Tree, kBudget);
    auto full = detect::find_anagram(t, c, Mode::Exhaustive, kBudget);
    REQUIRE(full.verdict != Verdict::Inconclusive);
    CHECK(tree.verdict == full.verdict);
    if (tree.witness) CHECK(verify_witness(t, c, *tree.witness));
  }
}

TEST_CASE("tree mode rejects graphs with cycles") {
  CHECK_THROWS_AS(detect::find_anagram(construct::cycle_graph(5), Coloring({0, 1, 2, 3, 4}), Mode::Tree, kBudget),
                  std::invalid_argument);
}

TEST_CASE("randomized mode is sound") {
  std::mt19937 gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = construct::random_regular(30, 4, trial);
    Coloring c = random_colors(30, 6, gen);
    auto r = detect::find_anagram(g, c, Mode::Randomized, 20000, trial);
    CHECK(r.verdict != Verdict::None);
    if (r.witness) CHECK(verify_witness(g, c, *r.witness));
  }
}

TEST_CASE("independent set certificate") {
  Graph c4 = construct::cycle_graph(4);
  std::vector<Vertex> opposite{0, 2};
  std::vector<Vertex> adjacent{0, 1};
  CHECK(detect::verify_independent_set_coloring(c4, opposite, Coloring({0, 1, 0, 2})));
  CHECK_FALSE(detect::verify_independent_set_coloring(c4, adjacent, Coloring({0, 0, 1, 2})));
  CHECK_FALSE(detect::verify_independent_set_coloring(c4, opposite, Coloring({0, 1, 0, 1})));
}

TEST_CASE("independent set certificate implies exhaustive freeness") {
  std::mt19937 gen(2);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = construct::random_regular(10, 3, trial);
    std::vector<Vertex> s;
    std::vector<char> blocked(10, 0);
    for (Vertex v = 0; v < 10; ++v) {
      if (!blocked[v] && gen() % 2) {
        s.push_back(v);
        for (Vertex w : g.neighbors(v)) blocked[w] = 1;
      }
    }
    if (s.empty()) continue;
    std::vector<int> raw(10);
    int next = 1;
    for (Vertex v = 0; v < 10; ++v) raw[v] = std::find(s.begin(), s.end(), v) != s.end() ? 0 : next++;
    Coloring c(raw);
    REQUIRE(detect::verify_independent_set_coloring(g, s, c));
    CHECK(detect::certify_anagram_free(g, c, kBudget).kind == detect::CertificateKind::Free);
  }
}

TEST_CASE("mode names") {
  CHECK(detect::parse_mode("tree") == Mode::Tree);
  CHECK(detect::to_string(Mode::Exhaustive) == "exhaustive");
  CHECK_THROWS(detect::parse_mode("nope"));
}
