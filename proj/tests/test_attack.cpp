#include "doctest.h"

#include <random>

#include "anagraph/attack.hpp"
#include "anagraph/color.hpp"
#include "anagraph/detect.hpp"

using namespace anagraph;
using namespace anagraph::attack;

namespace {

Coloring random_colors(int n, int palette, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<int> raw(n);
  for (int& x : raw) x = static_cast<int>(gen() % palette);
  return Coloring(raw);
}

}  // namespace

TEST_CASE("monochromatic tree is its own subtree") {
  auto t2 = construct::perfect_binary_tree(2);
  Coloring red(std::vector<int>(7, 0));
  auto w = find_mono_subtree(view(t2, red), {2});
  CHECK(w.root == 0);
  CHECK(w.effective_depth == 2);
  CHECK(w.vertices.size() == 7);
  CHECK(w.leaves.size() == 4);
}

TEST_CASE("zero targets give a single vertex") {
  auto t3 = construct::perfect_binary_tree(3);
  auto w = find_mono_subtree(view(t3, random_colors(15, 3, 1)), {0, 0, 0});
  CHECK(w.vertices.size() == 1);
  CHECK(w.effective_depth == 0);
}

TEST_CASE("find_mono_subtree on random 2-colorings") {
  for (int a1 = 0; a1 <= 5; ++a1) {
    for (int a2 = 0; a2 <= 5; ++a2) {
      auto t = construct::perfect_binary_tree(a1 + a2);
      for (std::uint64_t seed = 0; seed < 1000 / 36 + 1; ++seed) {
        ColoredTree tree = view(t, random_colors(t.graph.n(), 2, seed * 100 + a1 * 10 + a2));
        auto w = find_mono_subtree(tree, {a1, a2});
        CHECK(check_subtree_witness(tree, w));
        CHECK(w.effective_depth == (w.color == 0 ? a1 : a2));
        CHECK(w.leaves.size() >= (std::size_t{1} << w.effective_depth));
      }
    }
  }
}

TEST_CASE("find_mono_subtree preconditions") {
  auto t2 = construct::perfect_binary_tree(2);
  Coloring c(std::vector<int>(7, 0));
  CHECK_THROWS_AS(find_mono_subtree(view(t2, c), {2, 1}), std::invalid_argument);
  Coloring three({0, 1, 2, 0, 1, 2, 0});
  CHECK_THROWS_AS(find_mono_subtree(view(t2, three), {1, 1}), std::invalid_argument);
}

TEST_CASE("tree attack examples") {
  auto t1 = construct::perfect_binary_tree(1);
  Coloring red(std::vector<int>(3, 0));
  auto w = tree_attack(t1, red);
  REQUIRE(w);
  CHECK(w->path.vertices.size() == 2);
  CHECK(verify_witness(t1.graph, red, *w));

  auto t4 = construct::perfect_binary_tree(4);
  Coloring depth = color::depth_coloring(t4);
  CHECK_FALSE(tree_attack(t4, depth));
  CHECK(detect::certify_anagram_free(t4.graph, depth, 100000000).kind == detect::CertificateKind::Free);
}

TEST_CASE("tree attack on T_18 with two colors") {
  auto t = construct::perfect_binary_tree(18);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Coloring c = random_colors(t.graph.n(), 2, seed);
    auto w = tree_attack(t, c);
    REQUIRE(w);
    CHECK(verify_witness(t.graph, c, *w));
    const std::size_t half = w->split;
    CHECK(2 * half == w->path.vertices.size());
    std::vector<Vertex> a(w->path.vertices.begin(), w->path.vertices.begin() + half);
    std::vector<Vertex> b(w->path.vertices.begin() + half, w->path.vertices.end());
    CHECK(color_count(c, a) == color_count(c, b));
  }
}

TEST_CASE("implicit tree attack materializes the explored region") {
  ColoredTree tree{24, hashed_coloring(3, 3)};
  auto r = tree_attack(tree, 3);
  REQUIRE(r.witness);
  CHECK(check_subtree_witness(tree, r.subtree));
  CHECK(r.explored.graph.n() == static_cast<int>(r.subtree.vertices.size()));
  CHECK(hashed_coloring(3, 3)(12345) == tree.color(12345));
}

TEST_CASE("sibling tree attack examples") {
  auto f4 = construct::sibling_tree(4);
  Coloring one(std::vector<int>(7, 0));
  auto w = sibling_tree_attack(f4, one);
  REQUIRE(w);
  CHECK(verify_witness(f4.graph, one, *w));
  bool uses_sibling_edge = false;
  for (std::size_t i = 0; i + 1 < w->path.vertices.size(); ++i) {
    Vertex a = w->path.vertices[i], b = w->path.vertices[i + 1];
    uses_sibling_edge = uses_sibling_edge || !f4.tree.graph.has_edge(a, b);
  }
  CHECK(uses_sibling_edge);

  Coloring distinct({0, 1, 2, 3, 4, 5, 6});
  CHECK_FALSE(sibling_tree_attack(f4, distinct));

  auto big = construct::sibling_tree(1 << 12);
  Coloring two = random_colors(big.graph.n(), 2, 77);
  auto bw = sibling_tree_attack(big, two);
  REQUIRE(bw);
  CHECK(verify_witness(big.graph, two, *bw));
}

TEST_CASE("composite attack examples") {
  auto h6 = construct::composite_four_regular(6);
  Coloring one(std::vector<int>(42, 0));
  auto r = composite_attack(h6, one);
  REQUIRE(r.witness);
  CHECK(verify_witness(h6.graph, one, *r.witness));
  CHECK(r.first_blocks.size() == 1);
  CHECK(r.second_blocks.size() == 1);

  std::vector<int> distinct(42);
  for (int i = 0; i < 42; ++i) distinct[i] = i;
  CHECK_FALSE(composite_attack(h6, Coloring(distinct)).witness);
}

TEST_CASE("composite witness halves are the chosen block unions") {
  auto h = construct::composite_four_regular(10);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Coloring c = random_colors(h.graph.n(), 2, seed);
    auto r = composite_attack(h, c, seed);
    REQUIRE(r.witness);
    CHECK(verify_witness(h.graph, c, *r.witness));
    const auto& p = r.witness->path.vertices;
    std::vector<int> first, second;
    for (std::size_t i = 0; i < p.size(); ++i) {
      (i < r.witness->split ? first : second).push_back(h.descriptor.block_of(p[i]));
    }
    std::vector<int> expect_first, expect_second;
    for (int b : r.first_blocks) expect_first.insert(expect_first.end(), 10, b);
    for (int b : r.second_blocks) expect_second.insert(expect_second.end(), 10, b);
    CHECK(first == expect_first);
    CHECK(second == expect_second);
  }
}
