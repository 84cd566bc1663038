#include "doctest.h"

#include <algorithm>
#include <random>

#include "anagraph/core.hpp"

using namespace anagraph;

namespace {

Graph cycle4() {
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return Graph(4, e);
}

}  // namespace

TEST_CASE("graph rejects loops, parallel edges and bad ids") {
  std::vector<Edge> loop{{1, 1}};
  std::vector<Edge> parallel{{0, 1}, {1, 0}};
  std::vector<Edge> out_of_range{{0, 3}};
  CHECK_THROWS_AS(Graph(3, loop), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, parallel), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, out_of_range), std::invalid_argument);
}

TEST_CASE("graph adjacency is sorted and symmetric") {
  std::vector<Edge> e{{2, 0}, {1, 2}, {0, 3}};
  Graph g(4, e);
  CHECK(g.edge_count() == 3);
  auto nb = g.neighbors(2);
  CHECK(std::is_sorted(nb.begin(), nb.end()));
  for (Vertex v = 0; v < g.n(); ++v) {
    for (Vertex w : g.neighbors(v)) CHECK(g.has_edge(w, v));
  }
  CHECK(g.edges() == std::vector<Edge>{{0, 2}, {0, 3}, {1, 2}});
  CHECK(g.max_degree() == 2);
  CHECK(g.min_degree() == 1);
}

TEST_CASE("with_edges refuses duplicates") {
  Graph g = cycle4();
  std::vector<Edge> dup{{1, 0}};
  std::vector<Edge> diag{{0, 2}};
  CHECK_THROWS(g.with_edges(dup));
  CHECK(g.with_edges(diag).has_edge(2, 0));
}

TEST_CASE("multigraph degree sum counts loops twice") {
  MultiGraph m(3, {{0, 0}, {0, 1}, {1, 0}, {2, 1}});
  int sum = 0;
  for (Vertex v = 0; v < m.n(); ++v) sum += m.degree(v);
  CHECK(sum == 2 * static_cast<int>(m.edges().size()));
  CHECK(m.loop_count() == 1);
  CHECK(m.parallel_count() == 1);
  CHECK_FALSE(m.is_simple());
  CHECK_THROWS(m.to_graph());
}

TEST_CASE("coloring compacts ids and keeps dense colorings") {
  Coloring dense({0, 1, 0, 2});
  CHECK(dense.colors()[3] == 2);
  CHECK(dense.palette_size() == 3);
  Coloring sparse({7, 3, 7, 10});
  CHECK(std::vector<int>(sparse.colors().begin(), sparse.colors().end()) == std::vector<int>{1, 0, 1, 2});
  CHECK_THROWS(Coloring({0, -1}));
}

TEST_CASE("color_count examples") {
  Coloring c({0, 1, 0});
  std::vector<Vertex> all{0, 1, 2};
  auto cv = color_count(c, all);
  CHECK(cv.count(0) == 2);
  CHECK(cv.count(1) == 1);
  CHECK(cv.total() == 3);
  CHECK(color_count(Coloring({0}), std::vector<Vertex>{}).empty());
  Coloring abba({0, 1, 1, 0});
  CHECK(color_count(abba, std::vector<Vertex>{0, 1}) == color_count(abba, std::vector<Vertex>{2, 3}));
  CHECK_THROWS_AS(color_count(c, std::vector<Vertex>{5}), std::out_of_range);
}

TEST_CASE("color_count is additive over disjoint sets") {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> raw(20);
    for (int& x : raw) x = static_cast<int>(gen() % 5);
    Coloring c(raw);
    std::vector<Vertex> a, b, both;
    for (Vertex v = 0; v < 20; ++v) {
      switch (gen() % 3) {
        case 0: a.push_back(v); both.push_back(v); break;
        case 1: b.push_back(v); both.push_back(v); break;
        default: break;
      }
    }
    CHECK(color_count(c, both) == color_count(c, a) + color_count(c, b));
    CHECK(color_count(c, both).total() == static_cast<int>(both.size()));
  }
}

TEST_CASE("is_anagram_path examples") {
  Coloring c({0, 1, 1, 0, 0});
  CHECK(is_anagram_path(c, PathWitness{{0, 1, 2, 3}}));
  CHECK_FALSE(is_anagram_path(c, PathWitness{{0, 1, 3}}));
  CHECK(is_anagram_path(c, PathWitness{{3, 4}}));
  CHECK_FALSE(is_anagram_path(c, PathWitness{{}}));
}

TEST_CASE("is_anagram_path is invariant under reversal and renaming") {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int len = 2 + 2 * static_cast<int>(gen() % 4);
    std::vector<int> raw(len);
    for (int& x : raw) x = static_cast<int>(gen() % 3);
    std::vector<Vertex> path(len);
    for (int i = 0; i < len; ++i) path[i] = i;
    const bool base = is_anagram_path(Coloring(raw), PathWitness{path});
    std::reverse(path.begin(), path.end());
    CHECK(is_anagram_path(Coloring(raw), PathWitness{path}) == base);
    std::vector<int> renamed(raw);
    for (int& x : renamed) x = (2 - x) * 5 + 1;
    CHECK(is_anagram_path(Coloring(renamed), PathWitness{path}) == base);
  }
}

TEST_CASE("verify_witness examples") {
  Graph g = cycle4();
  Coloring c({0, 1, 0, 1});
  CHECK(verify_witness(g, c, AnagramWitness{PathWitness{{0, 1, 2, 3}}, 2}));
  CHECK_FALSE(verify_witness(g, c, AnagramWitness{PathWitness{{0, 2, 1, 3}}, 2}));
  CHECK_FALSE(verify_witness(g, c, AnagramWitness{PathWitness{{0, 1, 0, 1}}, 2}));
  CHECK_FALSE(verify_witness(g, c, AnagramWitness{PathWitness{{0, 1, 2, 3}}, 1}));
  CHECK_FALSE(verify_witness(g, Coloring({0, 1, 0}), AnagramWitness{PathWitness{{0, 1}}, 1}));
  CHECK_FALSE(verify_witness(g, c, AnagramWitness{PathWitness{{0, 1, 9, 3}}, 2}));
}

TEST_CASE("verify_witness implies is_anagram_path") {
  std::mt19937 gen(3);
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < 8; ++v) e.emplace_back(v, v + 1);
  Graph path8(8, e);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> raw(8);
    for (int& x : raw) x = static_cast<int>(gen() % 2);
    Coloring c(raw);
    const int start = static_cast<int>(gen() % 7);
    const int len = 2 * (1 + static_cast<int>(gen() % ((8 - start) / 2 == 0 ? 1 : (8 - start) / 2)));
    if (start + len > 8) continue;
    PathWitness p;
    for (int i = 0; i < len; ++i) p.vertices.push_back(start + i);
    AnagramWitness w{p, static_cast<std::size_t>(len / 2)};
    if (verify_witness(path8, c, w)) CHECK(is_anagram_path(c, p));
  }
}

TEST_CASE("components, connectivity and forests") {
  std::vector<Edge> e{{0, 1}, {2, 3}, {3, 4}};
  Graph g(6, e);
  CHECK(connected_components(g).size() == 3);
  CHECK_FALSE(is_connected(g));
  CHECK(is_forest(g));
  CHECK_FALSE(is_forest(cycle4()));
  CHECK(is_connected(cycle4()));
  std::vector<Vertex> keep{1, 2, 3};
  auto sub = induced_subgraph(cycle4(), keep);
  CHECK(sub.graph.n() == 3);
  CHECK(sub.graph.edge_count() == 2);
  CHECK(sub.to_host == keep);
}

TEST_CASE("color weights are deterministic and odd") {
  auto a = color_weights(6, 9);
  auto b = color_weights(6, 9);
  CHECK(a == b);
  for (auto w : a) CHECK(w % 2 == 1);
}
