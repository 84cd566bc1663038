#include "doctest.h"

#include <random>

#include "anagraph/construct.hpp"
#include "anagraph/posa.hpp"
#include "oracles.hpp"

using namespace anagraph;
using namespace anagraph::posa;

namespace {

constexpr std::uint64_t kBudget = 10000000;

Graph random_graph(int n, double p, std::mt19937& gen) {
  std::vector<Edge> e;
  std::uniform_real_distribution<double> u(0, 1);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (u(gen) < p) e.emplace_back(a, b);
    }
  }
  return Graph(n, e);
}

}  // namespace

TEST_CASE("exact longest path matches the permutation oracle") {
  std::mt19937 gen(1);
  for (int trial = 0; trial < 150; ++trial) {
    Graph g = random_graph(1 + static_cast<int>(gen() % 8), 0.35, gen);
    auto r = longest_path(g, SearchMode::Exact, kBudget);
    CHECK(r.exact);
    CHECK(static_cast<int>(r.length()) == oracle::longest_path_edges(g));
    CHECK(longest_path_length(g) == oracle::longest_path_edges(g));
    CHECK(is_simple_path(g, r.path.vertices));
  }
  CHECK_THROWS_AS(longest_path(Graph(kExactLimit + 1), SearchMode::Exact, kBudget), std::invalid_argument);
}

TEST_CASE("rotation longest path is a valid lower bound") {
  std::mt19937 gen(2);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = random_graph(12, 0.25, gen);
    auto r = longest_path(g, SearchMode::Rotation, 20000, trial);
    CHECK(is_simple_path(g, r.path.vertices));
    CHECK(static_cast<int>(r.length()) <= longest_path_length(g));
  }
}

TEST_CASE("exact Hamilton cycle matches the oracle") {
  std::mt19937 gen(3);
  for (int trial = 0; trial < 150; ++trial) {
    Graph g = random_graph(3 + static_cast<int>(gen() % 6), 0.5, gen);
    auto c = hamilton_cycle_exact(g);
    CHECK(c.has_value() == oracle::hamiltonian(g));
    if (c) CHECK(is_hamilton_cycle(g, c->vertices));
  }
}

TEST_CASE("hamilton cycle engine") {
  CHECK(hamilton_cycle(construct::petersen_graph(), 1, 10000).proven_absent);
  CHECK(hamilton_cycle(construct::path_graph(5), 1, 10000).proven_absent);
  auto k6 = hamilton_cycle(construct::complete_graph(6), 1, 10000);
  REQUIRE(k6.cycle);
  CHECK(is_hamilton_cycle(construct::complete_graph(6), k6.cycle->vertices));
  int found = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = construct::random_regular(40, 4, seed);
    auto r = hamilton_cycle(g, seed, 1000000);
    if (r.cycle) {
      ++found;
      CHECK(is_hamilton_cycle(g, r.cycle->vertices));
    }
  }
  CHECK(found >= 9);
}

TEST_CASE("hamilton paths between fixed endpoints") {
  std::mt19937 gen(4);
  for (int trial = 0; trial < 80; ++trial) {
    Graph g = random_graph(2 + static_cast<int>(gen() % 6), 0.55, gen);
    if (g.n() < 2) continue;
    Vertex a = 0, b = g.n() - 1;
    auto p = hamilton_path_between(g, a, b, kBudget);
    CHECK(p.has_value() == oracle::hamilton_path(g, a, b));
    if (p) {
      CHECK(is_simple_path(g, p->vertices));
      CHECK(static_cast<int>(p->vertices.size()) == g.n());
    }
  }
  CHECK(is_hamilton_connected(construct::cubic_block(10), kBudget));
  CHECK_FALSE(is_hamilton_connected(construct::cycle_graph(6), kBudget));
  CHECK_THROWS_AS(hamilton_path_between(construct::complete_graph(12), 0, 1, 3), BudgetExhausted);
}

TEST_CASE("exact boosters follow the definition") {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_graph(3 + static_cast<int>(gen() % 5), 0.45, gen);
    auto b = boosters(g, SearchMode::Exact, kBudget);
    const int base = oracle::longest_path_edges(g);
    const bool ham = oracle::hamiltonian(g);
    for (Vertex u = 0; u < g.n(); ++u) {
      for (Vertex v = u + 1; v < g.n(); ++v) {
        if (g.has_edge(u, v)) continue;
        Edge e{u, v};
        Graph plus = g.with_edges(std::span<const Edge>(&e, 1));
        const bool expected = ham || oracle::hamiltonian(plus) || oracle::longest_path_edges(plus) > base;
        CHECK(b.contains(e) == expected);
      }
    }
  }
}

TEST_CASE("rotation boosters from a longest path are true boosters") {
  std::mt19937 gen(6);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_graph(5 + static_cast<int>(gen() % 7), 0.3, gen);
    auto exact = boosters(g, SearchMode::Exact, kBudget);
    auto lp = longest_path(g, SearchMode::Exact, kBudget);
    auto rot = rotation_boosters(g, lp.path, kBudget);
    for (const Edge& e : rot.pairs) CHECK(exact.contains(e));
  }
}

TEST_CASE("p-expanders") {
  auto k5 = is_p_expander(construct::complete_graph(5), 1, ExpanderMode::Exact);
  CHECK(k5.accepted);
  CHECK_FALSE(is_p_expander(construct::complete_graph(5), 2, ExpanderMode::Exact).accepted);
  CHECK(max_expansion(construct::complete_graph(5)) == 1);
  CHECK(max_expansion(construct::cycle_graph(6)) == 1);
  CHECK(max_expansion(construct::path_graph(4)) == 0);
  CHECK_FALSE(is_p_expander(Graph(3), 1, ExpanderMode::Exact).accepted);
  auto petersen = is_p_expander(construct::petersen_graph(), 3, ExpanderMode::Exact);
  CHECK_FALSE(petersen.accepted);
  CHECK_FALSE(petersen.violating_set.empty());
  auto sampled = is_p_expander(construct::petersen_graph(), 3, ExpanderMode::Sampled, 2000, 1);
  CHECK_FALSE(sampled.accepted);
}

TEST_CASE("absorption progress increases at every step") {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph full = construct::random_regular(14, 4, seed);
    std::vector<Edge> base, pool;
    std::mt19937 gen(static_cast<unsigned>(seed));
    for (const Edge& e : full.edges()) (gen() % 4 == 0 ? pool : base).push_back(e);
    Graph b(14, base);
    auto r = absorb_boosters(b, pool, kBudget, seed);
    if (r.ok()) {
      ++successes;
      CHECK(is_hamilton_cycle(b.with_edges(r.used), r.cycle->vertices));
    } else {
      CHECK_FALSE(r.failure.empty());
    }
    for (const auto& step : r.steps) {
      CHECK(step.exact);
      CHECK(step.progress_after > step.progress_before);
    }
  }
  MESSAGE("absorption successes: " << successes << "/20");
  std::vector<Edge> overlap{{0, 1}};
  CHECK_THROWS_AS(absorb_boosters(construct::path_graph(4), overlap, kBudget), std::invalid_argument);
}
