#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "anagraph/construct.hpp"
#include "anagraph/core.hpp"

namespace anagraph::color {

/// Color of a vertex is its depth; uses h+1 colors.
Coloring depth_coloring(const construct::BinaryTreeHandle& tree);

/// Vertex whose removal leaves components of at most floor(n/2) vertices.
/// For a forest this is the centroid of a largest component (ties: smallest id).
/// Throws std::invalid_argument if the graph has a cycle or no vertices.
Vertex tree_centroid(const Graph& forest);

struct SeparatorResult {
  std::vector<Vertex> separator;
  std::vector<std::vector<Vertex>> parts;  // connected components of G - S, each sorted

  std::size_t largest_part() const;
};

/// {centroid} plus the remaining components.
SeparatorResult centroid_separator(const Graph& forest);

/// Smallest BFS layer (from a pseudo-peripheral root) whose removal leaves
/// parts of at most floor(2n/3) vertices. When no single layer qualifies, the
/// largest remaining part is split again by its own layer separator until it
/// does. No size bound on S for general graphs. Throws on disconnected input.
SeparatorResult bfs_layer_separator(const Graph& graph);

/// Returns a separator of a connected graph.
using SeparatorOracle = std::function<SeparatorResult(const Graph&)>;

/// Recursive separator coloring: the parts are colored with one shared
/// palette (ids aligned by index), then every separator vertex gets its own
/// fresh color. Throws std::logic_error if the oracle returns an invalid split.
Coloring separator_coloring(const Graph& graph, const SeparatorOracle& oracle);

/// Maximal independent set built by repeatedly taking a minimum-degree vertex
/// of the remaining graph; ties broken by the seed. Sorted.
std::vector<Vertex> greedy_independent_set(const Graph& graph, std::uint64_t seed);

/// Color 0 on S, fresh colors elsewhere: n - |S| + 1 colors.
/// Throws std::invalid_argument if S is empty, repeats a vertex or is not independent.
Coloring independent_set_coloring(const Graph& graph, std::span<const Vertex> independent_set);

struct ExactResult {
  int value = 0;          // pi_per when exact, otherwise the upper bracket
  int lower = 0;          // every palette below this was refuted
  int upper = 0;          // palette size of `coloring`
  bool exact = false;
  Coloring coloring;      // certified anagram-free, `upper` colors
  std::uint64_t nodes = 0;
  std::vector<std::uint64_t> nodes_per_palette;  // search tree size for each palette tried
};

/// Branch and bound over palettes t = lower bound upward. Vertices are assigned
/// in degeneracy order, color i limited to 1 + max color used so far, and
/// every assignment is rejected if some path through the new vertex is an
/// anagram. On budget exhaustion returns the bracket with exact = false.
ExactResult exact_anagram_chromatic(const Graph& graph, std::uint64_t budget);

}  // namespace anagraph::color
