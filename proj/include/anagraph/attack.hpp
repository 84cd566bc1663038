#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "anagraph/construct.hpp"
#include "anagraph/core.hpp"

namespace anagraph::attack {

/// Heap id of a vertex of an infinite binary tree: children of v are 2v+1, 2v+2.
using NodeId = std::uint64_t;

/// Perfect binary tree of the given depth whose colors come from a callback,
/// so trees far beyond kMaxExplicitTreeDepth can be attacked lazily.
struct ColoredTree {
  int depth = 0;
  std::function<int(NodeId)> color;
};

/// Pseudo-random coloring of heap ids with `palette` colors, stable per seed.
std::function<int(NodeId)> hashed_coloring(std::uint64_t seed, int palette);

/// Explicit tree and coloring viewed through the callback interface.
ColoredTree view(const construct::BinaryTreeHandle& tree, const Coloring& coloring);

int node_depth(NodeId v);

/// Subtree U whose effective vertices (root, branch vertices, leaves) all
/// have `color`; contracting the degree-two vertices gives a perfect binary
/// tree of depth `effective_depth`.
struct SubtreeWitness {
  NodeId root = 0;
  int color = 0;
  int effective_depth = 0;
  std::vector<NodeId> vertices;             // all of U, sorted
  std::vector<NodeId> effective_vertices;   // sorted
  std::vector<NodeId> leaves;               // sorted
  /// Effective vertex -> its two effective children (absent for leaves).
  std::vector<std::pair<NodeId, std::array<NodeId, 2>>> embedding;
};

/// Follows the induction on sum(targets): at a vertex of color c with
/// targets[c] > 0 recurse into both children with targets[c] - 1.
/// Returns an essentially c-colored subtree of effective depth exactly
/// targets[c] for some color c. Throws std::invalid_argument when the tree is
/// shallower than sum(targets) or a color falls outside targets.
SubtreeWitness find_mono_subtree(const ColoredTree& tree, const std::vector<int>& targets);

/// Checks the SubtreeWitness invariants against the tree.
bool check_subtree_witness(const ColoredTree& tree, const SubtreeWitness& witness);

struct TreeAttackResult {
  std::optional<AnagramWitness> witness;  // heap ids, which are graph ids of explicit trees
  SubtreeWitness subtree;
  std::size_t leaves_hashed = 0;
  /// Induced subgraph on the explored subtree with its coloring; the witness
  /// is re-verified there with local ids.
  InducedSubgraph explored;
  std::vector<int> explored_colors;
};

/// Equal targets floor(h/d) for a d-coloring, then a collision between the
/// color multisets of root-to-leaf paths inside the monochromatic subtree.
TreeAttackResult tree_attack(const ColoredTree& tree, int palette);
std::optional<AnagramWitness> tree_attack(const construct::BinaryTreeHandle& tree, const Coloring& coloring);

/// Two leaves whose root paths carry equal multisets, joined through the
/// sibling edge below their last common vertex.
std::optional<AnagramWitness> sibling_tree_attack(const construct::SiblingTree& tree, const Coloring& coloring);

/// Largest k for which all 2^(k+1) block unions are enumerated.
inline constexpr int kCompositeEnumerationLimit = 20;

struct CompositeAttackResult {
  std::optional<AnagramWitness> witness;
  std::vector<int> first_blocks;   // S' ascending
  std::vector<int> second_blocks;  // T' ascending
  std::uint64_t unions_hashed = 0;
};

/// Two block families with equal color counts, made disjoint and walked
/// block by block through the matching edges and Hamilton paths inside the
/// blocks. Throws std::logic_error if a block has no required Hamilton path.
CompositeAttackResult composite_attack(const construct::CompositeGraph& composite, const Coloring& coloring,
                                       std::uint64_t seed = 0, std::uint64_t budget = 1u << 24);

}  // namespace anagraph::attack
