#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "anagraph/core.hpp"

namespace anagraph::construct {

/// Perfect binary tree in heap layout: root 0, children of v are 2v+1 and 2v+2.
struct BinaryTreeHandle {
  Graph graph;
  Vertex root = 0;
  int depth = 0;
  std::vector<Vertex> parent;                  // -1 at the root
  std::vector<std::array<Vertex, 2>> children;  // {-1, -1} at leaves
  std::vector<int> vertex_depth;

  bool is_leaf(Vertex v) const { return children[v][0] < 0; }
};

/// Largest depth built explicitly; deeper trees go through the implicit attack API.
inline constexpr int kMaxExplicitTreeDepth = 22;

/// Throws std::invalid_argument for h < 0, std::length_error above kMaxExplicitTreeDepth.
BinaryTreeHandle perfect_binary_tree(int h);

/// Perfect binary tree plus an edge between the two children of every internal vertex.
struct SiblingTree {
  Graph graph;
  BinaryTreeHandle tree;
};

/// `leaves` must be a power of two.
SiblingTree sibling_tree(int leaves);

/// Prism over a (2m+1)-cycle: vertex i on side s has id s*(2m+1)+i.
Graph circular_ladder(int m);

/// Hamilton-connected cubic graph on k vertices: K_4 for k = 4, otherwise the
/// circular ladder with 2(2m+1) = k. Throws std::invalid_argument for other k.
Graph cubic_block(int k);

struct MatchingEdge {
  int block_i = 0;
  int block_j = 0;
  Vertex u = 0;  // port of block_i towards block_j
  Vertex v = 0;  // port of block_j towards block_i
};

/// k+1 blocks of k vertices. Block i holds one port per other block j; the
/// inter-block matching joins port(i, j) with port(j, i).
struct CompositeDescriptor {
  int k = 0;
  std::vector<std::vector<Vertex>> blocks;
  std::vector<MatchingEdge> matching;

  int block_count() const { return k + 1; }
  Vertex port(int block, int towards) const;
  int block_of(Vertex v) const { return v / k; }
};

struct CompositeGraph {
  Graph graph;
  CompositeDescriptor descriptor;
};

/// 4-regular graph on (k+1)k vertices. k = 4 or k = 2(2m+1) with m >= 1.
CompositeGraph composite_four_regular(int k);

/// Perfect matching on n*d points; point p lies in cell p / d.
struct Pairing {
  int n = 0;
  int d = 0;
  std::vector<int> mate;

  int cell(int point) const { return point / d; }
};

/// Uniform pairing (seeded Fisher-Yates). Throws std::invalid_argument if n*d is odd.
Pairing random_pairing(int n, int d, std::uint64_t seed);
MultiGraph collapse(const Pairing& pairing);

enum class RegularSampler {
  Auto,           // rejection for d <= 4, Steger-Wormald above
  Rejection,      // exactly uniform, acceptance ~ exp(-(d^2-1)/4)
  StegerWormald,  // sequential pairing avoiding loops and repeats; asymptotically uniform
};

struct RegularOptions {
  int max_resamples = 1000;
  RegularSampler sampler = RegularSampler::Auto;
};

/// Simple d-regular graph, deterministic per seed. Throws BudgetExhausted when
/// every one of max_resamples attempts failed.
Graph random_regular(int n, int d, std::uint64_t seed, RegularOptions options = {});

/// Uniform perfect matching on N (even) vertices.
Graph random_matching(int n, std::uint64_t seed);

/// Uniform labelled tree (Pruefer sequence).
Graph random_tree(int n, std::uint64_t seed);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph petersen_graph();

}  // namespace anagraph::construct
