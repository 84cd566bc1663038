#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace anagraph {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// A step budget or retry cap ran out before the operation could finish.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Throws std::invalid_argument on loops, parallel edges or ids outside [0, n).
  Graph(int n, std::span<const Edge> edges);

  int n() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  int max_degree() const;
  int min_degree() const;
  bool has_edge(Vertex u, Vertex v) const;

  /// Edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  /// Copy with extra edges added; throws if any of them already exists.
  Graph with_edges(std::span<const Edge> extra) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Induced subgraph with local ids 0..k-1; to_host[local] is the host vertex.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_host;
};

InducedSubgraph induced_subgraph(const Graph& graph, std::span<const Vertex> vertices);
std::vector<std::vector<Vertex>> connected_components(const Graph& graph);
bool is_connected(const Graph& graph);
bool is_forest(const Graph& graph);

/// Multigraph produced by collapsing a configuration-model pairing.
/// Loops contribute two to the degree of their vertex.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(Vertex v) const;
  std::size_t loop_count() const;
  std::size_t parallel_count() const;
  bool is_simple() const { return loop_count() == 0 && parallel_count() == 0; }
  /// Throws std::invalid_argument unless is_simple().
  Graph to_graph() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Vertex coloring with dense color ids 0..palette_size-1.
class Coloring {
 public:
  Coloring() = default;
  /// Renormalizes ids: distinct raw values are mapped to 0.. in increasing
  /// order, so an already dense coloring is kept unchanged. Throws on negative ids.
  explicit Coloring(std::vector<int> raw);

  int size() const { return static_cast<int>(colors_.size()); }
  int palette_size() const { return palette_size_; }
  int operator[](Vertex v) const { return colors_[v]; }
  std::span<const int> colors() const { return colors_; }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<int> colors_;
  int palette_size_ = 0;
};

/// Multiset of colors: sorted (color, count) pairs, zero counts never stored.
class ColorCountVector {
 public:
  ColorCountVector() = default;

  void add(int color, int count = 1);
  int count(int color) const;
  int total() const;
  bool empty() const { return entries_.empty(); }
  std::span<const std::pair<int, int>> entries() const { return entries_; }
  std::uint64_t hash() const;

  ColorCountVector& operator+=(const ColorCountVector& other);
  friend ColorCountVector operator+(ColorCountVector a, const ColorCountVector& b) {
    a += b;
    return a;
  }
  friend bool operator==(const ColorCountVector&, const ColorCountVector&) = default;

 private:
  std::vector<std::pair<int, int>> entries_;
};

/// Throws std::out_of_range for vertex ids outside the coloring.
ColorCountVector color_count(const Coloring& coloring, std::span<const Vertex> vertices);

struct PathWitness {
  std::vector<Vertex> vertices;
  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

struct AnagramWitness {
  PathWitness path;
  std::size_t split = 0;
  friend bool operator==(const AnagramWitness&, const AnagramWitness&) = default;
};

/// Distinct vertices, consecutive ones adjacent in graph.
bool is_simple_path(const Graph& graph, std::span<const Vertex> vertices);

/// True iff the path has even length 2k >= 2 and both halves carry the same colors.
bool is_anagram_path(const Coloring& coloring, const PathWitness& path);

/// Certificate check: simple path in graph, split exactly in the middle,
/// halves with equal color counts. Malformed input yields false.
bool verify_witness(const Graph& graph, const Coloring& coloring, const AnagramWitness& witness);

/// Random 64-bit weight per color. Sums of weights give a linear hash of a
/// color multiset, so window tests reduce to O(1) prefix-sum comparisons.
std::vector<std::uint64_t> color_weights(int palette_size, std::uint64_t salt = 0);

}  // namespace anagraph
