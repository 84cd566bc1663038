#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anagraph/core.hpp"

namespace anagraph::posa {

/// Vertex count up to which bitmask dynamic programs give exact answers.
inline constexpr int kExactLimit = 18;
/// Exact booster enumeration reruns the DP once per non-edge.
inline constexpr int kExactBoosterLimit = 16;

enum class SearchMode { Exact, Rotation };

struct LongestPathResult {
  PathWitness path;
  bool exact = false;
  bool budget_exhausted = false;  // rotation mode stopped on budget, path is a lower bound
  std::size_t length() const { return path.vertices.empty() ? 0 : path.vertices.size() - 1; }
};

/// Exact: bitmask DP (n <= kExactLimit, std::invalid_argument above).
/// Rotation: extension plus Posa rotations with seeded restarts.
LongestPathResult longest_path(const Graph& graph, SearchMode mode, std::uint64_t budget, std::uint64_t seed = 0);

/// Number of edges of a longest path (exact DP).
int longest_path_length(const Graph& graph);

/// Closed cycle given as its vertex order; the edge back to the first vertex is implied.
bool is_hamilton_cycle(const Graph& graph, std::span<const Vertex> cycle);
std::optional<PathWitness> hamilton_cycle_exact(const Graph& graph);

struct BoosterSet {
  std::vector<Edge> pairs;  // sorted, u < v, none of them an edge
  bool contains(Edge e) const;
  std::size_t size() const { return pairs.size(); }
};

/// Non-edges {u, v} with G + uv Hamiltonian or longer longest path.
/// Exact mode applies the definition directly (n <= kExactBoosterLimit).
/// Rotation mode collects endpoint pairs reachable by rotations from one
/// maximal path; when that path is a longest path every pair is a true booster.
BoosterSet boosters(const Graph& graph, SearchMode mode, std::uint64_t budget, std::uint64_t seed = 0);
BoosterSet rotation_boosters(const Graph& graph, const PathWitness& start, std::uint64_t budget);

enum class ExpanderMode { Exact, Sampled };

struct ExpanderVerdict {
  bool accepted = false;
  bool exact = false;
  std::uint64_t sets_tested = 0;
  std::vector<Vertex> violating_set;  // empty when rejected for disconnectedness
};

/// Connected and |N(U)| >= 2|U| for every |U| <= p. A sampled "false" is
/// certain; a sampled "true" only covers the tested sets.
ExpanderVerdict is_p_expander(const Graph& graph, int p, ExpanderMode mode, std::uint64_t trials = 0,
                              std::uint64_t seed = 0);

/// Largest p >= 0 accepted by the exact check (0 when not even a 1-expander).
int max_expansion(const Graph& graph);

struct HamiltonResult {
  std::optional<PathWitness> cycle;
  bool proven_absent = false;  // only the exact fallback (or a degree/connectivity test) sets this
  std::uint64_t steps = 0;
};

/// Rotation-extension with restarts after 50 stalled rotations, then an
/// exact DP fallback for n <= kExactLimit.
HamiltonResult hamilton_cycle(const Graph& graph, std::uint64_t seed, std::uint64_t budget);

/// Backtracking with degree pruning. Throws BudgetExhausted when the node
/// budget runs out before the search space is settled.
std::optional<PathWitness> hamilton_path_between(const Graph& graph, Vertex from, Vertex to,
                                                 std::uint64_t budget);

bool is_hamilton_connected(const Graph& graph, std::uint64_t budget);

struct AbsorptionStep {
  Edge edge;
  int progress_before = 0;  // n if Hamiltonian, otherwise longest path length
  int progress_after = 0;
  bool exact = false;       // progress values come from the exact DP
};

struct AbsorptionResult {
  std::optional<PathWitness> cycle;
  std::vector<Edge> used;
  std::vector<AbsorptionStep> steps;
  std::string failure;  // names the stalled stage when no cycle was built
  bool ok() const { return cycle.has_value(); }
};

/// Adds pool edges that are boosters of the current graph until it is
/// Hamiltonian. Picks the lexicographically smallest eligible pool edge,
/// trying rotation boosters first and the exact definition when those stall.
/// Throws std::invalid_argument if the pool overlaps the base graph.
AbsorptionResult absorb_boosters(const Graph& base, std::span<const Edge> pool, std::uint64_t budget,
                                 std::uint64_t seed = 0);

}  // namespace anagraph::posa
