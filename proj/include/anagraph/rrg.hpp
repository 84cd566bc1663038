#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "anagraph/core.hpp"

namespace anagraph::rrg {

/// Constants of the two edge-distribution properties. With L = (log d / d) n:
///  (P1) every U with |U| <= a1 L spans at most a2 |U| log d edges;
///  (P2) disjoint T, U with |T| >= p2_t L, |U| >= p2_u L have
///       e(T, U) >= p2_density |T| |U| d / n.
struct PropertyParams {
  double a1 = 30;
  double a2 = 100;
  double p2_t = 10;
  double p2_u = 100;
  double p2_density = 1.0 / 20;
};

enum class CheckMode { Exact, Sampled };

struct EdgeDistributionReport {
  int d = 0;                 // max degree (at least 1), the d in the thresholds
  std::size_t p1_max_size = 0;
  std::size_t p2_min_t = 0;
  std::size_t p2_min_u = 0;
  bool p1_vacuous = false;   // no set is small enough to test
  bool p2_vacuous = false;   // p2_min_t + p2_min_u > n
  std::uint64_t p1_sets_tested = 0;
  std::uint64_t p2_pairs_tested = 0;
  double p1_max_ratio = 0;   // max e(U) / (|U| log d); violation above a2
  double p2_min_ratio = 0;   // min e(T,U) / (p2_density |T||U| d / n); violation below 1
  std::uint64_t p1_violations = 0;
  std::uint64_t p2_violations = 0;
  std::vector<Vertex> p1_witness;                                   // first violating U
  std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> p2_witness;  // first violating (T, U)
};

/// Exact mode enumerates every set (n <= 14, std::invalid_argument above);
/// sampled mode draws `trials` sets or pairs of admissible sizes for each property.
EdgeDistributionReport check_edge_distribution(const Graph& graph, const PropertyParams& params, CheckMode mode,
                                               std::uint64_t trials, std::uint64_t seed);

/// delta = (alpha / removal_degree_divisor) log d is the core degree floor;
/// (alpha / degree_floor_divisor) log d is the floor inside each split side.
struct SplitParams {
  double alpha = 1e5;
  double degree_floor_divisor = 160;
  double removal_degree_divisor = 40;
  /// |X| as a fraction of n; unset means 1 - alpha log d / d, clamped to [0, 1].
  std::optional<double> core_target;
  int retries = 1000;

  double delta(int d) const;
  double side_floor(int d) const;

  /// alpha = 96: core floor about 7.6 and side floor about 1.9 at d = 24.
  static SplitParams relaxed();
};

/// A pipeline stage could not complete; `stage` names it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct EvenCore {
  std::vector<Vertex> z;        // sorted
  std::vector<Vertex> x;        // discarded up front: odd-class representatives, then padding pairs
  std::vector<Edge> removals;   // (v, w): v had too few neighbours, w is its same-colored partner
  double delta = 0;
};

/// X gets one vertex per odd color class (the smallest), then same-color pairs
/// from the largest classes until |X| reaches the core target. Then the
/// smallest vertex with fewer than delta neighbours in the residual is removed
/// together with the smallest remaining vertex of its color, until none is left.
/// Throws StageError("core", ...) if the residual becomes empty.
EvenCore build_even_core(const Graph& graph, const Coloring& coloring, const SplitParams& params);

struct DenseSetPair {
  std::vector<Vertex> v1;                   // sorted
  std::vector<Vertex> v2;                   // sorted
  std::vector<Edge> pair_map;               // Q: same-colored pairs of Z
  int attempts = 0;
  int min_side_degree = 0;
};

/// Pairs every color class of Z, then flips a coin per pair until every
/// vertex has at least side_floor neighbours on its own side. Throws
/// StageError("split", ...) after params.retries attempts or on invalid Z.
DenseSetPair split_dense_pair(std::span<const Vertex> z, const Coloring& coloring, const Graph& graph,
                              const SplitParams& params, std::uint64_t seed);

struct PipelineReport {
  std::optional<AnagramWitness> witness;
  int stage_reached = 0;        // last stage completed, 0..5
  std::string failed_stage;     // empty on success
  std::string failure;
  std::size_t core_size = 0;
  std::size_t discarded = 0;
  std::size_t side_size = 0;    // |V1|
  int split_attempts = 0;
  std::vector<std::size_t> cycle_lengths;
  std::size_t absorbed_edges = 0;
};

extern const char* const kStageNames[5];

/// Stages: core, split, hamilton, bridge, assemble. With `second` given the
/// Hamilton stage absorbs boosters from second[V_i] into graph[V_i]; otherwise
/// it searches graph[V_i] directly. Any returned witness passed verify_witness
/// on the union graph.
PipelineReport anagram_pipeline(const Graph& graph, const Coloring& coloring, const SplitParams& params,
                                std::uint64_t seed, std::uint64_t budget, const Graph* second = nullptr);

struct PerfectMatchingCount {
  std::uint64_t count = 0;
  double bound = 0;       // prod (r_i!)^(1/(2 r_i)); 0 if some vertex is isolated
  double log_bound = 0;
};

/// Memoized recursion over vertex bitmasks, n <= 64 (std::invalid_argument above).
/// Throws std::logic_error if the count ever exceeds the bound.
PerfectMatchingCount count_perfect_matchings(const Graph& graph);

double double_factorial(int n);

enum class ProbabilityMode { Exact, MonteCarlo };

struct AvoidanceReport {
  double probability = 0;
  double beta = 0;        // |F| / N^2
  double reference = 0;   // exp(-8 beta N / 9)
  double sigma = 0;       // binomial standard error (Monte Carlo only)
  std::uint64_t trials = 0;
  bool exact = false;
};

/// Probability that a uniform perfect matching of K_N avoids F. Exact mode
/// counts matchings of the complement (N <= 24).
AvoidanceReport matching_avoidance_probability(int n, std::span<const Edge> forbidden, ProbabilityMode mode,
                                               std::uint64_t trials, std::uint64_t seed);

/// Uniform coloring with `palette` colors, every color used at least once when palette <= n.
Coloring random_coloring(int n, int palette, std::uint64_t seed);

}  // namespace anagraph::rrg
