#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "anagraph/core.hpp"

namespace anagraph::detect {

enum class Mode { Exhaustive, Tree, Randomized };

/// `Inconclusive` means the step budget ran out; it never stands for "no anagram".
enum class Verdict { Found, None, Inconclusive };

struct SearchResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<AnagramWitness> witness;
  std::uint64_t steps = 0;
};

/// Searches for an anagram path.
///  - Exhaustive: DFS over every simple path from every root; all even windows
///    ending at the newest vertex are tested. `None` only if the DFS completed.
///  - Tree: input must be a forest (std::invalid_argument otherwise); scans the
///    unique path between every vertex pair. Always complete.
///  - Randomized: seeded self-avoiding walks. Reports Found or Inconclusive.
/// Witnesses are the first hit in (root, neighbor) ascending order, so the
/// result is deterministic for a fixed seed.
SearchResult find_anagram(const Graph& graph, const Coloring& coloring, Mode mode, std::uint64_t budget,
                          std::uint64_t seed = 0);

enum class CertificateKind { Free, Witness, Inconclusive };

struct Certificate {
  CertificateKind kind = CertificateKind::Inconclusive;
  std::optional<AnagramWitness> witness;
  std::uint64_t steps = 0;
};

/// Tree scan for forests, exhaustive DFS otherwise.
Certificate certify_anagram_free(const Graph& graph, const Coloring& coloring, std::uint64_t budget);

/// S independent, one shared color on S, every other vertex uniquely colored.
/// Any path contains a uniquely colored vertex, so this certifies freeness in O(n + m).
bool verify_independent_set_coloring(const Graph& graph, std::span<const Vertex> independent_set,
                                     const Coloring& coloring);

std::string_view to_string(Verdict verdict);
std::string_view to_string(CertificateKind kind);
std::string_view to_string(Mode mode);
/// Throws std::invalid_argument for unknown names.
Mode parse_mode(std::string_view name);

}  // namespace anagraph::detect
