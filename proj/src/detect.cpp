#include "anagraph/detect.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "anagraph/rng.hpp"

namespace anagraph::detect {
namespace {

/// Path under construction with prefix hashes of its color multiset.
class PathState {
 public:
  PathState(const Coloring& coloring, int n)
      : coloring_(coloring),
        weights_(color_weights(coloring.palette_size(), 0xa9a)),
        on_path_(n, 0),
        scratch_(coloring.palette_size(), 0) {
    hash_.push_back(0);
  }

  void push(Vertex v) {
    path_.push_back(v);
    on_path_[v] = 1;
    hash_.push_back(hash_.back() + weights_[coloring_[v]]);
  }
  void pop() {
    on_path_[path_.back()] = 0;
    path_.pop_back();
    hash_.pop_back();
  }
  void clear() {
    while (!path_.empty()) pop();
  }
  bool on_path(Vertex v) const { return on_path_[v] != 0; }
  std::size_t size() const { return path_.size(); }
  Vertex back() const { return path_.back(); }

  /// Window [start, end) of even length: exact half comparison.
  bool window_is_anagram(std::size_t start, std::size_t end) {
    const std::size_t mid = start + (end - start) / 2;
    if (2 * hash_[mid] != hash_[start] + hash_[end]) return false;
    for (std::size_t i = start; i < mid; ++i) ++scratch_[coloring_[path_[i]]];
    for (std::size_t i = mid; i < end; ++i) --scratch_[coloring_[path_[i]]];
    bool equal = true;
    for (std::size_t i = start; i < end; ++i) {
      int& c = scratch_[coloring_[path_[i]]];
      if (c != 0) equal = false;
      c = 0;
    }
    return equal;
  }

  /// Smallest-start even window ending at the newest vertex, if any.
  std::optional<AnagramWitness> suffix_anagram() {
    const std::size_t len = path_.size();
    for (std::size_t start = len % 2; start + 2 <= len; start += 2) {
      if (window_is_anagram(start, len)) return witness(start, len);
    }
    return std::nullopt;
  }

  AnagramWitness witness(std::size_t start, std::size_t end) const {
    AnagramWitness w;
    w.path.vertices.assign(path_.begin() + start, path_.begin() + end);
    w.split = (end - start) / 2;
    return w;
  }

 private:
  const Coloring& coloring_;
  std::vector<std::uint64_t> weights_;
  std::vector<Vertex> path_;
  std::vector<std::uint64_t> hash_;
  std::vector<char> on_path_;
  std::vector<int> scratch_;
};

std::optional<AnagramWitness> monochromatic_edge(const Graph& graph, const Coloring& coloring) {
  for (Vertex u = 0; u < graph.n(); ++u) {
    for (Vertex v : graph.neighbors(u)) {
      if (u < v && coloring[u] == coloring[v]) return AnagramWitness{PathWitness{{u, v}}, 1};
    }
  }
  return std::nullopt;
}

SearchResult exhaustive(const Graph& graph, const Coloring& coloring, std::uint64_t budget) {
  SearchResult result;
  PathState state(coloring, graph.n());
  std::vector<std::size_t> next_index;
  for (Vertex root = 0; root < graph.n(); ++root) {
    state.push(root);
    next_index.assign(1, 0);
    while (!next_index.empty()) {
      std::size_t& idx = next_index.back();
      auto nbrs = graph.neighbors(state.back());
      while (idx < nbrs.size() && state.on_path(nbrs[idx])) ++idx;
      if (idx == nbrs.size()) {
        next_index.pop_back();
        state.pop();
        continue;
      }
      if (result.steps >= budget) {
        result.verdict = Verdict::Inconclusive;
        return result;
      }
      ++result.steps;
      state.push(nbrs[idx++]);
      if (auto w = state.suffix_anagram()) {
        result.verdict = Verdict::Found;
        result.witness = std::move(w);
        return result;
      }
      next_index.push_back(0);
    }
  }
  result.verdict = Verdict::None;
  return result;
}

SearchResult tree_scan(const Graph& graph, const Coloring& coloring) {
  if (!is_forest(graph)) throw std::invalid_argument("tree mode requires a forest");
  SearchResult result;
  PathState state(coloring, graph.n());
  std::vector<std::size_t> next_index;
  for (Vertex root = 0; root < graph.n(); ++root) {
    state.push(root);
    next_index.assign(1, 0);
    while (!next_index.empty()) {
      std::size_t& idx = next_index.back();
      auto nbrs = graph.neighbors(state.back());
      while (idx < nbrs.size() && state.on_path(nbrs[idx])) ++idx;
      if (idx == nbrs.size()) {
        next_index.pop_back();
        state.pop();
        continue;
      }
      ++result.steps;
      Vertex v = nbrs[idx++];
      state.push(v);
      // Each tree path is seen from both ends; test it once, from the smaller end.
      if (v > root && state.size() % 2 == 0 && state.window_is_anagram(0, state.size())) {
        result.verdict = Verdict::Found;
        result.witness = state.witness(0, state.size());
        return result;
      }
      next_index.push_back(0);
    }
  }
  result.verdict = Verdict::None;
  return result;
}

SearchResult randomized(const Graph& graph, const Coloring& coloring, std::uint64_t budget, std::uint64_t seed) {
  SearchResult result;
  if (graph.n() == 0) return result;
  Rng rng(seed, "detect.randomized");
  PathState state(coloring, graph.n());
  std::vector<Vertex> options;
  while (result.steps < budget) {
    state.clear();
    state.push(static_cast<Vertex>(rng.below(graph.n())));
    while (result.steps < budget) {
      options.clear();
      for (Vertex w : graph.neighbors(state.back())) {
        if (!state.on_path(w)) options.push_back(w);
      }
      if (options.empty()) break;
      ++result.steps;
      state.push(options[rng.below(options.size())]);
      if (auto w = state.suffix_anagram()) {
        result.verdict = Verdict::Found;
        result.witness = std::move(w);
        return result;
      }
    }
  }
  result.verdict = Verdict::Inconclusive;
  return result;
}

}  // namespace

SearchResult find_anagram(const Graph& graph, const Coloring& coloring, Mode mode, std::uint64_t budget,
                          std::uint64_t seed) {
  if (coloring.size() != graph.n()) throw std::invalid_argument("coloring size does not match graph");
  if (mode == Mode::Tree && !is_forest(graph)) throw std::invalid_argument("tree mode requires a forest");
  if (auto w = monochromatic_edge(graph, coloring)) return SearchResult{Verdict::Found, std::move(w), 0};
  if (mode != Mode::Randomized && coloring.palette_size() == graph.n()) {
    // All colors distinct: two disjoint halves never share a color.
    return SearchResult{Verdict::None, std::nullopt, 0};
  }
  switch (mode) {
    case Mode::Exhaustive:
      return exhaustive(graph, coloring, budget);
    case Mode::Tree:
      return tree_scan(graph, coloring);
    case Mode::Randomized:
      return randomized(graph, coloring, budget, seed);
  }
  throw std::logic_error("unknown detect mode");
}

Certificate certify_anagram_free(const Graph& graph, const Coloring& coloring, std::uint64_t budget) {
  const Mode mode = is_forest(graph) ? Mode::Tree : Mode::Exhaustive;
  SearchResult r = find_anagram(graph, coloring, mode, budget);
  Certificate cert;
  cert.steps = r.steps;
  switch (r.verdict) {
    case Verdict::Found:
      cert.kind = CertificateKind::Witness;
      cert.witness = std::move(r.witness);
      break;
    case Verdict::None:
      cert.kind = CertificateKind::Free;
      break;
    case Verdict::Inconclusive:
      cert.kind = CertificateKind::Inconclusive;
      break;
  }
  return cert;
}

bool verify_independent_set_coloring(const Graph& graph, std::span<const Vertex> independent_set,
                                     const Coloring& coloring) {
  if (coloring.size() != graph.n()) return false;
  std::vector<char> in_set(graph.n(), 0);
  for (Vertex v : independent_set) {
    if (v < 0 || v >= graph.n() || in_set[v]) return false;
    in_set[v] = 1;
  }
  for (Vertex v : independent_set) {
    if (coloring[v] != coloring[independent_set.front()]) return false;
    for (Vertex w : graph.neighbors(v)) {
      if (in_set[w]) return false;
    }
  }
  std::vector<int> uses(coloring.palette_size(), 0);
  for (Vertex v = 0; v < graph.n(); ++v) ++uses[coloring[v]];
  for (Vertex v = 0; v < graph.n(); ++v) {
    if (!in_set[v] && uses[coloring[v]] != 1) return false;
  }
  return true;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Found:
      return "found";
    case Verdict::None:
      return "none";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::Free:
      return "free";
    case CertificateKind::Witness:
      return "witness";
    case CertificateKind::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Exhaustive:
      return "exhaustive";
    case Mode::Tree:
      return "tree";
    case Mode::Randomized:
      return "randomized";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  if (name == "exhaustive") return Mode::Exhaustive;
  if (name == "tree") return Mode::Tree;
  if (name == "randomized") return Mode::Randomized;
  throw std::invalid_argument("unknown mode: " + std::string(name));
}

}  // namespace anagraph::detect
