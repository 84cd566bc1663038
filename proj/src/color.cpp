#include "anagraph/color.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>

#include "anagraph/detect.hpp"
#include "anagraph/rng.hpp"

namespace anagraph::color {
namespace {

std::vector<int> bfs_distances(const Graph& graph, Vertex root, std::span<const char> removed = {}) {
  std::vector<int> dist(graph.n(), -1);
  std::queue<Vertex> queue;
  dist[root] = 0;
  queue.push(root);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop();
    for (Vertex w : graph.neighbors(v)) {
      if (dist[w] < 0 && (removed.empty() || !removed[w])) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

/// Components of graph minus the marked vertices, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> components_without(const Graph& graph, std::span<const char> removed) {
  std::vector<std::vector<Vertex>> out;
  std::vector<char> seen(removed.begin(), removed.end());
  for (Vertex s = 0; s < graph.n(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex w : graph.neighbors(comp[i])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Vertex farthest(const std::vector<int>& dist) {
  Vertex best = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(dist.size()); ++v) {
    if (dist[v] > dist[best]) best = v;
  }
  return best;
}

struct LayerChoice {
  std::vector<Vertex> layer;
  std::size_t largest = 0;
};

/// Best single BFS layer: valid ones (largest part <= limit) by size, then by
/// largest part; if none is valid, the layer with the smallest largest part.
LayerChoice best_layer(const Graph& graph, std::size_t limit) {
  Vertex root = farthest(bfs_distances(graph, 0));
  root = farthest(bfs_distances(graph, root));
  std::vector<int> dist = bfs_distances(graph, root);
  const int depth = *std::max_element(dist.begin(), dist.end());
  std::vector<std::vector<Vertex>> layers(depth + 1);
  for (Vertex v = 0; v < graph.n(); ++v) layers[dist[v]].push_back(v);

  std::optional<LayerChoice> valid;
  std::optional<LayerChoice> fallback;
  std::vector<char> removed(graph.n(), 0);
  for (const auto& layer : layers) {
    for (Vertex v : layer) removed[v] = 1;
    std::size_t largest = 0;
    for (const auto& comp : components_without(graph, removed)) largest = std::max(largest, comp.size());
    for (Vertex v : layer) removed[v] = 0;
    LayerChoice choice{layer, largest};
    if (largest <= limit) {
      if (!valid || layer.size() < valid->layer.size() ||
          (layer.size() == valid->layer.size() && largest < valid->largest)) {
        valid = choice;
      }
    } else if (!fallback || largest < fallback->largest) {
      fallback = choice;
    }
  }
  return valid ? *valid : *fallback;
}

}  // namespace

Coloring depth_coloring(const construct::BinaryTreeHandle& tree) { return Coloring(tree.vertex_depth); }

std::size_t SeparatorResult::largest_part() const {
  std::size_t largest = 0;
  for (const auto& part : parts) largest = std::max(largest, part.size());
  return largest;
}

Vertex tree_centroid(const Graph& forest) {
  if (forest.n() == 0) throw std::invalid_argument("tree_centroid: empty graph");
  if (!is_forest(forest)) throw std::invalid_argument("tree_centroid: input has a cycle");
  auto comps = connected_components(forest);
  const auto& comp = *std::max_element(comps.begin(), comps.end(),
                                       [](const auto& a, const auto& b) { return a.size() < b.size(); });
  const int m = static_cast<int>(comp.size());
  std::vector<Vertex> parent(forest.n(), -1);
  std::vector<Vertex> order{comp.front()};
  parent[comp.front()] = comp.front();
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex w : forest.neighbors(order[i])) {
      if (parent[w] < 0) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  std::vector<int> size(forest.n(), 1);
  std::vector<int> heaviest_child(forest.n(), 0);
  for (std::size_t i = order.size(); i-- > 1;) {
    Vertex v = order[i];
    size[parent[v]] += size[v];
    heaviest_child[parent[v]] = std::max(heaviest_child[parent[v]], size[v]);
  }
  Vertex best = -1;
  int best_piece = m + 1;
  for (Vertex v : order) {
    int piece = std::max(heaviest_child[v], m - size[v]);
    if (piece < best_piece || (piece == best_piece && v < best)) {
      best = v;
      best_piece = piece;
    }
  }
  return best;
}

SeparatorResult centroid_separator(const Graph& forest) {
  Vertex c = tree_centroid(forest);
  std::vector<char> removed(forest.n(), 0);
  removed[c] = 1;
  return SeparatorResult{{c}, components_without(forest, removed)};
}

SeparatorResult bfs_layer_separator(const Graph& graph) {
  if (graph.n() == 0) return {};
  if (!is_connected(graph)) throw std::invalid_argument("bfs_layer_separator: graph is disconnected");
  const std::size_t limit = 2 * static_cast<std::size_t>(graph.n()) / 3;
  LayerChoice first = best_layer(graph, limit);
  std::vector<char> removed(graph.n(), 0);
  for (Vertex v : first.layer) removed[v] = 1;
  auto parts = components_without(graph, removed);
  while (true) {
    auto big = std::max_element(parts.begin(), parts.end(),
                                [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (big == parts.end() || big->size() <= limit) break;
    InducedSubgraph sub = induced_subgraph(graph, *big);
    LayerChoice inner = best_layer(sub.graph, 2 * big->size() / 3);
    for (Vertex v : inner.layer) removed[sub.to_host[v]] = 1;
    parts = components_without(graph, removed);
  }
  SeparatorResult result;
  for (Vertex v = 0; v < graph.n(); ++v) {
    if (removed[v]) result.separator.push_back(v);
  }
  result.parts = std::move(parts);
  return result;
}

namespace {

std::vector<int> separator_colors(const Graph& graph, const SeparatorOracle& oracle) {
  const int n = graph.n();
  std::vector<int> colors(n, 0);
  if (n <= 1) return colors;
  auto comps = connected_components(graph);
  if (comps.size() > 1) {
    for (const auto& comp : comps) {
      InducedSubgraph sub = induced_subgraph(graph, comp);
      auto inner = separator_colors(sub.graph, oracle);
      for (int i = 0; i < sub.graph.n(); ++i) colors[sub.to_host[i]] = inner[i];
    }
    return colors;
  }
  SeparatorResult sep = oracle(graph);
  std::vector<int> owner(n, -2);
  for (Vertex v : sep.separator) {
    if (v < 0 || v >= n || owner[v] != -2) throw std::logic_error("separator oracle returned an invalid separator");
    owner[v] = -1;
  }
  if (sep.separator.empty()) throw std::logic_error("separator oracle returned an empty separator");
  for (int p = 0; p < static_cast<int>(sep.parts.size()); ++p) {
    for (Vertex v : sep.parts[p]) {
      if (v < 0 || v >= n || owner[v] != -2) throw std::logic_error("separator oracle parts overlap");
      owner[v] = p;
    }
  }
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v) {
    if (owner[v] == -2) throw std::logic_error("separator oracle missed a vertex");
    if (owner[v] < 0) continue;
    rest.push_back(v);
    for (Vertex w : graph.neighbors(v)) {
      if (owner[w] >= 0 && owner[w] != owner[v]) throw std::logic_error("separator oracle parts are adjacent");
    }
  }
  int palette = 0;
  if (!rest.empty()) {
    InducedSubgraph sub = induced_subgraph(graph, rest);
    auto inner = separator_colors(sub.graph, oracle);
    for (int i = 0; i < sub.graph.n(); ++i) {
      colors[sub.to_host[i]] = inner[i];
      palette = std::max(palette, inner[i] + 1);
    }
  }
  for (Vertex v : sep.separator) colors[v] = palette++;
  return colors;
}

}  // namespace

Coloring separator_coloring(const Graph& graph, const SeparatorOracle& oracle) {
  return Coloring(separator_colors(graph, oracle));
}

std::vector<Vertex> greedy_independent_set(const Graph& graph, std::uint64_t seed) {
  Rng rng(seed, "color.independent");
  const int n = graph.n();
  std::vector<char> alive(n, 1);
  std::vector<int> degree(n);
  for (Vertex v = 0; v < n; ++v) degree[v] = graph.degree(v);
  std::vector<Vertex> chosen;
  std::vector<Vertex> ties;
  auto remove = [&](Vertex v) {
    alive[v] = 0;
    for (Vertex w : graph.neighbors(v)) --degree[w];
  };
  while (true) {
    ties.clear();
    int best = n + 1;
    for (Vertex v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      if (degree[v] < best) {
        best = degree[v];
        ties.clear();
      }
      if (degree[v] == best) ties.push_back(v);
    }
    if (ties.empty()) break;
    Vertex v = ties[rng.below(ties.size())];
    chosen.push_back(v);
    remove(v);
    for (Vertex w : graph.neighbors(v)) {
      if (alive[w]) remove(w);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Coloring independent_set_coloring(const Graph& graph, std::span<const Vertex> independent_set) {
  if (graph.n() > 0 && independent_set.empty()) throw std::invalid_argument("independent set is empty");
  std::vector<int> colors(graph.n(), -1);
  for (Vertex v : independent_set) {
    if (v < 0 || v >= graph.n()) throw std::invalid_argument("vertex outside graph");
    if (colors[v] == 0) throw std::invalid_argument("vertex repeated in independent set");
    colors[v] = 0;
  }
  for (Vertex v : independent_set) {
    for (Vertex w : graph.neighbors(v)) {
      if (colors[w] == 0) {
        throw std::invalid_argument("set is not independent: edge " + std::to_string(v) + "-" + std::to_string(w));
      }
    }
  }
  int next = 1;
  for (int& c : colors) {
    if (c < 0) c = next++;
  }
  return Coloring(std::move(colors));
}

namespace {

/// Assigns colors vertex by vertex; after each assignment enumerates every
/// simple path through the new vertex inside the colored subgraph.
class ExactSearch {
 public:
  ExactSearch(const Graph& graph, std::uint64_t& budget) : graph_(graph), budget_(budget) {
    const int n = graph.n();
    std::vector<int> degree(n);
    std::vector<char> removed(n, 0);
    for (Vertex v = 0; v < n; ++v) degree[v] = graph.degree(v);
    for (int step = 0; step < n; ++step) {
      Vertex pick = -1;
      for (Vertex v = 0; v < n; ++v) {
        if (!removed[v] && (pick < 0 || degree[v] < degree[pick])) pick = v;
      }
      removed[pick] = 1;
      order_.push_back(pick);
      for (Vertex w : graph.neighbors(pick)) --degree[w];
    }
    std::reverse(order_.begin(), order_.end());
  }

  /// True if an anagram-free coloring with at most t colors exists; throws
  /// BudgetExhausted when the budget runs out first.
  bool run(int t) {
    palette_ = t;
    colors_.assign(graph_.n(), -1);
    nodes_ = 0;
    return assign(0, -1);
  }

  std::vector<int> colors() const { return colors_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool assign(std::size_t index, int max_used) {
    if (index == order_.size()) return true;
    const Vertex v = order_[index];
    const int limit = std::min(palette_ - 1, max_used + 1);
    for (int c = 0; c <= limit; ++c) {
      spend();
      ++nodes_;
      colors_[v] = c;
      if (free_through(v) && assign(index + 1, std::max(max_used, c))) return true;
    }
    colors_[v] = -1;
    return false;
  }

  void spend() {
    if (budget_ == 0) throw BudgetExhausted("exact_anagram_chromatic: budget exhausted");
    --budget_;
  }

  bool free_through(Vertex v) {
    for (Vertex w : graph_.neighbors(v)) {
      if (colors_[w] == colors_[v]) return false;
    }
    on_path_.assign(graph_.n(), 0);
    forward_ = {v};
    on_path_[v] = 1;
    return extend_forward();
  }

  bool extend_forward() {
    backward_ = {forward_.front()};
    if (!extend_backward()) return false;
    for (Vertex w : graph_.neighbors(forward_.back())) {
      if (colors_[w] < 0 || on_path_[w]) continue;
      on_path_[w] = 1;
      forward_.push_back(w);
      bool ok = extend_forward();
      forward_.pop_back();
      on_path_[w] = 0;
      if (!ok) return false;
    }
    return true;
  }

  bool extend_backward() {
    if (is_anagram()) return false;
    for (Vertex w : graph_.neighbors(backward_.back())) {
      if (colors_[w] < 0 || on_path_[w]) continue;
      on_path_[w] = 1;
      backward_.push_back(w);
      bool ok = extend_backward();
      backward_.pop_back();
      on_path_[w] = 0;
      if (!ok) return false;
    }
    return true;
  }

  /// Path = reverse(backward_ without its first vertex) followed by forward_.
  bool is_anagram() {
    const std::size_t len = forward_.size() + backward_.size() - 1;
    if (len % 2 != 0) return false;
    spend();
    path_.clear();
    for (std::size_t i = backward_.size(); i-- > 1;) path_.push_back(backward_[i]);
    path_.insert(path_.end(), forward_.begin(), forward_.end());
    counts_.assign(palette_, 0);
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) {
      ++counts_[colors_[path_[i]]];
      --counts_[colors_[path_[half + i]]];
    }
    return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c == 0; });
  }

  const Graph& graph_;
  std::uint64_t& budget_;
  std::vector<Vertex> order_;
  std::vector<int> colors_;
  int palette_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<char> on_path_;
  std::vector<Vertex> forward_;
  std::vector<Vertex> backward_;
  std::vector<Vertex> path_;
  std::vector<int> counts_;
};

}  // namespace

ExactResult exact_anagram_chromatic(const Graph& graph, std::uint64_t budget) {
  const int n = graph.n();
  ExactResult result;
  std::vector<int> distinct(n);
  for (Vertex v = 0; v < n; ++v) distinct[v] = v;
  result.coloring = Coloring(distinct);
  result.upper = n;
  result.value = n;
  result.lower = n == 0 ? 0 : (graph.edge_count() > 0 ? 2 : 1);
  if (n == 0) {
    result.exact = true;
    return result;
  }
  ExactSearch search(graph, budget);
  for (int t = result.lower; t < n; ++t) {
    bool found = false;
    try {
      found = search.run(t);
    } catch (const BudgetExhausted&) {
      result.nodes += search.nodes();
      result.nodes_per_palette.push_back(search.nodes());
      result.lower = t;
      return result;
    }
    result.nodes += search.nodes();
    result.nodes_per_palette.push_back(search.nodes());
    if (found) {
      result.coloring = Coloring(search.colors());
      result.upper = result.value = result.lower = result.coloring.palette_size();
      result.exact = true;
      break;
    }
    result.lower = t + 1;
  }
  if (!result.exact) {
    result.lower = result.upper;
    result.exact = true;
  }
  auto cert = detect::certify_anagram_free(graph, result.coloring, ~std::uint64_t{0});
  if (cert.kind != detect::CertificateKind::Free) {
    throw std::logic_error("exact_anagram_chromatic: returned coloring failed certification");
  }
  return result;
}

}  // namespace anagraph::color
