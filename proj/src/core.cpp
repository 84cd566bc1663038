#include "anagraph/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "anagraph/rng.hpp"

namespace anagraph {

Graph::Graph(int n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  adjacency_.resize(n);
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::invalid_argument("edge [" + std::to_string(u) + "," + std::to_string(v) +
                                  "] out of range for n=" + std::to_string(n));
    }
    if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& list = adjacency_[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw std::invalid_argument("parallel edge at vertex " + std::to_string(v));
    }
  }
  edge_count_ = edges.size();
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& list : adjacency_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

int Graph::min_degree() const {
  if (adjacency_.empty()) return 0;
  int best = static_cast<int>(adjacency_[0].size());
  for (const auto& list : adjacency_) best = std::min(best, static_cast<int>(list.size()));
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n() || v >= n()) return false;
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::with_edges(std::span<const Edge> extra) const {
  std::vector<Edge> all = edges();
  all.insert(all.end(), extra.begin(), extra.end());
  return Graph(n(), all);
}

InducedSubgraph induced_subgraph(const Graph& graph, std::span<const Vertex> vertices) {
  std::vector<int> local(graph.n(), -1);
  InducedSubgraph out;
  out.to_host.assign(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (local[vertices[i]] != -1) throw std::invalid_argument("duplicate vertex in subset");
    local[vertices[i]] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex w : graph.neighbors(vertices[i])) {
      int j = local[w];
      if (j > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), j);
    }
  }
  out.graph = Graph(static_cast<int>(vertices.size()), edges);
  return out;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& graph) {
  std::vector<std::vector<Vertex>> components;
  std::vector<char> seen(graph.n(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < graph.n(); ++s) {
    if (seen[s]) continue;
    components.emplace_back();
    auto& comp = components.back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : graph.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
  }
  return components;
}

bool is_connected(const Graph& graph) { return connected_components(graph).size() <= 1; }

bool is_forest(const Graph& graph) {
  return graph.edge_count() + connected_components(graph).size() == static_cast<std::size_t>(graph.n());
}

MultiGraph::MultiGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("multigraph edge out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
}

int MultiGraph::degree(Vertex v) const {
  int d = 0;
  for (auto [a, b] : edges_) d += (a == v) + (b == v);
  return d;
}

std::size_t MultiGraph::loop_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.first == e.second; }));
}

std::size_t MultiGraph::parallel_count() const {
  std::size_t count = 0;
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i] == edges_[i - 1] && edges_[i].first != edges_[i].second) ++count;
  }
  return count;
}

Graph MultiGraph::to_graph() const {
  if (!is_simple()) throw std::invalid_argument("multigraph has loops or parallel edges");
  return Graph(n_, edges_);
}

Coloring::Coloring(std::vector<int> raw) : colors_(std::move(raw)) {
  std::vector<int> distinct(colors_);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (!distinct.empty() && distinct.front() < 0) throw std::invalid_argument("negative color id");
  palette_size_ = static_cast<int>(distinct.size());
  if (!distinct.empty() && distinct.back() == palette_size_ - 1) return;
  for (int& c : colors_) {
    c = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), c) - distinct.begin());
  }
}

void ColorCountVector::add(int color, int count) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), color,
                             [](const auto& e, int c) { return e.first < c; });
  if (it != entries_.end() && it->first == color) {
    it->second += count;
    if (it->second == 0) entries_.erase(it);
  } else if (count != 0) {
    entries_.insert(it, {color, count});
  }
}

int ColorCountVector::count(int color) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), color,
                             [](const auto& e, int c) { return e.first < c; });
  return (it != entries_.end() && it->first == color) ? it->second : 0;
}

int ColorCountVector::total() const {
  int t = 0;
  for (auto [c, k] : entries_) t += k;
  return t;
}

std::uint64_t ColorCountVector::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto [c, k] : entries_) {
    h = (h ^ static_cast<std::uint64_t>(c)) * 1099511628211ULL;
    h = (h ^ static_cast<std::uint64_t>(k)) * 1099511628211ULL;
  }
  return h;
}

ColorCountVector& ColorCountVector::operator+=(const ColorCountVector& other) {
  std::vector<std::pair<int, int>> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      int k = a->second + b->second;
      if (k != 0) merged.emplace_back(a->first, k);
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
  return *this;
}

ColorCountVector color_count(const Coloring& coloring, std::span<const Vertex> vertices) {
  std::map<int, int> counts;
  for (Vertex v : vertices) {
    if (v < 0 || v >= coloring.size()) throw std::out_of_range("vertex " + std::to_string(v) + " not colored");
    ++counts[coloring[v]];
  }
  ColorCountVector out;
  for (auto [c, k] : counts) out.add(c, k);
  return out;
}

bool is_simple_path(const Graph& graph, std::span<const Vertex> vertices) {
  std::vector<char> seen(graph.n(), 0);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vertex v = vertices[i];
    if (v < 0 || v >= graph.n() || seen[v]) return false;
    seen[v] = 1;
    if (i > 0 && !graph.has_edge(vertices[i - 1], v)) return false;
  }
  return true;
}

bool is_anagram_path(const Coloring& coloring, const PathWitness& path) {
  const auto& vs = path.vertices;
  if (vs.empty() || vs.size() % 2 != 0) return false;
  for (Vertex v : vs) {
    if (v < 0 || v >= coloring.size()) return false;
  }
  std::size_t k = vs.size() / 2;
  std::span<const Vertex> all(vs);
  return color_count(coloring, all.first(k)) == color_count(coloring, all.subspan(k));
}

bool verify_witness(const Graph& graph, const Coloring& coloring, const AnagramWitness& witness) {
  const auto& vs = witness.path.vertices;
  if (coloring.size() != graph.n()) return false;
  if (vs.size() < 2 || vs.size() % 2 != 0 || witness.split * 2 != vs.size()) return false;
  return is_simple_path(graph, vs) && is_anagram_path(coloring, witness.path);
}

std::vector<std::uint64_t> color_weights(int palette_size, std::uint64_t salt) {
  Rng rng(salt, "color-weights");
  std::vector<std::uint64_t> w(std::max(palette_size, 0));
  for (auto& x : w) x = rng.next() | 1ULL;
  return w;
}

}  // namespace anagraph
