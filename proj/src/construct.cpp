#include "anagraph/construct.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "anagraph/rng.hpp"

namespace anagraph::construct {

BinaryTreeHandle perfect_binary_tree(int h) {
  if (h < 0) throw std::invalid_argument("tree depth must be non-negative");
  if (h > kMaxExplicitTreeDepth) {
    throw std::length_error("tree depth " + std::to_string(h) + " exceeds explicit limit " +
                            std::to_string(kMaxExplicitTreeDepth));
  }
  const int n = (1 << (h + 1)) - 1;
  BinaryTreeHandle t;
  t.depth = h;
  t.parent.assign(n, -1);
  t.children.assign(n, {-1, -1});
  t.vertex_depth.assign(n, 0);
  std::vector<Edge> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (Vertex v = 1; v < n; ++v) {
    Vertex p = (v - 1) / 2;
    t.parent[v] = p;
    t.children[p][(v - 1) % 2] = v;
    t.vertex_depth[v] = t.vertex_depth[p] + 1;
    edges.emplace_back(p, v);
  }
  t.graph = Graph(n, edges);
  return t;
}

SiblingTree sibling_tree(int leaves) {
  if (leaves < 1 || (leaves & (leaves - 1)) != 0) throw std::invalid_argument("leaf count must be a power of two");
  int h = 0;
  while ((1 << h) < leaves) ++h;
  SiblingTree s;
  s.tree = perfect_binary_tree(h);
  std::vector<Edge> edges = s.tree.graph.edges();
  for (Vertex v = 0; v < s.tree.graph.n(); ++v) {
    if (!s.tree.is_leaf(v)) edges.emplace_back(s.tree.children[v][0], s.tree.children[v][1]);
  }
  s.graph = Graph(s.tree.graph.n(), edges);
  return s;
}

Graph circular_ladder(int m) {
  if (m < 1) throw std::invalid_argument("circular ladder needs m >= 1");
  const int len = 2 * m + 1;
  std::vector<Edge> edges;
  for (int side = 0; side < 2; ++side) {
    for (int i = 0; i < len; ++i) edges.emplace_back(side * len + i, side * len + (i + 1) % len);
  }
  for (int i = 0; i < len; ++i) edges.emplace_back(i, len + i);
  return Graph(2 * len, edges);
}

Graph cubic_block(int k) {
  if (k == 4) return complete_graph(4);
  if (k >= 6 && k % 4 == 2) return circular_ladder((k / 2 - 1) / 2);
  throw std::invalid_argument("block size " + std::to_string(k) + " must be 4 or 2(2m+1) with m >= 1");
}

Vertex CompositeDescriptor::port(int block, int towards) const {
  if (block == towards || block < 0 || towards < 0 || block > k || towards > k) {
    throw std::out_of_range("no port between blocks " + std::to_string(block) + " and " + std::to_string(towards));
  }
  return block * k + (towards < block ? towards : towards - 1);
}

CompositeGraph composite_four_regular(int k) {
  const Graph block = cubic_block(k);
  CompositeGraph out;
  auto& desc = out.descriptor;
  desc.k = k;
  std::vector<Edge> edges;
  for (int b = 0; b <= k; ++b) {
    desc.blocks.emplace_back(k);
    std::iota(desc.blocks.back().begin(), desc.blocks.back().end(), b * k);
    for (auto [u, v] : block.edges()) edges.emplace_back(b * k + u, b * k + v);
  }
  for (int i = 0; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      MatchingEdge e{i, j, desc.port(i, j), desc.port(j, i)};
      desc.matching.push_back(e);
      edges.emplace_back(e.u, e.v);
    }
  }
  out.graph = Graph((k + 1) * k, edges);
  return out;
}

Pairing random_pairing(int n, int d, std::uint64_t seed) {
  if (n < 0 || d < 0) throw std::invalid_argument("n and d must be non-negative");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw std::invalid_argument("n*d must be even");
  Rng rng(seed, "construct.pairing");
  std::vector<int> points(n * d);
  std::iota(points.begin(), points.end(), 0);
  rng.shuffle(std::span<int>(points));
  Pairing p{n, d, std::vector<int>(n * d)};
  for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
    p.mate[points[i]] = points[i + 1];
    p.mate[points[i + 1]] = points[i];
  }
  return p;
}

MultiGraph collapse(const Pairing& pairing) {
  std::vector<Edge> edges;
  for (int p = 0; p < static_cast<int>(pairing.mate.size()); ++p) {
    if (p < pairing.mate[p]) edges.emplace_back(pairing.cell(p), pairing.cell(pairing.mate[p]));
  }
  return MultiGraph(pairing.n, std::move(edges));
}

namespace {

std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

/// One Steger-Wormald attempt; nullopt when the remaining points admit no legal pair.
std::optional<Graph> steger_wormald_attempt(int n, int d, Rng& rng) {
  std::vector<int> free_points(n * d);
  std::iota(free_points.begin(), free_points.end(), 0);
  std::unordered_set<std::uint64_t> present;
  std::vector<Edge> edges;
  edges.reserve(n * d / 2);
  auto legal = [&](int a, int b) {
    Vertex u = a / d;
    Vertex v = b / d;
    return u != v && !present.contains(pair_key(u, v));
  };
  int failures = 0;
  while (!free_points.empty()) {
    std::size_t i = rng.below(free_points.size());
    std::size_t j = rng.below(free_points.size() - 1);
    if (j >= i) ++j;
    if (!legal(free_points[i], free_points[j])) {
      if (++failures < 64) continue;
      failures = 0;
      bool any = false;
      for (std::size_t x = 0; x < free_points.size() && !any; ++x) {
        for (std::size_t y = x + 1; y < free_points.size() && !any; ++y) any = legal(free_points[x], free_points[y]);
      }
      if (!any) return std::nullopt;
      continue;
    }
    failures = 0;
    Vertex u = free_points[i] / d;
    Vertex v = free_points[j] / d;
    present.insert(pair_key(u, v));
    edges.emplace_back(u, v);
    if (i < j) std::swap(i, j);
    free_points[i] = free_points.back();
    free_points.pop_back();
    free_points[j] = free_points.back();
    free_points.pop_back();
  }
  return Graph(n, edges);
}

}  // namespace

Graph random_regular(int n, int d, std::uint64_t seed, RegularOptions options) {
  if (n < 1 || d < 0 || d >= n) throw std::invalid_argument("need 0 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw std::invalid_argument("n*d must be even");
  RegularSampler sampler = options.sampler;
  if (sampler == RegularSampler::Auto) sampler = d <= 4 ? RegularSampler::Rejection : RegularSampler::StegerWormald;
  Rng rng(seed, "construct.regular");
  for (int attempt = 0; attempt < options.max_resamples; ++attempt) {
    if (sampler == RegularSampler::Rejection) {
      MultiGraph mg = collapse(random_pairing(n, d, rng.next()));
      if (mg.is_simple()) return mg.to_graph();
    } else if (auto g = steger_wormald_attempt(n, d, rng)) {
      return *std::move(g);
    }
  }
  throw BudgetExhausted("random_regular: no simple graph after " + std::to_string(options.max_resamples) +
                        " attempts");
}

Graph random_matching(int n, std::uint64_t seed) {
  if (n < 0 || n % 2 != 0) throw std::invalid_argument("matching needs an even vertex count");
  Rng rng(seed, "construct.matching");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<Vertex>(order));
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; i += 2) edges.emplace_back(order[i], order[i + 1]);
  return Graph(n, edges);
}

Graph random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("tree needs at least one vertex");
  if (n <= 2) return path_graph(n);
  Rng rng(seed, "construct.tree");
  std::vector<int> code(n - 2);
  for (int& c : code) c = static_cast<int>(rng.below(n));
  std::vector<int> degree(n, 1);
  for (int c : code) ++degree[c];
  std::vector<Edge> edges;
  for (int c : code) {
    Vertex leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, c);
    --degree[leaf];
    --degree[c];
  }
  Vertex a = -1;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (a < 0) {
        a = v;
      } else {
        edges.emplace_back(a, v);
      }
    }
  }
  return Graph(n, edges);
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, edges);
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, edges);
}

}  // namespace anagraph::construct
