#pragma once

// Deliberately naive reference implementations used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "anagraph/core.hpp"

namespace oracle {

using anagraph::Edge;
using anagraph::Graph;
using anagraph::Vertex;

inline bool halves_match(const std::vector<int>& seq) {
  if (seq.empty() || seq.size() % 2 != 0) return false;
  std::vector<int> a(seq.begin(), seq.begin() + seq.size() / 2);
  std::vector<int> b(seq.begin() + seq.size() / 2, seq.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

/// Scans every window by sorting its halves.
inline bool has_abelian_square(const std::vector<int>& w) {
  for (std::size_t s = 0; s < w.size(); ++s) {
    for (std::size_t len = 2; s + len <= w.size(); len += 2) {
      if (halves_match(std::vector<int>(w.begin() + s, w.begin() + s + len))) return true;
    }
  }
  return false;
}

/// Calls visit(path) for every simple path with at least one vertex (each direction separately).
inline void for_each_simple_path(const Graph& g, const std::function<bool(const std::vector<Vertex>&)>& visit) {
  std::vector<Vertex> path;
  std::vector<char> used(g.n(), 0);
  std::function<bool(Vertex)> go = [&](Vertex v) {
    path.push_back(v);
    used[v] = 1;
    bool keep = visit(path);
    for (Vertex w = 0; keep && w < g.n(); ++w) {
      if (!used[w] && g.has_edge(v, w)) keep = go(w);
    }
    used[v] = 0;
    path.pop_back();
    return keep;
  };
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!go(v)) return;
  }
}

inline bool anagram_free(const Graph& g, const std::vector<int>& colors) {
  bool free = true;
  for_each_simple_path(g, [&](const std::vector<Vertex>& p) {
    std::vector<int> seq;
    for (Vertex v : p) seq.push_back(colors[v]);
    if (halves_match(seq)) free = false;
    return free;
  });
  return free;
}

/// Minimum t such that some coloring with colors < t is anagram-free (tries all t^n colorings).
inline int pi_per(const Graph& g) {
  const int n = g.n();
  for (int t = 1; t <= n; ++t) {
    std::vector<int> colors(n, 0);
    while (true) {
      if (anagram_free(g, colors)) return t;
      int i = 0;
      while (i < n && ++colors[i] == t) colors[i++] = 0;
      if (i == n) break;
    }
  }
  return n;
}

inline int chromatic_number(const Graph& g) {
  const int n = g.n();
  if (n == 0) return 0;
  for (int t = 1; t <= n; ++t) {
    std::vector<int> colors(n, 0);
    while (true) {
      bool proper = true;
      for (auto [u, v] : g.edges()) proper = proper && colors[u] != colors[v];
      if (proper) return t;
      int i = 0;
      while (i < n && ++colors[i] == t) colors[i++] = 0;
      if (i == n) break;
    }
  }
  return n;
}

inline int longest_path_edges(const Graph& g) {
  int best = 0;
  for_each_simple_path(g, [&](const std::vector<Vertex>& p) {
    best = std::max(best, static_cast<int>(p.size()) - 1);
    return true;
  });
  return best;
}

inline bool hamiltonian(const Graph& g) {
  const int n = g.n();
  if (n < 3) return false;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = g.has_edge(perm[i], perm[(i + 1) % n]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

inline bool hamilton_path(const Graph& g, Vertex from, Vertex to) {
  bool found = false;
  for_each_simple_path(g, [&](const std::vector<Vertex>& p) {
    if (static_cast<int>(p.size()) == g.n() && p.front() == from && p.back() == to) found = true;
    return !found;
  });
  return found;
}

/// Ryser's formula for the permanent of a 0/1 matrix.
inline long long permanent(const std::vector<std::vector<int>>& a) {
  const int n = static_cast<int>(a.size());
  long long total = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    long long prod = 1;
    for (int i = 0; i < n; ++i) {
      long long row = 0;
      for (int j = 0; j < n; ++j) {
        if (mask >> j & 1) row += a[i][j];
      }
      prod *= row;
    }
    total += ((n - __builtin_popcount(mask)) % 2 ? -1 : 1) * prod;
  }
  return total;
}

/// Every graph on n labelled vertices, as edge-subset bitmasks over the pairs (u < v) in order.
inline std::vector<Graph> all_graphs(int n, bool connected_only) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1) edges.push_back(pairs[i]);
    }
    Graph g(n, edges);
    if (!connected_only || anagraph::is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

/// One representative per isomorphism class (canonical form = lexicographically
/// smallest sorted edge list over all relabellings). Fine for n <= 7.
inline std::vector<Graph> nonisomorphic(const std::vector<Graph>& graphs) {
  std::vector<std::vector<Edge>> seen;
  std::vector<Graph> out;
  for (const Graph& g : graphs) {
    const int n = g.n();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Edge> best;
    bool first = true;
    do {
      std::vector<Edge> relabelled;
      for (auto [u, v] : g.edges()) {
        Vertex a = perm[u], b = perm[v];
        relabelled.emplace_back(std::min(a, b), std::max(a, b));
      }
      std::sort(relabelled.begin(), relabelled.end());
      if (first || relabelled < best) best = relabelled;
      first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (std::find(seen.begin(), seen.end(), best) == seen.end()) {
      seen.push_back(best);
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace oracle
