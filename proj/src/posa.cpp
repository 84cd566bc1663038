#include "anagraph/posa.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <stdexcept>

#include "anagraph/rng.hpp"

namespace anagraph::posa {
namespace {

using Mask = std::uint32_t;

std::vector<Mask> neighbor_masks(const Graph& graph) {
  std::vector<Mask> masks(graph.n(), 0);
  for (Vertex v = 0; v < graph.n(); ++v) {
    for (Vertex w : graph.neighbors(v)) masks[v] |= Mask{1} << w;
  }
  return masks;
}

void require_exact_size(const Graph& graph, int limit, const char* what) {
  if (graph.n() > limit) {
    throw std::invalid_argument(std::string(what) + ": exact mode limited to " + std::to_string(limit) + " vertices");
  }
}

/// reach[mask] = set of vertices v such that some path covering exactly `mask` ends at v.
std::vector<Mask> path_reach(const std::vector<Mask>& nbr, int n) {
  std::vector<Mask> reach(std::size_t{1} << n, 0);
  for (int v = 0; v < n; ++v) reach[Mask{1} << v] = Mask{1} << v;
  for (Mask mask = 1; mask < reach.size(); ++mask) {
    Mask ends = reach[mask];
    while (ends) {
      int v = std::countr_zero(ends);
      ends &= ends - 1;
      Mask ext = nbr[v] & ~mask;
      while (ext) {
        int w = std::countr_zero(ext);
        ext &= ext - 1;
        reach[mask | (Mask{1} << w)] |= Mask{1} << w;
      }
    }
  }
  return reach;
}

std::vector<Vertex> unwind(const std::vector<Mask>& reach, const std::vector<Mask>& nbr, Mask mask, int end) {
  std::vector<Vertex> path{end};
  while (std::popcount(mask) > 1) {
    Mask prev = mask & ~(Mask{1} << end);
    Mask options = reach[prev] & nbr[end];
    end = std::countr_zero(options);
    path.push_back(end);
    mask = prev;
  }
  return path;
}

int longest_from_reach(const std::vector<Mask>& reach, Mask* best_mask) {
  int best = 0;
  for (Mask mask = 1; mask < reach.size(); ++mask) {
    if (reach[mask] && std::popcount(mask) > best) {
      best = std::popcount(mask);
      if (best_mask) *best_mask = mask;
    }
  }
  return best - 1;
}

/// Path with O(1) position lookup; supports extension, Posa rotation and
/// reopening a closed cycle towards an outside vertex.
class RotationWalker {
 public:
  explicit RotationWalker(const Graph& graph) : graph_(graph), pos_(graph.n(), -1) {}

  void reset(Vertex start) {
    for (Vertex v : path_) pos_[v] = -1;
    path_.assign(1, start);
    pos_[start] = 0;
  }
  std::size_t size() const { return path_.size(); }
  Vertex front() const { return path_.front(); }
  Vertex back() const { return path_.back(); }
  const std::vector<Vertex>& path() const { return path_; }

  bool extend(Rng& rng) {
    options_.clear();
    for (Vertex w : graph_.neighbors(back())) {
      if (pos_[w] < 0) options_.push_back(w);
    }
    if (options_.empty()) return false;
    Vertex w = options_[rng.below(options_.size())];
    pos_[w] = static_cast<int>(path_.size());
    path_.push_back(w);
    return true;
  }

  bool rotate(Rng& rng) {
    options_.clear();
    const int last = static_cast<int>(path_.size()) - 1;
    for (Vertex w : graph_.neighbors(back())) {
      if (pos_[w] >= 0 && pos_[w] < last - 1) options_.push_back(w);
    }
    if (options_.empty()) return false;
    int pivot = pos_[options_[rng.below(options_.size())]];
    std::reverse(path_.begin() + pivot + 1, path_.end());
    for (int i = pivot + 1; i <= last; ++i) pos_[path_[i]] = i;
    return true;
  }

  void reverse() {
    std::reverse(path_.begin(), path_.end());
    for (int i = 0; i < static_cast<int>(path_.size()); ++i) pos_[path_[i]] = i;
  }

  /// Requires back()-front() adjacency. Reopens the cycle at a vertex with an
  /// outside neighbour w so the path becomes w, p_i, ..., p_0, p_t, ..., p_{i+1}.
  bool break_cycle_outward(Rng& rng) {
    std::vector<std::pair<int, Vertex>> exits;
    for (int i = 0; i < static_cast<int>(path_.size()); ++i) {
      for (Vertex w : graph_.neighbors(path_[i])) {
        if (pos_[w] < 0) exits.emplace_back(i, w);
      }
    }
    if (exits.empty()) return false;
    auto [i, w] = exits[rng.below(exits.size())];
    std::vector<Vertex> next;
    next.reserve(path_.size() + 1);
    next.push_back(w);
    for (int j = i; j >= 0; --j) next.push_back(path_[j]);
    for (int j = static_cast<int>(path_.size()) - 1; j > i; --j) next.push_back(path_[j]);
    path_ = std::move(next);
    for (int j = 0; j < static_cast<int>(path_.size()); ++j) pos_[path_[j]] = j;
    return true;
  }

 private:
  const Graph& graph_;
  std::vector<Vertex> path_;
  std::vector<int> pos_;
  std::vector<Vertex> options_;
};

constexpr int kStallLimit = 50;

Edge ordered(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Endpoints reachable by rotations with path.front() fixed, each with one witnessing path.
std::vector<std::vector<Vertex>> rotation_closure(const Graph& graph, std::vector<Vertex> start,
                                                  std::uint64_t& budget) {
  std::vector<int> pos(graph.n(), -1);
  std::vector<char> seen_end(graph.n(), 0);
  std::vector<std::vector<Vertex>> found;
  std::deque<std::vector<Vertex>> queue;
  seen_end[start.back()] = 1;
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    std::vector<Vertex> path = std::move(queue.front());
    queue.pop_front();
    const int last = static_cast<int>(path.size()) - 1;
    for (int i = 0; i <= last; ++i) pos[path[i]] = i;
    for (Vertex w : graph.neighbors(path.back())) {
      if (budget == 0) break;
      int i = pos[w];
      if (i < 0 || i >= last - 1) continue;
      --budget;
      Vertex new_end = path[i + 1];
      if (seen_end[new_end]) continue;
      seen_end[new_end] = 1;
      std::vector<Vertex> next(path);
      std::reverse(next.begin() + i + 1, next.end());
      queue.push_back(std::move(next));
    }
    for (Vertex v : path) pos[v] = -1;
    found.push_back(std::move(path));
  }
  return found;
}

}  // namespace

int longest_path_length(const Graph& graph) {
  require_exact_size(graph, kExactLimit, "longest_path");
  if (graph.n() == 0) return 0;
  return longest_from_reach(path_reach(neighbor_masks(graph), graph.n()), nullptr);
}

LongestPathResult longest_path(const Graph& graph, SearchMode mode, std::uint64_t budget, std::uint64_t seed) {
  LongestPathResult result;
  if (graph.n() == 0) {
    result.exact = true;
    return result;
  }
  if (mode == SearchMode::Exact) {
    require_exact_size(graph, kExactLimit, "longest_path");
    auto nbr = neighbor_masks(graph);
    auto reach = path_reach(nbr, graph.n());
    Mask best = 1;
    longest_from_reach(reach, &best);
    result.path.vertices = unwind(reach, nbr, best, std::countr_zero(reach[best]));
    result.exact = true;
    return result;
  }
  Rng rng(seed, "posa.longest");
  RotationWalker walker(graph);
  std::uint64_t steps = 0;
  const std::size_t n = graph.n();
  while (steps < budget) {
    walker.reset(static_cast<Vertex>(rng.below(n)));
    int stalls = 0;
    while (steps < budget && stalls < kStallLimit) {
      ++steps;
      if (walker.size() > result.path.vertices.size()) result.path.vertices = walker.path();
      if (walker.size() == n) return result;
      if (walker.extend(rng)) {
        stalls = 0;
        continue;
      }
      if (graph.has_edge(walker.back(), walker.front()) && walker.break_cycle_outward(rng)) {
        stalls = 0;
        continue;
      }
      if (rng.coin()) walker.reverse();
      walker.rotate(rng);
      ++stalls;
    }
    if (walker.size() > result.path.vertices.size()) result.path.vertices = walker.path();
  }
  result.budget_exhausted = true;
  return result;
}

bool is_hamilton_cycle(const Graph& graph, std::span<const Vertex> cycle) {
  if (graph.n() < 3 || static_cast<int>(cycle.size()) != graph.n()) return false;
  return is_simple_path(graph, cycle) && graph.has_edge(cycle.back(), cycle.front());
}

std::optional<PathWitness> hamilton_cycle_exact(const Graph& graph) {
  require_exact_size(graph, kExactLimit, "hamilton_cycle");
  const int n = graph.n();
  if (n < 3) return std::nullopt;
  auto nbr = neighbor_masks(graph);
  std::vector<Mask> reach(std::size_t{1} << n, 0);
  reach[1] = 1;
  for (Mask mask = 1; mask < reach.size(); mask += 2) {
    Mask ends = reach[mask];
    while (ends) {
      int v = std::countr_zero(ends);
      ends &= ends - 1;
      Mask ext = nbr[v] & ~mask;
      while (ext) {
        int w = std::countr_zero(ext);
        ext &= ext - 1;
        reach[mask | (Mask{1} << w)] |= Mask{1} << w;
      }
    }
  }
  const Mask full = static_cast<Mask>(reach.size() - 1);
  Mask closing = reach[full] & nbr[0];
  if (!closing) return std::nullopt;
  PathWitness cycle{unwind(reach, nbr, full, std::countr_zero(closing))};
  return cycle;
}

bool BoosterSet::contains(Edge e) const {
  return std::binary_search(pairs.begin(), pairs.end(), ordered(e.first, e.second));
}

BoosterSet rotation_boosters(const Graph& graph, const PathWitness& start, std::uint64_t budget) {
  BoosterSet out;
  if (start.vertices.empty()) return out;
  const int n = graph.n();
  std::vector<char> in_path(n, 0);
  for (Vertex v : start.vertices) in_path[v] = 1;
  // A closed cycle on V(P) only helps if it spans V or can be left through an edge.
  bool cycle_pairs_sound = static_cast<int>(start.vertices.size()) == n;
  for (Vertex v : start.vertices) {
    for (Vertex w : graph.neighbors(v)) cycle_pairs_sound = cycle_pairs_sound || !in_path[w];
  }
  std::set<Edge> pairs;
  auto add = [&](Vertex u, Vertex v) {
    if (u != v && !graph.has_edge(u, v)) pairs.insert(ordered(u, v));
  };
  std::vector<Vertex> reversed(start.vertices.rbegin(), start.vertices.rend());
  auto first_ends = rotation_closure(graph, reversed, budget);
  for (auto& path : first_ends) {
    Vertex y = path.back();
    for (Vertex w = 0; w < n; ++w) {
      if (!in_path[w]) {
        add(y, w);
        add(path.front(), w);
      }
    }
    if (!cycle_pairs_sound) continue;
    add(path.front(), y);
    std::reverse(path.begin(), path.end());
    for (const auto& other : rotation_closure(graph, path, budget)) add(y, other.back());
  }
  out.pairs.assign(pairs.begin(), pairs.end());
  return out;
}

BoosterSet boosters(const Graph& graph, SearchMode mode, std::uint64_t budget, std::uint64_t seed) {
  if (mode == SearchMode::Rotation) {
    LongestPathResult lp = graph.n() <= kExactLimit ? longest_path(graph, SearchMode::Exact, budget)
                                                     : longest_path(graph, SearchMode::Rotation, budget, seed);
    return rotation_boosters(graph, lp.path, budget);
  }
  require_exact_size(graph, kExactBoosterLimit, "boosters");
  BoosterSet out;
  const int n = graph.n();
  if (n < 2) return out;
  const int base_length = longest_path_length(graph);
  const bool base_hamiltonian = hamilton_cycle_exact(graph).has_value();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (graph.has_edge(u, v)) continue;
      if (budget == 0) throw BudgetExhausted("boosters: budget exhausted");
      --budget;
      const Edge e{u, v};
      Graph plus = graph.with_edges(std::span<const Edge>(&e, 1));
      if (base_hamiltonian || longest_path_length(plus) > base_length || hamilton_cycle_exact(plus)) {
        out.pairs.push_back(e);
      }
    }
  }
  return out;
}

ExpanderVerdict is_p_expander(const Graph& graph, int p, ExpanderMode mode, std::uint64_t trials,
                              std::uint64_t seed) {
  ExpanderVerdict verdict;
  verdict.exact = mode == ExpanderMode::Exact;
  if (graph.n() == 0 || !is_connected(graph)) return verdict;
  const int n = graph.n();
  p = std::min(p, n);
  std::vector<int> mark(n, 0);
  int stamp = 0;
  auto expands = [&](std::span<const Vertex> set) {
    ++stamp;
    ++verdict.sets_tested;
    for (Vertex v : set) mark[v] = stamp;
    int outside = 0;
    for (Vertex v : set) {
      for (Vertex w : graph.neighbors(v)) {
        if (mark[w] != stamp && mark[w] != -stamp) {
          mark[w] = -stamp;
          ++outside;
        }
      }
    }
    return outside >= 2 * static_cast<int>(set.size());
  };
  if (mode == ExpanderMode::Exact) {
    for (int size = 1; size <= p; ++size) {
      std::vector<Vertex> combo(size);
      for (int i = 0; i < size; ++i) combo[i] = i;
      while (true) {
        if (!expands(combo)) {
          verdict.violating_set = combo;
          return verdict;
        }
        int i = size - 1;
        while (i >= 0 && combo[i] == n - size + i) --i;
        if (i < 0) break;
        ++combo[i];
        for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
      }
    }
  } else {
    Rng rng(seed, "posa.expander");
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    for (std::uint64_t t = 0; t < trials && p > 0; ++t) {
      int size = 1 + static_cast<int>(rng.below(p));
      for (int i = 0; i < size; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
      std::vector<Vertex> set(order.begin(), order.begin() + size);
      std::sort(set.begin(), set.end());
      if (!expands(set)) {
        verdict.violating_set = set;
        return verdict;
      }
    }
  }
  verdict.accepted = true;
  return verdict;
}

int max_expansion(const Graph& graph) {
  int p = 0;
  while (p < graph.n() && is_p_expander(graph, p + 1, ExpanderMode::Exact).accepted) ++p;
  return p;
}

HamiltonResult hamilton_cycle(const Graph& graph, std::uint64_t seed, std::uint64_t budget) {
  HamiltonResult result;
  const std::size_t n = graph.n();
  if (n < 3 || !is_connected(graph) || graph.min_degree() < 2) {
    result.proven_absent = true;
    return result;
  }
  Rng rng(seed, "posa.hamilton");
  RotationWalker walker(graph);
  while (result.steps < budget) {
    walker.reset(static_cast<Vertex>(rng.below(n)));
    int stalls = 0;
    while (result.steps < budget && stalls < kStallLimit) {
      ++result.steps;
      if (walker.extend(rng)) {
        stalls = 0;
        continue;
      }
      const bool closes = graph.has_edge(walker.back(), walker.front());
      if (closes && walker.size() == n) {
        if (is_hamilton_cycle(graph, walker.path())) {
          result.cycle = PathWitness{walker.path()};
          return result;
        }
        throw std::logic_error("rotation walker produced an invalid cycle");
      }
      if (closes && walker.break_cycle_outward(rng)) {
        stalls = 0;
        continue;
      }
      if (rng.coin()) walker.reverse();
      walker.rotate(rng);
      ++stalls;
    }
  }
  if (graph.n() <= kExactLimit) {
    result.cycle = hamilton_cycle_exact(graph);
    result.proven_absent = !result.cycle.has_value();
  }
  return result;
}

std::optional<PathWitness> hamilton_path_between(const Graph& graph, Vertex from, Vertex to, std::uint64_t budget) {
  const int n = graph.n();
  if (from == to) throw std::invalid_argument("hamilton_path_between needs distinct endpoints");
  if (from < 0 || to < 0 || from >= n || to >= n) throw std::out_of_range("endpoint outside graph");
  std::vector<char> visited(n, 0);
  std::vector<Vertex> path{from};
  visited[from] = 1;
  std::uint64_t nodes = 0;

  auto feasible = [&](Vertex end) {
    for (Vertex u = 0; u < n; ++u) {
      if (visited[u]) continue;
      int avail = 0;
      for (Vertex w : graph.neighbors(u)) avail += !visited[w] || w == end;
      if (avail < (u == to ? 1 : 2)) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, Vertex x) -> bool {
    if (static_cast<int>(path.size()) == n) return x == to;
    if (++nodes > budget) throw BudgetExhausted("hamilton_path_between: budget exhausted");
    for (Vertex w : graph.neighbors(x)) {
      if (visited[w]) continue;
      if (w == to && static_cast<int>(path.size()) + 1 != n) continue;
      visited[w] = 1;
      path.push_back(w);
      if (feasible(w) && self(self, w)) return true;
      path.pop_back();
      visited[w] = 0;
    }
    return false;
  };

  if (!feasible(from) || !dfs(dfs, from)) return std::nullopt;
  if (!is_simple_path(graph, path) || path.front() != from || path.back() != to) {
    throw std::logic_error("hamilton_path_between produced an invalid path");
  }
  return PathWitness{path};
}

bool is_hamilton_connected(const Graph& graph, std::uint64_t budget) {
  for (Vertex u = 0; u < graph.n(); ++u) {
    for (Vertex v = u + 1; v < graph.n(); ++v) {
      if (!hamilton_path_between(graph, u, v, budget)) return false;
    }
  }
  return true;
}

AbsorptionResult absorb_boosters(const Graph& base, std::span<const Edge> pool_edges, std::uint64_t budget,
                                 std::uint64_t seed) {
  std::set<Edge> pool;
  for (auto [u, v] : pool_edges) {
    if (base.has_edge(u, v)) throw std::invalid_argument("pool edge already present in base graph");
    if (u == v || u < 0 || v < 0 || u >= base.n() || v >= base.n()) throw std::invalid_argument("invalid pool edge");
    pool.insert(ordered(u, v));
  }
  const int n = base.n();
  const bool exact = n <= kExactLimit;
  auto progress = [&](const Graph& g) {
    if (exact) return hamilton_cycle_exact(g) ? n : longest_path_length(g);
    return static_cast<int>(longest_path(g, SearchMode::Rotation, budget, seed).length());
  };

  AbsorptionResult result;
  Graph current = base;
  for (int stage = 0; stage <= n; ++stage) {
    HamiltonResult hc = hamilton_cycle(current, seed + static_cast<std::uint64_t>(stage), budget);
    if (hc.cycle) {
      result.cycle = std::move(hc.cycle);
      return result;
    }
    LongestPathResult lp = exact ? longest_path(current, SearchMode::Exact, budget)
                                 : longest_path(current, SearchMode::Rotation, budget, seed + stage);
    BoosterSet candidates = rotation_boosters(current, lp.path, budget);
    std::optional<Edge> chosen;
    for (const Edge& e : pool) {
      if (candidates.contains(e)) {
        chosen = e;
        break;
      }
    }
    if (!chosen && n <= kExactBoosterLimit) {
      BoosterSet all = boosters(current, SearchMode::Exact, budget);
      for (const Edge& e : pool) {
        if (all.contains(e)) {
          chosen = e;
          break;
        }
      }
    }
    if (!chosen) {
      result.failure = "stage " + std::to_string(stage) + ": no pool edge is a booster (" +
                       std::to_string(pool.size()) + " pool edges left, longest path " +
                       std::to_string(lp.length()) + ")";
      return result;
    }
    AbsorptionStep step;
    step.edge = *chosen;
    step.exact = exact;
    step.progress_before = exact ? progress(current) : static_cast<int>(lp.length());
    current = current.with_edges(std::span<const Edge>(&*chosen, 1));
    step.progress_after = progress(current);
    result.steps.push_back(step);
    result.used.push_back(*chosen);
    pool.erase(*chosen);
  }
  result.failure = "stage limit reached after " + std::to_string(result.used.size()) + " absorptions";
  return result;
}

}  // namespace anagraph::posa
