#include "anagraph/rrg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "anagraph/posa.hpp"
#include "anagraph/rng.hpp"

namespace anagraph::rrg {
namespace {

double log_d(int d) { return d > 1 ? std::log(static_cast<double>(d)) : 0.0; }

int nominal_degree(const Graph& graph) { return std::max(1, graph.max_degree()); }

std::size_t edges_inside(const Graph& graph, std::span<const Vertex> set, std::vector<int>& mark, int stamp) {
  for (Vertex v : set) mark[v] = stamp;
  std::size_t twice = 0;
  for (Vertex v : set) {
    for (Vertex w : graph.neighbors(v)) twice += mark[w] == stamp;
  }
  return twice / 2;
}

std::size_t edges_between(const Graph& graph, std::span<const Vertex> t, std::span<const Vertex> u,
                          std::vector<int>& mark, int stamp) {
  for (Vertex v : u) mark[v] = stamp;
  std::size_t count = 0;
  for (Vertex v : t) {
    for (Vertex w : graph.neighbors(v)) count += mark[w] == stamp;
  }
  return count;
}

}  // namespace

EdgeDistributionReport check_edge_distribution(const Graph& graph, const PropertyParams& params, CheckMode mode,
                                               std::uint64_t trials, std::uint64_t seed) {
  EdgeDistributionReport r;
  const int n = graph.n();
  r.d = nominal_degree(graph);
  const double ld = log_d(r.d);
  const double scale = ld / r.d * n;
  r.p1_max_size = ld > 0 ? static_cast<std::size_t>(std::min<double>(n, std::floor(params.a1 * scale))) : 0;
  r.p2_min_t = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(params.p2_t * scale)));
  r.p2_min_u = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(params.p2_u * scale)));
  r.p1_vacuous = r.p1_max_size == 0;
  r.p2_vacuous = r.p2_min_t + r.p2_min_u > static_cast<std::size_t>(n);
  r.p2_min_ratio = std::numeric_limits<double>::max();

  std::vector<int> mark(n, 0);
  int stamp = 0;
  auto test_p1 = [&](std::span<const Vertex> u) {
    ++r.p1_sets_tested;
    double ratio = static_cast<double>(edges_inside(graph, u, mark, ++stamp)) / (u.size() * ld);
    r.p1_max_ratio = std::max(r.p1_max_ratio, ratio);
    if (ratio > params.a2) {
      if (r.p1_violations++ == 0) r.p1_witness.assign(u.begin(), u.end());
    }
  };
  auto test_p2 = [&](std::span<const Vertex> t, std::span<const Vertex> u) {
    ++r.p2_pairs_tested;
    double floor = params.p2_density * static_cast<double>(t.size()) * u.size() * r.d / n;
    double ratio = static_cast<double>(edges_between(graph, t, u, mark, ++stamp)) / floor;
    r.p2_min_ratio = std::min(r.p2_min_ratio, ratio);
    if (ratio < 1) {
      if (r.p2_violations++ == 0) {
        r.p2_witness.emplace(std::vector<Vertex>(t.begin(), t.end()), std::vector<Vertex>(u.begin(), u.end()));
      }
    }
  };

  if (mode == CheckMode::Exact) {
    if (n > 14) throw std::invalid_argument("exact edge-distribution check limited to 14 vertices");
    std::vector<Vertex> u;
    std::vector<Vertex> t;
    if (!r.p1_vacuous) {
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > r.p1_max_size) continue;
        u.clear();
        for (Vertex v = 0; v < n; ++v) {
          if (mask >> v & 1) u.push_back(v);
        }
        test_p1(u);
      }
    }
    if (!r.p2_vacuous) {
      std::uint64_t total = 1;
      for (int i = 0; i < n; ++i) total *= 3;
      for (std::uint64_t code = 0; code < total; ++code) {
        t.clear();
        u.clear();
        std::uint64_t x = code;
        for (Vertex v = 0; v < n; ++v, x /= 3) {
          if (x % 3 == 1) t.push_back(v);
          if (x % 3 == 2) u.push_back(v);
        }
        if (t.size() >= r.p2_min_t && u.size() >= r.p2_min_u) test_p2(t, u);
      }
    }
  } else {
    Rng rng(seed, "rrg.edges");
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto draw = [&](std::size_t count) {
      for (std::size_t i = 0; i < count; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
    };
    for (std::uint64_t i = 0; i < trials && !r.p1_vacuous; ++i) {
      std::size_t size = 1 + rng.below(r.p1_max_size);
      draw(size);
      test_p1(std::span<const Vertex>(order.data(), size));
    }
    for (std::uint64_t i = 0; i < trials && !r.p2_vacuous; ++i) {
      std::size_t ts = r.p2_min_t + rng.below(n - r.p2_min_u - r.p2_min_t + 1);
      std::size_t us = r.p2_min_u + rng.below(n - ts - r.p2_min_u + 1);
      draw(ts + us);
      test_p2(std::span<const Vertex>(order.data(), ts), std::span<const Vertex>(order.data() + ts, us));
    }
  }
  if (r.p2_pairs_tested == 0) r.p2_min_ratio = 0;
  return r;
}

double SplitParams::delta(int d) const { return alpha / removal_degree_divisor * log_d(d); }
double SplitParams::side_floor(int d) const { return alpha / degree_floor_divisor * log_d(d); }

SplitParams SplitParams::relaxed() {
  SplitParams p;
  p.alpha = 96;
  p.retries = 2000;
  return p;
}

const char* const kStageNames[5] = {"core", "split", "hamilton", "bridge", "assemble"};

EvenCore build_even_core(const Graph& graph, const Coloring& coloring, const SplitParams& params) {
  const int n = graph.n();
  if (coloring.size() != n) throw std::invalid_argument("coloring size does not match graph");
  const int d = nominal_degree(graph);
  EvenCore core;
  core.delta = params.delta(d);

  std::vector<std::vector<Vertex>> classes(coloring.palette_size());
  for (Vertex v = 0; v < n; ++v) classes[coloring[v]].push_back(v);
  std::vector<char> alive(n, 1);
  for (auto& cls : classes) {
    if (cls.size() % 2 == 1) {
      core.x.push_back(cls.front());
      alive[cls.front()] = 0;
      cls.erase(cls.begin());
    }
  }
  const double fraction = params.core_target.value_or(std::clamp(1.0 - params.alpha * log_d(d) / d, 0.0, 1.0));
  const auto target = static_cast<std::size_t>(std::ceil(fraction * n));
  while (core.x.size() < target) {
    auto largest = std::max_element(classes.begin(), classes.end(),
                                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (largest == classes.end() || largest->size() < 2) break;
    for (int i = 0; i < 2; ++i) {
      core.x.push_back(largest->back());
      alive[largest->back()] = 0;
      largest->pop_back();
    }
  }

  std::vector<int> degree(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (Vertex w : graph.neighbors(v)) degree[v] += alive[w];
  }
  auto remove = [&](Vertex v) {
    alive[v] = 0;
    for (Vertex w : graph.neighbors(v)) --degree[w];
  };
  while (true) {
    Vertex v = -1;
    for (Vertex u = 0; u < n && v < 0; ++u) {
      if (alive[u] && degree[u] < core.delta) v = u;
    }
    if (v < 0) break;
    Vertex w = -1;
    for (Vertex u = 0; u < n && w < 0; ++u) {
      if (alive[u] && u != v && coloring[u] == coloring[v]) w = u;
    }
    if (w < 0) throw std::logic_error("build_even_core: odd color class in the residual");
    remove(v);
    remove(w);
    core.removals.emplace_back(v, w);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) core.z.push_back(v);
  }
  std::sort(core.x.begin(), core.x.end());
  if (core.z.empty()) {
    throw StageError("core", "core collapsed: " + std::to_string(core.x.size()) + " discarded, " +
                                 std::to_string(core.removals.size()) + " pairs removed below degree " +
                                 std::to_string(core.delta));
  }
  return core;
}

DenseSetPair split_dense_pair(std::span<const Vertex> z, const Coloring& coloring, const Graph& graph,
                              const SplitParams& params, std::uint64_t seed) {
  const int n = graph.n();
  std::map<int, std::vector<Vertex>> classes;
  std::vector<char> in_z(n, 0);
  for (Vertex v : z) {
    if (v < 0 || v >= n || in_z[v]) throw StageError("split", "Z has an invalid or repeated vertex");
    in_z[v] = 1;
    classes[coloring[v]].push_back(v);
  }
  DenseSetPair out;
  for (auto& [c, members] : classes) {
    if (members.size() % 2 != 0) throw StageError("split", "color " + std::to_string(c) + " is odd in Z");
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); i += 2) out.pair_map.emplace_back(members[i], members[i + 1]);
  }
  const double floor = params.side_floor(nominal_degree(graph));
  Rng rng(seed, "rrg.split");
  std::vector<int> side(n, -1);
  int best_bad = std::numeric_limits<int>::max();
  for (int attempt = 1; attempt <= params.retries; ++attempt) {
    for (auto [a, b] : out.pair_map) {
      const bool flip = rng.coin();
      side[a] = flip ? 1 : 0;
      side[b] = flip ? 0 : 1;
    }
    int bad = 0;
    int min_degree = std::numeric_limits<int>::max();
    for (Vertex v : z) {
      int deg = 0;
      for (Vertex w : graph.neighbors(v)) deg += in_z[w] && side[w] == side[v];
      min_degree = std::min(min_degree, deg);
      bad += deg < floor;
    }
    best_bad = std::min(best_bad, bad);
    if (bad == 0) {
      for (Vertex v : z) (side[v] == 0 ? out.v1 : out.v2).push_back(v);
      std::sort(out.v1.begin(), out.v1.end());
      std::sort(out.v2.begin(), out.v2.end());
      out.attempts = attempt;
      out.min_side_degree = min_degree;
      if (color_count(coloring, out.v1) != color_count(coloring, out.v2)) {
        throw std::logic_error("split_dense_pair: sides have different colorings");
      }
      return out;
    }
  }
  throw StageError("split", "no split within " + std::to_string(params.retries) + " attempts; best attempt left " +
                                std::to_string(best_bad) + " vertices below " + std::to_string(floor));
}

namespace {

Graph union_graph(const Graph& a, const Graph& b) {
  std::set<Edge> edges;
  for (const auto& e : a.edges()) edges.insert(e);
  for (const auto& e : b.edges()) edges.insert(e);
  std::vector<Edge> list(edges.begin(), edges.end());
  return Graph(a.n(), list);
}

}  // namespace

PipelineReport anagram_pipeline(const Graph& graph, const Coloring& coloring, const SplitParams& params,
                                std::uint64_t seed, std::uint64_t budget, const Graph* second) {
  PipelineReport report;
  if (second && second->n() != graph.n()) throw std::invalid_argument("second graph has a different vertex count");
  const Graph host = second ? union_graph(graph, *second) : graph;
  try {
    EvenCore core = build_even_core(graph, coloring, params);
    report.core_size = core.z.size();
    report.discarded = core.x.size() + 2 * core.removals.size();
    report.stage_reached = 1;

    DenseSetPair pair = split_dense_pair(core.z, coloring, graph, params, derive_seed(seed, "rrg.pipeline.split"));
    report.side_size = pair.v1.size();
    report.split_attempts = pair.attempts;
    report.stage_reached = 2;

    std::vector<std::vector<Vertex>> cycles;
    for (int i = 0; i < 2; ++i) {
      const auto& side = i == 0 ? pair.v1 : pair.v2;
      InducedSubgraph sub = induced_subgraph(graph, side);
      std::optional<PathWitness> cycle;
      if (second) {
        InducedSubgraph extra = induced_subgraph(*second, side);
        std::vector<Edge> pool;
        for (const auto& e : extra.graph.edges()) {
          if (!sub.graph.has_edge(e.first, e.second)) pool.push_back(e);
        }
        auto absorbed = posa::absorb_boosters(sub.graph, pool, budget, derive_seed(seed, "rrg.pipeline.absorb") + i);
        report.absorbed_edges += absorbed.used.size();
        if (!absorbed.ok()) throw StageError("hamilton", "side " + std::to_string(i + 1) + ": " + absorbed.failure);
        cycle = absorbed.cycle;
      } else {
        auto hc = posa::hamilton_cycle(sub.graph, derive_seed(seed, "rrg.pipeline.hamilton") + i, budget);
        if (!hc.cycle) {
          throw StageError("hamilton", "side " + std::to_string(i + 1) + (hc.proven_absent ? " is not Hamiltonian"
                                                                                          : ": budget exhausted"));
        }
        cycle = hc.cycle;
      }
      std::vector<Vertex> host_cycle;
      for (Vertex v : cycle->vertices) host_cycle.push_back(sub.to_host[v]);
      report.cycle_lengths.push_back(host_cycle.size());
      cycles.push_back(std::move(host_cycle));
    }
    report.stage_reached = 3;

    std::vector<char> in_v2(graph.n(), 0);
    for (Vertex v : pair.v2) in_v2[v] = 1;
    std::optional<Edge> bridge;
    for (Vertex a : pair.v1) {
      for (Vertex b : host.neighbors(a)) {
        if (in_v2[b]) {
          bridge = Edge{a, b};
          break;
        }
      }
      if (bridge) break;
    }
    if (!bridge) throw StageError("bridge", "no edge between V1 and V2");
    report.stage_reached = 4;

    const auto& c1 = cycles[0];
    const auto& c2 = cycles[1];
    const std::size_t i1 = std::find(c1.begin(), c1.end(), bridge->first) - c1.begin();
    const std::size_t i2 = std::find(c2.begin(), c2.end(), bridge->second) - c2.begin();
    AnagramWitness w;
    for (std::size_t j = 1; j <= c1.size(); ++j) w.path.vertices.push_back(c1[(i1 + j) % c1.size()]);
    for (std::size_t j = 0; j < c2.size(); ++j) w.path.vertices.push_back(c2[(i2 + j) % c2.size()]);
    w.split = c1.size();
    if (!verify_witness(host, coloring, w)) throw StageError("assemble", "assembled path failed verification");
    report.stage_reached = 5;
    report.witness = std::move(w);
  } catch (const StageError& e) {
    report.failed_stage = e.stage();
    report.failure = e.what();
  } catch (const BudgetExhausted& e) {
    report.failed_stage = kStageNames[std::min(report.stage_reached, 4)];
    report.failure = e.what();
  }
  return report;
}

namespace {

class MatchingCounter {
 public:
  explicit MatchingCounter(const Graph& graph) : nbr_(graph.n(), 0) {
    for (Vertex v = 0; v < graph.n(); ++v) {
      for (Vertex w : graph.neighbors(v)) nbr_[v] |= std::uint64_t{1} << w;
    }
  }

  std::uint64_t count(std::uint64_t remaining) {
    if (remaining == 0) return 1;
    if (auto it = memo_.find(remaining); it != memo_.end()) return it->second;
    const int v = std::countr_zero(remaining);
    const std::uint64_t rest = remaining & (remaining - 1);
    std::uint64_t options = nbr_[v] & rest;
    std::uint64_t total = 0;
    while (options) {
      const int w = std::countr_zero(options);
      options &= options - 1;
      total += count(rest & ~(std::uint64_t{1} << w));
    }
    memo_.emplace(remaining, total);
    return total;
  }

 private:
  std::vector<std::uint64_t> nbr_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

}  // namespace

PerfectMatchingCount count_perfect_matchings(const Graph& graph) {
  const int n = graph.n();
  if (n > 64) throw std::invalid_argument("count_perfect_matchings limited to 64 vertices");
  PerfectMatchingCount out;
  bool isolated = false;
  for (Vertex v = 0; v < n; ++v) {
    const int r = graph.degree(v);
    if (r == 0) {
      isolated = true;
    } else {
      out.log_bound += std::lgamma(r + 1.0) / (2.0 * r);
    }
  }
  out.bound = isolated ? 0.0 : std::exp(out.log_bound);
  if (isolated) out.log_bound = -std::numeric_limits<double>::infinity();
  if (n % 2 != 0) return out;
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  out.count = MatchingCounter(graph).count(all);
  if (static_cast<double>(out.count) > out.bound * (1 + 1e-9)) {
    throw std::logic_error("perfect matching count exceeds the permanent bound");
  }
  return out;
}

double double_factorial(int n) {
  double out = 1;
  for (int i = n; i > 1; i -= 2) out *= i;
  return out;
}

AvoidanceReport matching_avoidance_probability(int n, std::span<const Edge> forbidden, ProbabilityMode mode,
                                               std::uint64_t trials, std::uint64_t seed) {
  if (n < 0 || n % 2 != 0) throw std::invalid_argument("N must be even and non-negative");
  std::set<Edge> f;
  for (auto [u, v] : forbidden) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("invalid forbidden edge");
    f.insert(u < v ? Edge{u, v} : Edge{v, u});
  }
  AvoidanceReport r;
  r.beta = n == 0 ? 0.0 : static_cast<double>(f.size()) / (static_cast<double>(n) * n);
  r.reference = std::exp(-8.0 * r.beta * n / 9.0);
  if (mode == ProbabilityMode::Exact) {
    if (n > 24) throw std::invalid_argument("exact avoidance probability limited to N <= 24");
    std::vector<Edge> allowed;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (!f.contains({u, v})) allowed.emplace_back(u, v);
      }
    }
    MatchingCounter counter(Graph(n, allowed));
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    r.probability = static_cast<double>(counter.count(all)) / double_factorial(n - 1);
    r.exact = true;
    return r;
  }
  std::vector<std::vector<char>> banned(n, std::vector<char>(n, 0));
  for (auto [u, v] : f) banned[u][v] = banned[v][u] = 1;
  const std::uint64_t base = derive_seed(seed, "rrg.avoidance");
  std::vector<Vertex> order(n);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(base + t);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<Vertex>(order));
    bool avoids = true;
    for (int i = 0; i + 1 < n && avoids; i += 2) avoids = !banned[order[i]][order[i + 1]];
    hits += avoids;
  }
  r.trials = trials;
  r.probability = trials ? static_cast<double>(hits) / trials : 0.0;
  r.sigma = trials ? std::sqrt(r.probability * (1 - r.probability) / trials) : 0.0;
  return r;
}

Coloring random_coloring(int n, int palette, std::uint64_t seed) {
  if (palette < 1) throw std::invalid_argument("palette must be positive");
  Rng rng(seed, "rrg.coloring");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<Vertex>(order));
  std::vector<int> colors(n);
  for (int i = 0; i < n; ++i) {
    colors[order[i]] = i < palette ? i : static_cast<int>(rng.below(palette));
  }
  return Coloring(std::move(colors));
}

}  // namespace anagraph::rrg
