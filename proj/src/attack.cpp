#include "anagraph/attack.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "anagraph/posa.hpp"
#include "anagraph/rng.hpp"

namespace anagraph::attack {
namespace {

NodeId parent_of(NodeId v) { return (v - 1) / 2; }

NodeId ancestor_at(NodeId v, int depth) {
  while (node_depth(v) > depth) v = parent_of(v);
  return v;
}

NodeId lowest_common(NodeId a, NodeId b) {
  while (a != b) {
    if (a > b) {
      a = parent_of(a);
    } else {
      b = parent_of(b);
    }
  }
  return a;
}

/// Colors along the tree path from `top` down to `leaf`, both included.
ColorCountVector path_counts(const ColoredTree& tree, NodeId top, NodeId leaf) {
  ColorCountVector counts;
  for (NodeId x = leaf;; x = parent_of(x)) {
    counts.add(tree.color(x));
    if (x == top) break;
  }
  return counts;
}

/// Vertices strictly between `top` and `bottom`, listed upwards from bottom.
std::vector<NodeId> between(NodeId top, NodeId bottom) {
  std::vector<NodeId> out;
  for (NodeId x = parent_of(bottom); x != top; x = parent_of(x)) out.push_back(x);
  return out;
}

struct Recursion {
  const ColoredTree& tree;
  std::vector<int> targets;

  SubtreeWitness run(NodeId v) {
    const int c = tree.color(v);
    if (c < 0 || c >= static_cast<int>(targets.size())) {
      throw std::invalid_argument("find_mono_subtree: color " + std::to_string(c) + " has no target");
    }
    if (targets[c] == 0) {
      SubtreeWitness w;
      w.root = v;
      w.color = c;
      w.vertices = w.effective_vertices = w.leaves = {v};
      return w;
    }
    --targets[c];
    std::array<SubtreeWitness, 2> sides;
    for (int side = 0; side < 2; ++side) {
      sides[side] = run(2 * v + 1 + side);
      if (sides[side].color != c) {
        ++targets[c];
        return std::move(sides[side]);
      }
    }
    ++targets[c];
    SubtreeWitness w;
    w.root = v;
    w.color = c;
    w.effective_depth = sides[0].effective_depth + 1;
    w.vertices.push_back(v);
    w.effective_vertices.push_back(v);
    w.embedding.emplace_back(v, std::array<NodeId, 2>{sides[0].root, sides[1].root});
    for (auto& s : sides) {
      for (NodeId x : between(v, s.root)) w.vertices.push_back(x);
      w.vertices.insert(w.vertices.end(), s.vertices.begin(), s.vertices.end());
      w.effective_vertices.insert(w.effective_vertices.end(), s.effective_vertices.begin(),
                                  s.effective_vertices.end());
      w.leaves.insert(w.leaves.end(), s.leaves.begin(), s.leaves.end());
      w.embedding.insert(w.embedding.end(), s.embedding.begin(), s.embedding.end());
    }
    std::sort(w.vertices.begin(), w.vertices.end());
    std::sort(w.effective_vertices.begin(), w.effective_vertices.end());
    std::sort(w.leaves.begin(), w.leaves.end());
    std::sort(w.embedding.begin(), w.embedding.end());
    return w;
  }
};

/// Sorts (hash, index) keys and returns the first pair, in hash order, whose
/// exact values also agree.
template <typename Exact>
std::optional<std::pair<std::size_t, std::size_t>> first_collision(std::vector<std::pair<std::uint64_t, std::size_t>> keys,
                                                                   Exact&& equal) {
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j].first == keys[i].first) ++j;
    for (std::size_t a = i; a < j; ++a) {
      for (std::size_t b = a + 1; b < j; ++b) {
        if (equal(keys[a].second, keys[b].second)) return std::pair{keys[a].second, keys[b].second};
      }
    }
    i = j;
  }
  return std::nullopt;
}

}  // namespace

int node_depth(NodeId v) { return 63 - std::countl_zero(v + 1); }

std::function<int(NodeId)> hashed_coloring(std::uint64_t seed, int palette) {
  if (palette < 1) throw std::invalid_argument("palette must be positive");
  const std::uint64_t key = derive_seed(seed, "attack.coloring");
  return [key, palette](NodeId v) {
    std::uint64_t z = key ^ (v * 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<int>(z % static_cast<std::uint64_t>(palette));
  };
}

ColoredTree view(const construct::BinaryTreeHandle& tree, const Coloring& coloring) {
  if (coloring.size() != tree.graph.n()) throw std::invalid_argument("coloring size does not match tree");
  auto colors = std::make_shared<const std::vector<int>>(coloring.colors().begin(), coloring.colors().end());
  return ColoredTree{tree.depth, [colors](NodeId v) { return (*colors)[static_cast<std::size_t>(v)]; }};
}

SubtreeWitness find_mono_subtree(const ColoredTree& tree, const std::vector<int>& targets) {
  long long sum = 0;
  for (int a : targets) {
    if (a < 0) throw std::invalid_argument("find_mono_subtree: negative target");
    sum += a;
  }
  if (sum > tree.depth) throw std::invalid_argument("find_mono_subtree: tree shallower than the target sum");
  Recursion rec{tree, targets};
  SubtreeWitness w = rec.run(0);
  if (!check_subtree_witness(tree, w)) throw std::logic_error("find_mono_subtree produced an invalid subtree");
  return w;
}

bool check_subtree_witness(const ColoredTree& tree, const SubtreeWitness& w) {
  const std::size_t expected_effective = (std::size_t{2} << w.effective_depth) - 1;
  if (w.effective_vertices.size() != expected_effective) return false;
  if (w.leaves.size() != (std::size_t{1} << w.effective_depth)) return false;
  if (w.embedding.size() != expected_effective - w.leaves.size()) return false;
  std::unordered_set<NodeId> in_u(w.vertices.begin(), w.vertices.end());
  if (!in_u.contains(w.root)) return false;
  for (NodeId v : w.effective_vertices) {
    if (!in_u.contains(v) || tree.color(v) != w.color) return false;
  }
  for (NodeId v : w.leaves) {
    if (node_depth(v) > tree.depth) return false;
  }
  for (const auto& [p, kids] : w.embedding) {
    for (int side = 0; side < 2; ++side) {
      const NodeId child = 2 * p + 1 + side;
      const NodeId down = kids[side];
      if (node_depth(down) <= node_depth(p) || ancestor_at(down, node_depth(p) + 1) != child) return false;
      for (NodeId x = down; x != p; x = parent_of(x)) {
        if (!in_u.contains(x)) return false;
      }
    }
  }
  return true;
}

TreeAttackResult tree_attack(const ColoredTree& tree, int palette) {
  if (palette < 1) throw std::invalid_argument("palette must be positive");
  TreeAttackResult result;
  std::vector<int> targets(palette, tree.depth / palette);
  result.subtree = find_mono_subtree(tree, targets);
  const SubtreeWitness& u = result.subtree;

  std::vector<ColorCountVector> counts;
  std::vector<std::pair<std::uint64_t, std::size_t>> keys;
  for (std::size_t i = 0; i < u.leaves.size(); ++i) {
    counts.push_back(path_counts(tree, u.root, u.leaves[i]));
    keys.emplace_back(counts.back().hash(), i);
  }
  result.leaves_hashed = u.leaves.size();

  std::vector<Vertex> local_ids;
  for (NodeId v : u.vertices) local_ids.push_back(static_cast<Vertex>(v));
  std::unordered_map<NodeId, Vertex> local;
  for (std::size_t i = 0; i < u.vertices.size(); ++i) local[u.vertices[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (NodeId v : u.vertices) {
    if (v != u.root) edges.emplace_back(local.at(parent_of(v)), local.at(v));
  }
  result.explored = InducedSubgraph{Graph(static_cast<int>(u.vertices.size()), edges), local_ids};
  for (NodeId v : u.vertices) result.explored_colors.push_back(tree.color(v));

  auto hit = first_collision(keys, [&](std::size_t a, std::size_t b) { return counts[a] == counts[b]; });
  if (!hit) return result;
  const NodeId l1 = u.leaves[hit->first];
  const NodeId l2 = u.leaves[hit->second];
  const NodeId top = lowest_common(l1, l2);

  std::vector<NodeId> path;
  for (NodeId x = l1; x != top; x = parent_of(x)) path.push_back(x);
  const std::size_t split = path.size();
  std::vector<NodeId> down;
  for (NodeId x = parent_of(l2); x != top; x = parent_of(x)) down.push_back(x);
  path.push_back(top);
  path.insert(path.end(), down.rbegin(), down.rend());

  AnagramWitness host;
  AnagramWitness explored;
  host.split = explored.split = split;
  for (NodeId x : path) {
    host.path.vertices.push_back(static_cast<Vertex>(x));
    explored.path.vertices.push_back(local.at(x));
  }
  Coloring local_coloring(result.explored_colors);
  if (!verify_witness(result.explored.graph, local_coloring, explored)) {
    throw std::logic_error("tree_attack produced a witness that fails verification");
  }
  result.witness = std::move(host);
  return result;
}

std::optional<AnagramWitness> tree_attack(const construct::BinaryTreeHandle& tree, const Coloring& coloring) {
  TreeAttackResult r = tree_attack(view(tree, coloring), std::max(1, coloring.palette_size()));
  if (r.witness && !verify_witness(tree.graph, coloring, *r.witness)) {
    throw std::logic_error("tree_attack produced a witness that fails verification");
  }
  return r.witness;
}

std::optional<AnagramWitness> sibling_tree_attack(const construct::SiblingTree& tree, const Coloring& coloring) {
  if (coloring.size() != tree.graph.n()) throw std::invalid_argument("coloring size does not match tree");
  ColoredTree colored = view(tree.tree, coloring);
  const int h = tree.tree.depth;
  const NodeId first_leaf = (NodeId{1} << h) - 1;
  const NodeId leaf_count = NodeId{1} << h;
  std::vector<ColorCountVector> counts;
  std::vector<std::pair<std::uint64_t, std::size_t>> keys;
  for (NodeId i = 0; i < leaf_count; ++i) {
    counts.push_back(path_counts(colored, 0, first_leaf + i));
    keys.emplace_back(counts.back().hash(), static_cast<std::size_t>(i));
  }
  auto hit = first_collision(keys, [&](std::size_t a, std::size_t b) { return counts[a] == counts[b]; });
  if (!hit) return std::nullopt;
  const NodeId l1 = first_leaf + hit->first;
  const NodeId l2 = first_leaf + hit->second;
  const int below = node_depth(lowest_common(l1, l2)) + 1;
  const NodeId a = ancestor_at(l1, below);
  const NodeId b = ancestor_at(l2, below);

  AnagramWitness w;
  for (NodeId x = l1;; x = parent_of(x)) {
    w.path.vertices.push_back(static_cast<Vertex>(x));
    if (x == a) break;
  }
  w.split = w.path.vertices.size();
  std::vector<Vertex> down;
  for (NodeId x = l2;; x = parent_of(x)) {
    down.push_back(static_cast<Vertex>(x));
    if (x == b) break;
  }
  w.path.vertices.insert(w.path.vertices.end(), down.rbegin(), down.rend());
  if (!verify_witness(tree.graph, coloring, w)) {
    throw std::logic_error("sibling_tree_attack produced a witness that fails verification");
  }
  return w;
}

namespace {

ColorCountVector union_counts(const std::vector<ColorCountVector>& blocks, std::uint64_t mask) {
  ColorCountVector out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (mask >> i & 1) out += blocks[i];
  }
  return out;
}

/// Hamilton path of a block from `from` to `to` in host ids; from = -1 or
/// to = -1 leaves that end free (smallest workable vertex is used).
std::vector<Vertex> block_path(const construct::CompositeDescriptor& desc, const Graph& block, int b, Vertex from,
                               Vertex to, std::uint64_t budget) {
  const Vertex base = desc.blocks[b].front();
  auto attempt = [&](Vertex f, Vertex t) -> std::optional<PathWitness> {
    return posa::hamilton_path_between(block, f - base, t - base, budget);
  };
  std::optional<PathWitness> found;
  if (from >= 0 && to >= 0) {
    found = attempt(from, to);
  } else {
    const Vertex fixed = from >= 0 ? from : to;
    for (Vertex other : desc.blocks[b]) {
      if (other == fixed) continue;
      found = from >= 0 ? attempt(fixed, other) : attempt(other, fixed);
      if (found) break;
    }
  }
  if (!found) {
    throw std::logic_error("composite_attack: block " + std::to_string(b) + " has no required Hamilton path");
  }
  for (Vertex& v : found->vertices) v += base;
  return found->vertices;
}

}  // namespace

CompositeAttackResult composite_attack(const construct::CompositeGraph& composite, const Coloring& coloring,
                                       std::uint64_t seed, std::uint64_t budget) {
  const auto& desc = composite.descriptor;
  const Graph& graph = composite.graph;
  if (coloring.size() != graph.n()) throw std::invalid_argument("coloring size does not match graph");
  const int blocks = desc.block_count();
  const int k = desc.k;

  std::vector<ColorCountVector> block_counts(blocks);
  const auto weights = color_weights(coloring.palette_size(), seed);
  std::vector<std::uint64_t> block_hash(blocks, 0);
  for (int b = 0; b < blocks; ++b) {
    block_counts[b] = color_count(coloring, desc.blocks[b]);
    for (Vertex v : desc.blocks[b]) block_hash[b] += weights[coloring[v]];
  }

  CompositeAttackResult result;
  std::vector<std::uint64_t> masks;
  std::vector<std::pair<std::uint64_t, std::size_t>> keys;
  if (k <= kCompositeEnumerationLimit) {
    const std::uint64_t total = std::uint64_t{1} << blocks;
    std::vector<std::uint64_t> hash(total, 0);
    masks.reserve(total - 1);
    keys.reserve(total - 1);
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      hash[mask] = hash[mask & (mask - 1)] + block_hash[std::countr_zero(mask)];
      masks.push_back(mask);
      keys.emplace_back(hash[mask], keys.size());
    }
  } else {
    Rng rng(seed, "attack.composite");
    const std::uint64_t samples = std::uint64_t{1} << kCompositeEnumerationLimit;
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < samples; ++i) {
      std::uint64_t mask = rng.next() & ((std::uint64_t{1} << blocks) - 1);
      if (mask == 0 || !seen.insert(mask).second) continue;
      std::uint64_t h = 0;
      for (int b = 0; b < blocks; ++b) {
        if (mask >> b & 1) h += block_hash[b];
      }
      masks.push_back(mask);
      keys.emplace_back(h, keys.size());
    }
  }
  result.unions_hashed = keys.size();
  auto hit = first_collision(std::move(keys), [&](std::size_t a, std::size_t b) {
    return union_counts(block_counts, masks[a]) == union_counts(block_counts, masks[b]);
  });
  if (!hit) return result;

  const std::uint64_t s = masks[hit->first];
  const std::uint64_t t = masks[hit->second];
  for (int b = 0; b < blocks; ++b) {
    if ((s >> b & 1) && !(t >> b & 1)) result.first_blocks.push_back(b);
    if ((t >> b & 1) && !(s >> b & 1)) result.second_blocks.push_back(b);
  }
  std::vector<int> order = result.first_blocks;
  order.insert(order.end(), result.second_blocks.begin(), result.second_blocks.end());

  const Graph block = construct::cubic_block(k);
  AnagramWitness w;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex entry = i == 0 ? -1 : desc.port(order[i], order[i - 1]);
    const Vertex exit = i + 1 == order.size() ? -1 : desc.port(order[i], order[i + 1]);
    auto part = block_path(desc, block, order[i], entry, exit, budget);
    w.path.vertices.insert(w.path.vertices.end(), part.begin(), part.end());
  }
  w.split = result.first_blocks.size() * static_cast<std::size_t>(k);
  if (!verify_witness(graph, coloring, w)) {
    throw std::logic_error("composite_attack produced a witness that fails verification");
  }
  result.witness = std::move(w);
  return result;
}

}  // namespace anagraph::attack
