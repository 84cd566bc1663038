#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "anagraph/attack.hpp"
#include "anagraph/color.hpp"
#include "anagraph/construct.hpp"
#include "anagraph/core.hpp"
#include "anagraph/detect.hpp"
#include "anagraph/io.hpp"
#include "anagraph/posa.hpp"
#include "anagraph/rrg.hpp"
#include "anagraph/words.hpp"

using namespace anagraph;
using json = nlohmann::json;

namespace {

constexpr int kExitMalformed = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInternal = 3;

class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 0;
  std::string budget_text;

  std::uint64_t budget(std::uint64_t fallback) const {
    std::string text = budget_text;
    if (text.empty()) {
      if (const char* env = std::getenv("ANAGRAPH_BUDGET")) text = env;
    }
    if (text.empty()) return fallback;
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || !(value >= 1) || value > 1.8e19) throw MalformedInput("invalid budget: " + text);
    return static_cast<std::uint64_t>(value);
  }
};

Graph load_graph(const std::string& path) {
  const std::string text = io::read_file(path);
  if (path.size() > 4 && path.substr(path.size() - 4) == ".dot") return io::graph_from_dot(text);
  return io::graph_from_json(text);
}

Coloring load_coloring(const std::string& path, const Graph& graph) {
  Coloring c = io::coloring_from_json(io::read_file(path));
  if (c.size() != graph.n()) {
    throw MalformedInput("coloring has " + std::to_string(c.size()) + " entries for " + std::to_string(graph.n()) +
                         " vertices");
  }
  return c;
}

void emit(const std::string& out, const std::string& contents) {
  if (out.empty() || out == "-") {
    std::cout << contents;
    if (contents.empty() || contents.back() != '\n') std::cout << '\n';
  } else {
    io::write_file(out, contents);
  }
}

json witness_json(const AnagramWitness& w) { return json::parse(io::witness_to_json(w)); }

void require_verified(const Graph& g, const Coloring& c, const AnagramWitness& w) {
  if (!verify_witness(g, c, w)) throw std::logic_error("witness failed verification");
}

Coloring bfs_depth_coloring(const Graph& g) {
  std::vector<int> depth(g.n(), -1);
  for (Vertex root = 0; root < g.n(); ++root) {
    if (depth[root] >= 0) continue;
    std::queue<Vertex> q;
    depth[root] = 0;
    q.push(root);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : g.neighbors(v)) {
        if (depth[w] < 0) {
          depth[w] = depth[v] + 1;
          q.push(w);
        }
      }
    }
  }
  return Coloring(depth);
}

int exact_log2(long long value) {
  int h = 0;
  while ((1LL << h) < value) ++h;
  return (1LL << h) == value ? h : -1;
}

construct::BinaryTreeHandle as_binary_tree(const Graph& g) {
  const int h = exact_log2(static_cast<long long>(g.n()) + 1) - 1;
  if (h < 0 || h > construct::kMaxExplicitTreeDepth) throw MalformedInput("graph is not a perfect binary tree");
  auto t = construct::perfect_binary_tree(h);
  if (!(t.graph == g)) throw MalformedInput("graph is not a perfect binary tree in heap layout");
  return t;
}

construct::SiblingTree as_sibling_tree(const Graph& g) {
  const int leaves = (g.n() + 1) / 2;
  if (g.n() % 2 == 0 || exact_log2(leaves) < 0) throw MalformedInput("graph is not a sibling tree");
  auto f = construct::sibling_tree(leaves);
  if (!(f.graph == g)) throw MalformedInput("graph is not a sibling tree in heap layout");
  return f;
}

construct::CompositeGraph as_composite(const Graph& g) {
  int k = 1;
  while (k * (k + 1) < g.n()) ++k;
  if (k * (k + 1) != g.n()) throw MalformedInput("graph is not a composite graph");
  auto h = construct::composite_four_regular(k);
  if (!(h.graph == g)) throw MalformedInput("graph is not the composite graph for k=" + std::to_string(k));
  return h;
}

void require_positive(int value, const char* name) {
  if (value < 0) throw MalformedInput(std::string("missing or negative --") + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anagram-free graph coloring toolkit"};
  app.set_help_flag("--help", "Print help");
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "Seed for every random choice");
  app.add_option("--budget", opt.budget_text, "Step budget (overrides ANAGRAPH_BUDGET)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  std::string family, gen_out;
  int h = -1, m = -1, k = -1, n = -1, d = -1;
  bool dot = false;
  gen->add_option("--family", family, "tree|sibling|ladder|composite|rrg|matching|path|cycle|complete|petersen")
      ->required();
  gen->add_option("--h", h, "Tree depth");
  gen->add_option("--m", m, "Ladder parameter");
  gen->add_option("--k", k, "Block size");
  gen->add_option("--n", n, "Vertex count");
  gen->add_option("--d", d, "Degree");
  gen->add_option("--out", gen_out, "Output file");
  gen->add_flag("--dot", dot, "Write DOT instead of JSON");

  // color
  auto* color_cmd = app.add_subcommand("color", "Color a graph");
  std::string algo, color_graph, color_out, proof_log;
  color_cmd->add_option("--algo", algo, "depth|separator|indep|exact")->required();
  color_cmd->add_option("graph", color_graph)->required();
  color_cmd->add_option("--out", color_out);
  color_cmd->add_option("--proof-log", proof_log, "Search statistics of the exact solver");

  // verify
  auto* verify = app.add_subcommand("verify", "Search for an anagram");
  std::string verify_graph, verify_coloring, verify_mode = "exhaustive", verify_out;
  verify->add_option("graph", verify_graph)->required();
  verify->add_option("coloring", verify_coloring)->required();
  verify->add_option("--mode", verify_mode, "exhaustive|tree|randomized");
  verify->add_option("--out", verify_out);

  // verify-witness
  auto* verify_witness_cmd = app.add_subcommand("verify-witness", "Check a witness file");
  std::string vw_graph, vw_coloring, vw_witness;
  verify_witness_cmd->add_option("graph", vw_graph)->required();
  verify_witness_cmd->add_option("coloring", vw_coloring)->required();
  verify_witness_cmd->add_option("witness", vw_witness)->required();

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Constructive anagram search");
  std::string strategy, attack_graph, attack_coloring, attack_out;
  attack_cmd->add_option("--strategy", strategy, "tree|sibling|composite")->required();
  attack_cmd->add_option("graph", attack_graph)->required();
  attack_cmd->add_option("coloring", attack_coloring)->required();
  attack_cmd->add_option("--out", attack_out);

  // posa
  auto* posa_cmd = app.add_subcommand("posa", "Rotation-extension tools");
  std::string posa_task, posa_graph;
  int posa_p = 1;
  bool posa_exact = false;
  posa_cmd->add_option("task", posa_task, "longest-path|boosters|expander|hamilton|hconn")->required();
  posa_cmd->add_option("graph", posa_graph)->required();
  posa_cmd->add_option("--p", posa_p);
  posa_cmd->add_flag("--exact", posa_exact);

  // words
  auto* words_cmd = app.add_subcommand("words", "Abelian-square-free words");
  std::string words_task, words_word;
  int words_k = 3;
  std::size_t words_target = 50, words_cap = 64;
  words_cmd->add_option("task", words_task, "max-length|generate|check")->required();
  words_cmd->add_option("--k", words_k);
  words_cmd->add_option("--target", words_target);
  words_cmd->add_option("--cap", words_cap);
  words_cmd->add_option("--word", words_word);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Seeded pipeline experiments");
  std::string exp_kind, preset = "relaxed", csv;
  int exp_n = 200, exp_d = 24, exp_colors = 100, trials = 10;
  experiment->add_option("kind", exp_kind, "rrg")->required();
  experiment->add_option("--n", exp_n);
  experiment->add_option("--d", exp_d);
  experiment->add_option("--colors", exp_colors);
  experiment->add_option("--trials", trials);
  experiment->add_option("--preset", preset, "relaxed|paper");
  experiment->add_option("--csv", csv);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on the anagram-chromatic number");
  std::string bounds_graph;
  bool bounds_exact = false;
  bounds->add_option("graph", bounds_graph)->required();
  bounds->add_flag("--exact", bounds_exact);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitMalformed;
  }

  try {
    if (gen->parsed()) {
      Graph g;
      if (family == "tree") {
        require_positive(h, "h");
        g = construct::perfect_binary_tree(h).graph;
      } else if (family == "sibling") {
        require_positive(h, "h");
        g = construct::sibling_tree(1 << h).graph;
      } else if (family == "ladder") {
        require_positive(m, "m");
        g = construct::circular_ladder(m);
      } else if (family == "composite") {
        require_positive(k, "k");
        g = construct::composite_four_regular(k).graph;
      } else if (family == "rrg") {
        require_positive(n, "n");
        require_positive(d, "d");
        g = construct::random_regular(n, d, opt.seed);
      } else if (family == "matching") {
        require_positive(n, "n");
        g = construct::random_matching(n, opt.seed);
      } else if (family == "path") {
        require_positive(n, "n");
        g = construct::path_graph(n);
      } else if (family == "cycle") {
        require_positive(n, "n");
        g = construct::cycle_graph(n);
      } else if (family == "complete") {
        require_positive(n, "n");
        g = construct::complete_graph(n);
      } else if (family == "petersen") {
        g = construct::petersen_graph();
      } else {
        throw MalformedInput("unknown family: " + family);
      }
      emit(gen_out, dot ? io::graph_to_dot(g) : io::graph_to_json(g));
      return 0;
    }

    if (color_cmd->parsed()) {
      Graph g = load_graph(color_graph);
      Coloring c;
      json log;
      if (algo == "depth") {
        c = bfs_depth_coloring(g);
      } else if (algo == "separator") {
        c = is_forest(g) ? color::separator_coloring(g, color::centroid_separator)
                         : color::separator_coloring(g, color::bfs_layer_separator);
      } else if (algo == "indep") {
        auto s = color::greedy_independent_set(g, opt.seed);
        c = color::independent_set_coloring(g, s);
      } else if (algo == "exact") {
        auto r = color::exact_anagram_chromatic(g, opt.budget(1000000000));
        c = r.coloring;
        log = {{"value", r.value},
               {"lower", r.lower},
               {"upper", r.upper},
               {"exact", r.exact},
               {"nodes", r.nodes},
               {"nodes_per_palette", r.nodes_per_palette}};
        if (!proof_log.empty()) io::write_file(proof_log, log.dump(2) + "\n");
        if (!r.exact) {
          emit(color_out, io::coloring_to_json(c));
          std::cerr << "budget exhausted: pi_per in [" << r.lower << ", " << r.upper << "]\n";
          return kExitBudget;
        }
      } else {
        throw MalformedInput("unknown algorithm: " + algo);
      }
      emit(color_out, io::coloring_to_json(c));
      return 0;
    }

    if (verify->parsed()) {
      Graph g = load_graph(verify_graph);
      Coloring c = load_coloring(verify_coloring, g);
      detect::Mode mode;
      try {
        mode = detect::parse_mode(verify_mode);
      } catch (const std::invalid_argument& e) {
        throw MalformedInput(e.what());
      }
      auto r = detect::find_anagram(g, c, mode, opt.budget(100000000), opt.seed);
      json out;
      switch (r.verdict) {
        case detect::Verdict::Found: out["verdict"] = "anagram"; break;
        case detect::Verdict::None: out["verdict"] = "free"; break;
        case detect::Verdict::Inconclusive: out["verdict"] = "inconclusive"; break;
      }
      out["steps"] = r.steps;
      if (r.witness) {
        require_verified(g, c, *r.witness);
        out["witness"] = witness_json(*r.witness);
      }
      emit(verify_out, out.dump(2));
      return r.verdict == detect::Verdict::Inconclusive ? kExitBudget : 0;
    }

    if (verify_witness_cmd->parsed()) {
      Graph g = load_graph(vw_graph);
      Coloring c = load_coloring(vw_coloring, g);
      AnagramWitness w = io::witness_from_json(io::read_file(vw_witness));
      const bool ok = verify_witness(g, c, w);
      std::cout << json{{"valid", ok}}.dump() << '\n';
      return ok ? 0 : kExitMalformed;
    }

    if (attack_cmd->parsed()) {
      Graph g = load_graph(attack_graph);
      Coloring c = load_coloring(attack_coloring, g);
      std::optional<AnagramWitness> w;
      json out{{"strategy", strategy}};
      if (strategy == "tree") {
        w = attack::tree_attack(as_binary_tree(g), c);
      } else if (strategy == "sibling") {
        w = attack::sibling_tree_attack(as_sibling_tree(g), c);
      } else if (strategy == "composite") {
        auto r = attack::composite_attack(as_composite(g), c, opt.seed, opt.budget(std::uint64_t{1} << 24));
        w = r.witness;
        out["first_blocks"] = r.first_blocks;
        out["second_blocks"] = r.second_blocks;
        out["unions_hashed"] = r.unions_hashed;
      } else {
        throw MalformedInput("unknown strategy: " + strategy);
      }
      out["found"] = w.has_value();
      if (w) {
        require_verified(g, c, *w);
        out["length"] = w->path.vertices.size();
        emit(attack_out, io::witness_to_json(*w));
      }
      std::cerr << out.dump() << '\n';
      return 0;
    }

    if (posa_cmd->parsed()) {
      Graph g = load_graph(posa_graph);
      const std::uint64_t budget = opt.budget(10000000);
      const auto mode = posa_exact ? posa::SearchMode::Exact : posa::SearchMode::Rotation;
      json out{{"task", posa_task}};
      if (posa_task == "longest-path") {
        auto r = posa::longest_path(g, mode, budget, opt.seed);
        out["path"] = r.path.vertices;
        out["length"] = r.length();
        out["exact"] = r.exact;
        out["budget_exhausted"] = r.budget_exhausted;
      } else if (posa_task == "boosters") {
        auto r = posa::boosters(g, mode, budget, opt.seed);
        out["count"] = r.size();
        json pairs = json::array();
        for (const Edge& e : r.pairs) pairs.push_back({e.first, e.second});
        out["boosters"] = pairs;
      } else if (posa_task == "expander") {
        auto r = posa::is_p_expander(g, posa_p, posa_exact ? posa::ExpanderMode::Exact : posa::ExpanderMode::Sampled,
                                     budget, opt.seed);
        out["p"] = posa_p;
        out["accepted"] = r.accepted;
        out["exact"] = r.exact;
        out["sets_tested"] = r.sets_tested;
        out["violating_set"] = r.violating_set;
      } else if (posa_task == "hamilton") {
        auto r = posa::hamilton_cycle(g, opt.seed, budget);
        out["found"] = r.cycle.has_value();
        out["proven_absent"] = r.proven_absent;
        out["steps"] = r.steps;
        if (r.cycle) {
          if (!posa::is_hamilton_cycle(g, r.cycle->vertices)) throw std::logic_error("cycle failed verification");
          out["cycle"] = r.cycle->vertices;
        }
        std::cout << out.dump(2) << '\n';
        return r.cycle || r.proven_absent ? 0 : kExitBudget;
      } else if (posa_task == "hconn") {
        out["hamilton_connected"] = posa::is_hamilton_connected(g, budget);
      } else {
        throw MalformedInput("unknown posa task: " + posa_task);
      }
      std::cout << out.dump(2) << '\n';
      return 0;
    }

    if (words_cmd->parsed()) {
      json out{{"task", words_task}, {"k", words_k}};
      if (words_task == "max-length") {
        auto r = words::max_anagram_free_length(words_k, words_cap);
        out["length"] = r.length;
        out["witness"] = r.witness.to_string();
        out["reached_cap"] = r.reached_cap;
        out["nodes"] = r.nodes;
      } else if (words_task == "generate") {
        auto r = words::generate_anagram_free_word(words_k, words_target, opt.budget(100000000), opt.seed);
        if (r.success && words::find_abelian_square(r.word)) throw std::logic_error("generated word has a square");
        out["success"] = r.success;
        out["word"] = r.word.to_string();
        out["length"] = r.word.size();
        out["steps"] = r.steps;
        std::cout << out.dump(2) << '\n';
        return r.success ? 0 : kExitBudget;
      } else if (words_task == "check") {
        words::Word w;
        try {
          w = words::Word::parse(words_word, words_k);
        } catch (const std::invalid_argument& e) {
          throw MalformedInput(e.what());
        }
        auto sq = words::find_abelian_square(w);
        out["free"] = !sq.has_value();
        if (sq) out["square"] = json{{"start", sq->start}, {"half", sq->half}};
      } else {
        throw MalformedInput("unknown words task: " + words_task);
      }
      std::cout << out.dump(2) << '\n';
      return 0;
    }

    if (experiment->parsed()) {
      if (exp_kind != "rrg") throw MalformedInput("unknown experiment: " + exp_kind);
      rrg::SplitParams params;
      if (preset == "relaxed") {
        params = rrg::SplitParams::relaxed();
      } else if (preset != "paper") {
        throw MalformedInput("unknown preset: " + preset);
      }
      std::ostringstream table;
      table << "seed,stage_reached,witness_found,|V1|,cycle_lengths,wall_ms\n";
      const std::uint64_t budget = opt.budget(2000000);
      for (int t = 0; t < trials; ++t) {
        const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(t);
        auto start = std::chrono::steady_clock::now();
        Graph g = construct::random_regular(exp_n, exp_d, seed);
        Coloring c = rrg::random_coloring(exp_n, exp_colors, seed);
        auto r = rrg::anagram_pipeline(g, c, params, seed, budget);
        if (r.witness) require_verified(g, c, *r.witness);
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::string lengths;
        for (std::size_t i = 0; i < r.cycle_lengths.size(); ++i) {
          lengths += (i ? ";" : "") + std::to_string(r.cycle_lengths[i]);
        }
        table << seed << ',' << r.stage_reached << ',' << (r.witness ? 1 : 0) << ',' << r.side_size << ','
              << lengths << ',' << ms << '\n';
      }
      emit(csv, table.str());
      return 0;
    }

    if (bounds->parsed()) {
      Graph g = load_graph(bounds_graph);
      json out{{"n", g.n()}, {"m", g.edge_count()}, {"max_degree", g.n() ? g.max_degree() : 0}};
      int lower = g.n() == 0 ? 0 : (g.edge_count() > 0 ? 2 : 1);
      int upper = g.n();
      if (g.n() > 0) {
        auto s = color::greedy_independent_set(g, opt.seed);
        out["independent_set_upper"] = g.n() - static_cast<int>(s.size()) + 1;
        upper = std::min(upper, g.n() - static_cast<int>(s.size()) + 1);
        const int sep = is_forest(g) ? color::separator_coloring(g, color::centroid_separator).palette_size()
                                     : color::separator_coloring(g, color::bfs_layer_separator).palette_size();
        out["separator_upper"] = sep;
        upper = std::min(upper, sep);
        if (is_forest(g)) out["forest_log_bound"] = static_cast<int>(std::floor(std::log2(g.n()))) + 1;
      }
      if (bounds_exact) {
        auto r = color::exact_anagram_chromatic(g, opt.budget(1000000000));
        lower = std::max(lower, r.lower);
        upper = std::min(upper, r.upper);
        out["exact"] = r.exact;
      }
      out["lower"] = lower;
      out["upper"] = upper;
      std::cout << out.dump(2) << '\n';
      return 0;
    }
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const io::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const rrg::StageError& e) {
    std::cerr << "stage " << e.stage() << " failed: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
