#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "anagraph/core.hpp"

namespace anagraph::io {

/// Malformed or schema-violating input. what() names the offending field
/// (and the line/column for JSON syntax errors).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"n": int, "edges": [[u,v],...]}
std::string graph_to_json(const Graph& graph);
Graph graph_from_json(std::string_view text);

// Same schema as Graph; loops and repeated pairs are accepted.
std::string multigraph_to_json(const MultiGraph& graph);
MultiGraph multigraph_from_json(std::string_view text);

// {"colors": [int,...]}
std::string coloring_to_json(const Coloring& coloring);
Coloring coloring_from_json(std::string_view text);

// {"path": [int,...], "split": int}; odd paths and off-center splits are rejected.
std::string witness_to_json(const AnagramWitness& witness);
AnagramWitness witness_from_json(std::string_view text);

/// Undirected DOT. Every vertex is declared so isolated vertices survive;
/// an optional coloring is written as a `color` attribute.
std::string graph_to_dot(const Graph& graph, const Coloring* coloring = nullptr);
/// Reads the subset of DOT written by graph_to_dot.
Graph graph_from_dot(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace anagraph::io
