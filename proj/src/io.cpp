#include "anagraph/io.hpp"

#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace anagraph::io {
namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(e.what());
  }
}

int require_int(const json& obj, const char* field) {
  if (!obj.is_object() || !obj.contains(field)) throw SchemaError(std::string("missing field \"") + field + "\"");
  const json& v = obj.at(field);
  if (!v.is_number_integer()) throw SchemaError(std::string("field \"") + field + "\" must be an integer");
  return v.get<int>();
}

std::vector<int> require_int_array(const json& obj, const char* field) {
  if (!obj.is_object() || !obj.contains(field)) throw SchemaError(std::string("missing field \"") + field + "\"");
  const json& arr = obj.at(field);
  if (!arr.is_array()) throw SchemaError(std::string("field \"") + field + "\" must be an array");
  std::vector<int> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_integer()) {
      throw SchemaError(std::string(field) + "[" + std::to_string(i) + "] must be an integer");
    }
    out.push_back(arr[i].get<int>());
  }
  return out;
}

std::pair<int, std::vector<Edge>> parse_edge_list(std::string_view text) {
  json doc = parse(text);
  int n = require_int(doc, "n");
  if (n < 0) throw SchemaError("field \"n\" must be non-negative");
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw SchemaError("field \"edges\" must be an array");
  std::vector<Edge> edges;
  const json& arr = doc["edges"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& e = arr[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw SchemaError("edges[" + std::to_string(i) + "] must be a pair of integers");
    }
    int u = e[0].get<int>();
    int v = e[1].get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw SchemaError("edges[" + std::to_string(i) + "] references a vertex outside [0, n)");
    }
    edges.emplace_back(u, v);
  }
  return {n, std::move(edges)};
}

std::string edge_list_json(int n, const std::vector<Edge>& edges) {
  json doc;
  doc["n"] = n;
  json arr = json::array();
  for (auto [u, v] : edges) arr.push_back({u, v});
  doc["edges"] = std::move(arr);
  return doc.dump() + "\n";
}

}  // namespace

std::string graph_to_json(const Graph& graph) { return edge_list_json(graph.n(), graph.edges()); }

Graph graph_from_json(std::string_view text) {
  auto [n, edges] = parse_edge_list(text);
  try {
    return Graph(n, edges);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("graph: ") + e.what());
  }
}

std::string multigraph_to_json(const MultiGraph& graph) { return edge_list_json(graph.n(), graph.edges()); }

MultiGraph multigraph_from_json(std::string_view text) {
  auto [n, edges] = parse_edge_list(text);
  return MultiGraph(n, std::move(edges));
}

std::string coloring_to_json(const Coloring& coloring) {
  json doc;
  doc["colors"] = std::vector<int>(coloring.colors().begin(), coloring.colors().end());
  return doc.dump() + "\n";
}

Coloring coloring_from_json(std::string_view text) {
  json doc = parse(text);
  std::vector<int> colors = require_int_array(doc, "colors");
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i] < 0) throw SchemaError("colors[" + std::to_string(i) + "] must be non-negative");
  }
  return Coloring(std::move(colors));
}

std::string witness_to_json(const AnagramWitness& witness) {
  json doc;
  doc["path"] = witness.path.vertices;
  doc["split"] = witness.split;
  return doc.dump() + "\n";
}

AnagramWitness witness_from_json(std::string_view text) {
  json doc = parse(text);
  AnagramWitness w;
  w.path.vertices = require_int_array(doc, "path");
  int split = require_int(doc, "split");
  if (w.path.vertices.empty() || w.path.vertices.size() % 2 != 0) {
    throw SchemaError("field \"path\" must have positive even length");
  }
  if (split < 0 || static_cast<std::size_t>(split) * 2 != w.path.vertices.size()) {
    throw SchemaError("field \"split\" must equal half the path length");
  }
  w.split = static_cast<std::size_t>(split);
  return w;
}

std::string graph_to_dot(const Graph& graph, const Coloring* coloring) {
  std::ostringstream out;
  out << "graph G {\n";
  for (Vertex v = 0; v < graph.n(); ++v) {
    out << "  " << v;
    if (coloring != nullptr && v < coloring->size()) out << " [color=" << (*coloring)[v] << "]";
    out << ";\n";
  }
  for (auto [u, v] : graph.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

Graph graph_from_dot(std::string_view text) {
  static const std::regex vertex_re(R"(^\s*(\d+)\s*(\[[^\]]*\])?\s*;?\s*$)");
  static const std::regex edge_re(R"(^\s*(\d+)\s*--\s*(\d+)\s*;?\s*$)");
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  int line_no = 0;
  bool opened = false;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    std::smatch m;
    if (line.find('{') != std::string::npos) {
      opened = true;
      continue;
    }
    if (line.find('}') != std::string::npos || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (std::regex_match(line, m, edge_re)) {
      int u = std::stoi(m[1]);
      int v = std::stoi(m[2]);
      edges.emplace_back(u, v);
      n = std::max({n, u + 1, v + 1});
    } else if (std::regex_match(line, m, vertex_re)) {
      n = std::max(n, std::stoi(m[1]) + 1);
    } else {
      throw SchemaError("dot line " + std::to_string(line_no) + ": unrecognized statement");
    }
  }
  if (!opened) throw SchemaError("dot: missing graph body");
  try {
    return Graph(n, edges);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("dot: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace anagraph::io
