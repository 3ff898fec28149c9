#pragma once

// Textual documents exchanged by the command-line tool.  Both formats are
// JSON; rationals travel as "p/q" strings.

#include <string>
#include <vector>

#include "json.hpp"

#include "egren/graph.hpp"
#include "egren/laurent.hpp"
#include "egren/rational.hpp"

namespace egren::cli {

using Json = nlohmann::ordered_json;

struct GraphDocument {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<Rational> multipliers;  // empty or aligned with edges

  bool operator==(const GraphDocument&) const = default;
};

GraphDocument parse_graph_document(const std::string& text);
GraphDocument graph_document_from_json(const Json& j);
Json to_json(const GraphDocument& doc);
std::string serialize(const GraphDocument& doc);

// Vertex i of the document becomes id i + 1.
graph::Graph to_graph(const GraphDocument& doc);
GraphDocument from_graph(const graph::Graph& g, const std::vector<Rational>& multipliers = {});
// Per-edge multipliers, defaulting to 1.
std::vector<Rational> multipliers_of(const GraphDocument& doc);
int vertex_id(const GraphDocument& doc, const std::string& name);

laurent::Series parse_series_document(const std::string& text);
laurent::Series series_from_json(const Json& j);
Json to_json(const laurent::Series& s);
std::string serialize(const laurent::Series& s);

// Double rounded to 15 significant digits.
double round15(double x);
std::string format15(double x);

}  // namespace egren::cli
