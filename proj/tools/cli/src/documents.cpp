#include "egren_cli/documents.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>

#include "egren/error.hpp"

namespace egren::cli {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  fail(Errc::SchemaViolation, path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path + "." + key, "missing field");
  return *it;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

long as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<long>();
}

Rational as_rational(const Json& j, const std::string& path) {
  std::string s = as_string(j, path);
  if (s.find('/') == std::string::npos) schema(path, "rational must be written as \"p/q\"");
  try {
    return parse_rational(s);
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(Errc::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

GraphDocument graph_document_from_json(const Json& j) {
  GraphDocument doc;
  for (auto it = j.begin(); j.is_object() && it != j.end(); ++it)
    if (it.key() != "vertices" && it.key() != "edges" && it.key() != "multipliers") schema("$." + it.key(), "unknown field");
  const Json& vs = field(j, "vertices", "$");
  if (!vs.is_array()) schema("$.vertices", "expected an array");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string path = "$.vertices[" + std::to_string(i) + "]";
    std::string name = as_string(vs[i], path);
    if (name.empty()) schema(path, "empty vertex name");
    if (!seen.insert(name).second) schema(path, "duplicate vertex '" + name + "'");
    doc.vertices.push_back(name);
  }
  const Json& es = field(j, "edges", "$");
  if (!es.is_array()) schema("$.edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string path = "$.edges[" + std::to_string(i) + "]";
    if (!es[i].is_array() || es[i].size() != 2) schema(path, "expected a pair of vertex names");
    std::string a = as_string(es[i][0], path + "[0]"), b = as_string(es[i][1], path + "[1]");
    for (const auto& [v, p] : {std::pair{a, path + "[0]"}, std::pair{b, path + "[1]"}})
      if (!seen.count(v)) fail(Errc::UnknownVertex, p + ": unknown vertex '" + v + "'");
    if (a == b) fail(Errc::TadpoleEdge, path + ": edge [" + a + ", " + b + "] is a tadpole");
    doc.edges.emplace_back(a, b);
  }
  if (j.contains("multipliers")) {
    const Json& ms = j["multipliers"];
    if (!ms.is_array()) schema("$.multipliers", "expected an array");
    if (ms.size() != doc.edges.size()) schema("$.multipliers", "must align with edges");
    for (std::size_t i = 0; i < ms.size(); ++i) doc.multipliers.push_back(as_rational(ms[i], "$.multipliers[" + std::to_string(i) + "]"));
  }
  return doc;
}

GraphDocument parse_graph_document(const std::string& text) { return graph_document_from_json(parse_json(text)); }

Json to_json(const GraphDocument& doc) {
  Json j;
  j["vertices"] = doc.vertices;
  Json es = Json::array();
  for (const auto& [a, b] : doc.edges) es.push_back(Json::array({a, b}));
  j["edges"] = es;
  if (!doc.multipliers.empty()) {
    Json ms = Json::array();
    for (const auto& q : doc.multipliers) ms.push_back(to_string(q));
    j["multipliers"] = ms;
  }
  return j;
}

std::string serialize(const GraphDocument& doc) { return to_json(doc).dump(2) + "\n"; }

int vertex_id(const GraphDocument& doc, const std::string& name) {
  for (std::size_t i = 0; i < doc.vertices.size(); ++i)
    if (doc.vertices[i] == name) return static_cast<int>(i) + 1;
  fail(Errc::UnknownVertex, "unknown vertex '" + name + "'");
}

graph::Graph to_graph(const GraphDocument& doc) {
  if (doc.vertices.size() > static_cast<std::size_t>(partition::kHardCap))
    fail(Errc::CapExceeded, "at most 30 vertices are supported");
  std::vector<int> ids;
  for (std::size_t i = 0; i < doc.vertices.size(); ++i) ids.push_back(static_cast<int>(i) + 1);
  std::vector<graph::Edge> edges;
  for (const auto& [a, b] : doc.edges) edges.push_back({vertex_id(doc, a), vertex_id(doc, b)});
  return graph::Graph(ids, edges);
}

GraphDocument from_graph(const graph::Graph& g, const std::vector<Rational>& multipliers) {
  GraphDocument doc;
  for (int v : g.vertices()) doc.vertices.push_back(std::to_string(v));
  for (const auto& e : g.edges()) doc.edges.emplace_back(std::to_string(e.source), std::to_string(e.target));
  doc.multipliers = multipliers;
  return doc;
}

std::vector<Rational> multipliers_of(const GraphDocument& doc) {
  if (!doc.multipliers.empty()) return doc.multipliers;
  return std::vector<Rational>(doc.edges.size(), Rational(1));
}

Json to_json(const laurent::Series& s) {
  Json j;
  j["variable"] = "zeta";
  auto mp = s.min_power();
  j["min_power"] = mp ? Json(*mp) : Json(nullptr);
  j["truncation"] = s.is_exact() ? Json(nullptr) : Json(s.truncation());
  Json terms = Json::array();
  for (const auto& [p, c] : s.terms()) {
    Json monos = Json::array();
    for (const auto& [m, q] : c.terms()) {
      Json exps = Json::object();
      for (int slot = 0; slot < laurent::kNumSymbols; ++slot)
        if (m.exps[static_cast<std::size_t>(slot)]) exps[laurent::symbol_name(slot)] = m.exps[static_cast<std::size_t>(slot)];
      Json mono;
      mono["rational"] = to_string(q);
      mono["exponents"] = exps;
      mono["pi_halves"] = m.pi_halves;
      monos.push_back(mono);
    }
    Json t;
    t["power"] = p;
    t["monomials"] = monos;
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

std::string serialize(const laurent::Series& s) { return to_json(s).dump(2) + "\n"; }

laurent::Series series_from_json(const Json& j) {
  if (as_string(field(j, "variable", "$"), "$.variable") != "zeta") schema("$.variable", "must be \"zeta\"");
  const Json& tr = field(j, "truncation", "$");
  int trunc = laurent::Series::kExact;
  if (!tr.is_null()) trunc = static_cast<int>(as_int(tr, "$.truncation"));
  const Json& terms = field(j, "terms", "$");
  if (!terms.is_array()) schema("$.terms", "expected an array");
  laurent::Series s(trunc);
  std::optional<long> last_power;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string tp = "$.terms[" + std::to_string(i) + "]";
    long power = as_int(field(terms[i], "power", tp), tp + ".power");
    if (last_power && power <= *last_power) schema(tp + ".power", "powers must be strictly ascending");
    if (power > trunc) schema(tp + ".power", "term beyond the truncation");
    last_power = power;
    const Json& monos = field(terms[i], "monomials", tp);
    if (!monos.is_array() || monos.empty()) schema(tp + ".monomials", "expected a nonempty array");
    laurent::Coeff c;
    std::optional<laurent::Monomial> last;
    for (std::size_t k = 0; k < monos.size(); ++k) {
      std::string mp = tp + ".monomials[" + std::to_string(k) + "]";
      Rational q = as_rational(field(monos[k], "rational", mp), mp + ".rational");
      if (q == 0) schema(mp + ".rational", "zero coefficient");
      laurent::Monomial m;
      const Json& exps = field(monos[k], "exponents", mp);
      if (!exps.is_object()) schema(mp + ".exponents", "expected an object");
      for (auto it = exps.begin(); it != exps.end(); ++it) {
        auto slot = laurent::symbol_slot(it.key());
        if (!slot) schema(mp + ".exponents." + it.key(), "unknown symbol");
        long e = as_int(it.value(), mp + ".exponents." + it.key());
        if (e <= 0 || e > 255) schema(mp + ".exponents." + it.key(), "exponent out of range");
        m.exps[static_cast<std::size_t>(*slot)] = static_cast<std::uint8_t>(e);
      }
      long ph = as_int(field(monos[k], "pi_halves", mp), mp + ".pi_halves");
      if (ph < -32768 || ph > 32767) schema(mp + ".pi_halves", "out of range");
      m.pi_halves = static_cast<std::int16_t>(ph);
      if (last && !(*last < m)) schema(mp, "monomials must be strictly ascending");
      last = m;
      c += laurent::Coeff::from_monomial(m, q);
    }
    s += laurent::Series::monomial(static_cast<int>(power), c, trunc);
  }
  const Json& mp = field(j, "min_power", "$");
  auto actual = s.min_power();
  if (mp.is_null() ? actual.has_value() : (!actual || as_int(mp, "$.min_power") != *actual))
    schema("$.min_power", "does not match the terms");
  return s;
}

laurent::Series parse_series_document(const std::string& text) { return series_from_json(parse_json(text)); }

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format15(x).c_str(), nullptr);
}

std::string format15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace egren::cli
