#include "egren/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "egren/error.hpp"
#include "egren/rational.hpp"

namespace egren::graph {

namespace {

// Union-find over vertex positions.
struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::pair<int, int> unordered(const Edge& e) { return std::minmax(e.source, e.target); }

}  // namespace

Graph::Graph(std::vector<int> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::set<int> seen;
  for (int v : vertices_)
    if (!seen.insert(v).second) fail(Errc::UnknownVertex, "duplicate vertex id " + std::to_string(v));
  for (const auto& e : edges_) {
    if (!seen.count(e.source) || !seen.count(e.target))
      fail(Errc::UnknownVertex, "edge (" + std::to_string(e.source) + "," + std::to_string(e.target) +
                                    ") references a missing vertex");
    if (e.source == e.target) fail(Errc::TadpoleEdge, "edge at vertex " + std::to_string(e.source));
  }
}

bool Graph::has_vertex(int v) const { return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end(); }

std::size_t Graph::index_of(int v) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end()) fail(Errc::UnknownVertex, "vertex " + std::to_string(v));
  return static_cast<std::size_t>(it - vertices_.begin());
}

partition::Mask Graph::vertex_mask() const { return partition::mask_of(vertices_); }

const Edge& Graph::edge(std::size_t e) const {
  if (e >= edges_.size()) fail(Errc::IndexOutOfRange, "edge index " + std::to_string(e));
  return edges_[e];
}

bool Graph::operator==(const Graph& o) const {
  if (vertices_ != o.vertices_ || edges_.size() != o.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (unordered(edges_[i]) != unordered(o.edges_[i])) return false;
  return true;
}

std::string Graph::to_string() const {
  std::ostringstream os;
  os << "V=[";
  for (std::size_t i = 0; i < vertices_.size(); ++i) os << (i ? "," : "") << vertices_[i];
  os << "] E=[";
  for (std::size_t i = 0; i < edges_.size(); ++i)
    os << (i ? "," : "") << "(" << edges_[i].source << "," << edges_[i].target << ")";
  os << "]";
  return os.str();
}

Graph build_graph(std::vector<int> vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (auto [s, t] : edges) es.push_back({s, t});
  return Graph(std::move(vertices), std::move(es));
}

int incidence(const Graph& g, std::size_t e, int v) {
  const Edge& ed = g.edge(e);
  if (!g.has_vertex(v)) fail(Errc::IndexOutOfRange, "vertex " + std::to_string(v));
  if (ed.target == v) return 1;
  if (ed.source == v) return -1;
  return 0;
}

// ---------------------------------------------------------------- subgraphs

Graph Subgraph::as_graph() const {
  std::vector<Edge> es;
  for (auto e : edges) es.push_back(parent.edges()[e]);
  return Graph(vertices, std::move(es));
}

bool Subgraph::operator==(const Subgraph& o) const {
  return kind == o.kind && vertices == o.vertices && edges == o.edges && parent == o.parent;
}

Subgraph full_vertex_part(const Graph& g, const std::vector<int>& vs) {
  if (vs.empty()) fail(Errc::EmptyVertexSet, "full_vertex_part of an empty vertex set");
  std::set<int> set(vs.begin(), vs.end());
  for (int v : set)
    if (!g.has_vertex(v)) fail(Errc::UnknownVertex, "vertex " + std::to_string(v));
  Subgraph s{g, SubgraphKind::FullVertexPart, {set.begin(), set.end()}, {}};
  for (std::size_t i = 0; i < g.num_edges(); ++i)
    if (set.count(g.edges()[i].source) && set.count(g.edges()[i].target)) s.edges.push_back(i);
  return s;
}

BphzClosure bphz_closure(const Graph& g, const std::vector<std::size_t>& es) {
  if (es.empty()) fail(Errc::EmptyEdgeSet, "bphz_closure of an empty edge set");
  std::set<std::size_t> eset(es.begin(), es.end());
  std::set<int> vset;
  for (auto e : eset) {
    const Edge& ed = g.edge(e);
    vset.insert(ed.source);
    vset.insert(ed.target);
  }
  Subgraph bphz{g, SubgraphKind::Bphz, {vset.begin(), vset.end()}, {eset.begin(), eset.end()}};
  Subgraph full = full_vertex_part(g, bphz.vertices);
  bool pure = full.edges.size() > bphz.edges.size();
  return {std::move(bphz), std::move(full), pure};
}

Subgraph complement(const Graph& g, const Subgraph& sub, ComplementMode mode) {
  if (mode == ComplementMode::Line) {
    Subgraph s{g, SubgraphKind::LineComplement, g.vertices(), {}};
    std::sort(s.vertices.begin(), s.vertices.end());
    for (std::size_t i = 0; i < g.num_edges(); ++i)
      if (!std::binary_search(sub.edges.begin(), sub.edges.end(), i)) s.edges.push_back(i);
    return s;
  }
  std::vector<int> rest;
  for (int v : g.vertices())
    if (!std::binary_search(sub.vertices.begin(), sub.vertices.end(), v)) rest.push_back(v);
  if (rest.empty()) fail(Errc::VertexComplementEmpty, "subgraph contains every vertex");
  return full_vertex_part(g, rest);
}

Graph contract(const Graph& g, const partition::Partition& p) {
  partition::Mask vm = g.vertex_mask();
  if (p.ground() != vm) fail(Errc::NotAPartition, "partition ground set differs from the vertex set");
  std::vector<int> verts;
  for (std::size_t i = 0; i < p.size(); ++i) verts.push_back(static_cast<int>(i) + 1);
  auto block_index = [&](int v) {
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.blocks()[i] & (partition::Mask{1} << v)) return static_cast<int>(i) + 1;
    fail(Errc::NotAPartition, "vertex not covered");
  };
  std::vector<Edge> es;
  for (const auto& e : g.edges()) {
    int a = block_index(e.source), b = block_index(e.target);
    if (a != b) es.push_back({a, b});
  }
  return Graph(std::move(verts), std::move(es));
}

std::vector<std::vector<int>> components(const Graph& g) {
  DisjointSets ds(g.num_vertices());
  for (const auto& e : g.edges()) ds.unite(g.index_of(e.source), g.index_of(e.target));
  std::vector<std::vector<int>> out;
  std::vector<int> slot(g.num_vertices(), -1);
  std::vector<int> sorted = g.vertices();
  std::sort(sorted.begin(), sorted.end());
  for (int v : sorted) {
    std::size_t r = ds.find(g.index_of(v));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(v);
  }
  return out;
}

int num_components(const Graph& g) { return static_cast<int>(components(g).size()); }

bool is_connected(const Graph& g) { return num_components(g) == 1; }

// ---------------------------------------------------------------- bookkeeping

namespace {

std::string classify(int degree) {
  if (degree < 0) return "superficially convergent";
  if (degree == 0) return "logarithmically divergent";
  return "divergent of degree " + std::to_string(degree);
}

}  // namespace

Divergence divergence_degree(const Graph& g, int d, int ext) {
  if (d < 2) fail(Errc::ParamDomain, "dimension must be at least 2");
  if (ext < 0) fail(Errc::ParamDomain, "external derivative count must be nonnegative");
  if (!is_connected(g)) fail(Errc::DisconnectedSubgraph, "divergence degree of a disconnected graph");
  int e = static_cast<int>(g.num_edges()), v = static_cast<int>(g.num_vertices());
  int degree = e * (d - 2) - (v - 1) * d + ext;
  return {degree, classify(degree)};
}

Divergence divergence_degree(const Subgraph& sub, int d, int ext) {
  if (sub.kind != SubgraphKind::FullVertexPart)
    fail(Errc::UnsupportedArgument, "divergence degree expects a full vertex part");
  return divergence_degree(sub.as_graph(), d, ext);
}

Rational tensor_power_scaling_degree(int k, int d, const Rational& re_zeta, int s_k) {
  if (k < 1 || d < 2 || s_k < 0) fail(Errc::ParamDomain, "tensor power needs k >= 1, d >= 2, s_k >= 0");
  return Rational(k) * (Rational(d - 2) + re_zeta) - 2 * s_k;
}

unsigned long long symmetry_factor(const Graph& g) {
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : g.edges()) ++mult[unordered(e)];
  unsigned long long f = 1;
  for (auto [pair, m] : mult)
    for (int k = 2; k <= m; ++k) f *= static_cast<unsigned long long>(k);
  return f;
}

LoopNumbers loop_numbers(const Graph& g) {
  int c = num_components(g);
  return {c, static_cast<int>(g.num_edges()) - static_cast<int>(g.num_vertices()) + c};
}

std::string RelativeCoordinate::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto [v, c] = terms[i];
    if (i == 0)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    s += "x" + std::to_string(v);
  }
  return s.empty() ? "0" : s;
}

int matrix_rank(const std::vector<std::vector<int>>& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<Rational>> a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  std::size_t rows = a.size(), cols = a[0].size();
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

CohomologyData relative_coordinates(const Graph& g, int v0) {
  if (!g.has_vertex(v0)) fail(Errc::UnknownVertex, "base vertex " + std::to_string(v0));
  if (!is_connected(g)) fail(Errc::DisconnectedGraph, "relative coordinates need a connected graph");
  CohomologyData cd;
  cd.base_vertex = v0;
  cd.center_of_mass.assign(g.num_vertices(), 1);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    std::vector<int> row;
    for (int v : g.vertices()) row.push_back(incidence(g, e, v));
    cd.incidence.push_back(std::move(row));
    const Edge& ed = g.edges()[e];
    RelativeCoordinate rc;
    if (ed.source == v0)
      rc.terms = {{ed.target, 1}};
    else if (ed.target == v0)
      rc.terms = {{ed.source, -1}};
    else
      rc.terms = {{ed.target, 1}, {ed.source, -1}};
    cd.coordinates.push_back(std::move(rc));
  }
  // d o c must vanish: each incidence row sums to zero.
  for (const auto& row : cd.incidence) {
    long s = 0;
    for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * cd.center_of_mass[i];
    if (s != 0) fail(Errc::NonFiniteResult, "d o c does not vanish");
  }
  cd.incidence_rank = matrix_rank(cd.incidence);
  cd.betti = static_cast<int>(g.num_edges()) - cd.incidence_rank;
  return cd;
}

}  // namespace egren::graph
