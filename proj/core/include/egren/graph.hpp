#pragma once

// Multigraphs without tadpoles, their subgraph taxonomy and simplicial cohomology.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "egren/partition.hpp"
#include "egren/rational.hpp"

namespace egren::graph {

struct Edge {
  int source = 0;
  int target = 0;
};

class Graph {
 public:
  Graph() = default;
  // Validates: TadpoleEdge, UnknownVertex. Duplicate vertex ids are rejected.
  Graph(std::vector<int> vertices, std::vector<Edge> edges);

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool has_vertex(int v) const;
  // Position of v in the vertex list.
  std::size_t index_of(int v) const;
  // Vertex ids as a partition ground set; ids must lie in 1..30.
  partition::Mask vertex_mask() const;
  const Edge& edge(std::size_t e) const;

  // Same vertex list and, edge by edge, the same unordered endpoint pair.
  bool operator==(const Graph& o) const;
  std::string to_string() const;

 private:
  std::vector<int> vertices_;
  std::vector<Edge> edges_;
};

Graph build_graph(std::vector<int> vertices, const std::vector<std::pair<int, int>>& edges);

// +1 if v is the target of e, -1 if the source, 0 otherwise.
int incidence(const Graph& g, std::size_t e, int v);

// LineComplement: all parent vertices with a subset of the edges.
enum class SubgraphKind { FullVertexPart, Bphz, LineComplement };

struct Subgraph {
  Graph parent;
  SubgraphKind kind = SubgraphKind::FullVertexPart;
  std::vector<int> vertices;       // sorted ids
  std::vector<std::size_t> edges;  // sorted parent edge indices

  // The subgraph as a standalone graph (edge order follows the parent).
  Graph as_graph() const;
  bool operator==(const Subgraph& o) const;
};

Subgraph full_vertex_part(const Graph& g, const std::vector<int>& vs);

struct BphzClosure {
  Subgraph bphz;
  Subgraph full;
  bool pure = false;
};
BphzClosure bphz_closure(const Graph& g, const std::vector<std::size_t>& es);

enum class ComplementMode { Line, Vertex };
Subgraph complement(const Graph& g, const Subgraph& sub, ComplementMode mode);

// One vertex per block (numbered 1..k in block order); inter-block edges kept.
Graph contract(const Graph& g, const partition::Partition& p);

int num_components(const Graph& g);
bool is_connected(const Graph& g);
// Connected components as sorted vertex lists, ordered by least vertex.
std::vector<std::vector<int>> components(const Graph& g);

struct Divergence {
  int degree = 0;
  std::string classification;  // "superficially convergent", "logarithmically divergent", "divergent of degree n"
};
Divergence divergence_degree(const Subgraph& sub, int d, int ext);
Divergence divergence_degree(const Graph& g, int d, int ext);

// Scaling degree of the s-vector coefficient of the k-fold tensor power of the
// regularized Feynman propagator: k (d + Re zeta - 2) - 2 s_k.
Rational tensor_power_scaling_degree(int k, int d, const Rational& re_zeta, int s_k);

// Product over vertex pairs of (edge multiplicity)!.
unsigned long long symmetry_factor(const Graph& g);

struct LoopNumbers {
  int components = 0;
  int loops = 0;
};
LoopNumbers loop_numbers(const Graph& g);

struct RelativeCoordinate {
  std::vector<std::pair<int, int>> terms;  // (vertex id, +-1)
  std::string to_string() const;           // e.g. "x3 - x1"
};

struct CohomologyData {
  std::vector<std::vector<int>> incidence;  // |E| x |V|
  std::vector<int> center_of_mass;          // c(1), one entry per vertex
  int base_vertex = 0;
  std::vector<RelativeCoordinate> coordinates;
  int incidence_rank = 0;
  int betti = 0;
};

CohomologyData relative_coordinates(const Graph& g, int v0);

// Rank of an integer matrix over the rationals.
int matrix_rank(const std::vector<std::vector<int>>& m);

}  // namespace egren::graph
