#pragma once

// Exactly solvable Euclidean amplitudes of series-parallel graphs.
//
// Every edge carries the massless propagator power (x^2)^(-a_e) with
// a_e = (d-2)/2 + rho_e zeta/2.  Parallel edges multiply (exponents add), a
// vertex of degree two is integrated out with the chain relation
//   int d^dz ((x-z)^2)^(-a) ((z-y)^2)^(-b) = pi^(d/2) v(a,b) ((x-y)^2)^(-(a+b-d/2)),
//   v(a,b) = G(d/2-a) G(d/2-b) G(a+b-d/2) / (G(a) G(b) G(d-a-b)).
// The remaining two-terminal power is paired with exp(-t x^2).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egren/graph.hpp"
#include "egren/laurent.hpp"
#include "egren/partition.hpp"
#include "egren/rational.hpp"

namespace egren::amplitude {

// c + k zeta
struct Affine {
  Rational c = 0;
  Rational k = 0;

  friend Affine operator+(const Affine& a, const Affine& b) { return {a.c + b.c, a.k + b.k}; }
  friend Affine operator-(const Affine& a, const Affine& b) { return {a.c - b.c, a.k - b.k}; }
  bool operator==(const Affine& o) const { return c == o.c && k == o.k; }
  bool operator<(const Affine& o) const { return c != o.c ? c < o.c : k < o.k; }
  double at(double zeta) const { return to_double(c) + to_double(k) * zeta; }
  std::string to_string() const;
};

struct GammaFactor {
  Affine arg;
  int power = 1;  // +1 numerator, -1 denominator
  bool operator==(const GammaFactor& o) const { return arg == o.arg && power == o.power; }
};

struct ClosedFormAmplitude {
  std::vector<GammaFactor> gammas;
  int pi_halves = 0;
  Affine exponent;  // power s of 1/(x^2)^s
  int d = 4;
  bool unit = false;  // single vertex: the value 1

  static ClosedFormAmplitude unit_amplitude(int d);
  // Merge equal arguments, drop cancelled factors, sort.
  void canonicalize();
  ClosedFormAmplitude canonical() const;
  // Product of two fragments sharing the same endpoints (exponents add).
  ClosedFormAmplitude times(const ClosedFormAmplitude& o) const;
  // Prefactor at a numeric zeta (Gamma factors and pi power only).
  double prefactor(double zeta) const;
  bool operator==(const ClosedFormAmplitude& o) const;
  std::string to_string() const;
};

struct SPExpr {
  enum class Kind { Edge, Series, Parallel };
  Kind kind = Kind::Edge;
  Rational rho = 1;
  std::vector<SPExpr> children;  // two for Series and Parallel

  std::string to_string() const;
};

struct SPGraph {
  SPExpr expr;
  graph::Graph graph;
  std::vector<Rational> rho;  // per edge of graph
  int source = 1;
  int sink = 2;
};

SPGraph sp_parse(std::string_view text);
SPGraph sp_from_expr(const SPExpr& e);

ClosedFormAmplitude chain_weight(const Affine& a, const Affine& b, int d);

ClosedFormAmplitude sp_reduce(const SPGraph& g, int d);

// Reduce a multigraph with terminals s, t to one two-terminal closed form by
// parallel merges and degree-two eliminations.  Returns nullopt if the graph
// is not series-parallel with respect to these terminals.
std::optional<ClosedFormAmplitude> reduce_two_terminal(const graph::Graph& g, const std::vector<Rational>& rho,
                                                       int s, int t, int d);

// Terminal choice for a piece of a larger graph: the preferred pairs are tried
// first, then every vertex pair in lexicographic order.
std::optional<std::pair<int, int>> piece_terminal_pair(const graph::Graph& g, const std::vector<Rational>& rho,
                                                       const std::vector<std::pair<int, int>>& preferred, int d);
// Reduction on the chosen terminals.  A single vertex gives the unit amplitude.
ClosedFormAmplitude reduce_piece(const graph::Graph& g, const std::vector<Rational>& rho,
                                 const std::vector<std::pair<int, int>>& preferred, int d,
                                 const std::string& label);

struct Pairing {
  Rational exact_power;  // t^(exact_power) is left out of the series
  laurent::Series series;
};

// E_t[(x^2)^(-s)] = pi^(d/2) t^(s-d/2) G(d/2-s)/G(d/2) times the prefactor.
Pairing evaluate_pairing(const ClosedFormAmplitude& cf, int order);

// Same quantity at a numeric zeta and t, computed from Gamma functions directly.
double evaluate_numeric(const ClosedFormAmplitude& cf, double zeta, double t = 1.0);

struct PieceGraph {
  graph::Graph graph;
  std::vector<Rational> rho;
  std::vector<std::pair<int, int>> preferred;
  // Both terminals fall into one block of a nontrivial quotient: the pairing
  // is f(0) times a scale-less integral and vanishes.
  bool scaleless = false;
};

// Terminals of a piece: the graph terminals it contains plus its attachment
// vertices, used when there are exactly two.
// Full vertex part on `block` with inherited terminals.
PieceGraph block_piece(const SPGraph& g, partition::Mask block);
// (full vertex part on p.ground()) / p with inherited terminals.
PieceGraph quotient_piece(const SPGraph& g, const partition::Partition& p);

// Large-distance power counting for a two-terminal pairing: every nonempty
// set S of non-terminal vertices needs (d-2) * #(edges leaving S) > d * |S|
// at zeta = 0.  Otherwise the closed form carries infrared poles.
bool ir_convergent(const graph::Graph& g, int s, int t, int d);
// Checked on the pair piece_terminal_pair picks.  A piece with a single
// vertex, or a scale-less quotient, counts as convergent.
bool ir_convergent(const PieceGraph& p, int d);

struct BlockAmplitudes {
  ClosedFormAmplitude quotient;
  bool quotient_scaleless = false;
  std::map<partition::Mask, ClosedFormAmplitude> subs;
};

BlockAmplitudes block_amplitudes(const SPGraph& g, const partition::Partition& p, int d);

}  // namespace egren::amplitude
