#include "egren/amplitude.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <sstream>

#include "egren/error.hpp"

namespace egren::amplitude {

using laurent::Coeff;
using laurent::Series;

std::string Affine::to_string() const {
  if (k == 0) return egren::to_string(c);
  return egren::to_string(c) + (k < 0 ? " - " : " + ") + egren::to_string(abs(k)) + " z";
}

// ---------------------------------------------------------------- closed forms

ClosedFormAmplitude ClosedFormAmplitude::unit_amplitude(int d) {
  ClosedFormAmplitude a;
  a.d = d;
  a.unit = true;
  return a;
}

void ClosedFormAmplitude::canonicalize() {
  std::map<Affine, int> count;
  for (const auto& g : gammas) count[g.arg] += g.power;
  gammas.clear();
  for (const auto& [arg, p] : count)
    for (int i = 0; i < std::abs(p); ++i) gammas.push_back({arg, p > 0 ? 1 : -1});
}

ClosedFormAmplitude ClosedFormAmplitude::canonical() const {
  ClosedFormAmplitude c = *this;
  c.canonicalize();
  return c;
}

ClosedFormAmplitude ClosedFormAmplitude::times(const ClosedFormAmplitude& o) const {
  if (unit) return o;
  if (o.unit) return *this;
  ClosedFormAmplitude r = *this;
  r.gammas.insert(r.gammas.end(), o.gammas.begin(), o.gammas.end());
  r.pi_halves += o.pi_halves;
  r.exponent = r.exponent + o.exponent;
  return r;
}

double ClosedFormAmplitude::prefactor(double zeta) const {
  double v = std::pow(std::numbers::pi, pi_halves / 2.0);
  for (const auto& g : gammas) {
    double x = g.arg.at(zeta);
    double gx = std::tgamma(x);
    v *= g.power == 1 ? gx : 1.0 / gx;
  }
  return v;
}

bool ClosedFormAmplitude::operator==(const ClosedFormAmplitude& o) const {
  ClosedFormAmplitude a = canonical(), b = o.canonical();
  return a.unit == b.unit && a.d == b.d && a.pi_halves == b.pi_halves && a.exponent == b.exponent &&
         a.gammas == b.gammas;
}

std::string ClosedFormAmplitude::to_string() const {
  if (unit) return "1";
  std::ostringstream os;
  os << "pi^(" << pi_halves << "/2)";
  for (const auto& g : gammas) os << (g.power == 1 ? " * G(" : " / G(") << g.arg.to_string() << ")";
  os << " * (x^2)^-(" << exponent.to_string() << ")";
  return os.str();
}

// ---------------------------------------------------------------- SP grammar

std::string SPExpr::to_string() const {
  switch (kind) {
    case Kind::Edge:
      return rho == 1 ? "e" : "e:" + (rho.get_den() == 1 ? rho.get_num().get_str() : egren::to_string(rho));
    case Kind::Series:
      return "S(" + children[0].to_string() + "," + children[1].to_string() + ")";
    case Kind::Parallel:
      return "P(" + children[0].to_string() + "," + children[1].to_string() + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SPExpr parse() {
    SPExpr e = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(Errc::ParseError, what + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  SPExpr expr() {
    char c = peek();
    if (c == 'e') {
      ++pos_;
      SPExpr leaf;
      if (peek() == ':') {
        ++pos_;
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
          ++pos_;
        if (start == pos_) error("expected multiplier");
        try {
          leaf.rho = parse_rational(text_.substr(start, pos_ - start));
        } catch (const Error&) {
          pos_ = start;
          error("malformed multiplier");
        }
        if (leaf.rho <= 0) {
          pos_ = start;
          error("multiplier must be positive");
        }
      }
      return leaf;
    }
    if (c == 'S' || c == 'P') {
      ++pos_;
      SPExpr node;
      node.kind = c == 'S' ? SPExpr::Kind::Series : SPExpr::Kind::Parallel;
      expect('(');
      node.children.push_back(expr());
      expect(',');
      node.children.push_back(expr());
      expect(')');
      return node;
    }
    if (c == '\0') error("unexpected end of input");
    error(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct RawEdge {
  int s, t;
  Rational rho;
};

void lay_out(const SPExpr& e, int s, int t, int& next_id, std::vector<RawEdge>& out) {
  switch (e.kind) {
    case SPExpr::Kind::Edge:
      out.push_back({s, t, e.rho});
      break;
    case SPExpr::Kind::Series: {
      int m = next_id++;
      lay_out(e.children[0], s, m, next_id, out);
      lay_out(e.children[1], m, t, next_id, out);
      break;
    }
    case SPExpr::Kind::Parallel:
      lay_out(e.children[0], s, t, next_id, out);
      lay_out(e.children[1], s, t, next_id, out);
      break;
  }
}

}  // namespace

SPGraph sp_from_expr(const SPExpr& e) {
  // Provisional ids 0 (source), 1 (sink), 2.. (inner), renumbered by first
  // appearance along the edge list.
  std::vector<RawEdge> raw;
  int next_id = 2;
  lay_out(e, 0, 1, next_id, raw);
  std::map<int, int> id;
  auto number = [&](int v) {
    auto it = id.find(v);
    if (it != id.end()) return it->second;
    int n = static_cast<int>(id.size()) + 1;
    id[v] = n;
    return n;
  };
  std::vector<std::pair<int, int>> edges;
  SPGraph g;
  g.expr = e;
  for (const auto& r : raw) {
    int a = number(r.s);
    int b = number(r.t);
    edges.emplace_back(a, b);
    g.rho.push_back(r.rho);
  }
  std::vector<int> verts(id.size());
  for (std::size_t i = 0; i < verts.size(); ++i) verts[i] = static_cast<int>(i) + 1;
  g.graph = graph::build_graph(std::move(verts), edges);
  g.source = id.at(0);
  g.sink = id.at(1);
  return g;
}

SPGraph sp_parse(std::string_view text) { return sp_from_expr(Parser(text).parse()); }

// ---------------------------------------------------------------- reduction

namespace {

bool rigid_pole(const Affine& a) { return a.k == 0 && is_integer(a.c) && a.c <= 0; }

}  // namespace

ClosedFormAmplitude chain_weight(const Affine& a, const Affine& b, int d) {
  Affine h{frac(d, 2), 0};
  Affine dd{Rational(d), 0};
  ClosedFormAmplitude r;
  r.d = d;
  r.pi_halves = d;
  r.gammas = {{h - a, 1}, {h - b, 1}, {a + b - h, 1}, {a, -1}, {b, -1}, {dd - a - b, -1}};
  for (const auto& g : r.gammas)
    if (g.power == 1 && rigid_pole(g.arg))
      fail(Errc::RigidPole, "chain weight needs Gamma(" + g.arg.to_string() + ")");
  r.exponent = a + b - h;
  return r;
}

std::optional<ClosedFormAmplitude> reduce_two_terminal(const graph::Graph& g, const std::vector<Rational>& rho,
                                                       int s, int t, int d) {
  if (rho.size() != g.num_edges()) fail(Errc::ShapeMismatch, "one multiplier per edge expected");
  if (s == t || !g.has_vertex(s) || !g.has_vertex(t)) return std::nullopt;
  struct Live {
    int u, v;
    ClosedFormAmplitude frag;
  };
  std::vector<Live> live;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    ClosedFormAmplitude f;
    f.d = d;
    f.exponent = {frac(d - 2, 2), rho[i] / 2};
    live.push_back({g.edges()[i].source, g.edges()[i].target, std::move(f)});
  }
  std::set<int> verts(g.vertices().begin(), g.vertices().end());
  auto same_pair = [](const Live& x, const Live& y) {
    return (x.u == y.u && x.v == y.v) || (x.u == y.v && x.v == y.u);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < live.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < live.size(); ++j)
        if (same_pair(live[i], live[j])) {
          live[i].frag = live[i].frag.times(live[j].frag);
          live.erase(live.begin() + static_cast<long>(j));
          changed = true;
          break;
        }
    if (changed) continue;
    for (int v : verts) {
      if (v == s || v == t) continue;
      std::vector<std::size_t> inc;
      for (std::size_t i = 0; i < live.size(); ++i)
        if (live[i].u == v || live[i].v == v) inc.push_back(i);
      if (inc.size() < 2) return std::nullopt;
      if (inc.size() > 2) continue;
      Live& x = live[inc[0]];
      Live& y = live[inc[1]];
      int a = x.u == v ? x.v : x.u;
      int b = y.u == v ? y.v : y.u;
      ClosedFormAmplitude merged = chain_weight(x.frag.exponent, y.frag.exponent, d);
      merged.gammas.insert(merged.gammas.end(), x.frag.gammas.begin(), x.frag.gammas.end());
      merged.gammas.insert(merged.gammas.end(), y.frag.gammas.begin(), y.frag.gammas.end());
      merged.pi_halves += x.frag.pi_halves + y.frag.pi_halves;
      live.erase(live.begin() + static_cast<long>(inc[1]));
      live.erase(live.begin() + static_cast<long>(inc[0]));
      live.push_back({a, b, std::move(merged)});
      verts.erase(v);
      changed = true;
      break;
    }
  }
  if (verts.size() != 2 || live.size() != 1) return std::nullopt;
  ClosedFormAmplitude out = live.front().frag;
  out.canonicalize();
  return out;
}

ClosedFormAmplitude sp_reduce(const SPGraph& g, int d) {
  auto r = reduce_two_terminal(g.graph, g.rho, g.source, g.sink, d);
  if (!r) fail(Errc::NotSeriesParallel, "graph " + g.graph.to_string() + " does not reduce");
  return *r;
}

std::optional<std::pair<int, int>> piece_terminal_pair(const graph::Graph& g, const std::vector<Rational>& rho,
                                                       const std::vector<std::pair<int, int>>& preferred, int d) {
  for (auto [s, t] : preferred)
    if (reduce_two_terminal(g, rho, s, t, d)) return std::make_pair(s, t);
  std::vector<int> vs = g.vertices();
  std::sort(vs.begin(), vs.end());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (reduce_two_terminal(g, rho, vs[i], vs[j], d)) return std::make_pair(vs[i], vs[j]);
  return std::nullopt;
}

ClosedFormAmplitude reduce_piece(const graph::Graph& g, const std::vector<Rational>& rho,
                                 const std::vector<std::pair<int, int>>& preferred, int d,
                                 const std::string& label) {
  if (g.num_vertices() == 1) return ClosedFormAmplitude::unit_amplitude(d);
  if (!graph::is_connected(g)) fail(Errc::DisconnectedBlock, label + " is disconnected");
  auto st = piece_terminal_pair(g, rho, preferred, d);
  if (!st) fail(Errc::NotSeriesParallel, label + " " + g.to_string() + " is not series-parallel");
  return *reduce_two_terminal(g, rho, st->first, st->second, d);
}

// ---------------------------------------------------------------- pairing

Pairing evaluate_pairing(const ClosedFormAmplitude& cf, int order) {
  if (cf.unit) return {0, Series::one()};
  Rational h = frac(cf.d, 2);
  std::vector<GammaFactor> factors = cf.gammas;
  factors.push_back({Affine{h, 0} - cf.exponent, 1});
  factors.push_back({Affine{h, 0}, -1});
  int poles = 0;
  for (const auto& g : factors) {
    if (g.power == 1 && rigid_pole(g.arg))
      fail(Errc::RigidPole, "pairing needs Gamma(" + g.arg.to_string() + ")");
    if (g.power == 1 && is_integer(g.arg.c) && g.arg.c <= 0) ++poles;
  }
  int inner = order + poles;
  int symbols = std::clamp(inner + 2, 2, laurent::kMaxZetaIndex);
  Series s = Series::constant(Coeff::pi_power_halves(cf.pi_halves + cf.d));
  for (const auto& g : factors) s *= laurent::gamma_expand(g.arg.c, g.arg.k, inner, symbols, g.power);
  laurent::PowerExpansion tp = laurent::power_expand(cf.exponent.c - h, cf.exponent.k, inner);
  s *= tp.series;
  return {tp.exact_power, s.truncated(std::min(order, s.truncation()))};
}

double evaluate_numeric(const ClosedFormAmplitude& cf, double zeta, double t) {
  if (cf.unit) return 1.0;
  double h = cf.d / 2.0;
  double s = cf.exponent.at(zeta);
  double v = cf.prefactor(zeta) * std::pow(std::numbers::pi, h) * std::pow(t, s - h) * std::tgamma(h - s) /
             std::tgamma(h);
  if (!std::isfinite(v)) fail(Errc::NonFiniteResult, "closed form is not finite at zeta = " + std::to_string(zeta));
  return v;
}

// ---------------------------------------------------------------- pieces

namespace {

// Graph terminals inside `inside` together with the vertices joined to the
// rest of the graph.
std::vector<int> piece_terminals(const SPGraph& g, partition::Mask inside) {
  std::set<int> ts;
  auto in = [&](int v) { return (inside >> v) & 1u; };
  for (int v : {g.source, g.sink})
    if (in(v)) ts.insert(v);
  for (const auto& e : g.graph.edges()) {
    if (in(e.source) && !in(e.target)) ts.insert(e.source);
    if (in(e.target) && !in(e.source)) ts.insert(e.target);
  }
  return {ts.begin(), ts.end()};
}

}  // namespace

PieceGraph block_piece(const SPGraph& g, partition::Mask block) {
  graph::Subgraph sub = graph::full_vertex_part(g.graph, partition::elements(block));
  PieceGraph p{sub.as_graph(), {}, {}};
  for (auto e : sub.edges) p.rho.push_back(g.rho[e]);
  std::vector<int> ts = piece_terminals(g, block);
  if (ts.size() == 2) p.preferred.emplace_back(ts[0], ts[1]);
  return p;
}

PieceGraph quotient_piece(const SPGraph& g, const partition::Partition& part) {
  partition::Mask ground = part.ground();
  graph::Subgraph sub = graph::full_vertex_part(g.graph, partition::elements(ground));
  graph::Graph whole = sub.as_graph();
  PieceGraph p;
  // Rebase the partition on the subgraph (same vertex ids) and contract.
  p.graph = graph::contract(whole, part);
  auto block_no = [&](int v) {
    for (std::size_t i = 0; i < part.size(); ++i)
      if ((part.blocks()[i] >> v) & 1u) return static_cast<int>(i) + 1;
    return 0;
  };
  for (auto e : sub.edges) {
    const auto& ed = g.graph.edges()[e];
    if (block_no(ed.source) != block_no(ed.target)) p.rho.push_back(g.rho[e]);
  }
  std::vector<int> ts = piece_terminals(g, ground);
  if (ts.size() == 2) {
    int a = block_no(ts[0]), b = block_no(ts[1]);
    if (a == b)
      p.scaleless = part.size() > 1;
    else
      p.preferred.emplace_back(std::min(a, b), std::max(a, b));
  }
  return p;
}

bool ir_convergent(const graph::Graph& g, int s, int t, int d) {
  std::vector<int> inner;
  for (int v : g.vertices())
    if (v != s && v != t) inner.push_back(v);
  if (inner.size() > 20) fail(Errc::CapExceeded, "too many internal vertices for power counting");
  for (std::uint32_t bits = 1; bits < (1u << inner.size()); ++bits) {
    std::set<int> set;
    for (std::size_t i = 0; i < inner.size(); ++i)
      if ((bits >> i) & 1u) set.insert(inner[i]);
    long leaving = 0;
    for (const auto& e : g.edges()) leaving += set.count(e.source) != set.count(e.target);
    if ((d - 2) * leaving <= d * static_cast<long>(set.size())) return false;
  }
  return true;
}

bool ir_convergent(const PieceGraph& p, int d) {
  if (p.graph.num_vertices() == 1 || p.scaleless) return true;
  auto st = piece_terminal_pair(p.graph, p.rho, p.preferred, d);
  if (!st) fail(Errc::NotSeriesParallel, "piece " + p.graph.to_string() + " is not series-parallel");
  return ir_convergent(p.graph, st->first, st->second, d);
}

BlockAmplitudes block_amplitudes(const SPGraph& g, const partition::Partition& p, int d) {
  if (p.ground() != g.graph.vertex_mask()) fail(Errc::NotAPartition, "partition must cover the graph's vertices");
  BlockAmplitudes out;
  for (partition::Mask b : p.blocks()) {
    PieceGraph piece = block_piece(g, b);
    out.subs[b] = reduce_piece(piece.graph, piece.rho, piece.preferred, d, "block " + partition::mask_to_string(b));
  }
  PieceGraph q = quotient_piece(g, p);
  out.quotient_scaleless = q.scaleless;
  out.quotient = reduce_piece(q.graph, q.rho, q.preferred, d, "quotient by " + p.to_string());
  return out;
}

}  // namespace egren::amplitude
