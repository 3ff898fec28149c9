#pragma once

// Faa di Bruno Hopf algebra on the generators a_n, with the extra
// composition product and its antipode, scalar characters, and the
// graph-level coproduct.

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "egren/graph.hpp"
#include "egren/laurent.hpp"
#include "egren/partition.hpp"
#include "egren/rational.hpp"

namespace egren::hopf {

using laurent::Series;

// Basis word. Build words through the factory functions so that they stay
// in normal form.
struct Word {
  enum class Kind { Unit, Gen, Odot, Comp };
  Kind kind = Kind::Unit;
  int index = 1;               // n for a_n, k for the head a_k of a comp node
  std::vector<Word> children;  // Odot: sorted factors; Comp: k sorted factors, units kept

  bool operator==(const Word& o) const;
  bool operator<(const Word& o) const;
  std::string to_string() const;
};

Word unit();
// gen(1) is the unit.
Word gen(int n);
// Flattens, drops units, sorts.
Word odot(const std::vector<Word>& factors);
// Arity is checked against the head; all-unit children collapse to the head.
Word compose(int head, std::vector<Word> children);

// Number of inputs when the word is read as a map: a_n takes n.
int arity(const Word& w);

struct Grading {
  int deg_tensor = 0;
  int deg_vertex = 0;
  bool operator==(const Grading&) const = default;
};
Grading grading(const Word& w);

class Element {
 public:
  Element() = default;
  Element(const Word& w, const Rational& c = 1);  // NOLINT

  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Word& w) const;
  void add(const Word& w, const Rational& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);
  Element operator-() const;
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  bool operator==(const Element& o) const { return terms_ == o.terms_; }

  // Terms in word order, e.g. "-a4 - 15*odot(a2, a2, a2) + 10*odot(a2, a3)";
  // "0" when empty.
  std::string to_string() const;

 private:
  std::map<Word, Rational> terms_;
};

Element odot(const Element& a, const Element& b);
// Multilinear extension of the word-level compose; the head may be any
// element whose words have arity children.size().
Element compose(const Element& head, const std::vector<Element>& children);

using TensorSum = std::map<std::pair<Word, Word>, Rational>;
using TripleSum = std::map<std::array<Word, 3>, Rational>;

std::string to_string(const TensorSum& t);

// Integer partitions of n (parts non-increasing) with the number of set
// partitions of that shape.
struct Shape {
  std::vector<int> parts;
  Integer count;
};
std::vector<Shape> shapes(int n);

// n! / (prod l_i! prod m_l!), m_l the multiplicity of size l.
Integer fdb_coefficients(int n, const std::vector<int>& sizes);

TensorSum coproduct(const Element& x);
TensorSum coproduct(const Word& w);
// (Delta (x) id) Delta and (id (x) Delta) Delta.
TripleSum coproduct_left_iterated(const Element& x);
TripleSum coproduct_right_iterated(const Element& x);

Rational counit(const Element& x);
// (counit (x) id) and (id (x) counit) applied to a tensor.
Element counit_left(const TensorSum& t);
Element counit_right(const TensorSum& t);

Element antipode_A(const Word& w);
Element antipode_A(const Element& x);
Element antipode_AC(int n);

// Linear map given by its values on generators a_n, n >= 1.
using GeneratorMap = std::function<Element(int)>;
GeneratorMap identity_map();
GeneratorMap unit_counit_map();  // e o counit
GeneratorMap antipode_map();
GeneratorMap antipode_c_map();

enum class Product { Odot, Comp };
// (phi * psi)(a_n) = sum over partitions P of product(phi(a_|P|), odot_I psi(a_|I|)).
Element convolution(const GeneratorMap& phi, const GeneratorMap& psi, Product product, int n);

// Scalar Feynman rules: rules[n] is the value of a_n; rules[1] must be one.
using Rules = std::map<int, Series>;
Rules uniform_rules(int n, const Series& value);

enum class CharacterMode {
  Plain,           // both products become the series product
  MsCounterterm,   // pp at every node, for words in the image of A_C
  MsRenormalized,  // feyn bullet_C A_{C,MS} on generators
};
Series evaluate_character(const Element& x, const Rules& rules, CharacterMode mode);

// A_{C,MS}(a_k) for k = 1..n, from the words A_C(a_k).
std::vector<Series> counterterms(const Rules& rules, int n);

// R(a)R(b) - R(R(a)b) - R(aR(b)) + R(ab) with R = pp.
Series rota_baxter_defect(const Series& a, const Series& b);

struct GraphCoproductTerm {
  partition::Partition partition;
  graph::Graph quotient;
  std::vector<graph::Subgraph> blocks;
  int multiplicity = 1;
};
std::vector<GraphCoproductTerm> graph_coproduct(const graph::Graph& g);

}  // namespace egren::hopf
