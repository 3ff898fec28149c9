#include "egren/hopf.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "egren/error.hpp"
#include "egren/zforest.hpp"

namespace egren::hopf {

using laurent::Coeff;

namespace {

int compare(const Word& a, const Word& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.index != b.index) return a.index < b.index ? -1 : 1;
  std::size_t n = std::min(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(a.children[i], b.children[i])) return c;
  if (a.children.size() != b.children.size()) return a.children.size() < b.children.size() ? -1 : 1;
  return 0;
}

Integer factorial(int n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::string coeff_string(const Rational& c) {
  if (is_integer(c)) return c.get_num().get_str();
  return egren::to_string(c);
}

template <class Key>
void add_to(std::map<Key, Rational>& m, const Key& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

// Expands a product of elements into ordered lists of words.
std::map<std::vector<Word>, Rational> expand(const std::vector<Element>& factors) {
  std::map<std::vector<Word>, Rational> acc{{{}, Rational(1)}};
  for (const auto& f : factors) {
    std::map<std::vector<Word>, Rational> next;
    for (const auto& [words, c] : acc)
      for (const auto& [w, d] : f.terms()) {
        auto ws = words;
        ws.push_back(w);
        add_to(next, ws, c * d);
      }
    acc = std::move(next);
  }
  return acc;
}

Word compose_word(const Word& head, std::vector<Word> children) {
  if (arity(head) != static_cast<int>(children.size()))
    fail(Errc::ArityMismatch, "cannot compose " + head.to_string() + " with " + std::to_string(children.size()) +
                                  " factors");
  std::sort(children.begin(), children.end());
  switch (head.kind) {
    case Word::Kind::Unit:
      return children[0];
    case Word::Kind::Gen:
      return compose(head.index, std::move(children));
    case Word::Kind::Comp:
    case Word::Kind::Odot: {
      std::vector<Word> parts;
      std::size_t pos = 0;
      for (const auto& c : head.children) {
        auto k = static_cast<std::size_t>(arity(c));
        std::vector<Word> slice(children.begin() + static_cast<long>(pos), children.begin() + static_cast<long>(pos + k));
        pos += k;
        parts.push_back(compose_word(c, std::move(slice)));
      }
      if (head.kind == Word::Kind::Odot) return odot(parts);
      return compose(head.index, std::move(parts));
    }
  }
  return head;
}

TensorSum multiply(const TensorSum& a, const TensorSum& b) {
  TensorSum out;
  for (const auto& [x, c] : a)
    for (const auto& [y, d] : b)
      add_to(out, std::pair{odot({x.first, y.first}), odot({x.second, y.second})}, c * d);
  return out;
}

const Series& rule(const Rules& rules, int n) {
  auto it = rules.find(n);
  if (it == rules.end()) fail(Errc::MissingRule, "no rule for a" + std::to_string(n));
  return it->second;
}

void check_rules(const Rules& rules) {
  auto it = rules.find(1);
  if (it != rules.end() && !(it->second == Series::one()))
    fail(Errc::ParamDomain, "the rule for a1 must be the unit series");
}

}  // namespace

bool Word::operator==(const Word& o) const { return compare(*this, o) == 0; }
bool Word::operator<(const Word& o) const { return compare(*this, o) < 0; }

std::string Word::to_string() const {
  switch (kind) {
    case Kind::Unit:
      return "one";
    case Kind::Gen:
      return "a" + std::to_string(index);
    case Kind::Odot:
    case Kind::Comp: {
      std::string inner;
      for (std::size_t i = 0; i < children.size(); ++i) inner += (i ? ", " : "") + children[i].to_string();
      if (kind == Kind::Odot) return "odot(" + inner + ")";
      return "comp(a" + std::to_string(index) + ", odot(" + inner + "))";
    }
  }
  return {};
}

Word unit() { return Word{}; }

Word gen(int n) {
  if (n < 1) fail(Errc::ParamDomain, "generator index must be positive, got " + std::to_string(n));
  if (n == 1) return unit();
  return Word{Word::Kind::Gen, n, {}};
}

Word odot(const std::vector<Word>& factors) {
  std::vector<Word> flat;
  for (const auto& f : factors) {
    if (f.kind == Word::Kind::Unit) continue;
    if (f.kind == Word::Kind::Odot)
      flat.insert(flat.end(), f.children.begin(), f.children.end());
    else
      flat.push_back(f);
  }
  if (flat.empty()) return unit();
  if (flat.size() == 1) return flat[0];
  std::sort(flat.begin(), flat.end());
  return Word{Word::Kind::Odot, 0, std::move(flat)};
}

Word compose(int head, std::vector<Word> children) {
  if (head < 1) fail(Errc::ParamDomain, "composition head must be a generator");
  if (static_cast<int>(children.size()) != head)
    fail(Errc::ArityMismatch, "a" + std::to_string(head) + " takes " + std::to_string(head) + " factors, got " +
                                  std::to_string(children.size()));
  if (head == 1) return children[0];
  bool all_unit = std::all_of(children.begin(), children.end(), [](const Word& w) { return w.kind == Word::Kind::Unit; });
  if (all_unit) return gen(head);
  std::sort(children.begin(), children.end());
  return Word{Word::Kind::Comp, head, std::move(children)};
}

int arity(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Unit:
      return 1;
    case Word::Kind::Gen:
      return w.index;
    case Word::Kind::Odot:
    case Word::Kind::Comp: {
      int s = 0;
      for (const auto& c : w.children) s += arity(c);
      return s;
    }
  }
  return 0;
}

Grading grading(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Unit:
      return {0, 0};
    case Word::Kind::Gen:
      return {1, w.index - 1};
    case Word::Kind::Odot: {
      Grading g;
      for (const auto& c : w.children) {
        Grading h = grading(c);
        g.deg_tensor += h.deg_tensor;
        g.deg_vertex += h.deg_vertex;
      }
      return g;
    }
    case Word::Kind::Comp: {
      int v = w.index - 1;
      for (const auto& c : w.children) v += grading(c).deg_vertex;
      return {1, v};
    }
  }
  return {};
}

Element::Element(const Word& w, const Rational& c) { add(w, c); }

Rational Element::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add(const Word& w, const Rational& c) { add_to(terms_, w, c); }

Element& Element::operator+=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, d] : terms_) d *= c;
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  return r *= Rational(-1);
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational a = abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    if (a != 1) out += coeff_string(a) + "*";
    out += w.to_string();
  }
  return out;
}

Element odot(const Element& a, const Element& b) {
  Element out;
  for (const auto& [x, c] : a.terms())
    for (const auto& [y, d] : b.terms()) out.add(odot({x, y}), c * d);
  return out;
}

Element compose(const Element& head, const std::vector<Element>& children) {
  Element out;
  auto expanded = expand(children);
  for (const auto& [h, c] : head.terms())
    for (const auto& [words, d] : expanded) out.add(compose_word(h, words), c * d);
  return out;
}

std::string to_string(const TensorSum& t) {
  if (t.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, c] : t) {
    Rational a = abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    if (a != 1) out += coeff_string(a) + "*";
    out += "tensor(" + p.first.to_string() + ", " + p.second.to_string() + ")";
  }
  return out;
}

std::vector<Shape> shapes(int n) {
  if (n < 1) fail(Errc::ParamDomain, "shapes need n >= 1");
  std::vector<Shape> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      out.push_back({parts, fdb_coefficients(n, parts)});
      return;
    }
    for (int l = std::min(rest, max_part); l >= 1; --l) {
      parts.push_back(l);
      rec(rest - l, l);
      parts.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Integer fdb_coefficients(int n, const std::vector<int>& sizes) {
  int sum = 0;
  for (int l : sizes) {
    if (l < 1) fail(Errc::ShapeMismatch, "block sizes must be positive");
    sum += l;
  }
  if (sum != n || n < 1)
    fail(Errc::ShapeMismatch, "block sizes sum to " + std::to_string(sum) + ", expected " + std::to_string(n));
  Integer den = 1;
  std::map<int, int> mult;
  for (int l : sizes) {
    den *= factorial(l);
    ++mult[l];
  }
  for (const auto& [l, m] : mult) den *= factorial(m);
  return factorial(n) / den;
}

TensorSum coproduct(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Unit:
      return {{{unit(), unit()}, Rational(1)}};
    case Word::Kind::Gen: {
      TensorSum out;
      for (const auto& s : shapes(w.index)) {
        std::vector<Word> right;
        for (int l : s.parts) right.push_back(gen(l));
        add_to(out, std::pair{gen(static_cast<int>(s.parts.size())), odot(right)}, Rational(s.count));
      }
      return out;
    }
    case Word::Kind::Odot: {
      TensorSum out = coproduct(unit());
      for (const auto& c : w.children) out = multiply(out, coproduct(c));
      return out;
    }
    case Word::Kind::Comp:
      fail(Errc::CompNotSupported, "coproduct is defined on the odot-algebra only: " + w.to_string());
  }
  return {};
}

TensorSum coproduct(const Element& x) {
  TensorSum out;
  for (const auto& [w, c] : x.terms())
    for (const auto& [p, d] : coproduct(w)) add_to(out, p, c * d);
  return out;
}

TripleSum coproduct_left_iterated(const Element& x) {
  TripleSum out;
  for (const auto& [p, c] : coproduct(x))
    for (const auto& [q, d] : coproduct(p.first)) add_to(out, std::array{q.first, q.second, p.second}, c * d);
  return out;
}

TripleSum coproduct_right_iterated(const Element& x) {
  TripleSum out;
  for (const auto& [p, c] : coproduct(x))
    for (const auto& [q, d] : coproduct(p.second)) add_to(out, std::array{p.first, q.first, q.second}, c * d);
  return out;
}

Rational counit(const Element& x) { return x.coefficient(unit()); }

Element counit_left(const TensorSum& t) {
  Element out;
  for (const auto& [p, c] : t)
    if (p.first.kind == Word::Kind::Unit) out.add(p.second, c);
  return out;
}

Element counit_right(const TensorSum& t) {
  Element out;
  for (const auto& [p, c] : t)
    if (p.second.kind == Word::Kind::Unit) out.add(p.first, c);
  return out;
}

namespace {

std::mutex memo_mu;
std::map<int, Element> memo_a;
std::map<int, Element> memo_ac;

Element antipode_generator(int n) {
  {
    std::lock_guard lock(memo_mu);
    if (auto it = memo_a.find(n); it != memo_a.end()) return it->second;
  }
  Element sum;
  for (const auto& s : shapes(n)) {
    if (s.parts.size() == 1) continue;
    Element term(gen(static_cast<int>(s.parts.size())), Rational(s.count));
    for (int l : s.parts) term = odot(term, antipode_A(gen(l)));
    sum += term;
  }
  sum *= Rational(-1);
  std::lock_guard lock(memo_mu);
  memo_a.emplace(n, sum);
  return sum;
}

}  // namespace

Element antipode_A(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Unit:
      return Element(unit());
    case Word::Kind::Gen:
      return antipode_generator(w.index);
    case Word::Kind::Odot: {
      Element out(unit());
      for (const auto& c : w.children) out = odot(out, antipode_A(c));
      return out;
    }
    case Word::Kind::Comp:
      fail(Errc::CompNotSupported, "antipode_A is defined on the odot-algebra only: " + w.to_string());
  }
  return {};
}

Element antipode_A(const Element& x) {
  Element out;
  for (const auto& [w, c] : x.terms()) out += c * antipode_A(w);
  return out;
}

Element antipode_AC(int n) {
  if (n < 1) fail(Errc::ParamDomain, "antipode_AC needs n >= 1");
  if (n == 1) return Element(unit());
  {
    std::lock_guard lock(memo_mu);
    if (auto it = memo_ac.find(n); it != memo_ac.end()) return it->second;
  }
  Element sum;
  for (const auto& s : shapes(n)) {
    if (s.parts.size() == 1) continue;
    std::vector<Element> children;
    for (int l : s.parts) children.push_back(antipode_AC(l));
    sum += Rational(s.count) * compose(Element(gen(static_cast<int>(s.parts.size()))), children);
  }
  sum *= Rational(-1);
  std::lock_guard lock(memo_mu);
  memo_ac.emplace(n, sum);
  return sum;
}

GeneratorMap identity_map() {
  return [](int n) { return Element(gen(n)); };
}

GeneratorMap unit_counit_map() {
  return [](int n) { return n == 1 ? Element(unit()) : Element(); };
}

GeneratorMap antipode_map() {
  return [](int n) { return antipode_A(gen(n)); };
}

GeneratorMap antipode_c_map() {
  return [](int n) { return antipode_AC(n); };
}

Element convolution(const GeneratorMap& phi, const GeneratorMap& psi, Product product, int n) {
  Element out;
  for (const auto& s : shapes(n)) {
    Element head = phi(static_cast<int>(s.parts.size()));
    std::vector<Element> children;
    for (int l : s.parts) children.push_back(psi(l));
    Element term;
    if (product == Product::Comp) {
      term = compose(head, children);
    } else {
      term = head;
      for (const auto& c : children) term = odot(term, c);
    }
    out += Rational(s.count) * term;
  }
  return out;
}

Rules uniform_rules(int n, const Series& value) {
  Rules r{{1, Series::one()}};
  for (int k = 2; k <= n; ++k) r[k] = value;
  return r;
}

namespace {

Series evaluate_word(const Word& w, const Rules& rules, CharacterMode mode, const std::vector<Series>& z) {
  switch (w.kind) {
    case Word::Kind::Unit:
      return Series::one();
    case Word::Kind::Gen:
      if (mode == CharacterMode::Plain) return rule(rules, w.index);
      if (mode == CharacterMode::MsCounterterm) return pp(rule(rules, w.index));
      {
        Series sum;
        for (const auto& s : shapes(w.index)) {
          Series term = rule(rules, static_cast<int>(s.parts.size()));
          for (int l : s.parts) term *= z[static_cast<std::size_t>(l) - 1];
          sum += term.scaled(Coeff(Rational(s.count)));
        }
        return sum;
      }
    case Word::Kind::Odot: {
      Series out = Series::one();
      for (const auto& c : w.children) out *= evaluate_word(c, rules, mode, z);
      return out;
    }
    case Word::Kind::Comp: {
      Series out = mode == CharacterMode::MsRenormalized ? evaluate_word(gen(w.index), rules, mode, z)
                                                         : rule(rules, w.index);
      for (const auto& c : w.children) out *= evaluate_word(c, rules, mode, z);
      return mode == CharacterMode::MsCounterterm ? pp(out) : out;
    }
  }
  return {};
}

int max_generator(const Word& w) {
  int m = w.kind == Word::Kind::Unit ? 1 : w.index;
  for (const auto& c : w.children) m = std::max(m, max_generator(c));
  return m;
}

}  // namespace

Series evaluate_character(const Element& x, const Rules& rules, CharacterMode mode) {
  check_rules(rules);
  std::vector<Series> z;
  if (mode == CharacterMode::MsRenormalized) {
    int m = 1;
    for (const auto& [w, c] : x.terms()) m = std::max(m, max_generator(w));
    z = counterterms(rules, m);
  }
  Series out;
  for (const auto& [w, c] : x.terms()) out += evaluate_word(w, rules, mode, z).scaled(Coeff(c));
  return out;
}

std::vector<Series> counterterms(const Rules& rules, int n) {
  check_rules(rules);
  std::vector<Series> z{Series::one()};
  for (int k = 2; k <= n; ++k) z.push_back(evaluate_character(antipode_AC(k), rules, CharacterMode::MsCounterterm));
  return z;
}

Series rota_baxter_defect(const Series& a, const Series& b) {
  Series ra = pp(a), rb = pp(b);
  return ra * rb - pp(ra * b) - pp(a * rb) + pp(a * b);
}

std::vector<GraphCoproductTerm> graph_coproduct(const graph::Graph& g) {
  std::vector<GraphCoproductTerm> out;
  for (auto& p : zforest::connected_partitions(g)) {
    GraphCoproductTerm t{p, graph::contract(g, p), {}, 1};
    for (partition::Mask b : p.blocks()) t.blocks.push_back(graph::full_vertex_part(g, partition::elements(b)));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace egren::hopf
