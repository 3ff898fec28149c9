#include <gtest/gtest.h>

#include "egren/error.hpp"
#include "egren/hopf.hpp"
#include "egren/renorm.hpp"
#include "egren/zforest.hpp"
#include "oracles.hpp"

using namespace egren;
using namespace egren::hopf;
using laurent::Coeff;

namespace {

Series z(int p, long c = 1) { return Series::monomial(p, Coeff(Rational(c))); }

Element gen_e(int n) { return Element(gen(n)); }

Rules random_rules(oracle::Rng& rng, int n, std::vector<Series>& f) {
  Rules r;
  f = {Series::one()};
  r[1] = Series::one();
  for (int k = 2; k <= n; ++k) {
    r[k] = oracle::random_series(rng, -3, 2, true);
    f.push_back(r[k]);
  }
  return r;
}

}  // namespace

TEST(Words, Grading) {
  EXPECT_EQ(grading(gen(3)), (Grading{1, 2}));
  EXPECT_EQ(grading(odot({gen(2), gen(2)})), (Grading{2, 2}));
  EXPECT_EQ(grading(compose(2, {gen(2), unit()})).deg_vertex, 2);
}

TEST(Words, ComposeRules) {
  EXPECT_EQ(compose(1, {gen(3)}), gen(3));
  EXPECT_EQ(compose(2, {unit(), unit()}), gen(2));
  EXPECT_EQ(compose(2, {gen(2), unit()}).kind, Word::Kind::Comp);
  EXPECT_THROW(compose(2, {gen(2)}), Error);
  EXPECT_EQ(odot({unit(), gen(2)}), gen(2));
  EXPECT_EQ(odot({gen(3), gen(2)}), odot({gen(2), gen(3)}));
}

TEST(FaaDiBruno, Coefficients) {
  EXPECT_EQ(fdb_coefficients(4, {2, 1, 1}), 6);
  EXPECT_EQ(fdb_coefficients(3, {2, 1}), 3);
  EXPECT_EQ(fdb_coefficients(5, {1, 1, 1, 1, 1}), 1);
  for (int n = 1; n <= 8; ++n) {
    Integer total = 0;
    for (const auto& s : shapes(n)) {
      EXPECT_EQ(s.count, fdb_coefficients(n, s.parts));
      total += s.count;
    }
    EXPECT_EQ(total, Integer(static_cast<unsigned long>(partition::bell_number(n))));
  }
}

TEST(Coproduct, Examples) {
  TensorSum d2 = coproduct(gen(2));
  EXPECT_EQ(d2.size(), 2u);
  EXPECT_EQ(d2.at({gen(2), unit()}), 1);
  EXPECT_EQ(d2.at({unit(), gen(2)}), 1);
  TensorSum d3 = coproduct(gen(3));
  EXPECT_EQ(d3.size(), 3u);
  EXPECT_EQ(d3.at({gen(2), gen(2)}), 3);
}

TEST(Coproduct, GradingPreserved) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& [pair, c] : coproduct(gen(n)))
      EXPECT_EQ(grading(pair.first).deg_vertex + grading(pair.second).deg_vertex, n - 1);
}

TEST(Coproduct, CoassociativeAndCounital) {
  std::vector<Element> xs;
  for (int n = 1; n <= 6; ++n) xs.push_back(gen_e(n));
  xs.push_back(Element(odot({gen(2), gen(3)})));
  xs.push_back(Element(odot({gen(2), gen(2), gen(2)})));
  for (const auto& x : xs) {
    EXPECT_EQ(coproduct_left_iterated(x), coproduct_right_iterated(x)) << x.to_string();
    EXPECT_EQ(counit_left(coproduct(x)), x) << x.to_string();
    EXPECT_EQ(counit_right(coproduct(x)), x) << x.to_string();
  }
}

TEST(Antipode, Examples) {
  EXPECT_EQ(antipode_A(gen(2)), -gen_e(2));
  EXPECT_EQ(antipode_A(gen(3)), -gen_e(3) + Rational(3) * Element(odot({gen(2), gen(2)})));
  Element a4 = antipode_A(gen(4));
  Element expected =
      -gen_e(4) + Rational(10) * Element(odot({gen(2), gen(3)})) - Rational(15) * Element(odot({gen(2), gen(2), gen(2)}));
  EXPECT_EQ(a4, expected);
  EXPECT_EQ(a4.to_string(), "-a4 - 15*odot(a2, a2, a2) + 10*odot(a2, a3)");
}

TEST(Antipode, ConvolutionInverse) {
  for (int n = 1; n <= 6; ++n) {
    Element e = unit_counit_map()(n);
    EXPECT_EQ(convolution(identity_map(), antipode_map(), Product::Odot, n), e) << n;
    EXPECT_EQ(convolution(antipode_map(), identity_map(), Product::Odot, n), e) << n;
  }
}

TEST(CompositionAntipode, Examples) {
  EXPECT_EQ(antipode_AC(2), -gen_e(2));
  Element a3 = -gen_e(3) + Rational(3) * Element(compose(2, {gen(2), unit()}));
  EXPECT_EQ(antipode_AC(3), a3);
  EXPECT_NE(antipode_AC(3), antipode_A(gen(3)));
}

TEST(CompositionAntipode, RightInverse) {
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(convolution(identity_map(), antipode_c_map(), Product::Comp, n), unit_counit_map()(n)) << n;
}

TEST(CompositionAntipode, NotALeftInverseFromFourOn) {
  for (int n = 1; n <= 3; ++n)
    EXPECT_EQ(convolution(antipode_c_map(), identity_map(), Product::Comp, n), unit_counit_map()(n)) << n;
  EXPECT_FALSE(convolution(antipode_c_map(), identity_map(), Product::Comp, 4).is_zero());
}

TEST(CompositionProduct, UnitLaws) {
  for (int k = 1; k <= 5; ++k) {
    EXPECT_EQ(convolution(unit_counit_map(), antipode_map(), Product::Comp, k), antipode_map()(k)) << k;
    EXPECT_EQ(convolution(antipode_c_map(), unit_counit_map(), Product::Comp, k), antipode_c_map()(k)) << k;
  }
}

TEST(Characters, CountertermsMatchRenorm) {
  auto rules = uniform_rules(5, z(-1));
  auto zs = counterterms(rules, 5);
  auto toy = renorm::ScalarToy::uniform(5, z(-1));
  auto expected = renorm::scalar_counterterms(toy.values());
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(zs[k - 1], expected[k - 1]) << k;

  oracle::Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    std::vector<Series> f;
    Rules r = random_rules(rng, 5, f);
    auto a = counterterms(r, 5);
    auto table = renorm::bph_counterterms(renorm::ScalarToy(f));
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(a[k - 1], table.at(partition::ground_mask(k))) << i << " " << k;
  }
}

TEST(Characters, RenormalizedValueIsTheForestFormula) {
  auto rules = uniform_rules(3, z(-1));
  EXPECT_TRUE(evaluate_character(gen_e(3), rules, CharacterMode::MsRenormalized).is_zero());
  oracle::Rng rng(78);
  for (int i = 0; i < 10; ++i) {
    std::vector<Series> f;
    int n = 2 + i % 4;
    Rules r = random_rules(rng, n, f);
    EXPECT_EQ(evaluate_character(gen_e(n), r, CharacterMode::MsRenormalized),
              renorm::forest_formula(renorm::ScalarToy(f)));
  }
}

TEST(Characters, PlainIsMultiplicative) {
  auto rules = uniform_rules(4, z(-1) + z(0, 2));
  Series a = evaluate_character(Element(odot({gen(2), gen(3)})), rules, CharacterMode::Plain);
  EXPECT_EQ(a, rules[2] * rules[3]);
  EXPECT_THROW(evaluate_character(gen_e(6), rules, CharacterMode::Plain), Error);
}

TEST(RotaBaxter, PrincipalPartIsWeightOne) {
  oracle::Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    Series a = oracle::random_series(rng, -3, 3, true);
    Series b = oracle::random_series(rng, -3, 3, true);
    EXPECT_TRUE(rota_baxter_defect(a, b).is_zero());
  }
}

TEST(GraphCoproduct, Examples) {
  auto edge = graph::build_graph({1, 2}, {{1, 2}});
  EXPECT_EQ(graph_coproduct(edge).size(), 2u);
  auto nested = graph::build_graph({1, 2, 3}, {{1, 2}, {1, 2}, {2, 3}, {1, 3}});
  auto terms = graph_coproduct(nested);
  EXPECT_EQ(terms.size(), zforest::connected_partitions(nested).size());
  bool found = false;
  for (const auto& t : terms)
    if (t.partition.size() == 2 && t.quotient.num_edges() == 2 && t.blocks.size() == 2)
      for (const auto& b : t.blocks) found = found || b.edges.size() == 2;
  EXPECT_TRUE(found);
}
