#include "lnd/groebner.hpp"

#include <gtest/gtest.h>

#include <random>

#include "lnd/factor.hpp"
#include "lnd/parse.hpp"
#include "resultant_oracle.hpp"
#include "test_support.hpp"

namespace lnd {
namespace {

const Ring& uvx() {
  static const Ring r({"x", "v", "u"});
  return r;
}

const Ring& six() {
  static const Ring r({"z", "y", "x", "u3", "u2", "u1"});
  return r;
}

const MonomialOrder kSixOrder = MonomialOrder::lex({"u1", "u2", "u3", "x", "y", "z"});

std::vector<Poly> six_example() {
  return {parse_poly("x", six()), parse_poly("x - u1", six()), parse_poly("x*z - y^2 - u2", six()),
          parse_poly("y - u3", six())};
}

void expect_s_pairs_reduce(const GroebnerBasis& G) {
  const auto& g = G.generators();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      EXPECT_TRUE(normal_form(detail::s_polynomial(g[i], g[j]), G).is_zero()) << g[i] << " / " << g[j];
}

void expect_reduced(const GroebnerBasis& G) {
  const auto& g = G.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(g[i].leading_coeff(), 1);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : g[i].terms()) EXPECT_FALSE(divides(g[j].leading_term().exps, t.exps));
    }
  }
}

TEST(Buchberger, AlreadyBasis) {
  Ring r = Ring::xyz();
  auto G = buchberger({parse_poly("x", r), parse_poly("y", r)}, MonomialOrder::lex({"z", "y", "x"}));
  ASSERT_EQ(G.generators().size(), 2u);
  EXPECT_EQ(G.generators()[0].to_string(), "y");
  EXPECT_EQ(G.generators()[1].to_string(), "x");
}

TEST(Buchberger, SixVariableExample) {
  auto G = buchberger(six_example(), kSixOrder);
  std::vector<std::string> got;
  for (const auto& g : G.generators()) got.push_back(g.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"u1", "u3^2 + u2", "x", "y - u3"}));
  expect_reduced(G);
  expect_s_pairs_reduce(G);
  EXPECT_EQ(normal_form(Poly(six(), 1), G), Poly(six(), 1));
  for (const auto& g : six_example()) EXPECT_TRUE(normal_form(g, G).is_zero());
  // xz - y^2 is congruent to u2 modulo the ideal.
  EXPECT_EQ(normal_form(parse_poly("x*z - y^2", six()), G).to_string(), "u2");
}

TEST(Buchberger, TwistedCubic) {
  auto G = buchberger({parse_poly("x^2 - u", uvx()), parse_poly("x^3 - v", uvx())}, MonomialOrder::lex({"u", "v", "x"}));
  expect_reduced(G);
  expect_s_pairs_reduce(G);
  auto elim = eliminate({parse_poly("x^2 - u", uvx()), parse_poly("x^3 - v", uvx())}, {"u", "v"},
                        MonomialOrder::lex({"u", "v", "x"}));
  ASSERT_EQ(elim.size(), 1u);
  Poly expected = change_ring(parse_poly("v^2 - u^3", uvx()), elim[0].ring());
  EXPECT_TRUE(elim[0] == expected || elim[0] == -expected) << elim[0];
  // Resultant oracle.
  Poly res = testing::resultant(parse_poly("x^2 - u", uvx()), parse_poly("x^3 - v", uvx()), 0);
  EXPECT_EQ(normalize(res), normalize(parse_poly("v^2 - u^3", uvx())));
}

TEST(Eliminate, Examples) {
  auto g1 = eliminate(six_example(), {"u1", "u2", "u3"}, kSixOrder);
  ASSERT_EQ(g1.size(), 2u);
  EXPECT_EQ(g1[0].to_string(), "u1");
  EXPECT_EQ(g1[1].to_string(), "u3^2 + u2");

  Ring r({"x", "u1"});
  EXPECT_TRUE(eliminate({parse_poly("x - u1", r)}, {"u1"}, MonomialOrder::lex({"u1", "x"})).empty());
}

TEST(Eliminate, BlockMismatchThrows) {
  EXPECT_THROW(eliminate(six_example(), {"x"}, kSixOrder), std::invalid_argument);
  EXPECT_THROW(eliminate(six_example(), {"u1", "u3"}, kSixOrder), std::invalid_argument);
}

TEST(Buchberger, UnitIdeal) {
  Ring r = Ring::xyz();
  auto G = buchberger({parse_poly("x*y - 1", r), parse_poly("x", r)}, MonomialOrder::lex({"z", "y", "x"}));
  EXPECT_TRUE(G.is_unit_ideal());
  EXPECT_TRUE(normal_form(parse_poly("x^3*y + z", r), G).is_zero());
}

TEST(Buchberger, DeadlineThrows) {
  Deadline past = Clock::now() - std::chrono::seconds(1);
  EXPECT_THROW(buchberger(six_example(), kSixOrder, past), DeadlineExceeded);
}

TEST(Buchberger, RandomPropertiesIdempotenceMembership) {
  std::mt19937 rng(7);
  Ring r = Ring::xyz();
  MonomialOrder order = MonomialOrder::lex({"z", "y", "x"});
  int proper = 0;
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Poly> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(testing::random_nonzero_poly(rng, r, 3, 3, 3));
    auto G = buchberger(gens, order, deadline_after(20));
    if (!G.is_unit_ideal()) ++proper;
    expect_reduced(G);
    expect_s_pairs_reduce(G);
    EXPECT_EQ(buchberger(G.generators(), order), G);
    for (const auto& g : gens) EXPECT_TRUE(normal_form(g, G).is_zero());
    Poly combo(r);
    for (const auto& g : gens) combo += testing::random_poly(rng, r, 2, 3, 3) * g;
    EXPECT_TRUE(normal_form(combo, G).is_zero());
  }
  EXPECT_GT(proper, 5);
}

/// Elimination ideal of <p(x) - u, q(x) - v> equals the ideal of the
/// squarefree part of Res_x, checked by mutual normal forms.
bool elimination_matches_resultant(const Poly& p, const Poly& q) {
  const Ring& r = uvx();
  Poly a = p - Poly::variable(r, "u"), b = q - Poly::variable(r, "v");
  MonomialOrder order = MonomialOrder::lex({"u", "v", "x"});
  auto elim = eliminate({a, b}, {"u", "v"}, order);
  Poly res = testing::resultant(a, b, 0);
  Poly rad(r, 1);
  for (const auto& part : squarefree(res)) rad *= part.factor;
  auto Gelim = buchberger(elim, order);
  auto Grad = buchberger({rad}, order);
  if (!normal_form(rad, Gelim).is_zero()) return false;
  for (const auto& e : elim)
    if (!normal_form(e, Grad).is_zero()) return false;
  return !elim.empty();
}

TEST(Eliminate, AgreesWithResultantOracle) {
  std::mt19937 rng(11);
  Ring xr({"x"});
  int checked = 0;
  while (checked < 25) {
    Poly p = testing::random_poly(rng, xr, 3, 4, 4), q = testing::random_poly(rng, xr, 3, 4, 4);
    if (p.is_constant() || q.is_constant()) continue;
    Poly pe = change_ring(p, uvx()), qe = change_ring(q, uvx());
    EXPECT_TRUE(elimination_matches_resultant(pe, qe)) << p << " ; " << q;
    ++checked;
  }
}

}  // namespace
}  // namespace lnd
