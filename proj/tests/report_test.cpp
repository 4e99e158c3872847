#include "lnd/report.hpp"

#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "test_support.hpp"

namespace lnd {
namespace {

using report::json;
using testing::P;

// Serializes to text and back, so the test covers the printer and parser too.
json through_text(const json& j) { return json::parse(j.dump()); }

void expect_same(const LocalSlice& a, const LocalSlice& b) {
  EXPECT_EQ(a.s, b.s);
  EXPECT_EQ(a.value, b.value);
}

void expect_same(const std::vector<ReductionRecord>& a, const std::vector<ReductionRecord>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].prime, b[i].prime);
    EXPECT_EQ(a[i].success, b[i].success);
    EXPECT_EQ(a[i].a_abstract, b[i].a_abstract);
    EXPECT_EQ(a[i].a, b[i].a);
    EXPECT_EQ(a[i].quotient, b[i].quotient);
  }
}

void expect_same(const PlinthCertificate& a, const PlinthCertificate& b) {
  expect_same(a.initial, b.initial);
  expect_same(a.slice, b.slice);
  EXPECT_EQ(a.generator, b.generator);
  expect_same(a.trail, b.trail);
  expect_same(a.minimality, b.minimality);
}

void expect_same(const Automorphism2& a, const Automorphism2& b) {
  EXPECT_EQ(a.ring(), b.ring());
  ASSERT_EQ(a.steps().size(), b.steps().size());
  for (std::size_t i = 0; i < a.steps().size(); ++i) {
    const auto &s = a.steps()[i], &t = b.steps()[i];
    ASSERT_EQ(s.index(), t.index());
    if (const auto* l = std::get_if<LinearStep>(&s)) {
      const auto& m = std::get<LinearStep>(t);
      EXPECT_TRUE(l->m11 == m.m11 && l->m12 == m.m12 && l->m21 == m.m21 && l->m22 == m.m22 && l->t1 == m.t1 &&
                  l->t2 == m.t2);
    } else {
      EXPECT_EQ(std::get<ElementaryStep>(s).swapped, std::get<ElementaryStep>(t).swapped);
      EXPECT_EQ(std::get<ElementaryStep>(s).h, std::get<ElementaryStep>(t).h);
    }
  }
}

void expect_same(const CoordinateCertificate& a, const CoordinateCertificate& b) {
  EXPECT_EQ(a.is_coordinate, b.is_coordinate);
  expect_same(a.witness, b.witness);
  EXPECT_EQ(a.complement, b.complement);
  EXPECT_EQ(a.rejection, b.rejection);
}

void expect_same(const std::vector<RejectedCandidate>& a, const std::vector<RejectedCandidate>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].candidate, b[i].candidate);
    EXPECT_EQ(a[i].reason, b[i].reason);
    EXPECT_EQ(a[i].detail, b[i].detail);
  }
}

void expect_same(const RankReport& a, const RankReport& b) {
  EXPECT_EQ(a.rank, b.rank);
  EXPECT_EQ(a.content, b.content);
  EXPECT_EQ(a.reduced, b.reduced);
  expect_same(a.plinth, b.plinth);
  EXPECT_EQ(a.generator_abstract, b.generator_abstract);
  ASSERT_EQ(a.witness.index(), b.witness.index());
  if (const auto* s = std::get_if<SliceWitness>(&a.witness)) {
    EXPECT_EQ(s->s, std::get<SliceWitness>(b.witness).s);
  } else if (const auto* t = std::get_if<RankTwoWitness>(&a.witness)) {
    const auto& u = std::get<RankTwoWitness>(b.witness);
    EXPECT_EQ(t->inner_abstract, u.inner_abstract);
    EXPECT_EQ(t->inner, u.inner);
    EXPECT_EQ(t->outer, u.outer);
    expect_same(t->certificate, u.certificate);
  } else {
    expect_same(std::get<RankThreeWitness>(a.witness).log, std::get<RankThreeWitness>(b.witness).log);
  }
}

TEST(Report, RankReportsRoundTripOverCorpus) {
  auto corpus = testing::base_corpus();
  auto lin = testing::corpus_automorphisms()[2].second;  // rational coefficients
  for (const auto& e : testing::base_corpus())
    if (e.rank < 3) corpus.push_back(testing::conjugate(e, lin, "lin"));
  for (const auto& e : corpus) {
    SCOPED_TRACE(e.name);
    auto r = compute_rank(e.d, e.kp);
    json j = through_text(report::encode(r));
    expect_same(r, report::decode_rank(j));
    EXPECT_EQ(j.dump(), report::encode(report::decode_rank(j)).dump());
  }
}

TEST(Report, FactorizationRoundTrip) {
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    Poly p = testing::random_nonzero_poly(rng, Ring::xyz(), 3, 4) * testing::random_nonzero_poly(rng, Ring::xyz(), 2, 3);
    if (p.is_constant()) continue;
    p = p.scaled(Rational(3, 7));
    auto f = factor_multi(p);
    auto g = report::decode_factorization(through_text(report::encode(f)), Ring::xyz());
    EXPECT_EQ(f.unit, g.unit);
    EXPECT_EQ(f.factors, g.factors);
  }
}

TEST(Report, GroebnerRoundTrip) {
  auto o = MonomialOrder::lex({"u1", "u2", "u3", "x", "y", "z"});
  auto p = [&](const char* s) { return parse_poly(s, o.ring()); };
  auto g = buchberger({p("x"), p("x - u1"), p("x*z - y^2 - u2"), p("y - u3")}, o);
  EXPECT_EQ(report::decode_groebner(through_text(report::encode(g))), g);
  EXPECT_EQ(report::parse_order("lex:a,b,c").precedence, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_THROW(report::parse_order("grevlex:a,b"), std::invalid_argument);
  EXPECT_THROW(report::parse_order("lex:a,,b"), std::invalid_argument);
}

TEST(Report, DecompositionAndCoordinateRoundTrip) {
  Ring r({"x", "y"});
  for (const char* s : {"(y + x^2)^3 + 2*(y + x^2)", "x*y", "x^2 + y^3", "1/2*x + 3*y - 1"}) {
    SCOPED_TRACE(s);
    Poly c = parse_poly(s, r);
    auto d = uni_multivariate_decompose(c);
    auto back = report::decode_decomposition(through_text(report::encode(d)), r);
    EXPECT_EQ(back.found, d.found);
    EXPECT_EQ(back.inner, d.inner);
    EXPECT_EQ(back.outer, d.outer);
    EXPECT_EQ(back.certificate.has_value(), d.certificate.has_value());
    if (d.certificate) expect_same(*d.certificate, *back.certificate);
    expect_same(d.candidates_tried, back.candidates_tried);

    auto cert = coordinate_test(c);
    expect_same(cert, report::decode_certificate(through_text(report::encode(cert))));
  }
}

TEST(Report, Determinism) {
  auto e = testing::base_corpus()[3];
  EXPECT_EQ(report::encode(compute_rank(e.d, e.kp)).dump(), report::encode(compute_rank(e.d, e.kp)).dump());
}

}  // namespace
}  // namespace lnd
