#include "lnd/plinth.hpp"

#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "test_support.hpp"

namespace lnd {
namespace {

using testing::P;

Derivation D(const char* a1, const char* a2, const char* a3) { return Derivation(P(a1), P(a2), P(a3)); }

const KernelPair kStd{P("x"), P("x*z - y^2")};

TEST(ReductionStep, FailsForStandardSlice) {
  auto rec = reduction_step(D("0", "x", "2*y"), kStd, P("y"), P("x"));
  EXPECT_FALSE(rec.success);
  EXPECT_EQ(rec.prime, P("x"));
}

TEST(ReductionStep, SucceedsWithZeroKernelPart) {
  auto rec = reduction_step(D("0", "x", "2*y"), kStd, P("x*y"), P("x"));
  ASSERT_TRUE(rec.success);
  EXPECT_TRUE(rec.a->is_zero());
  EXPECT_EQ(*rec.quotient, P("y"));
}

TEST(ReductionStep, NeedsKernelCorrection) {
  // s = x*y + (x*z - y^2) + 1: subtracting a(f, g) = g + 1 leaves x*y.
  auto rec = reduction_step(D("0", "x", "2*y"), kStd, P("x*y + x*z - y^2 + 1"), P("x"));
  ASSERT_TRUE(rec.success);
  EXPECT_EQ(*rec.quotient * P("x"), P("x*y + x*z - y^2 + 1") + *rec.a);
  EXPECT_EQ(*rec.quotient, P("y"));
}

TEST(MinimalLocalSlice, Examples) {
  auto c1 = minimal_local_slice(D("0", "x", "2*y"), kStd);
  EXPECT_EQ(c1.slice.s, P("y"));
  EXPECT_EQ(c1.generator, P("x"));
  ASSERT_EQ(c1.trail.size(), 1u);
  EXPECT_FALSE(c1.trail[0].success);
  ASSERT_EQ(c1.minimality.size(), 1u);

  auto c2 = minimal_local_slice(D("0", "0", "1"), {P("x"), P("y")});
  EXPECT_EQ(c2.slice.s, P("z"));
  EXPECT_EQ(c2.generator, P("1"));
  EXPECT_TRUE(c2.trail.empty());

  auto c3 = minimal_local_slice(D("0", "x^2", "2*y"), {P("x"), P("x^2*z - y^2")});
  EXPECT_EQ(c3.slice.s, P("y"));
  EXPECT_EQ(c3.generator, P("x^2"));
  ASSERT_EQ(c3.trail.size(), 1u);  // the first failure ends the multiplicity loop for x
  EXPECT_EQ(plinth_generator(D("0", "x^2", "2*y"), {P("x"), P("x^2*z - y^2")}), P("x^2"));
}

void expect_certificate_valid(const Derivation& d, const PlinthCertificate& c) {
  EXPECT_TRUE(is_local_slice(d, c.slice.s));
  EXPECT_EQ(c.slice.value, d.apply(c.slice.s));
  EXPECT_EQ(c.generator, normalize(c.slice.value));
  EXPECT_TRUE(exact_div(c.initial.value, c.generator).has_value());
  EXPECT_TRUE(d.apply(c.generator).is_zero());
  std::size_t primes = c.generator.is_constant() ? 0 : factor_multi(c.generator).factors.size();
  EXPECT_EQ(c.minimality.size(), primes);
  for (const auto& r : c.minimality) EXPECT_FALSE(r.success);
}

TEST(MinimalLocalSlice, CorpusPostconditions) {
  for (const auto& e : testing::full_corpus()) {
    SCOPED_TRACE(e.name);
    ASSERT_TRUE(verify_kernel_pair(e.d, e.kp));
    auto dec = irreducible_decompose(e.d);
    auto cert = minimal_local_slice(dec.reduced, e.kp, deadline_after(30));
    expect_certificate_valid(dec.reduced, cert);
    EXPECT_EQ(cert.generator.is_constant(), e.rank == 1);
  }
}

TEST(MinimalLocalSlice, ConjugationForcesReductions) {
  // Under tri1 the initial slice of x*Dy + 2*y*Dz is no longer minimal.
  int reductions = 0;
  for (const auto& e : testing::full_corpus())
    for (const auto& r : minimal_local_slice(irreducible_decompose(e.d).reduced, e.kp).trail) reductions += r.success;
  EXPECT_GT(reductions, 0);
}

TEST(MinimalLocalSlice, GeneratorDividesSampledSliceValues) {
  std::mt19937 rng(17);
  for (const auto& e : testing::full_corpus()) {
    SCOPED_TRACE(e.name);
    Derivation d = irreducible_decompose(e.d).reduced;
    Poly gen = plinth_generator(d, e.kp);
    for (int i = 0; i < 3; ++i) {
      Poly v = testing::random_nonzero_poly(rng, Ring::xyz(), 2, 3, 3);
      // Walk to the last nonvanishing iterate: a local slice whenever D(v) != 0.
      if (d.apply(v).is_zero()) continue;
      while (!d.apply(v, 2).is_zero()) v = d.apply(v);
      EXPECT_TRUE(exact_div(d.apply(v), gen).has_value()) << v;
    }
  }
}

TEST(MinimalLocalSlice, KernelMultipleScalesGenerator) {
  for (const char* c : {"x", "x + 2", "3*x^2 - 1"}) {
    Derivation d = D("0", "x", "2*y");
    Poly gen = plinth_generator(d.scaled(P(c)), kStd);
    EXPECT_EQ(gen, normalize(P(c) * P("x"))) << c;
  }
  Derivation d2 = D("0", "x", "2*y").scaled(P("x*z - y^2"));
  EXPECT_EQ(plinth_generator(d2, kStd), normalize(P("x*z - y^2") * P("x")));
}

TEST(MinimalLocalSlice, PrimeOrderDoesNotMatter) {
  for (const auto& e : testing::full_corpus()) {
    SCOPED_TRACE(e.name);
    Derivation d = irreducible_decompose(e.d).reduced;
    auto a = minimal_local_slice(d, e.kp, {}, PrimeOrder::Ascending);
    auto b = minimal_local_slice(d, e.kp, {}, PrimeOrder::Descending);
    EXPECT_EQ(a.generator, b.generator);
  }
}

}  // namespace
}  // namespace lnd
