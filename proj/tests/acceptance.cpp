// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every criterion runs against exact arithmetic; the only tolerances are the
// wall-clock limits below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "lnd/rank.hpp"
#include "resultant_oracle.hpp"
#include "tame_support.hpp"
#include "test_support.hpp"
#include "trial_division_oracle.hpp"

namespace {

using namespace lnd;
using testing::P;

constexpr double kPipelineLimit = 1.0;
constexpr double kResultantLimit = 10.0;
constexpr double kFactorLimit = 30.0;
constexpr double kInvariantLimit = 60.0;

/// Collects failed checks; the first few are printed under the verdict line.
struct Checks {
  int count = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok) failures.push_back(what);
  }
  template <class A, class B>
  void expect_eq(const A& a, const B& b, const std::string& what) {
    std::ostringstream os;
    os << what << ": got " << a << ", want " << b;
    expect(a == b, os.str());
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double limit;  // seconds, 0 = none
  std::function<void(Checks&)> body;
};

Poly U(const char* s) { return parse_poly(s, kernel_ring()); }

std::string join(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "]";
}

// ---- 1 ----

void worked_pipeline(Checks& c) {
  Poly f = P("x"), g = P("x*z - y^2");
  auto chk = check_locally_nilpotent_jacobian(f, g);
  c.expect(chk.nilpotent, "Jac(x, xz - y^2, .) recognized as locally nilpotent");
  c.expect_eq(chk.bound, 2u, "recognition bound");
  Derivation d = from_jacobian(f, g);
  c.expect(verify_kernel_pair(d, {f, g}), "kernel pair verifies");
  auto r = compute_rank(d, {f, g});
  c.expect_eq(r.plinth.generator, P("x"), "plinth generator");
  c.expect_eq(r.rank, 2, "rank");
  const auto* w = std::get_if<RankTwoWitness>(&r.witness);
  c.expect(w != nullptr, "rank-2 witness present");
  if (w) {
    c.expect_eq(join(w->outer), std::string("[0,1]"), "l(T) = T");
    c.expect_eq(w->inner, P("x"), "u");
    c.expect(w->certificate.is_coordinate, "u certified as a coordinate");
  }
}

// ---- 2 ----

void plinth_regressions(Checks& c) {
  Derivation d(P("0"), P("x^2"), P("2*y"));
  KernelPair kp{P("x"), P("x^2*z - y^2")};
  c.expect_eq(plinth_generator(d, kp), P("x^2"), "generator of x^2*Dy + 2*y*Dz");
  auto r = compute_rank(d, kp);
  c.expect_eq(r.rank, 2, "rank of x^2*Dy + 2*y*Dz");
  if (const auto* w = std::get_if<RankTwoWitness>(&r.witness)) {
    c.expect_eq(join(w->outer), std::string("[0,0,1]"), "l(T) = T^2");
    c.expect_eq(w->inner, P("x"), "u");
  } else {
    c.expect(false, "rank-2 witness present");
  }

  Derivation dz(P("0"), P("0"), P("1"));
  KernelPair xy{P("x"), P("y")};
  c.expect_eq(plinth_generator(dz, xy), P("1"), "generator of Dz");
  auto r1 = compute_rank(dz, xy);
  c.expect_eq(r1.rank, 1, "rank of Dz");
  if (const auto* s = std::get_if<SliceWitness>(&r1.witness))
    c.expect_eq(s->s, P("z"), "slice of Dz");
  else
    c.expect(false, "slice witness present");
}

// ---- 3 ----

void classify(Checks& c) {
  auto a = classify_plinth(U("u1*u2"));
  c.expect_eq(a.rank, 3, "classify(u1*u2)");
  c.expect_eq(a.decomposition.candidates_tried.size(), std::size_t{2}, "candidates tried for u1*u2");
  for (const auto& r : a.decomposition.candidates_tried)
    c.expect(r.reason == RejectionReason::DivisibilityFailed, r.candidate.to_string() + " rejected by divisibility");

  Poly target = U("(u2 + u1^2)^3 + 2*(u2 + u1^2)");
  auto b = classify_plinth(target);
  c.expect_eq(b.rank, 2, "classify((u2 + u1^2)^3 + 2*(u2 + u1^2))");
  if (b.decomposition.found) {
    c.expect_eq(join(b.decomposition.outer), std::string("[0,2,0,1]"), "l(T) = T^3 + 2*T");
    c.expect_eq(*b.decomposition.inner, U("u2 + u1^2"), "u");
    c.expect_eq(compose_univariate(b.decomposition.outer, *b.decomposition.inner), target, "l(u) re-expands");
  }
}

// ---- 4 ----

const Ring& uvx() {
  static const Ring r({"x", "v", "u"});
  return r;
}

void resultant_agreement(Checks& c) {
  std::mt19937 rng(2024);
  Ring xr({"x"});
  MonomialOrder order = MonomialOrder::lex({"u", "v", "x"});
  int instances = 0;
  while (instances < 25) {
    Poly p = testing::random_poly(rng, xr, 3, 4, 4), q = testing::random_poly(rng, xr, 3, 4, 4);
    if (p.is_constant() || q.is_constant()) continue;
    Poly a = change_ring(p, uvx()) - Poly::variable(uvx(), "u"), b = change_ring(q, uvx()) - Poly::variable(uvx(), "v");
    auto elim = eliminate({a, b}, {"u", "v"}, order);
    Poly res = testing::resultant(a, b, 0);
    Poly rad(uvx(), 1);
    for (const auto& part : squarefree(res)) rad *= part.factor;
    auto g_elim = buchberger(elim, order);
    auto g_rad = buchberger({rad}, order);
    bool ok = !elim.empty() && normal_form(rad, g_elim).is_zero();
    for (const auto& e : elim) ok = ok && normal_form(e, g_rad).is_zero();
    c.expect(ok, "elimination ideal of <" + a.to_string() + ", " + b.to_string() + "> matches the resultant");
    ++instances;
  }
}

// ---- 5 ----

void factorization(Checks& c) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> nfactors(1, 3);
  int products = 0, oracle_checked = 0;
  while (products < 100) {
    Poly prod(Ring::xyz(), 1);
    for (int k = nfactors(rng); k > 0; --k) prod *= testing::random_nonzero_poly(rng, Ring::xyz(), 3, 4, 3);
    if (prod.is_constant()) continue;
    ++products;
    auto f = factor_multi(prod);
    c.expect_eq(f.expand(Ring::xyz()), prod, "factorization re-expands");
    for (const auto& [p, m] : f.factors) {
      if (p.total_degree() > 4) continue;
      // Linear divisors with coefficients in [-3, 3]; quadratic ones in [-1, 1].
      int range = p.total_degree() <= 3 ? 3 : 1;
      c.expect(testing::oracle_finds_no_divisor(p, range), p.to_string() + " has no small divisor");
      ++oracle_checked;
    }
  }
  c.expect(oracle_checked >= 100, "oracle exercised on at least 100 factors");
}

// ---- 6 ----

void coordinates(Checks& c) {
  Ring xy({"x", "y"});
  std::mt19937 rng(6);
  for (int i = 0; i < 50; ++i) {
    Automorphism2 sigma = testing::random_automorphism(rng, xy, 1 + i % 4);
    Poly p = sigma.apply(Poly::variable(xy, 0));
    auto cert = coordinate_test(p);
    c.expect(cert.is_coordinate, p.to_string() + " is a coordinate");
    if (!cert.is_coordinate) continue;
    c.expect_eq(cert.witness.apply(p), Poly::variable(xy, 0), "witness sends p to x");
    c.expect_eq(cert.witness.apply(*cert.complement), Poly::variable(xy, 1), "witness sends the complement to y");
  }
  struct Negative {
    const char* p;
    const char* rejection;
  };
  for (const auto& n : {Negative{"x^2", "univariate of degree 2"},
                        Negative{"x*y", "support point (1,1) outside the Newton triangle of degrees (1,1)"},
                        Negative{"x + x^2*y", "support point (2,1) outside the Newton triangle of degrees (2,1)"}}) {
    auto cert = coordinate_test(parse_poly(n.p, xy));
    c.expect(!cert.is_coordinate, std::string(n.p) + " rejected");
    c.expect_eq(cert.rejection, std::string(n.rejection), std::string("rejection step for ") + n.p);
  }
}

// ---- 7 ----

void expect_certificate(Checks& c, const Derivation& d, const PlinthCertificate& cert, const std::string& name) {
  c.expect(!cert.slice.value.is_zero() && d.apply(cert.slice.s, 2).is_zero(), name + ": D(s) != 0, D^2(s) = 0");
  c.expect(exact_div(cert.initial.value, cert.generator).has_value(), name + ": generator divides D(s0)");
  c.expect(d.apply(cert.generator).is_zero(), name + ": generator in the kernel");
  std::size_t primes = cert.generator.is_constant() ? 0 : factor_multi(cert.generator).factors.size();
  c.expect_eq(cert.minimality.size(), primes, name + ": one minimality record per prime");
  for (const auto& r : cert.minimality) c.expect(!r.success, name + ": no reduction by " + r.prime.to_string());
}

/// Conjugate of e by a random unimodular upper-times-lower triangular map.
testing::CorpusEntry random_linear_conjugate(const testing::CorpusEntry& e, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-2, 2);
  int a = coef(rng), b = coef(rng), cc = coef(rng), p = coef(rng), q = coef(rng), s = coef(rng);
  auto L = [](int k) { return std::to_string(k); };
  auto upper = testing::make_aut3(("x + " + L(a) + "*y + " + L(b) + "*z").c_str(), ("y + " + L(cc) + "*z").c_str(), "z",
                                  ("x - " + L(a) + "*y + " + L(a * cc - b) + "*z").c_str(),
                                  ("y - " + L(cc) + "*z").c_str(), "z");
  auto lower = testing::make_aut3("x", ("y + " + L(p) + "*x").c_str(), ("z + " + L(q) + "*x + " + L(s) + "*y").c_str(),
                                  "x", ("y - " + L(p) + "*x").c_str(),
                                  ("z - " + L(s) + "*y + " + L(s * p - q) + "*x").c_str());
  return testing::conjugate(testing::conjugate(e, upper, "U"), lower, "L");
}

void invariants(Checks& c) {
  std::mt19937 rng(7);
  const Ring& r = Ring::xyz();
  for (int i = 0; i < 50; ++i) {
    Derivation d(testing::random_poly(rng, r, 2, 3), testing::random_poly(rng, r, 2, 3),
                 testing::random_nonzero_poly(rng, r, 2, 3));
    Poly p = testing::random_poly(rng, r, 3, 4), q = testing::random_poly(rng, r, 3, 4);
    c.expect(d.apply(p * q) == p * d.apply(q) + q * d.apply(p), "Leibniz rule on pair " + std::to_string(i));
  }

  // Minimal-slice postconditions and ranks over the full corpus.
  for (const auto& e : testing::full_corpus()) {
    auto dec = irreducible_decompose(e.d);
    auto cert = minimal_local_slice(dec.reduced, e.kp);
    expect_certificate(c, dec.reduced, cert, e.name);
    auto rep = compute_rank(e.d, e.kp);
    c.expect_eq(rep.rank, e.rank, e.name + " rank");
    expect_certificate(c, rep.reduced, rep.plinth, e.name + " (rank pipeline)");
  }

  // Scaling by kernel elements and conjugation by random linear maps.
  for (const auto& e : testing::base_corpus()) {
    for (const Poly& k : {Poly(r, Rational(-3, 2)), e.kp.f, e.kp.f * e.kp.f + e.kp.g})
      c.expect_eq(compute_rank(e.d.scaled(k), e.kp).rank, e.rank, e.name + " scaled by " + k.to_string());
    int trials = e.linear_conjugates_only ? 1 : 3;
    for (int t = 0; t < trials; ++t) {
      auto conj = random_linear_conjugate(e, rng);
      c.expect(verify_kernel_pair(conj.d, conj.kp), conj.name + " kernel pair");
      c.expect_eq(compute_rank(conj.d, conj.kp).rank, e.rank, conj.name + " rank");
    }
  }

  // Uniqueness of the inner polynomial up to affine maps.
  Ring tt({"t1", "t2"});
  std::vector<Poly> cs = {parse_poly("t1*(t1 + 1)", tt), parse_poly("(t2 + t1^2)^2 - 1", tt),
                          parse_poly("(t1 - 2*t2)^3 - (t1 - 2*t2)", tt), parse_poly("t1*t2", tt)};
  for (int i = 0; i < 15; ++i) {
    Poly u = testing::random_automorphism(rng, tt, 3).apply(Poly::variable(tt, 0));
    std::vector<Rational> l = {Rational(static_cast<int>(rng() % 5)), Rational(static_cast<int>(rng() % 3) - 1), 1};
    cs.push_back(compose_univariate(l, u));
  }
  int multiple = 0;
  for (const auto& cc : cs) {
    if (cc.is_constant()) continue;
    auto all = all_decompositions(cc);
    for (std::size_t i = 1; i < all.size(); ++i) {
      ++multiple;
      c.expect(testing::affinely_related(all[0].inner, all[i].inner),
               all[0].inner.to_string() + " and " + all[i].inner.to_string() + " affinely related");
    }
  }
  c.expect(multiple > 0, "some decomposition has several successful candidates");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1", "worked Jacobian pipeline rank --jacobian x, xz - y^2", kPipelineLimit, worked_pipeline},
      {"2", "plinth regressions (x^2*Dy + 2*y*Dz and Dz)", 0, plinth_regressions},
      {"3", "classify_plinth on u1*u2 and (u2 + u1^2)^3 + 2*(u2 + u1^2)", 0, classify},
      {"4", "elimination vs resultant oracle, 25 instances", kResultantLimit, resultant_agreement},
      {"5", "factorization round trip and trial-division oracle, 100 products", kFactorLimit, factorization},
      {"6", "coordinate test on 50 tame images and fixed negatives", 0, coordinates},
      {"7", "invariant suite (Leibniz, slice postconditions, scaling, conjugation, uniqueness)", kInvariantLimit,
       invariants},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      cr.body(checks);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = cr.limit == 0 || secs < cr.limit;
    bool ok = error.empty() && checks.failures.empty() && in_time;
    failed += !ok;
    std::printf("[%s] criterion %s: %s (%d checks, %.2f s", ok ? "PASS" : "FAIL", cr.id, cr.title, checks.count, secs);
    if (cr.limit > 0) std::printf(", limit %.0f s", cr.limit);
    std::printf(")\n");
    if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
    if (!in_time) std::printf("    over the time limit\n");
    for (std::size_t i = 0; i < checks.failures.size() && i < 5; ++i)
      std::printf("    %s\n", checks.failures[i].c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
