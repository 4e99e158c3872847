#pragma once

// Minimal local slices and the plinth-ideal generator.
//
// A local slice s of D with D(s) = p * h (p prime) reduces to s1 with
// D(s1) = h exactly when s + a(f, g) is divisible by p for some kernel
// element a. Membership is decided by the lex Groebner basis of
// <p, f - u1, g - u2, s - u3> with u1 < u2 < u3 < x < y < z: such an a exists
// iff the reduced basis has an element with leading term u3, and that element
// is u3 + a(u1, u2).

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lnd/derivation.hpp"
#include "lnd/factor.hpp"
#include "lnd/groebner.hpp"

namespace lnd {

/// The abstract kernel ring Q[u1, u2], u1 standing for f and u2 for g.
inline const Ring& kernel_ring() {
  static const Ring r({"u1", "u2"});
  return r;
}

struct ReductionRecord {
  Poly prime;
  bool success = false;
  std::optional<Poly> a_abstract;  // a(u1, u2)
  std::optional<Poly> a;           // a(f, g)
  std::optional<Poly> quotient;    // s1 = (s + a(f, g)) / p
};

struct PlinthCertificate {
  LocalSlice initial;
  LocalSlice slice;
  Poly generator;  // normalized D(slice.s)
  std::vector<ReductionRecord> trail;
  std::vector<ReductionRecord> minimality;  // one failed record per prime of the generator
};

namespace detail {

inline const Ring& elimination_ring() {
  static const Ring r({"z", "y", "x", "u3", "u2", "u1"});
  return r;
}

inline const MonomialOrder& elimination_order() {
  static const MonomialOrder o = MonomialOrder::lex({"u1", "u2", "u3", "x", "y", "z"});
  return o;
}

}  // namespace detail

/// One attempt to divide the slice value by `p`.
inline ReductionRecord reduction_step(const Derivation& d, const KernelPair& kp, const Poly& s, const Poly& p,
                                      Deadline deadline = {}) {
  const Ring& r6 = detail::elimination_ring();
  auto u = [&](const char* n) { return Poly::variable(r6, n); };
  std::vector<Poly> gens = {change_ring(p, r6), change_ring(kp.f, r6) - u("u1"), change_ring(kp.g, r6) - u("u2"),
                            change_ring(s, r6) - u("u3")};
  auto g1 = eliminate(gens, {"u1", "u2", "u3"}, detail::elimination_order(), deadline);

  ReductionRecord rec{p, false, std::nullopt, std::nullopt, std::nullopt};
  const Exponents u3 = u("u3").leading_term().exps;
  for (const auto& g : g1) {
    if (g.leading_term().exps != u3) continue;
    Poly a_abs = change_ring(g - u("u3"), kernel_ring());
    const Poly images[] = {kp.f, kp.g};
    Poly a = subst(a_abs, images);
    auto s1 = exact_div(s + a, p);
    if (!s1) throw InternalInconsistency("s + a(f, g) is not divisible by " + p.to_string());
    auto ds = exact_div(d.apply(s), p);
    if (!ds || d.apply(*s1) != *ds) throw InternalInconsistency("reduced slice has the wrong image");
    rec.success = true;
    rec.a_abstract = std::move(a_abs);
    rec.a = std::move(a);
    rec.quotient = std::move(*s1);
    break;
  }
  return rec;
}

/// Order in which the prime factors of the initial slice value are tried.
/// Ascending is by total degree, then lex; the result does not depend on it.
enum class PrimeOrder { Ascending, Descending };

/// Algorithm: start from the initial local slice, and for each prime factor p
/// of its value (sorted by degree, then lex) reduce by p up to its
/// multiplicity, moving to the next prime on the first failure.
inline PlinthCertificate minimal_local_slice(const Derivation& d, const KernelPair& kp, Deadline deadline = {},
                                             PrimeOrder order = PrimeOrder::Ascending) {
  PlinthCertificate cert{initial_local_slice(d), {}, Poly(Ring::xyz()), {}, {}};
  Poly s = cert.initial.s;
  Poly value = cert.initial.value;
  if (!value.is_constant()) {
    auto primes = factor_multi(value).factors;
    if (order == PrimeOrder::Descending) std::reverse(primes.begin(), primes.end());
    for (const auto& [p, m] : primes) {
      for (unsigned k = 0; k < m; ++k) {
        auto rec = reduction_step(d, kp, s, p, deadline);
        cert.trail.push_back(rec);
        if (!rec.success) break;
        s = *rec.quotient;
      }
    }
  }
  value = d.apply(s);
  cert.slice = {s, value};
  cert.generator = normalize(value);

  if (!is_local_slice(d, s)) throw InternalInconsistency("minimal slice fails D(s) != 0, D^2(s) = 0");
  if (!exact_div(cert.initial.value, cert.generator)) throw InternalInconsistency("generator does not divide D(s0)");
  if (!d.apply(cert.generator).is_zero()) throw InternalInconsistency("generator is not a kernel element");
  if (!cert.generator.is_constant()) {
    for (const auto& [p, m] : factor_multi(cert.generator).factors) {
      auto rec = reduction_step(d, kp, s, p, deadline);
      if (rec.success) throw InternalInconsistency("slice is not minimal: reduction by " + p.to_string() + " succeeds");
      cert.minimality.push_back(std::move(rec));
    }
  }
  return cert;
}

inline Poly plinth_generator(const Derivation& d, const KernelPair& kp, Deadline deadline = {}) {
  return minimal_local_slice(d, kp, deadline).generator;
}

}  // namespace lnd
