#pragma once

// Rank of a locally nilpotent derivation of Q[x,y,z] with a known kernel
// pair (f, g):
//   1. strip the content c1 of the coefficients;
//   2. compute a minimal local slice of the reduced derivation;
//   3. a constant plinth generator means rank 1;
//   4. otherwise rewrite the generator c as c(u1, u2) with u1 = f, u2 = g;
//      rank 2 iff c = l(u) for some coordinate u of Q[u1, u2], else rank 3.

#include <chrono>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lnd/coordinates.hpp"
#include "lnd/derivation.hpp"
#include "lnd/groebner.hpp"
#include "lnd/plinth.hpp"

namespace lnd {

struct SliceWitness {
  Poly s;  // D(s) = 1 for the reduced derivation
};

struct RankTwoWitness {
  Poly inner_abstract;  // u(u1, u2), a coordinate of Q[u1, u2]
  Poly inner;           // u(f, g)
  std::vector<Rational> outer;
  CoordinateCertificate certificate;
};

struct RankThreeWitness {
  std::vector<RejectedCandidate> log;
};

struct StageTiming {
  std::string stage;
  double seconds;
};

struct RankReport {
  int rank = 0;
  Poly content;
  Derivation reduced;
  PlinthCertificate plinth;
  Poly generator_abstract;  // plinth generator as a polynomial in u1, u2
  std::variant<SliceWitness, RankTwoWitness, RankThreeWitness> witness;
  std::vector<StageTiming> timings;
};

struct PlinthClass {
  int rank = 0;
  DecompositionResult decomposition;
};

/// Rank 2 or 3 from a nonconstant plinth generator in two abstract variables.
inline PlinthClass classify_plinth(const Poly& c) {
  if (c.is_constant()) throw std::invalid_argument("classify_plinth expects a nonconstant generator");
  PlinthClass out;
  out.decomposition = uni_multivariate_decompose(c);
  out.rank = out.decomposition.found ? 2 : 3;
  return out;
}

/// Writes c in Q[f, g] as a(u1, u2) with a(f, g) = c, via the normal form
/// modulo the lex basis of <f - u1, g - u2> with u1, u2 smallest.
inline std::optional<Poly> express_in_kernel(const Poly& c, const KernelPair& kp, Deadline deadline = {}) {
  static const Ring r5({"z", "y", "x", "u2", "u1"});
  static const MonomialOrder order = MonomialOrder::lex({"u1", "u2", "x", "y", "z"});
  auto G = buchberger({change_ring(kp.f, r5) - Poly::variable(r5, "u1"), change_ring(kp.g, r5) - Poly::variable(r5, "u2")},
                      order, deadline);
  Poly nf = normal_form(change_ring(c, r5), G, deadline);
  for (std::size_t v = 0; v < 3; ++v)
    if (nf.involves(v)) return std::nullopt;
  Poly a = change_ring(nf, kernel_ring());
  const Poly images[] = {kp.f, kp.g};
  if (subst(a, images) != c) return std::nullopt;
  return a;
}

inline RankReport compute_rank(const Derivation& d, const KernelPair& kp, Deadline deadline = {}) {
  if (!verify_kernel_pair(d, kp))
    throw PreconditionViolation("kernel pair does not annihilate the derivation or is algebraically dependent");
  using Seconds = std::chrono::duration<double>;
  std::vector<StageTiming> timings;
  auto t0 = Clock::now();
  auto stamp = [&](const char* stage) {
    auto now = Clock::now();
    timings.push_back({stage, Seconds(now - t0).count()});
    t0 = now;
  };

  auto dec = irreducible_decompose(d);
  stamp("decompose");
  auto cert = minimal_local_slice(dec.reduced, kp, deadline);
  stamp("plinth");

  RankReport report{0, dec.content, dec.reduced, cert, Poly(kernel_ring()), SliceWitness{cert.slice.s}, {}};
  const Poly& c = cert.generator;
  if (c.is_constant()) {
    Poly s = cert.slice.s.scaled(1 / cert.slice.value.constant_value());
    if (dec.reduced.apply(s) != Poly(Ring::xyz(), 1)) throw InternalInconsistency("rank-1 slice does not verify");
    report.rank = 1;
    report.generator_abstract = Poly(kernel_ring(), 1);
    report.witness = SliceWitness{s};
  } else {
    auto abstract = express_in_kernel(c, kp, deadline);
    if (!abstract) throw InternalInconsistency("plinth generator " + c.to_string() + " is not in Q[f, g]");
    report.generator_abstract = *abstract;
    stamp("kernel-rewrite");
    auto cls = classify_plinth(*abstract);
    stamp("classify");
    report.rank = cls.rank;
    if (cls.rank == 2) {
      const auto& dr = cls.decomposition;
      const Poly images[] = {kp.f, kp.g};
      RankTwoWitness w{*dr.inner, subst(*dr.inner, images), dr.outer, *dr.certificate};
      if (compose_univariate(w.outer, w.inner_abstract) != *abstract || !coordinate_test(w.inner_abstract).is_coordinate ||
          compose_univariate(w.outer, w.inner) != c)
        throw InternalInconsistency("rank-2 witness does not verify");
      report.witness = std::move(w);
    } else {
      if (cls.decomposition.candidates_tried.empty()) throw InternalInconsistency("rank 3 without rejected candidates");
      report.witness = RankThreeWitness{cls.decomposition.candidates_tried};
    }
  }
  report.timings = std::move(timings);
  return report;
}

}  // namespace lnd
