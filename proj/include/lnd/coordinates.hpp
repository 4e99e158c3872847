#pragma once

// Coordinates of two-variable polynomial rings and uni-multivariate
// decomposition c = l(u) with u a coordinate.
//
// The coordinate test peels the Newton polygon. With a = deg_x p and
// b = deg_y p, a coordinate has its support inside the triangle
// b*i + a*j <= a*b, one of a, b divides the other, and the edge form is a
// power of a binomial: c*(y + l*x^q)^b when b | a (q = a/b). The substitution
// y -> y - l*x^q keeps the triangle and drops deg_x, so a + b strictly
// decreases until p is linear.

#include <optional>
#include <string>
#include <vector>

#include "lnd/automorphism.hpp"
#include "lnd/factor.hpp"
#include "lnd/poly.hpp"

namespace lnd {

struct CoordinateCertificate {
  bool is_coordinate = false;
  Automorphism2 witness;      // forward image of the input is the first variable
  std::optional<Poly> complement;  // witness^-1 applied to the second variable
  std::string rejection;      // why the test failed, empty on success
};

namespace detail {

inline Exponents exps2(std::uint32_t i, std::uint32_t j) { return {i, j}; }

inline Rational coeff_at(const Poly& p, const Exponents& e) {
  for (const auto& t : p.terms())
    if (t.exps == e) return t.coeff;
  return 0;
}

/// Tries the orientation reducing the degree in variable `big` (whose degree
/// is a multiple of the other's). Returns the elementary step on success.
inline std::optional<ElementaryStep> peel_step(const Poly& p, std::size_t big) {
  std::size_t small = 1 - big;
  auto da = static_cast<std::uint32_t>(p.degree(big)), db = static_cast<std::uint32_t>(p.degree(small));
  if (da % db != 0) return std::nullopt;
  std::uint32_t q = da / db;
  auto at = [&](std::uint32_t ib, std::uint32_t is) {
    Exponents e(2);
    e[big] = ib;
    e[small] = is;
    return e;
  };
  // Edge: c * (s + l * b^q)^db, s the small-degree variable.
  Rational c = coeff_at(p, at(0, db));
  Rational lambda = coeff_at(p, at(q, db - 1)) / (Rational(db) * c);
  Poly binom = Poly::monomial(p.ring(), at(0, 1), 1) + Poly::monomial(p.ring(), at(q, 0), lambda);
  Poly edge_expected = pow(binom, db).scaled(c);
  std::vector<Poly::Term> edge;
  for (const auto& t : p.terms())
    if (db * t.exps[big] + da * t.exps[small] == da * db) edge.push_back(t);
  if (Poly::from_terms(p.ring(), edge) != edge_expected) return std::nullopt;
  ElementaryStep step;
  step.swapped = (big == 1);  // modifies the small variable by a power of the big one
  step.h.assign(q + 1, 0);
  step.h[q] = -lambda;
  return step;
}

}  // namespace detail

/// Decides whether p (in a two-variable ring) is a coordinate, with a
/// self-verified witness automorphism when it is.
inline CoordinateCertificate coordinate_test(const Poly& p) {
  if (p.ring().size() != 2) throw RingMismatch("coordinate_test needs a two-variable ring");
  if (p.is_zero()) throw std::invalid_argument("coordinate_test of the zero polynomial");
  CoordinateCertificate cert{false, Automorphism2(p.ring()), std::nullopt, {}};
  Poly q = p;
  while (true) {
    if (q.is_constant()) {
      cert.rejection = "constant";
      return cert;
    }
    if (q.total_degree() == 1) break;
    auto a = static_cast<std::uint32_t>(q.degree(0)), b = static_cast<std::uint32_t>(q.degree(1));
    if (a == 0 || b == 0) {
      cert.rejection = "univariate of degree " + std::to_string(q.total_degree());
      return cert;
    }
    for (const auto& t : q.terms()) {
      if (b * t.exps[0] + a * t.exps[1] > a * b) {
        cert.rejection = "support point (" + std::to_string(t.exps[0]) + "," + std::to_string(t.exps[1]) +
                         ") outside the Newton triangle of degrees (" + std::to_string(a) + "," + std::to_string(b) +
                         ")";
        return cert;
      }
    }
    if (a % b != 0 && b % a != 0) {
      cert.rejection = "degrees (" + std::to_string(a) + "," + std::to_string(b) + ") do not divide one another";
      return cert;
    }
    std::optional<ElementaryStep> step;
    if (a % b == 0) step = detail::peel_step(q, 0);
    if (!step && b % a == 0) step = detail::peel_step(q, 1);
    if (!step) {
      cert.rejection = "edge form of degrees (" + std::to_string(a) + "," + std::to_string(b) +
                       ") is not a power of a binomial";
      return cert;
    }
    Automorphism2 one(p.ring());
    one.push(*step);
    q = one.apply(q);
    cert.witness.push(*step);
  }
  // q = alpha*x + beta*y + gamma; send it to the first variable.
  Rational alpha = detail::coeff_at(q, detail::exps2(1, 0)), beta = detail::coeff_at(q, detail::exps2(0, 1));
  Rational gamma = q.constant_term();
  LinearStep lin;
  if (alpha != 0) {
    lin = {1 / alpha, -beta / alpha, 0, 1, -gamma / alpha, 0};
  } else {
    lin = {0, 1, 1 / beta, 0, 0, -gamma / beta};
  }
  cert.witness.push(lin);
  cert.is_coordinate = true;
  Poly x = Poly::variable(p.ring(), 0), y = Poly::variable(p.ring(), 1);
  cert.complement = cert.witness.apply(y, Direction::Inverse);
  if (cert.witness.apply(p) != x || cert.witness.apply(*cert.complement) != y ||
      cert.witness.apply(cert.witness.apply(x), Direction::Inverse) != x ||
      cert.witness.apply(cert.witness.apply(y), Direction::Inverse) != y)
    throw InternalInconsistency("coordinate witness fails to round-trip");
  return cert;
}

/// u(t) - u(w) divides c(t) - c(w) in the four-variable ring (t the two ring
/// variables, w fresh copies).
inline bool divides_diff(const Poly& u, const Poly& c) {
  if (!(u.ring() == c.ring()) || u.ring().size() != 2) throw RingMismatch("divides_diff needs one two-variable ring");
  if (u.is_constant()) throw std::invalid_argument("divides_diff needs a nonconstant u");
  std::vector<std::string> names = u.ring().names();
  for (const char* base : {"_w1", "_w2"}) {
    std::string n = base;
    while (u.ring().index_of(n)) n += "_";
    names.push_back(n);
  }
  Ring r4(names);
  const Poly w[] = {Poly::variable(r4, 2), Poly::variable(r4, 3)};
  auto diff_of = [&](const Poly& p) { return change_ring(p, r4) - subst(p, w); };
  return exact_div(diff_of(c), diff_of(u)).has_value();
}

enum class RejectionReason { NotAffineFactorForm, DivisibilityFailed, NotACoordinate };

inline const char* to_string(RejectionReason r) {
  switch (r) {
    case RejectionReason::NotAffineFactorForm:
      return "not-affine-factor-form";
    case RejectionReason::DivisibilityFailed:
      return "divisibility-failed";
    case RejectionReason::NotACoordinate:
      return "not-a-coordinate";
  }
  return "?";
}

struct RejectedCandidate {
  Poly candidate;
  RejectionReason reason;
  std::string detail;
};

struct DecompositionResult {
  bool found = false;
  std::optional<Poly> inner;                    // u
  std::vector<Rational> outer;                  // l, dense coefficients (l[k] multiplies T^k)
  std::optional<CoordinateCertificate> certificate;
  std::vector<RejectedCandidate> candidates_tried;
};

/// Evaluates l at u.
inline Poly compose_univariate(const std::vector<Rational>& l, const Poly& u) {
  Poly acc(u.ring());
  for (auto it = l.rbegin(); it != l.rend(); ++it) acc = acc * u + Poly(u.ring(), *it);
  return acc;
}

struct DecompositionCandidate {
  Poly inner;
  std::vector<Rational> outer;
  CoordinateCertificate certificate;
};

namespace detail {

/// Checks one candidate u for c = l(u); fills `reject` on failure.
inline std::optional<DecompositionCandidate> try_candidate(const Poly& u, const Poly& c,
                                                           std::vector<RejectedCandidate>& log) {
  if (!divides_diff(u, c)) {
    log.push_back({u, RejectionReason::DivisibilityFailed, "u(t) - u(w) does not divide c(t) - c(w)"});
    return std::nullopt;
  }
  auto cert = coordinate_test(u);
  if (!cert.is_coordinate) {
    log.push_back({u, RejectionReason::NotACoordinate, cert.rejection});
    return std::nullopt;
  }
  Poly image = cert.witness.apply(c);
  if (image.involves(1)) {
    log.push_back({u, RejectionReason::NotAffineFactorForm, "c is not a polynomial in u alone"});
    return std::nullopt;
  }
  std::vector<Rational> l;
  for (const auto& k : coefficients(image, 0)) l.push_back(k.constant_term());
  if (compose_univariate(l, u) != c) throw InternalInconsistency("decomposition does not re-expand to c");
  return DecompositionCandidate{u, std::move(l), std::move(cert)};
}

inline std::vector<Poly> decomposition_candidates(const Poly& c, const std::pair<Rational, Rational>& base) {
  Poly shifted = c - Poly(c.ring(), evaluate(evaluate(c, 0, base.first), 1, base.second).constant_term());
  std::vector<Poly> out;
  for (const auto& [f, m] : factor_multi(shifted).factors) out.push_back(f);
  return out;
}

}  // namespace detail

/// Finds c = l(u) with u a coordinate, trying the irreducible factors of
/// c - c(base) in order.
inline DecompositionResult uni_multivariate_decompose(const Poly& c,
                                                      std::pair<Rational, Rational> base = {0, 0}) {
  if (c.ring().size() != 2) throw RingMismatch("decomposition needs a two-variable ring");
  if (c.is_constant()) throw std::invalid_argument("decomposition of a constant");
  DecompositionResult out;
  for (const auto& u : detail::decomposition_candidates(c, base)) {
    auto hit = detail::try_candidate(u, c, out.candidates_tried);
    if (!hit) continue;
    out.found = true;
    out.inner = hit->inner;
    out.outer = std::move(hit->outer);
    out.certificate = std::move(hit->certificate);
    break;
  }
  return out;
}

/// Every candidate that passes, not just the first.
inline std::vector<DecompositionCandidate> all_decompositions(const Poly& c,
                                                              std::pair<Rational, Rational> base = {0, 0}) {
  if (c.is_constant()) throw std::invalid_argument("decomposition of a constant");
  std::vector<DecompositionCandidate> out;
  std::vector<RejectedCandidate> log;
  for (const auto& u : detail::decomposition_candidates(c, base))
    if (auto hit = detail::try_candidate(u, c, log)) out.push_back(std::move(*hit));
  return out;
}

}  // namespace lnd
