#pragma once

// Derivations of Q[x,y,z]: application, Jacobian derivations and their
// nilpotency test, initial local slices, irreducible decomposition and
// kernel-pair verification.

#include <array>
#include <optional>
#include <string>

#include "lnd/errors.hpp"
#include "lnd/factor.hpp"
#include "lnd/poly.hpp"

namespace lnd {

/// a1*Dx + a2*Dy + a3*Dz on Q[x,y,z]; never the zero derivation.
class Derivation {
 public:
  Derivation(Poly a1, Poly a2, Poly a3) : a_{std::move(a1), std::move(a2), std::move(a3)} {
    for (const auto& c : a_)
      if (!(c.ring() == Ring::xyz())) throw RingMismatch("derivation coefficients must live in Q[x,y,z]");
    if (a_[0].is_zero() && a_[1].is_zero() && a_[2].is_zero())
      throw PreconditionViolation("the zero derivation is not allowed");
  }

  const Poly& coeff(std::size_t i) const { return a_.at(i); }
  const std::array<Poly, 3>& coeffs() const { return a_; }

  Poly apply(const Poly& p, unsigned times = 1) const {
    if (!(p.ring() == Ring::xyz())) throw RingMismatch("derivation applied outside Q[x,y,z]");
    Poly out = p;
    for (unsigned t = 0; t < times && !out.is_zero(); ++t) {
      Poly next(Ring::xyz());
      for (std::size_t i = 0; i < 3; ++i)
        if (!a_[i].is_zero()) next += a_[i] * diff(out, i);
      out = std::move(next);
    }
    return out;
  }

  Derivation scaled(const Poly& c) const { return Derivation(c * a_[0], c * a_[1], c * a_[2]); }

  int max_coeff_degree() const {
    int d = 0;
    for (const auto& c : a_) d = std::max(d, c.total_degree());
    return d;
  }

  /// e.g. "x*Dy + 2*y*Dz"; multi-term coefficients are parenthesized.
  std::string to_string() const {
    static const char* names[] = {"Dx", "Dy", "Dz"};
    std::string s;
    for (std::size_t i = 0; i < 3; ++i) {
      if (a_[i].is_zero()) continue;
      Poly c = a_[i];
      bool neg = c.num_terms() == 1 && c.leading_coeff() < 0;
      if (neg) c = -c;
      if (!s.empty()) s += neg ? " - " : " + ";
      else if (neg) s += "-";
      if (c.num_terms() > 1) {
        s += "(" + c.to_string() + ")*";
      } else if (c != Poly(Ring::xyz(), 1)) {
        s += c.to_string() + "*";
      }
      s += names[i];
    }
    return s;
  }

  friend bool operator==(const Derivation& a, const Derivation& b) { return a.a_ == b.a_; }

 private:
  std::array<Poly, 3> a_;
};

/// Claimed generators of the kernel: ker D = Q[f, g].
struct KernelPair {
  Poly f, g;
};

/// D(s) != 0 and D^2(s) = 0.
struct LocalSlice {
  Poly s;
  Poly value;
};

struct IrreducibleDecomposition {
  Poly content;
  Derivation reduced;
};

inline bool is_local_slice(const Derivation& d, const Poly& s) {
  Poly v = d.apply(s);
  return !v.is_zero() && d.apply(v).is_zero();
}

/// h |-> Jac(f, g, h).
inline Derivation from_jacobian(const Poly& f, const Poly& g) {
  if (f.is_constant() || g.is_constant()) throw PreconditionViolation("Jacobian derivation needs nonconstant f and g");
  const Ring& r = Ring::xyz();
  Poly a1 = jacobian3(f, g, Poly::variable(r, 0));
  Poly a2 = jacobian3(f, g, Poly::variable(r, 1));
  Poly a3 = jacobian3(f, g, Poly::variable(r, 2));
  if (a1.is_zero() && a2.is_zero() && a3.is_zero())
    throw PreconditionViolation("f and g are algebraically dependent: Jac(f, g, .) is the zero derivation");
  return Derivation(std::move(a1), std::move(a2), std::move(a3));
}

struct NilpotencyCheck {
  bool nilpotent = false;
  unsigned bound = 0;  // deg f * deg g
};

/// For D = Jac(f, g, .): D is locally nilpotent iff D^(d+1) kills x, y and z,
/// d = deg f * deg g.
inline NilpotencyCheck check_locally_nilpotent_jacobian(const Poly& f, const Poly& g) {
  Derivation d = from_jacobian(f, g);
  NilpotencyCheck out;
  out.bound = static_cast<unsigned>(f.total_degree()) * static_cast<unsigned>(g.total_degree());
  out.nilpotent = true;
  for (std::size_t v = 0; v < 3 && out.nilpotent; ++v)
    out.nilpotent = d.apply(Poly::variable(Ring::xyz(), v), out.bound + 1).is_zero();
  return out;
}

inline bool is_locally_nilpotent_jacobian(const Poly& f, const Poly& g) {
  return check_locally_nilpotent_jacobian(f, g).nilpotent;
}

inline unsigned default_iteration_cap(const Derivation& d) {
  return static_cast<unsigned>(1 + d.max_coeff_degree()) * 64;
}

/// First of x, y, z not killed by D; with D^(k+1)(v) = 0 minimal, returns
/// s = D^(k-1)(v). Throws PreconditionViolation when no vanishing iterate is
/// found within `cap` applications.
inline LocalSlice initial_local_slice(const Derivation& d, std::optional<unsigned> cap = {}) {
  unsigned limit = cap.value_or(default_iteration_cap(d));
  for (std::size_t v = 0; v < 3; ++v) {
    Poly prev = Poly::variable(Ring::xyz(), v);
    Poly cur = d.apply(prev);
    if (cur.is_zero()) continue;
    for (unsigned k = 1; k <= limit; ++k) {
      Poly next = d.apply(cur);
      if (next.is_zero()) {
        if (!is_local_slice(d, prev)) throw InternalInconsistency("initial slice fails D(s) != 0, D^2(s) = 0");
        return {prev, cur};
      }
      prev = std::move(cur);
      cur = std::move(next);
    }
    throw PreconditionViolation("derivation is not locally nilpotent on " + Ring::xyz().name(v) + " within " +
                                std::to_string(limit) + " iterations");
  }
  throw InternalInconsistency("nonzero derivation kills x, y and z");
}

inline IrreducibleDecomposition irreducible_decompose(const Derivation& d) {
  std::vector<Poly> cs(d.coeffs().begin(), d.coeffs().end());
  Poly c = gcd(cs);
  Poly q[3] = {Poly(Ring::xyz()), Poly(Ring::xyz()), Poly(Ring::xyz())};
  for (std::size_t i = 0; i < 3; ++i) q[i] = detail::quotient_or_throw(d.coeff(i), c, "irreducible decomposition");
  return {c, Derivation(q[0], q[1], q[2])};
}

/// D(f) = D(g) = 0 and f, g algebraically independent (some 2x2 minor of
/// their Jacobian matrix is nonzero). Does not prove the pair generates.
inline bool verify_kernel_pair(const Derivation& d, const KernelPair& kp) {
  if (!(kp.f.ring() == Ring::xyz()) || !(kp.g.ring() == Ring::xyz())) return false;
  if (!d.apply(kp.f).is_zero() || !d.apply(kp.g).is_zero()) return false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (!(diff(kp.f, i) * diff(kp.g, j) - diff(kp.f, j) * diff(kp.g, i)).is_zero()) return true;
  return false;
}

}  // namespace lnd
