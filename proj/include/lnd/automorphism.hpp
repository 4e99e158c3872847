#pragma once

// Tame automorphisms of a two-variable polynomial ring, stored as a list of
// elementary substitutions. Applying the automorphism "forward" substitutes
// the steps in order; "inverse" substitutes the inverted steps in reverse.

#include <string>
#include <variant>
#include <vector>

#include "lnd/poly.hpp"

namespace lnd {

/// (first, second) |-> (m11*first + m12*second + t1, m21*first + m22*second + t2).
struct LinearStep {
  Rational m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  Rational t1 = 0, t2 = 0;

  Rational det() const { return m11 * m22 - m12 * m21; }
};

/// second |-> second + h(first), or with `swapped` first |-> first + h(second).
/// h is a dense univariate coefficient list (h[k] multiplies var^k).
struct ElementaryStep {
  bool swapped = false;
  std::vector<Rational> h;
};

using AutomorphismStep = std::variant<LinearStep, ElementaryStep>;

enum class Direction { Forward, Inverse };

class Automorphism2 {
 public:
  explicit Automorphism2(Ring ring) : ring_(std::move(ring)) {
    if (ring_.size() != 2) throw std::invalid_argument("Automorphism2 needs a two-variable ring");
  }

  const Ring& ring() const { return ring_; }
  const std::vector<AutomorphismStep>& steps() const { return steps_; }
  bool is_identity() const { return steps_.empty(); }

  void push(AutomorphismStep step) {
    if (auto* lin = std::get_if<LinearStep>(&step); lin && lin->det() == 0)
      throw std::invalid_argument("linear step is not invertible");
    steps_.push_back(std::move(step));
  }

  Poly apply(const Poly& p, Direction dir = Direction::Forward) const {
    if (!(p.ring() == ring_)) throw RingMismatch("automorphism applied outside its ring");
    Poly out = p;
    if (dir == Direction::Forward) {
      for (const auto& s : steps_) out = substitute(out, s);
    } else {
      for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) out = substitute(out, invert(*it));
    }
    return out;
  }

  Automorphism2 inverse() const {
    Automorphism2 inv(ring_);
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) inv.steps_.push_back(invert(*it));
    return inv;
  }

  static AutomorphismStep invert(const AutomorphismStep& s) {
    if (const auto* e = std::get_if<ElementaryStep>(&s)) {
      ElementaryStep r = *e;
      for (auto& c : r.h) c = -c;
      return r;
    }
    const auto& l = std::get<LinearStep>(s);
    Rational d = l.det();
    LinearStep r;
    r.m11 = l.m22 / d;
    r.m12 = -l.m12 / d;
    r.m21 = -l.m21 / d;
    r.m22 = l.m11 / d;
    r.t1 = -(r.m11 * l.t1 + r.m12 * l.t2);
    r.t2 = -(r.m21 * l.t1 + r.m22 * l.t2);
    return r;
  }

  /// Images of the two ring variables under one step.
  std::pair<Poly, Poly> images(const AutomorphismStep& s) const {
    Poly a = Poly::variable(ring_, 0);
    Poly b = Poly::variable(ring_, 1);
    if (const auto* l = std::get_if<LinearStep>(&s)) {
      return {a.scaled(l->m11) + b.scaled(l->m12) + Poly(ring_, l->t1),
              a.scaled(l->m21) + b.scaled(l->m22) + Poly(ring_, l->t2)};
    }
    const auto& e = std::get<ElementaryStep>(s);
    const Poly& base = e.swapped ? b : a;
    Poly h(ring_);
    Poly pw(ring_, 1);
    for (const auto& c : e.h) {
      h += pw.scaled(c);
      pw *= base;
    }
    if (e.swapped) return {a + h, b};
    return {a, b + h};
  }

  std::string describe_step(const AutomorphismStep& s) const {
    auto [a, b] = images(s);
    return ring_.name(0) + " -> " + a.to_string() + ", " + ring_.name(1) + " -> " + b.to_string();
  }

 private:
  Poly substitute(const Poly& p, const AutomorphismStep& s) const {
    auto [a, b] = images(s);
    const Poly im[2] = {a, b};
    return subst(p, im);
  }

  Ring ring_;
  std::vector<AutomorphismStep> steps_;
};

/// Free-function form: image of p under sigma (or its inverse).
inline Poly apply_automorphism2(const Automorphism2& sigma, const Poly& p, Direction dir) {
  return sigma.apply(p, dir);
}

}  // namespace lnd
