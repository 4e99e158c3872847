#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// A Poly lives in a Ring, which is nothing more than an ordered list of
// variable names. Terms are kept sorted strictly descending under the
// lexicographic order in which ring variable 0 is the most significant, with
// no zero coefficients, so two equal polynomials always have identical
// storage.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lnd/errors.hpp"

namespace lnd {

using Integer = mpz_class;
using Rational = mpq_class;
using Exponents = std::vector<std::uint32_t>;

/// Degree reported for the zero polynomial. Every nonzero polynomial has
/// degree >= 0, so comparisons against this sentinel behave like -infinity.
inline constexpr int kZeroDegree = -1;

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

class Ring {
 public:
  Ring() : names_(std::make_shared<const std::vector<std::string>>()) {}

  explicit Ring(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!is_identifier(names[i])) throw std::invalid_argument("invalid variable name '" + names[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (names[j] == names[i]) throw std::invalid_argument("duplicate variable '" + names[i] + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  }

  /// The ambient ring K[x,y,z] of every derivation.
  static const Ring& xyz() {
    static const Ring r({"x", "y", "z"});
    return r;
  }

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }

  std::optional<std::size_t> index_of(std::string_view n) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == n) return i;
    return std::nullopt;
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Three-way lexicographic comparison; variable 0 is the most significant.
inline int lex_compare(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline std::uint32_t exponent_sum(const Exponents& e) {
  std::uint32_t s = 0;
  for (auto v : e) s += v;
  return s;
}

class Poly {
 public:
  struct Term {
    Exponents exps;
    Rational coeff;
  };

  Poly() = default;
  explicit Poly(Ring ring) : ring_(std::move(ring)) {}
  Poly(Ring ring, Rational c) : ring_(std::move(ring)) {
    c.canonicalize();
    if (c != 0) terms_.push_back({Exponents(ring_.size(), 0), std::move(c)});
  }
  Poly(Ring ring, long c) : Poly(std::move(ring), Rational(c)) {}

  static Poly variable(const Ring& ring, std::size_t idx) {
    Exponents e(ring.size(), 0);
    e.at(idx) = 1;
    return monomial(ring, std::move(e), 1);
  }
  static Poly variable(const Ring& ring, std::string_view name) {
    auto idx = ring.index_of(name);
    if (!idx) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    return variable(ring, *idx);
  }
  static Poly monomial(const Ring& ring, Exponents e, Rational c) {
    c.canonicalize();
    Poly p(ring);
    if (e.size() != ring.size()) throw std::invalid_argument("exponent vector does not match ring");
    if (c != 0) p.terms_.push_back({std::move(e), c});
    return p;
  }

  /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
  static Poly from_terms(const Ring& ring, std::vector<Term> terms) {
    for (auto& t : terms) {
      if (t.exps.size() != ring.size()) throw std::invalid_argument("exponent vector does not match ring");
      t.coeff.canonicalize();
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return lex_compare(a.exps, b.exps) > 0; });
    Poly p(ring);
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
        p.terms_.back().coeff += t.coeff;
      } else {
        if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
  }

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exponent_sum(terms_[0].exps) == 0);
  }
  Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
  }
  /// Coefficient of the exponent-zero term.
  Rational constant_term() const {
    if (terms_.empty() || exponent_sum(terms_.back().exps) != 0) return 0;
    return terms_.back().coeff;
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
    return terms_.front();
  }
  const Rational& leading_coeff() const { return leading_term().coeff; }

  int total_degree() const {
    int d = kZeroDegree;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(exponent_sum(t.exps)));
    return d;
  }
  int degree(std::size_t var) const {
    int d = kZeroDegree;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exps[var]));
    return d;
  }
  bool involves(std::size_t var) const { return degree(var) > 0; }

  /// Indices of variables that occur with positive exponent.
  std::vector<std::size_t> support_variables() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < ring_.size(); ++v)
      if (involves(v)) out.push_back(v);
    return out;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Poly& operator+=(const Poly& o) { return *this = add_scaled(*this, o, 1); }
  Poly& operator-=(const Poly& o) { return *this = add_scaled(*this, o, -1); }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(const Poly& a, const Poly& b) { return add_scaled(a, b, 1); }
  friend Poly operator-(const Poly& a, const Poly& b) { return add_scaled(a, b, -1); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same_ring(a, b);
    Poly r(a.ring_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].coeff, a.terms_[0].exps);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].coeff, b.terms_[0].exps);
    std::map<Exponents, Rational, std::greater<>> acc;
    Exponents e(a.ring_.size());
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ta.exps[i] + tb.exps[i];
        auto [it, inserted] = acc.try_emplace(e, 0);
        it->second += ta.coeff * tb.coeff;
      }
    }
    r.terms_.reserve(acc.size());
    for (auto& [ex, c] : acc)
      if (c != 0) r.terms_.push_back({ex, c});
    return r;
  }

  Poly scaled(Rational c) const {
    c.canonicalize();
    if (c == 0) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// c * x^m * this.
  Poly mul_term(Rational c, const Exponents& m) const {
    c.canonicalize();
    Poly r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Exponents e = t.exps;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += m[i];
      r.terms_.push_back({std::move(e), t.coeff * c});
    }
    return r;
  }

  /// this -= c * x^m * g, in one merge pass.
  void sub_mul_term(const Rational& c, const Exponents& m, const Poly& g) {
    check_same_ring(*this, g);
    std::vector<Term> out;
    out.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    Exponents e(ring_.size());
    while (i < terms_.size() || j < g.terms_.size()) {
      if (j < g.terms_.size()) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = g.terms_[j].exps[k] + m[k];
      }
      int cmp = i >= terms_.size() ? -1 : (j >= g.terms_.size() ? 1 : lex_compare(terms_[i].exps, e));
      if (cmp > 0) {
        out.push_back(std::move(terms_[i++]));
      } else if (cmp < 0) {
        out.push_back({e, -c * g.terms_[j++].coeff});
      } else {
        Rational v = terms_[i].coeff - c * g.terms_[j].coeff;
        if (v != 0) out.push_back({std::move(terms_[i].exps), std::move(v)});
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (!(a.ring_ == b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
  }

  /// Expression string in the parser's grammar, terms in descending lex order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coeff;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t v = 0; v < t.exps.size(); ++v) {
        if (t.exps[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += ring_.name(v);
        if (t.exps[v] > 1) mono += "^" + std::to_string(t.exps[v]);
      }
      if (mono.empty()) {
        out += c.get_str();
      } else if (c == 1) {
        out += mono;
      } else {
        out += c.get_str() + "*" + mono;
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

 private:
  static void check_same_ring(const Poly& a, const Poly& b) {
    if (!(a.ring_ == b.ring_)) throw RingMismatch("polynomials belong to different rings");
  }

  static Poly add_scaled(const Poly& a, const Poly& b, int sign) {
    check_same_ring(a, b);
    Poly r(a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int cmp = i >= a.terms_.size() ? -1
                : j >= b.terms_.size() ? 1
                                       : lex_compare(a.terms_[i].exps, b.terms_[j].exps);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        const auto& t = b.terms_[j++];
        r.terms_.push_back({t.exps, sign > 0 ? t.coeff : Rational(-t.coeff)});
      } else {
        Rational v = sign > 0 ? Rational(a.terms_[i].coeff + b.terms_[j].coeff) : Rational(a.terms_[i].coeff - b.terms_[j].coeff);
        if (v != 0) r.terms_.push_back({a.terms_[i].exps, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Ring ring_;
  std::vector<Term> terms_;
};

inline Poly pow(const Poly& p, unsigned n) {
  Poly result(p.ring(), 1);
  Poly base = p;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// Exact quotient p / q, or nullopt when q does not divide p.
inline std::optional<Poly> exact_div(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (!(p.ring() == q.ring())) throw RingMismatch("polynomials belong to different rings");
  Poly rem = p;
  std::vector<Poly::Term> quot;
  const auto& lt = q.leading_term();
  Exponents m(p.ring().size());
  while (!rem.is_zero()) {
    const auto& rt = rem.leading_term();
    if (!divides(lt.exps, rt.exps)) return std::nullopt;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = rt.exps[i] - lt.exps[i];
    Rational c = rt.coeff / lt.coeff;
    quot.push_back({m, c});
    rem.sub_mul_term(c, m, q);
  }
  // Quotient terms arrive in strictly descending order already.
  return Poly::from_terms(p.ring(), std::move(quot));
}

inline Poly diff(const Poly& p, std::size_t var) {
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms()) {
    if (t.exps[var] == 0) continue;
    Exponents e = t.exps;
    e[var] -= 1;
    out.push_back({std::move(e), t.coeff * t.exps[var]});
  }
  return Poly::from_terms(p.ring(), std::move(out));
}

inline Poly diff(const Poly& p, std::string_view var) {
  auto idx = p.ring().index_of(var);
  if (!idx) return Poly(p.ring());
  return diff(p, *idx);
}

/// Substitutes images[i] for ring variable i. All images share one target ring.
inline Poly subst(const Poly& p, std::span<const Poly> images) {
  if (images.size() != p.ring().size()) throw std::invalid_argument("substitution needs one image per variable");
  if (images.empty()) return p;
  const Ring& target = images[0].ring();
  for (const auto& im : images)
    if (!(im.ring() == target)) throw RingMismatch("substitution images belong to different rings");
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const Poly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Poly(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Poly acc(target);
  for (const auto& t : p.terms()) {
    Poly term(target, t.coeff);
    for (std::size_t v = 0; v < t.exps.size(); ++v)
      if (t.exps[v] > 0) term *= power(v, t.exps[v]);
    acc += term;
  }
  return acc;
}

/// Substitution by variable name; unnamed variables map to themselves
/// (re-embedded by name into the target ring, which must contain them).
inline Poly subst(const Poly& p, const std::map<std::string, Poly>& images, const Ring& target) {
  std::vector<Poly> im;
  im.reserve(p.ring().size());
  for (std::size_t v = 0; v < p.ring().size(); ++v) {
    auto it = images.find(p.ring().name(v));
    if (it != images.end()) {
      im.push_back(it->second);
    } else if (auto idx = target.index_of(p.ring().name(v))) {
      im.push_back(Poly::variable(target, *idx));
    } else if (!p.involves(v)) {
      im.push_back(Poly(target));
    } else {
      throw RingMismatch("variable '" + p.ring().name(v) + "' has no image in the target ring");
    }
  }
  return subst(p, im);
}

/// Re-expresses p in another ring, matching variables by name.
inline Poly change_ring(const Poly& p, const Ring& target) {
  if (p.ring() == target) return p;
  std::vector<std::optional<std::size_t>> map(p.ring().size());
  for (std::size_t v = 0; v < p.ring().size(); ++v) {
    map[v] = target.index_of(p.ring().name(v));
    if (!map[v] && p.involves(v))
      throw RingMismatch("variable '" + p.ring().name(v) + "' is not part of the target ring");
  }
  std::vector<Poly::Term> out;
  out.reserve(p.num_terms());
  for (const auto& t : p.terms()) {
    Exponents e(target.size(), 0);
    for (std::size_t v = 0; v < t.exps.size(); ++v)
      if (t.exps[v] > 0) e[*map[v]] = t.exps[v];
    out.push_back({std::move(e), t.coeff});
  }
  return Poly::from_terms(target, std::move(out));
}

/// Sets variable `var` to the constant `value`.
inline Poly evaluate(const Poly& p, std::size_t var, const Rational& value) {
  std::vector<Poly::Term> out;
  out.reserve(p.num_terms());
  for (const auto& t : p.terms()) {
    Exponents e = t.exps;
    Rational c = t.coeff;
    if (e[var] > 0) {
      Rational pw = 1;
      for (std::uint32_t k = 0; k < e[var]; ++k) pw *= value;
      c *= pw;
      e[var] = 0;
    }
    if (c != 0) out.push_back({std::move(e), std::move(c)});
  }
  return Poly::from_terms(p.ring(), std::move(out));
}

/// Coefficients of p viewed as a polynomial in `var`: result[k] multiplies var^k.
inline std::vector<Poly> coefficients(const Poly& p, std::size_t var) {
  int d = p.degree(var);
  if (d < 0) return {};
  std::vector<std::vector<Poly::Term>> buckets(static_cast<std::size_t>(d) + 1);
  for (const auto& t : p.terms()) {
    Exponents e = t.exps;
    std::uint32_t k = e[var];
    e[var] = 0;
    buckets[k].push_back({std::move(e), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(p.ring(), std::move(b)));
  return out;
}

inline Poly from_coefficients(const std::vector<Poly>& coeffs, std::size_t var, const Ring& ring) {
  std::vector<Poly::Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& t : coeffs[k].terms()) {
      Exponents e = t.exps;
      e[var] += static_cast<std::uint32_t>(k);
      out.push_back({std::move(e), t.coeff});
    }
  }
  return Poly::from_terms(ring, std::move(out));
}

/// Leading coefficient of p as a polynomial in `var`.
inline Poly leading_coefficient_in(const Poly& p, std::size_t var) {
  auto c = coefficients(p, var);
  return c.empty() ? Poly(p.ring()) : c.back();
}

/// det of the 3x3 matrix of partials of (f,g,h) w.r.t. (x,y,z).
inline Poly jacobian3(const Poly& f, const Poly& g, const Poly& h) {
  const Ring& r = Ring::xyz();
  if (!(f.ring() == r) || !(g.ring() == r) || !(h.ring() == r))
    throw RingMismatch("jacobian3 expects polynomials in the ring (x,y,z)");
  Poly m[3][3];
  const Poly* rows[3] = {&f, &g, &h};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = diff(*rows[i], static_cast<std::size_t>(j));
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Deterministic total order on polynomials: total degree, then term lists
/// compared lexicographically (exponents first, coefficient as tie-break).
inline bool poly_less(const Poly& a, const Poly& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
    int c = lex_compare(ta[i].exps, tb[i].exps);
    if (c != 0) return c < 0;
    if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff;
  }
  return ta.size() < tb.size();
}

}  // namespace lnd
