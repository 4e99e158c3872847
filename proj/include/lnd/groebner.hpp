#pragma once

// Lexicographic Groebner bases (Buchberger with normal selection and the
// coprime/chain criteria) and elimination ideals.
//
// A lex order is given by a precedence list from least to greatest variable.
// Internally every basis lives in the ring whose variable list is that
// precedence reversed, so Poly's native descending-lex storage coincides with
// the order and leading terms are simply terms().front().

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lnd/errors.hpp"
#include "lnd/poly.hpp"

namespace lnd {

using Clock = std::chrono::steady_clock;

/// Absent means "no limit".
using Deadline = std::optional<Clock::time_point>;

inline Deadline deadline_after(double seconds) {
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

inline void check_deadline(const Deadline& d, const char* what) {
  if (d && Clock::now() > *d) throw DeadlineExceeded(std::string(what) + ": time budget exceeded");
}

struct MonomialOrder {
  std::vector<std::string> precedence;  // least to greatest

  static MonomialOrder lex(std::vector<std::string> least_to_greatest) {
    std::set<std::string> seen;
    for (const auto& v : least_to_greatest) {
      if (!is_identifier(v)) throw std::invalid_argument("invalid variable name '" + v + "'");
      if (!seen.insert(v).second) throw std::invalid_argument("variable '" + v + "' listed twice in order");
    }
    if (least_to_greatest.empty()) throw std::invalid_argument("empty monomial order");
    return MonomialOrder{std::move(least_to_greatest)};
  }

  /// Ring in which native storage order equals this order.
  Ring ring() const { return Ring(std::vector<std::string>(precedence.rbegin(), precedence.rend())); }

  std::string to_string() const {
    std::string s = "lex:";
    for (std::size_t i = 0; i < precedence.size(); ++i) s += (i ? "," : "") + precedence[i];
    return s;
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

class GroebnerBasis {
 public:
  GroebnerBasis(MonomialOrder order, std::vector<Poly> gens) : order_(std::move(order)), gens_(std::move(gens)) {}

  const MonomialOrder& order() const { return order_; }
  const std::vector<Poly>& generators() const { return gens_; }
  Ring ring() const { return order_.ring(); }
  bool is_unit_ideal() const { return gens_.size() == 1 && gens_[0].is_constant(); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.order_ == b.order_ && a.gens_ == b.gens_;
  }

 private:
  MonomialOrder order_;
  std::vector<Poly> gens_;
};

namespace detail {

inline Poly monic(const Poly& p) { return p.is_zero() ? p : p.scaled(1 / p.leading_coeff()); }

inline Exponents lcm_exps(const Exponents& a, const Exponents& b) {
  Exponents m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

inline Exponents sub_exps(const Exponents& a, const Exponents& b) {
  Exponents m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
  return m;
}

inline bool coprime_exps(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

/// Full reduction of p modulo the monic polynomials in `basis`. `skip` names
/// an index to ignore (used during interreduction).
inline Poly reduce_full(Poly p, const std::vector<Poly>& basis, const Deadline& deadline,
                        std::size_t skip = static_cast<std::size_t>(-1)) {
  std::vector<Poly::Term> rem;
  while (!p.is_zero()) {
    check_deadline(deadline, "Groebner reduction");
    const Poly::Term lt = p.leading_term();
    bool reduced = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (i == skip) continue;
      const auto& g = basis[i];
      if (!divides(g.leading_term().exps, lt.exps)) continue;
      p.sub_mul_term(lt.coeff, sub_exps(lt.exps, g.leading_term().exps), g);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.push_back(lt);
      p.sub_mul_term(lt.coeff, Exponents(lt.exps.size(), 0), Poly::monomial(p.ring(), lt.exps, 1));
    }
  }
  return Poly::from_terms(p.ring(), std::move(rem));
}

inline Poly s_polynomial(const Poly& f, const Poly& g) {
  const auto& a = f.leading_term();
  const auto& b = g.leading_term();
  Exponents l = lcm_exps(a.exps, b.exps);
  return f.mul_term(1 / a.coeff, sub_exps(l, a.exps)) - g.mul_term(1 / b.coeff, sub_exps(l, b.exps));
}

/// Brings the inputs into the order ring.
inline std::vector<Poly> to_order_ring(const std::vector<Poly>& gens, const MonomialOrder& order) {
  Ring ring = order.ring();
  std::vector<Poly> out;
  for (const auto& g : gens) {
    for (auto v : g.support_variables())
      if (!ring.index_of(g.ring().name(v)))
        throw RingMismatch("variable '" + g.ring().name(v) + "' is not covered by the monomial order");
    out.push_back(change_ring(g, ring));
  }
  return out;
}

/// Minimal, fully interreduced, monic, sorted by leading term ascending.
inline std::vector<Poly> reduce_basis(std::vector<Poly> g, const Deadline& deadline) {
  for (const auto& p : g)
    if (p.is_constant()) return {Poly(p.ring(), 1)};
  std::sort(g.begin(), g.end(),
            [](const Poly& a, const Poly& b) { return lex_compare(a.leading_term().exps, b.leading_term().exps) < 0; });
  std::vector<Poly> minimal;
  for (const auto& p : g) {
    bool redundant = false;
    for (const auto& q : minimal)
      if (divides(q.leading_term().exps, p.leading_term().exps)) redundant = true;
    if (!redundant) minimal.push_back(monic(p));
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) minimal[i] = monic(reduce_full(minimal[i], minimal, deadline, i));
  return minimal;
}

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `gens`.
inline GroebnerBasis buchberger(const std::vector<Poly>& gens, const MonomialOrder& order, Deadline deadline = {}) {
  if (gens.empty()) throw std::invalid_argument("buchberger needs at least one generator");
  for (const auto& g : gens)
    if (!(g.ring() == gens.front().ring())) throw RingMismatch("generators belong to different rings");
  using detail::lcm_exps;

  std::vector<Poly> basis;
  for (auto& g : detail::to_order_ring(gens, order))
    if (!g.is_zero()) basis.push_back(detail::monic(g));
  if (basis.empty()) return GroebnerBasis(order, {});

  struct Pair {
    std::size_t i, j;
    Exponents lcm;
  };
  std::vector<Pair> pairs;
  auto pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::any_of(pairs.begin(), pairs.end(), [&](const Pair& p) { return p.i == a && p.j == b; });
  };
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      pairs.push_back({i, j, lcm_exps(basis[i].leading_term().exps, basis[j].leading_term().exps)});

  while (!pairs.empty()) {
    check_deadline(deadline, "Groebner basis");
    // Normal selection: smallest lcm, ties broken by index for determinism.
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      int c = lex_compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair pr = *best;
    pairs.erase(best);
    const auto& ei = basis[pr.i].leading_term().exps;
    const auto& ej = basis[pr.j].leading_term().exps;
    if (detail::coprime_exps(ei, ej)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (divides(basis[k].leading_term().exps, pr.lcm) && !pending(pr.i, k) && !pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    Poly h = detail::reduce_full(detail::s_polynomial(basis[pr.i], basis[pr.j]), basis, deadline);
    if (h.is_zero()) continue;
    if (h.is_constant()) return GroebnerBasis(order, {Poly(h.ring(), 1)});
    basis.push_back(detail::monic(h));
    std::size_t n = basis.size() - 1;
    for (std::size_t k = 0; k < n; ++k)
      pairs.push_back({k, n, lcm_exps(basis[k].leading_term().exps, basis[n].leading_term().exps)});
  }
  return GroebnerBasis(order, detail::reduce_basis(std::move(basis), deadline));
}

/// Remainder of p modulo G; zero iff p lies in the ideal. The result lives in
/// G's ring.
inline Poly normal_form(const Poly& p, const GroebnerBasis& G, Deadline deadline = {}) {
  Poly q = detail::to_order_ring({p}, G.order()).front();
  return detail::reduce_full(std::move(q), G.generators(), deadline);
}

/// Generators of the elimination ideal onto `keep`, which must be the least
/// block of `order`.
inline std::vector<Poly> eliminate(const std::vector<Poly>& gens, const std::vector<std::string>& keep,
                                   const MonomialOrder& order, Deadline deadline = {}) {
  if (keep.size() > order.precedence.size())
    throw std::invalid_argument("elimination block larger than the variable list");
  std::set<std::string> want(keep.begin(), keep.end());
  std::set<std::string> block(order.precedence.begin(), order.precedence.begin() + static_cast<long>(keep.size()));
  if (want != block || want.size() != keep.size())
    throw std::invalid_argument("kept variables must be the least block of the monomial order");
  GroebnerBasis G = buchberger(gens, order, deadline);
  Ring ring = order.ring();
  std::vector<Poly> out;
  for (const auto& g : G.generators()) {
    auto vars = g.support_variables();
    if (std::all_of(vars.begin(), vars.end(), [&](std::size_t v) { return want.count(ring.name(v)) > 0; }))
      out.push_back(g);
  }
  return out;
}

}  // namespace lnd
