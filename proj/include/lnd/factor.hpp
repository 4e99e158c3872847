#pragma once

// GCDs, squarefree decomposition and irreducible factorization over Q.
//
// Normalization convention used throughout: a normalized polynomial has
// integer coefficients with content 1 and a positive lex-leading coefficient.
// Factorizations carry the remaining rational unit separately.

#include <algorithm>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "lnd/detail/upoly.hpp"
#include "lnd/poly.hpp"

namespace lnd {

/// The rational u such that p / u is normalized. Zero maps to 1.
inline Rational unit_part(const Poly& p) {
  if (p.is_zero()) return 1;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational u(num_gcd, den_lcm);
  u.canonicalize();
  if (p.leading_coeff() < 0) u = -u;
  return u;
}

inline Poly normalize(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / unit_part(p));
}

inline bool is_normalized(const Poly& p) { return p.is_zero() || unit_part(p) == 1; }

namespace detail {

inline Poly quotient_or_throw(const Poly& a, const Poly& b, const char* where) {
  auto q = exact_div(a, b);
  if (!q) throw InternalInconsistency(std::string(where) + ": expected exact division");
  return *q;
}

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b with respect to `var`.
inline Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
  auto bc = coefficients(b, var);
  int db = static_cast<int>(bc.size()) - 1;
  const Poly& lb = bc.back();
  int steps = a.degree(var) - db + 1;
  while (!a.is_zero() && a.degree(var) >= db) {
    int da = a.degree(var);
    Poly la = leading_coefficient_in(a, var);
    Exponents shift(a.ring().size(), 0);
    shift[var] = static_cast<std::uint32_t>(da - db);
    a = lb * a - (la * b).mul_term(1, shift);
    --steps;
  }
  if (steps > 0) a *= pow(lb, static_cast<unsigned>(steps));
  return a;
}

inline Poly gcd_rec(const Poly& a, const Poly& b);
inline Poly gcd_prs(const Poly& a, const Poly& b);

inline Poly content_in(const Poly& p, std::size_t var) {
  auto cs = coefficients(p, var);
  // Cheapest coefficients first: a constant one ends the search immediately.
  std::sort(cs.begin(), cs.end(), [](const Poly& x, const Poly& y) { return x.num_terms() < y.num_terms(); });
  Poly g(p.ring());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = gcd_rec(g, c);
    if (g.is_constant()) return Poly(p.ring(), 1);
  }
  return g;
}

inline Poly primitive_in(const Poly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return normalize(quotient_or_throw(p, content_in(p, var), "primitive part"));
}

/// True when an evaluation of all variables but `var` proves a and b (both
/// primitive in var) have no common factor involving var.
inline bool coprime_by_evaluation(const Poly& a, const Poly& b, std::size_t var) {
  static constexpr long kPoints[][2] = {{2, 3}, {-3, 5}, {7, -2}};
  Poly la = leading_coefficient_in(a, var), lb = leading_coefficient_in(b, var);
  for (const auto& pt : kPoints) {
    Poly ea = a, eb = b, ela = la, elb = lb;
    long k = 0;
    for (std::size_t v = 0; v < a.ring().size(); ++v) {
      if (v == var) continue;
      Rational val = pt[k % 2] + static_cast<long>(v) * pt[(k + 1) % 2];
      ++k;
      ea = evaluate(ea, v, val);
      eb = evaluate(eb, v, val);
      ela = evaluate(ela, v, val);
      elb = evaluate(elb, v, val);
    }
    if (ela.is_zero() || elb.is_zero()) continue;
    Poly g(a.ring());
    // Univariate Euclid over Q.
    Poly x = ea, y = eb;
    while (!y.is_zero()) {
      Poly r = x;
      const auto& lt = y.leading_term();
      while (!r.is_zero() && r.degree(var) >= y.degree(var)) {
        Exponents m(r.ring().size(), 0);
        m[var] = r.leading_term().exps[var] - lt.exps[var];
        r.sub_mul_term(r.leading_coeff() / lt.coeff, m, y);
      }
      x = std::move(y);
      y = std::move(r);
    }
    return x.degree(var) == 0;
  }
  return false;
}

inline Poly gcd_prs(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(a.ring(), 1);
  // A variable present in only one operand cannot occur in the gcd.
  for (std::size_t v = 0; v < a.ring().size(); ++v) {
    bool ia = a.involves(v), ib = b.involves(v);
    if (ia && !ib) return gcd_rec(content_in(a, v), b);
    if (ib && !ia) return gcd_rec(a, content_in(b, v));
  }
  std::size_t var = a.ring().size();
  for (std::size_t v = 0; v < a.ring().size(); ++v) {
    if (!a.involves(v)) continue;
    if (var == a.ring().size() ||
        std::max(a.degree(v), b.degree(v)) < std::max(a.degree(var), b.degree(var)))
      var = v;
  }
  Poly ca = content_in(a, var), cb = content_in(b, var);
  Poly gc = gcd_rec(ca, cb);
  Poly pa = quotient_or_throw(a, ca, "gcd"), pb = quotient_or_throw(b, cb, "gcd");
  if (coprime_by_evaluation(pa, pb, var)) return gc;
  if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);

  // Subresultant PRS.
  Poly g(a.ring(), 1), h(a.ring(), 1);
  Poly result(a.ring());
  while (true) {
    int d = pa.degree(var) - pb.degree(var);
    Poly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) {
      result = pb;
      break;
    }
    if (r.degree(var) == 0) {
      result = Poly(a.ring(), 1);
      break;
    }
    pa = std::move(pb);
    pb = quotient_or_throw(r, g * pow(h, static_cast<unsigned>(d)), "subresultant");
    g = leading_coefficient_in(pa, var);
    if (d == 0) {
      // h unchanged
    } else if (d == 1) {
      h = g;
    } else {
      h = quotient_or_throw(pow(g, static_cast<unsigned>(d)), pow(h, static_cast<unsigned>(d - 1)), "subresultant");
    }
  }
  return normalize(gc * primitive_in(result, var));
}

inline Poly gcd_rec(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant()) return Poly(a.ring(), 1);
  return gcd_prs(a, b);
}


}  // namespace detail

/// Normalized greatest common divisor; gcd(p, 0) = normalize(p).
inline Poly gcd(const Poly& p, const Poly& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  if (!(p.ring() == q.ring())) throw RingMismatch("polynomials belong to different rings");
  return detail::gcd_rec(p, q);
}

/// gcd over a list, skipping zeros.
inline Poly gcd(const std::vector<Poly>& ps) {
  if (ps.empty()) throw std::invalid_argument("gcd of an empty list");
  Poly g(ps.front().ring());
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? normalize(p) : gcd(g, p);
  }
  if (g.is_zero()) throw std::invalid_argument("gcd of zero polynomials");
  return g;
}

/// Content of p viewed as a polynomial in `var` (normalized, free of var).
inline Poly content(const Poly& p, std::size_t var) { return detail::content_in(p, var); }

struct SquarefreePart {
  Poly factor;
  unsigned multiplicity;
};

namespace detail {

/// Yun's algorithm with respect to `var`; p must be primitive in var.
inline void yun(const Poly& p, std::size_t var, std::map<unsigned, Poly>& out) {
  Poly dp = diff(p, var);
  Poly a0 = gcd(p, dp);
  Poly b = quotient_or_throw(p, a0, "squarefree");
  Poly c = quotient_or_throw(dp, a0, "squarefree");
  Poly d = c - diff(b, var);
  unsigned i = 1;
  while (b.involves(var)) {
    Poly a = gcd(b, d);
    if (!a.is_constant()) {
      auto [it, fresh] = out.try_emplace(i, Poly(p.ring(), 1));
      it->second *= a;
    }
    b = quotient_or_throw(b, a, "squarefree");
    c = quotient_or_throw(d, a, "squarefree");
    d = c - diff(b, var);
    ++i;
  }
}

inline void squarefree_rec(const Poly& p, std::map<unsigned, Poly>& out) {
  if (p.is_constant()) return;
  std::size_t var = p.support_variables().front();
  Poly cont = content_in(p, var);
  yun(quotient_or_throw(p, cont, "squarefree"), var, out);
  squarefree_rec(cont, out);
}

}  // namespace detail

/// Pairwise-coprime squarefree parts, ascending multiplicity; the weighted
/// product reconstructs p up to a rational unit.
inline std::vector<SquarefreePart> squarefree(const Poly& p) {
  if (p.is_constant()) throw std::invalid_argument("squarefree decomposition of a constant");
  std::map<unsigned, Poly> parts;
  detail::squarefree_rec(p, parts);
  std::vector<SquarefreePart> out;
  for (auto& [m, f] : parts) out.push_back({normalize(f), m});
  return out;
}

struct Factorization {
  Rational unit = 1;
  std::vector<std::pair<Poly, unsigned>> factors;

  Poly expand(const Ring& ring) const {
    Poly r(ring, unit);
    for (const auto& [f, m] : factors) r *= pow(f, m);
    return r;
  }
};

namespace detail {

inline ZPoly to_zpoly(const Poly& p, std::size_t var) {
  mpz_class den = 1;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  ZPoly z(static_cast<std::size_t>(p.degree(var)) + 1);
  for (const auto& t : p.terms()) {
    Rational c = t.coeff * den;
    z[t.exps[var]] = c.get_num();
  }
  return z;
}

inline Poly from_zpoly(const ZPoly& z, std::size_t var, const Ring& ring) {
  std::vector<Poly::Term> terms;
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] == 0) continue;
    Exponents e(ring.size(), 0);
    e[var] = static_cast<std::uint32_t>(k);
    terms.push_back({std::move(e), Rational(z[k])});
  }
  return Poly::from_terms(ring, std::move(terms));
}

inline QPoly to_qpoly(const Poly& p, std::size_t var) {
  QPoly q(static_cast<std::size_t>(std::max(p.degree(var), 0)) + 1);
  for (const auto& t : p.terms()) q[t.exps[var]] += t.coeff;
  trim(q);
  return q;
}

inline Poly from_qpoly(const QPoly& q, std::size_t var, const Ring& ring) {
  std::vector<Poly::Term> terms;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q[k] == 0) continue;
    Exponents e(ring.size(), 0);
    e[var] = static_cast<std::uint32_t>(k);
    terms.push_back({std::move(e), q[k]});
  }
  return Poly::from_terms(ring, std::move(terms));
}

/// Irreducible factors of a squarefree polynomial involving only `var`.
inline std::vector<Poly> factor_squarefree_univariate(const Poly& p, std::size_t var) {
  ZPoly z = z_primitive(to_zpoly(p, var));
  std::vector<Poly> out;
  for (const auto& f : zassenhaus(z)) out.push_back(normalize(from_zpoly(f, var, p.ring())));
  return out;
}

inline std::uint32_t y_degree(const Exponents& e, std::size_t main_var) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (i != main_var) s += e[i];
  return s;
}

/// Product with every term of total degree > max_deg in the non-main
/// variables dropped.
inline Poly mul_truncated(const Poly& a, const Poly& b, std::size_t main_var, std::uint32_t max_deg) {
  std::map<Exponents, Rational, std::greater<>> acc;
  Exponents e(a.ring().size());
  for (const auto& ta : a.terms()) {
    std::uint32_t da = y_degree(ta.exps, main_var);
    if (da > max_deg) continue;
    for (const auto& tb : b.terms()) {
      if (da + y_degree(tb.exps, main_var) > max_deg) continue;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ta.exps[i] + tb.exps[i];
      acc[e] += ta.coeff * tb.coeff;
    }
  }
  std::vector<Poly::Term> terms;
  for (auto& [ex, c] : acc)
    if (c != 0) terms.push_back({ex, c});
  return Poly::from_terms(a.ring(), std::move(terms));
}

inline Poly product_truncated(const std::vector<Poly>& fs, std::span<const std::size_t> which, std::size_t main_var,
                              std::uint32_t max_deg, const Ring& ring) {
  Poly r(ring, 1);
  for (auto i : which) r = mul_truncated(r, fs[i], main_var, max_deg);
  return r;
}

inline std::uint32_t max_y_degree(const Poly& p, std::size_t main_var) {
  std::uint32_t d = 0;
  for (const auto& t : p.terms()) d = std::max(d, y_degree(t.exps, main_var));
  return d;
}

/// Multivariate factors of a squarefree q that is primitive in main_var
/// with deg_{main_var} q >= 2, by evaluation, Hensel lifting over Q and
/// subset recombination.
inline std::vector<Poly> factor_primitive_multivariate(const Poly& q, std::size_t xv) {
  const Ring& ring = q.ring();
  auto coeffs = coefficients(q, xv);
  const std::size_t n = coeffs.size() - 1;
  const Poly lead = coeffs.back();
  std::vector<std::size_t> others;
  for (auto v : q.support_variables())
    if (v != xv) others.push_back(v);

  // Monic transform: qm(x) = lead^(n-1) * q(x / lead).
  Poly qm(ring);
  {
    Poly lpow(ring, 1);
    std::vector<Poly> mc(n + 1, Poly(ring));
    mc[n] = Poly(ring, 1);
    for (std::size_t i = n; i-- > 0;) {
      mc[i] = coeffs[i] * lpow;
      lpow *= lead;
    }
    qm = from_coefficients(mc, xv, ring);
  }

  // Choose an evaluation point: deterministic sequence, prefer few factors.
  std::mt19937 rng(0x5eed);
  std::vector<Rational> best_point;
  std::vector<Poly> best_factors;
  int good_points = 0;
  for (int attempt = 0; attempt < 400 && good_points < 3; ++attempt) {
    std::vector<Rational> point(ring.size(), 0);
    if (attempt > 0) {
      int range = 1 + attempt / 8;
      std::uniform_int_distribution<int> dist(-range, range);
      for (auto v : others) point[v] = dist(rng);
    }
    Poly lv = lead;
    Poly img = qm;
    for (auto v : others) {
      lv = evaluate(lv, v, point[v]);
      img = evaluate(img, v, point[v]);
    }
    if (lv.is_zero()) continue;
    QPoly iq = to_qpoly(img, xv);
    if (deg(q_gcd(iq, q_deriv(iq))) != 0) continue;
    ++good_points;
    auto facs = factor_squarefree_univariate(img, xv);
    if (best_factors.empty() || facs.size() < best_factors.size()) {
      best_factors = std::move(facs);
      best_point = std::move(point);
    }
    if (best_factors.size() == 1) break;
  }
  if (good_points == 0) throw InternalInconsistency("no admissible evaluation point for factorization");
  if (best_factors.size() == 1) return {normalize(q)};

  // Shift so the evaluation point is the origin.
  std::vector<Poly> shift_fwd, shift_back;
  for (std::size_t v = 0; v < ring.size(); ++v) {
    Poly var = Poly::variable(ring, v);
    shift_fwd.push_back(var + Poly(ring, best_point[v]));
    shift_back.push_back(var - Poly(ring, best_point[v]));
  }
  Poly qs = subst(qm, shift_fwd);

  const std::size_t r = best_factors.size();
  std::vector<QPoly> h(r);
  for (std::size_t i = 0; i < r; ++i) h[i] = q_monic(to_qpoly(best_factors[i], xv));
  std::vector<QPoly> inv(r);
  for (std::size_t i = 0; i < r; ++i) {
    QPoly b = {1};
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) b = q_mul(b, h[j]);
    inv[i] = q_inverse_mod(b, h[i]);
  }
  std::vector<Poly> lifted;
  for (std::size_t i = 0; i < r; ++i) lifted.push_back(from_qpoly(h[i], xv, ring));
  std::vector<std::size_t> all(r);
  for (std::size_t i = 0; i < r; ++i) all[i] = i;

  const std::uint32_t bound = max_y_degree(qs, xv);
  for (std::uint32_t m = 1; m <= bound; ++m) {
    Poly prod = product_truncated(lifted, all, xv, m, ring);
    std::vector<Poly::Term> err_terms;
    Poly err = qs - prod;
    for (const auto& t : err.terms()) {
      std::uint32_t d = y_degree(t.exps, xv);
      if (d < m) throw InternalInconsistency("Hensel lifting lost an invariant");
      if (d == m) err_terms.push_back(t);
    }
    if (err_terms.empty()) continue;
    std::map<Exponents, QPoly> groups;
    for (const auto& t : err_terms) {
      Exponents ym = t.exps;
      ym[xv] = 0;
      auto& g = groups[ym];
      if (g.size() <= t.exps[xv]) g.resize(t.exps[xv] + 1);
      g[t.exps[xv]] += t.coeff;
    }
    for (auto& [ym, e] : groups) {
      trim(e);
      for (std::size_t i = 0; i < r; ++i) {
        QPoly sigma = q_mod(q_mul(e, inv[i]), h[i]);
        if (sigma.empty()) continue;
        lifted[i] += from_qpoly(sigma, xv, ring).mul_term(1, ym);
      }
    }
  }

  // Recombination.
  std::vector<Poly> monic_factors;
  Poly cur = qs;
  std::vector<std::size_t> rem = all;
  std::size_t k = 1;
  while (2 * k <= rem.size()) {
    bool found = false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::uint32_t cur_bound = max_y_degree(cur, xv);
    while (true) {
      std::vector<std::size_t> pick;
      for (auto i : idx) pick.push_back(rem[i]);
      Poly g = product_truncated(lifted, pick, xv, cur_bound, ring);
      if (auto quo = exact_div(cur, g)) {
        monic_factors.push_back(g);
        cur = *quo;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0, j = 0; i < rem.size(); ++i) {
          if (j < k && idx[j] == i) {
            ++j;
          } else {
            keep.push_back(rem[i]);
          }
        }
        rem = std::move(keep);
        found = true;
        break;
      }
      int pos = static_cast<int>(k) - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == rem.size() - k + static_cast<std::size_t>(pos)) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++k;
  }
  if (cur.involves(xv)) monic_factors.push_back(cur);

  // Undo the shift and the monic transform.
  std::vector<Poly> out;
  std::vector<Poly> scale_x;
  for (std::size_t v = 0; v < ring.size(); ++v) scale_x.push_back(Poly::variable(ring, v));
  scale_x[xv] = lead * Poly::variable(ring, xv);
  for (const auto& g : monic_factors) {
    Poly back = subst(subst(g, shift_back), scale_x);
    out.push_back(primitive_in(back, xv));
  }
  return out;
}

inline void factor_squarefree_rec(const Poly& q, std::vector<Poly>& out) {
  if (q.is_constant()) return;
  auto vars = q.support_variables();
  if (vars.size() == 1) {
    for (auto& f : factor_squarefree_univariate(q, vars[0])) out.push_back(std::move(f));
    return;
  }
  std::size_t xv = vars[0];
  for (auto v : vars)
    if (q.degree(v) < q.degree(xv)) xv = v;
  Poly cont = content_in(q, xv);
  Poly prim = quotient_or_throw(q, cont, "factor");
  factor_squarefree_rec(cont, out);
  if (prim.degree(xv) == 1) {
    out.push_back(normalize(prim));
    return;
  }
  for (auto& f : factor_primitive_multivariate(prim, xv)) out.push_back(std::move(f));
}

inline Factorization finish_factorization(const Poly& p, std::vector<std::pair<Poly, unsigned>> facs) {
  std::sort(facs.begin(), facs.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  Factorization out;
  out.factors = std::move(facs);
  Poly prod = out.expand(p.ring());
  out.unit = p.leading_coeff() / prod.leading_coeff();
  if (!(prod.scaled(out.unit) == p)) throw InternalInconsistency("factorization does not reconstruct its input");
  return out;
}

}  // namespace detail

/// Normalized gcd of two polynomials; same as gcd(p, q).
inline Poly gcd_multi(const Poly& p, const Poly& q) { return gcd(p, q); }

/// Factorization of a polynomial in one variable.
inline Factorization factor_uni(const Poly& p) {
  if (p.is_constant()) throw std::invalid_argument("cannot factor a constant");
  auto vars = p.support_variables();
  if (vars.size() != 1) throw std::invalid_argument("factor_uni expects a polynomial in one variable");
  std::vector<std::pair<Poly, unsigned>> facs;
  for (const auto& part : squarefree(p))
    for (auto& f : detail::factor_squarefree_univariate(part.factor, vars[0])) facs.emplace_back(std::move(f), part.multiplicity);
  return detail::finish_factorization(p, std::move(facs));
}

/// Irreducible factorization over Q of a nonconstant polynomial.
inline Factorization factor_multi(const Poly& p) {
  if (p.is_constant()) throw std::invalid_argument("cannot factor a constant");
  std::vector<std::pair<Poly, unsigned>> facs;
  for (const auto& part : squarefree(p)) {
    std::vector<Poly> irr;
    detail::factor_squarefree_rec(part.factor, irr);
    for (auto& f : irr) facs.emplace_back(std::move(f), part.multiplicity);
  }
  return detail::finish_factorization(p, std::move(facs));
}

}  // namespace lnd
