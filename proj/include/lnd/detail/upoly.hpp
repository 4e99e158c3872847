#pragma once

// Dense univariate polynomials over Z, Z/p and Q. Coefficient vectors are
// little-endian (index = degree) and trimmed of trailing zeros; the empty
// vector is the zero polynomial.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "lnd/errors.hpp"

namespace lnd::detail {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;
using ModPoly = std::vector<std::int64_t>;

template <class V>
void trim(V& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

template <class V>
int deg(const V& p) {
  return static_cast<int>(p.size()) - 1;
}

// ---------------------------------------------------------------- Q[x]

inline QPoly q_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline QPoly q_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline QPoly q_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline std::pair<QPoly, QPoly> q_divmod(QPoly a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  if (a.size() < b.size()) return {{}, a};
  QPoly q(a.size() - b.size() + 1);
  const mpq_class& lb = b.back();
  for (int i = deg(a); i >= deg(b); --i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    mpq_class c = a[static_cast<std::size_t>(i)] / lb;
    std::size_t shift = static_cast<std::size_t>(i - deg(b));
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline QPoly q_mod(const QPoly& a, const QPoly& b) { return q_divmod(a, b).second; }

inline QPoly q_monic(QPoly a) {
  if (a.empty()) return a;
  mpq_class l = a.back();
  for (auto& c : a) c /= l;
  return a;
}

inline QPoly q_gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = q_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return q_monic(a);
}

inline QPoly q_deriv(const QPoly& a) {
  QPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

/// a^{-1} mod m; requires gcd(a, m) = 1.
inline QPoly q_inverse_mod(const QPoly& a, const QPoly& m) {
  QPoly r0 = m, r1 = q_mod(a, m);
  QPoly t0, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = q_divmod(r0, r1);
    QPoly t2 = q_sub(t0, q_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw InternalInconsistency("q_inverse_mod: operands are not coprime");
  mpq_class inv = 1 / r0[0];
  for (auto& c : t0) c *= inv;
  return q_mod(t0, m);
}

// ---------------------------------------------------------------- Z/p[x]

inline std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b = mod_reduce(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline std::int64_t mod_inv(std::int64_t a, std::int64_t p) { return mod_pow(a, p - 2, p); }

inline ModPoly mp_sub(const ModPoly& a, const ModPoly& b, std::int64_t p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod_reduce(r[i] - b[i], p);
  trim(r);
  return r;
}

inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

inline std::pair<ModPoly, ModPoly> mp_divmod(ModPoly a, const ModPoly& b, std::int64_t p) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  if (a.size() < b.size()) return {{}, a};
  ModPoly q(a.size() - b.size() + 1, 0);
  std::int64_t inv = mod_inv(b.back(), p);
  for (int i = deg(a); i >= deg(b); --i) {
    std::int64_t c = a[static_cast<std::size_t>(i)] * inv % p;
    if (c == 0) continue;
    std::size_t shift = static_cast<std::size_t>(i - deg(b));
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = mod_reduce(a[shift + j] - c * b[j], p);
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline ModPoly mp_mod(const ModPoly& a, const ModPoly& b, std::int64_t p) { return mp_divmod(a, b, p).second; }

inline ModPoly mp_monic(ModPoly a, std::int64_t p) {
  if (a.empty()) return a;
  std::int64_t inv = mod_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

inline ModPoly mp_gcd(ModPoly a, ModPoly b, std::int64_t p) {
  while (!b.empty()) {
    ModPoly r = mp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(a, p);
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
inline std::tuple<ModPoly, ModPoly, ModPoly> mp_ext_gcd(const ModPoly& a, const ModPoly& b, std::int64_t p) {
  ModPoly r0 = a, r1 = b, s0 = {1}, s1, t0, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = mp_divmod(r0, r1, p);
    ModPoly s2 = mp_sub(s0, mp_mul(q, s1, p), p);
    ModPoly t2 = mp_sub(t0, mp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::int64_t inv = mod_inv(r0.back(), p);
  for (auto* v : {&r0, &s0, &t0})
    for (auto& c : *v) c = c * inv % p;
  return {r0, s0, t0};
}

inline ModPoly mp_deriv(const ModPoly& a, std::int64_t p) {
  ModPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<std::int64_t>(i % static_cast<std::size_t>(p)) % p);
  trim(r);
  return r;
}

inline ModPoly mp_powmod(ModPoly base, std::int64_t e, const ModPoly& m, std::int64_t p) {
  ModPoly r = {1};
  base = mp_mod(base, m, p);
  while (e > 0) {
    if (e & 1) r = mp_mod(mp_mul(r, base, p), m, p);
    base = mp_mod(mp_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

/// Null space basis of an n x n matrix over Z/p.
inline std::vector<std::vector<std::int64_t>> mod_nullspace(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  std::size_t n = a.size();
  std::size_t m = n == 0 ? 0 : a[0].size();
  std::vector<int> pivot_col_of_row;
  std::vector<int> pivot_row_of_col(m, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    std::int64_t inv = mod_inv(a[row][col], p);
    for (auto& v : a[row]) v = v * inv % p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      std::int64_t f = a[r][col];
      for (std::size_t c = 0; c < m; ++c) a[r][c] = mod_reduce(a[r][c] - f * a[row][c], p);
    }
    pivot_row_of_col[col] = static_cast<int>(row);
    ++row;
  }
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < m; ++free) {
    if (pivot_row_of_col[free] >= 0) continue;
    std::vector<std::int64_t> v(m, 0);
    v[free] = 1;
    for (std::size_t col = 0; col < m; ++col) {
      int r = pivot_row_of_col[col];
      if (r >= 0) v[col] = mod_reduce(-a[static_cast<std::size_t>(r)][free], p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Berlekamp factorization of a monic squarefree polynomial over Z/p.
inline std::vector<ModPoly> berlekamp(const ModPoly& f, std::int64_t p) {
  int n = deg(f);
  if (n <= 1) return {f};
  std::size_t un = static_cast<std::size_t>(n);
  ModPoly xp = mp_powmod({0, 1}, p, f, p);
  std::vector<ModPoly> rows(un);
  rows[0] = {1};
  for (std::size_t i = 1; i < un; ++i) rows[i] = mp_mod(mp_mul(rows[i - 1], xp, p), f, p);
  // Kernel of (Q - I)^T, where row i of Q holds x^(i*p) mod f.
  std::vector<std::vector<std::int64_t>> a(un, std::vector<std::int64_t>(un, 0));
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) a[j][i] = rows[i][j];
    a[i][i] = mod_reduce(a[i][i] - 1, p);
  }
  auto basis = mod_nullspace(std::move(a), p);
  std::size_t k = basis.size();
  std::vector<ModPoly> factors = {f};
  if (k <= 1) return factors;
  for (auto& vec : basis) {
    if (factors.size() == k) break;
    ModPoly v(vec.begin(), vec.end());
    trim(v);
    if (deg(v) <= 0) continue;
    std::vector<ModPoly> next_factors;
    for (const auto& g : factors) {
      std::vector<ModPoly> pieces = {g};
      for (std::int64_t s = 0; s < p; ++s) {
        std::vector<ModPoly> next;
        for (const auto& h : pieces) {
          if (deg(h) <= 1) {
            next.push_back(h);
            continue;
          }
          ModPoly vs = v;
          vs[0] = mod_reduce(vs[0] - s, p);
          trim(vs);
          ModPoly d = mp_gcd(h, vs, p);
          if (deg(d) > 0 && deg(d) < deg(h)) {
            next.push_back(d);
            next.push_back(mp_monic(mp_divmod(h, d, p).first, p));
          } else {
            next.push_back(h);
          }
        }
        pieces = std::move(next);
      }
      for (auto& pc : pieces) next_factors.push_back(std::move(pc));
    }
    factors = std::move(next_factors);
  }
  if (factors.size() != k) throw InternalInconsistency("Berlekamp split produced the wrong number of factors");
  return factors;
}

// ---------------------------------------------------------------- Z[x]

inline ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

/// Nonnegative residues modulo m.
inline ZPoly z_mod(const ZPoly& a, const mpz_class& m) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  trim(r);
  return r;
}

/// Residues in (-m/2, m/2].
inline ZPoly z_symmetric(const ZPoly& a, const mpz_class& m) {
  ZPoly r = z_mod(a, m);
  mpz_class half = m / 2;
  for (auto& c : r)
    if (c > half) c -= m;
  trim(r);
  return r;
}

inline mpz_class z_content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

/// Primitive part with positive leading coefficient.
inline ZPoly z_primitive(ZPoly a) {
  if (a.empty()) return a;
  mpz_class g = z_content(a);
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

inline std::optional<ZPoly> z_divexact(ZPoly a, const ZPoly& b) {
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  if (a.empty()) return ZPoly{};
  if (a.size() < b.size()) return std::nullopt;
  ZPoly q(a.size() - b.size() + 1);
  for (int i = deg(a); i >= deg(b); --i) {
    auto ui = static_cast<std::size_t>(i);
    if (a[ui] == 0) continue;
    if (!mpz_divisible_p(a[ui].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    mpz_class c = a[ui] / b.back();
    std::size_t shift = static_cast<std::size_t>(i - deg(b));
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  trim(q);
  return q;
}

inline ModPoly z_to_mod(const ZPoly& a, std::int64_t p) {
  ModPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = static_cast<std::int64_t>(mpz_fdiv_ui(a[i].get_mpz_t(), static_cast<unsigned long>(p)));
  trim(r);
  return r;
}

inline ZPoly mod_to_z(const ModPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<long>(a[i]);
  return r;
}

inline bool is_prime_small(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Lifts f = g0*h0 (mod p), all monic, to a factorization modulo p^k.
inline std::pair<ZPoly, ZPoly> hensel_lift_pair(const ZPoly& f, const ModPoly& g0, const ModPoly& h0, std::int64_t p,
                                                unsigned k) {
  auto [gg, s, t] = mp_ext_gcd(g0, h0, p);
  if (gg.size() != 1) throw InternalInconsistency("Hensel lifting requires coprime modular factors");
  ZPoly g = mod_to_z(g0), h = mod_to_z(h0);
  mpz_class pk = p;
  for (unsigned j = 1; j < k; ++j) {
    mpz_class pk1 = pk * p;
    ZPoly e = z_mod(z_sub(f, z_mul(g, h)), pk1);
    ModPoly em(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      mpz_class quo = e[i] / pk;
      em[i] = static_cast<std::int64_t>(mpz_fdiv_ui(quo.get_mpz_t(), static_cast<unsigned long>(p)));
    }
    trim(em);
    ModPoly dg = mp_mod(mp_mul(t, em, p), g0, p);
    ModPoly dh = mp_mod(mp_mul(s, em, p), h0, p);
    g.resize(std::max(g.size(), dg.size()));
    h.resize(std::max(h.size(), dh.size()));
    for (std::size_t i = 0; i < dg.size(); ++i) g[i] += pk * dg[i];
    for (std::size_t i = 0; i < dh.size(); ++i) h[i] += pk * dh[i];
    g = z_mod(g, pk1);
    h = z_mod(h, pk1);
    pk = pk1;
  }
  return {g, h};
}

/// Smallest odd prime p with p not dividing lc(f) and f squarefree mod p.
inline std::int64_t choose_modulus(const ZPoly& f) {
  for (std::int64_t p = 3;; p += 2) {
    if (!is_prime_small(p)) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    ModPoly fm = z_to_mod(f, p);
    if (deg(mp_gcd(fm, mp_deriv(fm, p), p)) == 0) return p;
  }
}

/// Irreducible factors over Z of a primitive squarefree f with deg >= 1 and
/// positive leading coefficient (Zassenhaus: modular factoring, Hensel
/// lifting, subset recombination).
inline std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  if (deg(f) <= 1) return {f};
  std::int64_t p = choose_modulus(f);
  ModPoly fm = mp_monic(z_to_mod(f, p), p);
  std::vector<ModPoly> modular = berlekamp(fm, p);
  if (modular.size() == 1) return {f};

  // Coefficient bound for any factor scaled by lc(f).
  mpz_class norm1 = 0;
  for (const auto& c : f) norm1 += abs(c);
  mpz_class bound = 2 * abs(f.back()) * norm1;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(deg(f)));
  unsigned k = 1;
  mpz_class P = p;
  while (P <= bound) {
    P *= p;
    ++k;
  }

  mpz_class lc_inv;
  mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), P.get_mpz_t());
  ZPoly target = f;
  for (auto& c : target) c *= lc_inv;
  target = z_mod(target, P);

  std::vector<ZPoly> lifted;
  for (std::size_t i = 0; i + 1 < modular.size(); ++i) {
    ModPoly rest = {1};
    for (std::size_t j = i + 1; j < modular.size(); ++j) rest = mp_mul(rest, modular[j], p);
    auto [g, h] = hensel_lift_pair(target, modular[i], rest, p, k);
    lifted.push_back(std::move(g));
    target = std::move(h);
  }
  lifted.push_back(std::move(target));

  std::vector<ZPoly> out;
  ZPoly cur = f;
  std::vector<std::size_t> rem(lifted.size());
  for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = i;
  std::size_t subset_size = 1;
  while (2 * subset_size <= rem.size()) {
    bool found = false;
    std::vector<std::size_t> idx(subset_size);
    for (std::size_t i = 0; i < subset_size; ++i) idx[i] = i;
    while (true) {
      ZPoly g = {cur.back()};
      for (auto i : idx) g = z_mod(z_mul(g, lifted[rem[i]]), P);
      g = z_primitive(z_symmetric(g, P));
      if (auto q = z_divexact(cur, g)) {
        out.push_back(g);
        cur = *q;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0, j = 0; i < rem.size(); ++i) {
          if (j < idx.size() && idx[j] == i) {
            ++j;
          } else {
            keep.push_back(rem[i]);
          }
        }
        rem = std::move(keep);
        found = true;
        break;
      }
      // Next combination in lexicographic order.
      int pos = static_cast<int>(subset_size) - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == rem.size() - subset_size + static_cast<std::size_t>(pos)) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < subset_size; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++subset_size;
  }
  if (deg(cur) > 0) out.push_back(z_primitive(cur));
  return out;
}

}  // namespace lnd::detail
