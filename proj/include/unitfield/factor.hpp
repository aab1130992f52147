#pragma once

// Factorization of polynomials over Q into monic irreducibles.
//
// Squarefree parts are made primitive over Z and factored with the
// Berlekamp-Zassenhaus scheme: distinct/equal-degree factorization modulo a
// small prime, quadratic Hensel lifting past the Mignotte bound, and
// recombination of lifted factors by trial division.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "unitfield/poly.hpp"

namespace unitfield {

namespace detail {

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p < 2^31, ascending coefficients, no trailing zeros.

using ModPoly = std::vector<std::int64_t>;

inline void mp_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::int64_t mod_pow(std::int64_t b, std::uint64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  if (b < 0) b += p;
  while (e) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return r;
}

inline std::int64_t mod_inv(std::int64_t a, std::int64_t p) { return mod_pow(a, static_cast<std::uint64_t>(p - 2), p); }

inline ModPoly mp_sub(const ModPoly& a, const ModPoly& b, std::int64_t p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] - b[i] + p) % p;
  mp_trim(r);
  return r;
}

inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  mp_trim(r);
  return r;
}

inline std::pair<ModPoly, ModPoly> mp_divmod(const ModPoly& a, const ModPoly& b, std::int64_t p) {
  if (a.size() < b.size()) return {{}, a};
  ModPoly rem = a;
  ModPoly quo(a.size() - b.size() + 1, 0);
  std::int64_t inv = mod_inv(b.back(), p);
  for (std::size_t i = quo.size(); i-- > 0;) {
    std::int64_t c = rem[i + b.size() - 1] * inv % p;
    quo[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] = ((rem[i + j] - c * b[j]) % p + p) % p;
  }
  rem.resize(b.size() - 1);
  mp_trim(rem);
  mp_trim(quo);
  return {quo, rem};
}

inline ModPoly mp_monic(ModPoly a, std::int64_t p) {
  if (a.empty()) return a;
  std::int64_t inv = mod_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

inline ModPoly mp_gcd(ModPoly a, ModPoly b, std::int64_t p) {
  while (!b.empty()) {
    auto r = mp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(std::move(a), p);
}

/// Extended gcd: returns (s, t) with s*a + t*b = 1 (a, b coprime).
inline std::pair<ModPoly, ModPoly> mp_bezout(const ModPoly& a, const ModPoly& b, std::int64_t p) {
  ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
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
  // r0 is a nonzero constant
  std::int64_t inv = mod_inv(r0[0], p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  return {s0, t0};
}

inline ModPoly mp_powmod(ModPoly base, Int e, const ModPoly& m, std::int64_t p) {
  ModPoly r{1};
  base = mp_divmod(base, m, p).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mp_divmod(mp_mul(r, base, p), m, p).second;
    e >>= 1;
    if (e > 0) base = mp_divmod(mp_mul(base, base, p), m, p).second;
  }
  return r;
}

inline ModPoly mp_derivative(const ModPoly& a, std::int64_t p) {
  if (a.size() <= 1) return {};
  ModPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<std::int64_t>(i % static_cast<std::size_t>(p)) % p;
  mp_trim(d);
  return d;
}

inline ModPoly reduce_mod(const std::vector<Int>& f, std::int64_t p) {
  ModPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Int v;
    mpz_fdiv_r_ui(v.get_mpz_t(), f[i].get_mpz_t(), static_cast<unsigned long>(p));
    r[i] = v.get_si();
  }
  mp_trim(r);
  return r;
}

/// Distinct-degree then Cantor-Zassenhaus equal-degree factorization of a
/// monic squarefree f over F_p (p odd). Deterministic given the seed.
inline std::vector<ModPoly> factor_mod_p(const ModPoly& f, std::int64_t p) {
  std::vector<std::pair<ModPoly, int>> ddf;
  ModPoly rest = f;
  ModPoly x{0, 1};
  ModPoly h = x;
  for (int i = 1; 2 * i <= static_cast<int>(rest.size()) - 1; ++i) {
    h = mp_powmod(h, Int(p), rest, p);
    ModPoly g = mp_gcd(rest, mp_sub(h, x, p), p);
    if (g.size() > 1) {
      ddf.emplace_back(g, i);
      rest = mp_divmod(rest, g, p).first;
      h = mp_divmod(h, rest, p).second;
    }
  }
  if (rest.size() > 1) ddf.emplace_back(rest, static_cast<int>(rest.size()) - 1);

  std::vector<ModPoly> out;
  std::mt19937_64 rng(0x5eed + static_cast<std::uint64_t>(p));
  for (auto& [g, d] : ddf) {
    std::vector<ModPoly> pending{g};
    Int pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
    Int exponent = (pd - 1) / 2;
    while (!pending.empty()) {
      ModPoly cur = std::move(pending.back());
      pending.pop_back();
      if (static_cast<int>(cur.size()) - 1 == d) {
        out.push_back(std::move(cur));
        continue;
      }
      while (true) {
        ModPoly a(cur.size() - 1);
        for (auto& c : a) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        mp_trim(a);
        if (a.size() < 2) continue;
        ModPoly b = mp_powmod(a, exponent, cur, p);
        b = mp_sub(b, ModPoly{1}, p);
        ModPoly s = mp_gcd(cur, b, p);
        if (s.size() > 1 && s.size() < cur.size()) {
          pending.push_back(mp_divmod(cur, s, p).first);
          pending.push_back(std::move(s));
          break;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic in (Z/m)[x] with nonnegative residues.

using ZPoly = std::vector<Int>;

inline void z_trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly z_mod(ZPoly a, const Int& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  z_trim(a);
  return a;
}

inline ZPoly z_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  z_trim(r);
  return r;
}

inline ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  z_trim(r);
  return r;
}

inline ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  z_trim(r);
  return r;
}

/// Division by a monic b modulo m.
inline std::pair<ZPoly, ZPoly> z_divmod_monic(ZPoly a, const ZPoly& b, const Int& m) {
  a = z_mod(std::move(a), m);
  if (a.size() < b.size()) return {{}, a};
  ZPoly quo(a.size() - b.size() + 1);
  for (std::size_t i = quo.size(); i-- > 0;) {
    Int c = a[i + b.size() - 1];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    quo[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  return {z_mod(std::move(quo), m), z_mod(std::move(a), m)};
}

inline ZPoly from_mod(const ModPoly& a) {
  ZPoly r;
  r.reserve(a.size());
  for (auto c : a) r.emplace_back(static_cast<long>(c));
  return r;
}

/// One quadratic Hensel step: from f = g h, s g + t h = 1 (mod m) to the same
/// relations modulo m^2. h is monic.
inline void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Int& m) {
  const Int mm = m * m;
  ZPoly e = z_mod(z_sub(f, z_mul(g, h)), mm);
  auto [q, r] = z_divmod_monic(z_mul(s, e), h, mm);
  ZPoly g2 = z_mod(z_add(g, z_add(z_mul(t, e), z_mul(q, g))), mm);
  ZPoly h2 = z_mod(z_add(h, r), mm);
  ZPoly b = z_mod(z_sub(z_add(z_mul(s, g2), z_mul(t, h2)), ZPoly{Int(1)}), mm);
  auto [c, d] = z_divmod_monic(z_mul(s, b), h2, mm);
  ZPoly s2 = z_mod(z_sub(s, d), mm);
  ZPoly t2 = z_mod(z_sub(t, z_add(z_mul(t, b), z_mul(c, g2))), mm);
  g = std::move(g2);
  h = std::move(h2);
  s = std::move(s2);
  t = std::move(t2);
}

/// Lifts the monic mod-p factors of f (leading coefficient lc, coprime to p)
/// to monic factors modulo p^(2^steps).
inline std::vector<ZPoly> hensel_lift(const ZPoly& f, const Int& lc, const std::vector<ModPoly>& factors,
                                      std::int64_t p, int steps) {
  Int target = p;
  for (int i = 0; i < steps; ++i) target *= target;
  if (factors.size() == 1) {
    Int inv;
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t());
    ZPoly r = f;
    for (auto& c : r) c *= inv;
    return {z_mod(std::move(r), target)};
  }
  const std::size_t half = factors.size() / 2;
  std::vector<ModPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<ModPoly> right(factors.begin() + static_cast<long>(half), factors.end());
  ModPoly g0{static_cast<std::int64_t>(mpz_fdiv_ui(lc.get_mpz_t(), static_cast<unsigned long>(p)))};
  for (auto& q : left) g0 = mp_mul(g0, q, p);
  ModPoly h0{1};
  for (auto& q : right) h0 = mp_mul(h0, q, p);
  auto s0 = mp_bezout(g0, h0, p).first;
  // Normalize degrees: deg s < deg h, deg t < deg g.
  ModPoly s_red = mp_divmod(s0, h0, p).second;
  ModPoly t_red = mp_divmod(mp_sub(ModPoly{1}, mp_mul(s_red, g0, p), p), h0, p).first;
  ZPoly g = from_mod(g0), h = from_mod(h0), s = from_mod(s_red), t = from_mod(t_red);
  Int m = p;
  for (int i = 0; i < steps; ++i) {
    hensel_step(z_mod(f, m * m), g, h, s, t, m);
    m *= m;
  }
  auto l = hensel_lift(g, lc, left, p, steps);
  auto r = hensel_lift(h, Int(1), right, p, steps);
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

inline ZPoly symmetric(ZPoly a, const Int& m) {
  const Int half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  z_trim(a);
  return a;
}

inline ZPoly primitive_part(ZPoly a) {
  Int g = 0;
  for (auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

/// Exact division over Z; returns empty optional-like flag via bool.
inline bool z_divides(const ZPoly& d, const ZPoly& f, ZPoly& quotient) {
  if (d.size() > f.size()) return false;
  if (f[0] != 0 && d[0] != 0 && !mpz_divisible_p(f[0].get_mpz_t(), d[0].get_mpz_t())) return false;
  if (!mpz_divisible_p(f.back().get_mpz_t(), d.back().get_mpz_t())) return false;
  ZPoly rem = f;
  ZPoly quo(f.size() - d.size() + 1);
  for (std::size_t i = quo.size(); i-- > 0;) {
    const Int& top = rem[i + d.size() - 1];
    if (!mpz_divisible_p(top.get_mpz_t(), d.back().get_mpz_t())) return false;
    Int c = top / d.back();
    quo[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) rem[i + j] -= c * d[j];
  }
  for (const auto& c : rem)
    if (c != 0) return false;
  z_trim(quo);
  quotient = std::move(quo);
  return true;
}

inline const std::vector<std::int64_t>& small_primes() {
  static const std::vector<std::int64_t> primes = [] {
    std::vector<std::int64_t> v;
    for (std::int64_t n = 3; v.size() < 400; n += 2) {
      bool prime = true;
      for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) {
          prime = false;
          break;
        }
      if (prime) v.push_back(n);
    }
    return v;
  }();
  return primes;
}

/// Factors a primitive squarefree integer polynomial of degree >= 1 into
/// primitive irreducible integer factors.
inline std::vector<ZPoly> factor_squarefree_integer(const ZPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};
  const Int& lc = f.back();

  // Pick the best of a few admissible primes.
  std::int64_t best_p = 0;
  std::vector<ModPoly> best;
  int tried = 0;
  for (std::int64_t p : small_primes()) {
    if (mpz_divisible_ui_p(lc.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    ModPoly fp = reduce_mod(f, p);
    if (static_cast<int>(fp.size()) - 1 != n) continue;
    if (mp_gcd(fp, mp_derivative(fp, p), p).size() != 1) continue;
    auto facs = factor_mod_p(mp_monic(fp, p), p);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1 || ++tried >= 5) break;
  }
  if (best.size() <= 1) return {f};

  // Mignotte-style bound on coefficients of lc * (any factor made monic).
  Int norm = 0;
  for (const auto& c : f) {
    Int a = abs(c);
    if (a > norm) norm = a;
  }
  Int bound = abs(lc) * norm * (n + 1);
  bound <<= static_cast<unsigned long>(n);
  bound = 2 * bound + 1;
  int steps = 0;
  Int m = best_p;
  while (m <= bound) {
    m *= m;
    ++steps;
  }
  std::vector<ZPoly> lifted = hensel_lift(f, lc, best, best_p, steps);

  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::vector<std::size_t> live(lifted.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  std::size_t size = 1;
  while (2 * size <= live.size()) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      ZPoly cand{rest.back()};
      for (auto i : idx) cand = z_mod(z_mul(cand, lifted[live[i]]), m);
      cand = primitive_part(symmetric(std::move(cand), m));
      ZPoly quo;
      if (cand.size() > 1 && z_divides(cand, rest, quo)) {
        result.push_back(cand);
        rest = primitive_part(std::move(quo));
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < live.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(live[i]);
        live = std::move(next);
        found = true;
        break;
      }
      // next combination
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == live.size() - size + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (rest.size() > 1) result.push_back(rest);
  return result;
}

}  // namespace detail

/// A monic irreducible factor with its multiplicity.
struct Factor {
  Poly poly;
  int multiplicity = 1;
};

/// Canonical order for monic irreducibles: degree, then coefficients.
inline bool canonical_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return compare_coeffs(a, b) < 0;
}

/// Monic irreducible factorization over Q of a nonzero polynomial, ignoring
/// the leading constant. Factors are sorted canonically.
inline std::vector<Factor> factor(const Poly& f) {
  std::vector<Factor> out;
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    auto z = primitive_integer(part);
    for (const auto& g : detail::factor_squarefree_integer(z)) out.push_back({from_integer(g).monic(), mult});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
  return out;
}

/// Irreducibility over Q (constants and zero are not irreducible).
inline bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

}  // namespace unitfield
