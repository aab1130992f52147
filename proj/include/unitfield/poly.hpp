#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "unitfield/rational.hpp"
#include "unitfield/upoly.hpp"

namespace unitfield {

/// Polynomial in t with rational coefficients.
using Poly = UPoly<Rat>;

inline Poly poly_t() { return Poly::x(); }

/// t - a
inline Poly linear(const Rat& a) { return Poly(std::vector<Rat>{-a, Rat(1)}); }

inline Poly make_poly(std::initializer_list<long> ascending) {
  std::vector<Rat> c;
  for (long v : ascending) c.emplace_back(v);
  return Poly(std::move(c));
}

/// Human-readable form, e.g. "t^2 - 1/2*t + 3".
inline std::string pretty(const Poly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Rat c = p.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    bool neg = c < 0;
    Rat a = neg ? Rat(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0 || a != 1) {
      os << a.get_str();
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

/// Number of times `factor` (non-constant) divides p; p must be nonzero.
inline int multiplicity(Poly p, const Poly& factor) {
  int k = 0;
  while (true) {
    auto [q, r] = divmod(p, factor);
    if (!r.is_zero()) return k;
    p = std::move(q);
    ++k;
  }
}

/// Divides out every power of `factor`; returns (multiplicity, cofactor).
inline std::pair<int, Poly> strip(Poly p, const Poly& factor) {
  int k = 0;
  while (p.degree() >= factor.degree()) {
    auto [q, r] = divmod(p, factor);
    if (!r.is_zero()) break;
    p = std::move(q);
    ++k;
  }
  return {k, p};
}

/// Yun's algorithm: monic f/lc(f) = prod g_i^i with g_i squarefree, pairwise
/// coprime. Returns (g_i, i) for the non-trivial g_i.
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  if (f.degree() < 1) return out;
  Poly a = f.monic();
  Poly b = a.derivative();
  Poly c = gcd(a, b);
  Poly w = a / c;
  Poly y = b / c;
  Poly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    Poly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = w / g;
    y = z / g;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

inline bool is_squarefree(const Poly& f) {
  if (f.degree() < 1) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

/// Exact square root of a monic polynomial, if it is a perfect square.
inline std::optional<Poly> exact_sqrt_monic(const Poly& f) {
  if (f.is_zero()) return Poly{};
  if (f.degree() % 2 != 0 || f.lead() != 1) return std::nullopt;
  const int n = f.degree();
  const int m = n / 2;
  // Top-down: g monic of degree m, solve coefficient of t^{n-k} for g_{m-k}.
  std::vector<Rat> g(static_cast<std::size_t>(m + 1));
  g[static_cast<std::size_t>(m)] = 1;
  for (int k = 1; k <= m; ++k) {
    Rat acc = f.coeff(static_cast<std::size_t>(n - k));
    for (int j = 1; j < k; ++j) acc -= g[static_cast<std::size_t>(m - j)] * g[static_cast<std::size_t>(m - k + j)];
    g[static_cast<std::size_t>(m - k)] = acc / 2;
  }
  Poly root(std::move(g));
  if (root * root != f) return std::nullopt;
  return root;
}

/// Scales p to a primitive integer polynomial with positive leading
/// coefficient; returns its integer coefficients (ascending).
inline std::vector<Int> primitive_integer(const Poly& p) {
  std::vector<Int> out;
  if (p.is_zero()) return out;
  Int l = 1;
  for (const auto& c : p.coeffs()) {
    Int d = c.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  Int g = 0;
  for (const auto& c : p.coeffs()) {
    Int v = c.get_num() * (l / c.get_den());
    out.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (out.back() < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

inline Poly from_integer(const std::vector<Int>& c) {
  std::vector<Rat> r;
  r.reserve(c.size());
  for (const auto& v : c) r.emplace_back(v);
  return Poly(std::move(r));
}

/// Lexicographic comparison of coefficient sequences (ascending index).
inline int compare_coeffs(const Poly& a, const Poly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] < y[i]) return -1;
    if (y[i] < x[i]) return 1;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

}  // namespace unitfield
