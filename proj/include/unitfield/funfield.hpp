#pragma once

// Rational function field of the projective line: heights, S-units, the
// derivative with respect to the canonical differential form, and
// multiplicative dependence.

#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "unitfield/place.hpp"

namespace unitfield {

/// chi_S = 2g - 2 + #S.
constexpr long euler_char(long genus, long s_count) { return 2 * genus - 2 + s_count; }

/// chi_S of the projective line punctured at S, counting geometric points.
inline long euler_char(const SSet& S) { return euler_char(0, S.geometric_size()); }

enum class Membership { unit, integer };

inline bool is_s_unit(const RatFunc& f, const SSet& S) {
  if (f.is_zero()) return false;
  return S.strip(f.num()).degree() == 0 && S.strip(f.den()).degree() == 0;
}

inline bool is_s_integer(const RatFunc& f, const SSet& S) {
  if (f.is_zero()) return true;
  return S.strip(f.den()).degree() == 0;
}

inline bool membership(const RatFunc& f, const SSet& S, Membership mode) {
  if (mode == Membership::unit) {
    if (f.is_zero()) throw Error(Errc::zero_function, "unit membership of the zero function");
    return is_s_unit(f, S);
  }
  return is_s_integer(f, S);
}

/// a' with d(a) = a' * omega, omega = dt / m(t).
inline RatFunc d_omega(const RatFunc& f, const SSet& S) {
  return f.derivative() * RatFunc(S.omega_denominator());
}

/// theta_u = u' / u for an S-unit u.
inline RatFunc theta(const RatFunc& u, const SSet& S) {
  if (!is_s_unit(u, S)) throw Error(Errc::domain, "theta of a non-S-unit " + pretty(u));
  if (u.is_constant()) return {};
  // u'/u = num'/num - den'/den, multiplied by m.
  const Poly m = S.omega_denominator();
  RatFunc log_der = RatFunc(u.num().derivative(), u.num()) - RatFunc(u.den().derivative(), u.den());
  return log_der * RatFunc(m);
}

struct SquareRoot {
  RatFunc root;  ///< monic numerator and denominator
  Rat constant;  ///< f = constant * root^2
};

/// g with g^2 = c f for a constant c, when every valuation of f is even.
inline std::optional<SquareRoot> sqrt_up_to_constant(const RatFunc& f) {
  if (f.is_zero()) throw Error(Errc::zero_function, "square root of the zero function");
  Rat lc = f.num().lead();
  auto n = exact_sqrt_monic(f.num().monic());
  if (!n) return std::nullopt;
  auto d = exact_sqrt_monic(f.den());
  if (!d) return std::nullopt;
  return SquareRoot{RatFunc(*n, *d), lc};
}

/// Valuations of an S-unit at the places of S, in S's canonical order.
inline std::vector<long> divisor_vector(const RatFunc& f, const SSet& S) {
  std::vector<long> v;
  v.reserve(S.places().size());
  for (const auto& p : S.places()) v.push_back(valuation(f, p));
  return v;
}

struct Dependence {
  long r = 0;
  long s = 0;
  Rat mu;  ///< a^r b^s = mu

  friend bool operator==(const Dependence& x, const Dependence& y) {
    return x.r == y.r && x.s == y.s && x.mu == y.mu;
  }
};

/// Primitive (r, s) with a^r b^s constant, if the divisor vectors of a and b
/// are linearly dependent. With max_exp, only relations with
/// max(|r|, |s|) <= max_exp are reported.
inline std::optional<Dependence> mult_dependence(const RatFunc& a, const RatFunc& b, const SSet& S,
                                                 std::optional<long> max_exp = std::nullopt) {
  if (!is_s_unit(a, S) || !is_s_unit(b, S)) throw Error(Errc::domain, "mult_dependence needs S-units");
  std::optional<Dependence> found;
  if (b.is_constant()) {
    found = Dependence{0, 1, b.constant_value()};
  } else if (a.is_constant()) {
    found = Dependence{1, 0, a.constant_value()};
  } else {
    const auto va = divisor_vector(a, S);
    const auto vb = divisor_vector(b, S);
    std::size_t i = 0;
    while (va[i] == 0) ++i;  // a is non-constant, so some valuation is nonzero
    long r = vb[i];
    long s = -va[i];
    long g = std::gcd(std::labs(r), std::labs(s));
    r /= g;
    s /= g;
    if (r < 0 || (r == 0 && s < 0)) {
      r = -r;
      s = -s;
    }
    for (std::size_t k = 0; k < va.size(); ++k)
      if (r * va[k] + s * vb[k] != 0) return std::nullopt;
    RatFunc mu = pow(a, r) * pow(b, s);
    if (!mu.is_constant()) throw Error(Errc::domain, "internal: dependent divisors but non-constant product");
    found = Dependence{r, s, mu.constant_value()};
  }
  if (max_exp && std::max(std::labs(found->r), std::labs(found->s)) > *max_exp) return std::nullopt;
  return found;
}

/// Height of the point (theta_1 : ... : theta_m) of projective space.
inline long proj_height(const std::vector<RatFunc>& thetas) {
  if (thetas.empty()) throw Error(Errc::domain, "proj_height of an empty tuple");
  Poly lcm(Rat(1));
  for (const auto& th : thetas) {
    if (th.is_zero()) throw Error(Errc::domain, "proj_height with a zero entry");
    lcm = lcm * (th.den() / gcd(lcm, th.den()));
  }
  std::vector<Poly> polys;
  Poly g;
  for (const auto& th : thetas) {
    polys.push_back(th.num() * (lcm / th.den()));
    g = gcd(g, polys.back());
  }
  long h = 0;
  for (const auto& p : polys) h = std::max<long>(h, (p / g).degree());
  return h;
}

}  // namespace unitfield
