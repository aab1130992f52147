#pragma once

// Seeded random S-sets, units and solutions for the property suites.
// Only raw 64-bit draws reduced modulo n are used, so streams agree across
// standard libraries.

#include <cstdint>
#include <random>
#include <vector>

#include "unitfield/vojta.hpp"

namespace unitfield {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Rational with numerator and denominator bounded by `bound` in absolute value.
inline Rat random_constant(Rng& rng, long bound) {
  long num = uniform(rng, 1, bound) * (uniform(rng, 0, 1) ? 1 : -1);
  return make_rat(num, uniform(rng, 1, bound));
}

/// Finite places the generators draw from.
inline const std::vector<Place>& place_pool() {
  static const std::vector<Place> pool = [] {
    std::vector<Place> p;
    for (long a = -3; a <= 3; ++a) p.push_back(Place::at(a));
    p.push_back(Place::finite(make_poly({1, 0, 1})));
    p.push_back(Place::finite(make_poly({1, 1, 1})));
    p.push_back(Place::finite(make_poly({-2, 0, 1})));
    return p;
  }();
  return pool;
}

/// S with `size` places in total (infinity included).
inline SSet random_sset(Rng& rng, std::size_t size) {
  std::vector<Place> pool = place_pool();
  std::vector<Place> chosen{Place::infinity()};
  while (chosen.size() < size) {
    auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1));
    chosen.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<long>(i));
  }
  return SSet(std::move(chosen));
}

inline RatFunc unit_from_exponents(const SSet& S, const Rat& c, const std::vector<long>& e) {
  const auto finite = S.finite_places();
  RatFunc u(c);
  for (std::size_t i = 0; i < finite.size(); ++i)
    if (e[i] != 0) u *= pow(RatFunc(finite[i].min_poly()), e[i]);
  return u;
}

inline RatFunc random_unit(Rng& rng, const SSet& S, long max_exp, long const_bound = 5) {
  std::vector<long> e;
  for (std::size_t i = 0; i + 1 < S.places().size(); ++i) e.push_back(uniform(rng, -max_exp, max_exp));
  return unit_from_exponents(S, random_constant(rng, const_bound), e);
}

inline RatFunc random_nonconstant_unit(Rng& rng, const SSet& S, long max_exp, long const_bound = 5) {
  if (S.places().size() < 2) throw Error(Errc::domain, "no non-constant units over S = {inf}");
  for (;;) {
    RatFunc u = random_unit(rng, S, max_exp, const_bound);
    if (!u.is_constant()) return u;
  }
}

/// Units over a 3-4 place S with a non-constant lam.
inline UnitData random_unit_data(Rng& rng, long max_exp = 3) {
  UnitData d;
  d.S = random_sset(rng, static_cast<std::size_t>(uniform(rng, 3, 4)));
  d.lam = random_nonconstant_unit(rng, d.S, max_exp);
  d.u1 = random_unit(rng, d.S, max_exp);
  d.u2 = random_unit(rng, d.S, max_exp);
  return d;
}

/// Smallest S containing infinity and the zeros and poles of the given
/// nonzero functions.
inline SSet support_set(const std::vector<RatFunc>& fs) {
  std::vector<Place> places{Place::infinity()};
  for (const auto& f : fs)
    for (const auto& [v, k] : divisor(f).terms())
      if (!v.is_infinity()) places.push_back(v);
  return SSet(std::move(places));
}

/// Instance with y given up to sign and scale: y_scale * y^2 = y_raw^2 and y monic.
inline UnitEquationInstance make_instance(const SSet& S, const RatFunc& lam, const RatFunc& u1, const RatFunc& u2,
                                          const RatFunc& y_raw, bool strict) {
  UnitEquationInstance inst{S, lam, u1, u2, y_raw, Rat(1), strict};
  if (!y_raw.is_zero()) {
    Rat lc = y_raw.num().lead();
    inst.y = y_raw * RatFunc(Rat(1 / lc));
    inst.y_scale = lc * lc;
  }
  return inst;
}

/// A solution built from (lam, u1, y): u2 = y^2 - u1^2 - lam u1 - 1 and S the
/// support of everything in sight, so the instance is strict.
inline UnitEquationInstance random_solution(Rng& rng) {
  const SSet base = random_sset(rng, static_cast<std::size_t>(uniform(rng, 3, 4)));
  for (;;) {
    RatFunc lam = random_nonconstant_unit(rng, base, 2, 3);
    RatFunc u1 = random_nonconstant_unit(rng, base, 2, 3);
    std::vector<Rat> yc;
    const long deg = uniform(rng, 0, 2);
    for (long i = 0; i <= deg; ++i) yc.emplace_back(uniform(rng, -3, 3));
    RatFunc y(Poly(std::move(yc)));
    RatFunc u2 = y * y - equation_rhs(lam, u1, RatFunc(0));
    if (u2.is_zero() || (lam * lam - RatFunc(4)).is_zero()) continue;
    std::vector<RatFunc> supp{lam, u1, u2, lam * lam - RatFunc(4)};
    if (!y.is_zero()) supp.push_back(RatFunc(y.den()));
    SSet S = support_set(supp);
    return make_instance(S, lam, u1, u2, y, true);
  }
}

}  // namespace unitfield
