#pragma once

// Genus and Euler characteristic of quadratic and biquadratic covers of the
// projective line, by counting ramification geometrically.

#include <utility>
#include <vector>

#include "unitfield/funfield.hpp"

namespace unitfield {

/// f = lc * sf * sq^2 with sf squarefree; both returned monic.
inline std::pair<Poly, Poly> squarefree_part(const Poly& f) {
  if (f.is_zero()) throw Error(Errc::zero_function, "squarefree part of zero");
  Poly sf(Rat(1)), sq(Rat(1));
  for (const auto& [g, i] : squarefree_decomposition(f)) {
    if (i % 2 == 1) sf = sf * g;
    if (i >= 2) sq = sq * pow(g, static_cast<unsigned>(i / 2));
  }
  return {sf, sq};
}

/// Quadratic cover given by adjoining sqrt(d), d = d_sf * square_part^2 up
/// to a constant.
struct QuadCoverSpec {
  Poly d_sf;
  Poly square_part;
  bool inf_ramified = false;

  static QuadCoverSpec from_poly(const Poly& d) {
    auto [sf, sq] = squarefree_part(d);
    return {sf, sq, sf.degree() % 2 != 0};
  }
  /// Square class of a rational function num/den is that of num*den.
  static QuadCoverSpec from_ratfunc(const RatFunc& f) {
    auto [sfn, sqn] = squarefree_part(f.num());
    auto [sfd, sqd] = squarefree_part(f.den());
    Poly g = gcd(sfn, sfd);
    Poly sf = (sfn / g) * (sfd / g);
    Poly sq = sqn * sqd * g;
    return {sf, sq, sf.degree() % 2 != 0};
  }

  /// The function field extension is trivial (d is a square up to constant).
  bool trivial() const { return d_sf.degree() == 0; }

  bool ramifies_at(const Place& v) const {
    if (v.is_infinity()) return inf_ramified;
    return (d_sf % v.min_poly()).is_zero();
  }

  /// Sum of degrees of the ramified places; always even.
  long geometric_ramification() const { return d_sf.degree() + (inf_ramified ? 1 : 0); }
};

struct CoverData {
  std::vector<QuadCoverSpec> specs;
  long genus = 0;
  int degree = 1;
};

inline std::vector<Place> ramification_locus(const QuadCoverSpec& spec) {
  std::vector<Place> out;
  for (const auto& fac : factor(spec.d_sf)) out.push_back(Place::from_irreducible(fac.poly));
  if (spec.inf_ramified) out.push_back(Place::infinity());
  return out;
}

namespace detail {
inline void check_specs(const std::vector<QuadCoverSpec>& specs) {
  if (specs.size() > 2) throw Error(Errc::degenerate_cover, "at most two quadratic specs");
  for (const auto& s : specs) {
    if (s.trivial()) throw Error(Errc::degenerate_cover, "quadratic spec with square discriminant");
    if (!is_squarefree(s.d_sf)) throw Error(Errc::degenerate_cover, "d_sf must be squarefree");
    if (s.inf_ramified != (s.d_sf.degree() % 2 != 0)) throw Error(Errc::degenerate_cover, "inconsistent infinity flag");
  }
  if (specs.size() == 2 && specs[0].d_sf.monic() == specs[1].d_sf.monic())
    throw Error(Errc::degenerate_cover, "dependent specs: product is a square");
}

/// Sum of degrees of base places ramified in at least one intermediate
/// quadratic subfield.
inline long ramified_union(const std::vector<QuadCoverSpec>& specs) {
  if (specs.empty()) return 0;
  if (specs.size() == 1) return specs[0].geometric_ramification();
  const Poly& a = specs[0].d_sf;
  const Poly& b = specs[1].d_sf;
  long finite = a.degree() + b.degree() - gcd(a, b).degree();
  return finite + ((specs[0].inf_ramified || specs[1].inf_ramified) ? 1 : 0);
}
}  // namespace detail

/// Riemann-Hurwitz over the projective line: every ramified point has e = 2.
inline long genus_of_cover(const std::vector<QuadCoverSpec>& specs) {
  detail::check_specs(specs);
  if (specs.empty()) return 0;
  const long deg = specs.size() == 1 ? 2 : 4;
  // Each ramified base place of degree k has deg/2 * k points above it.
  const long r = detail::ramified_union(specs) * (deg / 2);
  const long two_g_minus_2 = deg * -2 + r;
  return (two_g_minus_2 + 2) / 2;
}

inline CoverData make_cover(std::vector<QuadCoverSpec> specs) {
  CoverData c;
  c.genus = genus_of_cover(specs);
  c.degree = 1 << specs.size();
  c.specs = std::move(specs);
  return c;
}

/// Geometric point count above v.
inline long points_above(const Place& v, const std::vector<QuadCoverSpec>& specs) {
  const long deg = 1L << specs.size();
  bool ramified = false;
  for (const auto& s : specs) ramified = ramified || s.ramifies_at(v);
  return v.degree() * (ramified ? deg / 2 : deg);
}

/// chi of the cover punctured at the preimage of base_set.
inline long chi_of_lifted_set(const std::vector<Place>& base_set, const std::vector<QuadCoverSpec>& specs) {
  long chi = 2 * genus_of_cover(specs) - 2;
  for (const auto& v : base_set) chi += points_above(v, specs);
  return chi;
}

}  // namespace unitfield
