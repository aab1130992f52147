#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unitfield/factor.hpp"
#include "unitfield/ratfunc.hpp"

namespace unitfield {

/// Closed point of the projective line over Q: a Galois orbit of geometric
/// points, given by a monic irreducible polynomial, or the point at infinity.
class Place {
 public:
  static Place infinity() { return Place(); }

  /// Validates that min_poly is monic and irreducible over Q.
  static Place finite(Poly min_poly) {
    if (min_poly.degree() < 1 || min_poly.lead() != 1)
      throw Error(Errc::domain, "place polynomial must be monic of positive degree");
    if (!is_irreducible(min_poly)) throw Error(Errc::domain, "place polynomial " + pretty(min_poly) + " is reducible");
    return Place(std::move(min_poly));
  }
  /// The rational point t = a.
  static Place at(const Rat& a) { return Place(linear(a)); }
  /// Trusted constructor for factors produced by `factor`.
  static Place from_irreducible(Poly min_poly) { return Place(std::move(min_poly)); }

  bool is_infinity() const { return !poly_.has_value(); }
  const Poly& min_poly() const { return *poly_; }
  int degree() const { return poly_ ? poly_->degree() : 1; }

  /// Canonical order: finite places by (degree, coefficients), infinity last.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_infinity() || b.is_infinity()) return !a.is_infinity() && b.is_infinity();
    return canonical_less(*a.poly_, *b.poly_);
  }
  friend bool operator==(const Place& a, const Place& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
    return *a.poly_ == *b.poly_;
  }
  friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }

  std::string to_string() const { return is_infinity() ? std::string("inf") : pretty(*poly_); }

 private:
  Place() = default;
  explicit Place(Poly p) : poly_(std::move(p)) {}

  std::optional<Poly> poly_;
};

/// Order of vanishing of f at v.
inline long valuation(const RatFunc& f, const Place& v) {
  if (f.is_zero()) throw Error(Errc::zero_function, "valuation of the zero function");
  if (v.is_infinity()) return static_cast<long>(f.den().degree()) - f.num().degree();
  return static_cast<long>(multiplicity(f.num(), v.min_poly())) - multiplicity(f.den(), v.min_poly());
}

/// Finitely supported formal sum of places.
class Divisor {
 public:
  void add(const Place& v, long k) {
    if (k == 0) return;
    auto it = coeffs_.find(v);
    if (it == coeffs_.end()) {
      coeffs_.emplace(v, k);
    } else if ((it->second += k) == 0) {
      coeffs_.erase(it);
    }
  }
  long at(const Place& v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? 0 : it->second;
  }
  /// Sum of coefficient times place degree.
  long degree() const {
    long d = 0;
    for (const auto& [v, k] : coeffs_) d += k * v.degree();
    return d;
  }
  const std::map<Place, long>& terms() const& { return coeffs_; }
  std::map<Place, long> terms() && { return std::move(coeffs_); }
  bool empty() const { return coeffs_.empty(); }

 private:
  std::map<Place, long> coeffs_;
};

/// div(f) for f != 0, via factorization of numerator and denominator.
inline Divisor divisor(const RatFunc& f) {
  if (f.is_zero()) throw Error(Errc::zero_function, "divisor of the zero function");
  Divisor d;
  for (const auto& fac : factor(f.num())) d.add(Place::from_irreducible(fac.poly), fac.multiplicity);
  for (const auto& fac : factor(f.den())) d.add(Place::from_irreducible(fac.poly), -fac.multiplicity);
  d.add(Place::infinity(), static_cast<long>(f.den().degree()) - f.num().degree());
  return d;
}

/// Places (with multiplicity) of the zeros of a nonzero polynomial.
inline std::vector<std::pair<Place, int>> zero_places(const Poly& p) {
  std::vector<std::pair<Place, int>> out;
  for (const auto& fac : factor(p)) out.emplace_back(Place::from_irreducible(fac.poly), fac.multiplicity);
  return out;
}

/// Finite set S of places, always containing infinity, together with the
/// (at most two) designated finite places defining the differential form
/// omega = dt / m(t), m = product of the designated minimal polynomials.
class SSet {
 public:
  SSet() : places_{Place::infinity()} {}

  explicit SSet(std::vector<Place> places) : places_(std::move(places)) {
    std::sort(places_.begin(), places_.end());
    places_.erase(std::unique(places_.begin(), places_.end()), places_.end());
    if (places_.empty() || !places_.back().is_infinity())
      throw Error(Errc::domain, "S must contain the place at infinity");
    for (std::size_t i = 0; i + 1 < places_.size() && designated_.size() < 2; ++i) designated_.push_back(places_[i]);
  }

  /// Same places, another admissible choice of designated places.
  SSet with_designated(std::vector<Place> designated) const {
    if (designated.size() > 2) throw Error(Errc::domain, "at most two designated places");
    std::sort(designated.begin(), designated.end());
    designated.erase(std::unique(designated.begin(), designated.end()), designated.end());
    for (const auto& v : designated)
      if (v.is_infinity() || !contains(v)) throw Error(Errc::domain, "designated place must be a finite member of S");
    if (designated.size() < std::min<std::size_t>(2, places_.size() - 1))
      throw Error(Errc::domain, "designation must use min(2, #finite places) places");
    SSet s(*this);
    s.designated_ = std::move(designated);
    return s;
  }

  const std::vector<Place>& places() const { return places_; }
  const std::vector<Place>& designated() const { return designated_; }
  std::vector<Place> finite_places() const { return {places_.begin(), places_.end() - 1}; }

  bool contains(const Place& v) const { return std::binary_search(places_.begin(), places_.end(), v); }

  /// Number of geometric points: sum of place degrees.
  long geometric_size() const {
    long n = 0;
    for (const auto& v : places_) n += v.degree();
    return n;
  }

  /// m(t), the denominator of the canonical differential form.
  Poly omega_denominator() const {
    Poly m(Rat(1));
    for (const auto& v : designated_) m = m * v.min_poly();
    return m;
  }

  /// Removes every factor supported on the finite places of S.
  Poly strip(Poly p) const {
    for (std::size_t i = 0; i + 1 < places_.size(); ++i) p = unitfield::strip(std::move(p), places_[i].min_poly()).second;
    return p;
  }

  friend bool operator==(const SSet& a, const SSet& b) {
    return a.places_ == b.places_ && a.designated_ == b.designated_;
  }

 private:
  std::vector<Place> places_;
  std::vector<Place> designated_;
};

}  // namespace unitfield
