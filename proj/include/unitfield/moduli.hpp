#pragma once

// Moduli of a smooth conic plus two lines: intersection fourples on the conic,
// cross-ratios and the class invariant beta + 1/beta - 2.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unitfield/rational.hpp"

namespace unitfield {

/// Point (a : b) of the projective line over Q; also serves as an extended
/// rational with (1 : 0) = infinity.
class ProjPoint {
 public:
  ProjPoint() : a_(0), b_(1) {}
  ProjPoint(const Rat& value) : a_(value), b_(1) {}  // NOLINT
  ProjPoint(long value) : a_(value), b_(1) {}        // NOLINT
  ProjPoint(const Rat& a, const Rat& b) {
    if (a == 0 && b == 0) throw Error(Errc::domain, "(0 : 0) is not a projective point");
    if (b == 0) {
      a_ = 1;
      b_ = 0;
    } else {
      a_ = a / b;
      b_ = 1;
    }
  }
  static ProjPoint infinity() { return {Rat(1), Rat(0)}; }

  bool is_infinity() const { return b_ == 0; }
  const Rat& value() const { return a_; }  ///< only meaningful when finite
  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }

  std::string to_string() const { return is_infinity() ? std::string("inf") : a_.get_str(); }

  friend bool operator==(const ProjPoint& x, const ProjPoint& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const ProjPoint& x, const ProjPoint& y) { return !(x == y); }

 private:
  Rat a_, b_;
};

using Fourple = std::array<ProjPoint, 4>;

/// a_P b_Q - a_Q b_P
inline Rat bracket(const ProjPoint& p, const ProjPoint& q) { return p.a() * q.b() - q.a() * p.b(); }

/// beta = ((P1-P3)(P2-P4)) / ((P1-P4)(P2-P3)), homogeneously.
/// Swapping P1 and P2 inverts beta.
inline ProjPoint cross_ratio(const Fourple& f) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (f[static_cast<std::size_t>(i)] == f[static_cast<std::size_t>(j)])
        throw Error(Errc::degenerate_fourple, "repeated point " + f[static_cast<std::size_t>(i)].to_string());
  return {bracket(f[0], f[2]) * bracket(f[1], f[3]), bracket(f[0], f[3]) * bracket(f[1], f[2])};
}

/// beta + 1/beta - 2 = (beta - 1)^2 / beta; infinity at beta in {0, inf}.
inline ProjPoint lambda_prime_of_beta(const ProjPoint& beta) {
  if (beta.is_infinity() || beta.value() == 0) return ProjPoint::infinity();
  const Rat& b = beta.value();
  return Rat(b + 1 / b - 2);
}

inline ProjPoint lambda_prime(const Fourple& f) { return lambda_prime_of_beta(cross_ratio(f)); }

/// {{P1,P2},{P3,P4}} = {{Q1,Q2},{Q3,Q4}}
inline bool class_equal(const Fourple& f, const Fourple& g) {
  auto same_pair = [](const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d) {
    return (a == c && b == d) || (a == d && b == c);
  };
  return (same_pair(f[0], f[1], g[0], g[1]) && same_pair(f[2], f[3], g[2], g[3])) ||
         (same_pair(f[0], f[1], g[2], g[3]) && same_pair(f[2], f[3], g[0], g[1]));
}

/// The dihedral group <(12), (13)(24), (14)(23)>, each element given as the
/// index sequence (sigma(1), ..., sigma(4)) - 1.
inline const std::array<std::array<int, 4>, 8>& class_stabilizer() {
  static const std::array<std::array<int, 4>, 8> g{{
      {0, 1, 2, 3},
      {1, 0, 2, 3},
      {0, 1, 3, 2},
      {1, 0, 3, 2},
      {2, 3, 0, 1},
      {3, 2, 1, 0},
      {2, 3, 1, 0},
      {3, 2, 0, 1},
  }};
  return g;
}

inline Fourple permute(const Fourple& f, const std::array<int, 4>& sigma) {
  return {f[static_cast<std::size_t>(sigma[0])], f[static_cast<std::size_t>(sigma[1])],
          f[static_cast<std::size_t>(sigma[2])], f[static_cast<std::size_t>(sigma[3])]};
}

inline std::vector<Fourple> stabilizer_orbit(const Fourple& f) {
  std::vector<Fourple> out;
  for (const auto& sigma : class_stabilizer()) out.push_back(permute(f, sigma));
  return out;
}

// ---------------------------------------------------------------------------
// Plane configurations.

using Vec3 = std::array<Rat, 3>;
using Mat3 = std::array<Vec3, 3>;

/// A conic (symmetric matrix) and two lines (linear forms) in P^2 with
/// coordinates (x, y, z).
struct ConicTwoLines {
  Mat3 conic;
  Vec3 line2;
  Vec3 line3;
};

inline Rat quad_form(const Mat3& m, const Vec3& u, const Vec3& v) {
  Rat acc = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) acc += u[i] * m[i][j] * v[j];
  return acc;
}

inline Rat det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {Rat(a[1] * b[2] - a[2] * b[1]), Rat(a[2] * b[0] - a[0] * b[2]), Rat(a[0] * b[1] - a[1] * b[0])};
}

inline bool is_zero_vec(const Vec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

/// Conic y^2 = x^2 + lam*x*z + z^2, line D2: z = 0, line D3: x = 0.
inline ConicTwoLines config_from_coeff(const Rat& lam) {
  Rat h = lam / 2;
  ConicTwoLines c;
  c.conic = {Vec3{Rat(1), Rat(0), h}, Vec3{Rat(0), Rat(-1), Rat(0)}, Vec3{h, Rat(0), Rat(1)}};
  c.line2 = {Rat(0), Rat(0), Rat(1)};
  c.line3 = {Rat(1), Rat(0), Rat(0)};
  return c;
}

/// Rational parametrization (s : w) -> sum_k coef[k] * (s^2, s w, w^2) of a
/// nonsingular conic.
struct ConicParametrization {
  std::array<Vec3, 3> coef;  ///< coef[i] = coordinate i as (s^2, sw, w^2) coefficients

  Vec3 at(const ProjPoint& p) const {
    const Rat& s = p.a();
    const Rat& w = p.b();
    Vec3 out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = coef[i][0] * s * s + coef[i][1] * s * w + coef[i][2] * w * w;
    return out;
  }
};

/// [s^2 - w^2 : -s^2 + lam s w - w^2 : lam w^2 - 2 s w]
inline ConicParametrization family_parametrization(const Rat& lam) {
  return {{Vec3{Rat(1), Rat(0), Rat(-1)}, Vec3{Rat(-1), lam, Rat(-1)}, Vec3{Rat(0), Rat(-2), lam}}};
}

namespace detail {

/// Two independent points spanning the line l.
inline std::pair<Vec3, Vec3> line_basis(const Vec3& l) {
  std::vector<Vec3> cands;
  for (std::size_t i = 0; i < 3; ++i) {
    Vec3 e{Rat(0), Rat(0), Rat(0)};
    e[i] = 1;
    Vec3 c = cross(l, e);
    if (!is_zero_vec(c)) cands.push_back(c);
  }
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (!is_zero_vec(cross(cands[0], cands[i]))) return {cands[0], cands[i]};
  throw Error(Errc::degenerate_configuration, "zero linear form");
}

/// Binary quadratic a s^2 + b s w + c w^2.
struct BinaryQuadratic {
  Rat a, b, c;
  Rat discriminant() const { return b * b - 4 * a * c; }
};

/// The two distinct roots (s : w), or an error on tangency / irrationality.
inline std::pair<ProjPoint, ProjPoint> roots(const BinaryQuadratic& q) {
  if (q.a == 0 && q.b == 0 && q.c == 0) throw Error(Errc::degenerate_configuration, "line contained in the conic");
  Rat disc = q.discriminant();
  if (disc == 0) throw Error(Errc::degenerate_configuration, "line tangent to the conic");
  if (q.a == 0) return {ProjPoint::infinity(), ProjPoint(Rat(-q.c), q.b)};
  auto r = unitfield::rational_sqrt(disc);
  if (!r) throw Error(Errc::not_rational, "intersection parameters are irrational");
  return {ProjPoint(Rat((-q.b + *r) / (2 * q.a))), ProjPoint(Rat((-q.b - *r) / (2 * q.a)))};
}

inline BinaryQuadratic restrict_to_line(const Mat3& m, const Vec3& l) {
  auto [p, q] = line_basis(l);
  return {quad_form(m, p, p), Rat(2 * quad_form(m, p, q)), quad_form(m, q, q)};
}

inline BinaryQuadratic pull_back_line(const ConicParametrization& par, const Vec3& l) {
  BinaryQuadratic q{0, 0, 0};
  for (std::size_t i = 0; i < 3; ++i) {
    q.a += l[i] * par.coef[i][0];
    q.b += l[i] * par.coef[i][1];
    q.c += l[i] * par.coef[i][2];
  }
  return q;
}

inline void validate(const ConicTwoLines& c) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (c.conic[i][j] != c.conic[j][i]) throw Error(Errc::domain, "conic matrix must be symmetric");
  if (is_zero_vec(c.line2) || is_zero_vec(c.line3)) throw Error(Errc::domain, "zero line");
  if (is_zero_vec(cross(c.line2, c.line3))) throw Error(Errc::domain, "proportional lines");
}

/// lam if the conic is a multiple of the family y^2 = x^2 + lam x z + z^2.
inline std::optional<Rat> family_coefficient(const Mat3& m) {
  const Rat& k = m[0][0];
  if (k == 0 || m[0][1] != 0 || m[1][2] != 0 || m[1][1] != -k || m[2][2] != k) return std::nullopt;
  return Rat(2 * m[0][2] / k);
}

/// Parametrization by lines through a rational point p0 of the conic.
inline ConicParametrization projection_parametrization(const Mat3& m, const Vec3& p0) {
  std::vector<Vec3> basis;
  for (std::size_t i = 0; i < 3 && basis.size() < 2; ++i) {
    Vec3 e{Rat(0), Rat(0), Rat(0)};
    e[i] = 1;
    Vec3 trial = basis.empty() ? cross(p0, e) : cross(cross(p0, basis[0]), e);
    if (basis.empty() && !is_zero_vec(trial)) basis.push_back(e);
    else if (!basis.empty() && det3(Mat3{p0, basis[0], e}) != 0) basis.push_back(e);
  }
  const Vec3& e1 = basis[0];
  const Vec3& e2 = basis[1];
  // Q = (D M D) p0 - 2 (p0 M D) D with D = s e1 + w e2.
  const Rat q11 = quad_form(m, e1, e1), q12 = quad_form(m, e1, e2), q22 = quad_form(m, e2, e2);
  const Rat l1 = quad_form(m, p0, e1), l2 = quad_form(m, p0, e2);
  ConicParametrization par;
  for (std::size_t k = 0; k < 3; ++k) {
    par.coef[k][0] = q11 * p0[k] - 2 * l1 * e1[k];
    par.coef[k][1] = 2 * q12 * p0[k] - 2 * (l1 * e2[k] + l2 * e1[k]);
    par.coef[k][2] = q22 * p0[k] - 2 * l2 * e2[k];
  }
  return par;
}

/// Canonical order inside a pair: finite before infinite, larger first.
inline std::pair<ProjPoint, ProjPoint> ordered(std::pair<ProjPoint, ProjPoint> p) {
  auto before = [](const ProjPoint& x, const ProjPoint& y) {
    if (x.is_infinity() != y.is_infinity()) return !x.is_infinity();
    return !x.is_infinity() && y.value() < x.value();
  };
  if (before(p.second, p.first)) std::swap(p.first, p.second);
  return p;
}

}  // namespace detail

/// The parametrization used by intersection_fourple for this conic.
inline ConicParametrization conic_parametrization(const ConicTwoLines& c) {
  if (auto lam = detail::family_coefficient(c.conic)) return family_parametrization(*lam);
  for (const Vec3* l : {&c.line2, &c.line3}) {
    auto q = detail::restrict_to_line(c.conic, *l);
    try {
      auto [r1, r2] = detail::roots(q);
      auto [p, pq] = detail::line_basis(*l);
      Vec3 p0;
      for (std::size_t i = 0; i < 3; ++i) p0[i] = r1.a() * p[i] + r1.b() * pq[i];
      (void)r2;
      return detail::projection_parametrization(c.conic, p0);
    } catch (const Error& e) {
      if (e.code() != Errc::not_rational) throw;
    }
  }
  throw Error(Errc::not_rational, "no rational point of the conic on either line");
}

/// The points D1 n D2 then D1 n D3 as parameters on the conic.
inline Fourple intersection_fourple(const ConicTwoLines& c) {
  detail::validate(c);
  if (det3(c.conic) == 0) throw Error(Errc::degenerate_configuration, "singular conic");
  const auto par = conic_parametrization(c);
  auto first = detail::ordered(detail::roots(detail::pull_back_line(par, c.line2)));
  auto second = detail::ordered(detail::roots(detail::pull_back_line(par, c.line3)));
  Fourple f{first.first, first.second, second.first, second.second};
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j)
      if (f[static_cast<std::size_t>(i)] == f[static_cast<std::size_t>(j)])
        throw Error(Errc::degenerate_configuration, "lines meet on the conic");
  return f;
}

/// lambda' of the configuration y^2 = x^2 + lam x z + z^2, z = 0, x = 0.
/// Equals 16 / (lam^2 - 4).
inline ProjPoint coeff_to_moduli(const Rat& lam) { return lambda_prime(intersection_fourple(config_from_coeff(lam))); }

inline bool is_normal_crossing(const ConicTwoLines& c) {
  try {
    detail::validate(c);
  } catch (const Error&) {
    return false;
  }
  if (det3(c.conic) == 0) return false;
  for (const Vec3* l : {&c.line2, &c.line3})
    if (detail::restrict_to_line(c.conic, *l).discriminant() == 0) return false;
  Vec3 meet = cross(c.line2, c.line3);
  return quad_form(c.conic, meet, meet) != 0;
}

}  // namespace unitfield
