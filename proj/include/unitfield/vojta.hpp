#pragma once

// The unit equation y^2 = u1^2 + lam*u1 + u2 + 1 over Q(t): the auxiliary
// polynomials A, B, F = Res_Y(A, B), G = Res_X(A, B), their discriminants,
// the gcd-sum and Zannier inequalities, and the trichotomy classifier.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unitfield/covers.hpp"
#include "unitfield/funfield.hpp"

namespace unitfield {

/// A note about a printed formula or constant that disagrees with the exact
/// computation. Findings never indicate an artifact bug.
struct Finding {
  std::string code;
  std::string detail;
  friend bool operator==(const Finding& a, const Finding& b) { return a.code == b.code && a.detail == b.detail; }
};

/// S, lam and the two units, without a square root y. All identities between
/// A, B, F and G hold for arbitrary units.
struct UnitData {
  SSet S;
  RatFunc lam;
  RatFunc u1;
  RatFunc u2;
};

struct UnitEquationInstance {
  SSet S;
  RatFunc lam;
  RatFunc u1;
  RatFunc u2;
  RatFunc y;          ///< monic numerator and denominator, or zero
  Rat y_scale{1};     ///< y_scale * y^2 = u1^2 + lam u1 + u2 + 1
  bool strict = true;

  UnitData units() const { return {S, lam, u1, u2}; }
};

/// u1^2 + lam u1 + u2 + 1
inline RatFunc equation_rhs(const RatFunc& lam, const RatFunc& u1, const RatFunc& u2) {
  return u1 * u1 + lam * u1 + u2 + RatFunc(1);
}

/// Checks every standing assumption; throws the first violated one.
inline void validate(const UnitEquationInstance& inst) {
  if (inst.lam.is_constant()) throw Error(Errc::constant_lambda, "lam = " + pretty(inst.lam) + " is constant");
  if (!is_s_unit(inst.lam, inst.S)) throw Error(Errc::lambda_support, "zeros or poles of lam outside S");
  if (inst.strict) {
    RatFunc d = inst.lam * inst.lam - RatFunc(4);
    if (!is_s_unit(d, inst.S)) throw Error(Errc::lambda_strict_support, "zeros or poles of lam^2 - 4 outside S");
  }
  if (!is_s_unit(inst.u1, inst.S)) throw Error(Errc::non_unit_u1, "u1 = " + pretty(inst.u1) + " is not an S-unit");
  if (!is_s_unit(inst.u2, inst.S)) throw Error(Errc::non_unit_u2, "u2 = " + pretty(inst.u2) + " is not an S-unit");
  if (!is_s_integer(inst.y, inst.S)) throw Error(Errc::non_integer_y, "y = " + pretty(inst.y) + " is not an S-integer");
  if (inst.y_scale == 0) throw Error(Errc::degenerate_input, "y_scale must be nonzero");
  RatFunc lhs = RatFunc(inst.y_scale) * inst.y * inst.y;
  if (lhs != equation_rhs(inst.lam, inst.u1, inst.u2))
    throw Error(Errc::equation_mismatch, "y^2 != u1^2 + lam*u1 + u2 + 1");
}

/// Logarithmic derivatives with respect to omega.
struct Derivatives {
  RatFunc th1;  ///< u1'/u1
  RatFunc th2;  ///< u2'/u2
  RatFunc lp;   ///< lam'
  RatFunc Lam;  ///< lam'/lam
};

inline Derivatives derivatives(const UnitData& d) {
  Derivatives r;
  r.th1 = theta(d.u1, d.S);
  r.th2 = theta(d.u2, d.S);
  r.Lam = theta(d.lam, d.S);
  r.lp = d_omega(d.lam, d.S);
  return r;
}

/// c2 X^2 + c1 X + c0
struct QuadPoly {
  RatFunc c2, c1, c0;

  RatFunc operator()(const RatFunc& x) const { return (c2 * x + c1) * x + c0; }
  RatFunc discriminant() const { return c1 * c1 - RatFunc(4) * c2 * c0; }
  bool nondegenerate() const { return !c2.is_zero() && !c0.is_zero(); }

  friend bool operator==(const QuadPoly& a, const QuadPoly& b) {
    return a.c2 == b.c2 && a.c1 == b.c1 && a.c0 == b.c0;
  }
  friend QuadPoly operator-(const QuadPoly& a) { return {-a.c2, -a.c1, -a.c0}; }
};

/// B(X, Y) = bx2 X^2 + bx1 X + by Y
struct PolyB {
  RatFunc bx2, bx1, by;
  RatFunc operator()(const RatFunc& x, const RatFunc& y) const { return (bx2 * x + bx1) * x + by * y; }
};

inline PolyB poly_B(const UnitData& d) {
  auto dv = derivatives(d);
  return {RatFunc(2) * dv.th1, d.lam * (dv.th1 + dv.Lam), dv.th2};
}

/// A(X, Y) = X^2 + lam X + Y + 1
inline RatFunc poly_A(const RatFunc& lam, const RatFunc& x, const RatFunc& y) { return equation_rhs(lam, x, y); }

/// Both sides of d(A(u1, u2)) = B(u1, u2) omega.
inline std::pair<RatFunc, RatFunc> derivative_identity(const UnitData& d) {
  return {d_omega(poly_A(d.lam, d.u1, d.u2), d.S), poly_B(d)(d.u1, d.u2)};
}

using RFPoly = UPoly<RatFunc>;

namespace detail {
inline QuadPoly to_quad(const RFPoly& p) {
  if (p.degree() > 2) throw Error(Errc::domain, "internal: resultant of degree > 2");
  return {p.coeff(2), p.coeff(1), p.coeff(0)};
}
inline RFPoly rf_poly(std::vector<RatFunc> ascending) { return RFPoly(std::move(ascending)); }

// One-entry cache: a record asks for the same resultant several times.
template <class T>
struct LastValue {
  std::optional<UnitData> key;
  T value;
  const T* find(const UnitData& d) const {
    return key && key->u1 == d.u1 && key->u2 == d.u2 && key->lam == d.lam && key->S == d.S ? &value : nullptr;
  }
  const T& store(const UnitData& d, T v) {
    key = d;
    value = std::move(v);
    return value;
  }
};
}  // namespace detail

/// F as printed: X^2 (2 th1 - th2) + X (th1 - th2 + Lam) lam - th2.
inline QuadPoly resultant_F_closed_form(const UnitData& d) {
  auto dv = derivatives(d);
  return {RatFunc(2) * dv.th1 - dv.th2, (dv.th1 - dv.th2 + dv.Lam) * d.lam, -dv.th2};
}

/// Res_Y(A, B) from the 2x2 Sylvester matrix over Q(t)[X], with formal
/// Y-degree 1 for both polynomials.
inline QuadPoly resultant_F(const UnitData& d) {
  thread_local detail::LastValue<QuadPoly> memo;
  if (const QuadPoly* hit = memo.find(d)) return *hit;
  auto b = poly_B(d);
  RFPoly a0 = detail::rf_poly({RatFunc(1), d.lam, RatFunc(1)});
  RFPoly a1 = RFPoly(RatFunc(1));
  RFPoly b0 = detail::rf_poly({RatFunc(), b.bx1, b.bx2});
  RFPoly b1 = RFPoly(b.by);
  return memo.store(d, detail::to_quad(resultant(std::vector<RFPoly>{a0, a1}, std::vector<RFPoly>{b0, b1})));
}

/// Res_X(A, B) from the 4x4 Sylvester matrix over Q(t)[Y], with formal
/// X-degree 2 for both polynomials.
inline QuadPoly resultant_G(const UnitData& d) {
  thread_local detail::LastValue<QuadPoly> memo;
  if (const QuadPoly* hit = memo.find(d)) return *hit;
  auto b = poly_B(d);
  const RFPoly Y = RFPoly::x();
  std::vector<RFPoly> a{Y + RFPoly(RatFunc(1)), RFPoly(d.lam), RFPoly(RatFunc(1))};
  std::vector<RFPoly> bb{RFPoly(b.by) * Y, RFPoly(b.bx1), RFPoly(b.bx2)};
  return memo.store(d, detail::to_quad(resultant(a, bb)));
}

/// G as printed:
/// Y^2 (2 th1 - th2)^2 + Y [th1^2 (8 - lam^2) + th1 th2 (lam^2 - 4) + lam^2 Lam (Lam - th2)]
///   + th1^2 (4 - lam^2) + lam^2 Lam^2.
inline QuadPoly resultant_G_printed(const UnitData& d) {
  auto dv = derivatives(d);
  const RatFunc l2 = d.lam * d.lam;
  const RatFunc lead = RatFunc(2) * dv.th1 - dv.th2;
  return {lead * lead,
          dv.th1 * dv.th1 * (RatFunc(8) - l2) + dv.th1 * dv.th2 * (l2 - RatFunc(4)) + l2 * dv.Lam * (dv.Lam - dv.th2),
          dv.th1 * dv.th1 * (RatFunc(4) - l2) + l2 * dv.Lam * dv.Lam};
}

/// Outcome of comparing a printed formula with the exact value.
struct FormulaCheck {
  int sign = 0;  ///< +1 equal, -1 equal up to sign, 0 different
  std::optional<Finding> finding;
};

inline FormulaCheck compare_formula(const QuadPoly& printed, const QuadPoly& oracle, const std::string& name) {
  if (printed == oracle) return {1, std::nullopt};
  if (-printed == oracle) return {-1, std::nullopt};
  return {0, Finding{name + "-drift", "printed " + name + " differs from the Sylvester resultant"}};
}

inline FormulaCheck check_F(const UnitData& d) { return compare_formula(resultant_F_closed_form(d), resultant_F(d), "F"); }
inline FormulaCheck check_G(const UnitData& d) { return compare_formula(resultant_G_printed(d), resultant_G(d), "G"); }

// ---------------------------------------------------------------------------
// Discriminants.

/// Printed Discr(F): th2^2 (lam^2 - 4) + th2 (8 th1 - 2 th1 lam^2 - 2 lam lam')
/// + (lam th1 + lam'^exp)^2. The printed exponent is 2.
inline RatFunc printed_discr_F(const UnitData& d, int lp_exponent = 2) {
  auto v = derivatives(d);
  const RatFunc l2 = d.lam * d.lam;
  RatFunc inner = d.lam * v.th1 + pow(v.lp, lp_exponent);
  return v.th2 * v.th2 * (l2 - RatFunc(4)) + v.th2 * (RatFunc(8) * v.th1 - RatFunc(2) * v.th1 * l2 - RatFunc(2) * d.lam * v.lp) +
         inner * inner;
}

/// Printed Discr(G); the operator missing inside the second bracket is
/// supplied as `join` (+1 or -1).
inline RatFunc printed_discr_G(const UnitData& d, int join = 1) {
  auto v = derivatives(d);
  const RatFunc& a = v.th1;
  const RatFunc& l = d.lam;
  const RatFunc& lp = v.lp;
  const RatFunc l2 = l * l;
  RatFunc first = a * a * l2 * (RatFunc(4) - l2) + a * l * lp * (RatFunc(8) - RatFunc(2) * l2) + lp * lp * (l2 - RatFunc(4));
  RatFunc second = a * a * a * l2 * (RatFunc(4) - l2) + RatFunc(join) * a * a * l * lp * (l2 - RatFunc(8)) +
                   a * lp * lp * (RatFunc(4) + l2) - l * lp;
  return v.th2 * v.th2 * first + RatFunc(2) * v.th2 * second + pow(a, 4) * l2 - RatFunc(2) * a * a * l2 * lp * lp +
         pow(lp, 4);
}

inline long height_or_zero(const RatFunc& f) { return f.is_zero() ? 0 : height(f); }

struct DiscriminantReport {
  RatFunc disc_F, disc_G;
  long height_F = 0, height_G = 0;
  long chi_S = 0, height_lam = 0;
  long bound_F = 0, bound_G = 0;  ///< 6 chi + 4 H(lam), 10 chi + 8 H(lam)
  bool ok_F = true, ok_G = true;
  std::vector<Finding> findings;
};

inline DiscriminantReport discriminant_bounds(const UnitData& d) {
  DiscriminantReport r;
  r.disc_F = resultant_F(d).discriminant();
  r.disc_G = resultant_G(d).discriminant();
  r.height_F = height_or_zero(r.disc_F);
  r.height_G = height_or_zero(r.disc_G);
  r.chi_S = euler_char(d.S);
  r.height_lam = height(d.lam);
  r.bound_F = 6 * r.chi_S + 4 * r.height_lam;
  r.bound_G = 10 * r.chi_S + 8 * r.height_lam;
  r.ok_F = r.height_F <= r.bound_F;
  r.ok_G = r.height_G <= r.bound_G;
  if (printed_discr_F(d) != r.disc_F) {
    std::string note = printed_discr_F(d, 1) == r.disc_F ? "; agrees once lam' in the last square is not squared" : "";
    r.findings.push_back({"discrF-drift", "printed Discr(F) differs from b^2 - 4ac" + note});
  }
  if (printed_discr_G(d, 1) != r.disc_G && printed_discr_G(d, -1) != r.disc_G)
    r.findings.push_back({"discrG-drift", "printed Discr(G) differs from b^2 - 4ac under either reading of the missing operator"});
  return r;
}

// ---------------------------------------------------------------------------
// Divisibility of F(u1), G(u2) by y outside S.

struct DivisibilityReport {
  bool ok = true;
  std::optional<Place> witness;  ///< a place outside S where the inequality fails
  std::string which;             ///< "F" or "G"
};

namespace detail {
inline std::optional<Place> first_deficient_place(const RatFunc& value, const Poly& y_outside, const SSet& S) {
  if (value.is_zero()) return std::nullopt;
  Poly v = S.strip(value.num());
  if ((v % y_outside).is_zero()) return std::nullopt;
  for (const auto& [place, k] : zero_places(y_outside))
    if (multiplicity(v, place.min_poly()) < k) return place;
  throw Error(Errc::domain, "internal: divisibility failed without a deficient place");
}
}  // namespace detail

inline DivisibilityReport divisibility_check(const UnitEquationInstance& inst) {
  const UnitData d = inst.units();
  const RatFunc fu = resultant_F(d)(inst.u1);
  const RatFunc gu = resultant_G(d)(inst.u2);
  DivisibilityReport r;
  if (inst.y.is_zero()) {
    // Every valuation of y is infinite.
    if (!fu.is_zero()) r = {false, std::nullopt, "F"};
    else if (!gu.is_zero()) r = {false, std::nullopt, "G"};
    return r;
  }
  const Poly y_out = inst.S.strip(inst.y.num());
  if (y_out.degree() == 0) return r;
  if (auto w = detail::first_deficient_place(fu, y_out, inst.S)) return {false, w, "F"};
  if (auto w = detail::first_deficient_place(gu, y_out, inst.S)) return {false, w, "G"};
  return r;
}

// ---------------------------------------------------------------------------
// gcd-sum and the Corvaja-Zannier inequality.

/// sum over v outside S of deg(v) * v(f), for an S-integer f != 0.
inline long zeros_outside(const RatFunc& f, const SSet& S) { return S.strip(f.num()).degree(); }

/// sum over v outside S of deg(v) * min(v(1 - a), v(1 - b)); a zero function
/// counts as +infinity, so one of a, b may equal 1.
inline std::optional<long> min_sum(const RatFunc& a, const RatFunc& b, const SSet& S) {
  RatFunc x = RatFunc(1) - a;
  RatFunc y = RatFunc(1) - b;
  if (x.is_zero() && y.is_zero()) return std::nullopt;
  if (x.is_zero()) return zeros_outside(y, S);
  if (y.is_zero()) return zeros_outside(x, S);
  return gcd(S.strip(x.num()), S.strip(y.num())).degree();
}

inline long gcd_sum(const RatFunc& a, const RatFunc& b, const SSet& S) {
  if (a == RatFunc(1) || b == RatFunc(1)) throw Error(Errc::degenerate_input, "gcd_sum with a or b equal to 1");
  if (!is_s_unit(a, S) || !is_s_unit(b, S)) throw Error(Errc::domain, "gcd_sum needs S-units");
  return *min_sum(a, b, S);
}

enum class CzBranch { independent, dependent_mu_not_one, dependent_mu_one };

inline const char* cz_branch_name(CzBranch b) {
  switch (b) {
    case CzBranch::independent: return "independent";
    case CzBranch::dependent_mu_not_one: return "dependent-mu-not-1";
    case CzBranch::dependent_mu_one: return "dependent-mu-1";
  }
  return "?";
}

struct CzReport {
  CzBranch branch = CzBranch::independent;
  long gcd_sum = 0;
  long height_a = 0, height_b = 0;
  long chi = 0;
  std::optional<Dependence> dependence;
  bool holds = true;
  bool holds_max_form = true;  ///< with H(a) H(b) replaced by max height squared
};

/// Branch (i) is compared as gcd^3 <= 54 H(a) H(b) chi, the cube of
/// gcd <= 3 * 2^(1/3) * (H(a) H(b) chi)^(1/3).
inline CzReport cz_check(const RatFunc& a, const RatFunc& b, const SSet& S) {
  if (a.is_constant() && b.is_constant()) throw Error(Errc::degenerate_input, "cz_check with both units constant");
  CzReport r;
  r.gcd_sum = gcd_sum(a, b, S);
  r.height_a = height(a);
  r.height_b = height(b);
  r.chi = euler_char(S);
  r.dependence = mult_dependence(a, b, S);
  const Int g = r.gcd_sum;
  if (!r.dependence) {
    r.branch = CzBranch::independent;
    const long h = std::max(r.height_a, r.height_b);
    r.holds = g * g * g <= Int(54) * r.height_a * r.height_b * r.chi;
    r.holds_max_form = g * g * g <= Int(54) * h * h * r.chi;
  } else if (r.dependence->mu != 1) {
    r.branch = CzBranch::dependent_mu_not_one;
    r.holds = r.holds_max_form = r.gcd_sum == 0;
  } else {
    r.branch = CzBranch::dependent_mu_one;
    const long rr = std::labs(r.dependence->r), ss = std::labs(r.dependence->s);
    // a^r b^s = 1 is a^r = b^(-s): min{H(a)/|s|, H(b)/|r|}, infinite terms dropped.
    r.holds = (ss == 0 || r.gcd_sum * ss <= r.height_a) && (rr == 0 || r.gcd_sum * rr <= r.height_b);
    r.holds_max_form = r.gcd_sum * std::max(rr, ss) <= std::max(r.height_a, r.height_b);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Zannier's inequality.

/// Indices of the lexicographically first nonempty subset (as a sorted index
/// list) with vanishing sum; `proper` excludes the full set.
inline std::optional<std::vector<int>> first_vanishing_subset(const std::vector<RatFunc>& terms, bool proper) {
  const int m = static_cast<int>(terms.size());
  std::vector<std::vector<int>> subsets;
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    if (proper && mask == (1U << m) - 1) continue;
    std::vector<int> s;
    for (int i = 0; i < m; ++i)
      if (mask & (1U << i)) s.push_back(i);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end());
  for (const auto& s : subsets) {
    RatFunc sum;
    for (int i : s) sum += terms[static_cast<std::size_t>(i)];
    if (sum.is_zero()) return s;
  }
  return std::nullopt;
}

struct ZannierReport {
  long lhs = 0;          ///< sum over v outside S of v(theta_1 + ... + theta_m)
  long proj_height = 0;
  long chi = 0;
  long rhs = 0;          ///< proj_height - C(m, 2) chi
  bool holds = true;
};

/// Rejects tuples with a vanishing subsum: Errc::degenerate_input, and the
/// subset is returned through `vanishing` when supplied.
inline ZannierReport zannier_check(const std::vector<RatFunc>& thetas, const SSet& S,
                                   std::vector<int>* vanishing = nullptr) {
  if (thetas.size() < 2) throw Error(Errc::domain, "zannier_check needs m >= 2");
  for (const auto& th : thetas)
    if (!is_s_unit(th, S)) throw Error(Errc::domain, "zannier_check needs S-units");
  if (auto sub = first_vanishing_subset(thetas, false)) {
    if (vanishing) *vanishing = *sub;
    std::string list;
    for (int i : *sub) list += (list.empty() ? "" : ",") + std::to_string(i + 1);
    throw Error(Errc::degenerate_input, "vanishing subsum {" + list + "}");
  }
  RatFunc sum;
  for (const auto& th : thetas) sum += th;
  ZannierReport r;
  const long m = static_cast<long>(thetas.size());
  r.lhs = zeros_outside(sum, S);
  r.proj_height = proj_height(thetas);
  r.chi = euler_char(S);
  r.rhs = r.proj_height - m * (m - 1) / 2 * r.chi;
  r.holds = r.lhs >= r.rhs;
  return r;
}

// ---------------------------------------------------------------------------
// Trichotomy.

inline std::vector<RatFunc> equation_terms(const RatFunc& lam, const RatFunc& u1, const RatFunc& u2) {
  return {u1 * u1, lam * u1, u2, RatFunc(1)};
}

inline const std::array<const char*, 4>& term_names() {
  static const std::array<const char*, 4> names{"u1^2", "lam*u1", "u2", "1"};
  return names;
}

/// Lexicographically first vanishing nonempty proper subset of
/// {u1^2, lam u1, u2, 1}, as indices into that list.
inline std::optional<std::vector<int>> subsum_cases(const UnitEquationInstance& inst) {
  return first_vanishing_subset(equation_terms(inst.lam, inst.u1, inst.u2), true);
}

/// 2^12 (58 chi + 28 H(lam)) + extra * H(lam)
inline Int trichotomy_bound(long chi, long h_lam, long extra) {
  return Int(4096) * (58 * chi + 28 * h_lam) + Int(extra) * h_lam;
}

struct HeightBounded {
  Int bound;
  long h1 = 0, h2 = 0;
  Rat slack;  ///< max(h1, h2) / bound
};

struct Classification {
  std::optional<std::vector<int>> subsum;  ///< case (i)
  std::optional<Dependence> dependence;    ///< case (ii)
  std::optional<HeightBounded> bounded;    ///< case (iii)
  HeightBounded height_data;               ///< evaluated whether or not (iii) holds
  std::vector<Finding> findings;

  bool empty() const { return !subsum && !dependence && !bounded; }
};

inline constexpr long kMaxDependenceExponent = 5;

inline Classification classify(const UnitEquationInstance& inst) {
  validate(inst);
  Classification c;
  c.subsum = subsum_cases(inst);
  c.dependence = mult_dependence(inst.u1, inst.u2, inst.S, kMaxDependenceExponent);
  const long chi = euler_char(inst.S);
  const long hl = height(inst.lam);
  HeightBounded hb;
  hb.h1 = height(inst.u1);
  hb.h2 = height(inst.u2);
  hb.bound = trichotomy_bound(chi, hl, 16);
  hb.slack = make_rat(std::max(hb.h1, hb.h2), hb.bound);
  c.height_data = hb;
  const bool in_iii = std::max(hb.h1, hb.h2) <= hb.bound;
  if (in_iii) c.bounded = hb;
  const bool in_iii_variant = std::max(hb.h1, hb.h2) <= trichotomy_bound(chi, hl, 1);
  if (in_iii != in_iii_variant)
    c.findings.push_back({"mainth-constant", "case (iii) verdict differs between the +16 H(lam) and +1 H(lam) bounds"});
  if (c.empty()) c.findings.push_back({"counterexample", "no case of the trichotomy applies"});
  return c;
}

// ---------------------------------------------------------------------------
// Splitting cover and the bound on its Euler characteristic.

struct CoverBoundReport {
  bool degenerate = false;  ///< some leading or constant coefficient of F, G vanishes
  std::vector<Place> U;     ///< base places under U
  std::vector<QuadCoverSpec> specs;
  long genus = 0;
  int degree = 1;
  long chi_U = 0;
  long chi_S = 0;
  long height_lam = 0;
  long bound = 0;           ///< 53 chi_S + 28 H(lam)
  long bound_estimate = 0;  ///< 58 chi_S + 28 H(lam)
  bool holds = true;
};

namespace detail {
inline void add_zero_places(std::vector<Place>& out, const RatFunc& c) {
  if (c.is_zero() || c.num().degree() <= 0) return;
  for (const auto& [v, k] : zero_places(c.num())) out.push_back(v);
}

/// S together with the zeros of the leading and constant coefficients.
inline SSet u_base(const SSet& S, const QuadPoly& F, const QuadPoly& G) {
  std::vector<Place> places = S.places();
  for (const RatFunc* c : {&F.c2, &F.c0, &G.c2, &G.c0}) add_zero_places(places, *c);
  return SSet(std::move(places));
}

/// Quadratic covers adjoining the square roots of the nonzero discriminants,
/// up to constants; squares and repeated classes are dropped.
inline std::vector<QuadCoverSpec> splitting_specs(const QuadPoly& F, const QuadPoly& G) {
  std::vector<QuadCoverSpec> out;
  for (const QuadPoly* q : {&F, &G}) {
    if (q->c2.is_zero()) continue;  // degree < 2: nothing to split
    RatFunc disc = q->discriminant();
    if (disc.is_zero()) continue;
    auto spec = QuadCoverSpec::from_ratfunc(disc);
    if (spec.trivial()) continue;
    bool seen = false;
    for (const auto& s : out) seen = seen || s.d_sf == spec.d_sf;
    if (!seen) out.push_back(spec);
  }
  return out;
}
}  // namespace detail

inline CoverBoundReport cover_bound_check(const UnitData& d) {
  const QuadPoly F = resultant_F(d);
  const QuadPoly G = resultant_G(d);
  CoverBoundReport r;
  r.degenerate = !F.nondegenerate() || !G.nondegenerate();
  const SSet U = detail::u_base(d.S, F, G);
  r.U = U.places();
  r.specs = detail::splitting_specs(F, G);
  r.genus = genus_of_cover(r.specs);
  r.degree = 1 << r.specs.size();
  r.chi_U = chi_of_lifted_set(r.U, r.specs);
  r.chi_S = euler_char(d.S);
  r.height_lam = height(d.lam);
  r.bound = 53 * r.chi_S + 28 * r.height_lam;
  r.bound_estimate = 58 * r.chi_S + 28 * r.height_lam;
  r.holds = r.chi_U <= r.bound;
  return r;
}

// ---------------------------------------------------------------------------
// The chain from the roots of F, G to the Corvaja-Zannier inequality, in the
// regime where both F and G split over Q(t).

enum class AbRegime { split, not_split, degenerate, y_zero };

inline const char* ab_regime_name(AbRegime r) {
  switch (r) {
    case AbRegime::split: return "split";
    case AbRegime::not_split: return "not-split";
    case AbRegime::degenerate: return "degenerate";
    case AbRegime::y_zero: return "y-zero";
  }
  return "?";
}

struct AbPair {
  RatFunc a, b;
  std::optional<long> min_sum;  ///< nullopt = infinite
  long height_gap = 0;          ///< |max(H(a), H(b)) - max(H(u1), H(u2))|
};

struct LemmaAbReport {
  AbRegime regime = AbRegime::split;
  std::vector<AbPair> pairs;  ///< (alpha, beta), (alpha, beta'), (alpha', beta), (alpha', beta')
  int chosen = -1;            ///< first pair satisfying the 4 * min_sum >= sum v(y) inequality
  long y_zeros = 0;           ///< sum over v outside U of v(y)
  long chi_S = 0, chi_U = 0, height_lam = 0;
  long hab_bound = 0;         ///< 32 chi_S + 8 H(lam)
  bool units_ok = true;       ///< a, b are U-units
  bool vy_up = true;
  bool hab = true;
  bool subsum_free = true;    ///< the vy-down and vab steps apply
  bool vy_down_sound = true;  ///< 2 sum v(y) >= H(u1^2 : lam u1 : u2 : 1) - 6 chi_U
  bool vab_sound = true;      ///< 8 min_sum >= max H(a, b) - 6 chi_U - 32 chi_S - 8 H(lam)
  std::vector<Finding> findings;

  bool violated() const { return !units_ok || !vy_up || !hab || !vy_down_sound || !vab_sound; }
};

namespace detail {
/// Roots of q in Q(t), if its discriminant is a square there.
inline std::optional<std::pair<RatFunc, RatFunc>> split_roots(const QuadPoly& q) {
  RatFunc disc = q.discriminant();
  RatFunc r;
  if (!disc.is_zero()) {
    auto sq = sqrt_up_to_constant(disc);
    if (!sq) return std::nullopt;
    auto c = rational_sqrt(sq->constant);
    if (!c) return std::nullopt;
    r = RatFunc(*c) * sq->root;
  }
  RatFunc two_a = RatFunc(2) * q.c2;
  return std::make_pair((-q.c1 + r) / two_a, (-q.c1 - r) / two_a);
}
}  // namespace detail

inline LemmaAbReport lemma_ab_chain(const UnitEquationInstance& inst) {
  validate(inst);
  const UnitData d = inst.units();
  const QuadPoly F = resultant_F(d);
  const QuadPoly G = resultant_G(d);
  LemmaAbReport r;
  r.chi_S = euler_char(d.S);
  r.height_lam = height(d.lam);
  r.hab_bound = 32 * r.chi_S + 8 * r.height_lam;
  if (!F.nondegenerate() || !G.nondegenerate()) {
    r.regime = AbRegime::degenerate;
    return r;
  }
  if (inst.y.is_zero()) {
    r.regime = AbRegime::y_zero;
    return r;
  }
  auto fr = detail::split_roots(F);
  auto gr = detail::split_roots(G);
  if (!fr || !gr) {
    r.regime = AbRegime::not_split;
    return r;
  }
  const SSet U = detail::u_base(d.S, F, G);
  r.chi_U = euler_char(U);
  r.y_zeros = zeros_outside(inst.y, U);
  const long hu = std::max(height(d.u1), height(d.u2));
  for (const RatFunc* alpha : {&fr->first, &fr->second}) {
    for (const RatFunc* beta : {&gr->first, &gr->second}) {
      AbPair p;
      p.a = d.u1 / *alpha;
      p.b = d.u2 / *beta;
      if (!is_s_unit(p.a, U) || !is_s_unit(p.b, U)) {
        r.units_ok = false;
        r.pairs.push_back(p);
        continue;
      }
      p.min_sum = min_sum(p.a, p.b, U);
      p.height_gap = std::labs(std::max(height(p.a), height(p.b)) - hu);
      if (p.height_gap > r.hab_bound) r.hab = false;
      if (r.chosen < 0 && (!p.min_sum || 4 * *p.min_sum >= r.y_zeros)) r.chosen = static_cast<int>(r.pairs.size());
      r.pairs.push_back(p);
    }
  }
  r.vy_up = r.chosen >= 0;
  r.subsum_free = !subsum_cases(inst).has_value();
  if (!r.subsum_free || !r.units_ok) return r;

  // Zannier applied to y^2 = u1^2 + lam u1 + u2 + 1 over U.
  const auto terms = equation_terms(d.lam, d.u1, d.u2);
  const long hp = proj_height(terms);
  r.vy_down_sound = 2 * r.y_zeros >= hp - 6 * r.chi_U;
  if (r.y_zeros < hu - 6 * r.chi_U)
    r.findings.push_back({"vy-down", "sum v(y) < max(H(u1), H(u2)) - 6 chi_U"});
  if (r.chosen >= 0) {
    const AbPair& p = r.pairs[static_cast<std::size_t>(r.chosen)];
    if (p.min_sum) {
      const long hab = std::max(height(p.a), height(p.b));
      r.vab_sound = 8 * *p.min_sum >= hab - 6 * r.chi_U - 32 * r.chi_S - 8 * r.height_lam;
      if (4 * *p.min_sum < hab - 38 * r.chi_S - 8 * r.height_lam)
        r.findings.push_back({"vab", "4 min_sum < max(H(a), H(b)) - 38 chi_S - 8 H(lam)"});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Forced unit when the constant coefficient of G vanishes.

struct ForcedUnit {
  std::vector<long> exponents;  ///< over the finite places of S, canonical order
  RatFunc unit;                 ///< product of the places to those exponents
  RatFunc rho;                  ///< theta of the unit
};

namespace detail {
/// Solves M x = rhs over Q; nullopt if inconsistent. M has full column rank
/// in every use here.
inline std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && m[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    std::swap(rhs[p], rhs[row]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col] / m[row][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
      rhs[i] -= f * rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = rhs[i] / m[i][pivot_col[i]];
  return x;
}
}  // namespace detail

/// The unit u1 (up to constants and inversion) forced by
/// (u1'/u1)^2 = -lam^2 / (4 - lam^2) (lam'/lam)^2, if any.
inline std::optional<ForcedUnit> forced_u1(const SSet& S, const RatFunc& lam) {
  if (lam.is_zero() || lam.is_constant()) throw Error(Errc::domain, "forced_u1 needs a non-constant lam");
  if (!is_s_unit(lam, S)) throw Error(Errc::domain, "forced_u1 needs lam to be an S-unit");
  const RatFunc l2 = lam * lam;
  const RatFunc Lam = theta(lam, S);
  const RatFunc R = -(l2 * Lam * Lam) / (RatFunc(4) - l2);
  auto sq = sqrt_up_to_constant(R);
  if (!sq) return std::nullopt;
  auto c = rational_sqrt(sq->constant);
  if (!c) return std::nullopt;
  const RatFunc rho = RatFunc(*c) * sq->root;
  // sum e_i P_i'/P_i = rho / m; clear denominators by D = prod P_i.
  const auto finite = S.finite_places();
  Poly D(Rat(1));
  for (const auto& v : finite) D = D * v.min_poly();
  const RatFunc target = rho / RatFunc(S.omega_denominator()) * RatFunc(D);
  if (!target.is_polynomial()) return std::nullopt;
  const Poly rhs_poly = target.num();
  const std::size_t rows = static_cast<std::size_t>(std::max(D.degree(), rhs_poly.degree() + 1));
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(finite.size()));
  for (std::size_t j = 0; j < finite.size(); ++j) {
    Poly col = finite[j].min_poly().derivative() * (D / finite[j].min_poly());
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = col.coeff(i);
  }
  std::vector<Rat> rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) rhs[i] = rhs_poly.coeff(i);
  auto x = detail::solve_linear(std::move(m), std::move(rhs));
  if (!x) return std::nullopt;
  ForcedUnit out;
  for (const auto& e : *x) {
    if (!is_integer(e)) return std::nullopt;
    out.exponents.push_back(e.get_num().get_si());
  }
  auto first = std::find_if(out.exponents.begin(), out.exponents.end(), [](long e) { return e != 0; });
  if (first == out.exponents.end()) return std::nullopt;  // rho = 0 cannot happen for non-constant lam
  if (*first < 0)
    for (auto& e : out.exponents) e = -e;
  out.unit = RatFunc(1);
  for (std::size_t j = 0; j < finite.size(); ++j) out.unit *= pow(RatFunc(finite[j].min_poly()), out.exponents[j]);
  out.rho = theta(out.unit, S);
  return out;
}

// ---------------------------------------------------------------------------
// Degree of the section.

struct DegreeBoundReport {
  long degree_bound = 0;  ///< H(u1) + H(y)
  Int limit;              ///< 2^14 * 58 chi + 2^14 * 28 (H(lam) + 1)
  bool holds = true;
  bool dependent = false;
  bool dependent_claim = true;  ///< H(u1) + H(y) <= 20 when case (ii) applies
  std::vector<Finding> findings;
};

inline DegreeBoundReport degree_bound(const UnitEquationInstance& inst) {
  validate(inst);
  DegreeBoundReport r;
  r.degree_bound = height(inst.u1) + height_or_zero(inst.y);
  const long chi = euler_char(inst.S);
  r.limit = Int(16384) * 58 * chi + Int(16384) * 28 * (height(inst.lam) + 1);
  r.holds = r.degree_bound <= r.limit;
  r.findings.push_back({"c2-height", "the additive constant is taken as 2^14 * 28 * (H(lam) + 1)"});
  r.dependent = mult_dependence(inst.u1, inst.u2, inst.S, kMaxDependenceExponent).has_value();
  if (r.dependent && r.degree_bound > 20) {
    r.dependent_claim = false;
    r.findings.push_back({"th-deg-20", "dependent units with H(u1) + H(y) > 20"});
  }
  return r;
}

}  // namespace unitfield
