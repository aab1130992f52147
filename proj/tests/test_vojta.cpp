// The unit equation y^2 = u1^2 + lam u1 + u2 + 1: resultants, inequalities,
// the trichotomy and the auxiliary lemmas.

#include <gtest/gtest.h>

#include "unitfield/generate.hpp"

using namespace unitfield;

namespace {

Poly P(std::initializer_list<long> c) { return make_poly(c); }
RatFunc T() { return RatFunc::t(); }

SSet spec_sset() { return SSet({Place::at(0), Place::at(2), Place::at(-2), Place::infinity()}); }

UnitEquationInstance spec_instance() {
  return make_instance(spec_sset(), T(), T(), RatFunc(-2) * T() * T(), RatFunc(1), true);
}

// Res of two quadratics in X, by the classical 2x2 Bezout formula.
Rat bezout_resultant(const Rat& a2, const Rat& a1, const Rat& a0, const Rat& b2, const Rat& b1, const Rat& b0) {
  Rat p = a2 * b0 - a0 * b2;
  return p * p - (a2 * b1 - a1 * b2) * (a1 * b0 - a0 * b1);
}

bool evaluable(const RatFunc& f, const Rat& t0) { return f.den().eval(t0) != 0; }

// Discriminant of G, expanded symbolically and checked by hand:
// a = th1, b = th2, l = lam, p = lam'.
RatFunc discr_G_oracle(const UnitData& d) {
  auto v = derivatives(d);
  const RatFunc &a = v.th1, &b = v.th2, &l = d.lam, &p = v.lp;
  const RatFunc l2 = l * l, four(4), eight(8), two(2);
  RatFunc sq = -(a * a * l2 * (four - l2)) + a * l * p * (eight - two * l2) + p * p * (l2 - four);
  RatFunc lin = a * a * a * l2 * (four - l2) + a * a * l * p * (l2 - eight) + a * p * p * (l2 + four) - l * p * p * p;
  return b * b * sq + two * b * lin + pow(a, 4) * l2 * l2 - two * a * a * l2 * p * p + pow(p, 4);
}

}  // namespace

TEST(Instance, KnownSolutionClassifies) {
  const auto inst = spec_instance();
  ASSERT_NO_THROW(validate(inst));
  const auto c = classify(inst);
  ASSERT_TRUE(c.subsum);
  EXPECT_EQ(*c.subsum, (std::vector<int>{0, 1, 2}));
  ASSERT_TRUE(c.dependence);
  EXPECT_EQ(c.dependence->r, 2);
  EXPECT_EQ(c.dependence->s, -1);
  EXPECT_EQ(c.dependence->mu, Rat(-1, 2));
  EXPECT_TRUE(c.bounded);
  EXPECT_FALSE(c.empty());
}

TEST(Instance, ValidationErrors) {
  auto expect_code = [](UnitEquationInstance inst, Errc code) {
    try {
      validate(inst);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
    }
  };
  auto good = spec_instance();
  auto x = good;
  x.u1 = T() + RatFunc(1);
  expect_code(x, Errc::non_unit_u1);
  x = good;
  x.u2 = T() + RatFunc(1);
  expect_code(x, Errc::non_unit_u2);
  x = good;
  x.y = RatFunc(1) / (T() - RatFunc(5));
  expect_code(x, Errc::non_integer_y);
  x = good;
  x.y = RatFunc(2);
  expect_code(x, Errc::equation_mismatch);
  x = good;
  x.lam = RatFunc(3);
  expect_code(x, Errc::constant_lambda);
  x = good;
  x.lam = T() - RatFunc(1);
  expect_code(x, Errc::lambda_support);
  x = good;
  x.S = SSet({Place::at(0), Place::infinity()});
  x.u2 = RatFunc(-2) * T() * T();
  expect_code(x, Errc::lambda_strict_support);
  x = good;
  x.y_scale = 0;
  expect_code(x, Errc::degenerate_input);
}

TEST(Resultants, ClosedFormFMatchesSylvester) {
  Rng rng(41);
  for (int n = 0; n < 100; ++n) {
    const UnitData d = random_unit_data(rng, 3);
    EXPECT_EQ(check_F(d).sign, 1);
    // A is monic linear in Y: Res_Y(Y + a0, by Y + b0) = b0 - by a0.
    const PolyB b = poly_B(d);
    const QuadPoly F = resultant_F(d);
    const RatFunc x = random_unit(rng, d.S, 2);
    EXPECT_EQ(F(x), b(x, RatFunc()) - b.by * (x * x + d.lam * x + RatFunc(1)));
  }
}

TEST(Resultants, GMatchesPointwiseBezout) {
  Rng rng(42);
  for (int n = 0; n < 60; ++n) {
    const UnitData d = random_unit_data(rng, 3);
    const QuadPoly G = resultant_G(d);
    EXPECT_EQ(check_G(d).sign, 1);
    const PolyB b = poly_B(d);
    for (int k = 0; k < 3; ++k) {
      Rat t0 = make_rat(uniform(rng, -40, 40), uniform(rng, 1, 7));
      Rat y0 = make_rat(uniform(rng, -9, 9), uniform(rng, 1, 5));
      bool ok = true;
      for (const RatFunc* f : {&d.lam, &b.bx2, &b.bx1, &b.by, &G.c2, &G.c1, &G.c0}) ok = ok && evaluable(*f, t0);
      if (!ok) continue;
      // A = X^2 + lam X + (Y + 1), B = bx2 X^2 + bx1 X + by Y.
      Rat expect = bezout_resultant(1, d.lam.eval(t0), y0 + 1, b.bx2.eval(t0), b.bx1.eval(t0), b.by.eval(t0) * y0);
      Rat got = (G.c2.eval(t0) * y0 + G.c1.eval(t0)) * y0 + G.c0.eval(t0);
      EXPECT_EQ(got, expect);
    }
  }
}

TEST(Resultants, DerivativeIdentity) {
  Rng rng(43);
  for (int n = 0; n < 100; ++n) {
    const UnitData d = random_unit_data(rng, 3);
    auto [lhs, rhs] = derivative_identity(d);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Resultants, ScaleWithTheDifferential) {
  // Replacing omega by f omega divides theta by f: F scales by 1/f, G by 1/f^2.
  Rng rng(44);
  for (int n = 0; n < 40; ++n) {
    const UnitData d = random_unit_data(rng, 3);
    const auto fin = d.S.finite_places();
    if (fin.size() < 3) continue;
    UnitData e = d;
    e.S = d.S.with_designated({fin[fin.size() - 1], fin[fin.size() - 2]});
    const RatFunc w = RatFunc(e.S.omega_denominator()) / RatFunc(d.S.omega_denominator());
    const QuadPoly F = resultant_F(d), F2 = resultant_F(e), G = resultant_G(d), G2 = resultant_G(e);
    EXPECT_EQ(F2.c2, F.c2 * w);
    EXPECT_EQ(F2.c1, F.c1 * w);
    EXPECT_EQ(G2.c0, G.c0 * w * w);
    EXPECT_EQ(G2.c1, G.c1 * w * w);
  }
}

TEST(Discriminants, OraclesAndPrintedDrift) {
  Rng rng(45);
  int drift_f = 0, drift_g = 0;
  for (int n = 0; n < 60; ++n) {
    const UnitData d = random_unit_data(rng, 3);
    const auto r = discriminant_bounds(d);
    EXPECT_EQ(printed_discr_F(d, 1), r.disc_F);
    EXPECT_EQ(discr_G_oracle(d), r.disc_G);
    EXPECT_TRUE(r.ok_F) << r.height_F << " > " << r.bound_F;
    EXPECT_TRUE(r.ok_G) << r.height_G << " > " << r.bound_G;
    for (const auto& f : r.findings) {
      drift_f += f.code == "discrF-drift";
      drift_g += f.code == "discrG-drift";
    }
  }
  EXPECT_GT(drift_f, 0);
  EXPECT_GT(drift_g, 0);
}

TEST(Divisibility, HoldsOnConstructedSolutions) {
  Rng rng(46);
  for (int n = 0; n < 60; ++n) {
    const auto inst = random_solution(rng);
    const auto r = divisibility_check(inst);
    EXPECT_TRUE(r.ok) << pretty(inst.u1) << " " << pretty(inst.u2);
    // Place-by-place oracle from the factorization of y.
    if (inst.y.is_zero()) continue;
    const UnitData d = inst.units();
    const RatFunc fu = resultant_F(d)(inst.u1), gu = resultant_G(d)(inst.u2);
    for (const auto& [v, k] : divisor(inst.y).terms()) {
      if (inst.S.contains(v) || k <= 0) continue;
      if (!fu.is_zero()) {
        EXPECT_GE(valuation(fu, v), k);
      }
      if (!gu.is_zero()) {
        EXPECT_GE(valuation(gu, v), k);
      }
    }
  }
}

TEST(CorvajaZannier, EqualityWitness) {
  const SSet S({Place::at(0), Place::infinity()});
  EXPECT_EQ(gcd_sum(T(), T() * T(), S), 1);
  const auto r = cz_check(T(), T() * T(), S);
  EXPECT_EQ(r.branch, CzBranch::dependent_mu_one);
  EXPECT_TRUE(r.holds);
  EXPECT_THROW(gcd_sum(RatFunc(1), T(), S), Error);
}

TEST(CorvajaZannier, GcdSumAgreesWithFactorization) {
  Rng rng(47);
  const SSet S({Place::at(0), Place::at(1), Place::infinity()});
  for (int n = 0; n < 150; ++n) {
    RatFunc a = random_unit(rng, S, 3, 3), b = random_unit(rng, S, 3, 3);
    if (a == RatFunc(1) || b == RatFunc(1) || (a.is_constant() && b.is_constant())) continue;
    long oracle = 0;
    const Divisor da = divisor(RatFunc(1) - a), db = divisor(RatFunc(1) - b);
    for (const auto& [v, k] : da.terms())
      if (!S.contains(v) && k > 0) oracle += v.degree() * std::min(k, std::max(0L, db.at(v)));
    EXPECT_EQ(gcd_sum(a, b, S), oracle);
    EXPECT_TRUE(cz_check(a, b, S).holds);
  }
}

TEST(Zannier, EqualityAndRejection) {
  const SSet S({Place::at(0), Place::infinity()});
  const auto r = zannier_check({T(), RatFunc(1)}, S);
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(r.rhs, 1);
  std::vector<int> vanishing;
  try {
    zannier_check({T(), RatFunc(2), -T(), RatFunc(3)}, S, &vanishing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_input);
  }
  EXPECT_EQ(vanishing, (std::vector<int>{0, 2}));
}

TEST(Zannier, HoldsOnRandomTuples) {
  Rng rng(48);
  for (int n = 0; n < 150; ++n) {
    SSet S = random_sset(rng, static_cast<std::size_t>(uniform(rng, 2, 3)));
    std::vector<RatFunc> th;
    for (long i = 0, m = uniform(rng, 2, 4); i < m; ++i) th.push_back(random_unit(rng, S, 2, 2));
    if (first_vanishing_subset(th, false)) continue;
    const auto r = zannier_check(th, S);
    EXPECT_TRUE(r.holds) << r.lhs << " < " << r.rhs;
  }
}

TEST(Classify, NonemptyOnConstructedSolutions) {
  Rng rng(49);
  for (int n = 0; n < 60; ++n) {
    const auto inst = random_solution(rng);
    const auto c = classify(inst);
    EXPECT_FALSE(c.empty());
  }
}

TEST(Cover, BoundHoldsOnConstructedSolutions) {
  Rng rng(50);
  for (int n = 0; n < 40; ++n) {
    const auto inst = random_solution(rng);
    const auto r = cover_bound_check(inst.units());
    EXPECT_TRUE(r.holds) << r.chi_U << " > " << r.bound;
    EXPECT_EQ(r.degree, 1 << r.specs.size());
  }
}

TEST(LemmaAb, SoundStepsHold) {
  Rng rng(51);
  for (int n = 0; n < 60; ++n) {
    const auto inst = random_solution(rng);
    const auto r = lemma_ab_chain(inst);
    EXPECT_FALSE(r.violated()) << ab_regime_name(r.regime);
  }
  // Spec solution: F or G degenerates.
  EXPECT_EQ(lemma_ab_chain(spec_instance()).regime, AbRegime::degenerate);
}

TEST(ForcedUnit, EngineeredLambda) {
  const SSet S({Place::at(0), Place::at(1), Place::at(-1), Place::finite(P({1, 0, 1})), Place::infinity()});
  const RatFunc lam = RatFunc(P({1, 0, 1})) / T();
  const auto f = forced_u1(S, lam);
  ASSERT_TRUE(f);
  EXPECT_TRUE(f->unit == T() || f->unit == RatFunc(1) / T()) << pretty(f->unit);
  const RatFunc l2 = lam * lam, L = theta(lam, S);
  EXPECT_EQ(f->rho * f->rho, -(l2 * L * L) / (RatFunc(4) - l2));
}

TEST(ForcedUnit, AgreesWithBruteForce) {
  std::vector<SSet> sets{SSet({Place::at(0), Place::at(1), Place::at(-1), Place::finite(P({1, 0, 1})), Place::infinity()}),
                         SSet({Place::at(0), Place::at(2), Place::at(-2), Place::infinity()})};
  std::vector<RatFunc> lams{RatFunc(P({1, 0, 1})) / T(), T(), RatFunc(P({1, 0, 1})) / (T() - RatFunc(1)),
                            (T() - RatFunc(1)) / (T() + RatFunc(1)), T() * T(), T() / (T() - RatFunc(2))};
  for (const auto& S : sets)
    for (const auto& lam : lams) {
      if (!is_s_unit(lam, S)) continue;
      const RatFunc l2 = lam * lam, L = theta(lam, S);
      const RatFunc R = -(l2 * L * L) / (RatFunc(4) - l2);
      const std::size_t k = S.finite_places().size();
      std::vector<std::vector<long>> hits;
      std::vector<long> e(k, -6);
      for (;;) {
        RatFunc u = unit_from_exponents(S, Rat(1), e);
        RatFunc th = theta(u, S);
        if (th * th == R) hits.push_back(e);
        std::size_t i = 0;
        while (i < k && ++e[i] > 6) e[i++] = -6;
        if (i == k) break;
      }
      const auto f = forced_u1(S, lam);
      if (hits.empty()) {
        EXPECT_FALSE(f) << pretty(lam);
        continue;
      }
      ASSERT_TRUE(f) << pretty(lam);
      ASSERT_EQ(hits.size(), 2u);
      std::vector<long> neg = f->exponents;
      for (auto& x : neg) x = -x;
      EXPECT_TRUE(hits[0] == f->exponents || hits[1] == f->exponents);
      EXPECT_TRUE(hits[0] == neg || hits[1] == neg);
    }
}

TEST(DegreeBound, HoldsAndNotesConstant) {
  const auto r = degree_bound(spec_instance());
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.dependent);
  EXPECT_EQ(r.degree_bound, 1);
  ASSERT_FALSE(r.findings.empty());
  EXPECT_EQ(r.findings[0].code, "c2-height");
}
