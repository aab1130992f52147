// Cross-ratio, the lambda' invariant and conic-plus-two-lines configurations.

#include <gtest/gtest.h>

#include "unitfield/suites.hpp"

using namespace unitfield;

namespace {

// Affine cross-ratio (z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3)) for finite points.
Rat affine_cross_ratio(const Rat& z1, const Rat& z2, const Rat& z3, const Rat& z4) {
  return (z1 - z3) * (z2 - z4) / ((z1 - z4) * (z2 - z3));
}

Fourple random_distinct_finite(Rng& rng) {
  for (;;) {
    Fourple f;
    for (auto& p : f) p = ProjPoint(random_rational(rng, 9));
    bool ok = true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) ok = ok && f[static_cast<std::size_t>(i)] != f[static_cast<std::size_t>(j)];
    if (ok) return f;
  }
}

}  // namespace

TEST(CrossRatio, AgreesWithAffineFormula) {
  Rng rng(31);
  for (int n = 0; n < 200; ++n) {
    Fourple f = random_distinct_finite(rng);
    EXPECT_EQ(cross_ratio(f), ProjPoint(affine_cross_ratio(f[0].value(), f[1].value(), f[2].value(), f[3].value())));
  }
  EXPECT_EQ(cross_ratio({ProjPoint(0), ProjPoint(1), ProjPoint(2), ProjPoint(3)}), ProjPoint(Rat(4, 3)));
}

TEST(CrossRatio, InvariantUnderMoebius) {
  Rng rng(32);
  for (int n = 0; n < 200; ++n) {
    Fourple f = random_distinct_finite(rng);
    Rat a = random_rational(rng, 5), b = random_rational(rng, 5), c = random_rational(rng, 5),
        d = random_rational(rng, 5);
    if (a * d - b * c == 0) continue;
    Fourple g;
    for (std::size_t i = 0; i < 4; ++i) g[i] = ProjPoint(a * f[i].a() + b * f[i].b(), c * f[i].a() + d * f[i].b());
    EXPECT_EQ(cross_ratio(f), cross_ratio(g));
  }
}

TEST(CrossRatio, RepeatedPointIsDegenerate) {
  try {
    cross_ratio({ProjPoint(1), ProjPoint(1), ProjPoint(2), ProjPoint(3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_fourple);
  }
}

TEST(LambdaPrime, InvariantUnderClassStabilizer) {
  Rng rng(33);
  ASSERT_EQ(class_stabilizer().size(), 8u);
  int moved = 0;
  for (int n = 0; n < 200; ++n) {
    Fourple f = random_distinct_finite(rng);
    if (n % 10 == 0) f[static_cast<std::size_t>(n / 10 % 4)] = ProjPoint::infinity();
    for (const auto& g : stabilizer_orbit(f)) EXPECT_EQ(lambda_prime(g), lambda_prime(f));
    // (2 3) is not in the stabilizer: beta goes to 1 - beta.
    Fourple h = permute(f, {0, 2, 1, 3});
    EXPECT_EQ(cross_ratio(h), ProjPoint(Rat(1 - cross_ratio(f).value())));
    moved += lambda_prime(h) != lambda_prime(f);
  }
  EXPECT_GT(moved, 150);
}

TEST(LambdaPrime, ClassEquality) {
  Fourple f{ProjPoint(0), ProjPoint(1), ProjPoint(2), ProjPoint(5)};
  EXPECT_TRUE(class_equal(f, permute(f, {2, 3, 0, 1})));
  EXPECT_TRUE(class_equal(f, permute(f, {1, 0, 2, 3})));
}

TEST(Configuration, FamilyFourpleAndClosedForm) {
  // Independent derivation on the parametrization: z = 0 gives w (lam w - 2 s) = 0,
  // x = 0 gives s^2 = w^2, so the fourple is (lam/2, inf, 1, -1) and
  // beta = (lam - 2)/(lam + 2), lambda' = (beta - 1)^2 / beta = 16 / (lam^2 - 4).
  Rng rng(34);
  for (int n = 0; n < 100; ++n) {
    Rat lam = random_rational(rng, 12);
    if (lam == 2 || lam == -2) continue;
    const auto cfg = config_from_coeff(lam);
    ASSERT_TRUE(is_normal_crossing(cfg));
    const Fourple f = intersection_fourple(cfg);
    EXPECT_EQ(f[0], ProjPoint(Rat(lam / 2)));
    EXPECT_TRUE(f[1].is_infinity());
    EXPECT_EQ(f[2], ProjPoint(1));
    EXPECT_EQ(f[3], ProjPoint(-1));
    Rat beta = (lam - 2) / (lam + 2);
    EXPECT_EQ(cross_ratio(f), ProjPoint(beta));
    EXPECT_EQ(coeff_to_moduli(lam), ProjPoint(Rat(16 / (lam * lam - 4))));
  }
  EXPECT_EQ(coeff_to_moduli(6), ProjPoint(Rat(1, 2)));
}

TEST(Configuration, ParametrizationLiesOnConic) {
  Rng rng(35);
  for (int n = 0; n < 50; ++n) {
    Rat lam = random_rational(rng, 9);
    const auto cfg = config_from_coeff(lam);
    const auto par = family_parametrization(lam);
    for (int k = 0; k < 5; ++k) {
      Vec3 p = par.at(ProjPoint(random_rational(rng, 9)));
      EXPECT_EQ(quad_form(cfg.conic, p, p), 0);
    }
    Vec3 q = par.at(ProjPoint::infinity());
    EXPECT_EQ(quad_form(cfg.conic, q, q), 0);
  }
}

TEST(Configuration, CoordinateChangesPreserveLambdaPrime) {
  Rng rng(36);
  int done = 0;
  while (done < 50) {
    Rat lam = random_rational(rng, 9);
    if (lam == 2 || lam == -2) continue;
    const auto moved = transform(config_from_coeff(lam), random_transform(rng));
    EXPECT_TRUE(is_normal_crossing(moved));
    const auto par = conic_parametrization(moved);
    Vec3 p = par.at(ProjPoint(random_rational(rng, 5)));
    EXPECT_EQ(quad_form(moved.conic, p, p), 0);
    EXPECT_EQ(lambda_prime(intersection_fourple(moved)), coeff_to_moduli(lam));
    ++done;
  }
}

TEST(Configuration, NormalCrossingFailsExactlyAtPlusMinusTwo) {
  for (long l = -6; l <= 6; ++l) EXPECT_EQ(is_normal_crossing(config_from_coeff(Rat(l))), l != 2 && l != -2) << l;
  try {
    intersection_fourple(config_from_coeff(Rat(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_configuration);
  }
}

TEST(Configuration, LinesMeetingOnConic) {
  // y^2 = x^2 + z^2 with lines z = 0 and x = y: they meet at (1 : 1 : 0) on the conic.
  ConicTwoLines c = config_from_coeff(Rat(0));
  c.line3 = {Rat(1), Rat(-1), Rat(0)};
  EXPECT_FALSE(is_normal_crossing(c));
  EXPECT_THROW(intersection_fourple(c), Error);
}

TEST(Configuration, IrrationalIntersectionsReported) {
  // x^2 + y^2 = 2 z^2 meets z = 0 in no rational point, and x = 0 in y = +-sqrt(2) z.
  ConicTwoLines c;
  c.conic = {Vec3{Rat(1), Rat(0), Rat(0)}, Vec3{Rat(0), Rat(1), Rat(0)}, Vec3{Rat(0), Rat(0), Rat(-2)}};
  c.line2 = {Rat(0), Rat(0), Rat(1)};
  c.line3 = {Rat(1), Rat(0), Rat(0)};
  EXPECT_TRUE(is_normal_crossing(c));
  try {
    intersection_fourple(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_rational);
  }
}
