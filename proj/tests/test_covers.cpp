// Quadratic and biquadratic covers of P^1.

#include <gtest/gtest.h>

#include "unitfield/generate.hpp"

using namespace unitfield;

namespace {

Poly P(std::initializer_list<long> c) { return make_poly(c); }

// Product of distinct pool places, so squarefree by construction.
Poly random_squarefree(Rng& rng, std::vector<Place>& used) {
  Poly d(Rat(1));
  used.clear();
  for (const auto& v : place_pool())
    if (uniform(rng, 0, 2) == 0) {
      d = d * v.min_poly();
      used.push_back(v);
    }
  return d;
}

long hyperelliptic_genus(long n) { return (n - 1) / 2; }

}  // namespace

TEST(SquarefreePart, SplitsOddAndEvenMultiplicities) {
  Poly f = P({-1, 1}) * pow(P({1, 0, 1}), 2) * pow(P({3, 1}), 3) * Poly(Rat(5));
  auto [sf, sq] = squarefree_part(f);
  EXPECT_EQ(sf, P({-1, 1}) * P({3, 1}));
  EXPECT_EQ(sq, P({1, 0, 1}) * P({3, 1}));
  EXPECT_THROW(squarefree_part(Poly()), Error);
}

TEST(QuadCover, RatFuncSquareClassMatchesNumTimesDen) {
  RatFunc f(P({0, 1}) * P({-1, 1}), P({1, 0, 1}) * P({-1, 1}) * P({-1, 1}));
  auto a = QuadCoverSpec::from_ratfunc(f);
  auto b = QuadCoverSpec::from_poly(f.num() * f.den());
  EXPECT_EQ(a.d_sf, b.d_sf);
  EXPECT_EQ(a.inf_ramified, b.inf_ramified);
}

TEST(QuadCover, HyperellipticGenusOracle) {
  Rng rng(21);
  for (long n = 1; n <= 8; ++n)
    for (int k = 0; k < 5; ++k) {
      Poly d(Rat(1));
      for (long i = 0; i < n; ++i) d = d * linear(Rat(i * 3 + k));
      auto spec = QuadCoverSpec::from_poly(d * Poly(random_constant(rng, 5)));
      EXPECT_EQ(genus_of_cover({spec}), hyperelliptic_genus(n)) << "n=" << n;
      EXPECT_EQ(spec.geometric_ramification() % 2, 0);
    }
}

TEST(QuadCover, BiquadraticGenusIsSumOverQuadraticSubfields) {
  Rng rng(22);
  std::vector<Place> ua, ub;
  int checked = 0;
  while (checked < 100) {
    Poly a = random_squarefree(rng, ua), b = random_squarefree(rng, ub);
    if (a.degree() == 0 || b.degree() == 0 || a == b) continue;
    auto c = squarefree_part(a * b).first;
    auto sa = QuadCoverSpec::from_poly(a), sb = QuadCoverSpec::from_poly(b), sc = QuadCoverSpec::from_poly(c);
    EXPECT_EQ(genus_of_cover({sa, sb}), genus_of_cover({sa}) + genus_of_cover({sb}) + genus_of_cover({sc}));
    ++checked;
  }
}

TEST(QuadCover, EulerCharacteristicMultipliesOverBranchLocus) {
  Rng rng(23);
  std::vector<Place> ua, ub;
  for (int n = 0; n < 100; ++n) {
    Poly a = random_squarefree(rng, ua), b = random_squarefree(rng, ub);
    if (a.degree() == 0) continue;
    std::vector<QuadCoverSpec> specs{QuadCoverSpec::from_poly(a)};
    std::vector<Place> U = ua;
    if (b.degree() > 0 && b != a) {
      specs.push_back(QuadCoverSpec::from_poly(b));
      U.insert(U.end(), ub.begin(), ub.end());
    }
    U.push_back(Place::infinity());
    SSet base(U);
    const long D = 1L << specs.size();
    EXPECT_EQ(chi_of_lifted_set(base.places(), specs), D * euler_char(base));
  }
}

TEST(QuadCover, PointsAbove) {
  auto s = QuadCoverSpec::from_poly(P({0, 1}) * P({1, 0, 1}));
  EXPECT_EQ(points_above(Place::at(0), {s}), 1);
  EXPECT_EQ(points_above(Place::finite(P({1, 0, 1})), {s}), 2);
  EXPECT_EQ(points_above(Place::infinity(), {s}), 1);
  EXPECT_EQ(points_above(Place::at(5), {s}), 2);
  EXPECT_EQ(points_above(Place::finite(P({-2, 0, 1})), {s}), 4);
}

TEST(QuadCover, RamificationLocus) {
  auto odd = QuadCoverSpec::from_poly(P({0, 1}) * P({-2, 0, 1}));
  auto locus = ramification_locus(odd);
  ASSERT_EQ(locus.size(), 3u);
  EXPECT_TRUE(locus.back().is_infinity());
  for (const auto& v : locus) EXPECT_TRUE(odd.ramifies_at(v));
  EXPECT_FALSE(odd.ramifies_at(Place::at(1)));
  auto even = QuadCoverSpec::from_poly(P({0, 1}) * P({-2, 0, 1}) * P({1, 1}));
  EXPECT_EQ(ramification_locus(even).size(), 3u);
  EXPECT_FALSE(even.ramifies_at(Place::infinity()));
}

TEST(QuadCover, DegenerateSpecsRejected) {
  auto sq = QuadCoverSpec::from_poly(pow(P({1, 1}), 2));
  EXPECT_TRUE(sq.trivial());
  try {
    genus_of_cover({sq});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_cover);
  }
  auto a = QuadCoverSpec::from_poly(P({0, 1}));
  EXPECT_THROW(genus_of_cover({a, a}), Error);
  EXPECT_THROW(genus_of_cover({a, a, a}), Error);
  EXPECT_EQ(make_cover({}).degree, 1);
  EXPECT_EQ(make_cover({a}).genus, 0);
}
