#include "cohomkit/fiso.hpp"

#include <gtest/gtest.h>

using namespace cohomkit;

TEST(SExponent, Examples) {
  EXPECT_EQ(s_exponent(*groups::symmetric_3(), 2), 1u);
  EXPECT_EQ(s_exponent(*groups::cyclic(8), 2), 3u);
  EXPECT_EQ(s_exponent(*groups::klein_four(), 3), 0u);
  EXPECT_THROW(s_exponent(*groups::cyclic(8), 4), NotPrime);
}

TEST(Derivation, UnitReducesToDeltaOfY) {
  const auto g = groups::cyclic(4);
  const CohomologyEngine e(g, 4);
  const Modulus m = Modulus::of(4);
  for (const auto& y : e.cohomology_group(m, 2).basis) {
    const auto c = verify_derivation(e, 2, unit_class(g, m), y);
    EXPECT_TRUE(c.passed);
    EXPECT_TRUE(e.equal(c.lhs, bockstein_delta(2, y)));
  }
  EXPECT_TRUE(e.is_coboundary(bockstein_delta(2, unit_class(g, m))));
}

TEST(Derivation, C2DegreeOneSquare) {
  const CohomologyEngine e(groups::cyclic(2), 3);
  const auto x = e.cohomology_group(Modulus::of(2), 1).basis[0];
  const auto c = verify_derivation(e, 1, x, x);
  EXPECT_TRUE(c.passed);
  // delta(x^2) = 2 x^3 = 0 mod 2.
  EXPECT_TRUE(e.is_coboundary(c.lhs));
}

TEST(Derivation, C4LevelTwoExhaustive) {
  const CohomologyEngine e(groups::cyclic(4), 5);
  const Modulus m = Modulus::of(4);
  for (std::size_t a = 0; a <= 4; ++a)
    for (std::size_t b = 0; a + b <= 4; ++b)
      for (const auto& x : e.cohomology_group(m, a).basis)
        for (const auto& y : e.cohomology_group(m, b).basis) EXPECT_TRUE(verify_derivation(e, 2, x, y).passed);
}

TEST(Derivation, RejectsWrongLevel) {
  const auto g = groups::cyclic(2);
  const CohomologyEngine e(g, 2);
  const auto x = e.cohomology_group(Modulus::of(2), 1).basis[0];
  EXPECT_THROW(verify_derivation(e, 2, x, x), ModulusMismatch);
}

// Q8 is outside the acceptance family; check the derivation identity there at a lower bound.
TEST(Derivation, QuaternionGroup) {
  const CohomologyEngine e(groups::quaternion_8(), 5);
  for (unsigned i : {1u, 2u}) {
    const Modulus m = Modulus::of(power(Integer(2), i));
    for (std::size_t a = 0; a <= 4; ++a)
      for (std::size_t b = 0; a + b <= 4; ++b)
        for (const auto& x : e.cohomology_group(m, a).basis)
          for (const auto& y : e.cohomology_group(m, b).basis) EXPECT_TRUE(verify_derivation(e, i, x, y).passed) << a << "," << b;
  }
}

TEST(PowerRule, HoldsWhereApplicable) {
  for (const auto& [name, p] : std::vector<std::pair<std::string, int>>{{"c2", 2}, {"c4", 2}, {"klein4", 2}, {"c3", 3}}) {
    const CohomologyEngine e(groups::builtin(name), 6);
    for (unsigned i : {1u, 2u})
      for (std::size_t a = 1; a <= 2; ++a)
        for (const auto& x : e.cohomology_group(Modulus::of(power(Integer(p), i)), a).basis)
          for (unsigned n = 1; n <= static_cast<unsigned>(p) && n * a + 1 <= 6; ++n) {
            const auto c = verify_power_rule(e, i, x, n);
            EXPECT_EQ(c.applicable, p == 2 || a % 2 == 0);
            EXPECT_TRUE(c.passed) << name << " i=" << i << " a=" << a << " n=" << n;
          }
  }
}

TEST(PthPower, OddClassOddPrimeUsesZero) {
  const CohomologyEngine e(groups::cyclic(3), 6);
  const auto x = e.cohomology_group(Modulus::of(9), 1).basis[0];
  const auto lift = pth_power_preimage(e, 2, x);
  EXPECT_TRUE(lift.odd_shortcut);
  EXPECT_TRUE(e.is_coboundary(lift.preimage));
  EXPECT_EQ(lift.preimage.modulus, Modulus::of(27));
}

TEST(PthPower, C2AndC4Examples) {
  const CohomologyEngine c2(groups::cyclic(2), 4);
  const auto x = c2.cohomology_group(Modulus::of(4), 1).basis[0];
  const auto lift = pth_power_preimage(c2, 2, x);
  EXPECT_FALSE(lift.odd_shortcut);
  EXPECT_EQ(lift.preimage.modulus, Modulus::of(8));
  EXPECT_TRUE(c2.equal(coefficient_map(CoefficientMap::pi, 2, 3, lift.preimage), cup_power(x, 2)));

  const CohomologyEngine c4(groups::cyclic(4), 4);
  for (const auto& y : c4.cohomology_group(Modulus::of(4), 2).basis) {
    const auto l = pth_power_preimage(c4, 2, y);
    EXPECT_TRUE(c4.equal(coefficient_map(CoefficientMap::pi, 2, 3, l.preimage), cup_power(y, 2)));
  }
}

TEST(PthPower, Errors) {
  const auto g = groups::cyclic(2);
  const CohomologyEngine e(g, 2);
  EXPECT_THROW(pth_power_preimage(e, 2, unit_class(g, Modulus::of(4))), DegreeZeroUnsupported);
  const auto x = e.cohomology_group(Modulus::of(4), 2).basis[0];
  EXPECT_THROW(pth_power_preimage(e, 2, x), SliceTooShallow);
}

TEST(IntegralLift, C2Generator) {
  const CohomologyEngine e(groups::cyclic(2), 4);
  const auto x = e.cohomology_group(Modulus::of(2), 1).basis[0];
  const auto lift = integral_psth_preimage(e, x);
  EXPECT_EQ(lift.integral.degree, 2u);
  EXPECT_EQ(e.coordinates(lift.integral), (IntVector{1}));
  EXPECT_TRUE(e.equal(coefficient_map(CoefficientMap::theta, 2, 1, lift.integral), cup_product(x, x)));
}

TEST(IntegralLift, KleinFourFourthPowers) {
  const CohomologyEngine e(groups::klein_four(), 4);
  for (const auto& x : e.cohomology_group(Modulus::of(2), 1).basis) {
    const auto lift = integral_psth_preimage(e, x);
    EXPECT_EQ(lift.integral.degree, 4u);
    EXPECT_TRUE(e.equal(coefficient_map(CoefficientMap::theta, 2, 1, lift.integral), cup_power(x, 4)));
  }
}

TEST(IntegralLift, PowerOfAReduction) {
  // x = theta_1(z) lifts through z^{p^s}.
  const CohomologyEngine e(groups::cyclic(3), 6);
  const auto z = e.cohomology_group(Modulus(), 2).basis[0];
  const auto x = coefficient_map(CoefficientMap::theta, 3, 1, z);
  const auto lift = integral_psth_preimage(e, x);
  EXPECT_TRUE(e.equal(coefficient_map(CoefficientMap::theta, 3, 1, lift.integral),
                      coefficient_map(CoefficientMap::theta, 3, 1, cup_power(z, 3))));
}

TEST(FIso, PassesOnFamily) {
  for (const auto& [name, p] :
       std::vector<std::pair<std::string, int>>{{"c2", 2}, {"c3", 3}, {"c4", 2}, {"klein4", 2}, {"s3", 2}, {"s3", 3}}) {
    const auto r = f_iso_check(groups::builtin(name), p, 6);
    EXPECT_TRUE(r.passed) << name << " " << p;
    for (const auto& w : r.surjectivity) EXPECT_TRUE(w.found);
    for (const auto& w : r.nilpotency) {
      EXPECT_TRUE(w.reduces_to_zero);
      if (w.checked) {
        EXPECT_GE(w.exponent, 1u);
        EXPECT_LE(w.exponent, std::max(r.s, 1u));
      }
    }
    EXPECT_TRUE(r.tensor_kernel.empty());
  }
}

TEST(FIso, WitnessCounts) {
  const auto c2 = f_iso_check(groups::cyclic(2), 2, 6);
  EXPECT_EQ(c2.s, 1u);
  EXPECT_EQ(c2.surjectivity.size(), 3u);  // degrees 1, 2, 3
  EXPECT_EQ(c2.nilpotency.size(), 3u);    // H^2, H^4, H^6 = Z/2

  const auto c4 = f_iso_check(groups::cyclic(4), 2, 6);
  EXPECT_EQ(c4.s, 2u);
  ASSERT_EQ(c4.nilpotency.size(), 3u);
  // z = 2u in H^2(C4, Z) = Z/4: z != 0, z^2 = 4u^2 = 0.
  EXPECT_EQ(c4.nilpotency[0].exponent, 2u);

  // S3 at 3: H^1 and H^2 mod 3 vanish, so nothing has to lift.
  const auto s3 = f_iso_check(groups::symmetric_3(), 3, 6);
  EXPECT_TRUE(s3.surjectivity.empty());
}

TEST(FIso, VacuousWhenPrimeDoesNotDivide) {
  const auto r = f_iso_check(groups::cyclic(6), 5, 6);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.s, 0u);
  EXPECT_TRUE(r.surjectivity.empty());
  EXPECT_TRUE(r.nilpotency.empty());
}

TEST(FIso, QuaternionGroupAtLowerBound) {
  const auto r = f_iso_check(groups::quaternion_8(), 2, 5);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.s, 3u);
  EXPECT_TRUE(r.surjectivity.empty());  // 8 |x| > 5
}
