#include "cohomkit/cup.hpp"

#include <gtest/gtest.h>

using namespace cohomkit;

TEST(Cup, UnitActsTrivially) {
  const auto g = groups::klein_four();
  const CohomologyEngine e(g, 3);
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& x : e.cohomology_group(Modulus::of(2), n).basis) {
      EXPECT_TRUE(e.equal(cup_product(unit_class(g, Modulus::of(2)), x), x));
      EXPECT_TRUE(e.equal(cup_product(x, unit_class(g, Modulus::of(2))), x));
    }
}

TEST(Cup, SquareOfDegreeOneClassForC2) {
  const CohomologyEngine e(groups::cyclic(2), 2);
  const auto x = e.cohomology_group(Modulus::of(2), 1).basis[0];
  const auto sq = cup_product(x, x);
  EXPECT_EQ(sq.degree, 2u);
  EXPECT_EQ(e.coordinates(sq), (IntVector{1}));
}

TEST(Cup, OddSquareVanishesForOddPrime) {
  const CohomologyEngine e(groups::cyclic(3), 2);
  const auto u = e.cohomology_group(Modulus::of(3), 1).basis[0];
  EXPECT_TRUE(e.is_coboundary(cup_product(u, u)));
}

TEST(Cup, MismatchedClassesAreRejected) {
  const auto c2 = groups::cyclic(2), c3 = groups::cyclic(3);
  EXPECT_THROW(cup_product(unit_class(c2, Modulus::of(2)), unit_class(c2, Modulus::of(4))), ModulusMismatch);
  EXPECT_THROW(cup_product(unit_class(c2), unit_class(c3)), InvalidArgument);
}

TEST(RingSlice, C2IsPolynomialOnOneClass) {
  const auto s = ring_slice(groups::cyclic(2), Modulus::of(2), 6);
  EXPECT_EQ(s.dimensions(), std::vector<std::size_t>(7, 1));
  for (std::size_t a = 0; a <= 6; ++a)
    for (std::size_t b = 0; a + b <= 6; ++b) EXPECT_EQ(s.product(a, 0, b, 0), (IntVector{1}));
  EXPECT_EQ(*s.power(1, IntVector{1}, 6), (IntVector{1}));
  EXPECT_FALSE(s.power(1, IntVector{1}, 7).has_value());
  EXPECT_THROW(s.multiply(3, IntVector{1}, 4, IntVector{1}), SliceTooShallow);
}

TEST(RingSlice, KleinFourDimensions) {
  const auto s = ring_slice(groups::klein_four(), Modulus::of(2), 4);
  EXPECT_EQ(s.dimensions(), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  // Polynomial on two degree-one classes: the monomials x^a y^b of degree n are independent.
  for (std::size_t n = 1; n <= 4; ++n) {
    IntMatrix monomials(s.dimension(n), n + 1);
    for (std::size_t a = 0; a <= n; ++a) {
      IntVector m = s.unit();
      std::size_t deg = 0;
      for (std::size_t t = 0; t < n; ++t) {
        m = s.multiply(deg, m, 1, t < a ? IntVector{1, 0} : IntVector{0, 1});
        ++deg;
      }
      for (std::size_t r = 0; r < m.size(); ++r) monomials(r, a) = m[r];
    }
    EXPECT_EQ(matrix_rank(monomials, Modulus::of(2)), n + 1) << n;
  }
}

TEST(RingSlice, DegreeZeroIsSpannedByUnit) {
  for (const std::string name : {"c3", "s3", "q8"}) {
    const auto s = ring_slice(groups::builtin(name), Modulus(), 2);
    EXPECT_EQ(s.dimension(0), 1u);
    EXPECT_TRUE(unit_acts_trivially(s)) << name;
  }
}

TEST(RingSlice, SizeCapIsEnforced) {
  SizeCap cap;
  cap.entries = 50;
  EXPECT_THROW(ring_slice(groups::symmetric_3(), Modulus::of(2), 4, cap), SizeCapExceeded);
}

// Graded commutativity and associativity on every slice the suite builds.
TEST(RingSlice, CommutativeAndAssociative) {
  struct Case {
    std::string group;
    std::string coeff;
    std::size_t n;
  };
  for (const auto& c : {Case{"c2", "Z/2", 6}, Case{"c3", "Z/3", 6}, Case{"c4", "Z/4", 6}, Case{"c4", "Z", 6},
                        Case{"klein4", "Z/2", 5}, Case{"klein4", "Z", 5}, Case{"s3", "Z/3", 6}, Case{"s3", "Z/2", 5},
                        Case{"q8", "Z/2", 4}}) {
    const auto s = ring_slice(groups::builtin(c.group), Modulus::parse(c.coeff), c.n);
    EXPECT_FALSE(graded_commutativity_failure(s).has_value()) << c.group << " " << c.coeff;
    EXPECT_FALSE(associativity_failure(s).has_value()) << c.group << " " << c.coeff;
    EXPECT_TRUE(unit_acts_trivially(s));
  }
}

// Associativity holds on representatives only up to coboundaries; check it on classes.
TEST(Cup, AssociativeOnClasses) {
  const CohomologyEngine e(groups::symmetric_3(), 4);
  const Modulus m = Modulus::of(2);
  std::vector<CohomologyClass> xs;
  for (std::size_t n = 1; n <= 2; ++n)
    for (const auto& b : e.cohomology_group(m, n).basis) xs.push_back(b);
  for (const auto& x : xs)
    for (const auto& y : xs)
      for (const auto& z : xs) {
        if (x.degree + y.degree + z.degree > 4) continue;
        EXPECT_TRUE(e.equal(cup_product(cup_product(x, y), z), cup_product(x, cup_product(y, z))));
      }
}

// pi_i commutes with products.
TEST(Cup, ReductionIsMultiplicative) {
  for (const std::string name : {"c4", "klein4", "s3"}) {
    const CohomologyEngine e(groups::builtin(name), 4);
    for (unsigned i : {2u, 3u}) {
      const Modulus m = Modulus::of(power(Integer(2), i));
      for (std::size_t a = 0; a <= 2; ++a)
        for (std::size_t b = 0; a + b <= 4; ++b)
          for (const auto& x : e.cohomology_group(m, a).basis)
            for (const auto& y : e.cohomology_group(m, b).basis) {
              const auto lhs = coefficient_map(CoefficientMap::pi, 2, i, cup_product(x, y));
              const auto rhs = cup_product(coefficient_map(CoefficientMap::pi, 2, i, x), coefficient_map(CoefficientMap::pi, 2, i, y));
              EXPECT_TRUE(e.equal(lhs, rhs)) << name << " i=" << i << " " << a << "," << b;
            }
    }
  }
}

TEST(Cup, IntegralProductsForC4) {
  // H^2(C4, Z) = Z/4 generated by u; u^2 generates H^4 = Z/4.
  const auto s = ring_slice(groups::cyclic(4), Modulus(), 4);
  EXPECT_EQ(s.orders[2], (IntVector{4}));
  ASSERT_EQ(s.orders[4], (IntVector{4}));
  const auto u2 = s.product(2, 0, 2, 0);
  EXPECT_TRUE(u2[0] == 1 || u2[0] == 3);
}
