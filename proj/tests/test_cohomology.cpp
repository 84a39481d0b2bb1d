#include "cohomkit/cohomology.hpp"
#include "cohomkit/cup.hpp"

#include <gtest/gtest.h>

using namespace cohomkit;

namespace {

IntVector inv(std::initializer_list<int> xs) {
  IntVector out;
  for (int x : xs) out.push_back(x);
  return out;
}

// Matrix whose columns are the coordinates of delta_1 on each basis class of H^n(G, Z/p).
IntMatrix delta_matrix(const CohomologyEngine& e, const Integer& p, std::size_t n) {
  const auto h = e.cohomology_group(Modulus::of(p), n);
  const std::size_t rows = e.cohomology_group(Modulus::of(p), n + 1).size();
  IntMatrix m(rows, h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    const auto c = e.coordinates(bockstein_delta(1, h.basis[k]));
    for (std::size_t r = 0; r < rows; ++r) m(r, k) = c[r];
  }
  return m;
}

}  // namespace

TEST(Cohomology, SmallCyclicValues) {
  const auto c2 = groups::cyclic(2);
  EXPECT_EQ(cohomology_group(c2, Modulus(), 2).invariant_factors, inv({2}));
  EXPECT_TRUE(cohomology_group(c2, Modulus(), 1).invariant_factors.empty());
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(cohomology_group(c2, Modulus::of(2), n).invariant_factors, inv({2})) << n;
  for (const std::string name : {"c3", "klein4", "s3", "q8"})
    EXPECT_EQ(cohomology_group(groups::builtin(name), Modulus(), 0).invariant_factors, inv({0})) << name;
}

// Frozen from the iterated-kernel resolution and cross-checked against the bar complex below.
TEST(Cohomology, IntegralTables) {
  const std::map<std::string, std::vector<IntVector>> expected{
      {"klein4", {inv({0}), {}, inv({2, 2}), inv({2}), inv({2, 2, 2}), inv({2, 2}), inv({2, 2, 2, 2})}},
      {"s3", {inv({0}), {}, inv({2}), {}, inv({6}), {}, inv({2})}},
      {"q8", {inv({0}), {}, inv({2, 2}), {}, inv({8}), {}, inv({2, 2})}},
      {"c6", {inv({0}), {}, inv({6}), {}, inv({6}), {}, inv({6})}},
  };
  for (const auto& [name, table] : expected) {
    const CohomologyEngine engine(groups::builtin(name), 6);
    for (std::size_t n = 0; n < table.size(); ++n)
      EXPECT_EQ(canonical_invariants(engine.cohomology_group(Modulus(), n).invariant_factors), table[n]) << name << " " << n;
  }
}

TEST(Cohomology, ModularTables) {
  const CohomologyEngine s3(groups::symmetric_3(), 6);
  const std::vector<std::size_t> dims3{1, 0, 0, 1, 1, 0, 0};
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(s3.cohomology_group(Modulus::of(3), n).size(), dims3[n]) << n;
  const CohomologyEngine q8(groups::quaternion_8(), 6);
  const std::vector<std::size_t> dims2{1, 2, 2, 1, 1, 2, 2};
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(q8.cohomology_group(Modulus::of(2), n).size(), dims2[n]) << n;
}

// The engine, the normalized bar complex and the periodic resolution agree.
TEST(Cohomology, ThreeRoutesAgreeOnCyclicGroups) {
  for (std::size_t order : {2u, 3u, 4u, 6u}) {
    const auto g = groups::cyclic(order);
    const CohomologyEngine engine(g, 5);
    for (const std::string coeff : {"Z", "Z/2", "Z/3", "Z/4", "Z/6"}) {
      const Modulus m = Modulus::parse(coeff);
      const auto res = periodic_resolution(g, 1, 6);
      const CochainComplex periodic(res, m);
      for (std::size_t n = 0; n <= (order == 6 ? 4u : 5u); ++n) {
        const IntVector p = canonical_invariants(periodic.cohomology(n).orders);
        EXPECT_EQ(bar_cohomology_invariants(*g, m, n), p) << order << " " << coeff << " " << n;
        EXPECT_EQ(canonical_invariants(engine.cohomology_group(m, n).invariant_factors), p) << order << " " << coeff << " " << n;
      }
    }
  }
}

TEST(Cohomology, BarRouteAgreesOnNoncyclicGroups) {
  for (const std::string name : {"klein4", "s3", "q8"}) {
    const auto g = groups::builtin(name);
    const CohomologyEngine engine(g, 3);
    for (const std::string coeff : {"Z", "Z/2", "Z/3"})
      for (std::size_t n = 0; n <= 3; ++n) {
        const Modulus m = Modulus::parse(coeff);
        EXPECT_EQ(bar_cohomology_invariants(*g, m, n), canonical_invariants(engine.cohomology_group(m, n).invariant_factors))
            << name << " " << coeff << " " << n;
      }
  }
}

TEST(Cohomology, BasisClassesAreCocyclesWithCoordinateVectors) {
  for (const std::string name : {"c4", "klein4", "s3"}) {
    const CohomologyEngine engine(groups::builtin(name), 4);
    for (const std::string coeff : {"Z", "Z/2", "Z/4"})
      for (std::size_t n = 0; n <= 4; ++n) {
        const auto h = engine.cohomology_group(Modulus::parse(coeff), n);
        for (std::size_t k = 0; k < h.size(); ++k) {
          EXPECT_TRUE(is_cocycle(h.basis[k]));
          IntVector e(h.size());
          e[k] = 1;
          EXPECT_EQ(engine.coordinates(h.basis[k]), e);
          const Integer order = h.invariant_factors[k];
          if (order == 0) continue;
          EXPECT_TRUE(engine.is_coboundary(scale(h.basis[k], order)));
          for (const auto& q : prime_divisors(order)) EXPECT_FALSE(engine.is_coboundary(scale(h.basis[k], order / q)));
        }
      }
  }
}

TEST(Cohomology, CoboundariesAreZero) {
  const auto g = groups::symmetric_3();
  const CohomologyEngine engine(g, 3);
  // delta of an arbitrary 1-cochain.
  IntVector f(bar_rank(6, 1));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<int>(i * 7 % 5) - 2;
  const CohomologyClass b{g, 2, Modulus(), bar_cochain::coboundary(*g, f, 1)};
  EXPECT_TRUE(is_cocycle(b));
  EXPECT_TRUE(engine.is_coboundary(b));
  EXPECT_EQ(engine.coordinates(b), IntVector(1));
}

TEST(CoefficientMaps, Examples) {
  const CohomologyEngine c4(groups::cyclic(4), 3);
  // pi_2 : H^1(C4, Z/4) = Z/4 -> H^1(C4, Z/2) = Z/2 is onto.
  const auto h14 = c4.cohomology_group(Modulus::of(4), 1);
  ASSERT_EQ(h14.size(), 1u);
  EXPECT_FALSE(c4.is_coboundary(coefficient_map(CoefficientMap::pi, 2, 2, h14.basis[0])));
  // epsilon_1 is the identity.
  const auto h12 = c4.cohomology_group(Modulus::of(2), 1);
  EXPECT_EQ(coefficient_map(CoefficientMap::epsilon, 2, 1, h12.basis[0]).cocycle, h12.basis[0].cocycle);
  // theta_1 : H^2(C2, Z) = Z/2 -> H^2(C2, Z/2) is injective.
  const CohomologyEngine c2(groups::cyclic(2), 3);
  const auto h2 = c2.cohomology_group(Modulus(), 2);
  EXPECT_FALSE(c2.is_coboundary(coefficient_map(CoefficientMap::theta, 2, 1, h2.basis[0])));
  EXPECT_THROW(coefficient_map(CoefficientMap::pi, 2, 2, h12.basis[0]), ModulusMismatch);
  EXPECT_THROW(coefficient_map(CoefficientMap::theta, 4, 1, h2.basis[0]), NotPrime);
}

TEST(CoefficientMaps, EpsilonIsIteratedPi) {
  const CohomologyEngine c8(groups::cyclic(8), 2);
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto h = c8.cohomology_group(Modulus::of(8), n);
    for (const auto& x : h.basis) {
      const auto steps = coefficient_map(CoefficientMap::pi, 2, 2, coefficient_map(CoefficientMap::pi, 2, 3, x));
      EXPECT_TRUE(c8.equal(steps, coefficient_map(CoefficientMap::epsilon, 2, 3, x)));
    }
  }
}

TEST(Bockstein, Examples) {
  const auto c2 = groups::cyclic(2);
  const CohomologyEngine e2(c2, 4);
  const auto x = e2.cohomology_group(Modulus::of(2), 1).basis[0];
  EXPECT_TRUE(e2.equal(bockstein_delta(1, x), cup_product(x, x)));

  const CohomologyEngine e4(groups::cyclic(4), 3);
  const auto y = e4.cohomology_group(Modulus::of(2), 1).basis[0];
  EXPECT_TRUE(e4.is_coboundary(bockstein_delta(1, y)));
  EXPECT_THROW(bockstein_delta(2, y), ModulusMismatch);
}

TEST(Bockstein, KillsReductionsOfIntegralClasses) {
  for (const std::string name : {"c4", "klein4", "s3"}) {
    const CohomologyEngine e(groups::builtin(name), 5);
    for (std::size_t n = 1; n <= 4; ++n)
      for (const auto& z : e.cohomology_group(Modulus(), n).basis)
        for (unsigned i : {1u, 2u})
          EXPECT_TRUE(e.is_coboundary(bockstein_delta(i, coefficient_map(CoefficientMap::theta, 2, i, z)))) << name << " " << n;
  }
}

TEST(Bockstein, SquaresToZero) {
  for (const std::string name : {"c2", "c4", "klein4", "s3"}) {
    const CohomologyEngine e(groups::builtin(name), 6);
    for (std::size_t n = 0; n <= 4; ++n)
      for (const auto& x : e.cohomology_group(Modulus::of(2), n).basis)
        EXPECT_TRUE(e.is_coboundary(bockstein_delta(1, bockstein_delta(1, x)))) << name << " " << n;
  }
}

// ker delta_1 = im pi_2 on H^n(G, Z/2).
TEST(Bockstein, SequenceIsExactAtModP) {
  for (const std::string name : {"c2", "c4", "klein4"}) {
    const CohomologyEngine e(groups::builtin(name), 5);
    for (std::size_t n = 0; n <= 4; ++n) {
      const auto hp = e.cohomology_group(Modulus::of(2), n);
      const auto hp2 = e.cohomology_group(Modulus::of(4), n);
      IntMatrix image(hp.size(), hp2.size());
      for (std::size_t k = 0; k < hp2.size(); ++k) {
        const auto reduced = coefficient_map(CoefficientMap::pi, 2, 2, hp2.basis[k]);
        EXPECT_TRUE(e.is_coboundary(bockstein_delta(1, reduced)));
        const auto c = e.coordinates(reduced);
        for (std::size_t r = 0; r < c.size(); ++r) image(r, k) = c[r];
      }
      const std::size_t kernel = hp.size() - matrix_rank(delta_matrix(e, 2, n), Modulus::of(2));
      EXPECT_EQ(matrix_rank(image, Modulus::of(2)), kernel) << name << " " << n;
    }
  }
}

// theta_1(x) = 0 exactly when x is divisible by p, over every element of small groups.
TEST(Theta, KernelIsMultiplesOfP) {
  for (const std::string name : {"c4", "klein4", "c6"}) {
    const CohomologyEngine e(groups::builtin(name), 4);
    for (const Integer p : {Integer(2), Integer(3)}) {
      if (e.group()->order() % static_cast<std::size_t>(p) != 0) continue;
      for (std::size_t n = 2; n <= 3; ++n) {
        const auto h = e.cohomology_group(Modulus(), n);
        std::vector<CohomologyClass> multiples;
        for (const auto& b : h.basis) multiples.push_back(scale(b, p));
        IntVector c(h.size());
        for (;;) {
          const auto x = e.from_coordinates(Modulus(), n, c);
          const bool reduces_to_zero = e.is_coboundary(coefficient_map(CoefficientMap::theta, p, 1, x));
          EXPECT_EQ(reduces_to_zero, e.solve_span(multiples, x).has_value()) << name << " " << n;
          std::size_t k = 0;
          while (k < c.size() && ++c[k] == h.invariant_factors[k]) c[k++] = 0;
          if (k == c.size()) break;
        }
      }
    }
  }
}

TEST(PrimaryPart, Examples) {
  const auto c6 = groups::cyclic(6);
  EXPECT_EQ(p_primary_part(c6, 2, 2).factors, inv({2}));
  EXPECT_EQ(p_primary_part(c6, 3, 2).factors, inv({3}));
  EXPECT_EQ(p_primary_part(groups::cyclic(2), 2, 2).factors, inv({2}));
  EXPECT_TRUE(p_primary_part(groups::klein_four(), 3, 2).factors.empty());
  EXPECT_THROW(p_primary_part(c6, 2, 0), DegreeZeroUnsupported);
  EXPECT_THROW(p_primary_part(c6, 4, 2), NotPrime);
}

// The primary parts over the primes dividing |G| rebuild the positive-degree groups.
TEST(PrimaryPart, Reconstructs) {
  for (const std::string name : {"c6", "s3", "q8"}) {
    const CohomologyEngine e(groups::builtin(name), 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      IntVector parts;
      for (const auto& p : prime_divisors(Integer(e.group()->order()))) {
        const auto part = p_primary_part(e, p, n);
        parts.insert(parts.end(), part.factors.begin(), part.factors.end());
        for (std::size_t k = 0; k < part.basis.size(); ++k) {
          EXPECT_TRUE(e.is_coboundary(scale(part.basis[k], part.factors[k])));
          EXPECT_FALSE(e.is_coboundary(scale(part.basis[k], part.factors[k] / p)));
        }
      }
      EXPECT_EQ(canonical_invariants(parts), canonical_invariants(e.cohomology_group(Modulus(), n).invariant_factors));
    }
  }
}

TEST(Formatting, Invariants) {
  EXPECT_EQ(format_invariants({}), "0");
  EXPECT_EQ(format_invariants(inv({0})), "Z");
  EXPECT_EQ(format_invariants(inv({2, 6})), "Z/2 + Z/6");
  EXPECT_EQ(canonical_invariants(inv({2, 3})), inv({6}));
  EXPECT_EQ(canonical_invariants(inv({0, 4, 2, 1})), inv({2, 4, 0}));
}

TEST(SizeCap, BarRouteRespectsCap) {
  SizeCap cap;
  cap.entries = 1000;
  EXPECT_THROW(bar_cohomology_invariants(*groups::symmetric_3(), Modulus(), 4, cap), SizeCapExceeded);
}
