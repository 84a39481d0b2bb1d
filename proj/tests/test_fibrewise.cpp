#include "cohomkit/cohomology.hpp"
#include "cohomkit/fibrewise.hpp"
#include "cohomkit/koszul.hpp"

#include <gtest/gtest.h>

using namespace cohomkit;

namespace {

IntVector ext(const FGModule& m, const FGModule& n, std::size_t i) { return canonical_invariants(ext_group(m, n, i)); }

FGModule sign_module(GroupPtr c2) { return FGModule(c2, BaseRing::integers, 0, 1, {}, {IntMatrix{{-1}}}); }

}  // namespace

TEST(FibreAlgebra, StructureAndSemisimplicity) {
  const auto c3 = groups::cyclic(3);
  const auto a = fibre_algebra(c3, 2);
  EXPECT_EQ(a.dimension(), 3u);
  EXPECT_TRUE(a.semisimple());
  EXPECT_FALSE(fibre_algebra(c3, 3).semisimple());
  EXPECT_TRUE(fibre_algebra(c3, 0).semisimple());
  // e_1 e_2 = e_0 in F_2 C3.
  EXPECT_EQ(a.structure_constant(1, 2, 0), 1);
  EXPECT_EQ(a.structure_constant(1, 2, 1), 0);
  EXPECT_THROW(fibre_algebra(c3, 4), NotPrime);
}

TEST(FibreProjectivity, Examples) {
  const auto c2 = groups::cyclic(2);
  // Trivial F_3 over F_3 C2: the averaging idempotent splits the cover.
  const auto f3 = fibre_projectivity_test(modules::trivial(c2, BaseRing::prime_field, 3));
  EXPECT_TRUE(f3.projective);
  ASSERT_TRUE(f3.splitting.has_value());
  EXPECT_TRUE(verify_splitting(modules::trivial(c2, BaseRing::prime_field, 3), f3.cover_rank, f3.cover, *f3.splitting));
  EXPECT_FALSE(fibre_projectivity_test(modules::trivial(c2, BaseRing::prime_field, 2)).projective);
  EXPECT_TRUE(fibre_projectivity_test(modules::regular(c2, BaseRing::prime_field, 2)).projective);
}

TEST(FibreProjectivity, BrokenSplittingIsRejected) {
  const auto m = modules::trivial(groups::cyclic(2), BaseRing::prime_field, 3);
  const auto r = fibre_projectivity_test(m);
  ASSERT_TRUE(r.splitting.has_value());
  IntMatrix s = *r.splitting;
  s(0, 0) += 1;
  EXPECT_FALSE(verify_splitting(m, r.cover_rank, r.cover, s));
}

TEST(ProjDim, Examples) {
  const auto c2 = groups::cyclic(2);
  EXPECT_EQ(proj_dim_via_fibres(modules::regular(c2)).value(), "0");
  EXPECT_EQ(proj_dim_via_fibres(modules::trivial(c2)).value(), "inf");
  EXPECT_EQ(proj_dim_via_fibres(sign_module(c2)).value(), "inf");

  const auto c6 = proj_dim_via_fibres(modules::trivial(groups::cyclic(6)));
  ASSERT_EQ(c6.fibres.size(), 3u);
  EXPECT_TRUE(c6.fibres[0].projective);  // rational fibre
  EXPECT_FALSE(c6.fibres[1].projective);
  EXPECT_FALSE(c6.fibres[2].projective);
  EXPECT_EQ(c6.fibres[1].p, 2);
  EXPECT_EQ(c6.fibres[2].p, 3);
}

TEST(ProjDim, DirectAndFibresAgree) {
  for (const std::string name : {"c2", "c3", "c6"}) {
    const auto g = groups::builtin(name);
    for (const auto& m : {modules::regular(g), modules::trivial(g), modules::augmentation_ideal(g)}) {
      const bool direct = integral_projectivity_test(m).projective;
      EXPECT_EQ(direct, proj_dim_via_fibres(m).finite()) << name << " rank " << m.rank();
    }
  }
}

TEST(ProjDim, TorsionIsRejected) {
  const auto c2 = groups::cyclic(2);
  EXPECT_THROW(proj_dim_via_fibres(modules::trivial_cyclic(c2, 2)), NotBaseFree);
  EXPECT_THROW(proj_dim_via_fibres(modules::trivial(c2, BaseRing::prime_field, 2)), InvalidModule);
}

TEST(GProj, Examples) {
  const auto c2 = groups::cyclic(2);
  EXPECT_TRUE(gproj_test(modules::trivial(c2)));
  EXPECT_TRUE(gproj_test(modules::augmentation_ideal(c2)));
  EXPECT_FALSE(gproj_test(modules::trivial_cyclic(c2, 2)));
  EXPECT_FALSE(gproj_test(modules::trivial(c2, BaseRing::prime_field, 2)));
}

TEST(Dualising, WitnessesExistAndVerify) {
  for (const std::string name : {"c2", "c3", "s3", "q8"}) {
    const auto g = groups::builtin(name);
    const auto w = dualising_check(g);
    EXPECT_TRUE(verify_dualising(*g, w)) << name;
    // A non-equivariant change of basis breaks it.
    auto bad = w;
    bad.left(0, 0) += 1;
    bad.left(0, 1) -= 1;
    EXPECT_FALSE(verify_dualising(*g, bad)) << name;
  }
}

TEST(Ext, IntoGroupRingVanishes) {
  for (const std::string name : {"c2", "c3"}) {
    const auto g = groups::builtin(name);
    const auto zg = modules::regular(g);
    for (const auto& m : {modules::trivial(g), modules::augmentation_ideal(g), zg})
      for (std::size_t i : {1u, 2u, 3u}) EXPECT_TRUE(ext(m, zg, i).empty()) << name << " i=" << i;
  }
}

TEST(Ext, TrivialCoefficientControls) {
  const auto c2 = groups::cyclic(2);
  EXPECT_EQ(ext(modules::trivial(c2), modules::trivial(c2), 2), (IntVector{2}));
  EXPECT_TRUE(ext(modules::trivial(c2), modules::trivial(c2), 1).empty());
  EXPECT_EQ(ext(modules::trivial(c2), modules::trivial(c2), 0), (IntVector{0}));
  // Hom(ZG, N) = N.
  EXPECT_EQ(ext(modules::regular(c2), modules::regular(c2), 0), (IntVector{0, 0}));
  // Ext^1(Z/p, ZG) = Z/p for C_p.
  const auto c3 = groups::cyclic(3);
  EXPECT_EQ(ext(modules::trivial_cyclic(c3, 3), modules::regular(c3), 1), (IntVector{3}));
}

TEST(Ext, ModularTarget) {
  const auto c2 = groups::cyclic(2);
  const auto f2 = modules::trivial(c2, BaseRing::prime_field, 2);
  for (std::size_t i = 0; i <= 3; ++i) EXPECT_EQ(ext(modules::trivial(c2), f2, i), (IntVector{2})) << i;
  EXPECT_THROW(ext_group(f2, modules::trivial(c2), 1), InvalidModule);
  EXPECT_THROW(ext_group(modules::trivial(c2), modules::trivial(groups::cyclic(3)), 1), InvalidModule);
}

TEST(Modules, ValidationErrors) {
  const auto c2 = groups::cyclic(2);
  // g^2 must act as the identity.
  EXPECT_THROW(FGModule(c2, BaseRing::integers, 0, 1, {}, {IntMatrix{{2}}}), InvalidModule);
  EXPECT_THROW(FGModule(c2, BaseRing::integers, 0, 2, {}, {IntMatrix{{1}}}), InvalidModule);
  EXPECT_THROW(FGModule(c2, BaseRing::prime_field, 4, 1, {}, {IntMatrix{{1}}}), NotPrime);
  // Relation e_0 is not stable under the swap.
  EXPECT_THROW(FGModule(c2, BaseRing::integers, 0, 2, {IntVector{1, 0}}, {IntMatrix{{0, 1}, {1, 0}}}), InvalidModule);
  EXPECT_THROW(FGModule(c2, BaseRing::integers, 0, 1, {}, {}), InvalidModule);
}

TEST(Modules, FreePresentationOfQuotient) {
  // ZC2 / (1 + g) is the sign module.
  const auto c2 = groups::cyclic(2);
  const FGModule q(c2, BaseRing::integers, 0, 2, {IntVector{1, 1}}, {IntMatrix{{0, 1}, {1, 0}}});
  EXPECT_TRUE(q.base_free());
  const auto f = q.free_presentation();
  EXPECT_EQ(f.rank(), 1u);
  EXPECT_EQ(f.generator_actions()[0], (IntMatrix{{-1}}));
}

TEST(Koszul, HomologyOfSingleElement) {
  const auto k = koszul_complex(IntVector{3});
  EXPECT_TRUE(k.composes_to_zero());
  EXPECT_EQ(canonical_invariants(k.homology(0)), (IntVector{3}));
  EXPECT_TRUE(canonical_invariants(k.homology(1)).empty());
}

TEST(Koszul, NonRegularPairHasHigherHomology) {
  // ker (4 6) is spanned by (3, -2) and the image of d_2 is twice that.
  const auto k = koszul_complex(IntVector{4, 6});
  EXPECT_EQ(canonical_invariants(k.homology(0)), (IntVector{2}));
  EXPECT_EQ(canonical_invariants(k.homology(1)), (IntVector{2}));
  EXPECT_TRUE(canonical_invariants(k.homology(2)).empty());
}

TEST(Koszul, SelfDuality) {
  for (const IntVector& e : {IntVector{2}, IntVector{2, 3}, IntVector{2, 3, 5}, IntVector{0, 7, -3}}) {
    const auto r = koszul_selfdual_check(e);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.phi.size(), e.size() + 1);
  }
}

TEST(Koszul, TamperedDualityFails) {
  const IntVector e{2, 3};
  const auto k = koszul_complex(e);
  auto phi = koszul_selfdual_check(e).phi;
  ASSERT_TRUE(verify_selfduality(k, phi));
  // Still unimodular, but no longer a chain map.
  phi[1] = IntMatrix(phi[1].rows(), phi[1].cols()) - phi[1];
  EXPECT_FALSE(verify_selfduality(k, phi));
  phi.pop_back();
  EXPECT_FALSE(verify_selfduality(k, phi));
}
