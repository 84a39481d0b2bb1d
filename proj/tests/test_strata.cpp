#include "cohomkit/fiso.hpp"
#include "cohomkit/strata.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace cohomkit;

namespace {

std::vector<std::size_t> sorted_blocks(std::vector<std::size_t> b) {
  std::sort(b.rbegin(), b.rend());
  return b;
}

}  // namespace

TEST(Jordan, TensorExamples) {
  for (std::size_t b = 1; b <= 3; ++b) EXPECT_EQ(jordan_tensor_type(1, b, 3).blocks, (std::vector<std::size_t>{b}));
  EXPECT_EQ(sorted_blocks(jordan_tensor_type(2, 2, 3).blocks), (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(sorted_blocks(jordan_tensor_type(2, 2, 2).blocks), (std::vector<std::size_t>{2, 2}));
  // J_p is projective, so J_p (x) J_b is b copies of J_p.
  EXPECT_EQ(sorted_blocks(jordan_tensor_type(5, 3, 5).blocks), (std::vector<std::size_t>{5, 5, 5}));
  EXPECT_EQ(sorted_blocks(jordan_tensor_type(2, 3, 5).blocks), (std::vector<std::size_t>{4, 2}));
}

TEST(Jordan, SymmetricAndDimensionPreserving) {
  for (int pv : {2, 3, 5})
    for (std::size_t a = 1; a <= static_cast<std::size_t>(pv); ++a)
      for (std::size_t b = 1; b <= static_cast<std::size_t>(pv); ++b) {
        const auto t = jordan_tensor_type(a, b, pv);
        EXPECT_EQ(t.dimension(), a * b);
        EXPECT_EQ(sorted_blocks(t.blocks), sorted_blocks(jordan_tensor_type(b, a, pv).blocks));
        for (auto x : t.blocks) EXPECT_LE(x, static_cast<std::size_t>(pv));
      }
}

TEST(Jordan, Errors) {
  EXPECT_THROW(jordan_tensor_type(1, 1, 4), NotPrime);
  EXPECT_THROW(jordan_tensor_type(0, 1, 3), InvalidArgument);
  EXPECT_THROW(jordan_tensor_type(4, 1, 3), InvalidArgument);
}

TEST(BlockSequences, CokernelSizeIsTheDifference) {
  EXPECT_EQ(block_sequences(2).size(), 1u);
  for (int pv : {2, 3, 5}) {
    const auto seqs = block_sequences(pv);
    EXPECT_FALSE(seqs.empty());
    for (const auto& s : seqs) {
      EXPECT_LT(s.a, s.c);
      EXPECT_EQ(s.b, s.c - s.a);
    }
  }
  EXPECT_THROW(block_sequences(7), InvalidArgument);
}

TEST(ThickClosure, Examples) {
  EXPECT_TRUE(thick_closure({}, 3).empty());
  EXPECT_EQ(thick_closure({2}, 3), (std::set<std::size_t>{1, 2}));
  EXPECT_EQ(thick_closure({1}, 5), (std::set<std::size_t>{1, 2, 3, 4}));
  EXPECT_EQ(thick_closure({3}, 5), (std::set<std::size_t>{1, 2, 3, 4}));
  EXPECT_EQ(thick_closure({1}, 2), (std::set<std::size_t>{1}));
  EXPECT_THROW(thick_closure({1}, 4), NotPrime);
}

TEST(ThickClosure, TwoIdealsForEachPrime) {
  for (int pv : {2, 3, 5}) {
    const auto ideals = thick_ideals(pv);
    ASSERT_EQ(ideals.size(), 2u) << pv;
    EXPECT_TRUE(ideals.front().empty());
    std::set<std::size_t> all;
    for (std::size_t a = 1; a < static_cast<std::size_t>(pv); ++a) all.insert(a);
    EXPECT_EQ(ideals.back(), all);
  }
}

TEST(Kappa, IdentityPassesZeroMapFails) {
  const CohomologyEngine e(groups::cyclic(2), 4);
  const auto s = ring_slice(e, Modulus::of(2), 4);
  EXPECT_TRUE(kappa_certificate(identity_map(s), 2, 1, 4).passed);
  const auto z = kappa_certificate(zero_map(s, s), 2, 1, 4);
  EXPECT_FALSE(z.passed);
  // Only the positive-degree kernel is examined; degree 0 of the zero map is not a witness.
  for (const auto& w : z.kernel) EXPECT_GE(w.degree, 1u);
}

TEST(Kappa, ReductionMapsOnSmallGroups) {
  for (const std::string name : {"c2", "klein4"}) {
    const CohomologyEngine e(groups::builtin(name), 6);
    const auto f = reduction_map(e, 2, 6);
    EXPECT_FALSE(f.multiplicativity_failure().has_value());
    const unsigned s = s_exponent(*e.group(), 2);
    const auto c = kappa_certificate(f, 2, s, 6);
    EXPECT_TRUE(c.passed) << name;
    for (const auto& w : c.image) EXPECT_TRUE(w.preimage.has_value());
    // Both routes agree.
    EXPECT_EQ(c.passed, f_iso_check(e.group(), 2, 6).passed) << name;
  }
}

TEST(Kappa, C2WitnessCounts) {
  // H^*(C2, Z) mod 2 injects into F_2[x] as the even part; x^2 lies there for x in degrees 1..3.
  const CohomologyEngine e(groups::cyclic(2), 6);
  const auto c = kappa_certificate(reduction_map(e, 2, 6), 2, 1, 6);
  EXPECT_TRUE(c.kernel.empty());
  EXPECT_EQ(c.image.size(), 3u);
}

TEST(Kappa, Errors) {
  const CohomologyEngine e(groups::cyclic(2), 4);
  const auto f = reduction_map(e, 2, 4);
  EXPECT_THROW(kappa_certificate(f, 2, 1, 5), SliceTooShallow);
  EXPECT_THROW(kappa_certificate(f, 4, 1, 4), NotPrime);
  const auto z4 = ring_slice(groups::cyclic(4), Modulus::of(4), 2);
  EXPECT_THROW(kappa_certificate(identity_map(z4), 2, 1, 2), InvalidArgument);
}
