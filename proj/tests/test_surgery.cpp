#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "torusfib/surgery.hpp"

using namespace torusfib;

namespace {

std::vector<LensSpace> normalized_lens_spaces(int q) {
  std::vector<LensSpace> out;
  if (q <= 1) return {lens_normalize(q, 1)};
  for (int p = 0; p < q; ++p)
    if (std::gcd(p, q) == 1) out.push_back(lens_normalize(q, p));
  return out;
}

/// Ambient complement of S^1 x U in S^1 x S^3, framed (mu, lambda, s), as a genus-0 surface bundle.
Piece s1_s3_complement() {
  return Piece(PieceKind::SurfaceBundleOverTorus, 0, "identity", {"mu", "lambda", "s"}, 2,
               H1Data{AbelianGroup::free(2), lambda_killing_inclusion(2)});
}

/// Unimodular matrices f with f e3 = c, for a primitive c.
IntMatrix random_with_third_column(std::mt19937_64& rng, const IntVector& c) {
  IntMatrix base = complete_to_unimodular(c);  // first column c
  base.swap_cols(0, 2);
  // fix e3 = e3: a shear in the upper 2x2 block and an arbitrary bottom row
  std::uniform_int_distribution<int> mult(-3, 3);
  IntMatrix fix = IntMatrix::identity(3);
  fix(0, 1) = mult(rng);
  fix(2, 0) = mult(rng);
  fix(2, 1) = mult(rng);
  return base * fix;
}

}  // namespace

TEST(LensNormalize, Examples) {
  EXPECT_EQ(lens_normalize(3, -1), (LensSpace{3, 2}));
  EXPECT_EQ(lens_normalize(1, 7), (LensSpace{1, 0}));
  EXPECT_EQ(lens_normalize(0, 1), (LensSpace{0, 1}));
  EXPECT_EQ(lens_normalize(0, -1), (LensSpace{0, 1}));
  EXPECT_EQ(lens_normalize(-5, 2), (LensSpace{5, 2}));
  EXPECT_THROW(lens_normalize(4, 2), NotCoprime);
  EXPECT_THROW(lens_normalize(0, 2), NotCoprime);
  EXPECT_EQ(lens_normalize(3, 2).to_string(), "L(3,2)");
}

TEST(LensEquivalent, Examples) {
  EXPECT_TRUE(lens_equivalent({7, 2}, {7, 4}));
  EXPECT_TRUE(lens_equivalent({5, 1}, {5, 1}));
  EXPECT_FALSE(lens_equivalent({7, 1}, {7, 2}));
  // 3 = -(2^-1) mod 7
  EXPECT_TRUE(lens_equivalent({7, 2}, {7, 3}));
  EXPECT_FALSE(lens_equivalent({5, 1}, {7, 1}));
  EXPECT_TRUE(lens_equivalent({0, 1}, {0, 1}));
  EXPECT_FALSE(lens_equivalent({0, 1}, {1, 0}));
}

TEST(LensEquivalent, MatchesCongruenceOracle) {
  for (int q = 0; q <= 30; ++q)
    for (const auto& a : normalized_lens_spaces(q))
      for (const auto& b : normalized_lens_spaces(q))
        EXPECT_EQ(lens_equivalent(a, b), oracle::lens_congruent(q, static_cast<oracle::i64>(a.p),
                                                                 static_cast<oracle::i64>(b.p)))
            << a << " " << b;
}

TEST(LensEquivalent, IsAnEquivalenceRelation) {
  for (int q = 0; q <= 30; ++q) {
    const auto all = normalized_lens_spaces(q);
    for (const auto& a : all) {
      EXPECT_TRUE(lens_equivalent(a, a));
      for (const auto& b : all) {
        EXPECT_EQ(lens_equivalent(a, b), lens_equivalent(b, a));
        if (!lens_equivalent(a, b)) continue;
        for (const auto& c : all)
          if (lens_equivalent(b, c)) {
            EXPECT_TRUE(lens_equivalent(a, c));
          }
      }
    }
  }
}

TEST(SurgerySpec, Validation) {
  EXPECT_THROW(SurgerySpec::standard(2, 4), NotCoprime);
  EXPECT_THROW(SurgerySpec(2, 3, IntMatrix{{3, 1, 0}, {2, 1, 0}, {0, 0, 2}}), NotUnimodular);
  EXPECT_THROW(SurgerySpec(2, 3, IntMatrix{{2, 1, 0}, {3, 2, 0}, {0, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(SurgerySpec(2, 3, IntMatrix{{3, 1, 1}, {2, 1, 0}, {0, 0, 1}}), std::invalid_argument);
  const SurgerySpec s = SurgerySpec::standard(2, 3);
  EXPECT_EQ(s.completion().column(0), (IntVector{3, 2, 0}));
  EXPECT_EQ(s.completion().column(2), (IntVector{0, 0, 1}));
  EXPECT_EQ(determinant(s.completion()), 1);
  EXPECT_EQ(determinant(SurgerySpec::standard(2, 3, 0, true).completion()), -1);
}

TEST(UnknotTorusSurgery, Examples) {
  EXPECT_EQ(unknot_torus_surgery(SurgerySpec::standard(2, 3)).lens, (LensSpace{3, 2}));
  EXPECT_EQ(unknot_torus_surgery(SurgerySpec::standard(0, 1)).lens, (LensSpace{1, 0}));
  const UnknotSurgery s = unknot_torus_surgery(SurgerySpec::standard(1, 0));
  EXPECT_EQ(s.lens, (LensSpace{0, 1}));
  EXPECT_EQ(mayer_vietoris_h1(s.manifold), AbelianGroup::free(2));
}

TEST(UnknotTorusSurgery, FamilyAgreesWithMayerVietoris) {
  for (int q = 1; q <= 10; ++q)
    for (int p = -10; p <= 10; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const UnknotSurgery s = unknot_torus_surgery(SurgerySpec::standard(p, q));
      const LensSpace expected = q == 1 ? LensSpace{1, 0} : LensSpace{q, ((p % q) + q) % q};
      EXPECT_EQ(s.lens, expected) << p << "," << q;
      const auto shape = oracle::cokernel_shape(oracle::to_mat(mayer_vietoris_presentation(s.manifold).relations), 4);
      EXPECT_EQ(shape.free_rank, 1u);
      EXPECT_EQ(shape.torsion, q >= 2 ? std::vector<oracle::i64>{q} : std::vector<oracle::i64>{});
      EXPECT_EQ(mayer_vietoris_h1(s.manifold), expected_h1(s.lens));
    }
}

TEST(UnknotTorusSurgery, IndependentOfCompletion) {
  std::set<std::string> completions;
  for (int seed = -12; seed <= 12; ++seed)
    for (bool reverse : {false, true}) {
      const SurgerySpec spec = SurgerySpec::standard(2, 3, seed, reverse);
      completions.insert(spec.completion().to_string());
      const UnknotSurgery s = unknot_torus_surgery(spec);
      EXPECT_EQ(s.lens, (LensSpace{3, 2}));
      EXPECT_EQ(mayer_vietoris_h1(s.manifold), AbelianGroup(1, {3}));
    }
  EXPECT_GE(completions.size(), 20u);
}

TEST(UnknotTorusSurgery, ClassifierNeedsSolidTori) {
  EXPECT_THROW(classify_lens_space(glue(make_product_surface_bundle(1), make_torus_times_disk(),
                                        IntMatrix::identity(3))),
               std::invalid_argument);
}

TEST(GeneralizedFsSurgery, UnknotRecoversAmbientHomology) {
  std::mt19937_64 rng(11);
  struct Ambient {
    Piece piece;
    IntVector meridian;
  };
  const std::vector<Ambient> ambients{
      {s1_s3_complement(), IntVector{1, 0, 0}},
      {make_product_surface_bundle(1), IntVector{0, 0, 1}},
      {make_product_surface_bundle(2), IntVector{0, 0, 1}},
  };
  for (const auto& amb : ambients) {
    const AbelianGroup expected = h1_after_filling(amb.piece, amb.meridian);
    for (int k = 0; k < 50; ++k) {
      const GluingMap f(random_with_third_column(rng, k % 2 ? amb.meridian : -amb.meridian));
      const KnotSurgery s =
          generalized_fs_surgery(amb.piece, CurveClass::from(amb.meridian), make_torus_times_disk(), f);
      EXPECT_TRUE(verify_fibration(s.manifold, s.fibration));
      EXPECT_EQ(mayer_vietoris_h1(s.manifold), expected) << f.matrix();
    }
  }
  EXPECT_EQ(h1_after_filling(s1_s3_complement(), IntVector{1, 0, 0}), AbelianGroup::free(1));
  EXPECT_EQ(h1_after_filling(make_product_surface_bundle(1), IntVector{0, 0, 1}), AbelianGroup::free(4));
}

TEST(GeneralizedFsSurgery, KnotPieceFibers) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 50; ++k) {
    const GluingMap f(random_with_third_column(rng, IntVector{0, 0, 1}));
    const KnotSurgery s = generalized_fs_surgery(make_product_surface_bundle(1), CurveClass::from(IntVector{0, 0, 1}),
                                                 make_knot_in_s3_product(1, "trefoil"), f);
    EXPECT_TRUE(verify_fibration(s.manifold, s.fibration));
    EXPECT_EQ(euler_characteristic_glued(s.manifold), 0);
  }
}

TEST(GeneralizedFsSurgery, Errors) {
  const CurveClass meridian = CurveClass::from(IntVector{1, 0, 0});
  EXPECT_THROW(generalized_fs_surgery(s1_s3_complement(), meridian, make_torus_times_disk(),
                                      GluingMap(IntMatrix::identity(3))),
               MeridianConditionViolated);
  EXPECT_THROW(generalized_fs_surgery(make_torus_times_disk(), meridian, make_torus_times_disk(),
                                      GluingMap(IntMatrix::identity(3))),
               InvalidPiece);
  EXPECT_THROW(generalized_fs_surgery(s1_s3_complement(), meridian, make_product_surface_bundle(1),
                                      GluingMap(IntMatrix::identity(3))),
               InvalidPiece);
}

TEST(Obstruction, Examples) {
  EXPECT_TRUE(obstruction_check(0, Integer(0)).passes);
  EXPECT_FALSE(obstruction_check(2, Integer(0)).passes);
  EXPECT_FALSE(obstruction_check(0, Integer(16)).passes);
  const ObstructionReport unknown = obstruction_check(0, std::nullopt);
  EXPECT_FALSE(unknown.passes);
  EXPECT_TRUE(unknown.sigma_unknown());
  EXPECT_TRUE(obstruction_for(unknot_torus_surgery(SurgerySpec::standard(2, 3)).manifold).passes);
}
