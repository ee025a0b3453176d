#include <gtest/gtest.h>

#include <cmath>

#include "nctrace/errors.hpp"
#include "nctrace/moments.hpp"
#include "nctrace/ncpoly.hpp"
#include "test_support.hpp"

using namespace nctrace;
using namespace nctrace::testing;

TEST(Moments, ScalarPowers) {
  const MomentSequence t = moment_sequence(scalar_tuple(2.0), 3);
  EXPECT_NEAR(t.at(Word{1}).real(), 2.0, 1e-15);
  EXPECT_NEAR(t.at(Word{1, 1}).real(), 4.0, 1e-15);
  EXPECT_NEAR(t.at(Word{1, 1, 1}).real(), 8.0, 1e-15);
  EXPECT_EQ(t.at(Word{}), cplx(1.0));
}

TEST(Moments, PauliValues) {
  const MomentSequence t = moment_sequence(pauli_pair(), 4);
  EXPECT_NEAR(std::abs(t.at(Word{1, 1}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.at(Word{1, 2})), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.at(Word{1, 1, 2, 2}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.at(Word{1, 2, 1, 2}) + 1.0), 0.0, 1e-15);
}

TEST(Moments, IdentityTupleGivesAllOnes) {
  const CMatrix id = CMatrix::Identity(3, 3);
  const MomentSequence t = moment_sequence(MatrixTuple::from_hermitian({id, id, id}), 4);
  for (const cplx v : t.values()) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);
}

// Oracle: each moment recomputed directly from the word product.
TEST(Moments, MatchesWordProductTraces) {
  CounterRng rng(30, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixTuple x = gue_tuple(rng, 2, uniform_int(rng, 1, 4));
    const MomentSequence t = moment_sequence(x, 5);
    for (const Word& w : t.words()) {
      ASSERT_LT(std::abs(t.at(w) - normalized_trace(x.word_product(w))), 1e-10) << w.to_string();
    }
  }
}

TEST(Moments, WMembershipExamples) {
  EXPECT_TRUE(check_w_membership(moment_sequence(pauli_pair(), 6), 1e-12).pass());

  MomentSequence broken(2, 2);
  broken.set(Word{1, 2}, 1.0);
  const WMembershipReport r = check_w_membership(broken, 1e-10);
  EXPECT_FALSE(r.cyclic_ok);
  EXPECT_EQ(r.cyclic_class, (Word{1, 2}));
  EXPECT_NEAR(r.cyclic_worst, 1.0, 1e-15);

  MomentSequence skew(1, 1);
  skew.set(Word{1}, cplx(0.0, 0.5));
  EXPECT_FALSE(check_w_membership(skew, 1e-10).conjugate_ok);
}

TEST(Moments, RealSymmetricMatricesGiveRealMoments) {
  CounterRng rng(31, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CMatrix> mats;
    for (int j = 0; j < 2; ++j) {
      RMatrix a = RMatrix::NullaryExpr(3, 3, [&] { return rng.normal(); });
      mats.push_back((a + a.transpose()).cast<cplx>());
    }
    const MomentSequence t = moment_sequence(MatrixTuple::from_hermitian(mats), 6);
    ASSERT_TRUE(check_w_membership(t, 1e-10 * 1e3).pass());
    for (const cplx v : t.values()) ASSERT_EQ(v.imag(), 0.0);
  }
}

TEST(Moments, MomentMatrixExamples) {
  const MomentSequence scalar = moment_sequence(scalar_tuple(2.0), 2);
  const MomentMatrix m0 = moment_matrix(scalar, 0);
  ASSERT_EQ(m0.entries.rows(), 1);
  EXPECT_EQ(m0.entries(0, 0), cplx(1.0));

  const MomentMatrix m1 = moment_matrix(scalar, 1);
  CMatrix expected(2, 2);
  expected << 1.0, 2.0, 2.0, 4.0;
  EXPECT_LT((m1.entries - expected).cwiseAbs().maxCoeff(), 1e-15);
  const PsdReport psd = psd_check(m1, 1e-12);
  EXPECT_TRUE(psd.psd);
  EXPECT_NEAR(psd.min_eigenvalue, 0.0, 1e-12);

  const MomentMatrix pauli = moment_matrix(moment_sequence(pauli_pair(), 2), 1);
  EXPECT_LT((pauli.entries - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);

  EXPECT_THROW(moment_matrix(scalar, 2), Error);
}

TEST(Moments, MomentMatrixEntriesFollowReversedConcatenation) {
  CounterRng rng(32, 0);
  const MomentSequence t = moment_sequence(gue_tuple(rng, 2, 3), 4);
  const MomentMatrix m = moment_matrix(t, 2);
  for (std::size_t j = 0; j < m.basis.size(); ++j) {
    for (std::size_t k = 0; k < m.basis.size(); ++k) {
      const cplx want = t.at(concat(involute_word(m.basis[j]), m.basis[k]));
      ASSERT_EQ(m.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)), want);
    }
  }
}

TEST(Moments, GrowthRadiusExamples) {
  EXPECT_NEAR(growth_radius(moment_sequence(scalar_tuple(2.0), 4)), 2.0, 1e-14);
  const CMatrix id = CMatrix::Identity(2, 2);
  EXPECT_NEAR(growth_radius(moment_sequence(MatrixTuple::from_hermitian({id, id}), 4)), 1.0, 1e-14);
  EXPECT_NEAR(growth_radius(moment_sequence(pauli_pair(), 6)), 1.0, 1e-14);
  EXPECT_THROW(growth_radius(moment_sequence(pauli_pair(), 1)), Error);
}

TEST(Moments, GrowthRadiusLowerBoundsNorm) {
  CounterRng rng(33, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixTuple x = random_tuple(2, 3, 2.0, rng);
    ASSERT_LE(growth_radius(moment_sequence(x, 6)), x.max_norm() * (1.0 + 1e-12));
  }
}

TEST(Moments, PsdCheckExamples) {
  CMatrix m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;
  const PsdReport r = psd_check(m, 1e-9);
  EXPECT_FALSE(r.psd);
  EXPECT_NEAR(r.min_eigenvalue, -1.0, 1e-12);
  const PsdReport one = psd_check(CMatrix::Identity(1, 1), 0.0);
  EXPECT_TRUE(one.psd);
  EXPECT_NEAR(one.min_eigenvalue, 1.0, 1e-15);
}

TEST(Moments, MatrixMomentsArePsdAndInW) {
  CounterRng rng(34, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixTuple x = gue_tuple(rng, 2, uniform_int(rng, 2, 4));
    const MomentSequence t = moment_sequence(x, 6);
    ASSERT_TRUE(check_w_membership(t, 1e-10 * (1.0 + std::pow(x.max_norm(), 6))).pass());
    for (int d = 0; d <= 3; ++d) ASSERT_TRUE(psd_check(moment_matrix(t, d), 1e-9).psd);
  }
}

TEST(Moments, SemicircularMomentsCountNonCrossingPairings) {
  const MomentSequence t = semicircular_moments(2, 6, 1.0);
  EXPECT_EQ(t.at(Word{1, 1}), cplx(1.0));
  EXPECT_EQ(t.at(Word{1, 1, 1, 1}), cplx(2.0));
  EXPECT_EQ(t.at(Word{1, 1, 1, 1, 1, 1}), cplx(5.0));
  EXPECT_EQ(t.at(Word{1, 2, 1, 2}), cplx(0.0));
  EXPECT_EQ(t.at(Word{1, 1, 2, 2}), cplx(1.0));
  EXPECT_EQ(t.at(Word{1}), cplx(0.0));
  EXPECT_TRUE(check_w_membership(t, 0.0).pass());
  EXPECT_GT(psd_check(moment_matrix(t, 3), 0.0).min_eigenvalue, 0.0);
  EXPECT_EQ(semicircular_moments(1, 2, 0.5).at(Word{1, 1}), cplx(0.25));
}
