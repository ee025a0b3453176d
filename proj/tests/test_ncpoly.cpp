#include <gtest/gtest.h>

#include <cmath>

#include "nctrace/errors.hpp"
#include "nctrace/moments.hpp"
#include "nctrace/ncpoly.hpp"
#include "test_support.hpp"

using namespace nctrace;
using namespace nctrace::testing;

namespace {

const cplx I1{0.0, 1.0};

NCPoly y(int nvars, Word w, cplx c = 1.0) { return NCPoly::monomial(nvars, w, c); }

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(NCPoly, ZeroCoefficientsAreNotStored) {
  NCPoly p(2);
  p.add_term(Word{1}, 1.0);
  p.add_term(Word{1}, -1.0);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.degree(), 0);
  EXPECT_EQ(p, NCPoly(2));
}

TEST(NCPoly, LettersBeyondNvarsAreRejected) {
  NCPoly p(2);
  EXPECT_THROW(p.add_term(Word{3}, 1.0), Error);
}

TEST(NCPoly, StarProductHandExpansion) {
  const NCPoly a = y(2, Word{1}) + y(2, Word{2});
  const NCPoly b = y(2, Word{1}) - y(2, Word{2});
  const NCPoly expected = y(2, Word{1, 1}) - y(2, Word{1, 2}) + y(2, Word{2, 1}) - y(2, Word{2, 2});
  EXPECT_EQ(star_product(a, b), expected);
  EXPECT_EQ(star_product(a, b).size(), 4u);
}

TEST(NCPoly, StarProductUnitAndScalars) {
  CounterRng rng(3, 0);
  const NCPoly a = random_poly(rng, 2, 3, 6, true);
  EXPECT_EQ(star_product(NCPoly::constant(2, 1.0), a), a);
  EXPECT_EQ(star_product(a, NCPoly::constant(2, 1.0)), a);
  EXPECT_EQ(star_product(y(1, Word{1}, I1), y(1, Word{1}, I1)), y(1, Word{1, 1}, -1.0));
}

TEST(NCPoly, StarProductRejectsMismatchedNvars) {
  EXPECT_THROW(star_product(NCPoly(1), NCPoly(2)), Error);
}

// Oracle: star_product must agree with matrix multiplication after substitution.
TEST(NCPoly, StarProductMatchesMatrixEvaluation) {
  CounterRng rng(4, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 1, 3);
    const NCPoly a = random_poly(rng, n, 3, 5);
    const NCPoly b = random_poly(rng, n, 3, 5);
    const MatrixTuple x = gue_tuple(rng, n, 3);
    const CMatrix lhs = eval(star_product(a, b), x);
    const CMatrix rhs = eval(a, x) * eval(b, x);
    ASSERT_LT(max_abs(lhs - rhs), 1e-9 * (1.0 + max_abs(rhs)));
  }
}

TEST(NCPoly, StarProductIsAssociativeAndBilinear) {
  CounterRng rng(5, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const NCPoly a = random_poly(rng, 2, 2, 4, true);
    const NCPoly b = random_poly(rng, 2, 2, 4, true);
    const NCPoly c = random_poly(rng, 2, 2, 4, true);
    ASSERT_EQ(star_product(star_product(a, b), c), star_product(a, star_product(b, c)));
    ASSERT_EQ(star_product(a, b + c), star_product(a, b) + star_product(a, c));
  }
}

TEST(NCPoly, InvolutionExamples) {
  EXPECT_EQ(involute_poly(y(2, Word{1, 2}, I1)), y(2, Word{2, 1}, -I1));
  const NCPoly palindromes = y(2, Word{1, 2, 1}, 2.0) + y(2, Word{2, 2}, -0.5) + NCPoly::constant(2, 3.0);
  EXPECT_EQ(involute_poly(palindromes), palindromes);
}

TEST(NCPoly, InvolutionIsIsometricAntiHomomorphism) {
  CounterRng rng(6, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = uniform_int(rng, 1, 3);
    const NCPoly a = random_poly(rng, n, 4, 6, true);
    const NCPoly b = random_poly(rng, n, 4, 6, true);
    ASSERT_EQ(involute_poly(star_product(a, b)), star_product(involute_poly(b), involute_poly(a)));
    ASSERT_EQ(involute_poly(involute_poly(a)), a);
    for (double r : {0.5, 1.0, 2.0, 10.0}) ASSERT_DOUBLE_EQ(r_norm(involute_poly(a), r), r_norm(a, r));
  }
}

TEST(NCPoly, InvolutionIdentitiesAreBitExactForArbitraryCoefficients) {
  CounterRng rng(16, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = uniform_int(rng, 1, 3);
    const NCPoly a = random_poly(rng, n, 5, 6);
    const NCPoly b = random_poly(rng, n, 5, 6);
    ASSERT_EQ(involute_poly(star_product(a, b)), star_product(involute_poly(b), involute_poly(a)));
    for (double r : {0.5, 1.0, 2.0, 10.0}) ASSERT_EQ(r_norm(involute_poly(a), r), r_norm(a, r));
  }
}

TEST(NCPoly, RNormExamples) {
  const NCPoly a = y(2, Word{1}, 2.0) + y(2, Word{1, 2}, 3.0);
  EXPECT_DOUBLE_EQ(r_norm(a, 2.0), 16.0);
  EXPECT_DOUBLE_EQ(r_norm(NCPoly::constant(2, 1.0), 7.0), 1.0);
  EXPECT_DOUBLE_EQ(r_norm(NCPoly(2), 3.0), 0.0);
  EXPECT_THROW(r_norm(a, 0.0), Error);
}

TEST(NCPoly, SubmultiplicativeForEveryRadius) {
  CounterRng rng(7, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = uniform_int(rng, 1, 3);
    const NCPoly a = random_poly(rng, n, 5, 6);
    const NCPoly b = random_poly(rng, n, 5, 6);
    const NCPoly ab = star_product(a, b);
    for (double r : {0.5, 1.0, 2.0, 10.0}) {
      const double bound = r_norm(a, r) * r_norm(b, r);
      ASSERT_LE(r_norm(ab, r), bound * (1.0 + 1e-12));
    }
  }
}

TEST(NCPoly, IsSymmetricExamples) {
  EXPECT_TRUE(is_symmetric(y(2, Word{1, 2}) + y(2, Word{2, 1}), 0.0));
  EXPECT_FALSE(is_symmetric(y(2, Word{1, 2}), 0.0));
  EXPECT_TRUE(is_symmetric(y(2, Word{1, 2}, I1) - y(2, Word{2, 1}, I1), 0.0));
  EXPECT_TRUE(is_symmetric(y(2, Word{1, 2}, 1e-10), 1e-9));
}

TEST(NCPoly, CyclicReduceExamples) {
  EXPECT_TRUE(cyclic_reduce(y(2, Word{1, 2}, I1) - y(2, Word{2, 1}, I1)).is_zero());
  const NCPoly reduced = cyclic_reduce(commutator_poly());
  EXPECT_EQ(reduced.size(), 2u);
  EXPECT_EQ(reduced.coeff(Word{1, 1, 2, 2}), cplx(1.0));
  EXPECT_EQ(reduced.coeff(Word{1, 2, 1, 2}), cplx(-1.0));
  EXPECT_EQ(cyclic_reduce(y(1, Word{1})), y(1, Word{1}));
}

TEST(NCPoly, CyclicReduceIsIdempotentProjection) {
  CounterRng rng(8, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const NCPoly a = random_poly(rng, 3, 5, 8, true);
    const NCPoly r = cyclic_reduce(a);
    ASSERT_EQ(cyclic_reduce(r), r);
    // a - r lies in the span of Y_I - Y_rot(I): its reduction vanishes.
    ASSERT_TRUE(cyclic_reduce(a - r).is_zero());
    for (const auto& [w, c] : r.terms()) ASSERT_EQ(cyclic_canonical(w).representative, w);
  }
}

TEST(NCPoly, CyclicEquivalentPolynomialsHaveEqualTraces) {
  CounterRng rng(9, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const NCPoly a = random_poly(rng, 2, 4, 6);
    const MatrixTuple x = gue_tuple(rng, 2, 3);
    const cplx ta = normalized_trace(eval(a, x));
    const cplx tr = normalized_trace(eval(cyclic_reduce(a), x));
    ASSERT_LT(std::abs(ta - tr), 1e-10 * (1.0 + std::abs(ta)));
  }
}

TEST(NCPoly, PairExamples) {
  const MomentSequence scalar = moment_sequence(scalar_tuple(2.0), 2);
  EXPECT_NEAR(std::real(pair(y(1, Word{1, 1}), scalar)), 4.0, 1e-14);
  EXPECT_NEAR(std::real(pair(NCPoly::constant(1, 1.0), scalar)), 1.0, 1e-14);
  const MomentSequence pauli = moment_sequence(pauli_pair(), 4);
  EXPECT_NEAR(std::real(pair(y(2, Word{1, 2, 1, 2}), pauli)), -1.0, 1e-14);
  EXPECT_THROW(pair(y(1, Word{1, 1, 1}), scalar), Error);
}

TEST(NCPoly, PairSeesOnlyTheCyclicReduction) {
  CounterRng rng(10, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const NCPoly a = random_poly(rng, 2, 4, 6);
    const MomentSequence t = moment_sequence(gue_tuple(rng, 2, 3), 4);
    ASSERT_LT(std::abs(pair(a, t) - pair(cyclic_reduce(a), t)), 1e-10 * (1.0 + r_norm(a, 4.0)));
  }
}

TEST(NCPoly, EvalExamples) {
  const CMatrix v = eval(y(1, Word{1, 1}), scalar_tuple(2.0));
  EXPECT_NEAR(std::abs(v(0, 0) - 4.0), 0.0, 1e-15);

  CounterRng rng(11, 0);
  const NCPoly a = random_poly(rng, 2, 3, 5);
  cplx total = 0.0;
  for (const auto& [w, c] : a.terms()) total += c;
  const CMatrix id = CMatrix::Identity(3, 3);
  const MatrixTuple ids = MatrixTuple::from_hermitian({id, id});
  EXPECT_LT(max_abs(eval(a, ids) - total * id), 1e-12);

  const NCPoly comm = y(2, Word{1, 2}, I1) - y(2, Word{2, 1}, I1);
  const CMatrix h = eval(comm, gue_tuple(rng, 2, 2));
  EXPECT_LT(max_abs(h - h.adjoint()), 1e-12);
  EXPECT_THROW(eval(comm, scalar_tuple(1.0)), Error);
}

TEST(NCPoly, EvalOfSymmetricPolynomialIsHermitian) {
  CounterRng rng(12, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const NCPoly a = random_poly(rng, 2, 4, 5);
    const NCPoly s = a + involute_poly(a);
    ASSERT_TRUE(is_symmetric(s, 1e-12));
    const CMatrix m = eval(s, gue_tuple(rng, 2, 3));
    ASSERT_LT(max_abs(m - m.adjoint()), 1e-9 * (1.0 + max_abs(m)));
  }
}
