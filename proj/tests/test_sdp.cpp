#include <gtest/gtest.h>

#include <cmath>

#include "nctrace/errors.hpp"
#include "nctrace/moments.hpp"
#include "nctrace/rng.hpp"
#include "nctrace/sdp.hpp"
#include "test_support.hpp"

using namespace nctrace;
using namespace nctrace::testing;

namespace {

double fro(const CMatrix& m) { return m.norm(); }

double psd_check_min_eig(const CMatrix& m) { return psd_check(m, 0.0).min_eigenvalue; }

AffineConstraints trace_and_offdiag(double offdiag_sum) {
  AffineConstraints c(2);
  SparseHermitian tr(2);
  tr.add(0, 0, 1.0);
  tr.add(1, 1, 1.0);
  c.add(tr, 1.0);
  SparseHermitian off(2);
  off.add(0, 1, 1.0);  // G01 + G10
  c.add(off, offdiag_sum);
  return c;
}

// Random constraints whose right-hand sides come from a random PSD matrix, so
// the problem is feasible by construction.
AffineConstraints planted_problem(CounterRng& rng, int dim, int rows) {
  const int rank = uniform_int(rng, 1, dim);
  CMatrix b(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) b(i, j) = cplx(rng.normal(), rng.normal());
  const CMatrix g = b * b.adjoint() / static_cast<double>(dim);
  AffineConstraints c(dim);
  for (int k = 0; k < rows; ++k) {
    SparseHermitian a(dim);
    const int nnz = uniform_int(rng, 1, 3);
    for (int e = 0; e < nnz; ++e) a.add(uniform_int(rng, 0, dim - 1), uniform_int(rng, 0, dim - 1), cplx(rng.normal(), rng.normal()));
    const double rhs = a.inner(g);
    c.add(std::move(a), rhs);
  }
  return c;
}

}  // namespace

TEST(Sdp, SparseHermitianIsHermitian) {
  SparseHermitian a(3);
  a.add(0, 2, cplx(1.0, 2.0));
  a.add(1, 1, cplx(3.0, 5.0));
  const CMatrix d = a.dense();
  EXPECT_EQ(d(2, 0), cplx(1.0, -2.0));
  EXPECT_EQ(d(1, 1), cplx(3.0, 0.0));
  EXPECT_LT(fro(d - d.adjoint()), 1e-15);
  CounterRng rng(40, 0);
  const CMatrix g = random_hermitian(3, rng);
  EXPECT_NEAR(a.inner(g), (d.adjoint() * g).trace().real(), 1e-12);
  EXPECT_LT(fro(a.times(g) - d * g), 1e-12);
}

TEST(Sdp, HermitianVectorizationIsIsometric) {
  CounterRng rng(41, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = uniform_int(rng, 1, 6);
    const CMatrix a = random_hermitian(m, rng);
    const CMatrix b = random_hermitian(m, rng);
    const RVector va = hermitian_to_vector(a);
    ASSERT_EQ(va.size(), m * m);
    ASSERT_NEAR(va.dot(hermitian_to_vector(b)), (a.adjoint() * b).trace().real(), 1e-10);
    ASSERT_LT(fro(vector_to_hermitian(va, m) - a), 1e-12);
  }
}

TEST(Sdp, ProjectPsdExamples) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  CMatrix want = CMatrix::Zero(2, 2);
  want(0, 0) = 3.0;
  EXPECT_LT(fro(project_psd(d) - want), 1e-14);
  EXPECT_LT(fro(project_psd(CMatrix::Zero(3, 3))), 1e-15);
  CounterRng rng(42, 0);
  const CMatrix b = random_hermitian(4, rng);
  const CMatrix psd = b * b;
  EXPECT_LT(fro(project_psd(psd) - psd), 1e-12 * (1.0 + fro(psd)));
  EXPECT_NEAR(psd_distance(d), 1.0, 1e-14);
}

TEST(Sdp, ProjectPsdIsIdempotentAndNonexpansive) {
  CounterRng rng(43, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = uniform_int(rng, 1, 8);
    const CMatrix a = random_hermitian(m, rng);
    const CMatrix b = random_hermitian(m, rng);
    const CMatrix pa = project_psd(a);
    ASSERT_LT(fro(project_psd(pa) - pa), 1e-12 * (1.0 + fro(pa)));
    ASSERT_LE(fro(pa - project_psd(b)), fro(a - b) * (1.0 + 1e-12) + 1e-14);
    ASSERT_GE(psd_check_min_eig(pa), -1e-12);
  }
}

TEST(Sdp, ProjectAffineExamples) {
  AffineConstraints one(3);
  SparseHermitian e00(3);
  e00.add(0, 0, 1.0);
  one.add(e00, 1.0);
  CMatrix want = CMatrix::Zero(3, 3);
  want(0, 0) = 1.0;
  EXPECT_LT(fro(project_affine(CMatrix::Zero(3, 3), one) - want), 1e-15);
  EXPECT_LT(fro(project_affine(want, one) - want), 1e-15);

  AffineConstraints bad(3);
  bad.add(e00, 0.0);
  bad.add(e00, 1.0);
  try {
    project_affine(CMatrix::Zero(3, 3), bad);
    FAIL() << "expected inconsistent constraints";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentConstraints);
  }
}

TEST(Sdp, ProjectAffineSatisfiesConstraintsAndIsIdempotent) {
  CounterRng rng(44, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = uniform_int(rng, 2, 8);
    const AffineConstraints c = planted_problem(rng, m, uniform_int(rng, 1, m * m / 2 + 1));
    const CMatrix g = random_hermitian(m, rng);
    const CMatrix p = project_affine(g, c);
    ASSERT_LT(c.max_violation(p), 1e-10);
    ASSERT_LT(fro(project_affine(p, c) - p), 1e-10);
    ASSERT_LT(fro(p - p.adjoint()), 1e-12);
  }
}

TEST(Sdp, DependentRowsAreHandled) {
  AffineConstraints c(2);
  SparseHermitian a(2);
  a.add(0, 1, 1.0);
  c.add(a, 0.5);
  c.add(a, 0.5);
  const AffineProjector proj(c);
  EXPECT_EQ(proj.rank(), 1);
  EXPECT_EQ(proj.dependent_rows(), 1);
  EXPECT_LT(c.max_violation(proj.project(CMatrix::Identity(2, 2).eval())), 1e-12);
}

TEST(Sdp, FeasibleTwoByTwo) {
  const SolveReport r = feasibility_solve(trace_and_offdiag(0.8), 2);
  ASSERT_EQ(r.status, SolveStatus::Feasible);
  EXPECT_LT(trace_and_offdiag(0.8).max_violation(r.solution), 1e-9);
  EXPECT_GE(psd_check_min_eig(r.solution), -1e-9);
}

TEST(Sdp, InfeasibleTwoByTwo) {
  const SolveReport r = feasibility_solve(trace_and_offdiag(1.2), 2);
  EXPECT_EQ(r.status, SolveStatus::InfeasibleAtTolerance);
  EXPECT_GT(r.gap, 1e-9);
}

TEST(Sdp, EmptyConstraintsGiveZero) {
  const SolveReport r = feasibility_solve(AffineConstraints(3), 3);
  ASSERT_EQ(r.status, SolveStatus::Feasible);
  EXPECT_LT(fro(r.solution), 1e-15);
}

TEST(Sdp, InconsistentConstraintsAreStructurallyInfeasible) {
  AffineConstraints c(1);
  SparseHermitian a(1);
  a.add(0, 0, 1.0);
  c.add(a, 0.0);
  c.add(a, 1.0);
  const SolveReport r = feasibility_solve(c, 1);
  EXPECT_EQ(r.status, SolveStatus::InfeasibleAtTolerance);
  EXPECT_TRUE(r.structurally_infeasible);
}

TEST(Sdp, PlantedProblemsAreSolved) {
  CounterRng rng(45, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = uniform_int(rng, 2, 12);
    const AffineConstraints c = planted_problem(rng, m, uniform_int(rng, 1, m * (m + 1) / 2));
    const SolveReport r = feasibility_solve(c, m, 1e-9, 10000);
    ASSERT_EQ(r.status, SolveStatus::Feasible) << "trial " << trial;
    ASSERT_LE(c.max_violation(r.solution), 1e-9);
    ASSERT_GE(psd_check_min_eig(r.solution), -1e-9);
  }
}

TEST(Sdp, SolverIsDeterministic) {
  CounterRng a(46, 0);
  CounterRng b(46, 0);
  const AffineConstraints ca = planted_problem(a, 6, 10);
  const AffineConstraints cb = planted_problem(b, 6, 10);
  const SolveReport ra = feasibility_solve(ca, 6);
  const SolveReport rb = feasibility_solve(cb, 6);
  EXPECT_EQ(ra.iterations, rb.iterations);
  EXPECT_EQ(ra.solution, rb.solution);
}

TEST(Sdp, MinimizeLinearExamples) {
  const RMatrix box = RMatrix::Constant(2, 2, 10.0);
  AffineConstraints trace(2);
  SparseHermitian tr(2);
  tr.add(0, 0, 1.0);
  tr.add(1, 1, 1.0);
  trace.add(tr, 1.0);
  CMatrix e00 = CMatrix::Zero(2, 2);
  e00(0, 0) = 1.0;
  const LinearMinResult r1 = minimize_linear(e00, trace, box, 0.5, 1e-9, 400);
  EXPECT_NEAR(r1.value, 0.0, 1e-6);

  AffineConstraints first(2);
  SparseHermitian g00(2);
  g00.add(0, 0, 1.0);
  first.add(g00, 1.0);
  const LinearMinResult r2 = minimize_linear(CMatrix::Identity(2, 2), first, box, 0.5, 1e-9, 400);
  EXPECT_NEAR(r2.value, 1.0, 1e-6);

  const LinearMinResult r3 = minimize_linear(CMatrix::Zero(2, 2), first, box, 0.5, 1e-9, 50);
  EXPECT_NEAR(r3.value, 0.0, 1e-12);
}
