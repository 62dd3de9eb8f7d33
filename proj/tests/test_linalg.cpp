// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <limits>

#include "support.hpp"

using namespace spectwist;

TEST(Kron, IdentityTimesIdentity) { EXPECT_TRUE(approx_eq(kron(identity(2), identity(2)), identity(4))); }

TEST(Kron, DiagonalTimesIdentity) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  CMatrix expected = CMatrix::Zero(4, 4);
  expected.diagonal() << 1.0, 1.0, -1.0, -1.0;
  EXPECT_EQ(kron(d, identity(2)), expected);
}

TEST(Kron, MatchesEntryLoop) {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix x = random_matrix(2, 2, rng);
    const CMatrix y = random_matrix(2, 2, rng);
    const CMatrix k = kron(x, y);
    ASSERT_EQ(k.rows(), 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) EXPECT_EQ(k(2 * i + a, 2 * j + b), x(i, j) * y(a, b));
  }
}

TEST(Kron, RectangularShape) {
  const CMatrix k = kron(CMatrix::Ones(2, 3), CMatrix::Ones(4, 5));
  EXPECT_EQ(k.rows(), 8);
  EXPECT_EQ(k.cols(), 15);
}

TEST(Kron, Associative) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = random_matrix(2, 3, rng);
    const CMatrix b = random_matrix(3, 2, rng);
    const CMatrix c = random_matrix(2, 2, rng);
    EXPECT_TRUE(approx_eq(kron(kron(a, b), c), kron(a, kron(b, c))));
  }
}

TEST(Adjoint, ProductReverses) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_matrix(4, 3, rng);
    const CMatrix b = random_matrix(3, 5, rng);
    EXPECT_TRUE(approx_eq((a * b).adjoint(), b.adjoint() * a.adjoint()));
  }
}

TEST(ConjugateBy, PlainConjugationFlipsI) {
  const AntilinearOp j(identity(3));
  const CMatrix t = cplx(0.0, 1.0) * identity(3);
  EXPECT_TRUE(approx_eq(conjugate_by(j, t), cplx(0.0, -1.0) * identity(3)));
}

TEST(ConjugateBy, RealMatrixFixed) {
  Rng rng(4);
  const AntilinearOp j(identity(3));
  const CMatrix t = random_matrix(3, 3, rng).real().cast<cplx>();
  EXPECT_TRUE(approx_eq(conjugate_by(j, t), t));
}

TEST(ConjugateBy, DefiningPropertyOnVectors) {
  Rng rng(5);
  const AntilinearOp j(random_unitary(4, rng));
  const CMatrix t = random_matrix(4, 4, rng);
  const CMatrix jt = conjugate_by(j, t);
  for (int s = 0; s < 20; ++s) {
    const CVector psi = random_matrix(4, 1, rng);
    const CVector lhs = jt * j.apply(psi);
    const CVector rhs = j.apply(t * psi);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST(ConjugateBy, Multiplicative) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const AntilinearOp j(random_unitary(3, rng));
    const CMatrix t = random_matrix(3, 3, rng);
    const CMatrix s = random_matrix(3, 3, rng);
    EXPECT_TRUE(approx_eq(conjugate_by(j, t * s), conjugate_by(j, t) * conjugate_by(j, s)));
  }
}

TEST(ConjugateBy, ShapeMismatchThrows) {
  const AntilinearOp j(identity(3));
  EXPECT_THROW(conjugate_by(j, identity(2)), ShapeError);
}

TEST(AntilinearOp, SingularMatrixRejected) {
  try {
    AntilinearOp j(CMatrix::Zero(2, 2));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("real structure not invertible"), std::string::npos);
  }
}

TEST(AntilinearOp, IsometryAndSquare) {
  Rng rng(7);
  const AntilinearOp j(random_unitary(3, rng));
  EXPECT_TRUE(j.is_isometry());
  const AntilinearOp k(2.0 * identity(3));
  EXPECT_FALSE(k.is_isometry());
  // J = swap with conjugation squares to the identity
  CMatrix swap = CMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  EXPECT_TRUE(approx_eq(AntilinearOp(swap).square(), identity(2)));
  // J = i * conjugation squares to +1 as well: i conj(i) = 1
  EXPECT_TRUE(approx_eq(AntilinearOp(cplx(0, 1) * identity(2)).square(), identity(2)));
}

TEST(AntilinearOp, InverseRoundTrip) {
  Rng rng(8);
  const AntilinearOp j(random_matrix(3, 3, rng) + 3.0 * identity(3));
  const CVector psi = random_matrix(3, 1, rng);
  const CVector back = j.inverse().apply(j.apply(psi));
  EXPECT_LE((back - psi).norm(), 1e-12);
}

TEST(ApproxEq, EqualMatrices) {
  Rng rng(9);
  const CMatrix x = random_matrix(3, 3, rng);
  EXPECT_TRUE(approx_eq(x, x));
}

TEST(ApproxEq, BelowThreshold) {
  const CMatrix y = 0.5e-10 * matrix_unit(2, 0, 0);
  EXPECT_TRUE(approx_eq(CMatrix::Zero(2, 2), y));
}

TEST(ApproxEq, AboveThreshold) {
  EXPECT_FALSE(approx_eq(identity(2), identity(2) + 1e-3 * matrix_unit(2, 0, 0)));
}

TEST(ApproxEq, RelativeScaling) {
  const CMatrix big = 1e6 * identity(2);
  EXPECT_TRUE(approx_eq(big, big + 1e-6 * matrix_unit(2, 0, 0)));
  EXPECT_FALSE(approx_eq(big, big + 1e-2 * matrix_unit(2, 0, 0)));
}

TEST(ApproxEq, ShapeMismatchThrows) { EXPECT_THROW(approx_eq(identity(2), identity(3)), ShapeError); }

TEST(ApproxEq, CustomTolerance) {
  EXPECT_TRUE(approx_eq(identity(2), identity(2) + 1e-3 * matrix_unit(2, 0, 0), Tolerance(1e-2)));
}

TEST(Tolerance, RejectsNonPositive) {
  EXPECT_THROW(Tolerance(0.0), Error);
  EXPECT_THROW(Tolerance(-1.0), Error);
}

TEST(Finite, RejectsNaN) {
  CMatrix m = identity(2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(all_finite(m));
  EXPECT_THROW(require_finite(m, "m"), Error);
  EXPECT_TRUE(all_finite(identity(2)));
}

TEST(Inverse, SingularThrows) { EXPECT_THROW(inverse(CMatrix::Zero(2, 2)), Error); }

TEST(RangeIsometry, SpansProjectionRange) {
  Rng rng(10);
  const CMatrix q = random_unitary(5, rng);
  const CMatrix v = q.leftCols(2);
  const CMatrix p = v * v.adjoint();
  const CMatrix w = range_isometry(p);
  ASSERT_EQ(w.cols(), 2);
  EXPECT_TRUE(approx_eq(w.adjoint() * w, identity(2)));
  EXPECT_TRUE(approx_eq(w * w.adjoint(), p));
  EXPECT_EQ(range_isometry(CMatrix::Zero(3, 3)).cols(), 0);
}

TEST(Random, HermitianAndUnitary) {
  Rng rng(12);
  const CMatrix h = random_hermitian(5, rng);
  EXPECT_TRUE(approx_eq(h, h.adjoint()));
  const CMatrix u = random_unitary(5, rng);
  EXPECT_TRUE(approx_eq(u * u.adjoint(), identity(5)));
}
