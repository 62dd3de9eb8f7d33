// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "support.hpp"

using namespace spectwist;

namespace {

const AlgebraShape kSmall({1, 2});

Automorphism inner_m2(const CMatrix& s) {
  return Automorphism(AlgebraShape({2}), {0}, {s});
}

// max over the matrix units of || S E* S^-1 - (S^-1 E S)* ||, computed with plain matrices
double regularity_oracle(const CMatrix& s) {
  const CMatrix si = s.inverse();
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const CMatrix e = matrix_unit(2, i, j);
      worst = std::max(worst, rel_defect(s * e.adjoint() * si, (si * e * s).adjoint()));
    }
  return worst;
}

}  // namespace

TEST(AlgebraShape, Validation) {
  EXPECT_THROW(AlgebraShape(std::vector<int>{}), ShapeError);
  EXPECT_THROW(AlgebraShape({1, 0}), ShapeError);
  EXPECT_EQ(AlgebraShape({1, 2}).algebra_dim(), 5);
  EXPECT_EQ(AlgebraShape({1, 2}).amplified(2), AlgebraShape({2, 4}));
  EXPECT_EQ(AlgebraShape({1, 2}).units().size(), 5u);
}

TEST(AlgebraElement, UnitLaw) {
  Rng rng(1);
  const AlgebraElement a = AlgebraElement::random(kSmall, rng);
  const AlgebraElement e = alg_unit(kSmall);
  EXPECT_TRUE(approx_eq(alg_mul(e, a), a));
  EXPECT_TRUE(approx_eq(alg_mul(a, e), a));
}

TEST(AlgebraElement, StarIsInvolution) {
  Rng rng(2);
  const AlgebraElement a = AlgebraElement::random(kSmall, rng);
  EXPECT_TRUE(approx_eq(alg_star(alg_star(a)), a));
}

TEST(AlgebraElement, StarReversesProductEntrywise) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraElement a = AlgebraElement::random(kSmall, rng);
    const AlgebraElement b = AlgebraElement::random(kSmall, rng);
    const AlgebraElement lhs = alg_star(alg_mul(a, b));
    for (int k = 0; k < 2; ++k) {
      const int n = kSmall.dim(k);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          cplx s = 0.0;
          for (int l = 0; l < n; ++l) s += std::conj(b.block(k)(l, i)) * std::conj(a.block(k)(j, l));
          EXPECT_NEAR(std::abs(lhs.block(k)(i, j) - s), 0.0, 1e-12);
        }
    }
  }
}

TEST(AlgebraElement, ShapeMismatch) {
  const AlgebraElement a = AlgebraElement::unit(kSmall);
  const AlgebraElement b = AlgebraElement::unit(AlgebraShape({2, 1}));
  EXPECT_THROW(alg_mul(a, b), ShapeError);
  EXPECT_THROW(alg_add(a, b), ShapeError);
  EXPECT_THROW(AlgebraElement(kSmall, {identity(1)}), ShapeError);
  EXPECT_THROW(AlgebraElement(kSmall, {identity(1), identity(3)}), ShapeError);
}

TEST(AlgebraElement, RandomUnitaryIsUnitary) {
  Rng rng(4);
  EXPECT_NO_THROW(Unitary(AlgebraElement::random_unitary(kSmall, rng)));
  EXPECT_THROW(Unitary(2.0 * AlgebraElement::unit(kSmall)), PreconditionError);
}

TEST(Automorphism, IdentityLeavesElement) {
  Rng rng(5);
  const AlgebraElement a = AlgebraElement::random(kSmall, rng);
  EXPECT_TRUE(approx_eq(apply_automorphism(Automorphism::identity(kSmall), a), a));
}

TEST(Automorphism, FlipExchangesHalves) {
  Rng rng(6);
  const AlgebraShape s({1, 2, 1, 2});
  const AlgebraElement a = AlgebraElement::random(s, rng);
  const AlgebraElement f = Automorphism::flip(s).apply(a);
  EXPECT_EQ(f.block(0), a.block(2));
  EXPECT_EQ(f.block(1), a.block(3));
  EXPECT_EQ(f.block(2), a.block(0));
  EXPECT_EQ(f.block(3), a.block(1));
  EXPECT_THROW(Automorphism::flip(AlgebraShape({1, 2, 1})), ShapeError);
}

TEST(Automorphism, RejectsBadData) {
  EXPECT_THROW(Automorphism(kSmall, {1, 0}, {identity(1), identity(2)}), ShapeError);
  EXPECT_THROW(Automorphism(kSmall, {0, 0}, {identity(1), identity(2)}), ShapeError);
  EXPECT_THROW(Automorphism(kSmall, {0, 1}, {identity(1), CMatrix::Zero(2, 2)}), Error);
}

TEST(Automorphism, InnerIsMultiplicative) {
  Rng rng(7);
  const Automorphism sigma = inner_m2(random_matrix(2, 2, rng) + 2.0 * identity(2));
  for (int trial = 0; trial < 50; ++trial) {
    const AlgebraElement a = AlgebraElement::random(sigma.shape(), rng);
    const AlgebraElement b = AlgebraElement::random(sigma.shape(), rng);
    EXPECT_TRUE(approx_eq(sigma.apply(a * b), sigma.apply(a) * sigma.apply(b)));
  }
}

TEST(Automorphism, PreservesUnit) {
  Rng rng(8);
  const AlgebraShape s({2, 1, 2, 1});
  const Automorphism sigma =
      Automorphism(s, {2, 3, 0, 1}, {random_unitary(2, rng), identity(1), random_matrix(2, 2, rng) + 3.0 * identity(2),
                                     identity(1)});
  EXPECT_TRUE(approx_eq(sigma.apply(AlgebraElement::unit(s)), AlgebraElement::unit(s)));
}

TEST(Automorphism, InverseOfIdentityAndFlip) {
  Rng rng(9);
  const AlgebraShape s({1, 2, 1, 2});
  const AlgebraElement a = AlgebraElement::random(s, rng);
  EXPECT_TRUE(approx_eq(inverse_automorphism(Automorphism::identity(s)).apply(a), a));
  const Automorphism f = Automorphism::flip(s);
  EXPECT_TRUE(approx_eq(inverse_automorphism(f).apply(a), f.apply(a)));
}

TEST(Automorphism, InverseRoundTrip) {
  Rng rng(10);
  const AlgebraShape s({2, 1, 2, 1});
  const Automorphism sigma(s, {2, 1, 0, 3},
                           {random_matrix(2, 2, rng) + 2.0 * identity(2), cplx(2.0) * identity(1),
                            random_matrix(2, 2, rng) + 2.0 * identity(2), identity(1)});
  const Automorphism inv = sigma.inverse();
  for (int trial = 0; trial < 50; ++trial) {
    const AlgebraElement a = AlgebraElement::random(s, rng);
    EXPECT_TRUE(approx_eq(inv.apply(sigma.apply(a)), a));
    EXPECT_TRUE(approx_eq(sigma.apply_inverse(sigma.apply(a)), a));
  }
}

TEST(Automorphism, CompositionMatchesPointwise) {
  Rng rng(11);
  const AlgebraShape s({2, 2});
  const Automorphism f(s, {1, 0}, {random_matrix(2, 2, rng) + 2.0 * identity(2), random_unitary(2, rng)});
  const Automorphism g(s, {0, 1}, {random_unitary(2, rng), random_matrix(2, 2, rng) + 2.0 * identity(2)});
  const Automorphism fg = f.compose(g);
  for (const auto& u : s.units()) {
    const AlgebraElement e = AlgebraElement::matrix_unit(s, u.k, u.i, u.j);
    EXPECT_TRUE(approx_eq(fg.apply(e), f.apply(g.apply(e))));
  }
}

TEST(Automorphism, FromMapRecoversAutomorphism) {
  Rng rng(12);
  const AlgebraShape s({2, 1, 2});
  const Automorphism sigma(s, {2, 1, 0}, {random_matrix(2, 2, rng) + 2.0 * identity(2), identity(1),
                                          random_unitary(2, rng)});
  const Automorphism rec = Automorphism::from_map(s, [&](const AlgebraElement& a) { return sigma.apply(a); });
  EXPECT_EQ(rec.perm(), sigma.perm());
  for (int trial = 0; trial < 10; ++trial) {
    const AlgebraElement a = AlgebraElement::random(s, rng);
    EXPECT_TRUE(approx_eq(rec.apply(a), sigma.apply(a)));
  }
}

TEST(Regularity, IdentityAndFlipAreRegular) {
  Rng rng(13);
  EXPECT_EQ(check_regularity(Automorphism::identity(kSmall), 5, rng).max_defect, 0.0);
  const auto r = check_regularity(Automorphism::flip(AlgebraShape({1, 2, 1, 2})), 5, rng);
  EXPECT_EQ(r.max_defect, 0.0);
  EXPECT_TRUE(r.passed);
  EXPECT_THROW(check_regularity(Automorphism::identity(kSmall), 0, rng), PreconditionError);
}

TEST(Regularity, PositiveDiagonalConjugatorIsRegular) {
  // S = diag(2, 1) is hermitian, so S a* S^-1 = (S^-1 a S)* for every a
  Rng rng(14);
  CMatrix s = CMatrix::Zero(2, 2);
  s(0, 0) = 2.0;
  s(1, 1) = 1.0;
  EXPECT_EQ(regularity_oracle(s), 0.0);
  EXPECT_LE(check_regularity(inner_m2(s), 10, rng).max_defect, 1e-15);
}

TEST(Regularity, NonNormalConjugatorBreaksRegularity) {
  Rng rng(15);
  CMatrix s = identity(2);
  s(0, 1) = 1.0;
  const double expected = regularity_oracle(s);
  ASSERT_GT(expected, 0.1);
  const auto r = check_regularity(inner_m2(s), 10, rng);
  EXPECT_FALSE(r.passed);
  EXPECT_GE(r.max_defect, expected - 1e-12);
}

TEST(Regularity, HermitianUnitaryConjugatorIsRegular) {
  Rng rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix v = random_unitary(2, rng);
    CMatrix d = identity(2);
    d(1, 1) = -1.0;
    const CMatrix reflection = v * d * v.adjoint();
    EXPECT_LE(check_regularity(inner_m2(cplx(0.0, 1.0) * reflection), 5, rng).max_defect, 1e-12);
  }
}

TEST(Regularity, HermitianInvertibleConjugatorIsRegular) {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix b = random_matrix(2, 2, rng);
    const CMatrix s = b * b.adjoint() + 0.1 * identity(2);
    EXPECT_TRUE(check_regularity(inner_m2(s), 5, rng).passed);
  }
}

TEST(Regularity, NonHermitianUnitaryConjugatorIsNotRegular) {
  Rng rng(18);
  CMatrix s = identity(2);
  s(1, 1) = cplx(0.0, 1.0);
  const double expected = regularity_oracle(s);
  ASSERT_GT(expected, 0.5);
  EXPECT_FALSE(check_regularity(inner_m2(s), 5, rng).passed);
}
