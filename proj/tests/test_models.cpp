// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <Eigen/SVD>

#include "support.hpp"

using namespace spectwist;
using spectwist::testing::random_pert;

namespace {

cplx kron_delta(int i) { return i == 0 ? cplx(1.0) : cplx(0.0); }

}  // namespace

TEST(U1U2, AxiomsAndSigns) {
  Rng rng(1);
  const U1U2Model m = build_u1u2({1.0, 0.5}, {0.7, -0.2});
  const AxiomReport r = check_axioms(m.triple, 4, rng);
  EXPECT_TRUE(r.mandatory_passed());
  EXPECT_EQ(r.signs, (KOSigns{1, 1, -1}));
  EXPECT_EQ(r.ko_dim, 6);
  EXPECT_FALSE(r.first_order_holds());
}

TEST(U1U2, DecoupledYukawaRestoresFirstOrder) {
  Rng rng(2);
  const U1U2Model m = build_u1u2({1.0, 0.5}, {0.0, 0.0});
  EXPECT_TRUE(check_axioms(m.triple, 4, rng).first_order_holds());
}

TEST(U1U2, UnitPerturbationHasZeroParameters) {
  const U1U2Model m = build_u1u2({1.0, 0.5}, {0.7, -0.2});
  const FlucParams f = extract_params(m, Perturbation::unit(m.triple.shape()));
  EXPECT_EQ(f.phi, cplx(0.0));
  EXPECT_EQ(f.phi_prime, cplx(0.0));
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(f.sigma_lower[static_cast<size_t>(i)], cplx(0.0));
    EXPECT_EQ(f.sigma_upper[static_cast<size_t>(i)], cplx(0.0));
  }
  EXPECT_TRUE(approx_eq(assemble_d_omega(m, f), m.triple.dirac()));
}

TEST(U1U2, FormulaMatchesFluctuation) {
  Rng rng(3);
  const std::pair<cplx, cplx> couplings[] = {
      {{1.0, 0.5}, {0.7, -0.2}}, {{-0.3, 2.0}, {1.1, 0.4}}, {{0.8, 0.0}, {0.0, 0.0}}};
  for (const auto& [kx, ky] : couplings) {
    const U1U2Model m = build_u1u2(kx, ky);
    for (int trial = 0; trial < 100; ++trial) {
      const Perturbation p = random_pert(m.triple, rng, 1 + trial % 3);
      EXPECT_LE(verify_fluctuation_formula(m, p).max_defect, 1e-10);
    }
  }
}

TEST(U1U2, ParametersIgnoreNormalization) {
  Rng rng(4);
  const U1U2Model m = build_u1u2({1.0, 0.5}, {0.7, -0.2});
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ElementPair> pairs;
    for (int k = 0; k < 2; ++k)
      pairs.emplace_back(AlgebraElement::random(m.triple.shape(), rng), AlgebraElement::random(m.triple.shape(), rng));
    const Perturbation raw(m.triple.shape(), pairs);
    const FlucParams a = extract_params(m, raw);
    const FlucParams b = extract_params(m, normalize(m.triple, raw));
    EXPECT_NEAR(std::abs(a.phi - b.phi), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a.sigma_lower[1] - b.sigma_lower[1]), 0.0, 1e-12);
  }
}

TEST(U1U2, OperatorEntriesOracle) {
  // read the parameters back from the fluctuated operator's matrix entries
  Rng rng(5);
  const U1U2Model m = build_u1u2({-0.4, 1.3}, {0.9, 0.6});
  for (int trial = 0; trial < 50; ++trial) {
    const Perturbation p = random_pert(m.triple, rng);
    const FlucParams f = extract_params(m, p);
    const OperatorParams o = params_from_operator(m, fluctuate(m.triple, p).d_omega);
    EXPECT_NEAR(std::abs(o.phi - f.phi), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(o.phi_prime - f.phi_prime), 0.0, 1e-10);
    for (int ip = 0; ip < 2; ++ip)
      for (int j = 0; j < 2; ++j) {
        const cplx expect = (f.sigma_lower[static_cast<size_t>(ip)] + kron_delta(ip)) *
                            (std::conj(f.sigma_upper[static_cast<size_t>(j)]) + kron_delta(j));
        EXPECT_NEAR(std::abs(o.mixed(ip, j) - expect), 0.0, 1e-10);
      }
  }
}

TEST(U1U2, MixedBlockHasRankOne) {
  Rng rng(6);
  const U1U2Model m = build_u1u2({1.0, 0.5}, {0.7, -0.2});
  for (int trial = 0; trial < 20; ++trial) {
    const OperatorParams o = params_from_operator(m, fluctuate(m.triple, random_pert(m.triple, rng)).d_omega);
    const Eigen::JacobiSVD<CMatrix> svd(o.mixed);
    EXPECT_LE(svd.singularValues()(1), 1e-10 * std::max(1.0, svd.singularValues()(0)));
  }
}

TEST(U1U2, SelfadjointRestriction) {
  Rng rng(7);
  const U1U2Model m = build_u1u2({1.0, 0.5}, {0.7, -0.2});
  for (int trial = 0; trial < 100; ++trial) {
    const Perturbation p = selfadjoint_symmetrize(m.triple, random_pert(m.triple, rng));
    const FlucParams f = extract_params(m, p);
    EXPECT_NEAR(std::abs(f.phi_prime - std::conj(f.phi)), 0.0, 1e-12);
    for (int i = 0; i < 2; ++i)
      EXPECT_NEAR(std::abs(f.sigma_upper[static_cast<size_t>(i)] - std::conj(f.sigma_lower[static_cast<size_t>(i)])),
                  0.0, 1e-12);
    const FluctuationReport r = fluctuate(m.triple, p);
    EXPECT_TRUE(r.selfadjoint_omega1);
    EXPECT_TRUE(r.selfadjoint_d_omega);
  }
}

TEST(U1U2, FluctuationKeepsRealStructure) {
  Rng rng(8);
  const U1U2Model m = build_u1u2({1.0, 0.5}, {0.7, -0.2});
  for (int trial = 0; trial < 20; ++trial) EXPECT_TRUE(fluctuate(m.triple, random_pert(m.triple, rng)).j_compatible);
}

TEST(U1U2, RejectsForeignPerturbation) {
  const U1U2Model m = build_u1u2({1.0, 0.5}, {0.7, -0.2});
  EXPECT_THROW(extract_params(m, Perturbation::unit(AlgebraShape({1, 1}))), ShapeError);
  EXPECT_THROW(params_from_operator(m, identity(4)), ShapeError);
}

TEST(U1U2, SelfadjointSymmetrizeIsNormalized) {
  Rng rng(9);
  const U1U2Model m = build_u1u2({1.0, 0.5}, {0.7, -0.2});
  const Perturbation p = selfadjoint_symmetrize(m.triple, random_pert(m.triple, rng));
  EXPECT_TRUE(p.normalized(m.triple.sigma()));
}

TEST(Toys, ProductToyIsFirstOrder) {
  Rng rng(10);
  const AxiomReport r = check_axioms(product_toy(), 4, rng);
  EXPECT_TRUE(r.mandatory_passed());
  EXPECT_TRUE(r.first_order_holds());
}

TEST(Toys, TwistedToyKeepsSignsAndFirstOrder) {
  Rng rng(11);
  const TwistedTriple base = product_toy();
  const TwistedTriple t = twisted_toy();
  EXPECT_EQ(t.shape().num_blocks(), 2 * base.shape().num_blocks());
  const AxiomReport r = check_axioms(t, 4, rng);
  EXPECT_TRUE(r.mandatory_passed());
  EXPECT_TRUE(r.first_order_holds());
  EXPECT_EQ(r.signs, check_axioms(base, 1, rng).signs);
}

TEST(Toys, MinimalTwistNeedsGrading) {
  EXPECT_THROW(minimal_twist(random_real_triple(1)), PreconditionError);
}

TEST(Toys, MinimalTwistOfDiagonalAssignsEigenspaces) {
  const TwistedTriple t = minimal_twist(diagonal_toy(0.5));
  AlgebraElement x = AlgebraElement::zero(t.shape());
  x.block(0)(0, 0) = 2.0;  // first copy, first summand
  x.block(3)(0, 0) = 5.0;  // second copy, second summand
  const CMatrix p = t.pi(x);
  EXPECT_EQ(p(0, 0), cplx(2.0));
  EXPECT_EQ(p(1, 1), cplx(5.0));
}

TEST(Toys, RandomRealTripleIsDeterministicAndRegular) {
  Rng rng(12);
  const TwistedTriple a = random_real_triple(42);
  const TwistedTriple b = random_real_triple(42);
  EXPECT_EQ((a.dirac() - b.dirac()).norm(), 0.0);
  EXPECT_GT((a.dirac() - random_real_triple(43).dirac()).norm(), 0.0);
  const AxiomReport r = check_axioms(a, 4, rng);
  EXPECT_TRUE(r.mandatory_passed());
  EXPECT_FALSE(a.has_grading());
  EXPECT_LE(check_regularity(a.sigma(), 10, rng).max_defect, 1e-12);
  const AlgebraElement x = AlgebraElement::random(a.shape(), rng);
  EXPECT_FALSE(approx_eq(a.sigma().apply(x), x));
}

TEST(U1U2, IdentifyingCopiesGivesUntwistedParameters) {
  // untwisted model on C + C + M_2: the same operators with sigma = id
  Rng rng(13);
  const U1U2Model m = build_u1u2({0.6, -1.1}, {0.4, 0.9});
  const AlgebraShape base({1, 1, 2});
  const auto identify = [&](const AlgebraElement& a) {
    return AlgebraElement(m.triple.shape(), {a.block(0), a.block(1), a.block(2), a.block(0), a.block(1), a.block(2)});
  };
  const TwistedTriple untwisted(
      Representation::from_function(base, 8, [&](const AlgebraElement& a) { return m.triple.pi(identify(a)); }),
      m.triple.dirac(), Automorphism::identity(base), m.triple.grading(), m.triple.real());
  for (int trial = 0; trial < 20; ++trial) {
    const Perturbation p = random_pert(untwisted, rng);
    std::vector<ElementPair> pairs;
    for (const auto& [a, b] : p.pairs()) pairs.emplace_back(identify(a), identify(b));
    const Perturbation lifted(m.triple.shape(), pairs);
    ASSERT_TRUE(lifted.normalized(m.triple.sigma()));
    const FlucParams f = extract_params(m, lifted);
    const OperatorParams o = params_from_operator(m, fluctuate(untwisted, p).d_omega);
    EXPECT_NEAR(std::abs(f.phi - o.phi), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(f.phi_prime - o.phi_prime), 0.0, 1e-10);
    for (int ip = 0; ip < 2; ++ip)
      for (int j = 0; j < 2; ++j) {
        const cplx expect = (f.sigma_lower[static_cast<size_t>(ip)] + kron_delta(ip)) *
                            (std::conj(f.sigma_upper[static_cast<size_t>(j)]) + kron_delta(j));
        EXPECT_NEAR(std::abs(o.mixed(ip, j) - expect), 0.0, 1e-10);
      }
  }
}
