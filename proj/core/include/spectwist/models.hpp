// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include "spectwist/morita.hpp"

namespace spectwist {

// U(1) x U(2) minimal twist. Algebra blocks are
// (lambda^r_R, lambda^r_L, m^r, lambda^l_R, lambda^l_L, m^l) with the flip
// exchanging r and l. H = C^8 ordered (alpha, I) then (alpha', I').
struct U1U2Model {
  cplx kx;
  cplx ky;
  TwistedTriple triple;
};

U1U2Model build_u1u2(cplx kx, cplx ky);

namespace u1u2 {
inline constexpr int lambda_r_R = 0;
inline constexpr int lambda_r_L = 1;
inline constexpr int m_r = 2;
inline constexpr int lambda_l_R = 3;
inline constexpr int lambda_l_L = 4;
inline constexpr int m_l = 5;
}  // namespace u1u2

struct FlucParams {
  cplx phi{0.0, 0.0};
  cplx phi_prime{0.0, 0.0};
  std::array<cplx, 2> sigma_lower{};  // sigma_{I'}
  std::array<cplx, 2> sigma_upper{};  // sigma^{J'}
};

FlucParams extract_params(const U1U2Model& model, const Perturbation& p);

// Values read back from the matrix entries of a fluctuated operator.
struct OperatorParams {
  cplx phi{0.0, 0.0};
  cplx phi_prime{0.0, 0.0};
  // entry (I', J) of the (alpha'=1, beta=1) block divided by k_y
  CMatrix mixed;
};

OperatorParams params_from_operator(const U1U2Model& model, const CMatrix& d_omega);

CMatrix assemble_d_omega(const U1U2Model& model, const FlucParams& params);

struct FormulaReport {
  double max_defect = 0.0;
  FlucParams params;
  CMatrix assembled;
  CMatrix fluctuated;
};

FormulaReport verify_fluctuation_formula(const U1U2Model& model, const Perturbation& p);

// (1/2) p + (1/2) p^dagger, whose one-form is selfadjoint.
Perturbation selfadjoint_symmetrize(const TwistedTriple& t, const Perturbation& p);

// A = C + C on C^2, sigma = id, J = complex conjugation, D = [[0, m], [m, 0]].
TwistedTriple diagonal_toy(double m = 1.0);
// A = C + M_2 on C^3 (x) C^3 with J the conjugated swap; untwisted and first order.
TwistedTriple product_toy();
// Doubles the algebra and lets the copies act on the +1 and -1 grading eigenspaces.
TwistedTriple minimal_twist(const TwistedTriple& t);
TwistedTriple twisted_toy();
// A = M_2 + C on C^6 with a regular non-trivial twist on M_2.
TwistedTriple random_real_triple(std::uint64_t seed);

}  // namespace spectwist
