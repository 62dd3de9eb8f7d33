// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "spectwist/pert.hpp"

namespace spectwist {

struct GaugeContext {
  AlgebraElement u;
  // sigma(u)* u
  AlgebraElement frak_u;
  // pi(u) hat(u), pi(sigma(u)) hat(sigma(u)), pi(u*) hat(u*)
  CMatrix ad_u;
  CMatrix ad_sigma_u;
  CMatrix ad_u_star;
};

GaugeContext gauge_context(const TwistedTriple& t, const Unitary& u);

Perturbation gauge_pert(const TwistedTriple& t, const Perturbation& p, const Unitary& u,
                        const Tolerance& tol = {});

struct BareDiracLaw {
  CMatrix lhs;  // Ad(sigma(u)) D Ad(u)*
  CMatrix term_d;
  CMatrix term_one;        // sigma(u)[D, u*]_sigma
  CMatrix term_one_hat;    // sigma°(u^)[D, (u*)^]_sigma°
  CMatrix term_nonlinear;  // sigma°(u^)[sigma(u)[D,u*]_sigma, (u*)^]_sigma°
  double defect = 0.0;
};

struct GaugeDiracReport {
  CMatrix lhs;  // Ad(sigma(u)) D_omega Ad(u)*
  CMatrix rhs;  // D_{omega^u}
  double defect = 0.0;
  BareDiracLaw bare;
};

BareDiracLaw bare_dirac_law(const TwistedTriple& t, const Unitary& u);
GaugeDiracReport gauge_dirac(const TwistedTriple& t, const Perturbation& p, const Unitary& u,
                             const Tolerance& tol = {});

struct SelfAdjointnessReport {
  CMatrix gamma_u;
  CMatrix defect;
  // [D_omega, frak_u frak_u^]_sigma with sigma acting as sigma on pi and sigma° on hat
  CMatrix mixed_bracket;
  double identity_defect = 0.0;
  double defect_norm = 0.0;
  double gauge_sa_defect = 0.0;
};

// The criterion operators, computed for any D_omega; no selfadjointness assumed.
SelfAdjointnessReport selfadjointness_terms(const TwistedTriple& t, const CMatrix& d_omega,
                                            const Unitary& u);
// Requires fluctuate(t, p).d_omega selfadjoint.
SelfAdjointnessReport selfadjointness_report(const TwistedTriple& t, const Perturbation& p,
                                             const Unitary& u, const Tolerance& tol = {});

struct SelfAdjointnessWitness {
  AlgebraElement u;
  double defect_norm = 0.0;
  double gauge_sa_defect = 0.0;
};

// Deterministic scan over diagonal phase unitaries, returning the first whose
// gauge transform of D_omega breaks selfadjointness by at least min_defect.
std::optional<SelfAdjointnessWitness> find_selfadjointness_witness(const TwistedTriple& t,
                                                                   const Perturbation& p,
                                                                   double min_defect,
                                                                   const Tolerance& tol = {});

}  // namespace spectwist
