// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include "spectwist/gauge.hpp"

namespace spectwist {

GaugeContext gauge_context(const TwistedTriple& t, const Unitary& u) {
  const AlgebraElement& x = u.element();
  const AlgebraElement sx = t.sigma().apply(x);
  GaugeContext g{x, sx.star() * x, t.pi(x) * t.hat(x), t.pi(sx) * t.hat(sx),
                 t.pi(x.star()) * t.hat(x.star())};
  return g;
}

Perturbation gauge_pert(const TwistedTriple& t, const Perturbation& p, const Unitary& u,
                        const Tolerance& tol) {
  if (!p.normalized(t.sigma(), tol)) throw PreconditionError("gauge_pert: perturbation is not normalized");
  return pert_mul(p_of_unitary(t, u), p);
}

BareDiracLaw bare_dirac_law(const TwistedTriple& t, const Unitary& u) {
  const GaugeContext g = gauge_context(t, u);
  const AlgebraElement& x = u.element();
  const AlgebraElement xs = x.star();
  const CMatrix hat_sx = t.hat(t.sigma().apply(x));
  BareDiracLaw r;
  r.lhs = g.ad_sigma_u * t.dirac() * g.ad_u_star;
  r.term_d = t.dirac();
  r.term_one = t.pi(t.sigma().apply(x)) * t.delta(xs);
  r.term_one_hat = hat_sx * t.opp_bracket(t.dirac(), xs);
  r.term_nonlinear = hat_sx * t.opp_bracket(r.term_one, xs);
  r.defect = rel_defect(r.lhs, r.term_d + r.term_one + r.term_one_hat + r.term_nonlinear);
  return r;
}

GaugeDiracReport gauge_dirac(const TwistedTriple& t, const Perturbation& p_in, const Unitary& u,
                             const Tolerance& tol) {
  const Perturbation p = p_in.normalized(t.sigma(), tol) ? p_in : normalize(t, p_in);
  const GaugeContext g = gauge_context(t, u);
  GaugeDiracReport r;
  r.lhs = g.ad_sigma_u * fluctuate(t, p, tol).d_omega * g.ad_u_star;
  r.rhs = fluctuate(t, gauge_pert(t, p, u, tol), tol).d_omega;
  r.defect = (r.lhs - r.rhs).norm();
  r.bare = bare_dirac_law(t, u);
  return r;
}

SelfAdjointnessReport selfadjointness_terms(const TwistedTriple& t, const CMatrix& d_omega,
                                            const Unitary& u) {
  const GaugeContext g = gauge_context(t, u);
  const AlgebraElement& fu = g.frak_u;
  const AlgebraElement sfu = t.sigma().apply(fu);
  const int eps1 = t.eps_prime();
  SelfAdjointnessReport r;
  const CMatrix x = t.bracket(d_omega, fu);
  r.gamma_u = t.hat(sfu) * x;
  r.defect = r.gamma_u + static_cast<double>(eps1) * t.jconj(r.gamma_u) + t.opp_bracket(x, fu);
  r.mixed_bracket = d_omega * t.pi(fu) * t.hat(fu) - t.pi(sfu) * t.hat(sfu) * d_omega;
  r.identity_defect = rel_defect(r.mixed_bracket, r.defect);
  r.defect_norm = r.defect.norm();
  const CMatrix gauged = g.ad_sigma_u * d_omega * g.ad_u_star;
  r.gauge_sa_defect = (gauged - gauged.adjoint()).norm();
  return r;
}

SelfAdjointnessReport selfadjointness_report(const TwistedTriple& t, const Perturbation& p,
                                             const Unitary& u, const Tolerance& tol) {
  const FluctuationReport f = fluctuate(t, p, tol);
  if (!f.selfadjoint_d_omega) throw PreconditionError("criterion requires selfadjoint start");
  return selfadjointness_terms(t, f.d_omega, u);
}

std::optional<SelfAdjointnessWitness> find_selfadjointness_witness(const TwistedTriple& t,
                                                                   const Perturbation& p,
                                                                   double min_defect,
                                                                   const Tolerance& tol) {
  const FluctuationReport f = fluctuate(t, p, tol);
  if (!f.selfadjoint_d_omega) throw PreconditionError("criterion requires selfadjoint start");
  const auto& shape = t.shape();
  const cplx phases[] = {cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (const cplx ph : phases)
    for (int k = 0; k < shape.num_blocks(); ++k)
      for (int i = 0; i < shape.dim(k); ++i) {
        AlgebraElement x = AlgebraElement::unit(shape);
        x.block(k)(i, i) = ph;
        if (approx_eq(t.sigma().apply(x), x, tol)) continue;
        const Unitary u(x, tol);
        const SelfAdjointnessReport r = selfadjointness_terms(t, f.d_omega, u);
        if (r.gauge_sa_defect >= min_defect && r.defect_norm >= min_defect)
          return SelfAdjointnessWitness{x, r.defect_norm, r.gauge_sa_defect};
      }
  return std::nullopt;
}

}  // namespace spectwist
