// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include "spectwist/pert.hpp"

#include <algorithm>

namespace spectwist {

namespace {

void check_pairs(const AlgebraShape& shape, const std::vector<ElementPair>& pairs) {
  for (const auto& [a, b] : pairs)
    if (a.shape() != shape || b.shape() != shape)
      throw ShapeError("perturbation: pair does not match the algebra shape");
}

}  // namespace

Perturbation::Perturbation(AlgebraShape shape, std::vector<ElementPair> pairs)
    : shape_(std::move(shape)), pairs_(std::move(pairs)) {
  check_pairs(shape_, pairs_);
}

Perturbation Perturbation::unit(const AlgebraShape& shape) {
  const auto e = AlgebraElement::unit(shape);
  return {shape, {{e, e}}};
}

Perturbation Perturbation::random_normalized(const AlgebraShape& shape, const Automorphism& sigma,
                                             int npairs, Rng& rng) {
  std::vector<ElementPair> pairs;
  for (int j = 0; j < npairs; ++j) {
    AlgebraElement a = AlgebraElement::random(shape, rng);
    AlgebraElement b = AlgebraElement::random(shape, rng);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  Perturbation p(shape, pairs);
  const auto e = AlgebraElement::unit(shape);
  pairs.emplace_back(e - p.normalization(sigma), e);
  return {shape, pairs};
}

AlgebraElement Perturbation::normalization(const Automorphism& sigma) const {
  AlgebraElement s = AlgebraElement::zero(shape_);
  for (const auto& [a, b] : pairs_) s = s + a * sigma.apply(b);
  return s;
}

bool Perturbation::normalized(const Automorphism& sigma, const Tolerance& tol) const {
  return approx_eq(normalization(sigma), AlgebraElement::unit(shape_), tol);
}

Perturbation Perturbation::scaled(cplx s) const {
  std::vector<ElementPair> out;
  for (const auto& [a, b] : pairs_) out.emplace_back(s * a, b);
  return {shape_, out};
}

Perturbation Perturbation::concat(const Perturbation& other) const {
  if (other.shape_ != shape_) throw ShapeError("perturbation concat: shape mismatch");
  std::vector<ElementPair> out = pairs_;
  out.insert(out.end(), other.pairs_.begin(), other.pairs_.end());
  return {shape_, out};
}

OppPerturbation::OppPerturbation(AlgebraShape shape, std::vector<ElementPair> pairs)
    : shape_(std::move(shape)), pairs_(std::move(pairs)) {
  check_pairs(shape_, pairs_);
}

OppPerturbation OppPerturbation::unit(const AlgebraShape& shape) {
  const auto e = AlgebraElement::unit(shape);
  return {shape, {{e, e}}};
}

AlgebraElement OppPerturbation::normalization(const Automorphism& sigma) const {
  AlgebraElement s = AlgebraElement::zero(shape_);
  for (const auto& [a, b] : pairs_) s = s + b * sigma.apply(a);
  return s;
}

bool OppPerturbation::normalized(const Automorphism& sigma, const Tolerance& tol) const {
  return approx_eq(normalization(sigma), AlgebraElement::unit(shape_), tol);
}

TwistedOneForm eta(const TwistedTriple& t, const Perturbation& p) {
  if (p.shape() != t.shape()) throw ShapeError("eta: algebra shape mismatch");
  CMatrix op = CMatrix::Zero(t.dim(), t.dim());
  for (const auto& [a, b] : p.pairs()) op += t.pi(a) * t.delta(b);
  return {op, p};
}

CMatrix form_left(const TwistedTriple& t, const AlgebraElement& a, const CMatrix& w) {
  return t.pi(t.sigma().apply(a)) * w;
}

CMatrix form_right(const TwistedTriple& t, const CMatrix& w, const AlgebraElement& b) { return w * t.pi(b); }

CMatrix opp_form_left(const TwistedTriple& t, const AlgebraElement& a, const CMatrix& w) {
  return w * t.pi_opp(a);
}

CMatrix opp_form_right(const TwistedTriple& t, const CMatrix& w, const AlgebraElement& b) {
  return t.hat(t.sigma().apply(b.star())) * w;
}

Perturbation normalize(const TwistedTriple& t, const Perturbation& p) {
  if (p.shape() != t.shape()) throw ShapeError("normalize: algebra shape mismatch");
  const auto e = AlgebraElement::unit(t.shape());
  std::vector<ElementPair> pairs = p.pairs();
  pairs.emplace_back(e - p.normalization(t.sigma()), e);
  return {t.shape(), pairs};
}

Perturbation pert_mul(const Perturbation& p, const Perturbation& q) {
  if (p.shape() != q.shape()) throw ShapeError("pert_mul: algebra shape mismatch");
  std::vector<ElementPair> out;
  out.reserve(p.size() * q.size());
  for (const auto& [a, b] : p.pairs())
    for (const auto& [a2, b2] : q.pairs()) out.emplace_back(a * a2, b2 * b);
  return {p.shape(), out};
}

Perturbation eta_adjoint_pairs(const TwistedTriple& t, const Perturbation& p, const Tolerance& tol) {
  if (!p.normalized(t.sigma(), tol))
    throw PreconditionError("eta_adjoint_pairs: perturbation is not normalized");
  std::vector<ElementPair> out;
  for (const auto& [a, b] : p.pairs()) out.emplace_back(b.star(), a.star());
  return {p.shape(), out};
}

OppPerturbation opp_mul(const OppPerturbation& p, const OppPerturbation& q) {
  if (p.shape() != q.shape()) throw ShapeError("opp_mul: algebra shape mismatch");
  std::vector<ElementPair> out;
  for (const auto& [a, b] : p.pairs())
    for (const auto& [a2, b2] : q.pairs()) out.emplace_back(a2 * a, b * b2);
  return {p.shape(), out};
}

CMatrix eta_opp(const TwistedTriple& t, const OppPerturbation& p) {
  if (p.shape() != t.shape()) throw ShapeError("eta_opp: algebra shape mismatch");
  CMatrix op = CMatrix::Zero(t.dim(), t.dim());
  for (const auto& [a, b] : p.pairs()) op += t.pi_opp(a) * t.delta_opp(b);
  return op;
}

OppPerturbation eta_opp_adjoint_pairs(const TwistedTriple& t, const OppPerturbation& p,
                                      const Tolerance& tol) {
  if (!p.normalized(t.sigma(), tol))
    throw PreconditionError("eta_opp_adjoint_pairs: perturbation is not normalized");
  std::vector<ElementPair> out;
  for (const auto& [a, b] : p.pairs()) out.emplace_back(b.star(), a.star());
  return {p.shape(), out};
}

OppPerturbation hat_pert(const TwistedTriple& t, const Perturbation& p, const Tolerance& tol) {
  if (!t.has_real()) throw PreconditionError("hat_pert: real structure required");
  if (!p.normalized(t.sigma(), tol)) throw PreconditionError("hat_pert: perturbation is not normalized");
  std::vector<ElementPair> out;
  for (const auto& [a, b] : p.pairs()) out.emplace_back(a.star(), b.star());
  return {p.shape(), out};
}

Perturbation p_of_unitary(const TwistedTriple& t, const Unitary& u) {
  const auto& x = u.element();
  return {t.shape(), {{t.sigma().apply(x), x.star()}}};
}

OppPerturbation p_opp_of_unitary(const TwistedTriple& t, const Unitary& u) {
  const auto& x = u.element();
  return {t.shape(), {{t.sigma().apply(x).star(), x}}};
}

CMatrix act(const TwistedTriple& t, const Perturbation& p, const CMatrix& target) {
  CMatrix out = CMatrix::Zero(target.rows(), target.cols());
  for (const auto& [a, b] : p.pairs()) out += t.pi(a) * target * t.pi(b);
  return out;
}

CMatrix act_opp(const TwistedTriple& t, const OppPerturbation& p, const CMatrix& target) {
  CMatrix out = CMatrix::Zero(target.rows(), target.cols());
  for (const auto& [a, b] : p.pairs()) out += t.pi_opp(a) * target * t.pi_opp(b);
  return out;
}

CMatrix act_mu(const TwistedTriple& t, const Perturbation& p, const CMatrix& target,
               const Tolerance& tol) {
  return act(t, p, act_opp(t, hat_pert(t, p, tol), target));
}

FluctuationReport fluctuate(const TwistedTriple& t, const Perturbation& p_in, const Tolerance& tol) {
  if (!t.has_real()) throw PreconditionError("fluctuate: real structure required");
  const Perturbation p = p_in.normalized(t.sigma(), tol) ? p_in : normalize(t, p_in);
  const int eps1 = t.eps_prime();
  FluctuationReport r;
  r.omega1 = eta(t, p).op;
  r.omega1_hat = static_cast<double>(eps1) * t.jconj(r.omega1);
  const int d = t.dim();
  r.omega2 = CMatrix::Zero(d, d);
  r.omega2_alt = CMatrix::Zero(d, d);
  for (const auto& [a, b] : p.pairs()) {
    const CMatrix inner = t.opp_bracket(r.omega1, b);
    r.first_order_defect = std::max(r.first_order_defect, inner.norm());
    r.omega2 += t.hat(a) * inner;
    r.omega2_alt += t.pi(a) * t.bracket(r.omega1_hat, b);
  }
  r.omega2_agreement = rel_defect(r.omega2, r.omega2_alt);
  if (r.omega2_agreement > tol.abs_eps) throw Error("omega2 formulas diverge");
  r.d_omega = t.dirac() + r.omega1 + r.omega1_hat + r.omega2;
  r.selfadjoint_omega1 = approx_eq(r.omega1, r.omega1.adjoint(), tol);
  r.selfadjoint_d_omega = approx_eq(r.d_omega, r.d_omega.adjoint(), tol);
  r.j_compatible = approx_eq(t.jconj(r.d_omega), static_cast<double>(eps1) * r.d_omega, tol);
  return r;
}

}  // namespace spectwist
