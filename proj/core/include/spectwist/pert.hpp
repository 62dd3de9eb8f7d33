// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "spectwist/triple.hpp"

namespace spectwist {

using ElementPair = std::pair<AlgebraElement, AlgebraElement>;

// Formal sum sum_j a_j (x) b_j° in the enveloping algebra.
class Perturbation {
 public:
  Perturbation() = default;
  Perturbation(AlgebraShape shape, std::vector<ElementPair> pairs);

  static Perturbation unit(const AlgebraShape& shape);
  // Random pairs, then normalized by appending (e - sum a sigma(b), e).
  static Perturbation random_normalized(const AlgebraShape& shape, const Automorphism& sigma,
                                        int npairs, Rng& rng);

  const AlgebraShape& shape() const { return shape_; }
  const std::vector<ElementPair>& pairs() const { return pairs_; }
  size_t size() const { return pairs_.size(); }

  // sum_j a_j sigma(b_j)
  AlgebraElement normalization(const Automorphism& sigma) const;
  bool normalized(const Automorphism& sigma, const Tolerance& tol = {}) const;

  Perturbation scaled(cplx s) const;
  Perturbation concat(const Perturbation& other) const;

 private:
  AlgebraShape shape_;
  std::vector<ElementPair> pairs_;
};

// Formal sum sum_j a_j° (x) b_j, normalized when sum_j b_j sigma(a_j) = e.
class OppPerturbation {
 public:
  OppPerturbation() = default;
  OppPerturbation(AlgebraShape shape, std::vector<ElementPair> pairs);

  static OppPerturbation unit(const AlgebraShape& shape);

  const AlgebraShape& shape() const { return shape_; }
  const std::vector<ElementPair>& pairs() const { return pairs_; }

  AlgebraElement normalization(const Automorphism& sigma) const;
  bool normalized(const Automorphism& sigma, const Tolerance& tol = {}) const;

 private:
  AlgebraShape shape_;
  std::vector<ElementPair> pairs_;
};

struct TwistedOneForm {
  CMatrix op;
  Perturbation source;
};

struct FluctuationReport {
  CMatrix omega1;
  CMatrix omega1_hat;
  CMatrix omega2;
  // the second assembly of omega2, sum_j pi(a_j)[omega1_hat, pi(b_j)]_sigma
  CMatrix omega2_alt;
  CMatrix d_omega;
  double omega2_agreement = 0.0;
  bool selfadjoint_omega1 = false;
  bool selfadjoint_d_omega = false;
  bool j_compatible = false;
  double first_order_defect = 0.0;
};

TwistedOneForm eta(const TwistedTriple& t, const Perturbation& p);

// Bimodule structure on one-forms: a.w.b = sigma(a) w b, and on opposite
// one-forms a.w°.b = sigma°(b°) w° a°.
CMatrix form_left(const TwistedTriple& t, const AlgebraElement& a, const CMatrix& w);
CMatrix form_right(const TwistedTriple& t, const CMatrix& w, const AlgebraElement& b);
CMatrix opp_form_left(const TwistedTriple& t, const AlgebraElement& a, const CMatrix& w);
CMatrix opp_form_right(const TwistedTriple& t, const CMatrix& w, const AlgebraElement& b);
Perturbation normalize(const TwistedTriple& t, const Perturbation& p);
Perturbation pert_mul(const Perturbation& p, const Perturbation& q);
Perturbation eta_adjoint_pairs(const TwistedTriple& t, const Perturbation& p,
                               const Tolerance& tol = {});

OppPerturbation opp_mul(const OppPerturbation& p, const OppPerturbation& q);
CMatrix eta_opp(const TwistedTriple& t, const OppPerturbation& p);
OppPerturbation eta_opp_adjoint_pairs(const TwistedTriple& t, const OppPerturbation& p,
                                      const Tolerance& tol = {});
OppPerturbation hat_pert(const TwistedTriple& t, const Perturbation& p, const Tolerance& tol = {});

// p(u) = sigma(u) (x) (u*)°  and  p°(u) = sigma°(u^) (x) u^*
Perturbation p_of_unitary(const TwistedTriple& t, const Unitary& u);
OppPerturbation p_opp_of_unitary(const TwistedTriple& t, const Unitary& u);

// sum_j pi(a_j) T pi(b_j)
CMatrix act(const TwistedTriple& t, const Perturbation& p, const CMatrix& target);
// sum_j pi°(a_j°) T pi°(b_j°)
CMatrix act_opp(const TwistedTriple& t, const OppPerturbation& p, const CMatrix& target);
// action of mu(p) = p (x) hat(p)
CMatrix act_mu(const TwistedTriple& t, const Perturbation& p, const CMatrix& target,
               const Tolerance& tol = {});

FluctuationReport fluctuate(const TwistedTriple& t, const Perturbation& p, const Tolerance& tol = {});

}  // namespace spectwist
