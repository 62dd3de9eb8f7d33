// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spectwist/algebra.hpp"

namespace spectwist {

// pi(E^(k)_ij) for every matrix unit, in AlgebraShape::units() order.
class Representation {
 public:
  Representation() = default;
  Representation(AlgebraShape shape, int dim, std::vector<CMatrix> unit_images);

  static Representation from_function(const AlgebraShape& shape, int dim,
                                      const std::function<CMatrix(const AlgebraElement&)>& f);

  const AlgebraShape& shape() const { return shape_; }
  int dim() const { return dim_; }
  const std::vector<CMatrix>& unit_images() const { return images_; }
  const CMatrix& unit_image(int k, int i, int j) const;

  CMatrix apply(const AlgebraElement& a) const;

 private:
  AlgebraShape shape_;
  int dim_ = 0;
  std::vector<CMatrix> images_;
  std::vector<int> offsets_;
};

// (epsilon, epsilon', epsilon''); 0 marks an undetermined sign
struct KOSigns {
  int eps = 0;
  int eps_prime = 0;
  int eps_double_prime = 0;
  bool operator==(const KOSigns&) const = default;
};

// KO-dimension mod 8 for a sign triple, or -1 when the signs match no entry.
// For ungraded triples pass eps_double_prime = 0.
int ko_dimension(const KOSigns& s);

class TwistedTriple {
 public:
  TwistedTriple() = default;
  TwistedTriple(Representation rep, CMatrix dirac, Automorphism sigma,
                std::optional<CMatrix> grading = std::nullopt,
                std::optional<AntilinearOp> real = std::nullopt);

  const AlgebraShape& shape() const { return rep_.shape(); }
  int dim() const { return rep_.dim(); }
  const Representation& rep() const { return rep_; }
  const CMatrix& dirac() const { return dirac_; }
  const Automorphism& sigma() const { return sigma_; }
  const std::optional<CMatrix>& grading() const { return grading_; }
  const std::optional<AntilinearOp>& real() const { return real_; }
  bool has_real() const { return real_.has_value(); }
  bool has_grading() const { return grading_.has_value(); }

  // Signs detected from J^2, JDJ^-1 and J Gamma J^-1.
  const KOSigns& signs() const { return signs_; }
  // epsilon'; throws if J is absent or JD != +-DJ
  int eps_prime() const;

  TwistedTriple with_dirac(CMatrix d) const;

  CMatrix pi(const AlgebraElement& a) const { return rep_.apply(a); }
  // D pi(a) - pi(sigma(a)) D
  CMatrix delta(const AlgebraElement& a) const;
  // X pi(a) - pi(sigma(a)) X
  CMatrix bracket(const CMatrix& x, const AlgebraElement& a) const;

  // J X J^-1
  CMatrix jconj(const CMatrix& x) const;
  // J pi(a) J^-1
  CMatrix hat(const AlgebraElement& a) const;
  // pi°(a°) = J pi(a)* J^-1
  CMatrix pi_opp(const AlgebraElement& a) const;
  // [D, pi°(a°)]_sigma°, with pi°(sigma°(a°)) = J pi(sigma(a*)) J^-1
  CMatrix delta_opp(const AlgebraElement& a) const;
  // X hat(c) - hat(sigma(c)) X
  CMatrix opp_bracket(const CMatrix& x, const AlgebraElement& c) const;

 private:
  void require_real(const char* what) const;

  Representation rep_;
  CMatrix dirac_;
  Automorphism sigma_;
  std::optional<CMatrix> grading_;
  std::optional<AntilinearOp> real_;
  KOSigns signs_;
};

inline CMatrix twisted_commutator(const TwistedTriple& t, const AlgebraElement& a) {
  return t.delta(a);
}
inline CMatrix pi_opp(const TwistedTriple& t, const AlgebraElement& a) { return t.pi_opp(a); }
inline CMatrix hat(const TwistedTriple& t, const AlgebraElement& a) { return t.hat(a); }
inline CMatrix twisted_commutator_opp(const TwistedTriple& t, const AlgebraElement& a) {
  return t.delta_opp(a);
}

// ||[[D, pi(a)]_sigma, pi°(b°)]_sigma°||_F
double first_order_defect(const TwistedTriple& t, const AlgebraElement& a,
                          const AlgebraElement& b);

struct AxiomResult {
  std::string name;
  double defect = 0.0;
  bool passed = true;
  bool mandatory = true;
  std::string note;
};

struct FirstOrderWitness {
  AlgebraShape::Unit a{0, 0, 0};
  AlgebraShape::Unit b{0, 0, 0};
  double defect = 0.0;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  KOSigns signs;
  int ko_dim = -1;
  std::vector<std::string> warnings;
  FirstOrderWitness first_order_witness;

  const AxiomResult* find(const std::string& name) const;
  bool mandatory_passed() const;
  bool first_order_holds() const;
};

AxiomReport check_axioms(const TwistedTriple& t, int samples, Rng& rng,
                         const Tolerance& tol = {});

}  // namespace spectwist
