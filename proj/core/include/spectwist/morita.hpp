// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectwist/pert.hpp"

namespace spectwist {

// Elements of M_n(A) are AlgebraElements over shape.amplified(n); entry (i,j)
// of block k is the n_k x n_k sub-block at (i n_k, j n_k).
AlgebraElement mn_entry(const AlgebraElement& x, int n, int i, int j);
AlgebraElement mn_from_entries(const AlgebraShape& shape, int n,
                               const std::vector<std::vector<AlgebraElement>>& entries);
// sigma applied entrywise
Automorphism amplify(const Automorphism& sigma, int n);
// block operator (pi(x_ij)) on H^n
CMatrix pi_n(const TwistedTriple& t, const AlgebraElement& x, int n);
// right multiplication on row vectors of H^n: block (i,j) = hat(x_ji*)
CMatrix right_mult_n(const TwistedTriple& t, const AlgebraElement& x, int n);

// Column (right module) or row (left module) vector of algebra elements.
using ModuleVector = std::vector<AlgebraElement>;

struct IdempotentData {
  int n = 1;
  AlgebraElement e;
  bool twist_invariant = false;
  bool twist_commuting = false;
};

IdempotentData make_idempotent(const TwistedTriple& t, int n, AlgebraElement e);

struct IdempotentReport {
  double square = 0.0;          // e^2 - e
  double selfadjoint = 0.0;     // e* - e
  double lift = 0.0;            // e sigma(e) e - e
  double lift_inverse = 0.0;    // e sigma^-1(e) e - e
  double twist_invariance = 0.0;  // sigma(e) - e
  double twist_commutation = 0.0;  // max_ij ||delta(e_ij)||
  bool projection = false;
  bool lift_invertible = false;
  bool twist_invariant = false;
  bool twist_commuting = false;
  bool admissible() const { return projection && lift_invertible && (twist_invariant || twist_commuting); }
};

IdempotentReport check_idempotent(const TwistedTriple& t, const IdempotentData& e,
                                  const Tolerance& tol = {});

// Throws PreconditionError naming the violated condition unless admissible.
void require_admissible(const TwistedTriple& t, const IdempotentData& e, const Tolerance& tol = {});

class ModuleLift {
 public:
  ModuleLift(const TwistedTriple& t, IdempotentData e);

  const IdempotentData& idempotent() const { return e_; }
  // e sigma(xi), e sigma^-1(xi) on columns of e A^n
  ModuleVector sigma_lift(const ModuleVector& xi) const;
  ModuleVector sigma_lift_inv(const ModuleVector& xi) const;
  // sigma(zeta) e, sigma^-1(zeta) e on rows of A^n e
  ModuleVector sigma_lift_left(const ModuleVector& zeta) const;
  ModuleVector sigma_lift_left_inv(const ModuleVector& zeta) const;
  // e sigma(b) e on B = e M_n(A) e
  AlgebraElement sigma_prime(const AlgebraElement& b) const;
  AlgebraElement sigma_prime_inv(const AlgebraElement& b) const;

  ModuleVector random_right_vector(Rng& rng) const;
  ModuleVector random_left_vector(Rng& rng) const;
  AlgebraElement random_b(Rng& rng) const;

 private:
  const TwistedTriple* t_;
  IdempotentData e_;
  Automorphism sigma_n_;
};

struct LiftReport {
  double roundtrip = 0.0;     // Sigma o Sigma^-1 and Sigma^-1 o Sigma
  double module_law = 0.0;    // Sigma(xi a) - Sigma(xi) sigma(a)
  double multiplicative = 0.0;
  double sigma_prime_roundtrip = 0.0;
  double regularity = 0.0;    // sigma'(b*) - (sigma'^-1(b))*
  bool passed = false;
};

// Verifies the lift invariants on random samples; throws on inadmissible e.
ModuleLift lift_maps(const TwistedTriple& t, const IdempotentData& e, int samples, Rng& rng,
                     LiftReport* report = nullptr, const Tolerance& tol = {});
// Same checks without the admissibility precondition.
LiftReport lift_report(const TwistedTriple& t, const IdempotentData& e, int samples, Rng& rng,
                       const Tolerance& tol = {});

enum class Side { right, left };

// nabla = nabla_0 + M. For the right side the block (i,j) of `form` is the
// operator m_ij; for the left side it is the operator of n_ij°.
struct HermitianConnection {
  Side side = Side::right;
  int n = 1;
  CMatrix form;
  // generating pairs when n = 1, used for the self-Morita fluctuation
  std::optional<Perturbation> source;
};

HermitianConnection grassmann(const TwistedTriple& t, const IdempotentData& e, Side side);
// Right connection with M assembled from one-form pair lists (row-major n x n).
HermitianConnection right_connection(const TwistedTriple& t, const IdempotentData& e,
                                     const std::vector<Perturbation>& forms);

// Connection components: right side omega_j with nabla xi = sum_j col_j(e) (x) omega_j,
// left side omega_j with nabla zeta = sum_j omega_j (x) row_j(e).
std::vector<CMatrix> apply_connection(const TwistedTriple& t, const IdempotentData& e,
                                      const HermitianConnection& c, const ModuleVector& v);

struct HermitianReport {
  double max_defect = 0.0;
  double form_selfadjoint = 0.0;
  double form_projected = 0.0;
  bool passed = false;
};

HermitianReport check_hermitian(const TwistedTriple& t, const IdempotentData& e,
                                const HermitianConnection& c, int samples, Rng& rng,
                                const Tolerance& tol = {});

HermitianConnection conjugate_connection(const TwistedTriple& t, const IdempotentData& e,
                                         const HermitianConnection& right,
                                         const Tolerance& tol = {});
// epsilon' J omega_j J^-1 on each component
std::vector<CMatrix> conjugate_components(const TwistedTriple& t, const std::vector<CMatrix>& omega);

// B = e M_n(A) e as a multi-matrix algebra: c_k <-> V_k c_k V_k*.
struct BRealization {
  AlgebraShape shape;
  int n = 1;
  AlgebraShape full_shape;
  std::vector<int> source_block;
  std::vector<CMatrix> isometry;

  AlgebraElement to_full(const AlgebraElement& c) const;
  AlgebraElement from_full(const AlgebraElement& x) const;
};

BRealization realize_b(const IdempotentData& e);

struct ConstructedSpace {
  CMatrix projection;  // on the ambient space
  CMatrix isometry;    // ambient -> realized coordinates
};

struct RightMorita {
  BRealization b;
  ConstructedSpace h;
  CMatrix dirac_full;  // on H^n
  std::function<CMatrix(const AlgebraElement&)> pi_full;
  TwistedTriple triple;  // realized, with sigma'
  double selfadjoint_defect = 0.0;
  double bracket_defect = 0.0;
};

struct LeftMorita {
  BRealization b;
  ConstructedSpace h;
  CMatrix dirac_full;  // on rows of H^n
  TwistedTriple triple;  // realized on B via transpose, with sigma'^-1
  double selfadjoint_defect = 0.0;
  double bracket_defect = 0.0;
};

struct RealMorita {
  BRealization b;
  ConstructedSpace h;
  CMatrix dirac_full;        // D' on M_n(H)
  CMatrix dirac_rows_route;  // right connection on rows of D_L
  CMatrix dirac_cols_route;  // D'' : conjugate connection on columns of D_R
  CMatrix j_full;
  TwistedTriple triple;
  double route_defect = 0.0;
  bool delegated_to_fluctuation = false;
};

RightMorita build_right_triple(const TwistedTriple& t, const IdempotentData& e,
                               const HermitianConnection& c, const Tolerance& tol = {});
LeftMorita build_left_triple(const TwistedTriple& t, const IdempotentData& e,
                             const HermitianConnection& c, const Tolerance& tol = {});
RealMorita build_real_triple(const TwistedTriple& t, const IdempotentData& e,
                             const HermitianConnection& right, const Tolerance& tol = {});

}  // namespace spectwist
