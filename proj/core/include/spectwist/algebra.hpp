// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "spectwist/linalg.hpp"

namespace spectwist {

// Block dimensions of a multi-matrix algebra M_{n_1}(C) + ... + M_{n_B}(C).
class AlgebraShape {
 public:
  AlgebraShape() = default;
  explicit AlgebraShape(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const { return dims_; }
  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int dim(int k) const { return dims_.at(static_cast<size_t>(k)); }
  // complex dimension: sum of n_k^2
  int algebra_dim() const;

  // Enumerates matrix units E^(k)_ij in the order (k, i, j) lexicographic.
  struct Unit {
    int k, i, j;
  };
  std::vector<Unit> units() const;

  bool operator==(const AlgebraShape& o) const { return dims_ == o.dims_; }
  bool operator!=(const AlgebraShape& o) const { return !(*this == o); }

  // M_n(A) realized as the multi-matrix algebra with blocks n * n_k.
  AlgebraShape amplified(int n) const;

 private:
  std::vector<int> dims_;
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(AlgebraShape shape, std::vector<CMatrix> blocks);

  static AlgebraElement zero(const AlgebraShape& shape);
  static AlgebraElement unit(const AlgebraShape& shape);
  static AlgebraElement matrix_unit(const AlgebraShape& shape, int k, int i, int j);
  static AlgebraElement random(const AlgebraShape& shape, Rng& rng);
  static AlgebraElement random_unitary(const AlgebraShape& shape, Rng& rng);

  const AlgebraShape& shape() const { return shape_; }
  const std::vector<CMatrix>& blocks() const { return blocks_; }
  const CMatrix& block(int k) const { return blocks_.at(static_cast<size_t>(k)); }
  CMatrix& block(int k) { return blocks_.at(static_cast<size_t>(k)); }

  AlgebraElement star() const;
  double norm() const;
  // Block-diagonal matrix of the blocks, the defining representation.
  CMatrix block_diagonal() const;

 private:
  AlgebraShape shape_;
  std::vector<CMatrix> blocks_;
};

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(cplx s, const AlgebraElement& a);

inline AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }
inline AlgebraElement alg_add(const AlgebraElement& a, const AlgebraElement& b) { return a + b; }
inline AlgebraElement alg_star(const AlgebraElement& a) { return a.star(); }
inline AlgebraElement alg_unit(const AlgebraShape& s) { return AlgebraElement::unit(s); }

// max over blocks of the relative Frobenius defect
double rel_defect(const AlgebraElement& a, const AlgebraElement& b);
bool approx_eq(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& tol = {});

// sigma(a)_{perm(k)} = S_k a_k S_k^{-1}
class Automorphism {
 public:
  Automorphism() = default;
  Automorphism(AlgebraShape shape, std::vector<int> perm, std::vector<CMatrix> conj);

  static Automorphism identity(const AlgebraShape& shape);
  // Exchanges the first and second half of the blocks; requires matching halves.
  static Automorphism flip(const AlgebraShape& shape);
  // Recovers perm and conjugators from an automorphism given as a black box.
  static Automorphism from_map(const AlgebraShape& shape,
                               const std::function<AlgebraElement(const AlgebraElement&)>& f);

  const AlgebraShape& shape() const { return shape_; }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<CMatrix>& conjugators() const { return conj_; }

  AlgebraElement apply(const AlgebraElement& a) const;
  AlgebraElement apply_inverse(const AlgebraElement& a) const;
  Automorphism inverse() const;
  // (*this) o other
  Automorphism compose(const Automorphism& other) const;

 private:
  AlgebraShape shape_;
  std::vector<int> perm_;
  std::vector<CMatrix> conj_;
  std::vector<CMatrix> conj_inv_;
};

inline AlgebraElement apply_automorphism(const Automorphism& s, const AlgebraElement& a) {
  return s.apply(a);
}
inline Automorphism inverse_automorphism(const Automorphism& s) { return s.inverse(); }

struct RegularityReport {
  double max_defect = 0.0;
  bool passed = true;
};

// max over matrix units and random samples of ||sigma(a*) - (sigma^{-1}(a))*||
RegularityReport check_regularity(const Automorphism& sigma, int samples, Rng& rng,
                                  const Tolerance& tol = {});

class Unitary {
 public:
  explicit Unitary(AlgebraElement u, const Tolerance& tol = {});
  const AlgebraElement& element() const { return u_; }

 private:
  AlgebraElement u_;
};

}  // namespace spectwist
