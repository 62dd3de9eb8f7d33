// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include "spectwist/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace spectwist {

AlgebraShape::AlgebraShape(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw ShapeError("algebra shape: no blocks");
  for (int n : dims_)
    if (n < 1) throw ShapeError("algebra shape: block dimension must be >= 1");
}

int AlgebraShape::algebra_dim() const {
  int s = 0;
  for (int n : dims_) s += n * n;
  return s;
}

std::vector<AlgebraShape::Unit> AlgebraShape::units() const {
  std::vector<Unit> out;
  out.reserve(static_cast<size_t>(algebra_dim()));
  for (int k = 0; k < num_blocks(); ++k)
    for (int i = 0; i < dims_[k]; ++i)
      for (int j = 0; j < dims_[k]; ++j) out.push_back({k, i, j});
  return out;
}

AlgebraShape AlgebraShape::amplified(int n) const {
  if (n < 1) throw ShapeError("amplification rank must be >= 1");
  std::vector<int> d;
  for (int x : dims_) d.push_back(n * x);
  return AlgebraShape(d);
}

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<CMatrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != shape_.num_blocks())
    throw ShapeError("algebra element: wrong number of blocks");
  for (int k = 0; k < shape_.num_blocks(); ++k) {
    const auto& b = blocks_[static_cast<size_t>(k)];
    if (b.rows() != shape_.dim(k) || b.cols() != shape_.dim(k))
      throw ShapeError("algebra element: block " + std::to_string(k) + " has wrong size");
    require_finite(b, "algebra element");
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
  std::vector<CMatrix> b;
  for (int n : shape.block_dims()) b.push_back(CMatrix::Zero(n, n));
  return {shape, b};
}

AlgebraElement AlgebraElement::unit(const AlgebraShape& shape) {
  std::vector<CMatrix> b;
  for (int n : shape.block_dims()) b.push_back(CMatrix::Identity(n, n));
  return {shape, b};
}

AlgebraElement AlgebraElement::matrix_unit(const AlgebraShape& shape, int k, int i, int j) {
  AlgebraElement a = zero(shape);
  a.block(k)(i, j) = 1.0;
  return a;
}

AlgebraElement AlgebraElement::random(const AlgebraShape& shape, Rng& rng) {
  std::vector<CMatrix> b;
  for (int n : shape.block_dims()) b.push_back(random_matrix(n, n, rng));
  return {shape, b};
}

AlgebraElement AlgebraElement::random_unitary(const AlgebraShape& shape, Rng& rng) {
  std::vector<CMatrix> b;
  for (int n : shape.block_dims()) b.push_back(spectwist::random_unitary(n, rng));
  return {shape, b};
}

AlgebraElement AlgebraElement::star() const {
  std::vector<CMatrix> b;
  for (const auto& x : blocks_) b.push_back(x.adjoint());
  return {shape_, b};
}

double AlgebraElement::norm() const {
  double s = 0;
  for (const auto& x : blocks_) s += x.squaredNorm();
  return std::sqrt(s);
}

CMatrix AlgebraElement::block_diagonal() const {
  int n = 0;
  for (int d : shape_.block_dims()) n += d;
  CMatrix m = CMatrix::Zero(n, n);
  int off = 0;
  for (int k = 0; k < shape_.num_blocks(); ++k) {
    m.block(off, off, shape_.dim(k), shape_.dim(k)) = block(k);
    off += shape_.dim(k);
  }
  return m;
}

namespace {
void require_same(const AlgebraElement& a, const AlgebraElement& b, const char* what) {
  if (a.shape() != b.shape()) throw ShapeError(std::string(what) + ": algebra shape mismatch");
}
}  // namespace

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b, "alg_mul");
  std::vector<CMatrix> out;
  for (int k = 0; k < a.shape().num_blocks(); ++k) out.push_back(a.block(k) * b.block(k));
  return {a.shape(), out};
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b, "alg_add");
  std::vector<CMatrix> out;
  for (int k = 0; k < a.shape().num_blocks(); ++k) out.push_back(a.block(k) + b.block(k));
  return {a.shape(), out};
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b, "alg_sub");
  std::vector<CMatrix> out;
  for (int k = 0; k < a.shape().num_blocks(); ++k) out.push_back(a.block(k) - b.block(k));
  return {a.shape(), out};
}

AlgebraElement operator*(cplx s, const AlgebraElement& a) {
  std::vector<CMatrix> out;
  for (const auto& x : a.blocks()) out.push_back(s * x);
  return {a.shape(), out};
}

double rel_defect(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b, "rel_defect");
  double worst = 0;
  for (int k = 0; k < a.shape().num_blocks(); ++k)
    worst = std::max(worst, rel_defect(a.block(k), b.block(k)));
  return worst;
}

bool approx_eq(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& tol) {
  return rel_defect(a, b) <= tol.abs_eps;
}

Automorphism::Automorphism(AlgebraShape shape, std::vector<int> perm, std::vector<CMatrix> conj)
    : shape_(std::move(shape)), perm_(std::move(perm)), conj_(std::move(conj)) {
  const int nb = shape_.num_blocks();
  if (static_cast<int>(perm_.size()) != nb || static_cast<int>(conj_.size()) != nb)
    throw ShapeError("automorphism: perm/conjugator count must equal the number of blocks");
  std::vector<int> seen(static_cast<size_t>(nb), 0);
  for (int k = 0; k < nb; ++k) {
    const int p = perm_[static_cast<size_t>(k)];
    if (p < 0 || p >= nb || seen[static_cast<size_t>(p)]++)
      throw ShapeError("automorphism: perm is not a permutation");
    if (shape_.dim(p) != shape_.dim(k))
      throw ShapeError("automorphism: perm does not preserve block dimensions");
    const auto& s = conj_[static_cast<size_t>(k)];
    if (s.rows() != shape_.dim(k) || s.cols() != shape_.dim(k))
      throw ShapeError("automorphism: conjugator " + std::to_string(k) + " has wrong size");
    require_finite(s, "automorphism conjugator");
    conj_inv_.push_back(spectwist::inverse(s, "automorphism: conjugator " +
                                                  std::to_string(k) + " is singular"));
  }
}

Automorphism Automorphism::identity(const AlgebraShape& shape) {
  std::vector<int> perm(static_cast<size_t>(shape.num_blocks()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<CMatrix> c;
  for (int n : shape.block_dims()) c.push_back(CMatrix::Identity(n, n));
  return {shape, perm, c};
}

Automorphism Automorphism::flip(const AlgebraShape& shape) {
  const int nb = shape.num_blocks();
  if (nb % 2 != 0) throw ShapeError("flip: odd number of blocks");
  const int h = nb / 2;
  std::vector<int> perm;
  for (int k = 0; k < nb; ++k) perm.push_back(k < h ? k + h : k - h);
  std::vector<CMatrix> c;
  for (int n : shape.block_dims()) c.push_back(CMatrix::Identity(n, n));
  return {shape, perm, c};
}

Automorphism Automorphism::from_map(
    const AlgebraShape& shape, const std::function<AlgebraElement(const AlgebraElement&)>& f) {
  const int nb = shape.num_blocks();
  std::vector<int> perm(static_cast<size_t>(nb), -1);
  std::vector<CMatrix> conj(static_cast<size_t>(nb));
  for (int k = 0; k < nb; ++k) {
    const AlgebraElement img = f(AlgebraElement::matrix_unit(shape, k, 0, 0));
    int target = -1;
    for (int l = 0; l < nb; ++l)
      if (img.block(l).norm() > 1e-9) {
        if (target >= 0) throw PreconditionError("from_map: image of a unit spans several blocks");
        target = l;
      }
    if (target < 0) throw PreconditionError("from_map: map kills a matrix unit");
    const int n = shape.dim(k);
    if (shape.dim(target) != n) throw PreconditionError("from_map: block dimension changes");
    // w: the largest column of f(E_00), a vector in the range of S e_0
    Eigen::Index col = 0;
    img.block(target).colwise().norm().maxCoeff(&col);
    const CVector w = img.block(target).col(col);
    CMatrix s(n, n);
    for (int i = 0; i < n; ++i)
      s.col(i) = f(AlgebraElement::matrix_unit(shape, k, i, 0)).block(target) * w;
    perm[static_cast<size_t>(k)] = target;
    conj[static_cast<size_t>(k)] = s;
  }
  return {shape, perm, conj};
}

AlgebraElement Automorphism::apply(const AlgebraElement& a) const {
  if (a.shape() != shape_) throw ShapeError("apply_automorphism: shape mismatch");
  std::vector<CMatrix> out(static_cast<size_t>(shape_.num_blocks()));
  for (int k = 0; k < shape_.num_blocks(); ++k) {
    const auto ku = static_cast<size_t>(k);
    out[static_cast<size_t>(perm_[ku])] = conj_[ku] * a.block(k) * conj_inv_[ku];
  }
  return {shape_, out};
}

AlgebraElement Automorphism::apply_inverse(const AlgebraElement& a) const {
  if (a.shape() != shape_) throw ShapeError("apply_automorphism: shape mismatch");
  std::vector<CMatrix> out(static_cast<size_t>(shape_.num_blocks()));
  for (int k = 0; k < shape_.num_blocks(); ++k) {
    const auto ku = static_cast<size_t>(k);
    out[ku] = conj_inv_[ku] * a.block(perm_[ku]) * conj_[ku];
  }
  return {shape_, out};
}

Automorphism Automorphism::inverse() const {
  const int nb = shape_.num_blocks();
  std::vector<int> perm(static_cast<size_t>(nb));
  std::vector<CMatrix> c(static_cast<size_t>(nb));
  for (int k = 0; k < nb; ++k) {
    const auto ku = static_cast<size_t>(k);
    const auto p = static_cast<size_t>(perm_[ku]);
    perm[p] = k;
    c[p] = conj_inv_[ku];
  }
  return {shape_, perm, c};
}

Automorphism Automorphism::compose(const Automorphism& g) const {
  if (g.shape_ != shape_) throw ShapeError("compose: shape mismatch");
  const int nb = shape_.num_blocks();
  std::vector<int> perm(static_cast<size_t>(nb));
  std::vector<CMatrix> c(static_cast<size_t>(nb));
  for (int k = 0; k < nb; ++k) {
    const auto ku = static_cast<size_t>(k);
    const auto gk = static_cast<size_t>(g.perm_[ku]);
    perm[ku] = perm_[gk];
    c[ku] = conj_[gk] * g.conj_[ku];
  }
  return {shape_, perm, c};
}

RegularityReport check_regularity(const Automorphism& sigma, int samples, Rng& rng,
                                  const Tolerance& tol) {
  if (samples < 1) throw PreconditionError("check_regularity: samples must be >= 1");
  const auto& shape = sigma.shape();
  RegularityReport r;
  auto probe = [&](const AlgebraElement& a) {
    const AlgebraElement lhs = sigma.apply(a.star());
    const AlgebraElement rhs = sigma.apply_inverse(a).star();
    r.max_defect = std::max(r.max_defect, rel_defect(lhs, rhs));
  };
  for (const auto& u : shape.units()) probe(AlgebraElement::matrix_unit(shape, u.k, u.i, u.j));
  for (int s = 0; s < samples; ++s) probe(AlgebraElement::random(shape, rng));
  r.passed = r.max_defect <= tol.abs_eps;
  return r;
}

Unitary::Unitary(AlgebraElement u, const Tolerance& tol) : u_(std::move(u)) {
  const AlgebraElement e = AlgebraElement::unit(u_.shape());
  if (!approx_eq(u_ * u_.star(), e, tol) || !approx_eq(u_.star() * u_, e, tol))
    throw PreconditionError("element is not unitary");
}

}  // namespace spectwist
