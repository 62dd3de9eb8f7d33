// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include "spectwist/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace spectwist {

Tolerance::Tolerance(double eps) : abs_eps(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw PreconditionError("tolerance must be a positive finite number");
  }
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_finite(const CMatrix& m, const std::string& what) {
  if (!all_finite(m)) throw PreconditionError(what + ": non-finite entry");
}

void require_square(const CMatrix& m, const std::string& what) {
  if (m.rows() != m.cols()) {
    throw ShapeError(what + ": expected a square matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b,
                        const std::string& what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(what + ": shape mismatch " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double rel_defect(const CMatrix& x, const CMatrix& y) {
  require_same_shape(x, y, "rel_defect");
  const double scale = std::max({1.0, x.norm(), y.norm()});
  return (x - y).norm() / scale;
}

bool approx_eq(const CMatrix& x, const CMatrix& y, const Tolerance& tol) {
  require_same_shape(x, y, "approx_eq");
  return rel_defect(x, y) <= tol.abs_eps;
}

CMatrix inverse(const CMatrix& m, const std::string& what) {
  require_square(m, what);
  Eigen::FullPivLU<CMatrix> lu(m);
  if (!lu.isInvertible()) throw PreconditionError(what);
  return lu.inverse();
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

cplx random_complex(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = random_complex(rng);
  return m;
}

CMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  CMatrix x = random_matrix(n, n, rng);
  return 0.5 * (x + x.adjoint());
}

CMatrix random_unitary(Eigen::Index n, Rng& rng) {
  CMatrix x = random_matrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(x);
  CMatrix q = qr.householderQ();
  // fix the phase ambiguity so the distribution is Haar
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

CMatrix range_isometry(const CMatrix& m, double rank_tol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  const double top = s.size() > 0 ? s(0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * std::max(1.0, top)) ++rank;
  return svd.matrixU().leftCols(rank);
}

AntilinearOp::AntilinearOp(CMatrix mat) : mat_(std::move(mat)) {
  require_square(mat_, "antilinear operator");
  require_finite(mat_, "antilinear operator");
  mat_inv_ = spectwist::inverse(mat_, "real structure not invertible");
}

CVector AntilinearOp::apply(const CVector& psi) const {
  if (psi.size() != mat_.cols())
    throw ShapeError("antilinear operator: vector size mismatch");
  return mat_ * psi.conjugate();
}

CMatrix AntilinearOp::conjugate(const CMatrix& t) const {
  require_square(t, "conjugate_by");
  if (t.rows() != mat_.rows())
    throw ShapeError("conjugate_by: operator dimension mismatch");
  return mat_ * t.conjugate() * mat_inv_;
}

CMatrix AntilinearOp::square() const { return mat_ * mat_.conjugate(); }

bool AntilinearOp::is_isometry(const Tolerance& tol) const {
  return approx_eq(mat_.adjoint() * mat_, identity(mat_.rows()), tol);
}

AntilinearOp AntilinearOp::inverse() const {
  // (mat K)^{-1} = K mat^{-1} = conj(mat^{-1}) K
  return AntilinearOp(mat_inv_.conjugate());
}

CMatrix conjugate_by(const AntilinearOp& j, const CMatrix& t) {
  if (j.dim() == 0) throw PreconditionError("real structure not invertible");
  return j.conjugate(t);
}

}  // namespace spectwist
