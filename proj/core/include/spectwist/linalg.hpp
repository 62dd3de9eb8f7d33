// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spectwist {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised on incompatible dimensions or malformed shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Raised when an operation's mathematical precondition is violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

struct Tolerance {
  double abs_eps = 1e-10;

  Tolerance() = default;
  explicit Tolerance(double eps);
};

bool all_finite(const CMatrix& m);
void require_finite(const CMatrix& m, const std::string& what);
void require_square(const CMatrix& m, const std::string& what);
void require_same_shape(const CMatrix& a, const CMatrix& b,
                        const std::string& what);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// ||x-y||_F / max(1, ||x||_F, ||y||_F)
double rel_defect(const CMatrix& x, const CMatrix& y);
bool approx_eq(const CMatrix& x, const CMatrix& y, const Tolerance& tol = {});

// Inverse of a square matrix; throws PreconditionError with `what` if singular.
CMatrix inverse(const CMatrix& m, const std::string& what = "matrix not invertible");

CMatrix identity(Eigen::Index n);
CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j);

cplx random_complex(Rng& rng);
CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
CMatrix random_hermitian(Eigen::Index n, Rng& rng);
CMatrix random_unitary(Eigen::Index n, Rng& rng);

// Orthonormal basis of the column space of m, as the columns of an isometry.
CMatrix range_isometry(const CMatrix& m, double rank_tol = 1e-9);

// Antilinear operator psi -> mat * conj(psi).
class AntilinearOp {
 public:
  AntilinearOp() = default;
  explicit AntilinearOp(CMatrix mat);

  const CMatrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

  CVector apply(const CVector& psi) const;
  // J T J^{-1} as a linear matrix.
  CMatrix conjugate(const CMatrix& t) const;
  // J^2 as a linear matrix (mat * conj(mat)).
  CMatrix square() const;
  bool is_isometry(const Tolerance& tol = {}) const;
  AntilinearOp inverse() const;

 private:
  CMatrix mat_;
  CMatrix mat_inv_;
};

// mat * conj(t) * mat^{-1}
CMatrix conjugate_by(const AntilinearOp& j, const CMatrix& t);

}  // namespace spectwist
