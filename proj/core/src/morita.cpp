// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include "spectwist/morita.hpp"

#include <algorithm>

namespace spectwist {

namespace {

AlgebraShape base_shape(const AlgebraShape& full, int n) {
  std::vector<int> d;
  for (int x : full.block_dims()) {
    if (x % n != 0) throw ShapeError("M_n(A) element: block size not divisible by n");
    d.push_back(x / n);
  }
  return AlgebraShape(d);
}

void require_mn_shape(const TwistedTriple& t, const AlgebraElement& x, int n) {
  if (x.shape() != t.shape().amplified(n))
    throw ShapeError("M_n(A) element does not match the algebra shape amplified by n");
}

CMatrix block_of(const CMatrix& m, int i, int j, int d) { return m.block(i * d, j * d, d, d); }

// swaps block (i,j) with block (j,i)
CMatrix block_transpose(const CMatrix& m, int n, int d) {
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.block(i * d, j * d, d, d) = m.block(j * d, i * d, d, d);
  return out;
}

CMatrix conj_blocks(const TwistedTriple& t, const CMatrix& m, int n, int d) {
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.block(i * d, j * d, d, d) = t.jconj(block_of(m, i, j, d));
  return out;
}

bool is_unit(const AlgebraElement& e) { return approx_eq(e, AlgebraElement::unit(e.shape())); }

AlgebraElement transpose_blocks(const AlgebraElement& c) {
  std::vector<CMatrix> b;
  for (const auto& x : c.blocks()) b.push_back(x.transpose());
  return {c.shape(), b};
}

// Index of (i, j, r) in M_n(H) flattened.
Eigen::Index flat(int n, int d, int i, int j, int r) {
  return (static_cast<Eigen::Index>(i) * n + j) * d + r;
}

// left multiplication on M_n(H): (x Psi)_ij = sum_k pi(x_ik) Psi_kj
CMatrix left_op(const TwistedTriple& t, const AlgebraElement& x, int n) {
  const int d = t.dim();
  const Eigen::Index N = static_cast<Eigen::Index>(n) * n * d;
  CMatrix out = CMatrix::Zero(N, N);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const CMatrix p = t.pi(mn_entry(x, n, i, k));
      for (int j = 0; j < n; ++j) out.block(flat(n, d, i, j, 0), flat(n, d, k, j, 0), d, d) = p;
    }
  return out;
}

// right multiplication on M_n(H): (Psi x)_ij = sum_k hat(x_kj*) Psi_ik
CMatrix right_op(const TwistedTriple& t, const AlgebraElement& x, int n) {
  const int d = t.dim();
  const Eigen::Index N = static_cast<Eigen::Index>(n) * n * d;
  CMatrix out = CMatrix::Zero(N, N);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const CMatrix h = t.hat(mn_entry(x, n, k, j).star());
      for (int i = 0; i < n; ++i) out.block(flat(n, d, i, j, 0), flat(n, d, i, k, 0), d, d) = h;
    }
  return out;
}

// column operator X on H^n acting on every column of Psi
CMatrix cols_op(const CMatrix& x, int n, int d) {
  const Eigen::Index N = static_cast<Eigen::Index>(n) * n * d;
  CMatrix out = CMatrix::Zero(N, N);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        out.block(flat(n, d, i, j, 0), flat(n, d, k, j, 0), d, d) = block_of(x, i, k, d);
  return out;
}

// row operator Y on H^n acting on every row of Psi
CMatrix rows_op(const CMatrix& y, int n, int d) {
  const Eigen::Index N = static_cast<Eigen::Index>(n) * n * d;
  CMatrix out = CMatrix::Zero(N, N);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        out.block(flat(n, d, i, j, 0), flat(n, d, i, k, 0), d, d) = block_of(y, j, k, d);
  return out;
}

ConstructedSpace make_space(const CMatrix& projection) {
  return {projection, range_isometry(projection)};
}

void require_side(const HermitianConnection& c, Side side, int n, int d) {
  if (c.side != side)
    throw PreconditionError(side == Side::right ? "expected a right connection" : "expected a left connection");
  if (c.n != n || c.form.rows() != static_cast<Eigen::Index>(n) * d || c.form.cols() != c.form.rows())
    throw ShapeError("connection form has wrong size");
}

}  // namespace

AlgebraElement mn_entry(const AlgebraElement& x, int n, int i, int j) {
  const AlgebraShape s = base_shape(x.shape(), n);
  std::vector<CMatrix> b;
  for (int k = 0; k < s.num_blocks(); ++k) {
    const int m = s.dim(k);
    b.push_back(x.block(k).block(i * m, j * m, m, m));
  }
  return {s, b};
}

AlgebraElement mn_from_entries(const AlgebraShape& shape, int n,
                               const std::vector<std::vector<AlgebraElement>>& entries) {
  if (static_cast<int>(entries.size()) != n) throw ShapeError("M_n(A) entries: wrong row count");
  const AlgebraShape full = shape.amplified(n);
  AlgebraElement x = AlgebraElement::zero(full);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries[static_cast<size_t>(i)].size()) != n)
      throw ShapeError("M_n(A) entries: wrong column count");
    for (int j = 0; j < n; ++j) {
      const auto& a = entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (a.shape() != shape) throw ShapeError("M_n(A) entries: shape mismatch");
      for (int k = 0; k < shape.num_blocks(); ++k) {
        const int m = shape.dim(k);
        x.block(k).block(i * m, j * m, m, m) = a.block(k);
      }
    }
  }
  return x;
}

Automorphism amplify(const Automorphism& sigma, int n) {
  std::vector<CMatrix> c;
  for (const auto& s : sigma.conjugators()) c.push_back(kron(identity(n), s));
  return {sigma.shape().amplified(n), sigma.perm(), c};
}

CMatrix pi_n(const TwistedTriple& t, const AlgebraElement& x, int n) {
  require_mn_shape(t, x, n);
  const int d = t.dim();
  CMatrix out(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.block(i * d, j * d, d, d) = t.pi(mn_entry(x, n, i, j));
  return out;
}

CMatrix right_mult_n(const TwistedTriple& t, const AlgebraElement& x, int n) {
  require_mn_shape(t, x, n);
  const int d = t.dim();
  CMatrix out(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.block(i * d, j * d, d, d) = t.hat(mn_entry(x, n, j, i).star());
  return out;
}

IdempotentReport check_idempotent(const TwistedTriple& t, const IdempotentData& ed, const Tolerance& tol) {
  const int n = ed.n;
  const AlgebraElement& e = ed.e;
  require_mn_shape(t, e, n);
  const Automorphism sn = amplify(t.sigma(), n);
  IdempotentReport r;
  r.square = rel_defect(e * e, e);
  r.selfadjoint = rel_defect(e.star(), e);
  const AlgebraElement se = sn.apply(e);
  r.lift = rel_defect(e * se * e, e);
  r.lift_inverse = rel_defect(e * sn.apply_inverse(e) * e, e);
  r.twist_invariance = rel_defect(se, e);
  const double scale = std::max(1.0, t.dirac().norm());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.twist_commutation = std::max(r.twist_commutation, t.delta(mn_entry(e, n, i, j)).norm() / scale);
  r.projection = r.square <= tol.abs_eps && r.selfadjoint <= tol.abs_eps;
  r.lift_invertible = r.lift <= tol.abs_eps && r.lift_inverse <= tol.abs_eps;
  r.twist_invariant = r.twist_invariance <= tol.abs_eps;
  r.twist_commuting = r.twist_commutation <= tol.abs_eps;
  return r;
}

IdempotentData make_idempotent(const TwistedTriple& t, int n, AlgebraElement e) {
  IdempotentData d{n, std::move(e), false, false};
  const IdempotentReport r = check_idempotent(t, d);
  d.twist_invariant = r.twist_invariant;
  d.twist_commuting = r.twist_commuting;
  return d;
}

void require_admissible(const TwistedTriple& t, const IdempotentData& e, const Tolerance& tol) {
  const IdempotentReport r = check_idempotent(t, e, tol);
  if (!r.projection) throw PreconditionError("idempotent must satisfy e^2 = e = e*");
  if (!r.lift_invertible)
    throw PreconditionError("lift-invertibility violated: e sigma(e) e != e or e sigma^-1(e) e != e");
  if (!r.twist_invariant && !r.twist_commuting)
    throw PreconditionError("idempotent is neither twist-invariant nor twist-commuting with D");
}

ModuleLift::ModuleLift(const TwistedTriple& t, IdempotentData e)
    : t_(&t), e_(std::move(e)), sigma_n_(amplify(t.sigma(), e_.n)) {}

namespace {

ModuleVector col_times(const AlgebraElement& x, int n, const ModuleVector& v) {
  ModuleVector out;
  for (int i = 0; i < n; ++i) {
    AlgebraElement s = AlgebraElement::zero(v.at(0).shape());
    for (int j = 0; j < n; ++j) s = s + mn_entry(x, n, i, j) * v[static_cast<size_t>(j)];
    out.push_back(s);
  }
  return out;
}

ModuleVector row_times(const ModuleVector& v, const AlgebraElement& x, int n) {
  ModuleVector out;
  for (int i = 0; i < n; ++i) {
    AlgebraElement s = AlgebraElement::zero(v.at(0).shape());
    for (int j = 0; j < n; ++j) s = s + v[static_cast<size_t>(j)] * mn_entry(x, n, j, i);
    out.push_back(s);
  }
  return out;
}

double vec_defect(const ModuleVector& a, const ModuleVector& b) {
  double worst = 0;
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, rel_defect(a[i], b[i]));
  return worst;
}

}  // namespace

ModuleVector ModuleLift::sigma_lift(const ModuleVector& xi) const {
  ModuleVector s;
  for (const auto& x : xi) s.push_back(t_->sigma().apply(x));
  return col_times(e_.e, e_.n, s);
}

ModuleVector ModuleLift::sigma_lift_inv(const ModuleVector& xi) const {
  ModuleVector s;
  for (const auto& x : xi) s.push_back(t_->sigma().apply_inverse(x));
  return col_times(e_.e, e_.n, s);
}

ModuleVector ModuleLift::sigma_lift_left(const ModuleVector& zeta) const {
  ModuleVector s;
  for (const auto& x : zeta) s.push_back(t_->sigma().apply(x));
  return row_times(s, e_.e, e_.n);
}

ModuleVector ModuleLift::sigma_lift_left_inv(const ModuleVector& zeta) const {
  ModuleVector s;
  for (const auto& x : zeta) s.push_back(t_->sigma().apply_inverse(x));
  return row_times(s, e_.e, e_.n);
}

AlgebraElement ModuleLift::sigma_prime(const AlgebraElement& b) const {
  return e_.e * sigma_n_.apply(b) * e_.e;
}

AlgebraElement ModuleLift::sigma_prime_inv(const AlgebraElement& b) const {
  return e_.e * sigma_n_.apply_inverse(b) * e_.e;
}

ModuleVector ModuleLift::random_right_vector(Rng& rng) const {
  ModuleVector r;
  for (int j = 0; j < e_.n; ++j) r.push_back(AlgebraElement::random(t_->shape(), rng));
  return col_times(e_.e, e_.n, r);
}

ModuleVector ModuleLift::random_left_vector(Rng& rng) const {
  ModuleVector r;
  for (int j = 0; j < e_.n; ++j) r.push_back(AlgebraElement::random(t_->shape(), rng));
  return row_times(r, e_.e, e_.n);
}

AlgebraElement ModuleLift::random_b(Rng& rng) const {
  return e_.e * AlgebraElement::random(e_.e.shape(), rng) * e_.e;
}

LiftReport lift_report(const TwistedTriple& t, const IdempotentData& e, int samples, Rng& rng,
                       const Tolerance& tol) {
  const ModuleLift L(t, e);
  LiftReport r;
  for (int s = 0; s < samples; ++s) {
    const ModuleVector xi = L.random_right_vector(rng);
    r.roundtrip = std::max({r.roundtrip, vec_defect(L.sigma_lift(L.sigma_lift_inv(xi)), xi),
                            vec_defect(L.sigma_lift_inv(L.sigma_lift(xi)), xi)});
    const ModuleVector zeta = L.random_left_vector(rng);
    r.roundtrip = std::max({r.roundtrip, vec_defect(L.sigma_lift_left(L.sigma_lift_left_inv(zeta)), zeta),
                            vec_defect(L.sigma_lift_left_inv(L.sigma_lift_left(zeta)), zeta)});
    const AlgebraElement a = AlgebraElement::random(t.shape(), rng);
    ModuleVector xa;
    for (const auto& x : xi) xa.push_back(x * a);
    ModuleVector sxa;
    for (const auto& x : L.sigma_lift(xi)) sxa.push_back(x * t.sigma().apply(a));
    r.module_law = std::max(r.module_law, vec_defect(L.sigma_lift(xa), sxa));
    const AlgebraElement b1 = L.random_b(rng);
    const AlgebraElement b2 = L.random_b(rng);
    r.multiplicative = std::max(r.multiplicative,
                                rel_defect(L.sigma_prime(b1 * b2), L.sigma_prime(b1) * L.sigma_prime(b2)));
    r.sigma_prime_roundtrip = std::max({r.sigma_prime_roundtrip,
                                        rel_defect(L.sigma_prime(L.sigma_prime_inv(b1)), b1),
                                        rel_defect(L.sigma_prime_inv(L.sigma_prime(b1)), b1)});
    r.regularity = std::max(r.regularity, rel_defect(L.sigma_prime(b1.star()), L.sigma_prime_inv(b1).star()));
  }
  r.passed = std::max({r.roundtrip, r.module_law, r.multiplicative, r.sigma_prime_roundtrip, r.regularity}) <=
             tol.abs_eps;
  return r;
}

ModuleLift lift_maps(const TwistedTriple& t, const IdempotentData& e, int samples, Rng& rng,
                     LiftReport* report, const Tolerance& tol) {
  require_admissible(t, e, tol);
  const LiftReport r = lift_report(t, e, samples, rng, tol);
  if (report) *report = r;
  if (!r.passed) throw Error("lift maps fail their invariants");
  return ModuleLift(t, e);
}

HermitianConnection grassmann(const TwistedTriple& t, const IdempotentData& e, Side side) {
  const Eigen::Index nd = static_cast<Eigen::Index>(e.n) * t.dim();
  return {side, e.n, CMatrix::Zero(nd, nd), std::nullopt};
}

HermitianConnection right_connection(const TwistedTriple& t, const IdempotentData& e,
                                     const std::vector<Perturbation>& forms) {
  const int n = e.n;
  const int d = t.dim();
  if (static_cast<int>(forms.size()) != n * n) throw ShapeError("connection: expected n*n one-forms");
  CMatrix m(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.block(i * d, j * d, d, d) = eta(t, forms[static_cast<size_t>(i * n + j)]).op;
  HermitianConnection c{Side::right, n, m, std::nullopt};
  if (n == 1) c.source = forms[0];
  return c;
}

std::vector<CMatrix> apply_connection(const TwistedTriple& t, const IdempotentData& e,
                                      const HermitianConnection& c, const ModuleVector& v) {
  const int n = e.n;
  const int d = t.dim();
  require_side(c, c.side, n, d);
  if (static_cast<int>(v.size()) != n) throw ShapeError("module vector has wrong length");
  std::vector<CMatrix> out;
  for (int j = 0; j < n; ++j) {
    const auto& vj = v[static_cast<size_t>(j)];
    CMatrix w = c.side == Side::right ? t.delta(vj) : t.delta_opp(vj);
    for (int k = 0; k < n; ++k) {
      const auto& vk = v[static_cast<size_t>(k)];
      if (c.side == Side::right)
        w += block_of(c.form, j, k, d) * t.pi(vk);
      else
        w += block_of(c.form, k, j, d) * t.hat(vk.star());
    }
    out.push_back(w);
  }
  return out;
}

HermitianReport check_hermitian(const TwistedTriple& t, const IdempotentData& e,
                                const HermitianConnection& c, int samples, Rng& rng,
                                const Tolerance& tol) {
  const int n = e.n;
  const int d = t.dim();
  require_side(c, c.side, n, d);
  const ModuleLift L(t, e);
  const Automorphism sn = amplify(t.sigma(), n);
  HermitianReport r;
  r.form_selfadjoint = rel_defect(c.form, c.form.adjoint());
  if (c.side == Side::right) {
    r.form_projected = rel_defect(pi_n(t, sn.apply(e.e), n) * c.form * pi_n(t, e.e, n), c.form);
  } else {
    const CMatrix nop = block_transpose(c.form, n, d);
    r.form_projected = rel_defect(right_mult_n(t, sn.apply_inverse(e.e), n) * nop * right_mult_n(t, e.e, n), nop);
  }
  for (int s = 0; s < samples; ++s) {
    const int dd = t.dim();
    CMatrix lhs = CMatrix::Zero(dd, dd);
    CMatrix rhs;
    if (c.side == Side::right) {
      const ModuleVector xi = L.random_right_vector(rng);
      const ModuleVector xp = L.random_right_vector(rng);
      const auto w = apply_connection(t, e, c, xi);
      const auto wp = apply_connection(t, e, c, L.sigma_lift_inv(xp));
      AlgebraElement pair = AlgebraElement::zero(t.shape());
      for (int j = 0; j < n; ++j) {
        const auto ju = static_cast<size_t>(j);
        lhs += t.pi(t.sigma().apply(xp[ju].star())) * w[ju] - wp[ju].adjoint() * t.pi(xi[ju]);
        pair = pair + xp[ju].star() * xi[ju];
      }
      rhs = t.delta(pair);
    } else {
      const ModuleVector zeta = L.random_left_vector(rng);
      const ModuleVector zp = L.random_left_vector(rng);
      const auto w = apply_connection(t, e, c, L.sigma_lift_left(zeta));
      const auto wp = apply_connection(t, e, c, zp);
      AlgebraElement pair = AlgebraElement::zero(t.shape());
      for (int j = 0; j < n; ++j) {
        const auto ju = static_cast<size_t>(j);
        lhs += -w[ju].adjoint() * t.hat(zp[ju].star()) + t.hat(t.sigma().apply(zeta[ju])) * wp[ju];
        pair = pair + zp[ju] * zeta[ju].star();
      }
      rhs = t.delta_opp(pair);
    }
    r.max_defect = std::max(r.max_defect, rel_defect(lhs, rhs));
  }
  r.passed = r.max_defect <= tol.abs_eps && r.form_selfadjoint <= tol.abs_eps && r.form_projected <= tol.abs_eps;
  return r;
}

HermitianConnection conjugate_connection(const TwistedTriple& t, const IdempotentData& e,
                                         const HermitianConnection& right, const Tolerance& tol) {
  if (!t.has_real()) throw PreconditionError("conjugate connection: real structure required");
  require_side(right, Side::right, e.n, t.dim());
  Rng rng(0x5eed);
  if (!check_axioms(t, 2, rng, tol).first_order_holds())
    throw PreconditionError("conjugation requires first order");
  const int n = e.n;
  const int d = t.dim();
  const double eps1 = t.eps_prime();
  return {Side::left, n, eps1 * block_transpose(conj_blocks(t, right.form, n, d), n, d), std::nullopt};
}

std::vector<CMatrix> conjugate_components(const TwistedTriple& t, const std::vector<CMatrix>& omega) {
  const double eps1 = t.eps_prime();
  std::vector<CMatrix> out;
  for (const auto& w : omega) out.push_back(eps1 * t.jconj(w));
  return out;
}

AlgebraElement BRealization::to_full(const AlgebraElement& c) const {
  if (c.shape() != shape) throw ShapeError("B element: shape mismatch");
  AlgebraElement x = AlgebraElement::zero(full_shape);
  for (int k = 0; k < shape.num_blocks(); ++k) {
    const auto ku = static_cast<size_t>(k);
    x.block(source_block[ku]) = isometry[ku] * c.block(k) * isometry[ku].adjoint();
  }
  return x;
}

AlgebraElement BRealization::from_full(const AlgebraElement& x) const {
  std::vector<CMatrix> b;
  for (int k = 0; k < shape.num_blocks(); ++k) {
    const auto ku = static_cast<size_t>(k);
    b.push_back(isometry[ku].adjoint() * x.block(source_block[ku]) * isometry[ku]);
  }
  return {shape, b};
}

BRealization realize_b(const IdempotentData& e) {
  BRealization r;
  r.n = e.n;
  r.full_shape = e.e.shape();
  std::vector<int> dims;
  for (int k = 0; k < r.full_shape.num_blocks(); ++k) {
    CMatrix v = range_isometry(e.e.block(k));
    if (v.cols() == 0) continue;
    dims.push_back(static_cast<int>(v.cols()));
    r.source_block.push_back(k);
    r.isometry.push_back(v);
  }
  if (dims.empty()) throw PreconditionError("idempotent is zero");
  r.shape = AlgebraShape(dims);
  return r;
}

RightMorita build_right_triple(const TwistedTriple& t, const IdempotentData& e,
                               const HermitianConnection& c, const Tolerance& tol) {
  require_admissible(t, e, tol);
  const int n = e.n;
  const int d = t.dim();
  require_side(c, Side::right, n, d);
  const Automorphism sn = amplify(t.sigma(), n);
  const CMatrix P = pi_n(t, e.e, n);
  if (rel_defect(c.form, c.form.adjoint()) > tol.abs_eps ||
      rel_defect(pi_n(t, sn.apply(e.e), n) * c.form * P, c.form) > tol.abs_eps)
    throw PreconditionError("connection is not hermitian");

  RightMorita r;
  const CMatrix dn = kron(identity(n), t.dirac());
  r.dirac_full = P * pi_n(t, sn.apply(e.e), n) * (dn + c.form) * P;
  r.h = make_space(P);
  r.b = realize_b(e);
  r.pi_full = [&t, n](const AlgebraElement& x) { return pi_n(t, x, n); };
  const CMatrix& W = r.h.isometry;
  const BRealization& B = r.b;
  const ModuleLift L(t, e);
  Representation rep = Representation::from_function(
      B.shape, static_cast<int>(W.cols()),
      [&](const AlgebraElement& cb) -> CMatrix { return W.adjoint() * pi_n(t, B.to_full(cb), n) * W; });
  Automorphism sp = Automorphism::from_map(
      B.shape, [&](const AlgebraElement& cb) { return B.from_full(L.sigma_prime(B.to_full(cb))); });
  std::optional<CMatrix> grading;
  if (t.grading()) grading = W.adjoint() * kron(identity(n), *t.grading()) * W;
  r.triple = TwistedTriple(std::move(rep), W.adjoint() * r.dirac_full * W, std::move(sp), grading);
  r.selfadjoint_defect = rel_defect(r.dirac_full, r.dirac_full.adjoint());
  for (const auto& u : B.shape.units()) {
    const AlgebraElement b = B.to_full(AlgebraElement::matrix_unit(B.shape, u.k, u.i, u.j));
    const CMatrix pb = pi_n(t, b, n);
    const CMatrix lhs = r.dirac_full * pb - pi_n(t, L.sigma_prime(b), n) * r.dirac_full;
    const CMatrix rhs = P * ((dn + c.form) * pb - pi_n(t, sn.apply(b), n) * (dn + c.form)) * P;
    r.bracket_defect = std::max(r.bracket_defect, rel_defect(lhs, rhs));
  }
  return r;
}

LeftMorita build_left_triple(const TwistedTriple& t, const IdempotentData& e,
                             const HermitianConnection& c, const Tolerance& tol) {
  if (!t.has_real()) throw PreconditionError("left Morita triple: real structure required");
  require_admissible(t, e, tol);
  const int n = e.n;
  const int d = t.dim();
  require_side(c, Side::left, n, d);
  const Automorphism sn = amplify(t.sigma(), n);
  const CMatrix PL = right_mult_n(t, e.e, n);
  const CMatrix nop = block_transpose(c.form, n, d);
  if (rel_defect(c.form, c.form.adjoint()) > tol.abs_eps ||
      rel_defect(right_mult_n(t, sn.apply_inverse(e.e), n) * nop * PL, nop) > tol.abs_eps)
    throw PreconditionError("connection is not hermitian");

  LeftMorita r;
  const CMatrix dn = kron(identity(n), t.dirac());
  r.dirac_full = PL * right_mult_n(t, sn.apply_inverse(e.e), n) * (dn + nop) * PL;
  r.h = make_space(PL);
  r.b = realize_b(e);
  const CMatrix& W = r.h.isometry;
  const BRealization& B = r.b;
  const ModuleLift L(t, e);
  Representation rep = Representation::from_function(
      B.shape, static_cast<int>(W.cols()), [&](const AlgebraElement& cb) -> CMatrix {
        return W.adjoint() * right_mult_n(t, B.to_full(transpose_blocks(cb)), n) * W;
      });
  Automorphism tau = Automorphism::from_map(B.shape, [&](const AlgebraElement& cb) {
    return transpose_blocks(B.from_full(L.sigma_prime_inv(B.to_full(transpose_blocks(cb)))));
  });
  std::optional<CMatrix> grading;
  if (t.grading()) grading = W.adjoint() * kron(identity(n), *t.grading()) * W;
  r.triple = TwistedTriple(std::move(rep), W.adjoint() * r.dirac_full * W, std::move(tau), grading);
  r.selfadjoint_defect = rel_defect(r.dirac_full, r.dirac_full.adjoint());
  for (const auto& u : B.shape.units()) {
    const AlgebraElement b = B.to_full(AlgebraElement::matrix_unit(B.shape, u.k, u.i, u.j));
    const CMatrix rb = right_mult_n(t, b, n);
    const CMatrix lhs = r.dirac_full * rb - right_mult_n(t, L.sigma_prime_inv(b), n) * r.dirac_full;
    const CMatrix rhs = PL * ((dn + nop) * rb - right_mult_n(t, sn.apply_inverse(b), n) * (dn + nop)) * PL;
    r.bracket_defect = std::max(r.bracket_defect, rel_defect(lhs, rhs));
  }
  return r;
}

RealMorita build_real_triple(const TwistedTriple& t, const IdempotentData& e,
                             const HermitianConnection& right, const Tolerance& tol) {
  if (!t.has_real()) throw PreconditionError("real Morita triple: real structure required");
  if (!t.has_grading()) throw PreconditionError("real Morita triple: grading required");
  const int n = e.n;
  const int d = t.dim();
  require_side(right, Side::right, n, d);
  Rng rng(0x5eed);
  const bool first_order = check_axioms(t, 2, rng, tol).first_order_holds();
  if (!first_order) {
    if (n == 1 && is_unit(e.e) && right.source) {
      RealMorita r;
      r.delegated_to_fluctuation = true;
      r.dirac_full = fluctuate(t, *right.source, tol).d_omega;
      r.dirac_rows_route = r.dirac_full;
      r.dirac_cols_route = r.dirac_full;
      r.j_full = t.real()->mat();
      r.h = make_space(identity(d));
      r.b = realize_b(e);
      r.triple = t.with_dirac(r.dirac_full);
      return r;
    }
    throw PreconditionError("real Morita construction requires the twisted first-order condition");
  }
  require_admissible(t, e, tol);
  const HermitianConnection left = conjugate_connection(t, e, right, tol);
  const Automorphism sn = amplify(t.sigma(), n);
  const AlgebraElement se = sn.apply(e.e);
  const AlgebraElement sie = sn.apply_inverse(e.e);

  const Eigen::Index N = static_cast<Eigen::Index>(n) * n * d;
  CMatrix lm = CMatrix::Zero(N, N);
  CMatrix rn = CMatrix::Zero(N, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        lm.block(flat(n, d, i, j, 0), flat(n, d, k, j, 0), d, d) = block_of(right.form, i, k, d);
        rn.block(flat(n, d, i, j, 0), flat(n, d, i, k, 0), d, d) = block_of(left.form, k, j, d);
      }
  const CMatrix dbig = kron(identity(static_cast<Eigen::Index>(n) * n), t.dirac());
  const CMatrix Q = left_op(t, e.e, n) * right_op(t, e.e, n);

  RealMorita r;
  r.dirac_full = Q * left_op(t, se, n) * right_op(t, sie, n) * (dbig + lm + rn) * Q;

  const CMatrix dn = kron(identity(n), t.dirac());
  const CMatrix P = pi_n(t, e.e, n);
  const CMatrix PL = right_mult_n(t, e.e, n);
  const CMatrix nop = block_transpose(left.form, n, d);
  const CMatrix d_right = P * pi_n(t, se, n) * (dn + right.form) * P;
  const CMatrix d_left = PL * right_mult_n(t, sie, n) * (dn + nop) * PL;
  r.dirac_rows_route =
      Q * left_op(t, e.e * se, n) * (rows_op(d_left, n, d) + right_op(t, sie * e.e, n) * lm) * Q;
  r.dirac_cols_route =
      Q * right_op(t, sie * e.e, n) * (cols_op(d_right, n, d) + left_op(t, e.e * se, n) * rn) * Q;
  r.route_defect = std::max(rel_defect(r.dirac_full, r.dirac_rows_route),
                            rel_defect(r.dirac_full, r.dirac_cols_route));

  CMatrix jbig = CMatrix::Zero(N, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jbig.block(flat(n, d, i, j, 0), flat(n, d, j, i, 0), d, d) = t.real()->mat();
  r.j_full = jbig;
  r.h = make_space(Q);
  r.b = realize_b(e);
  const CMatrix& W = r.h.isometry;
  const BRealization& B = r.b;
  const ModuleLift L(t, e);
  Representation rep = Representation::from_function(
      B.shape, static_cast<int>(W.cols()),
      [&](const AlgebraElement& cb) -> CMatrix { return W.adjoint() * left_op(t, B.to_full(cb), n) * W; });
  Automorphism sp = Automorphism::from_map(
      B.shape, [&](const AlgebraElement& cb) { return B.from_full(L.sigma_prime(B.to_full(cb))); });
  const CMatrix gbig = kron(identity(static_cast<Eigen::Index>(n) * n), *t.grading());
  r.triple = TwistedTriple(std::move(rep), W.adjoint() * r.dirac_full * W, std::move(sp),
                           CMatrix(W.adjoint() * gbig * W),
                           AntilinearOp(W.adjoint() * jbig * W.conjugate()));
  return r;
}

}  // namespace spectwist
