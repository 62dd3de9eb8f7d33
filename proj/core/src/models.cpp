// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include "spectwist/models.hpp"

#include <algorithm>

namespace spectwist {

namespace {

cplx scalar(const AlgebraElement& x, int k) { return x.block(k)(0, 0); }

cplx delta1(int i) { return i == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0); }

const AlgebraShape& u1u2_shape() {
  static const AlgebraShape s({1, 1, 2, 1, 1, 2});
  return s;
}

void require_u1u2(const U1U2Model& model, const Perturbation& p) {
  if (p.shape() != model.triple.shape()) throw ShapeError("perturbation is not over the doubled even algebra");
}

}  // namespace

U1U2Model build_u1u2(cplx kx, cplx ky) {
  using namespace u1u2;
  const AlgebraShape& shape = u1u2_shape();
  const auto pi = [](const AlgebraElement& a) {
    CMatrix m = CMatrix::Zero(8, 8);
    m(0, 0) = m(1, 1) = scalar(a, lambda_r_R);
    m(2, 2) = m(3, 3) = scalar(a, lambda_l_L);
    m.block(4, 4, 2, 2) = a.block(m_l);
    m.block(6, 6, 2, 2) = a.block(m_r);
    return m;
  };
  CMatrix d = CMatrix::Zero(8, 8);
  for (int i = 0; i < 2; ++i) {
    d(i, 2 + i) = kx;
    d(2 + i, i) = std::conj(kx);
    d(4 + i, 6 + i) = std::conj(kx);
    d(6 + i, 4 + i) = kx;
  }
  d(4, 0) = ky;
  d(0, 4) = std::conj(ky);
  CMatrix gamma = CMatrix::Zero(8, 8);
  const double g[] = {1, 1, -1, -1, -1, -1, 1, 1};
  for (int i = 0; i < 8; ++i) gamma(i, i) = g[i];
  CMatrix j = CMatrix::Zero(8, 8);
  j.block(0, 4, 4, 4) = identity(4);
  j.block(4, 0, 4, 4) = identity(4);
  TwistedTriple t(Representation::from_function(shape, 8, pi), d, Automorphism::flip(shape), gamma,
                  AntilinearOp(j));
  return {kx, ky, std::move(t)};
}

FlucParams extract_params(const U1U2Model& model, const Perturbation& p_in) {
  using namespace u1u2;
  require_u1u2(model, p_in);
  const Perturbation p = p_in.normalized(model.triple.sigma()) ? p_in : normalize(model.triple, p_in);
  FlucParams f;
  for (const auto& [a, b] : p.pairs()) {
    f.phi += scalar(a, lambda_r_R) * (scalar(b, lambda_l_L) - scalar(b, lambda_l_R));
    f.phi_prime += scalar(a, lambda_l_L) * (scalar(b, lambda_r_R) - scalar(b, lambda_r_L));
    for (int jp = 0; jp < 2; ++jp)
      f.sigma_upper[static_cast<size_t>(jp)] +=
          scalar(a, lambda_r_R) * (b.block(m_l)(0, jp) - scalar(b, lambda_l_R) * delta1(jp));
    for (int ip = 0; ip < 2; ++ip) {
      cplx s = a.block(m_l)(ip, 0) * scalar(b, lambda_r_R);
      for (int kp = 0; kp < 2; ++kp) s -= a.block(m_l)(ip, kp) * b.block(m_r)(kp, 0);
      f.sigma_lower[static_cast<size_t>(ip)] += s;
    }
  }
  return f;
}

OperatorParams params_from_operator(const U1U2Model& model, const CMatrix& d) {
  if (d.rows() != 8 || d.cols() != 8) throw ShapeError("operator is not 8 x 8");
  OperatorParams r;
  r.mixed = CMatrix::Zero(2, 2);
  if (model.kx != cplx(0.0, 0.0)) {
    r.phi = d(0, 2) / model.kx - 1.0;
    r.phi_prime = d(2, 0) / std::conj(model.kx) - 1.0;
  }
  if (model.ky != cplx(0.0, 0.0))
    for (int ip = 0; ip < 2; ++ip)
      for (int j = 0; j < 2; ++j) r.mixed(ip, j) = d(4 + ip, j) / model.ky;
  return r;
}

CMatrix assemble_d_omega(const U1U2Model& model, const FlucParams& f) {
  const cplx kx = model.kx;
  const cplx ky = model.ky;
  CMatrix d = CMatrix::Zero(8, 8);
  for (int i = 0; i < 2; ++i) {
    d(i, 2 + i) = kx * (1.0 + f.phi);
    d(2 + i, i) = std::conj(kx) * (1.0 + f.phi_prime);
    d(4 + i, 6 + i) = std::conj(kx) * (1.0 + std::conj(f.phi));
    d(6 + i, 4 + i) = kx * (1.0 + std::conj(f.phi_prime));
  }
  for (int ip = 0; ip < 2; ++ip)
    for (int j = 0; j < 2; ++j) {
      const auto ipu = static_cast<size_t>(ip);
      const auto ju = static_cast<size_t>(j);
      d(4 + ip, j) = ky * (f.sigma_lower[ipu] + delta1(ip)) * (std::conj(f.sigma_upper[ju]) + delta1(j));
      d(j, 4 + ip) = std::conj(ky) * (std::conj(f.sigma_lower[ju]) + delta1(j)) * (f.sigma_upper[ipu] + delta1(ip));
    }
  return d;
}

FormulaReport verify_fluctuation_formula(const U1U2Model& model, const Perturbation& p) {
  require_u1u2(model, p);
  FormulaReport r;
  r.params = extract_params(model, p);
  r.assembled = assemble_d_omega(model, r.params);
  r.fluctuated = fluctuate(model.triple, p).d_omega;
  r.max_defect = (r.assembled - r.fluctuated).cwiseAbs().maxCoeff();
  return r;
}

Perturbation selfadjoint_symmetrize(const TwistedTriple& t, const Perturbation& p_in) {
  const Perturbation p = p_in.normalized(t.sigma()) ? p_in : normalize(t, p_in);
  return p.scaled(0.5).concat(eta_adjoint_pairs(t, p).scaled(0.5));
}

TwistedTriple diagonal_toy(double m) {
  const AlgebraShape shape({1, 1});
  const auto pi = [](const AlgebraElement& a) {
    CMatrix x = CMatrix::Zero(2, 2);
    x(0, 0) = scalar(a, 0);
    x(1, 1) = scalar(a, 1);
    return x;
  };
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 1) = d(1, 0) = m;
  CMatrix gamma = CMatrix::Zero(2, 2);
  gamma(0, 0) = 1.0;
  gamma(1, 1) = -1.0;
  return {Representation::from_function(shape, 2, pi), d, Automorphism::identity(shape), gamma,
          AntilinearOp(identity(2))};
}

TwistedTriple product_toy() {
  const AlgebraShape shape({1, 2});
  const auto pi0 = [](const AlgebraElement& a) {
    CMatrix x = CMatrix::Zero(3, 3);
    x(0, 0) = scalar(a, 0);
    x.block(1, 1, 2, 2) = a.block(1);
    return x;
  };
  CMatrix d0 = CMatrix::Zero(3, 3);
  const cplx v[] = {cplx(0.6, 0.0), cplx(0.3, 0.4)};
  for (int i = 0; i < 2; ++i) {
    d0(1 + i, 0) = v[i];
    d0(0, 1 + i) = std::conj(v[i]);
  }
  CMatrix g0 = CMatrix::Zero(3, 3);
  g0(0, 0) = 1.0;
  g0(1, 1) = g0(2, 2) = -1.0;
  CMatrix swap = CMatrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) swap(3 * j + i, 3 * i + j) = 1.0;
  const CMatrix i3 = identity(3);
  const CMatrix d = kron(d0, i3) + kron(i3, d0.conjugate());
  return {Representation::from_function(shape, 9, [&](const AlgebraElement& a) { return kron(pi0(a), i3); }),
          d, Automorphism::identity(shape), kron(g0, g0), AntilinearOp(swap)};
}

TwistedTriple minimal_twist(const TwistedTriple& t) {
  if (!t.grading()) throw PreconditionError("minimal twist requires a grading");
  const CMatrix& g = *t.grading();
  const CMatrix id = identity(t.dim());
  const CMatrix pp = 0.5 * (id + g);
  const CMatrix pm = 0.5 * (id - g);
  std::vector<int> dims = t.shape().block_dims();
  const int nb = static_cast<int>(dims.size());
  dims.insert(dims.end(), t.shape().block_dims().begin(), t.shape().block_dims().end());
  const AlgebraShape shape(dims);
  const auto pi = [&](const AlgebraElement& x) {
    std::vector<CMatrix> a(x.blocks().begin(), x.blocks().begin() + nb);
    std::vector<CMatrix> b(x.blocks().begin() + nb, x.blocks().end());
    return CMatrix(pp * t.pi(AlgebraElement(t.shape(), a)) + pm * t.pi(AlgebraElement(t.shape(), b)));
  };
  return {Representation::from_function(shape, t.dim(), pi), t.dirac(), Automorphism::flip(shape), g, t.real()};
}

TwistedTriple twisted_toy() { return minimal_twist(product_toy()); }

TwistedTriple random_real_triple(std::uint64_t seed) {
  Rng rng(seed);
  const AlgebraShape shape({2, 1});
  const auto pi = [](const AlgebraElement& a) {
    CMatrix x = CMatrix::Zero(6, 6);
    x.block(0, 0, 2, 2) = a.block(0);
    const cplx c = scalar(a, 1);
    x(2, 2) = x(3, 3) = x(4, 4) = x(5, 5) = c;
    return x;
  };
  CMatrix j = CMatrix::Zero(6, 6);
  for (int i = 0; i < 2; ++i) {
    j(i, 2 + i) = 1.0;
    j(2 + i, i) = 1.0;
  }
  j(4, 5) = j(5, 4) = 1.0;
  const AntilinearOp real(j);
  const CMatrix d0 = random_hermitian(6, rng);
  const CMatrix d = 0.5 * (d0 + real.conjugate(d0));
  const CMatrix b = random_matrix(2, 2, rng);
  const CMatrix s = b * b.adjoint() + identity(2);
  const Automorphism sigma(shape, {0, 1}, {s, identity(1)});
  return {Representation::from_function(shape, 6, pi), d, sigma, std::nullopt, real};
}

}  // namespace spectwist
