// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#include "spectwist/triple.hpp"

#include <algorithm>
#include <cmath>

namespace spectwist {

Representation::Representation(AlgebraShape shape, int dim, std::vector<CMatrix> unit_images)
    : shape_(std::move(shape)), dim_(dim), images_(std::move(unit_images)) {
  if (dim_ < 1) throw ShapeError("representation: Hilbert dimension must be >= 1");
  if (static_cast<int>(images_.size()) != shape_.algebra_dim())
    throw ShapeError("representation: expected " + std::to_string(shape_.algebra_dim()) +
                     " unit images, got " + std::to_string(images_.size()));
  for (const auto& m : images_) {
    if (m.rows() != dim_ || m.cols() != dim_)
      throw ShapeError("representation: unit image has wrong size");
    require_finite(m, "representation unit image");
  }
  int off = 0;
  for (int n : shape_.block_dims()) {
    offsets_.push_back(off);
    off += n * n;
  }
}

Representation Representation::from_function(
    const AlgebraShape& shape, int dim, const std::function<CMatrix(const AlgebraElement&)>& f) {
  std::vector<CMatrix> imgs;
  for (const auto& u : shape.units())
    imgs.push_back(f(AlgebraElement::matrix_unit(shape, u.k, u.i, u.j)));
  return {shape, dim, imgs};
}

const CMatrix& Representation::unit_image(int k, int i, int j) const {
  return images_.at(static_cast<size_t>(offsets_.at(static_cast<size_t>(k)) + i * shape_.dim(k) + j));
}

CMatrix Representation::apply(const AlgebraElement& a) const {
  if (a.shape() != shape_) throw ShapeError("representation: algebra shape mismatch");
  CMatrix out = CMatrix::Zero(dim_, dim_);
  size_t idx = 0;
  for (int k = 0; k < shape_.num_blocks(); ++k) {
    const CMatrix& b = a.block(k);
    for (int i = 0; i < shape_.dim(k); ++i)
      for (int j = 0; j < shape_.dim(k); ++j, ++idx) {
        const cplx c = b(i, j);
        if (c != cplx(0.0)) out += c * images_[idx];
      }
  }
  return out;
}

int ko_dimension(const KOSigns& s) {
  if (s.eps_double_prime == 0) {
    if (s.eps == 1 && s.eps_prime == -1) return 1;
    if (s.eps == -1 && s.eps_prime == 1) return 3;
    if (s.eps == -1 && s.eps_prime == -1) return 5;
    if (s.eps == 1 && s.eps_prime == 1) return 7;
    return -1;
  }
  if (s.eps_prime != 1) return -1;
  if (s.eps == 1 && s.eps_double_prime == 1) return 0;
  if (s.eps == -1 && s.eps_double_prime == -1) return 2;
  if (s.eps == -1 && s.eps_double_prime == 1) return 4;
  if (s.eps == 1 && s.eps_double_prime == -1) return 6;
  return -1;
}

namespace {

// +1 if x = y, -1 if x = -y, 0 otherwise
int detect_sign(const CMatrix& x, const CMatrix& y) {
  const Tolerance tol;
  if (approx_eq(x, y, tol)) return 1;
  if (approx_eq(x, -y, tol)) return -1;
  return 0;
}

}  // namespace

TwistedTriple::TwistedTriple(Representation rep, CMatrix dirac, Automorphism sigma,
                             std::optional<CMatrix> grading, std::optional<AntilinearOp> real)
    : rep_(std::move(rep)),
      dirac_(std::move(dirac)),
      sigma_(std::move(sigma)),
      grading_(std::move(grading)),
      real_(std::move(real)) {
  const int d = rep_.dim();
  if (dirac_.rows() != d || dirac_.cols() != d) throw ShapeError("triple: Dirac operator has wrong size");
  require_finite(dirac_, "Dirac operator");
  if (sigma_.shape() != rep_.shape()) throw ShapeError("triple: automorphism shape mismatch");
  if (grading_) {
    if (grading_->rows() != d || grading_->cols() != d) throw ShapeError("triple: grading has wrong size");
    require_finite(*grading_, "grading");
  }
  if (real_) {
    if (real_->dim() != d) throw ShapeError("triple: real structure has wrong size");
    signs_.eps = detect_sign(real_->square(), identity(d));
    signs_.eps_prime = detect_sign(real_->conjugate(dirac_), dirac_);
    if (grading_) signs_.eps_double_prime = detect_sign(real_->conjugate(*grading_), *grading_);
  }
}

int TwistedTriple::eps_prime() const {
  require_real("epsilon'");
  if (signs_.eps_prime == 0) throw PreconditionError("JD is neither DJ nor -DJ; epsilon' undefined");
  return signs_.eps_prime;
}

TwistedTriple TwistedTriple::with_dirac(CMatrix d) const {
  return TwistedTriple(rep_, std::move(d), sigma_, grading_, real_);
}

void TwistedTriple::require_real(const char* what) const {
  if (!real_) throw PreconditionError(std::string(what) + ": real structure required");
}

CMatrix TwistedTriple::delta(const AlgebraElement& a) const {
  return dirac_ * pi(a) - pi(sigma_.apply(a)) * dirac_;
}

CMatrix TwistedTriple::bracket(const CMatrix& x, const AlgebraElement& a) const {
  return x * pi(a) - pi(sigma_.apply(a)) * x;
}

CMatrix TwistedTriple::jconj(const CMatrix& x) const {
  require_real("J conjugation");
  return real_->conjugate(x);
}

CMatrix TwistedTriple::hat(const AlgebraElement& a) const {
  require_real("hat");
  return real_->conjugate(pi(a));
}

CMatrix TwistedTriple::pi_opp(const AlgebraElement& a) const {
  require_real("pi_opp");
  return real_->conjugate(pi(a).adjoint());
}

CMatrix TwistedTriple::delta_opp(const AlgebraElement& a) const {
  require_real("twisted_commutator_opp");
  const AlgebraElement as = a.star();
  return dirac_ * hat(as) - hat(sigma_.apply(as)) * dirac_;
}

CMatrix TwistedTriple::opp_bracket(const CMatrix& x, const AlgebraElement& c) const {
  return x * hat(c) - hat(sigma_.apply(c)) * x;
}

double first_order_defect(const TwistedTriple& t, const AlgebraElement& a, const AlgebraElement& b) {
  return t.opp_bracket(t.delta(a), b.star()).norm();
}

const AxiomResult* AxiomReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

bool AxiomReport::mandatory_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const AxiomResult& r) { return !r.mandatory || r.passed; });
}

bool AxiomReport::first_order_holds() const {
  const AxiomResult* r = find("twisted_first_order");
  return r != nullptr && r->passed;
}

namespace {

double comm_defect(const CMatrix& xy, const CMatrix& yx) { return rel_defect(xy, yx); }

}  // namespace

AxiomReport check_axioms(const TwistedTriple& t, int samples, Rng& rng, const Tolerance& tol) {
  if (samples < 1) throw PreconditionError("check_axioms: samples must be >= 1");
  AxiomReport rep;
  const int d = t.dim();
  const auto& shape = t.shape();
  const CMatrix& D = t.dirac();
  const CMatrix I = identity(d);
  auto add = [&](std::string name, double defect, bool mandatory = true, std::string note = {}) {
    rep.results.push_back({std::move(name), defect, defect <= tol.abs_eps, mandatory, std::move(note)});
  };

  std::vector<AlgebraElement> basis;
  for (const auto& u : shape.units()) basis.push_back(AlgebraElement::matrix_unit(shape, u.k, u.i, u.j));
  std::vector<AlgebraElement> probes = basis;
  for (int s = 0; s < samples; ++s) probes.push_back(AlgebraElement::random(shape, rng));

  add("dirac_selfadjoint", rel_defect(D, D.adjoint()));

  // representation
  {
    const auto units = shape.units();
    double hom = 0, inv = 0;
    for (size_t x = 0; x < units.size(); ++x) {
      const auto& u = units[x];
      const CMatrix& pu = t.rep().unit_image(u.k, u.i, u.j);
      inv = std::max(inv, rel_defect(pu.adjoint(), t.rep().unit_image(u.k, u.j, u.i)));
      for (size_t y = 0; y < units.size(); ++y) {
        const auto& v = units[y];
        CMatrix expect = CMatrix::Zero(d, d);
        if (u.k == v.k && u.j == v.i) expect = t.rep().unit_image(u.k, u.i, v.j);
        hom = std::max(hom, rel_defect(pu * t.rep().unit_image(v.k, v.i, v.j), expect));
      }
    }
    add("representation_homomorphism", hom);
    add("representation_involutive", inv);
    const CMatrix pe = t.pi(AlgebraElement::unit(shape));
    const double unital = rel_defect(pe, I);
    if (unital <= tol.abs_eps) {
      add("representation_unital", unital);
    } else {
      const double proj = rel_defect(pe * pe, pe);
      rep.results.push_back({"representation_unital", unital, proj <= tol.abs_eps, true,
                             "pi(e) is a projection, not the identity"});
      if (proj <= tol.abs_eps) rep.warnings.push_back("representation is degenerate: pi(e) != 1");
    }

    CMatrix stacked(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(units.size()));
    for (size_t x = 0; x < units.size(); ++x) {
      const CMatrix& m = t.rep().unit_image(units[x].k, units[x].i, units[x].j);
      stacked.col(static_cast<Eigen::Index>(x)) = Eigen::Map<const CVector>(m.data(), m.size());
    }
    Eigen::FullPivLU<CMatrix> lu(stacked);
    lu.setThreshold(1e-9);
    const auto rank = lu.rank();
    const bool faithful = rank == static_cast<Eigen::Index>(units.size());
    rep.results.push_back({"faithful", faithful ? 0.0 : 1.0, faithful, false,
                           "rank " + std::to_string(rank) + " of " + std::to_string(units.size())});
    if (!faithful) rep.warnings.push_back("representation is not faithful (warning only)");
  }

  if (t.grading()) {
    const CMatrix& G = *t.grading();
    add("grading_selfadjoint", rel_defect(G, G.adjoint()));
    add("grading_square", rel_defect(G * G, I));
    double c = 0;
    for (const auto& a : probes) {
      const CMatrix pa = t.pi(a);
      c = std::max(c, comm_defect(G * pa, pa * G));
    }
    add("grading_commutes_algebra", c);
    add("grading_anticommutes_dirac", rel_defect(G * D, -D * G));
  }

  add("sigma_regular", check_regularity(t.sigma(), samples, rng, tol).max_defect);
  rep.results.push_back({"bounded_twisted_commutators", 0.0, true, true, "trivial in finite dimension"});
  rep.results.push_back({"compact_resolvent", 0.0, true, true, "trivial in finite dimension"});

  if (t.real()) {
    const AntilinearOp& J = *t.real();
    rep.signs = t.signs();
    add("real_isometry", rel_defect(J.mat().adjoint() * J.mat(), I));
    const CMatrix j2 = J.square();
    add("real_square", std::min(rel_defect(j2, I), rel_defect(j2, -I)),
        true, "J^2 = " + std::to_string(rep.signs.eps));
    const CMatrix jd = J.conjugate(D);
    add("real_dirac", std::min(rel_defect(jd, D), rel_defect(jd, -D)),
        true, "JD = " + std::to_string(rep.signs.eps_prime) + " DJ");
    if (t.grading()) {
      const CMatrix jg = J.conjugate(*t.grading());
      add("real_grading", std::min(rel_defect(jg, *t.grading()), rel_defect(jg, -*t.grading())),
          true, "J Gamma = " + std::to_string(rep.signs.eps_double_prime) + " Gamma J");
    }
    rep.ko_dim = ko_dimension(rep.signs);

    std::vector<CMatrix> pis, hats, hats_sigma, deltas;
    for (const auto& a : probes) {
      pis.push_back(t.pi(a));
      hats.push_back(t.hat(a));
      hats_sigma.push_back(t.hat(t.sigma().apply(a)));
      deltas.push_back(t.delta(a));
    }
    double oz = 0;
    for (size_t x = 0; x < probes.size(); ++x)
      for (size_t y = 0; y < probes.size(); ++y)
        oz = std::max(oz, comm_defect(pis[x] * hats[y], hats[y] * pis[x]));
    add("order_zero", oz);

    double fo = 0;
    const size_t nb = basis.size();
    const auto units = shape.units();
    for (size_t x = 0; x < probes.size(); ++x)
      for (size_t y = 0; y < probes.size(); ++y) {
        const CMatrix lhs = deltas[x] * hats[y];
        const CMatrix rhs = hats_sigma[y] * deltas[x];
        const double def = comm_defect(lhs, rhs);
        if (x < nb && y < nb) {
          // absolute defect of the unit pair (a, b) with pi°(b°) = hat(b*)
          const double abs_def = (lhs - rhs).norm();
          if (abs_def > rep.first_order_witness.defect) {
            const auto& ub = units[y];
            rep.first_order_witness = {units[x], {ub.k, ub.j, ub.i}, abs_def};
          }
        }
        fo = std::max(fo, def);
      }
    add("twisted_first_order", fo, false);
  }
  return rep;
}

}  // namespace spectwist
