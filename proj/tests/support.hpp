// Copyright 2026 The spectwist Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectwist/gauge.hpp"
#include "spectwist/models.hpp"

namespace spectwist::testing {

inline TwistedTriple u1u2_triple(cplx kx = {1.0, 0.5}, cplx ky = {0.7, -0.2}) {
  return build_u1u2(kx, ky).triple;
}

struct NamedTriple {
  std::string name;
  TwistedTriple triple;
};

// Triples with a real structure on which order zero holds.
inline std::vector<NamedTriple> real_corpus() {
  return {{"diagonal", diagonal_toy(0.8)},
          {"u1u2", u1u2_triple()},
          {"random6", random_real_triple(11)},
          {"product", product_toy()},
          {"twisted", twisted_toy()}};
}

inline Perturbation random_pert(const TwistedTriple& t, Rng& rng, int npairs = 2) {
  return Perturbation::random_normalized(t.shape(), t.sigma(), npairs, rng);
}

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace spectwist::testing
