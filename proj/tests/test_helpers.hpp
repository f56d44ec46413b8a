#pragma once

#include <cmath>

#include "projpair/decomp.hpp"
#include "projpair/rng.hpp"
#include "projpair/types.hpp"

namespace projpair::testing {

// The canonical 2x2 generic fixture: P0 = diag(1, 0) against the rank-one
// projection at principal angle theta.
inline GenericPair theta_pair(double theta, const Tol& tol = {}) {
  const double c = std::cos(theta), s = std::sin(theta);
  CMat p(2, 2), q(2, 2);
  p << 1, 0, 0, 0;
  q << c * c, c * s, c * s, s * s;
  return GenericPair::create(p, q, tol);
}

// Direct sum of theta blocks, optionally conjugated by a Haar unitary so
// nothing is accidentally diagonal.
inline GenericPair multi_theta_pair(const std::vector<double>& thetas,
                                    std::uint64_t seed = 0,
                                    const Tol& tol = {}) {
  const Index m = 2 * static_cast<Index>(thetas.size());
  CMat p = CMat::Zero(m, m), q = CMat::Zero(m, m);
  for (size_t k = 0; k < thetas.size(); ++k) {
    const double c = std::cos(thetas[k]), s = std::sin(thetas[k]);
    const Index off = 2 * static_cast<Index>(k);
    p(off, off) = 1.0;
    q(off, off) = c * c;
    q(off, off + 1) = c * s;
    q(off + 1, off) = c * s;
    q(off + 1, off + 1) = s * s;
  }
  if (seed != 0) {
    Rng rng = make_rng(seed);
    const CMat u = haar_unitary(rng, m);
    p = u * p * u.adjoint();
    q = u * q * u.adjoint();
  }
  return GenericPair::create(p, q, tol);
}

inline double dist(const CMat& a, const CMat& b) {
  return operator_norm(a - b);
}

}  // namespace projpair::testing
