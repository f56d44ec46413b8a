#pragma once

#include "projpair/decomp.hpp"
#include "projpair/types.hpp"

namespace projpair {

// The four-way correspondence on the generic part: pairs, anti-commuting
// symmetries, graph subspaces, co-diagonal projections.

// A symmetry V on H0 with V A0 = -A0 V, certified against a given A0.
class DavisSymmetry {
 public:
  static DavisSymmetry certify(const Hermitian& a0, const Symmetry& v,
                               double rel_tol = tols::davis);
  const CMat& mat() const { return v_.mat(); }
  const Symmetry& symmetry() const { return v_; }
  Index dim() const { return v_.dim(); }

 private:
  explicit DavisSymmetry(Symmetry v) : v_(std::move(v)) {}
  Symmetry v_;
};

// V = sgn(P0 + Q0 - 1); satisfies V P0 V = Q0.
DavisSymmetry pair_to_symmetry(const GenericPair& gp, const Tol& tol = {});

// P_V = (1 + A0 + (1-A0^2)^{1/2} V)/2, Q_V = (1 - A0 + (1-A0^2)^{1/2} V)/2.
GenericPair symmetry_to_pair(const Hermitian& a0, const DavisSymmetry& v,
                             const Tol& tol = {});

// Orthonormal basis of S = {xi : V xi = xi}; verifies A0(S) is orthogonal
// to S and A0(S-perp) orthogonal to S-perp.
CMat symmetry_to_subspace(const DavisSymmetry& v, const Hermitian& a0,
                          const Tol& tol = {});

// V = 2 P_S - 1 for a co-diagonal subspace S; throws NotCodiagonal when
// A0(S) is not contained in S-perp within tolerance.
DavisSymmetry subspace_to_symmetry(const CMat& basis, const Hermitian& a0,
                                   const Tol& tol = {});

// True iff ||E A0 E|| and ||(1-E) A0 (1-E)|| both vanish relative to
// ||A0||; equivalent to E = P_S for a Davis subspace S.
bool codiagonal_projection_check(const Hermitian& e, const Hermitian& a0,
                                 const Tol& tol = {});

// J0 = sgn(A0), the isometric part of the polar decomposition of A0. A
// symmetry anti-commutes with A0 iff it anti-commutes with J0.
Symmetry j0(const Hermitian& a0, const Tol& tol = {});

}  // namespace projpair
