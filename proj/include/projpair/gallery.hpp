#pragma once

#include <complex>
#include <vector>

#include "projpair/davis.hpp"
#include "projpair/decomp.hpp"
#include "projpair/types.hpp"

namespace projpair {

// Structured fixtures: finite-dimensional realizations of multiplication
// operators, time-frequency projections, model spaces and idempotents.

// A = diag of the symmetric midpoint grid t_k = (2k - n - 1)/n paired with
// the coordinate-flip symmetry; the whole space is generic.
ProjectionPair discretized_mt(Index n, const Tol& tol = {});

// P = coordinate indicator of I, Q = F* (indicator of J) F for the n-point
// discrete Fourier unitary.
ProjectionPair fourier_pair(Index n, const std::vector<Index>& i_set,
                            const std::vector<Index>& j_set,
                            const Tol& tol = {});

// Pairing of the +-lambda eigenvectors of a generic A0 with simple positive
// spectrum; every Davis symmetry of A0 is V_omega for unimodular phases
// omega. Throws DegenerateSpectrum when multiplicities exceed one.
class OmegaParametrization {
 public:
  OmegaParametrization(const Hermitian& a0, const Tol& tol = {});

  Index blocks() const { return lambdas_.size(); }
  const RVec& lambdas() const { return lambdas_; }

  // V_omega with 2x2 blocks [[0, conj(omega_k)], [omega_k, 0]] on the
  // (e_k, f_k) eigenvector pairs.
  DavisSymmetry build(const std::vector<Complex>& omega) const;
  GenericPair pair(const std::vector<Complex>& omega) const;

 private:
  Hermitian a0_;
  RVec lambdas_;
  CMat plus_vecs_, minus_vecs_;
  Tol tol_;
};

// Model-space pair from two lists of disk points: the 2N-dimensional space
// spanned by the reproducing kernels at a and b, with A0 assembled from the
// Blaschke products B_a, B_b and orthonormalized through the Cholesky
// factor of the Gram matrix.
struct BlaschkeResult {
  GenericPair pair;
  RVec a0_spectrum;                 // observed generic spectrum
  std::vector<Index> multiplicities;  // observed eigenvalue multiplicities
};

BlaschkeResult blaschke_pair(const std::vector<Complex>& a,
                             const std::vector<Complex>& b,
                             const Tol& tol = {});

// Pair of range projections of the idempotent E = [[1, B], [0, 0]] for
// positive definite B, via P = E S^{-1}, Q = E* S^{-1}, S = E + E* - 1.
// The report checks the closed-form A0 and the commutant description
// [[Y, Z], [Z, Y + 2BZ]] on random samples.
struct IdempotentResult {
  GenericPair pair;
  double closed_form_residual = 0.0;  // ||(E - E*) S^-1 - closed form||
  double commutant_residual = 0.0;    // worst ||[M, A0]|| over samples
  int commutant_samples = 0;
  bool isotropy_commutative = true;
  double isotropy_commutator = 0.0;   // witness commutator norm
};

IdempotentResult idempotent_pair(const Hermitian& b, const Tol& tol = {});

}  // namespace projpair
