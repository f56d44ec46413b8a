#pragma once

#include <functional>

#include "projpair/types.hpp"

namespace projpair {

// Matrix-function kernel used by every other module. All operations are
// pure functions over immutable values and safe to call concurrently.

SpectralDecomp eigh(const Hermitian& m);

// f applied to m through the spectral theorem: V diag(f(lambda)) V*.
// Throws DomainError if f is not finite at some eigenvalue.
Hermitian matrix_function(const Hermitian& m,
                          const std::function<double(double)>& f);

// sgn(m). Requires every eigenvalue to clear the gap |lambda| >
// gap_tol * ||m||; throws SingularSign otherwise (the input has a
// numerically nontrivial nullspace).
Symmetry matrix_sign(const Hermitian& m, double gap_tol = 1e-8);

// Principal logarithm of a unitary: anti-Hermitian Z with e^Z = u and
// spectrum of -iZ inside (-pi, pi). Throws BranchCut when u has an
// eigenvalue at -1 within gap_tol, NotUnitary if u fails the unitarity
// check.
CMat unitary_log(const CMat& u, double gap_tol = 1e-8);

// Matrix exponential (scaling-and-squaring with Pade approximants). Serves
// as the generic oracle against which closed-form exponentials are checked.
CMat expm(const CMat& z);

// Largest singular value.
double operator_norm(const CMat& m);

// Orthonormal basis of the numerical nullspace: eigenvectors whose
// eigenvalue satisfies |lambda| <= rank_tol * ||m||. Returns an n x 0
// matrix when the nullspace is trivial.
CMat nullspace_basis(const Hermitian& m, double rank_tol = 1e-8);

// PSD square root of 1 - a^2 with eigenvalues of 1 - lambda^2 clamped to
// [0, 1]: roundoff may push 1 - lambda^2 slightly negative for contractions.
Hermitian sqrt_one_minus_sq(const Hermitian& a);

}  // namespace projpair
