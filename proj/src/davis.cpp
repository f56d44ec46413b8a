#include "projpair/davis.hpp"

#include <cmath>
#include <sstream>

#include "projpair/errors.hpp"
#include "projpair/spectral.hpp"

namespace projpair {

namespace {

double anticommutation_residual(const CMat& v, const CMat& a0) {
  return operator_norm(v * a0 + a0 * v);
}

}  // namespace

DavisSymmetry DavisSymmetry::certify(const Hermitian& a0, const Symmetry& v,
                                     double rel_tol) {
  if (a0.dim() != v.dim()) {
    throw AnticommutationViolated("DavisSymmetry: dimension mismatch");
  }
  const double norm_a = operator_norm(a0.mat());
  const double res = anticommutation_residual(v.mat(), a0.mat());
  if (res > rel_tol * std::max(norm_a, 1e-300)) {
    std::ostringstream msg;
    msg << "DavisSymmetry: ||V A0 + A0 V|| = " << res << " exceeds "
        << rel_tol << " * ||A0||";
    throw AnticommutationViolated(msg.str());
  }
  return DavisSymmetry(v);
}

DavisSymmetry pair_to_symmetry(const GenericPair& gp, const Tol& tol) {
  const Index m = gp.dim();
  if (m == 0) {
    return DavisSymmetry::certify(Hermitian(CMat(0, 0)),
                                  Symmetry(CMat(0, 0)));
  }
  const Hermitian s(gp.p0() + gp.q0() - CMat::Identity(m, m));
  const Symmetry v = matrix_sign(s, tol.gap_tol);

  const double swap_res = operator_norm(v.mat() * gp.p0() * v.mat() - gp.q0());
  if (swap_res > tols::davis) {
    std::ostringstream msg;
    msg << "pair_to_symmetry: ||V P0 V - Q0|| = " << swap_res;
    throw AnticommutationViolated(msg.str());
  }
  return DavisSymmetry::certify(gp.a0_hermitian(), v);
}

GenericPair symmetry_to_pair(const Hermitian& a0, const DavisSymmetry& v,
                             const Tol& tol) {
  const Index m = a0.dim();
  if (v.dim() != m) {
    throw AnticommutationViolated("symmetry_to_pair: dimension mismatch");
  }
  if (m == 0) return GenericPair::create(CMat(0, 0), CMat(0, 0), tol);

  const double norm_a = operator_norm(a0.mat());
  const double res = anticommutation_residual(v.mat(), a0.mat());
  if (res > tols::davis * std::max(norm_a, 1e-300)) {
    std::ostringstream msg;
    msg << "symmetry_to_pair: ||V A0 + A0 V|| = " << res;
    throw AnticommutationViolated(msg.str());
  }

  const Hermitian r = sqrt_one_minus_sq(a0);
  const CMat id = CMat::Identity(m, m);
  const CMat rv = r.mat() * v.mat();
  const CMat p = 0.5 * (id + a0.mat() + rv);
  const CMat q = 0.5 * (id - a0.mat() + rv);
  return GenericPair::create(p, q, tol);
}

CMat symmetry_to_subspace(const DavisSymmetry& v, const Hermitian& a0,
                          const Tol& tol) {
  const SpectralDecomp d = eigh(Hermitian(v.mat()));
  std::vector<Index> plus, minus;
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    (d.eigenvalues(i) > 0 ? plus : minus).push_back(i);
  }
  CMat basis(v.dim(), static_cast<Index>(plus.size()));
  CMat basis_perp(v.dim(), static_cast<Index>(minus.size()));
  for (size_t j = 0; j < plus.size(); ++j) {
    basis.col(static_cast<Index>(j)) = d.eigenvectors.col(plus[j]);
  }
  for (size_t j = 0; j < minus.size(); ++j) {
    basis_perp.col(static_cast<Index>(j)) = d.eigenvectors.col(minus[j]);
  }

  const double norm_a = std::max(operator_norm(a0.mat()), 1e-300);
  const double res1 =
      operator_norm(basis.adjoint() * a0.mat() * basis) / norm_a;
  const double res2 =
      operator_norm(basis_perp.adjoint() * a0.mat() * basis_perp) / norm_a;
  if (res1 > tols::davis || res2 > tols::davis) {
    std::ostringstream msg;
    msg << "symmetry_to_subspace: A0(S) not orthogonal to S, residuals "
        << res1 << ", " << res2;
    throw NotCodiagonal(msg.str());
  }
  (void)tol;
  return basis;
}

DavisSymmetry subspace_to_symmetry(const CMat& basis, const Hermitian& a0,
                                   const Tol& tol) {
  const Index m = a0.dim();
  if (basis.rows() != m) {
    throw NotCodiagonal("subspace_to_symmetry: basis dimension mismatch");
  }
  if (basis.cols() > 0) {
    const double ortho_res = operator_norm(
        basis.adjoint() * basis - CMat::Identity(basis.cols(), basis.cols()));
    if (ortho_res > tols::unitarity * 100) {
      throw NotCodiagonal("subspace_to_symmetry: basis not orthonormal");
    }
  }
  const CMat ps = basis.cols() > 0
                      ? CMat(basis * basis.adjoint())
                      : CMat(CMat::Zero(m, m));
  const CMat ps_perp = CMat::Identity(m, m) - ps;
  const double norm_a = std::max(operator_norm(a0.mat()), 1e-300);
  const double res1 = operator_norm(ps * a0.mat() * ps) / norm_a;
  const double res2 = operator_norm(ps_perp * a0.mat() * ps_perp) / norm_a;
  if (res1 > tols::davis || res2 > tols::davis) {
    std::ostringstream msg;
    msg << "subspace_to_symmetry: A0(S) not in S-perp (residuals " << res1
        << ", " << res2 << ")";
    throw NotCodiagonal(msg.str());
  }
  (void)tol;
  const Symmetry v(2.0 * ps - CMat::Identity(m, m));
  return DavisSymmetry::certify(a0, v, tols::davis);
}

bool codiagonal_projection_check(const Hermitian& e, const Hermitian& a0,
                                 const Tol& tol) {
  (void)tol;
  const Index m = a0.dim();
  const CMat e_perp = CMat::Identity(m, m) - e.mat();
  const double norm_a = std::max(operator_norm(a0.mat()), 1e-300);
  const double res1 = operator_norm(e.mat() * a0.mat() * e.mat()) / norm_a;
  const double res2 = operator_norm(e_perp * a0.mat() * e_perp) / norm_a;
  return res1 <= tols::davis && res2 <= tols::davis;
}

Symmetry j0(const Hermitian& a0, const Tol& tol) {
  return matrix_sign(a0, tol.rank_tol);
}

}  // namespace projpair
