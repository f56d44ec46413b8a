#include "projpair/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

#include "projpair/errors.hpp"

namespace projpair {

double operator_norm(const CMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

SpectralDecomp eigh(const Hermitian& m) {
  const Index n = m.dim();
  if (n == 0) return {RVec(0), CMat(0, 0)};
  Eigen::SelfAdjointEigenSolver<CMat> solver(m.mat());
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigh: eigensolver did not converge (n = " << n
        << ", info = " << static_cast<int>(solver.info()) << ")";
    throw EigenSolverFailure(msg.str());
  }
  SpectralDecomp d{solver.eigenvalues(), solver.eigenvectors()};
  const double scale = d.eigenvalues.cwiseAbs().maxCoeff();
  const CMat recon = d.eigenvectors *
                     d.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                     d.eigenvectors.adjoint();
  const double res = operator_norm(recon - m.mat());
  if (res > 1e-12 * static_cast<double>(n) * std::max(scale, 1.0)) {
    std::ostringstream msg;
    msg << "eigh: reconstruction residual " << res << " too large for n = "
        << n;
    throw EigenSolverFailure(msg.str());
  }
  return d;
}

Hermitian matrix_function(const Hermitian& m,
                          const std::function<double(double)>& f) {
  const SpectralDecomp d = eigh(m);
  RVec mapped(d.eigenvalues.size());
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    const double v = f(d.eigenvalues(i));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "matrix_function: f is not finite at eigenvalue "
          << d.eigenvalues(i);
      throw DomainError(msg.str());
    }
    mapped(i) = v;
  }
  const CMat out = d.eigenvectors *
                   mapped.asDiagonal().toDenseMatrix().cast<Complex>() *
                   d.eigenvectors.adjoint();
  return Hermitian(out);
}

Symmetry matrix_sign(const Hermitian& m, double gap_tol) {
  const SpectralDecomp d = eigh(m);
  const double scale =
      d.eigenvalues.size() ? d.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    if (std::abs(d.eigenvalues(i)) <= gap_tol * scale) {
      std::ostringstream msg;
      msg << "sign: eigenvalue " << d.eigenvalues(i)
          << " inside the gap (" << gap_tol << " * ||M|| = "
          << gap_tol * scale << "); nullspace is not trivial";
      throw SingularSign(msg.str());
    }
  }
  RVec signs(d.eigenvalues.size());
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    signs(i) = d.eigenvalues(i) > 0.0 ? 1.0 : -1.0;
  }
  const CMat v = d.eigenvectors *
                 signs.asDiagonal().toDenseMatrix().cast<Complex>() *
                 d.eigenvectors.adjoint();
  return Symmetry(v);
}

CMat unitary_log(const CMat& u, double gap_tol) {
  if (u.rows() != u.cols()) {
    throw NotUnitary("unitary_log: matrix is not square");
  }
  const Index n = u.rows();
  if (n == 0) return CMat(0, 0);
  const double unit_res =
      operator_norm(u.adjoint() * u - CMat::Identity(n, n));
  if (unit_res > 1e-8) {
    std::ostringstream msg;
    msg << "unitary_log: input not unitary, ||U*U - 1|| = " << unit_res;
    throw NotUnitary(msg.str());
  }
  Eigen::ComplexSchur<CMat> schur(u);
  if (schur.info() != Eigen::Success) {
    throw EigenSolverFailure("unitary_log: Schur decomposition failed");
  }
  CVec phases(n);
  for (Index i = 0; i < n; ++i) {
    const Complex lambda = schur.matrixT()(i, i);
    if (std::abs(lambda + 1.0) <= gap_tol) {
      std::ostringstream msg;
      msg << "unitary_log: eigenvalue " << lambda
          << " at the branch cut (distance to -1 within " << gap_tol << ")";
      throw BranchCut(msg.str());
    }
    phases(i) = Complex(0.0, std::arg(lambda));
  }
  const CMat q = schur.matrixU();
  CMat z = q * phases.asDiagonal() * q.adjoint();
  return 0.5 * (z - z.adjoint().eval());
}

CMat expm(const CMat& z) {
  if (z.rows() != z.cols()) {
    throw InvalidArgument("expm: matrix is not square");
  }
  if (z.rows() == 0) return CMat(0, 0);
  return z.exp();
}

CMat nullspace_basis(const Hermitian& m, double rank_tol) {
  const SpectralDecomp d = eigh(m);
  const double scale =
      d.eigenvalues.size() ? d.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  std::vector<Index> keep;
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    if (std::abs(d.eigenvalues(i)) <= rank_tol * scale) keep.push_back(i);
  }
  CMat basis(m.dim(), static_cast<Index>(keep.size()));
  for (Index j = 0; j < static_cast<Index>(keep.size()); ++j) {
    basis.col(j) = d.eigenvectors.col(keep[static_cast<size_t>(j)]);
  }
  return basis;
}

Hermitian sqrt_one_minus_sq(const Hermitian& a) {
  return matrix_function(a, [](double lambda) {
    const double v = 1.0 - lambda * lambda;
    return std::sqrt(std::min(1.0, std::max(0.0, v)));
  });
}

}  // namespace projpair
