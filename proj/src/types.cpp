#include "projpair/types.hpp"

#include <sstream>

#include "projpair/errors.hpp"
#include "projpair/spectral.hpp"

namespace projpair {

namespace {

bool all_finite(const CMat& m) {
  return m.allFinite();
}

}  // namespace

Hermitian::Hermitian(const CMat& m, double rel_tol) {
  if (m.rows() != m.cols()) {
    throw NotHermitian("Hermitian: matrix is not square");
  }
  if (!all_finite(m)) {
    throw NotHermitian("Hermitian: matrix has non-finite entries");
  }
  const double scale = operator_norm(m);
  const double residual = operator_norm(m - m.adjoint());
  if (residual > rel_tol * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "Hermitian: anti-Hermitian residual " << residual
        << " exceeds " << rel_tol << " * ||M|| = " << rel_tol * scale;
    throw NotHermitian(msg.str());
  }
  m_ = 0.5 * (m + m.adjoint().eval());
}

Symmetry::Symmetry(const CMat& v, double tol) {
  if (v.rows() != v.cols()) {
    throw NotUnitary("Symmetry: matrix is not square");
  }
  const Index n = v.rows();
  const double herm_res = operator_norm(v - v.adjoint());
  if (herm_res > tol) {
    std::ostringstream msg;
    msg << "Symmetry: not self-adjoint, residual " << herm_res;
    throw NotUnitary(msg.str());
  }
  const CMat sym = 0.5 * (v + v.adjoint().eval());
  const double invol_res =
      operator_norm(sym * sym - CMat::Identity(n, n));
  if (invol_res > tol) {
    std::ostringstream msg;
    msg << "Symmetry: V^2 != 1, residual " << invol_res;
    throw NotUnitary(msg.str());
  }
  v_ = sym;
}

}  // namespace projpair
