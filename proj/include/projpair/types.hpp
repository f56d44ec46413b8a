#pragma once

#include <Eigen/Dense>
#include <complex>

namespace projpair {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

// Tolerance knobs shared by the whole library. rank_tol decides numerical
// nullspaces and generic-part certification, gap_tol decides invertibility
// gaps for sgn(). Both are relative to the operator norm of the argument.
// They flow top-down from the caller; nothing reads ambient configuration.
struct Tol {
  double rank_tol = 1e-8;
  double gap_tol = 1e-8;
};

// Certification thresholds fixed by the library contract.
namespace tols {
inline constexpr double hermitian = 1e-8;     // construction residual, relative
inline constexpr double projection = 1e-10;   // idempotency / self-adjointness
inline constexpr double unitarity = 1e-10;
inline constexpr double frame = 1e-9;         // Halmos congruence residuals
inline constexpr double davis = 1e-9;         // anti-commutation residuals
inline constexpr double commutant = 1e-9;     // commutant membership residuals
inline constexpr double conjugation = 1e-8;   // orbit conjugation residuals
inline constexpr double closed_form = 1e-9;   // closed-form exp vs oracle
inline constexpr double endpoint = 1e-7;      // log/exp endpoint residual
inline constexpr double minimality = 1e-9;    // Finsler minimality margin
inline constexpr double cluster = 1e-9;       // angle cluster grouping
}  // namespace tols

double operator_norm(const CMat& m);

// A self-adjoint operator. The constructor symmetrizes the input and fails
// if the anti-Hermitian residual exceeds tols::hermitian relative to the
// operator norm. Immutable after construction.
class Hermitian {
 public:
  explicit Hermitian(const CMat& m, double rel_tol = tols::hermitian);
  const CMat& mat() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  CMat m_;
};

// A symmetry: self-adjoint unitary (V = V* = V^{-1}). Certified on
// construction.
class Symmetry {
 public:
  explicit Symmetry(const CMat& v, double tol = tols::projection * 10);
  const CMat& mat() const { return v_; }
  Index dim() const { return v_.rows(); }

 private:
  CMat v_;
};

// Hermitian eigendecomposition, eigenvalues ascending, eigenvector columns
// orthonormal.
struct SpectralDecomp {
  RVec eigenvalues;
  CMat eigenvectors;
};

}  // namespace projpair
