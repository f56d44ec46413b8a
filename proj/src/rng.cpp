#include "projpair/rng.hpp"

#include <Eigen/QR>
#include <cmath>

#include "projpair/davis.hpp"
#include "projpair/errors.hpp"
#include "projpair/spectral.hpp"

namespace projpair {

CMat randn_complex(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> g;
  CMat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = Complex(g(rng), g(rng));
    }
  }
  return m;
}

CMat haar_unitary(Rng& rng, Index n) {
  if (n == 0) return CMat(0, 0);
  const CMat g = randn_complex(rng, n, n);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

Hermitian random_hermitian(Rng& rng, Index n, double scale) {
  const CMat g = randn_complex(rng, n, n);
  return Hermitian(0.5 * scale * (g + g.adjoint().eval()));
}

CMat random_gamma_commuting_antihermitian(Rng& rng, const HalmosFrame& frame,
                                          double scale) {
  const Index l = frame.half_dim();
  CMat y = CMat::Zero(l, l);
  for (const auto& [begin, end] : frame.clusters()) {
    const Index k = end - begin;
    const CMat g = randn_complex(rng, k, k);
    y.block(begin, begin, k, k) = 0.5 * scale * (g - g.adjoint().eval());
  }
  return y;
}

CMat random_gamma_commuting_unitary(Rng& rng, const HalmosFrame& frame) {
  const Index l = frame.half_dim();
  CMat w = CMat::Zero(l, l);
  for (const auto& [begin, end] : frame.clusters()) {
    const Index k = end - begin;
    w.block(begin, begin, k, k) = haar_unitary(rng, k);
  }
  return w;
}

Hermitian random_generic_difference(Rng& rng, Index m, double lo, double hi) {
  if (m % 2 != 0 || m < 2) {
    throw InvalidArgument("random_generic_difference: m must be even, >= 2");
  }
  std::uniform_real_distribution<double> u(lo, hi);
  RVec lambdas(m);
  for (Index k = 0; k < m / 2; ++k) {
    const double v = u(rng);
    lambdas(2 * k) = v;
    lambdas(2 * k + 1) = -v;
  }
  const CMat q = haar_unitary(rng, m);
  return Hermitian(q * lambdas.asDiagonal().toDenseMatrix().cast<Complex>() *
                   q.adjoint());
}

GenericPair random_pair_over(Rng& rng, const Hermitian& a0, const Tol& tol) {
  const SpectralDecomp d = eigh(a0);
  const Index m = a0.dim();
  std::vector<Index> pos, neg;
  for (Index i = 0; i < m; ++i) {
    (d.eigenvalues(i) > 0 ? pos : neg).push_back(i);
  }
  if (pos.size() != neg.size()) {
    throw DegenerateSpectrum("random_pair_over: asymmetric spectrum");
  }
  std::sort(neg.begin(), neg.end(), [&](Index i, Index j) {
    return std::abs(d.eigenvalues(i)) < std::abs(d.eigenvalues(j));
  });
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  CMat v = CMat::Zero(m, m);
  for (size_t k = 0; k < pos.size(); ++k) {
    const Complex omega = std::polar(1.0, phase(rng));
    const CVec e = d.eigenvectors.col(pos[k]);
    const CVec f = d.eigenvectors.col(neg[k]);
    v += omega * (f * e.adjoint()) + std::conj(omega) * (e * f.adjoint());
  }
  const DavisSymmetry dv = DavisSymmetry::certify(a0, Symmetry(v));
  return symmetry_to_pair(a0, dv, tol);
}

}  // namespace projpair
