#include <doctest.h>

#include <cmath>

#include "projpair/errors.hpp"
#include "projpair/rng.hpp"
#include "projpair/spectral.hpp"
#include "test_helpers.hpp"

using namespace projpair;
using projpair::testing::dist;

TEST_CASE("eigh on diagonal input") {
  CMat m(2, 2);
  m << 3, 0, 0, 1;
  const SpectralDecomp d = eigh(Hermitian(m));
  CHECK(d.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(d.eigenvalues(1) == doctest::Approx(3.0));
  CHECK(std::abs(d.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(d.eigenvectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eigh Pauli-X spectrum") {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  const SpectralDecomp d = eigh(Hermitian(m));
  CHECK(d.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(d.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("eigh random 8x8: reconstruction and orthonormality") {
  Rng rng = make_rng(7);
  const Hermitian m = random_hermitian(rng, 8);
  const SpectralDecomp d = eigh(m);
  const CMat recon = d.eigenvectors *
                     d.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                     d.eigenvectors.adjoint();
  CHECK(dist(recon, m.mat()) <= 1e-12 * 8 * operator_norm(m.mat()));
  CHECK(dist(d.eigenvectors.adjoint() * d.eigenvectors,
             CMat::Identity(8, 8)) <= 1e-12 * 8);
}

TEST_CASE("matrix_function identity and square") {
  Rng rng = make_rng(11);
  const Hermitian m = random_hermitian(rng, 5);
  CHECK(dist(matrix_function(m, [](double x) { return x; }).mat(), m.mat()) <=
        1e-12);

  CMat d(2, 2);
  d << 2, 0, 0, -3;
  const Hermitian sq = matrix_function(Hermitian(d),
                                       [](double x) { return x * x; });
  CMat expect(2, 2);
  expect << 4, 0, 0, 9;
  CHECK(dist(sq.mat(), expect) <= 1e-12);
}

TEST_CASE("matrix_function sqrt on PSD squares back") {
  Rng rng = make_rng(13);
  const CMat g = randn_complex(rng, 6, 6);
  const Hermitian psd(g * g.adjoint());
  const Hermitian root =
      matrix_function(psd, [](double x) { return std::sqrt(std::max(0.0, x)); });
  CHECK(dist(root.mat() * root.mat(), psd.mat()) <=
        1e-10 * operator_norm(psd.mat()));
}

TEST_CASE("matrix_function domain error names the eigenvalue") {
  CMat d(2, 2);
  d << -1, 0, 0, 4;
  CHECK_THROWS_AS(matrix_function(Hermitian(d),
                                  [](double x) { return std::sqrt(x); }),
                  DomainError);
}

TEST_CASE("sign of diagonal and of the pi/4 Davis block") {
  CMat d(2, 2);
  d << 2, 0, 0, -3;
  CMat expect(2, 2);
  expect << 1, 0, 0, -1;
  CHECK(dist(matrix_sign(Hermitian(d)).mat(), expect) <= 1e-14);

  // Oracle: eigendecomposition of (1/2)[[1,1],[1,-1]] has eigenvalues
  // +-1/sqrt(2), so the sign is sqrt(2) times the matrix.
  CMat h(2, 2);
  h << 0.5, 0.5, 0.5, -0.5;
  const SpectralDecomp oracle = eigh(Hermitian(h));
  CHECK(oracle.eigenvalues(0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(oracle.eigenvalues(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(dist(matrix_sign(Hermitian(h)).mat(), std::sqrt(2.0) * h) <= 1e-12);
}

TEST_CASE("sign rejects eigenvalues inside the gap") {
  CMat d(2, 2);
  d << 1e-14, 0, 0, 1;
  CHECK_THROWS_AS(matrix_sign(Hermitian(d), 1e-8), SingularSign);
}

TEST_CASE("sign properties: V^2 = 1 and V M = |M|") {
  Rng rng = make_rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const Hermitian m = random_hermitian(rng, 6);
    const Symmetry v = matrix_sign(m);
    const Index n = m.dim();
    CHECK(dist(v.mat() * v.mat(), CMat::Identity(n, n)) <= 1e-10);
    const Hermitian abs_m =
        matrix_function(m, [](double x) { return std::abs(x); });
    CHECK(dist(v.mat() * m.mat(), abs_m.mat()) <= 1e-10);
    const SpectralDecomp d = eigh(abs_m);
    CHECK(d.eigenvalues.minCoeff() >= -1e-12);
  }
}

TEST_CASE("unitary_log of identity and diagonal phases") {
  CHECK(dist(unitary_log(CMat::Identity(3, 3)), CMat::Zero(3, 3)) <= 1e-12);

  CMat u(2, 2);
  u << std::polar(1.0, M_PI / 3), 0, 0, std::polar(1.0, -M_PI / 3);
  CMat expect(2, 2);
  expect << Complex(0, M_PI / 3), 0, 0, Complex(0, -M_PI / 3);
  CHECK(dist(unitary_log(u), expect) <= 1e-12);
}

TEST_CASE("unitary_log round trip through expm") {
  Rng rng = make_rng(19);
  const CMat g = randn_complex(rng, 5, 5);
  CMat w = 0.5 * (g - g.adjoint().eval());
  w *= 1.0 / operator_norm(w);  // ||W|| = 1
  const CMat u = expm(w);
  CHECK(dist(unitary_log(u), w) <= 1e-9);
}

TEST_CASE("unitary_log branch cut error") {
  CMat u(2, 2);
  u << -1, 0, 0, 1;
  CHECK_THROWS_AS(unitary_log(u), BranchCut);
  CHECK_THROWS_AS(unitary_log(CMat(2.0 * CMat::Identity(2, 2))), NotUnitary);
}

TEST_CASE("expm basics and unitarity on anti-Hermitian input") {
  CHECK(dist(expm(CMat::Zero(3, 3)), CMat::Identity(3, 3)) <= 1e-15);

  CMat d(2, 2);
  d << Complex(0, 0.4), 0, 0, Complex(0, -1.3);
  CMat expect(2, 2);
  expect << std::polar(1.0, 0.4), 0, 0, std::polar(1.0, -1.3);
  CHECK(dist(expm(d), expect) <= 1e-13);

  Rng rng = make_rng(23);
  const CMat g = randn_complex(rng, 7, 7);
  const CMat z = 0.5 * (g - g.adjoint().eval());
  const CMat e = expm(z);
  CHECK(dist(e * expm(CMat(-z)), CMat::Identity(7, 7)) <= 1e-11);
  CHECK(dist(e.adjoint() * e, CMat::Identity(7, 7)) <= 1e-11);
}

TEST_CASE("operator_norm: diagonal, rank one, randomized lower bound") {
  CMat d(2, 2);
  d << 3, 0, 0, -5;
  CHECK(operator_norm(d) == doctest::Approx(5.0));

  Rng rng = make_rng(29);
  CVec u = randn_complex(rng, 6, 1);
  CVec v = randn_complex(rng, 6, 1);
  u.normalize();
  v.normalize();
  CHECK(operator_norm(u * v.adjoint()) == doctest::Approx(1.0));

  // Oracle: max over random unit vectors of ||Mx|| lower-bounds the norm.
  const CMat m = randn_complex(rng, 5, 5);
  const double norm = operator_norm(m);
  double best = 0.0;
  for (int k = 0; k < 10000; ++k) {
    CVec x = randn_complex(rng, 5, 1);
    x.normalize();
    best = std::max(best, (m * x).norm());
  }
  CHECK(best <= norm + 1e-12);
  CHECK(best >= norm - 1e-3 * norm);
}

TEST_CASE("nullspace_basis thresholds") {
  CMat d(2, 2);
  d << 0, 0, 0, 1;
  const CMat b = nullspace_basis(Hermitian(d));
  REQUIRE(b.cols() == 1);
  CHECK(std::abs(b(0, 0)) == doctest::Approx(1.0));

  CMat inv(2, 2);
  inv << 2, 0, 0, 1;
  CHECK(nullspace_basis(Hermitian(inv)).cols() == 0);

  CMat near(2, 2);
  near << 1e-12, 0, 0, 1;
  const CMat nb = nullspace_basis(Hermitian(near), 1e-8);
  REQUIRE(nb.cols() == 1);
  CHECK(std::abs(nb(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("matrix_function respects composition for polynomials") {
  Rng rng = make_rng(31);
  const Hermitian m = random_hermitian(rng, 6);
  auto f = [](double x) { return 2.0 * x * x - 1.0; };
  auto g = [](double x) { return x * x * x + 0.5 * x; };
  const Hermitian inner = matrix_function(m, g);
  const Hermitian two_step = matrix_function(inner, f);
  const Hermitian one_step =
      matrix_function(m, [&](double x) { return f(g(x)); });
  CHECK(dist(two_step.mat(), one_step.mat()) <= 1e-10);
}

TEST_CASE("hermitian construction symmetrizes and rejects junk") {
  Rng rng = make_rng(37);
  const CMat g = randn_complex(rng, 4, 4);
  CHECK_THROWS_AS(Hermitian(g), NotHermitian);  // generic matrix
  const Hermitian h(g + g.adjoint().eval());
  CHECK(dist(h.mat(), h.mat().adjoint()) == 0.0);

  CMat nan_mat = CMat::Zero(2, 2);
  nan_mat(0, 0) = Complex(std::nan(""), 0);
  CHECK_THROWS_AS(Hermitian(nan_mat), NotHermitian);
}

TEST_CASE("unitary_log inverts expm below the branch margin") {
  Rng rng = make_rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const CMat g = randn_complex(rng, 6, 6);
    CMat z = 0.5 * (g - g.adjoint().eval());
    std::uniform_real_distribution<double> mag(0.05, M_PI - 0.1);
    z *= mag(rng) / operator_norm(z);
    CHECK(dist(unitary_log(expm(z)), z) <= 1e-9);
  }
}
