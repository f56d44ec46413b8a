#include <doctest.h>

#include <cmath>

#include "projpair/davis.hpp"
#include "projpair/errors.hpp"
#include "projpair/rng.hpp"
#include "projpair/spectral.hpp"
#include "test_helpers.hpp"

using namespace projpair;
using projpair::testing::dist;
using projpair::testing::theta_pair;

TEST_CASE("pair_to_symmetry: V = [[cos, sin], [sin, -cos]] on theta pairs") {
  for (double theta : {0.3, M_PI / 4, 1.2}) {
    const GenericPair gp = theta_pair(theta);
    const DavisSymmetry v = pair_to_symmetry(gp);
    CMat expect(2, 2);
    expect << std::cos(theta), std::sin(theta), std::sin(theta),
        -std::cos(theta);
    CHECK(dist(v.mat(), expect) <= 1e-12);
    CHECK(dist(v.mat() * gp.a0() * v.mat(), CMat(-gp.a0())) <= 1e-12);
  }
  // Frozen value at pi/4.
  const DavisSymmetry v = pair_to_symmetry(theta_pair(M_PI / 4));
  CMat expect(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  expect << r, r, r, -r;
  CHECK(dist(v.mat(), expect) <= 1e-12);
}

TEST_CASE("symmetry_to_pair: scalar closed form and round trips") {
  const double lambda = 0.6;
  CMat a0(2, 2);
  a0 << lambda, 0, 0, -lambda;
  CMat flip(2, 2);
  flip << 0, 1, 1, 0;
  const Hermitian ha(a0);
  const DavisSymmetry v = DavisSymmetry::certify(ha, Symmetry(flip));
  const GenericPair gp = symmetry_to_pair(ha, v);

  const double root = std::sqrt(1.0 - lambda * lambda);
  CMat p_expect(2, 2);
  p_expect << 1.0 + lambda, root, root, 1.0 - lambda;
  p_expect *= 0.5;
  CHECK(dist(gp.p0(), p_expect) <= 1e-12);
  // Oracle checks: idempotency, difference, sum identity.
  CHECK(dist(gp.p0() * gp.p0(), gp.p0()) <= 1e-12);
  CHECK(dist(gp.p0() - gp.q0(), a0) <= 1e-12);
  const CMat s = gp.p0() + gp.q0() - CMat::Identity(2, 2);
  const Hermitian r_op = sqrt_one_minus_sq(ha);
  CHECK(dist(s, r_op.mat() * flip) <= 1e-12);

  Rng rng = make_rng(71);
  for (Index m : {4, 10}) {
    const Hermitian a = random_generic_difference(rng, m);
    const GenericPair gp2 = random_pair_over(rng, a);
    const DavisSymmetry v2 = pair_to_symmetry(gp2);
    const GenericPair back = symmetry_to_pair(gp2.a0_hermitian(), v2);
    CHECK(dist(back.p0(), gp2.p0()) <= 1e-9);
    CHECK(dist(back.q0(), gp2.q0()) <= 1e-9);
  }
}

TEST_CASE("symmetry_to_pair rejects non-anticommuting symmetries") {
  CMat a0(2, 2);
  a0 << 0.6, 0, 0, -0.6;
  const Hermitian ha(a0);
  const Symmetry diag_sym(CMat(CMat::Identity(2, 2)));
  CHECK_THROWS_AS(DavisSymmetry::certify(ha, diag_sym),
                  AnticommutationViolated);
}

TEST_CASE("symmetry_to_subspace and back") {
  CMat a0(2, 2);
  a0 << 0.4, 0, 0, -0.4;
  const Hermitian ha(a0);
  CMat flip(2, 2);
  flip << 0, 1, 1, 0;
  const DavisSymmetry v = DavisSymmetry::certify(ha, Symmetry(flip));
  const CMat basis = symmetry_to_subspace(v, ha);
  REQUIRE(basis.cols() == 1);
  // S = span{(1,1)/sqrt(2)}; P_S = (1 + V)/2.
  CHECK(std::abs(basis(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(dist(basis * basis.adjoint(),
             CMat(0.5 * (CMat::Identity(2, 2) + flip))) <= 1e-12);

  const DavisSymmetry v2 = subspace_to_symmetry(basis, ha);
  CHECK(dist(v2.mat(), flip) <= 1e-10);
}

TEST_CASE("subspace dimension is m/2; J0 maps S onto S-perp") {
  Rng rng = make_rng(72);
  for (Index m : {4, 8, 16}) {
    const Hermitian a0 = random_generic_difference(rng, m);
    const GenericPair gp = random_pair_over(rng, a0);
    const DavisSymmetry v = pair_to_symmetry(gp);
    const CMat basis = symmetry_to_subspace(v, gp.a0_hermitian());
    CHECK(basis.cols() == m / 2);
    // Oracle: rank of the compression of J0 S-basis onto the -1 eigenspace.
    const Symmetry j = j0(gp.a0_hermitian());
    const CMat mapped = j.mat() * basis;
    const CMat overlap = basis.adjoint() * mapped;  // should vanish: S perp J0 S
    CHECK(operator_norm(overlap) <= 1e-9);
  }
}

TEST_CASE("subspace_to_symmetry rejects non-codiagonal subspaces") {
  CMat a0(2, 2);
  a0 << 0.4, 0, 0, -0.4;
  const Hermitian ha(a0);
  CMat bad(2, 1);
  bad << 1, 0;  // A0-eigenvector: A0(S) = S, not S-perp
  CHECK_THROWS_AS(subspace_to_symmetry(bad, ha), NotCodiagonal);

  const CMat empty(2, 0);
  CHECK_THROWS_AS(subspace_to_symmetry(empty, ha), NotCodiagonal);
}

TEST_CASE("codiagonal_projection_check") {
  const GenericPair gp = theta_pair(M_PI / 4);
  const DavisSymmetry v = pair_to_symmetry(gp);
  const CMat basis = symmetry_to_subspace(v, gp.a0_hermitian());
  const CMat e = basis * basis.adjoint();
  CHECK(codiagonal_projection_check(Hermitian(e), gp.a0_hermitian()));

  // E = P0 fails whenever A0 != 0; oracle: the direct product at pi/4.
  const CMat prod = gp.p0() * gp.a0() * gp.p0();
  CHECK(operator_norm(prod) > 1e-6);
  CHECK_FALSE(codiagonal_projection_check(Hermitian(gp.p0()),
                                          gp.a0_hermitian()));
  CHECK_FALSE(codiagonal_projection_check(Hermitian(CMat(CMat::Zero(2, 2))),
                                          gp.a0_hermitian()));
}

TEST_CASE("j0: diagonal case, frame form, anti-commutes with every V") {
  CMat a0(2, 2);
  a0 << 0.3, 0, 0, -0.3;
  CMat expect(2, 2);
  expect << 1, 0, 0, -1;
  CHECK(dist(j0(Hermitian(a0)).mat(), expect) <= 1e-12);

  // Frame form [[S, -C], [-C, -S]]; oracle: sign via eigh of the frame A0.
  const double theta = 0.7;
  const GenericPair gp = theta_pair(theta);
  const Symmetry j = j0(gp.a0_hermitian());
  const CMat jf = gp.frame().to_frame(j.mat());
  CMat j_expect(2, 2);
  j_expect << std::sin(theta), -std::cos(theta), -std::cos(theta),
      -std::sin(theta);
  CHECK(dist(jf, j_expect) <= 1e-10);

  Rng rng = make_rng(73);
  for (Index m : {4, 8}) {
    const Hermitian a = random_generic_difference(rng, m);
    const GenericPair g2 = random_pair_over(rng, a);
    const Symmetry jm = j0(g2.a0_hermitian());
    const DavisSymmetry v = pair_to_symmetry(g2);
    CHECK(operator_norm(v.mat() * jm.mat() + jm.mat() * v.mat()) <= 1e-9);
  }

  CHECK_THROWS_AS(j0(Hermitian(CMat(CMat::Zero(2, 2)))), SingularSign);
}

TEST_CASE("full four-way cycle for random generic pairs up to m = 64") {
  Rng rng = make_rng(74);
  for (Index m : {2, 8, 64}) {
    const Hermitian a0 = random_generic_difference(rng, m);
    const GenericPair gp = random_pair_over(rng, a0);
    const DavisSymmetry v = pair_to_symmetry(gp);
    const CMat basis = symmetry_to_subspace(v, gp.a0_hermitian());
    const CMat e = basis * basis.adjoint();
    CHECK(codiagonal_projection_check(Hermitian(e), gp.a0_hermitian()));
    const DavisSymmetry v2 = subspace_to_symmetry(basis, gp.a0_hermitian());
    CHECK(dist(v2.mat(), v.mat()) <= 1e-9);
    const GenericPair back = symmetry_to_pair(gp.a0_hermitian(), v2);
    CHECK(dist(back.p0(), gp.p0()) <= 1e-9);
    CHECK(dist(back.q0(), gp.q0()) <= 1e-9);
  }
}

TEST_CASE("sum identity ||P+Q-1|| = ||(1-A0^2)^(1/2)||") {
  Rng rng = make_rng(75);
  const Hermitian a0 = random_generic_difference(rng, 12);
  for (int k = 0; k < 5; ++k) {
    const GenericPair gp = random_pair_over(rng, a0);
    const CMat s = gp.p0() + gp.q0() - CMat::Identity(12, 12);
    CHECK(operator_norm(s) ==
          doctest::Approx(operator_norm(sqrt_one_minus_sq(a0).mat()))
              .epsilon(1e-9));
  }
}

TEST_CASE("non-comparability: sums straddle in both directions") {
  Rng rng = make_rng(76);
  const Hermitian a0 = random_generic_difference(rng, 8);
  const GenericPair gp0 = random_pair_over(rng, a0);
  for (int k = 0; k < 10; ++k) {
    const GenericPair gp1 = random_pair_over(rng, a0);
    const CMat diff = (gp1.p0() + gp1.q0()) - (gp0.p0() + gp0.q0());
    if (operator_norm(diff) < 1e-6) continue;  // same pair drawn
    const SpectralDecomp d = eigh(Hermitian(diff));
    CHECK(d.eigenvalues.maxCoeff() > 1e-8);
    CHECK(d.eigenvalues.minCoeff() < -1e-8);
  }
}

TEST_CASE("spectral symmetry of A0 with multiplicity") {
  Rng rng = make_rng(77);
  const Hermitian a0 = random_generic_difference(rng, 16);
  const SpectralDecomp d = eigh(a0);
  for (Index i = 0; i < 8; ++i) {
    CHECK(std::abs(d.eigenvalues(i) + d.eigenvalues(15 - i)) <= 1e-9);
  }
}

TEST_CASE("empty generic part: zero-dimensional davis data") {
  const Hermitian a0((CMat(0, 0)));
  const DavisSymmetry v = DavisSymmetry::certify(a0, Symmetry(CMat(0, 0)));
  const GenericPair gp = symmetry_to_pair(a0, v);
  CHECK(gp.dim() == 0);
}
