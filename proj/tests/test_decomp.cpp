#include <doctest.h>

#include <cmath>

#include "projpair/davis.hpp"
#include "projpair/decomp.hpp"
#include "projpair/errors.hpp"
#include "projpair/rng.hpp"
#include "projpair/spectral.hpp"
#include "test_helpers.hpp"

using namespace projpair;
using projpair::testing::dist;
using projpair::testing::multi_theta_pair;
using projpair::testing::theta_pair;

TEST_CASE("validate_pair accepts projections and names violations") {
  const CMat id = CMat::Identity(2, 2);
  const ProjectionPair same = validate_pair(id, id);
  CHECK(dist(same.p() - same.q(), CMat::Zero(2, 2)) == 0.0);

  CMat p(2, 2), q(2, 2);
  p << 1, 0, 0, 0;
  q << 0, 0, 0, 1;
  const ProjectionPair diag = validate_pair(p, q);
  CMat a(2, 2);
  a << 1, 0, 0, -1;
  CHECK(dist(diag.p() - diag.q(), a) == 0.0);

  CMat bad(2, 2);
  bad << 1, 1, 0, 0;  // idempotent but not self-adjoint
  CHECK_THROWS_AS(validate_pair(bad, q), NotAProjection);
  CMat not_idem(2, 2);
  not_idem << 0.5, 0, 0, 0;
  CHECK_THROWS_AS(validate_pair(not_idem, q), NotAProjection);
}

TEST_CASE("three_space_split classifies eigenvalues") {
  CMat a(3, 3);
  a.setZero();
  a(0, 0) = 1;
  a(1, 1) = -1;
  const ThreeSpaceSplit s = three_space_split(Hermitian(a));
  CHECK(s.dim_plus() == 1);
  CHECK(s.dim_minus() == 1);
  CHECK(s.dim_null() == 1);
  CHECK(s.dim_generic() == 0);
  CHECK(std::abs(s.basis_plus(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(s.basis_minus(1, 0)) == doctest::Approx(1.0));

  // Strictly inside (0,1) in modulus: all generic. Oracle: eigh.
  CMat g(2, 2);
  g << 1.0 / std::sqrt(2.0), 0, 0, -1.0 / std::sqrt(2.0);
  const SpectralDecomp oracle = eigh(Hermitian(g));
  for (Index i = 0; i < 2; ++i) {
    const double l = oracle.eigenvalues(i);
    CHECK(std::abs(l) > 1e-8);
    CHECK(std::abs(l * l - 1.0) > 1e-8);
  }
  CHECK(three_space_split(Hermitian(g)).dim_generic() == 2);

  CHECK(three_space_split(Hermitian(CMat::Zero(3, 3))).dim_null() == 3);
  CHECK_THROWS_AS(three_space_split(Hermitian(CMat(2.0 * CMat::Identity(2, 2)))),
                  NotAContraction);
}

TEST_CASE("three_space_split round trip recovers A") {
  Rng rng = make_rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    // Mix null, +-1 and generic eigenvalues under a random basis.
    RVec vals(7);
    vals << 0, 0, 1, -1, 0.3, -0.3, 0.77;
    const CMat u = haar_unitary(rng, 7);
    const Hermitian a(u * vals.asDiagonal().toDenseMatrix().cast<Complex>() *
                      u.adjoint());
    const ThreeSpaceSplit s = three_space_split(a);
    CHECK(s.dim_null() == 2);
    CHECK(s.dim_plus() == 1);
    CHECK(s.dim_minus() == 1);
    CHECK(s.dim_generic() == 3);

    const CMat t = s.assembled();
    CHECK(dist(t.adjoint() * t, CMat::Identity(7, 7)) <= 1e-12 * 7);
    CMat d = CMat::Zero(7, 7);
    d(2, 2) = 1;
    d(3, 3) = -1;
    d.block(4, 4, 3, 3) =
        s.basis_generic.adjoint() * a.mat() * s.basis_generic;
    CHECK(dist(t * d * t.adjoint(), a.mat()) <= 1e-10);
  }
}

TEST_CASE("generic_part of the pi/4 pair: evaluated Halmos closed form") {
  const GenericPair gp = theta_pair(M_PI / 4);
  CMat a0(2, 2);
  a0 << 0.5, -0.5, -0.5, -0.5;  // [[s^2, -cs], [-cs, -s^2]] at theta = pi/4
  CHECK(dist(gp.a0(), a0) <= 1e-12);
  CHECK(gp.dim() == 2);
}

TEST_CASE("generic_part: direct-sum locality and empty error") {
  // Block sum with an extra coordinate where P' = Q' = 1.
  CMat p = CMat::Zero(3, 3), q = CMat::Zero(3, 3);
  const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  p(0, 0) = 1;
  q.topLeftCorner(2, 2) << c * c, c * s, c * s, s * s;
  p(2, 2) = 1;
  q(2, 2) = 1;
  const GenericPair gp = generic_part(validate_pair(p, q));
  CHECK(gp.dim() == 2);
  CMat a0(2, 2);
  a0 << 0.5, -0.5, -0.5, -0.5;
  CHECK(dist(gp.a0(), a0) <= 1e-12);

  const CMat id = CMat::Identity(2, 2);
  CHECK_THROWS_AS(generic_part(validate_pair(id, id)), EmptyGenericPart);
}

TEST_CASE("halmos_frame: scalar angle via the compression oracle") {
  const GenericPair gp = theta_pair(M_PI / 4);
  // Oracle: arccos of the eigenvalue of P0 Q0 P0 restricted to R(P0).
  const double c2 = gp.q0()(0, 0).real();
  CHECK(gp.frame().gamma()(0) ==
        doctest::Approx(std::acos(std::sqrt(c2))).epsilon(1e-12));
  CHECK(gp.frame().cosines()(0) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("halmos_frame: angles sorted ascending on a block sum") {
  const GenericPair gp = multi_theta_pair({M_PI / 3, M_PI / 6}, 55);
  REQUIRE(gp.frame().gamma().size() == 2);
  CHECK(gp.frame().gamma()(0) == doctest::Approx(M_PI / 6).epsilon(1e-10));
  CHECK(gp.frame().gamma()(1) == doctest::Approx(M_PI / 3).epsilon(1e-10));
}

TEST_CASE("halmos_frame congruences and A0 frame form up to m = 64") {
  Rng rng = make_rng(202);
  for (Index m : {4, 16, 64}) {
    const Hermitian a0 = random_generic_difference(rng, m);
    const GenericPair gp = random_pair_over(rng, a0);
    const HalmosFrame& fr = gp.frame();
    const Index l = m / 2;

    CMat p_exp = CMat::Zero(m, m);
    p_exp.topLeftCorner(l, l) = CMat::Identity(l, l);
    CHECK(dist(fr.to_frame(gp.p0()), p_exp) <= 1e-9);

    const RVec c = fr.cosines(), s = fr.sines();
    const CMat q_exp = fr.assemble_blocks(
        (c.array().square()).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (c.array() * s.array()).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (c.array() * s.array()).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (s.array().square()).matrix().asDiagonal().toDenseMatrix().cast<Complex>());
    CHECK(dist(fr.to_frame(gp.q0()), q_exp) <= 1e-9);

    // A0 in the frame: [[S^2, -CS], [-CS, -S^2]].
    const CMat a_exp = fr.assemble_blocks(
        (s.array().square()).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (-(c.array() * s.array())).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (-(c.array() * s.array())).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (-(s.array().square())).matrix().asDiagonal().toDenseMatrix().cast<Complex>());
    CHECK(dist(fr.to_frame(gp.a0()), a_exp) <= 1e-9);

    CHECK(gp.dim() % 2 == 0);
  }
}

TEST_CASE("kato identity on random pairs") {
  Rng rng = make_rng(303);
  for (Index m : {2, 8, 32}) {
    const Hermitian a0 = random_generic_difference(rng, m);
    const GenericPair gp = random_pair_over(rng, a0);
    const CMat id = CMat::Identity(m, m);
    const CMat a = gp.p0() - gp.q0();
    const CMat s = gp.p0() + gp.q0() - id;
    CHECK(dist(a * a + s * s, id) <= 1e-10);
  }
}

TEST_CASE("is_difference_of_projections: witness and refusals") {
  CMat sym(2, 2);
  sym << 0.5, 0, 0, -0.5;
  const DifferenceWitness w = is_difference_of_projections(Hermitian(sym));
  REQUIRE(w.is_difference);
  REQUIRE(w.witness.has_value());
  CHECK(dist(w.witness->p() - w.witness->q(), sym) <= 1e-10);

  CMat asym(2, 2);
  asym << 0.5, 0, 0, 0.5;
  const DifferenceWitness bad = is_difference_of_projections(Hermitian(asym));
  CHECK_FALSE(bad.is_difference);
  CHECK_FALSE(bad.diagnostic.empty());

  CMat tri(3, 3);
  tri.setZero();
  tri(0, 0) = 1;
  tri(2, 2) = -1;
  const DifferenceWitness sw = is_difference_of_projections(Hermitian(tri));
  REQUIRE(sw.is_difference);
  CHECK(dist(sw.witness->p() - sw.witness->q(), tri) <= 1e-12);

  CHECK_FALSE(
      is_difference_of_projections(Hermitian(CMat(2.0 * CMat::Identity(2, 2))))
          .is_difference);
}

TEST_CASE("is_difference witness on random symmetric spectra") {
  Rng rng = make_rng(404);
  for (Index m : {4, 12}) {
    const Hermitian a0 = random_generic_difference(rng, m);
    const DifferenceWitness w = is_difference_of_projections(a0);
    REQUIRE(w.is_difference);
    CHECK(dist(w.witness->p() - w.witness->q(), a0.mat()) <= 1e-10);
  }
}

TEST_CASE("friedrichs_cos on the standard fixtures") {
  // Oracle for the scalar Gamma: direct norm of P0 Q0.
  const GenericPair gp = theta_pair(M_PI / 3);
  const ProjectionPair pair = validate_pair(gp.p0(), gp.q0());
  CHECK(operator_norm(gp.p0() * gp.q0()) ==
        doctest::Approx(std::cos(M_PI / 3)).epsilon(1e-12));
  CHECK(friedrichs_cos(pair) == doctest::Approx(0.5).epsilon(1e-10));

  CMat d(2, 2);
  d << 1, 0, 0, 0;
  CHECK(friedrichs_cos(validate_pair(d, d)) <= 1e-12);

  CMat q(2, 2);
  q << 0, 0, 0, 1;
  CHECK(friedrichs_cos(validate_pair(d, q)) <= 1e-12);
}

TEST_CASE("degenerate angles are rejected") {
  // theta = 0 collapses R(P) n R(Q) into the pair: not generic.
  CMat p(2, 2), q(2, 2);
  p << 1, 0, 0, 0;
  q << 1, 0, 0, 0;
  CHECK_THROWS_AS(GenericPair::create(p, q), DegenerateAngle);
}
