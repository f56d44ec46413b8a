#include "projpair/suite.hpp"

#include <cmath>

#include "projpair/davis.hpp"
#include "projpair/errors.hpp"
#include "projpair/geodesics.hpp"
#include "projpair/orbit.hpp"
#include "projpair/rng.hpp"
#include "projpair/spectral.hpp"

namespace projpair {

nlohmann::json CheckReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckItem& item : items) {
    checks.push_back({{"name", item.name},
                      {"residual", item.residual},
                      {"bound", item.bound},
                      {"pass", item.pass}});
  }
  return nlohmann::json{{"checks", checks}, {"all_pass", all_pass}};
}

CheckReport run_invariant_suite(const ProjectionPair& pair, int trials,
                                std::uint64_t seed, const Tol& tol) {
  CheckReport rep;
  auto add = [&](const std::string& name, double residual, double bound) {
    const bool pass = residual <= bound;
    rep.items.push_back({name, residual, bound, pass});
    rep.all_pass = rep.all_pass && pass;
  };

  const Index n = pair.dim();
  const CMat id = CMat::Identity(n, n);
  const CMat a = pair.p() - pair.q();

  // Kato identity (P-Q)^2 + (P+Q-1)^2 = 1.
  const CMat s = pair.p() + pair.q() - id;
  add("kato_identity", operator_norm(a * a + s * s - id), 1e-10);

  // Round trip through the three-space split.
  const ThreeSpaceSplit split = three_space_split(pair.difference(), tol);
  {
    const CMat t = split.assembled();
    CMat d = CMat::Zero(n, n);
    Index off = split.dim_null();
    for (Index i = 0; i < split.dim_plus(); ++i) d(off + i, off + i) = 1.0;
    off += split.dim_plus();
    for (Index i = 0; i < split.dim_minus(); ++i) d(off + i, off + i) = -1.0;
    off += split.dim_minus();
    if (split.dim_generic() > 0) {
      const CMat& bg = split.basis_generic;
      d.block(off, off, split.dim_generic(), split.dim_generic()) =
          bg.adjoint() * a * bg;
    }
    add("split_round_trip", operator_norm(t * d * t.adjoint() - a), 1e-10);
  }

  if (split.dim_generic() == 0) {
    return rep;  // a symmetry plus a null part: the fiber is a point
  }

  const GenericPair gp = generic_part(pair, split, tol);
  const Index m = gp.dim();
  const CMat idm = CMat::Identity(m, m);
  const double norm_a0 = operator_norm(gp.a0());

  add("generic_dimension_even", m % 2 == 0 ? 0.0 : 1.0, 0.5);

  // Halmos congruence residuals.
  {
    const HalmosFrame& fr = gp.frame();
    const Index l = fr.half_dim();
    CMat p_exp = CMat::Zero(m, m);
    p_exp.topLeftCorner(l, l) = CMat::Identity(l, l);
    const RVec c = fr.cosines(), sd = fr.sines();
    const CMat q_exp = fr.assemble_blocks(
        (c.array().square()).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (c.array() * sd.array()).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (c.array() * sd.array()).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (sd.array().square()).matrix().asDiagonal().toDenseMatrix().cast<Complex>());
    add("halmos_p_residual", operator_norm(fr.to_frame(gp.p0()) - p_exp),
        1e-9);
    add("halmos_q_residual", operator_norm(fr.to_frame(gp.q0()) - q_exp),
        1e-9);
    const CMat a_exp = fr.assemble_blocks(
        (sd.array().square()).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (-(c.array() * sd.array())).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (-(c.array() * sd.array())).matrix().asDiagonal().toDenseMatrix().cast<Complex>(),
        (-(sd.array().square())).matrix().asDiagonal().toDenseMatrix().cast<Complex>());
    add("halmos_a0_residual", operator_norm(fr.to_frame(gp.a0()) - a_exp),
        1e-9);
  }

  // Davis cycle: pair -> V -> S -> E -> V -> pair.
  {
    const DavisSymmetry v = pair_to_symmetry(gp, tol);
    add("davis_anticommutation",
        operator_norm(v.mat() * gp.a0() + gp.a0() * v.mat()) /
            std::max(norm_a0, 1e-300),
        1e-9);
    const CMat basis = symmetry_to_subspace(v, gp.a0_hermitian(), tol);
    add("davis_subspace_half_dimension",
        std::abs(static_cast<double>(basis.cols()) -
                 static_cast<double>(m) / 2.0),
        0.5);
    const CMat e = basis * basis.adjoint();
    add("davis_codiagonal",
        codiagonal_projection_check(Hermitian(e), gp.a0_hermitian(), tol)
            ? 0.0
            : 1.0,
        0.5);
    const DavisSymmetry v2 =
        subspace_to_symmetry(basis, gp.a0_hermitian(), tol);
    add("davis_symmetry_round_trip", operator_norm(v.mat() - v2.mat()),
        1e-9);
    const GenericPair gp2 = symmetry_to_pair(gp.a0_hermitian(), v2, tol);
    add("davis_pair_round_trip",
        std::max(operator_norm(gp2.p0() - gp.p0()),
                 operator_norm(gp2.q0() - gp.q0())),
        1e-9);
    add("davis_sum_norm_identity",
        std::abs(operator_norm(gp.p0() + gp.q0() - idm) -
                 operator_norm(sqrt_one_minus_sq(gp.a0_hermitian()).mat())),
        1e-9);
  }

  // Spectral symmetry of A0.
  {
    const SpectralDecomp d = eigh(gp.a0_hermitian());
    double worst = 0.0;
    for (Index i = 0; i < m / 2; ++i) {
      worst = std::max(worst,
                       std::abs(d.eigenvalues(i) + d.eigenvalues(m - 1 - i)));
    }
    add("spectral_symmetry", worst, 1e-9);
  }

  // Friedrichs cosine equals ||C|| from the frame.
  add("friedrichs_equals_norm_c",
      std::abs(friedrichs_cos(pair, tol) - gp.frame().cosines().maxCoeff()),
      1e-8);

  Rng rng = make_rng(seed);
  const int rounds = std::max(1, trials);

  // Randomized orbit checks: transitivity, expectation, non-comparability.
  double worst_conj = 0.0, worst_expect = 0.0, worst_noncomp = 0.0,
         worst_sum_norm = 0.0, worst_friedrichs = 0.0;
  for (int t = 0; t < rounds; ++t) {
    const GenericPair other = random_pair_over(rng, gp.a0_hermitian(), tol);
    const CMat u = intertwining_unitary(gp, other, tol);
    worst_conj = std::max(
        worst_conj,
        std::max(operator_norm(u * gp.p0() * u.adjoint() - other.p0()),
                 operator_norm(u * gp.q0() * u.adjoint() - other.q0())));
    const auto [n0, n1] = sum_norm_invariance(gp, other, tol);
    worst_sum_norm = std::max(worst_sum_norm, std::abs(n0 - n1));
    worst_friedrichs = std::max(
        worst_friedrichs,
        std::abs(friedrichs_cos(validate_pair(other.p0(), other.q0()), tol) -
                 friedrichs_cos(pair, tol)));

    const CMat diff = (other.p0() + other.q0()) - (gp.p0() + gp.q0());
    if (operator_norm(diff) > 1e-6) {
      const SpectralDecomp dd = eigh(Hermitian(diff));
      // Non-comparability: the difference must straddle zero.
      const double top = dd.eigenvalues.maxCoeff();
      const double bottom = dd.eigenvalues.minCoeff();
      worst_noncomp =
          std::max(worst_noncomp, std::max(-top + 1e-8, bottom + 1e-8));
    }

    const CMat mixed =
        random_gamma_commuting_antihermitian(rng, gp.frame(), 1.0);
    const CMat xb = random_gamma_commuting_antihermitian(rng, gp.frame(), 1.0);
    const CMat tau = gp.frame().tangents().asDiagonal().toDenseMatrix().cast<Complex>();
    const CMat member = gp.frame().to_ambient(gp.frame().assemble_blocks(
        xb, mixed, mixed, xb + tau * mixed + mixed * tau));
    const CMat em = conditional_expectation(member, gp, tol);
    worst_expect = std::max(
        worst_expect, operator_norm(conditional_expectation(em, gp, tol) - em));
  }
  add("orbit_conjugation", worst_conj, 1e-8);
  add("sum_norm_invariance", worst_sum_norm, 1e-8);
  add("friedrichs_invariance", worst_friedrichs, 1e-8);
  add("non_comparability_straddle", worst_noncomp, 0.0);
  add("expectation_idempotent", worst_expect, 1e-10);

  // Geodesic round trip on a random horizontal tangent.
  {
    CMat y = random_gamma_commuting_antihermitian(rng, gp.frame(), 1.0);
    const HorizontalTangent probe = horizontal_from_block(y, gp, tol);
    const double nz = operator_norm(probe.z_ambient());
    if (nz > 1e-12) y *= (M_PI / 2 - 0.1) / nz;
    const HorizontalTangent ht = horizontal_from_block(y, gp, tol);
    const CMat u_closed = exp_unitary_closed_form(ht, 0.7);
    add("closed_form_vs_expm",
        operator_norm(u_closed - expm(0.7 * ht.z_ambient())), 1e-9);
    const GenericPair end = exp_pair(gp, ht, 1.0, tol);
    add("geodesic_on_fiber", operator_norm(end.a0() - gp.a0()), 1e-9);
    const HorizontalTangent back = log_pair(gp, end, tol);
    add("log_exp_round_trip",
        operator_norm(back.z_ambient() - ht.z_ambient()), 1e-8);
    add("finsler_norm_consistency",
        std::abs(finsler_norm(ht) - operator_norm(ht.z_ambient())), 1e-9);
    const MinimalityReport mr =
        minimality_certificate(ht, std::max(8, trials), seed + 1, tol);
    add("minimality_margin", mr.certified ? std::max(0.0, -mr.min_margin) : 1.0,
        tols::minimality);
  }

  return rep;
}

}  // namespace projpair
