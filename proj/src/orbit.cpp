#include "projpair/orbit.hpp"

#include <cmath>
#include <sstream>

#include "projpair/errors.hpp"
#include "projpair/rng.hpp"
#include "projpair/spectral.hpp"

namespace projpair {

namespace {

void require_same_difference(const GenericPair& gp0, const GenericPair& gp1,
                             double rel_tol = 1e-9) {
  if (gp0.dim() != gp1.dim()) {
    throw MismatchedDifference("pairs live on different dimensions");
  }
  const double norm_a = std::max(operator_norm(gp0.a0()), 1e-300);
  const double res = operator_norm(gp0.a0() - gp1.a0());
  if (res > rel_tol * norm_a) {
    std::ostringstream msg;
    msg << "||A0 - A0'|| = " << res << " exceeds " << rel_tol << " * ||A0||";
    throw MismatchedDifference(msg.str());
  }
}

void check_intertwiner(const CMat& u, const GenericPair& gp0,
                       const GenericPair& gp1) {
  const Index m = gp0.dim();
  const double unit_res =
      operator_norm(u.adjoint() * u - CMat::Identity(m, m));
  const double comm_res = operator_norm(u * gp0.a0() - gp0.a0() * u) /
                          std::max(operator_norm(gp0.a0()), 1e-300);
  const double conj_p =
      operator_norm(u * gp0.p0() * u.adjoint() - gp1.p0());
  const double conj_q =
      operator_norm(u * gp0.q0() * u.adjoint() - gp1.q0());
  if (unit_res > tols::unitarity || comm_res > tols::davis ||
      conj_p > tols::conjugation || conj_q > tols::conjugation) {
    std::ostringstream msg;
    msg << "intertwining unitary failed certification: unitarity "
        << unit_res << ", commutation " << comm_res << ", conjugation "
        << conj_p << ", " << conj_q;
    throw InconsistentReport(msg.str());
  }
}

}  // namespace

CommutantElement commutant_membership(const CMat& m, const HalmosFrame& frame,
                                      const Tol& tol) {
  (void)tol;
  if (m.rows() != frame.dim() || m.cols() != frame.dim()) {
    throw NotInCommutant("commutant_membership: dimension mismatch");
  }
  const CMat f = frame.to_frame(m);
  const CMat x = HalmosFrame::block11(f);
  const CMat y1 = HalmosFrame::block12(f);
  const CMat y2 = HalmosFrame::block21(f);
  const CMat z = HalmosFrame::block22(f);

  const double scale = std::max(operator_norm(m), 1e-300);
  const CMat gd =
      frame.gamma().asDiagonal().toDenseMatrix().cast<Complex>();
  const CMat cd =
      frame.cosines().asDiagonal().toDenseMatrix().cast<Complex>();
  const CMat sd = frame.sines().asDiagonal().toDenseMatrix().cast<Complex>();

  const double y_eq = operator_norm(y1 - y2) / scale;
  const CMat y = 0.5 * (y1 + y2);
  const double comm_x = operator_norm(x * gd - gd * x) / scale;
  const double comm_y = operator_norm(y * gd - gd * y) / scale;
  const double comm_z = operator_norm(z * gd - gd * z) / scale;
  const double relation =
      operator_norm(cd * (x - z) + 2.0 * sd * y) / scale;

  const double worst =
      std::max({y_eq, comm_x, comm_y, comm_z, relation});
  if (worst > tols::commutant) {
    std::ostringstream msg;
    msg << "not in the commutant of A0: off-diagonal equality " << y_eq
        << ", Gamma commutation (" << comm_x << ", " << comm_y << ", "
        << comm_z << "), C(X-Z)+2SY " << relation;
    throw NotInCommutant(msg.str());
  }
  return CommutantElement{x, y, z};
}

CMat commutant_to_frame(const CommutantElement& e) {
  const Index l = e.x.rows();
  CMat f(2 * l, 2 * l);
  f.topLeftCorner(l, l) = e.x;
  f.topRightCorner(l, l) = e.y;
  f.bottomLeftCorner(l, l) = e.y;
  f.bottomRightCorner(l, l) = e.z;
  return f;
}

CMat intertwining_unitary(const GenericPair& gp0, const GenericPair& gp1,
                          const Tol& tol) {
  require_same_difference(gp0, gp1);
  const Index m = gp0.dim();
  const CMat id = CMat::Identity(m, m);
  const Hermitian n(gp0.p0() + gp1.q0() - id);

  // K = N(P0 + Q0' - 1) reduces both pairs; the theorem needs trivial
  // nullspace only on its complement.
  const SpectralDecomp d = eigh(n);
  const double scale = d.eigenvalues.cwiseAbs().maxCoeff();
  std::vector<Index> kernel_idx, complement_idx;
  for (Index i = 0; i < m; ++i) {
    if (std::abs(d.eigenvalues(i)) <= tol.rank_tol * scale) {
      kernel_idx.push_back(i);
    } else {
      complement_idx.push_back(i);
    }
  }
  auto gather = [&](const std::vector<Index>& idx) {
    CMat b(m, static_cast<Index>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) {
      b.col(static_cast<Index>(j)) = d.eigenvectors.col(idx[j]);
    }
    return b;
  };
  const CMat bk = gather(kernel_idx);
  const CMat bc = gather(complement_idx);

  CMat u = CMat::Zero(m, m);
  if (bc.cols() > 0) {
    const Hermitian nc(bc.adjoint() * n.mat() * bc);
    const Symmetry sigma = matrix_sign(nc, tol.gap_tol);
    const DavisSymmetry v = pair_to_symmetry(gp0, tol);
    const CMat vc = bc.adjoint() * v.mat() * bc;
    u += bc * (sigma.mat() * vc) * bc.adjoint();
  }
  if (bk.cols() > 0) {
    // On K the isometric part of A0 swaps the reductions of the pairs.
    const Hermitian a0k(bk.adjoint() * gp0.a0() * bk);
    const Symmetry u2 = matrix_sign(a0k, tol.gap_tol);
    u += bk * u2.mat() * bk.adjoint();
  }
  check_intertwiner(u, gp0, gp1);
  return u;
}

CMat local_cross_section(const GenericPair& gp0, const GenericPair& gp1,
                         const Tol& tol) {
  require_same_difference(gp0, gp1);
  const Index m = gp0.dim();
  const Hermitian n(gp0.p0() + gp1.q0() - CMat::Identity(m, m));
  const Symmetry sigma = matrix_sign(n, tol.gap_tol);  // SingularSign at the
                                                       // boundary
  const DavisSymmetry v = pair_to_symmetry(gp0, tol);
  const CMat u = sigma.mat() * v.mat();
  check_intertwiner(u, gp0, gp1);
  return u;
}

CMat conditional_expectation(const CMat& m, const GenericPair& gp,
                             const Tol& tol) {
  commutant_membership(m, gp.frame(), tol);  // pre: M in the commutant
  const Index n = gp.dim();
  const CMat id = CMat::Identity(n, n);
  const CMat& p0 = gp.p0();
  const CMat p0perp = id - p0;
  const Hermitian k(gp.q0() - p0 * gp.q0() * p0 - p0perp * gp.q0() * p0perp);
  const Symmetry w = matrix_sign(k, tol.gap_tol);
  const CMat mw = m + w.mat() * m * w.mat();
  return 0.5 * (p0 * mw * p0 + p0perp * mw * p0perp);
}

IsotropyElement isotropy_sample(const HalmosFrame& frame,
                                std::uint64_t seed) {
  Rng rng = make_rng(seed);
  const CMat wp = random_gamma_commuting_unitary(rng, frame);
  const Index l = frame.half_dim();
  CMat f = CMat::Zero(2 * l, 2 * l);
  f.topLeftCorner(l, l) = wp;
  f.bottomRightCorner(l, l) = wp;
  return IsotropyElement{wp, frame.to_ambient(f)};
}

nlohmann::json ClosedRangeReport::to_json() const {
  return nlohmann::json{
      {"has_generic_part", has_generic},
      {"theta_min", theta_min},
      {"gap_pqp_minus_p", pqp_gap},
      {"gap_sum_minus_one", sum_gap},
      {"gap_asq_minus_one", asq_gap},
      {"threshold", threshold},
      {"range_of_A_closed", gamma_invertible},
      {"range_of_Asq_minus_one_closed", sum_invertible},
  };
}

ClosedRangeReport closed_range_report(const Hermitian& a, double threshold,
                                      const Tol& tol) {
  ClosedRangeReport rep;
  rep.threshold = threshold;

  const DifferenceWitness w = is_difference_of_projections(a, tol);
  if (!w.is_difference) {
    throw InvalidArgument("closed_range_report: A is not a difference of "
                          "projections: " + w.diagnostic);
  }
  const ThreeSpaceSplit split = three_space_split(a, tol);
  if (split.dim_generic() == 0) {
    // No generic part: A is (up to the null summand) a symmetry; every
    // range in sight is closed.
    rep.has_generic = false;
    rep.theta_min = M_PI / 2;
    rep.pqp_gap = 1.0;
    rep.sum_gap = 1.0;
    rep.asq_gap = 1.0;
    return rep;
  }
  rep.has_generic = true;

  const GenericPair gp = generic_part(*w.witness, split, tol);
  const Index m = gp.dim();
  const CMat id = CMat::Identity(m, m);

  // Route 1: min angle from the canonical frame.
  rep.theta_min = gp.frame().gamma().minCoeff();

  // Route 2: gap of P0 Q0 P0 - P0 compressed to R(P0).
  {
    const SpectralDecomp dp = eigh(Hermitian(gp.p0()));
    std::vector<Index> range_idx;
    for (Index i = 0; i < m; ++i) {
      if (dp.eigenvalues(i) > 0.5) range_idx.push_back(i);
    }
    CMat up(m, static_cast<Index>(range_idx.size()));
    for (size_t j = 0; j < range_idx.size(); ++j) {
      up.col(static_cast<Index>(j)) = dp.eigenvectors.col(range_idx[j]);
    }
    const CMat core = gp.p0() * gp.q0() * gp.p0() - gp.p0();
    const SpectralDecomp dc = eigh(Hermitian(up.adjoint() * core * up));
    rep.pqp_gap = dc.eigenvalues.cwiseAbs().minCoeff();
  }

  // Route 3: gap of P0 + Q0 - 1.
  {
    const SpectralDecomp ds = eigh(Hermitian(gp.p0() + gp.q0() - id));
    rep.sum_gap = ds.eigenvalues.cwiseAbs().minCoeff();
  }

  // Route 4: gap of A0^2 - 1.
  {
    const SpectralDecomp da =
        eigh(Hermitian(gp.a0() * gp.a0() - id));
    rep.asq_gap = da.eigenvalues.cwiseAbs().minCoeff();
  }

  // Trigonometric couplings between the independent routes:
  //   pqp_gap = sin^2(theta_min), asq_gap = sum_gap^2,
  //   sum_gap = cos(theta_max) with sin^2 + cos^2 = 1 per angle.
  const double s_min = std::sin(rep.theta_min);
  const double couple_tol = 1e-6;
  const double res_s = std::abs(rep.pqp_gap - s_min * s_min);
  const double res_c = std::abs(rep.asq_gap - rep.sum_gap * rep.sum_gap);
  if (res_s > couple_tol || res_c > couple_tol) {
    std::ostringstream msg;
    msg << "closed_range_report: coupled gaps disagree (sin-family residual "
        << res_s << ", cos-family residual " << res_c << ")";
    throw InconsistentReport(msg.str());
  }

  rep.gamma_invertible =
      rep.theta_min > threshold && rep.pqp_gap > threshold * threshold;
  rep.sum_invertible =
      rep.sum_gap > threshold && rep.asq_gap > threshold * threshold;
  // Each family must agree internally; the couplings above guarantee it
  // unless the threshold splits a coupled pair, which the residual check
  // already bounds by couple_tol.
  return rep;
}

std::pair<double, double> sum_norm_invariance(const GenericPair& gp0,
                                              const GenericPair& gp1,
                                              const Tol& tol) {
  (void)tol;
  require_same_difference(gp0, gp1);
  return {operator_norm(gp0.p0() + gp0.q0()),
          operator_norm(gp1.p0() + gp1.q0())};
}

}  // namespace projpair
