#include "projpair/geodesics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

#include "projpair/davis.hpp"
#include "projpair/errors.hpp"
#include "projpair/rng.hpp"
#include "projpair/spectral.hpp"

namespace projpair {

namespace {

constexpr double kBranchEps = 1e-6;  // phase margin below pi for Branch A

CMat diag_c(const RVec& v) {
  return v.asDiagonal().toDenseMatrix().cast<Complex>();
}

void require_same_a0(const CMat& a, const CMat& b, const char* who) {
  if (a.rows() != b.rows()) {
    throw MismatchedDifference(std::string(who) + ": dimension mismatch");
  }
  const double res = operator_norm(a - b);
  if (res > 1e-9 * std::max(operator_norm(a), 1e-300)) {
    std::ostringstream msg;
    msg << who << ": ||A0 - A0'|| = " << res;
    throw MismatchedDifference(msg.str());
  }
}

// cosh(tN) and sinh(tN) for anti-Hermitian N, evaluated through the
// eigendecomposition of the Hermitian -iN; preserves unitarity and avoids
// overflow.
struct CoshSinh {
  CMat cosh, sinh;
};

CoshSinh cosh_sinh_antihermitian(const CMat& n, double t) {
  const Hermitian d(CMat(Complex(0, -1) * n));
  const SpectralDecomp e = eigh(d);
  RVec cs(e.eigenvalues.size()), sn(e.eigenvalues.size());
  for (Index i = 0; i < e.eigenvalues.size(); ++i) {
    cs(i) = std::cos(t * e.eigenvalues(i));
    sn(i) = std::sin(t * e.eigenvalues(i));
  }
  const CMat vc = e.eigenvectors;
  return {vc * diag_c(cs) * vc.adjoint(),
          Complex(0, 1) * (vc * diag_c(sn) * vc.adjoint())};
}

}  // namespace

HorizontalTangent horizontal_from_block(const CMat& y,
                                        const GenericPair& base,
                                        const Tol& tol) {
  const HalmosFrame& frame = base.frame();
  const Index l = frame.half_dim();
  if (y.rows() != l || y.cols() != l) {
    throw NotCommutingWithGamma("horizontal_from_block: Y is not L x L");
  }
  const double scale = std::max(operator_norm(y), 1e-300);
  const double ah_res = operator_norm(y + y.adjoint());
  if (ah_res > 1e-9 * scale) {
    throw NotCommutingWithGamma(
        "horizontal_from_block: Y is not anti-Hermitian");
  }
  const CMat gd = diag_c(frame.gamma());
  const double comm_res = operator_norm(y * gd - gd * y);
  if (comm_res > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "horizontal_from_block: ||Y Gamma - Gamma Y|| = " << comm_res;
    throw NotCommutingWithGamma(msg.str());
  }
  const CMat ya = 0.5 * (y - y.adjoint().eval());
  const CMat td = diag_c(frame.tangents());
  const CMat ytau = 0.5 * (ya * td + td * ya);  // commuting; symmetrized
  CMat zf = frame.assemble_blocks(-ytau, ya, ya, ytau);
  CMat z = frame.to_ambient(zf);
  z = 0.5 * (z - z.adjoint().eval());
  return HorizontalTangent(frame, ya, z, base.a0());
}

HorizontalTangent horizontal_from_ambient(const CMat& z,
                                          const GenericPair& base,
                                          const Tol& tol) {
  const HalmosFrame& frame = base.frame();
  const Index m = frame.dim();
  if (z.rows() != m || z.cols() != m) {
    throw NotCommutingWithGamma("horizontal_from_ambient: wrong dimension");
  }
  const double scale = std::max(operator_norm(z), 1e-300);
  if (operator_norm(z + z.adjoint()) > 1e-9 * scale) {
    throw NotCommutingWithGamma(
        "horizontal_from_ambient: Z is not anti-Hermitian");
  }
  const CMat zf = frame.to_frame(z);
  const CMat y = 0.5 * (HalmosFrame::block12(zf) + HalmosFrame::block21(zf));

  HorizontalTangent ht = horizontal_from_block(y, base, tol);
  const double res = operator_norm(ht.z_ambient() - 0.5 * (z - z.adjoint()));
  if (res > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "horizontal_from_ambient: Z is not horizontal over this pair, "
        << "residual " << res;
    throw NotCommutingWithGamma(msg.str());
  }
  return ht;
}

double finsler_norm(const HorizontalTangent& ht) {
  const RVec inv_c = ht.frame().cosines().cwiseInverse();
  const double block_norm = operator_norm(ht.y_block() * diag_c(inv_c));
  const double ambient_norm = operator_norm(ht.z_ambient());
  if (std::abs(block_norm - ambient_norm) >
      1e-9 * std::max(1.0, ambient_norm)) {
    std::ostringstream msg;
    msg << "finsler_norm: ||Y C^-1|| = " << block_norm
        << " disagrees with ||Z|| = " << ambient_norm;
    throw InconsistentReport(msg.str());
  }
  return block_norm;
}

ClosedFormExp exp_unitary_forms(const HorizontalTangent& ht, double t) {
  const HalmosFrame& frame = ht.frame();
  const Index l = frame.half_dim();
  const Index m = 2 * l;
  if (m == 0) return {CMat(0, 0), CMat(0, 0)};

  // Frame form: cosh(t Y C^{-1}) I + sinh(t Y C^{-1}) Sigma.
  const CMat g = ht.y_block() * diag_c(frame.cosines().cwiseInverse());
  const CoshSinh cs = cosh_sinh_antihermitian(g, t);
  const CMat cd = diag_c(frame.cosines());
  const CMat sd = diag_c(frame.sines());
  const CMat u_frame = frame.assemble_blocks(
      cs.cosh - cs.sinh * sd, cs.sinh * cd, cs.sinh * cd,
      cs.cosh + cs.sinh * sd);
  const CMat e1 = frame.to_ambient(u_frame);

  // Intrinsic form: N = Z J0 commutes with Z and is anti-Hermitian;
  // e^{tZ} = cosh(tN) + sinh(tN) J0.
  const Symmetry j = j0(Hermitian(ht.a0()));
  CMat n = ht.z_ambient() * j.mat();
  n = 0.5 * (n - n.adjoint().eval());
  const CoshSinh csn = cosh_sinh_antihermitian(n, t);
  const CMat e2 = csn.cosh + csn.sinh * j.mat();

  const double res = operator_norm(e1 - e2);
  if (res > tols::closed_form) {
    std::ostringstream msg;
    msg << "exp_unitary_forms: frame and intrinsic forms disagree by "
        << res;
    throw InconsistentReport(msg.str());
  }
  return {e1, e2};
}

CMat exp_unitary_closed_form(const HorizontalTangent& ht, double t) {
  return exp_unitary_forms(ht, t).frame_form;
}

GenericPair exp_pair(const GenericPair& base, const HorizontalTangent& ht,
                     double t, const Tol& tol) {
  require_same_a0(base.a0(), ht.a0(), "exp_pair");
  const CMat u = exp_unitary_closed_form(ht, t);
  const CMat p = u * base.p0() * u.adjoint();
  const CMat q = u * base.q0() * u.adjoint();
  GenericPair out = GenericPair::create(p, q, tol);
  const double fiber_res = operator_norm(out.a0() - base.a0());
  if (fiber_res > 1e-9 * std::max(1.0, operator_norm(base.a0()))) {
    std::ostringstream msg;
    msg << "exp_pair: left the fiber, ||A0(t) - A0|| = " << fiber_res;
    throw InconsistentReport(msg.str());
  }
  return out;
}

HorizontalTangent log_pair(const GenericPair& base, const GenericPair& target,
                           const Tol& tol) {
  require_same_a0(base.a0(), target.a0(), "log_pair");
  const Index m = base.dim();
  const CMat v0 = pair_to_symmetry(base, tol).mat();
  const CMat v = pair_to_symmetry(target, tol).mat();
  const CMat u = v * v0;

  // Largest eigenvalue phase of V V0 decides the branch: near the cut the
  // principal logarithm is ill-conditioned and the global construction is
  // used instead.
  Eigen::ComplexSchur<CMat> schur(u);
  if (schur.info() != Eigen::Success) {
    throw EigenSolverFailure("log_pair: Schur of V V0 failed");
  }
  double max_phase = 0.0;
  for (Index i = 0; i < m; ++i) {
    max_phase = std::max(max_phase, std::abs(std::arg(schur.matrixT()(i, i))));
  }

  CMat z;
  if (max_phase < M_PI - kBranchEps) {
    z = 0.5 * unitary_log(u, tol.gap_tol);
  } else {
    // Global construction. Split by the joint eigenspaces of (V0, V).
    const Symmetry j = j0(Hermitian(base.a0()), tol);
    const CMat id = CMat::Identity(m, m);
    auto joint = [&](double sign0, double sign1) {
      return nullspace_basis(
          Hermitian((id - sign0 * v0) + (id - sign1 * v)), tol.rank_tol);
    };
    const CMat hpp = joint(1.0, 1.0);
    const CMat hmm = joint(-1.0, -1.0);
    const CMat hpm = joint(1.0, -1.0);
    const CMat hmp = joint(-1.0, 1.0);

    CMat bsame(m, hpp.cols() + hmm.cols());
    if (hpp.cols() > 0) bsame.leftCols(hpp.cols()) = hpp;
    if (hmm.cols() > 0) bsame.rightCols(hmm.cols()) = hmm;
    CMat bflip(m, hpm.cols() + hmp.cols());
    if (hpm.cols() > 0) bflip.leftCols(hpm.cols()) = hpm;
    if (hmp.cols() > 0) bflip.rightCols(hmp.cols()) = hmp;

    CMat proj = CMat::Zero(m, m);
    if (bsame.cols() > 0) proj += bsame * bsame.adjoint();
    if (bflip.cols() > 0) proj += bflip * bflip.adjoint();
    // Generic part of the pair of symmetries (V0, V).
    CMat b0;
    {
      const SpectralDecomp dp = eigh(Hermitian(proj));
      std::vector<Index> keep;
      for (Index i = 0; i < m; ++i) {
        if (dp.eigenvalues(i) < 0.5) keep.push_back(i);
      }
      b0.resize(m, static_cast<Index>(keep.size()));
      for (size_t k = 0; k < keep.size(); ++k) {
        b0.col(static_cast<Index>(k)) = dp.eigenvectors.col(keep[k]);
      }
    }

    z = CMat::Zero(m, m);
    if (bflip.cols() > 0) {
      // J0 exchanges the two flipped eigenspaces, so it reduces their sum.
      const CMat jc = bflip.adjoint() * j.mat() * bflip;
      const double red_res = operator_norm(j.mat() * bflip - bflip * jc);
      if (red_res > 1e-7) {
        std::ostringstream msg;
        msg << "log_pair: J0 does not reduce the flipped subspace, residual "
            << red_res;
        throw InconsistentReport(msg.str());
      }
      z += bflip * (Complex(0, M_PI / 2) * jc) * bflip.adjoint();
    }
    if (b0.cols() > 0) {
      const CMat v0c = b0.adjoint() * v0 * b0;
      const CMat vc = b0.adjoint() * v * b0;
      const Symmetry s =
          matrix_sign(Hermitian(0.5 * (v0c + vc)), tol.gap_tol);
      const CMat zc = unitary_log(s.mat() * v0c, tol.gap_tol);
      z += b0 * zc * b0.adjoint();
    }
    z = 0.5 * (z - z.adjoint().eval());
  }

  HorizontalTangent ht = horizontal_from_ambient(z, base, tol);

  const double norm_z = operator_norm(ht.z_ambient());
  if (norm_z > M_PI / 2 + 1e-9) {
    std::ostringstream msg;
    msg << "log_pair: ||Z|| = " << norm_z << " exceeds pi/2";
    throw InconsistentReport(msg.str());
  }
  const CMat u1 = exp_unitary_closed_form(ht, 1.0);
  const double endpoint_res = std::max(
      operator_norm(u1 * base.p0() * u1.adjoint() - target.p0()),
      operator_norm(u1 * base.q0() * u1.adjoint() - target.q0()));
  if (endpoint_res > tols::endpoint) {
    std::ostringstream msg;
    msg << "log_pair: endpoint residual " << endpoint_res;
    throw InconsistentReport(msg.str());
  }
  return ht;
}

double geodesic_distance(const GenericPair& base, const GenericPair& target,
                         const Tol& tol) {
  return finsler_norm(log_pair(base, target, tol));
}

MinimalityReport minimality_certificate(const HorizontalTangent& ht,
                                        int trials, std::uint64_t seed,
                                        const Tol& tol) {
  (void)tol;
  const HalmosFrame& frame = ht.frame();
  const Index l = frame.half_dim();
  const CMat& z = ht.z_ambient();
  const double norm_z = operator_norm(z);

  Rng rng = make_rng(seed);
  MinimalityReport rep;
  rep.trials = trials;
  rep.min_margin = std::numeric_limits<double>::infinity();

  auto ambient_isotropy = [&](const CMat& dblock) {
    CMat f = CMat::Zero(2 * l, 2 * l);
    f.topLeftCorner(l, l) = dblock;
    f.bottomRightCorner(l, l) = dblock;
    return frame.to_ambient(f);
  };
  auto consider = [&](const CMat& dblock) {
    const double val = operator_norm(z + ambient_isotropy(dblock));
    const double margin = val - norm_z;
    rep.min_margin = std::min(rep.min_margin, margin);
    if (margin < -tols::minimality) {
      std::ostringstream msg;
      msg << "minimality_certificate: found isotropy direction with "
          << "||Z + D|| - ||Z|| = " << margin;
      throw CertificateFailed(msg.str());
    }
  };

  std::uniform_real_distribution<double> mag(0.0, 1.5);
  const double base_scale = std::max(norm_z, 0.1);
  for (int k = 0; k < trials; ++k) {
    consider(random_gamma_commuting_antihermitian(
        rng, frame, mag(rng) * base_scale));
  }

  // Falsification attempt: projected subgradient on the largest singular
  // value, step 1/k. Not an optimality proof; the certificate is the
  // property check along the path.
  const int iters = 100;
  rep.descent_iterations = iters;
  CMat dblock = CMat::Zero(l, l);
  for (int k = 1; k <= iters; ++k) {
    const CMat mcur = z + ambient_isotropy(dblock);
    Eigen::JacobiSVD<CMat> svd(mcur, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const CMat grad_amb = svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
    const CMat gf = frame.to_frame(grad_amb);
    const CMat gsum = HalmosFrame::block11(gf) + HalmosFrame::block22(gf);
    CMat grad = CMat::Zero(l, l);
    for (const auto& [begin, end] : frame.clusters()) {
      const Index kk = end - begin;
      const CMat blk = gsum.block(begin, begin, kk, kk);
      grad.block(begin, begin, kk, kk) = 0.5 * (blk - blk.adjoint().eval());
    }
    dblock -= (1.0 / k) * grad;
    consider(dblock);
  }
  rep.certified = true;
  return rep;
}

}  // namespace projpair
