#include "projpair/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "projpair/errors.hpp"
#include "projpair/spectral.hpp"

namespace projpair {

namespace {

void check_projection(const CMat& m, const char* name, double proj_tol) {
  if (m.rows() != m.cols()) {
    throw NotAProjection(std::string(name) + ": not square");
  }
  if (!m.allFinite()) {
    throw NotAProjection(std::string(name) + ": non-finite entries");
  }
  const double herm_res = operator_norm(m - m.adjoint());
  if (herm_res > proj_tol) {
    std::ostringstream msg;
    msg << name << ": not self-adjoint, ||M - M*|| = " << herm_res;
    throw NotAProjection(msg.str());
  }
  const double idem_res = operator_norm(m * m - m);
  if (idem_res > proj_tol) {
    std::ostringstream msg;
    msg << name << ": not idempotent, ||M^2 - M|| = " << idem_res;
    throw NotAProjection(msg.str());
  }
}

}  // namespace

ProjectionPair::ProjectionPair(Hermitian p, Hermitian q)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.dim() != q_.dim()) {
    throw NotAProjection("ProjectionPair: dimensions differ");
  }
}

Hermitian ProjectionPair::difference() const {
  return Hermitian(p_.mat() - q_.mat());
}

ProjectionPair validate_pair(const CMat& p, const CMat& q, double proj_tol) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw NotAProjection("validate_pair: P and Q have different shapes");
  }
  check_projection(p, "P", proj_tol);
  check_projection(q, "Q", proj_tol);
  return ProjectionPair(Hermitian(p), Hermitian(q));
}

CMat ThreeSpaceSplit::assembled() const {
  const Index n = basis_null.rows();
  CMat t(n, n);
  Index col = 0;
  for (const CMat* b : {&basis_null, &basis_plus, &basis_minus,
                        &basis_generic}) {
    if (b->cols() > 0) t.middleCols(col, b->cols()) = *b;
    col += b->cols();
  }
  return t;
}

ThreeSpaceSplit three_space_split(const Hermitian& a, const Tol& tol) {
  const double norm_a = operator_norm(a.mat());
  if (norm_a > 1.0 + tol.rank_tol) {
    std::ostringstream msg;
    msg << "three_space_split: ||A|| = " << norm_a << " exceeds 1";
    throw NotAContraction(msg.str());
  }
  const SpectralDecomp d = eigh(a);
  const double thr_null = tol.rank_tol * norm_a;
  const double thr_unit = tol.rank_tol;  // |lambda^2 - 1| lives at unit scale

  std::vector<Index> null_idx, plus_idx, minus_idx, gen_idx;
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    const double lambda = d.eigenvalues(i);
    if (std::abs(lambda) <= thr_null) {
      null_idx.push_back(i);
    } else if (std::abs(lambda * lambda - 1.0) <= thr_unit) {
      (lambda > 0 ? plus_idx : minus_idx).push_back(i);
    } else {
      gen_idx.push_back(i);
    }
  }

  auto gather = [&](const std::vector<Index>& idx) {
    CMat b(a.dim(), static_cast<Index>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) {
      b.col(static_cast<Index>(j)) = d.eigenvectors.col(idx[j]);
    }
    return b;
  };

  return ThreeSpaceSplit{gather(null_idx), gather(plus_idx),
                         gather(minus_idx), gather(gen_idx)};
}

HalmosFrame::HalmosFrame(CMat w, RVec gamma)
    : w_(std::move(w)), gamma_(std::move(gamma)) {
  const Index l = gamma_.size();
  c_ = gamma_.array().cos();
  s_ = gamma_.array().sin();
  tau_ = gamma_.array().tan();
  clusters_.clear();
  Index begin = 0;
  for (Index i = 1; i <= l; ++i) {
    if (i == l || std::abs(gamma_(i) - gamma_(begin)) > tols::cluster) {
      clusters_.emplace_back(begin, i);
      begin = i;
    }
  }
}

CMat HalmosFrame::to_frame(const CMat& ambient) const {
  return w_ * ambient * w_.adjoint();
}

CMat HalmosFrame::to_ambient(const CMat& frame) const {
  return w_.adjoint() * frame * w_;
}

CMat HalmosFrame::block11(const CMat& f) {
  const Index l = f.rows() / 2;
  return f.topLeftCorner(l, l);
}
CMat HalmosFrame::block12(const CMat& f) {
  const Index l = f.rows() / 2;
  return f.topRightCorner(l, l);
}
CMat HalmosFrame::block21(const CMat& f) {
  const Index l = f.rows() / 2;
  return f.bottomLeftCorner(l, l);
}
CMat HalmosFrame::block22(const CMat& f) {
  const Index l = f.rows() / 2;
  return f.bottomRightCorner(l, l);
}

CMat HalmosFrame::assemble_blocks(const CMat& b11, const CMat& b12,
                                  const CMat& b21, const CMat& b22) const {
  const Index l = half_dim();
  CMat f(2 * l, 2 * l);
  f.topLeftCorner(l, l) = b11;
  f.topRightCorner(l, l) = b12;
  f.bottomLeftCorner(l, l) = b21;
  f.bottomRightCorner(l, l) = b22;
  return f;
}

HalmosFrame halmos_frame(const CMat& p0, const CMat& q0, const Tol& tol) {
  const Index m = p0.rows();
  if (m % 2 != 0) {
    throw DegenerateAngle("halmos_frame: generic dimension is odd");
  }
  const Index l = m / 2;
  if (l == 0) return HalmosFrame(CMat(0, 0), RVec(0));

  // Basis of R(P0): eigenvectors of the projection with eigenvalue ~ 1.
  const SpectralDecomp dp = eigh(Hermitian(p0));
  std::vector<Index> range_idx;
  for (Index i = 0; i < m; ++i) {
    if (dp.eigenvalues(i) > 0.5) range_idx.push_back(i);
  }
  if (static_cast<Index>(range_idx.size()) != l) {
    std::ostringstream msg;
    msg << "halmos_frame: rank(P0) = " << range_idx.size()
        << " but generic dimension is " << m;
    throw DegenerateAngle(msg.str());
  }
  CMat up(m, l);
  for (Index j = 0; j < l; ++j) {
    up.col(j) = dp.eigenvectors.col(range_idx[static_cast<size_t>(j)]);
  }

  // Compression of Q0 to R(P0); its eigenvalues are cos^2(theta_k).
  const Hermitian comp(up.adjoint() * q0 * up);
  const SpectralDecomp dc = eigh(comp);

  // Ascending angles = descending cosines.
  RVec gamma(l);
  CMat f1(m, l);
  for (Index k = 0; k < l; ++k) {
    const Index src = l - 1 - k;
    double c2 = dc.eigenvalues(src);
    if (c2 <= tol.rank_tol || 1.0 - c2 <= tol.rank_tol * tol.rank_tol) {
      std::ostringstream msg;
      msg << "halmos_frame: angle degenerate, cos^2(theta) = " << c2;
      throw DegenerateAngle(msg.str());
    }
    c2 = std::min(1.0, std::max(0.0, c2));
    gamma(k) = std::acos(std::sqrt(c2));
    f1.col(k) = up * dc.eigenvectors.col(src);
  }

  // Second L: normalized image of the first under the cross block of Q0.
  const CMat p0perp = CMat::Identity(m, m) - p0;
  CMat f2(m, l);
  for (Index k = 0; k < l; ++k) {
    CVec g = p0perp * (q0 * f1.col(k));
    const double nrm = g.norm();
    if (nrm <= tol.rank_tol) {
      throw DegenerateAngle(
          "halmos_frame: vanishing cross block (angle at 0)");
    }
    f2.col(k) = g / nrm;
  }

  CMat t(m, m);
  t.leftCols(l) = f1;
  t.rightCols(l) = f2;
  const double ortho_res =
      operator_norm(t.adjoint() * t - CMat::Identity(m, m));
  if (ortho_res > tols::frame) {
    std::ostringstream msg;
    msg << "halmos_frame: assembled basis not orthonormal, residual "
        << ortho_res;
    throw DegenerateAngle(msg.str());
  }

  HalmosFrame frame(t.adjoint(), gamma);

  // Certify both congruences.
  const Index half = l;
  CMat p_expect = CMat::Zero(m, m);
  p_expect.topLeftCorner(half, half) = CMat::Identity(half, half);
  const RVec c = frame.cosines();
  const RVec s = frame.sines();
  CMat q_expect(m, m);
  q_expect.topLeftCorner(half, half) =
      (c.array() * c.array()).matrix().asDiagonal().toDenseMatrix().cast<Complex>();
  q_expect.topRightCorner(half, half) =
      (c.array() * s.array()).matrix().asDiagonal().toDenseMatrix().cast<Complex>();
  q_expect.bottomLeftCorner(half, half) = q_expect.topRightCorner(half, half);
  q_expect.bottomRightCorner(half, half) =
      (s.array() * s.array()).matrix().asDiagonal().toDenseMatrix().cast<Complex>();

  const double p_res = operator_norm(frame.to_frame(p0) - p_expect);
  const double q_res = operator_norm(frame.to_frame(q0) - q_expect);
  if (p_res > tols::frame || q_res > tols::frame) {
    std::ostringstream msg;
    msg << "halmos_frame: congruence residuals " << p_res << ", " << q_res;
    throw DegenerateAngle(msg.str());
  }
  return frame;
}

GenericPair GenericPair::create(const CMat& p0, const CMat& q0,
                                const Tol& tol) {
  if (p0.rows() == 0) {
    // Vacuous pair on the zero space.
    return GenericPair(Hermitian(CMat(0, 0)), Hermitian(CMat(0, 0)),
                       Hermitian(CMat(0, 0)), HalmosFrame(CMat(0, 0), RVec(0)));
  }
  // Compressions of valid projections to a reducing subspace stay
  // projections; certify with a small headroom over the ambient threshold.
  check_projection(p0, "P0", tols::projection * 10);
  check_projection(q0, "Q0", tols::projection * 10);
  Hermitian hp(p0), hq(q0);
  Hermitian a0(hp.mat() - hq.mat());

  const SpectralDecomp d = eigh(a0);
  const double norm_a = d.eigenvalues.size()
                            ? d.eigenvalues.cwiseAbs().maxCoeff()
                            : 0.0;
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    const double lambda = d.eigenvalues(i);
    if (std::abs(lambda) <= tol.rank_tol * norm_a) {
      std::ostringstream msg;
      msg << "GenericPair: A0 has numerically null eigenvalue " << lambda;
      throw DegenerateAngle(msg.str());
    }
    if (std::abs(lambda * lambda - 1.0) <= tol.rank_tol) {
      std::ostringstream msg;
      msg << "GenericPair: A0 has eigenvalue " << lambda
          << " at the unit circle";
      throw DegenerateAngle(msg.str());
    }
  }
  if (a0.dim() % 2 != 0) {
    throw DegenerateAngle("GenericPair: generic dimension is odd");
  }
  HalmosFrame frame = halmos_frame(hp.mat(), hq.mat(), tol);
  return GenericPair(std::move(hp), std::move(hq), std::move(a0),
                     std::move(frame));
}

GenericPair generic_part(const ProjectionPair& pair, const Tol& tol) {
  return generic_part(pair, three_space_split(pair.difference(), tol), tol);
}

GenericPair generic_part(const ProjectionPair& pair,
                         const ThreeSpaceSplit& split, const Tol& tol) {
  if (split.dim_generic() == 0) {
    throw EmptyGenericPart("generic_part: H0 is trivial");
  }
  const Index n = pair.dim();
  const CMat id = CMat::Identity(n, n);

  // Cross-check the split dimensions against the intersection identities.
  auto inter_dim = [&](const CMat& x, const CMat& y) {
    return nullspace_basis(Hermitian(x + y), tol.rank_tol).cols();
  };
  const Index rp_rq = inter_dim(id - pair.p(), id - pair.q());
  const Index np_nq = inter_dim(pair.p(), pair.q());
  const Index rp_nq = inter_dim(id - pair.p(), pair.q());
  const Index np_rq = inter_dim(pair.p(), id - pair.q());
  if (rp_rq + np_nq != split.dim_null() || rp_nq != split.dim_plus() ||
      np_rq != split.dim_minus()) {
    std::ostringstream msg;
    msg << "generic_part: intersection identities violated (N(A): "
        << split.dim_null() << " vs " << rp_rq + np_nq
        << ", N(A-1): " << split.dim_plus() << " vs " << rp_nq
        << ", N(A+1): " << split.dim_minus() << " vs " << np_rq << ")";
    throw InconsistentReport(msg.str());
  }

  const CMat& b = split.basis_generic;
  return GenericPair::create(b.adjoint() * pair.p() * b,
                             b.adjoint() * pair.q() * b, tol);
}

DifferenceWitness is_difference_of_projections(const Hermitian& a,
                                               const Tol& tol) {
  const double norm_a = operator_norm(a.mat());
  if (norm_a > 1.0 + tol.rank_tol) {
    std::ostringstream msg;
    msg << "||A|| = " << norm_a << " exceeds 1";
    return {false, std::nullopt, msg.str()};
  }
  const ThreeSpaceSplit split = three_space_split(a, tol);
  const Index n = a.dim();

  CMat p = CMat::Zero(n, n);
  CMat q = CMat::Zero(n, n);
  if (split.dim_plus() > 0) {
    p += split.basis_plus * split.basis_plus.adjoint();
  }
  if (split.dim_minus() > 0) {
    q += split.basis_minus * split.basis_minus.adjoint();
  }
  // On N(A) any common projection works; the witness takes 0.

  if (split.dim_generic() > 0) {
    const CMat& bg = split.basis_generic;
    const Hermitian a0(bg.adjoint() * a.mat() * bg);
    const SpectralDecomp d = eigh(a0);

    std::vector<Index> pos, neg;  // ascending |lambda|
    for (Index i = 0; i < d.eigenvalues.size(); ++i) {
      (d.eigenvalues(i) > 0 ? pos : neg).push_back(i);
    }
    std::sort(neg.begin(), neg.end(), [&](Index i, Index j) {
      return std::abs(d.eigenvalues(i)) < std::abs(d.eigenvalues(j));
    });
    if (pos.size() != neg.size()) {
      std::ostringstream msg;
      msg << "generic spectrum asymmetric: " << pos.size()
          << " positive vs " << neg.size() << " negative eigenvalues";
      return {false, std::nullopt, msg.str()};
    }
    for (size_t k = 0; k < pos.size(); ++k) {
      const double lp = d.eigenvalues(pos[k]);
      const double ln = std::abs(d.eigenvalues(neg[k]));
      if (std::abs(lp - ln) > tol.rank_tol) {
        std::ostringstream msg;
        msg << "eigenvalue " << lp << " has no partner at -" << lp
            << " (closest: -" << ln << ")";
        return {false, std::nullopt, msg.str()};
      }
    }

    const Index m = d.eigenvalues.size();
    CMat v = CMat::Zero(m, m);
    for (size_t k = 0; k < pos.size(); ++k) {
      const CVec e = d.eigenvectors.col(pos[k]);
      const CVec f = d.eigenvectors.col(neg[k]);
      v += f * e.adjoint() + e * f.adjoint();
    }
    const Hermitian r = sqrt_one_minus_sq(a0);
    const CMat pg = 0.5 * (CMat::Identity(m, m) + a0.mat() + r.mat() * v);
    const CMat qg = 0.5 * (CMat::Identity(m, m) - a0.mat() + r.mat() * v);
    p += bg * pg * bg.adjoint();
    q += bg * qg * bg.adjoint();
  }

  ProjectionPair witness = validate_pair(p, q);
  const double diff_res = operator_norm((p - q) - a.mat());
  if (diff_res > 1e-10 * std::max(1.0, norm_a)) {
    std::ostringstream msg;
    msg << "witness difference residual " << diff_res;
    throw InconsistentReport(msg.str());
  }
  return {true, std::move(witness), ""};
}

double friedrichs_cos(const ProjectionPair& pair, const Tol& tol) {
  const Index n = pair.dim();
  const CMat id = CMat::Identity(n, n);
  // R(P) n R(Q) as the nullspace of (1-P) + (1-Q): avoids angle-sensitive
  // direct intersection.
  const CMat basis =
      nullspace_basis(Hermitian((id - pair.p()) + (id - pair.q())),
                      tol.rank_tol);
  CMat p_int = CMat::Zero(n, n);
  if (basis.cols() > 0) p_int = basis * basis.adjoint();
  return operator_norm(pair.p() * pair.q() - p_int);
}

}  // namespace projpair
