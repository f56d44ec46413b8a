#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projpair/types.hpp"

namespace projpair {

// A pair of orthogonal projections (P, Q) on the ambient space; the central
// object. P - Q = A is the fixed difference.
class ProjectionPair {
 public:
  ProjectionPair(Hermitian p, Hermitian q);
  const CMat& p() const { return p_.mat(); }
  const CMat& q() const { return q_.mat(); }
  Index dim() const { return p_.dim(); }
  Hermitian difference() const;  // A = P - Q

 private:
  Hermitian p_, q_;
};

// Certifies idempotency and self-adjointness of both matrices within
// proj_tol (absolute; projections have unit norm). Throws NotAProjection
// naming the failing matrix and property.
ProjectionPair validate_pair(const CMat& p, const CMat& q,
                             double proj_tol = tols::projection);

// Orthogonal decomposition of the ambient space relative to a contraction
// A: N(A) + N(A-1) + N(A+1) + generic part, with orthonormal bases for each
// summand. The assembled unitary T = [B_null | B_plus | B_minus | B_gen]
// block-diagonalizes A as 0, 1, -1, A0.
struct ThreeSpaceSplit {
  CMat basis_null;
  CMat basis_plus;
  CMat basis_minus;
  CMat basis_generic;

  Index dim_null() const { return basis_null.cols(); }
  Index dim_plus() const { return basis_plus.cols(); }
  Index dim_minus() const { return basis_minus.cols(); }
  Index dim_generic() const { return basis_generic.cols(); }
  CMat assembled() const;  // the unitary T
};

ThreeSpaceSplit three_space_split(const Hermitian& a, const Tol& tol = {});

// Unitary change of basis identifying the generic part with L x L
// coordinates: frame(P0) = [[1,0],[0,0]], frame(Q0) = [[C^2,CS],[CS,S^2]]
// with C = cos(Gamma), S = sin(Gamma) for the principal-angle operator
// Gamma, stored as a diagonal of angles sorted ascending in (0, pi/2).
class HalmosFrame {
 public:
  HalmosFrame() = default;
  HalmosFrame(CMat w, RVec gamma);

  Index dim() const { return w_.rows(); }       // m
  Index half_dim() const { return w_.rows() / 2; }  // L
  const CMat& w() const { return w_; }
  const RVec& gamma() const { return gamma_; }
  const RVec& cosines() const { return c_; }
  const RVec& sines() const { return s_; }
  const RVec& tangents() const { return tau_; }

  // Index ranges [begin, end) of angle clusters (angles equal within
  // tols::cluster are treated as one spectral block).
  const std::vector<std::pair<Index, Index>>& clusters() const {
    return clusters_;
  }

  CMat to_frame(const CMat& ambient) const;    // W M W*
  CMat to_ambient(const CMat& frame) const;    // W* M W

  // Block accessors for an m x m matrix in frame coordinates.
  static CMat block11(const CMat& f);
  static CMat block12(const CMat& f);
  static CMat block21(const CMat& f);
  static CMat block22(const CMat& f);
  CMat assemble_blocks(const CMat& b11, const CMat& b12, const CMat& b21,
                       const CMat& b22) const;

 private:
  CMat w_;
  RVec gamma_, c_, s_, tau_;
  std::vector<std::pair<Index, Index>> clusters_;
};

// A pair in generic position together with its canonical Halmos frame,
// attached at construction and never recomputed.
class GenericPair {
 public:
  static GenericPair create(const CMat& p0, const CMat& q0,
                            const Tol& tol = {});

  const CMat& p0() const { return p0_.mat(); }
  const CMat& q0() const { return q0_.mat(); }
  const CMat& a0() const { return a0_.mat(); }
  Hermitian a0_hermitian() const { return a0_; }
  Index dim() const { return p0_.dim(); }  // m (always even)
  const HalmosFrame& frame() const { return frame_; }

 private:
  GenericPair(Hermitian p0, Hermitian q0, Hermitian a0, HalmosFrame frame)
      : p0_(std::move(p0)),
        q0_(std::move(q0)),
        a0_(std::move(a0)),
        frame_(std::move(frame)) {}

  Hermitian p0_, q0_, a0_;
  HalmosFrame frame_;
};

// Builds the canonical frame of a certified generic pair: diagonalize the
// compression P0 Q0 P0 on R(P0) to get C^2, take R(P0) in that eigenbasis
// as the first L, and the normalized image of R(P0) under the cross block
// of Q0 as the second L. Throws DegenerateAngle when an angle sits at 0 or
// pi/2 within tolerance.
HalmosFrame halmos_frame(const CMat& p0, const CMat& q0, const Tol& tol = {});

// Compression of a pair to its generic part, with the identities
// N(A) = R(P) n R(Q) + N(P) n N(Q), N(A-1) = R(P) n N(Q),
// N(A+1) = N(P) n R(Q) used as dimension cross-checks.
GenericPair generic_part(const ProjectionPair& pair, const Tol& tol = {});
GenericPair generic_part(const ProjectionPair& pair,
                         const ThreeSpaceSplit& split, const Tol& tol = {});

// Dixmier/Davis membership test with a constructive witness: true iff
// ||A|| <= 1 and the generic spectrum is symmetric about the origin with
// matching multiplicities. The witness pairs +lambda with -lambda
// eigenvectors in ascending-|lambda| order.
struct DifferenceWitness {
  bool is_difference = false;
  std::optional<ProjectionPair> witness;
  std::string diagnostic;
};

DifferenceWitness is_difference_of_projections(const Hermitian& a,
                                               const Tol& tol = {});

// Cosine of the Friedrichs angle: ||P Q - P_{R(P) n R(Q)}||. Constant on
// the fiber D_A and equal to ||cos(Gamma)|| when a generic part exists.
double friedrichs_cos(const ProjectionPair& pair, const Tol& tol = {});

}  // namespace projpair
