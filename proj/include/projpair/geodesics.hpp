#pragma once

#include <cstdint>

#include "projpair/decomp.hpp"
#include "projpair/types.hpp"

namespace projpair {

// Reductive geometry of the fiber over A0: horizontal tangents, closed-form
// geodesics, exponential/logarithm with injectivity radius pi/2, Finsler
// norm and minimality certification.

// An anti-Hermitian tangent Z = [[-Y tau, Y], [Y, Y tau]] in frame
// coordinates, with Y anti-Hermitian and commuting with Gamma. Carries a
// copy of the base pair's frame and A0; frames are attached at construction
// and never recomputed mid-operation.
class HorizontalTangent {
 public:
  const HalmosFrame& frame() const { return frame_; }
  const CMat& y_block() const { return y_; }
  const CMat& z_ambient() const { return z_; }
  const CMat& a0() const { return a0_; }
  Index dim() const { return z_.rows(); }

 private:
  friend HorizontalTangent horizontal_from_block(const CMat&,
                                                 const GenericPair&,
                                                 const Tol&);
  friend HorizontalTangent horizontal_from_ambient(const CMat&,
                                                   const GenericPair&,
                                                   const Tol&);
  HorizontalTangent(HalmosFrame frame, CMat y, CMat z, CMat a0)
      : frame_(std::move(frame)),
        y_(std::move(y)),
        z_(std::move(z)),
        a0_(std::move(a0)) {}

  HalmosFrame frame_;
  CMat y_;
  CMat z_;
  CMat a0_;
};

// Builds the tangent from its Y block; throws NotCommutingWithGamma when
// Y Gamma != Gamma Y within tolerance.
HorizontalTangent horizontal_from_block(const CMat& y,
                                        const GenericPair& base,
                                        const Tol& tol = {});

// Certifies an ambient anti-Hermitian Z as horizontal over the base pair
// and extracts its Y block.
HorizontalTangent horizontal_from_ambient(const CMat& z,
                                          const GenericPair& base,
                                          const Tol& tol = {});

// ||Y C^{-1}||; asserts agreement with the operator norm of the ambient Z.
double finsler_norm(const HorizontalTangent& ht);

// e^{tZ} through the two closed forms: the frame form
// cosh(t Y C^{-1}) I + sinh(t Y C^{-1}) Sigma with Sigma = [[-S, C],[C, S]],
// and the intrinsic form cosh(t Z J0) + sinh(t Z J0) J0 with J0 = sgn(A0).
struct ClosedFormExp {
  CMat frame_form;
  CMat intrinsic_form;
};

ClosedFormExp exp_unitary_forms(const HorizontalTangent& ht, double t);

// The frame form after asserting both variants agree within tolerance.
CMat exp_unitary_closed_form(const HorizontalTangent& ht, double t);

// (e^{tZ} P0 e^{-tZ}, e^{tZ} Q0 e^{-tZ}); stays on the fiber of A0.
GenericPair exp_pair(const GenericPair& base, const HorizontalTangent& ht,
                     double t, const Tol& tol = {});

// Horizontal Z with ||Z|| <= pi/2 and exp_pair(base, Z, 1) = target.
// Branch A (Davis symmetries closer than the branch cut):
// Z = log(V V0) / 2. Branch B (antipodal directions present): zero on the
// agreeing part, i (pi/2) J0 on the flipped part, log(sgn((V0+V)/2) V0) on
// the generic part of (V0, V).
HorizontalTangent log_pair(const GenericPair& base, const GenericPair& target,
                           const Tol& tol = {});

// Finsler distance: norm of log_pair. Always <= pi/2.
double geodesic_distance(const GenericPair& base, const GenericPair& target,
                         const Tol& tol = {});

// Property-based minimality certificate: samples isotropy directions
// D = diag(D', D') with D' Gamma = Gamma D' plus a projected-subgradient
// descent on ||Z + D||, and certifies ||Z|| <= ||Z + D|| in every case.
struct MinimalityReport {
  bool certified = false;
  double min_margin = 0.0;  // tightest ||Z+D|| - ||Z|| observed
  int trials = 0;
  int descent_iterations = 0;
};

MinimalityReport minimality_certificate(const HorizontalTangent& ht,
                                        int trials, std::uint64_t seed,
                                        const Tol& tol = {});

}  // namespace projpair
