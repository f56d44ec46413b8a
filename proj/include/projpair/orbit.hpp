#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <utility>

#include "projpair/davis.hpp"
#include "projpair/decomp.hpp"
#include "projpair/types.hpp"

namespace projpair {

// The unitary group of the commutant {A0}' acting transitively on the
// fiber over A0, plus the conditional expectation onto the isotropy
// subalgebra.

// Halmos-coordinate blocks of a commutant element: [[X, Y], [Y, Z]] with
// X, Y, Z commuting with Gamma and C(X - Z) + 2 S Y = 0 (equivalently
// Z = X + 2 tau Y).
struct CommutantElement {
  CMat x, y, z;
};

// Transforms m by the frame, extracts blocks and certifies the membership
// conditions; throws NotInCommutant with the violated residual.
CommutantElement commutant_membership(const CMat& m, const HalmosFrame& frame,
                                      const Tol& tol = {});

// Frame matrix of a commutant element.
CMat commutant_to_frame(const CommutantElement& e);

// A unitary commuting with A0 that conjugates gp0 onto gp1 (Theorem-style
// global construction: split off K = N(P0 + Q0' - 1), use sgn(P0+Q0'-1)V
// on the complement and the isometric part of A0 on K).
CMat intertwining_unitary(const GenericPair& gp0, const GenericPair& gp1,
                          const Tol& tol = {});

// Continuous local section U = sgn(P0 + Q0' - 1) V, defined when
// P0 + Q0' - 1 is invertible; throws SingularSign at the boundary (callers
// fall back to intertwining_unitary).
CMat local_cross_section(const GenericPair& gp0, const GenericPair& gp1,
                         const Tol& tol = {});

// Conditional expectation onto the isotropy algebra, computed through the
// intrinsic formula E(M) = (P0 (M + WMW) P0 + P0' (M + WMW) P0')/2 with
// W = sgn(K), K = Q0 - P0 Q0 P0 - P0' Q0 P0'. Equals diag((X+Z)/2, (X+Z)/2)
// in frame coordinates.
CMat conditional_expectation(const CMat& m, const GenericPair& gp,
                             const Tol& tol = {});

// Random unitary fixing (P0, Q0): diag(W', W') in frame coordinates with
// W' Gamma = Gamma W', sampled block-Haar per angle cluster.
struct IsotropyElement {
  CMat wp;       // L x L block
  CMat ambient;  // m x m unitary
};

IsotropyElement isotropy_sample(const HalmosFrame& frame, std::uint64_t seed);

// Numerical closed-range diagnostics. Two coupled families:
//  - range of A on H0 (Gamma invertible): min angle of Gamma and the gap of
//    P0 Q0 P0 - P0 on R(P0) (= min sin^2),
//  - range of A^2 - 1 (P0 + Q0 - 1 invertible): its gap (= min cos) and the
//    gap of A0^2 - 1 (= min cos^2).
// Each quantity is computed by an independent route; the report asserts the
// trigonometric couplings and throws InconsistentReport when they disagree.
struct ClosedRangeReport {
  bool has_generic = false;
  double theta_min = 0.0;
  double pqp_gap = 0.0;        // gap of P0 Q0 P0 - P0 on R(P0)
  double sum_gap = 0.0;        // gap of P0 + Q0 - 1
  double asq_gap = 0.0;        // gap of A0^2 - 1 on H0
  bool gamma_invertible = true;     // headline: range of A0 closed
  bool sum_invertible = true;       // range of A^2 - 1 closed
  double threshold = 0.0;

  nlohmann::json to_json() const;
};

ClosedRangeReport closed_range_report(const Hermitian& a, double threshold,
                                      const Tol& tol = {});

// (||P0 + Q0||, ||P0' + Q0'||); equality within 1e-8 is the invariant.
std::pair<double, double> sum_norm_invariance(const GenericPair& gp0,
                                              const GenericPair& gp1,
                                              const Tol& tol = {});

}  // namespace projpair
