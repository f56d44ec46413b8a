#pragma once

#include <cstdint>
#include <random>

#include "projpair/decomp.hpp"
#include "projpair/types.hpp"

namespace projpair {

// Every sampler takes an explicit engine seeded by the caller, so all
// randomized tests and certificates are deterministic and parallelizable.

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Standard complex Gaussian entries.
CMat randn_complex(Rng& rng, Index rows, Index cols);

// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
CMat haar_unitary(Rng& rng, Index n);

Hermitian random_hermitian(Rng& rng, Index n, double scale = 1.0);

// Random anti-Hermitian L x L block commuting with Gamma: independent
// anti-Hermitian blocks per angle cluster.
CMat random_gamma_commuting_antihermitian(Rng& rng, const HalmosFrame& frame,
                                          double scale = 1.0);

// Random unitary L x L block commuting with Gamma: Haar blocks per cluster.
CMat random_gamma_commuting_unitary(Rng& rng, const HalmosFrame& frame);

// Random generic difference A0 on dimension m (even): paired spectrum
// +-lambda with lambda drawn in [lo, hi], conjugated by a Haar unitary.
Hermitian random_generic_difference(Rng& rng, Index m, double lo = 0.1,
                                    double hi = 0.9);

// Random pair over a fixed A0: random unimodular pairing phases on the
// +-lambda eigenvector blocks (every Davis symmetry of a simple-spectrum
// A0 arises this way).
GenericPair random_pair_over(Rng& rng, const Hermitian& a0,
                             const Tol& tol = {});

}  // namespace projpair
