#pragma once

#include "nnstab/schur.hpp"

namespace nnstab {

// Largest real part over the spectrum. Uses Perron data for Metzler inputs,
// a dense eigendecomposition otherwise.
double spectral_abscissa(const Matrix& A);

// Closest matrix with spectral abscissa >= 0: the rank-one singular-value
// downdate X = A - sigma_min u v^T, which is singular, written here as
// X = A + r u v^T with u flipped so that r = sigma_min(A) is the distance.
// For Metzler A this is the exact closest unstable matrix.
DestabResult closest_hurwitz_unstable(const Matrix& A,
                                      const SolverOptions& opts = {});

struct HurwitzResult {
  Matrix X;
  double distance = 0.0;  // Frobenius distance to the original input
  double alpha = 0.0;     // spectral abscissa of X
  int iterations = 0;
  std::vector<TraceEntry> trace;
  StationarityCertificate certificate;
  Classification classification = Classification::stationary_unverified;
  int restarts = 0;
};

// Locally closest Metzler matrix with spectral abscissa <= 0. General input
// is first projected to Metzler form (off-diagonal negatives clamped);
// distances are reported against the original input.
HurwitzResult hurwitz_stabilize(const Matrix& A, const SolverOptions& opts = {});

// First-order optimality check of Metzler X against target M (both Metzler).
// Mirrors verify_stationary with the diagonal treated as sign-free: the
// rank-one fit runs over support plus diagonal and the nonnegativity
// multiplier applies only at off-diagonal zeros.
StationarityCertificate verify_hurwitz_stationary(const Matrix& X,
                                                  const Matrix& M,
                                                  const SolverOptions& opts = {});

}  // namespace nnstab
