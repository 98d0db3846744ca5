#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nnstab/matrix.hpp"
#include "nnstab/structure.hpp"

namespace nnstab {

struct SolverOptions {
  double tol = 1e-9;       // stall threshold on successive iterates
  int max_iter = -1;       // -1 selects 10*d + 500 sweeps
  double eig_tol = kEigTol;
  double qp_tol = kQpTol;
  double cert_tol = kCertTol;  // scaled by max(1, ||A||_F) when verifying
  double zero_tol = kZeroTol;

  enum class Init { scale_input, custom } init_strategy = Init::scale_input;
  Matrix initial;  // starting iterate when init_strategy == custom

  // Randomized local-minimality probe around the terminal iterate.
  int max_restarts = 4;
  std::uint64_t probe_seed = 1729;
  int probe_count = 200;
  double probe_step = 1e-4;
};

// Closest matrix with spectral radius >= 1: X = A + r u v^T where r is the
// smallest singular value of I - A.
struct DestabResult {
  Matrix X;
  double r = 0.0;
  Vector u, v;
  bool boundary = false;    // input already had rho(A) >= 1
  bool degenerate = false;  // optimizer not unique (multiple smallest eigval)
};

DestabResult closest_unstable(const Matrix& A, const SolverOptions& opts = {});

// Rank-one downdate X = A - r u v^T for rho(A) > 1.  Returned only when u,
// v and X all come out nonnegative, in which case X is the globally closest
// matrix with rho <= 1.
std::optional<DestabResult> positive_candidate(const Matrix& A,
                                               const SolverOptions& opts = {});

enum class BlockStatus {
  frozen_copy,             // block equals the corresponding block of A
  stationary_primitive,    // rank-one multiplier fit over one Perron pair
  stationary_imprimitive,  // per-cycle-class rank-one fits
};

struct StationarityCertificate {
  double r = 0.0;  // largest fitted multiplier scale among binding blocks
  Vector u, v;     // Perron pair of that block, zero-padded to full size
  Matrix Lambda;   // entrywise multiplier estimate
  std::vector<BlockStatus> blockwise;
  bool accepted = false;
  std::string rejection;      // empty when accepted
  double max_residual = 0.0;  // worst constraint violation encountered
};

// First-order optimality check of X as a constrained closest point to A.
StationarityCertificate verify_stationary(const Matrix& X, const Matrix& A,
                                          const SolverOptions& opts = {});

struct TraceEntry {
  int k = 0;
  double distance = 0.0;
  bool reduce = false;
};

struct InnerResult {
  Matrix X;
  bool reduce = false;  // an eigenvector component hit zero
  std::vector<TraceEntry> trace;
  bool hit_max_iter = false;
};

// Alternating eigenvector/projection relaxation.  Even sweeps constrain
// columns against the left eigenvector, odd sweeps constrain rows against
// the right one.  Returns early with reduce=true when the working
// eigenvector acquires a zero component.
InnerResult inner_relax(const Matrix& A, const Matrix& X0,
                        const SolverOptions& opts = {});

enum class Classification {
  positive_global,        // matches the rank-one downdate, strictly positive
  stationary_local,       // certificate accepted
  stationary_unverified,  // returned without an accepted certificate
};

struct StabilizeResult {
  Matrix X;
  double distance = 0.0;  // Frobenius distance to the original input
  int iterations = 0;     // total sweeps across all (sub)solves
  std::vector<TraceEntry> trace;
  StationarityCertificate certificate;
  Classification classification = Classification::stationary_unverified;
  int restarts = 0;
};

// Locally closest matrix with rho(X) <= 1 among nonnegative matrices.
StabilizeResult stabilize(const Matrix& A, const SolverOptions& opts = {});

// Per-class rescaling for an iterate whose support is cyclic: scales the
// cycle blocks by positive weights with product one (preserving rho = 1)
// to minimize the distance to A.  Returns X unchanged when no improvement
// is available.
Matrix optimize_cyclic_weights(const Matrix& X, const Matrix& A,
                               const CyclicPartition& part,
                               double zero_tol = kZeroTol);

}  // namespace nnstab
