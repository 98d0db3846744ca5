#pragma once

#include "nnstab/schur.hpp"

namespace nnstab {

struct OrderedPartition {
  std::vector<std::vector<int>> blocks;  // disjoint, non-empty, cover 0..d-1
};

// Every ordered set partition of {0..d-1} (Fubini enumeration) in a fixed
// deterministic order. Capped at d <= 8.
std::vector<OrderedPartition> all_ordered_partitions(int d);

// Entries 2 on and below the diagonal, 1 above it. Requires d >= 2.
Matrix lower_dominant_example(int d);

// Strictly positive, a_ij > a_ji whenever i > j, diagonal entries > 1 --
// the hypotheses under which every ordered partition produces a distinct
// local minimum.
bool is_lower_dominant(const Matrix& A);

// Candidate built from a partition: X equals A above the diagonal blocks,
// is zero below them, and carries stabilized diagonal blocks. Throws if some
// diagonal block of A already has spectral radius <= 1.
Matrix partition_local_minimum(const Matrix& A, const OrderedPartition& part,
                               const SolverOptions& opts = {});

struct LocalMinimum {
  OrderedPartition partition;
  Matrix X;
  double distance = 0.0;
  bool stationary = false;
};

// Builds every partition candidate, keeps the certified-stationary ones, and
// deduplicates by Frobenius distance (threshold cert_tol * max(1, ||A||)).
// Sorted by ascending distance. Requires is_lower_dominant(A).
std::vector<LocalMinimum> enumerate_local_minima(const Matrix& A,
                                                 const SolverOptions& opts = {});

}  // namespace nnstab
