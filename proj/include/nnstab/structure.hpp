#pragma once

#include "nnstab/matrix.hpp"

namespace nnstab {

// Frobenius normal form data: applying perm (new index -> old index) to the
// matrix yields block upper-triangular form whose diagonal blocks are the
// strongly connected components of the support digraph; every entry below
// the diagonal blocks of the permuted matrix is <= zero_tol.
struct BlockStructure {
  std::vector<int> perm;
  std::vector<int> block_sizes;
  int blocks() const { return static_cast<int>(block_sizes.size()); }
  bool irreducible() const { return block_sizes.size() == 1; }
};

BlockStructure frobenius_normal_form(const Matrix& X,
                                     double zero_tol = kZeroTol);

// Cyclic class structure of an irreducible matrix: r = 1 iff primitive;
// for r >= 2 the support maps class Omega_k into Omega_{k+1} (mod r).
struct CyclicPartition {
  int r = 1;
  std::vector<std::vector<int>> classes;
};

// Precondition: X irreducible (establish via frobenius_normal_form).
// Returns (primitive?, partition). Period computed by BFS level arithmetic:
// r = gcd over support edges of (level(from) + 1 - level(to)).
std::pair<bool, CyclicPartition> is_primitive(const Matrix& X,
                                              double zero_tol = kZeroTol);

// Block k (0-based) is the submatrix with rows Omega_{k+1 mod r} and columns
// Omega_k. Throws if X has support outside the cyclic pattern.
std::vector<Matrix> cyclic_block_views(const Matrix& X,
                                       const CyclicPartition& part,
                                       double zero_tol = kZeroTol);

}  // namespace nnstab
