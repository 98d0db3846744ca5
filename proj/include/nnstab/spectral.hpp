#pragma once

#include "nnstab/matrix.hpp"

namespace nnstab {

// Leading (Perron) eigendata of a non-negative matrix. rho is the spectral
// radius; v and u are unit right/left eigenvectors, entrywise >= 0.
struct SpectralTriple {
  double rho = 0.0;
  Vector v;
  Vector u;
  int iterations = 0;      // power-iteration steps actually taken
  bool fallback = false;   // dense eigensolver fallback was required
};

// Smallest eigenpair of a symmetric PSD matrix.
struct SmallestEigPair {
  double mu = 0.0;
  Vector v;
  bool multiple = false;  // smallest eigenvalue numerically repeated and the
                          // clamped vector failed the residual check
};

// Power iteration on X + cI, c = 1 + max diagonal entry (the shift makes the
// Perron root strictly dominant even for imprimitive X). Deterministic:
// starts from the normalized all-ones vector. Falls back to a dense
// eigendecomposition if the iteration has not met eig_tol after max_iter
// steps (max_iter < 0 selects the default 100*d + 10000). Reducible X is
// handled blockwise over its Frobenius normal form: rho is the max over the
// diagonal blocks and the eigenvectors are assembled by back-substitution
// (the assembled eigenproblem can be defective, where any full-matrix
// method loses accuracy).
SpectralTriple perron_triple(const Matrix& X, double eig_tol = kEigTol,
                             int max_iter = -1);

// The raw full-matrix power iteration behind perron_triple, without the
// blockwise refinement. On reducible X its eigenvector estimates keep a
// slowly-draining tail on the decaying part instead of exact zeros; the
// relaxation sweeps use this variant so a support split announces itself
// through vanishing eigenvector entries only once it is numerically firm.
SpectralTriple perron_power(const Matrix& X, double eig_tol = kEigTol,
                            int max_iter = -1);

// Inverse iteration with an LDLT solve; a Tikhonov shift of
// 1e-14 * trace(M)/d is applied when M is numerically singular. Falls back
// to a dense symmetric eigendecomposition on slow convergence. When
// prefer_nonneg is set, small negative components (within eig_tol after
// sign normalization) are clamped to zero and the vector renormalized; if
// the clamped vector fails the residual check the pair is flagged multiple.
SmallestEigPair smallest_sym_eigpair(const Matrix& M, bool prefer_nonneg,
                                     double eig_tol = kEigTol);

// (sigma_1, sigma_2): smallest and second-smallest singular values.
std::pair<double, double> two_smallest_singular_values(const Matrix& B);

// Spectral abscissa data of a Metzler matrix: perron_triple(X + sI) with
// s = 1 + max |x_ii|, shifted back. rho field holds alpha(X).
SpectralTriple spectral_abscissa_triple(const Matrix& X,
                                        double eig_tol = kEigTol);

}  // namespace nnstab
