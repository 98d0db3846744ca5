#include "nnstab/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nnstab/structure.hpp"

namespace nnstab {

namespace {

// One-sided power iteration for the dominant eigenvector of B (B >= 0 with
// strictly dominant Perron root). Returns false if the residual target was
// not met within max_iter steps.
bool power_dominant(const Matrix& B, double eig_tol, int max_iter, Vector& x,
                    double& lambda, int& iters) {
  const int d = static_cast<int>(B.rows());
  x = Vector::Ones(d) / std::sqrt(static_cast<double>(d));
  lambda = 0.0;
  for (iters = 0; iters < max_iter; ++iters) {
    Vector y = B * x;
    const double n = y.norm();
    if (n == 0.0) {  // dominant eigenvalue is 0 (nilpotent direction)
      lambda = 0.0;
      return true;
    }
    y /= n;
    lambda = y.dot(B * y);
    if ((B * y - lambda * y).norm() <= eig_tol * std::max(1.0, lambda)) {
      x = y;
      return true;
    }
    x = y;
  }
  return false;
}

Vector clamp_unit(Vector v) {
  if (v.sum() < 0.0) v = -v;
  v = v.cwiseMax(0.0);
  const double n = v.norm();
  if (n > 0.0) v /= n;
  return v;
}

// Dense fallback: full spectrum of B, pick the eigenvalue of maximal real
// part (equals the Perron root for B >= 0) and clamp its eigenvector.
void dense_dominant(const Matrix& B, Vector& v, double& lambda) {
  Eigen::EigenSolver<Matrix> es(B);
  int best = 0;
  for (int i = 1; i < B.rows(); ++i)
    if (es.eigenvalues()(i).real() > es.eigenvalues()(best).real()) best = i;
  lambda = es.eigenvalues()(best).real();
  v = clamp_unit(es.eigenvectors().col(best).real());
}

}  // namespace

// Plain full-matrix power iteration (with dense fallback). On an irreducible
// matrix the shifted Perron root is simple, so the Rayleigh estimate is
// reliable; on a reducible one the vectors keep a tail of slowly draining
// mass on the decaying part — the sweep algorithms rely on exactly that to
// notice a split through vanishing eigenvector entries.
SpectralTriple perron_power(const Matrix& X, double eig_tol, int max_iter) {
  validate_finite(X);
  const int d = static_cast<int>(X.rows());
  if (d < 1 || X.rows() != X.cols())
    throw std::invalid_argument("perron_power: square matrix required");
  if (max_iter < 0) max_iter = 100 * d + 10000;

  const double c = 1.0 + X.diagonal().maxCoeff();
  Matrix B = X + c * Matrix::Identity(d, d);

  SpectralTriple t;
  double lam_r = 0.0, lam_l = 0.0;
  int it_r = 0, it_l = 0;
  const bool ok_r = power_dominant(B, eig_tol, max_iter, t.v, lam_r, it_r);
  const bool ok_l =
      power_dominant(B.transpose(), eig_tol, max_iter, t.u, lam_l, it_l);
  t.iterations = it_r + it_l;
  if (!ok_r) {
    dense_dominant(B, t.v, lam_r);
    t.fallback = true;
  }
  if (!ok_l) {
    dense_dominant(B.transpose(), t.u, lam_l);
    t.fallback = true;
  }
  t.v = clamp_unit(t.v);
  t.u = clamp_unit(t.u);
  t.rho = 0.5 * (lam_r + lam_l) - c;
  return t;
}

SpectralTriple perron_triple(const Matrix& X, double eig_tol, int max_iter) {
  validate_finite(X);
  const int d = static_cast<int>(X.rows());
  if (d < 1 || X.rows() != X.cols())
    throw std::invalid_argument("perron_triple: square matrix required");
  const BlockStructure bs = frobenius_normal_form(X, kZeroTol);
  if (bs.irreducible()) return perron_power(X, eig_tol, max_iter);

  // The spectrum of a block-triangular matrix is the union of the diagonal
  // blocks' spectra, so the Perron root is the max over blocks. Working
  // blockwise keeps it accurate where the assembled eigenproblem is
  // defective (coupled blocks with tied roots the full-matrix iteration or a
  // dense solver can only resolve to ~eps^(1/k)). Eigenvectors follow by
  // back-substitution through the triangular structure; the shifted inverses
  // are non-negative (Neumann series), so both vectors stay non-negative.
  const Matrix Y = permute_symmetric(X, bs.perm);
  const int m = bs.blocks();
  std::vector<int> off(m, 0);
  for (int b = 1; b < m; ++b) off[b] = off[b - 1] + bs.block_sizes[b - 1];

  SpectralTriple t;
  std::vector<SpectralTriple> bt(m);
  for (int b = 0; b < m; ++b) {
    const int n = bs.block_sizes[b];
    bt[b] =
        perron_power(Y.block(off[b], off[b], n, n), eig_tol, max_iter);
    t.iterations += bt[b].iterations;
    t.fallback = t.fallback || bt[b].fallback;
    t.rho = std::max(t.rho, bt[b].rho);
  }
  // Blocks within the tie window share the root; seeding the earliest one
  // for v (latest for u) keeps the substitution systems non-singular.
  const double tie = std::max(1e-8 * std::max(1.0, t.rho), 10.0 * eig_tol);
  int bv = -1, bu = -1;
  for (int b = 0; b < m; ++b)
    if (bt[b].rho >= t.rho - tie) {
      if (bv < 0) bv = b;
      bu = b;
    }

  Vector vp = Vector::Zero(d);
  vp.segment(off[bv], bs.block_sizes[bv]) = bt[bv].v;
  for (int i = bv - 1; i >= 0; --i) {
    const int n = bs.block_sizes[i];
    const Vector rhs = Y.block(off[i], off[i] + n, n, d - off[i] - n) *
                       vp.segment(off[i] + n, d - off[i] - n);
    if (rhs.cwiseAbs().maxCoeff() == 0.0) continue;
    const Matrix S =
        t.rho * Matrix::Identity(n, n) - Y.block(off[i], off[i], n, n);
    vp.segment(off[i], n) = S.partialPivLu().solve(rhs);
  }
  Vector up = Vector::Zero(d);
  up.segment(off[bu], bs.block_sizes[bu]) = bt[bu].u;
  for (int j = bu + 1; j < m; ++j) {
    const int n = bs.block_sizes[j];
    const Vector rhs = Y.block(0, off[j], off[j], n).transpose() *
                       up.head(off[j]);
    if (rhs.cwiseAbs().maxCoeff() == 0.0) continue;
    const Matrix S = t.rho * Matrix::Identity(n, n) -
                     Y.block(off[j], off[j], n, n).transpose();
    up.segment(off[j], n) = S.partialPivLu().solve(rhs);
  }
  Vector v = Vector::Zero(d), u = Vector::Zero(d);
  for (int i = 0; i < d; ++i) {
    v[bs.perm[i]] = vp[i];
    u[bs.perm[i]] = up[i];
  }
  t.v = clamp_unit(v);
  t.u = clamp_unit(u);
  return t;
}

SmallestEigPair smallest_sym_eigpair(const Matrix& M, bool prefer_nonneg,
                                     double eig_tol) {
  validate_finite(M);
  const int d = static_cast<int>(M.rows());
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("smallest_sym_eigpair: matrix not symmetric");

  SmallestEigPair out;
  // Inverse iteration; shift slightly if the factorization is singular.
  Matrix Ms = M;
  Eigen::LDLT<Matrix> ldlt(Ms);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 0.0) {
    const double shift = 1e-14 * std::max(M.trace(), 1.0) / d;
    Ms = M + shift * Matrix::Identity(d, d);
    ldlt.compute(Ms);
  }
  bool converged = false;
  // A fixed start such as ones/sqrt(d) can be exactly orthogonal to the
  // target eigenvector (then the iteration stagnates on a larger eigenpair
  // with a perfect residual). A seeded pseudo-random start avoids that.
  Vector x(d);
  {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < d; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      x[i] = 0.25 + static_cast<double>(state >> 11) / (1ull << 53);
    }
    x /= x.norm();
  }
  if (ldlt.info() == Eigen::Success) {
    for (int k = 0; k < 200; ++k) {
      Vector y = ldlt.solve(x);
      const double n = y.norm();
      if (!(n > 0.0) || !y.allFinite()) break;
      y /= n;
      const double mu = y.dot(M * y);
      if ((M * y - mu * y).norm() <= eig_tol * std::max(1.0, mu)) {
        out.v = y;
        out.mu = mu;
        converged = true;
        break;
      }
      x = y;
    }
  }
  if (!converged) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(M);
    out.mu = es.eigenvalues()(0);  // ascending order
    out.v = es.eigenvectors().col(0);
    // numerically repeated smallest eigenvalue?
    if (d > 1 && es.eigenvalues()(1) - es.eigenvalues()(0) <= 1e-10 * scale)
      out.multiple = true;
  }
  if (out.mu < 0.0 && out.mu > -eig_tol) out.mu = 0.0;

  if (prefer_nonneg) {
    Vector w = out.v;
    if (w.sum() < 0.0) w = -w;
    Vector clamped = w.cwiseMax(0.0);
    const double n = clamped.norm();
    if (n > 0.0) {
      clamped /= n;
      if ((M * clamped - out.mu * clamped).norm() <=
          std::max(10.0 * eig_tol, 1e-9) * std::max(1.0, out.mu)) {
        out.v = clamped;
      } else {
        out.v = w;
        out.multiple = true;  // no non-negative vector in this eigendirection
      }
    }
  }
  return out;
}

std::pair<double, double> two_smallest_singular_values(const Matrix& B) {
  validate_finite(B);
  if (B.rows() != B.cols())
    throw std::invalid_argument("two_smallest_singular_values: square input");
  Eigen::JacobiSVD<Matrix> svd(B);
  const auto& s = svd.singularValues();  // descending
  const int d = static_cast<int>(s.size());
  if (d == 1) return {s(0), s(0)};
  return {s(d - 1), s(d - 2)};
}

SpectralTriple spectral_abscissa_triple(const Matrix& X, double eig_tol) {
  if (!is_metzler(X, kZeroTol))
    throw std::invalid_argument("spectral_abscissa_triple: Metzler required");
  const int d = static_cast<int>(X.rows());
  const double s = 1.0 + X.diagonal().cwiseAbs().maxCoeff();
  SpectralTriple t =
      perron_triple(nonneg_projection(X + s * Matrix::Identity(d, d)), eig_tol);
  t.rho -= s;
  return t;
}

}  // namespace nnstab
