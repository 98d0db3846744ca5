#include "nnstab/hurwitz.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nnstab/rowqp.hpp"
#include "nnstab/spectral.hpp"

namespace nnstab {

namespace {

constexpr double kEvecZeroFraction = 1e-8;

int default_max_iter(int d) { return 10 * d + 500; }

struct SolveContext {
  const SolverOptions& opts;
  int sweeps = 0;
};

void require_square(const Matrix& A, const char* who) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw std::invalid_argument(std::string(who) + ": square matrix required");
}

double abscissa_metzler(const Matrix& X, double eig_tol) {
  return spectral_abscissa_triple(X, eig_tol).rho;
}

// Alternating sweeps for the Metzler problem: constraints u^T X <= 0 /
// X v <= 0 with the diagonal entry of each row/column exempt from the
// nonnegativity clamp.
InnerResult metzler_inner(const Matrix& M, const Matrix& X0,
                          SolveContext& ctx) {
  const SolverOptions& opts = ctx.opts;
  const int d = static_cast<int>(M.rows());
  const int kmax = opts.max_iter < 0 ? default_max_iter(d) : opts.max_iter;
  InnerResult res;
  Matrix X = X0;
  double prev_step = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kmax; ++k) {
    const double s = 1.0 + X.diagonal().cwiseAbs().maxCoeff();
    SpectralTriple tr =
        perron_power(X + s * Matrix::Identity(d, d), opts.eig_tol);
    tr.rho -= s;
    const Vector& w = (k % 2 == 0) ? tr.u : tr.v;
    if (w.minCoeff() <= kEvecZeroFraction * w.maxCoeff()) {
      res.trace.push_back({k, frobenius_distance(X, M), true});
      res.X = std::move(X);
      res.reduce = true;
      return res;
    }
    const Matrix Xold = X;
    if (k % 2 == 0) {
      for (int j = 0; j < d; ++j)
        X.col(j) =
            project_row_free_diag(M.col(j), tr.u, 0.0, j, opts.qp_tol).x;
    } else {
      for (int i = 0; i < d; ++i)
        X.row(i) = project_row_free_diag(M.row(i).transpose(), tr.v, 0.0, i,
                                         opts.qp_tol)
                       .x.transpose();
    }
    ++ctx.sweeps;
    res.trace.push_back({k, frobenius_distance(X, M), false});
    const double step = frobenius_distance(X, Xold);
    if (step < opts.tol && prev_step < opts.tol) {
      res.X = std::move(X);
      return res;
    }
    prev_step = step;
  }
  res.X = std::move(X);
  res.hit_max_iter = true;
  return res;
}

Matrix metzler_solve(const Matrix& M, const Matrix* init, SolveContext& ctx,
                     std::vector<TraceEntry>* trace, int depth);

void append_trace(std::vector<TraceEntry>* trace,
                  const std::vector<TraceEntry>& inner) {
  if (!trace) return;
  int base = trace->empty() ? 0 : trace->back().k + 1;
  for (TraceEntry e : inner) {
    e.k += base;
    trace->push_back(e);
  }
}

Matrix metzler_reduce_blocks(const Matrix& X, const Matrix& M,
                             const BlockStructure& bs, SolveContext& ctx,
                             int depth) {
  const SolverOptions& opts = ctx.opts;
  const int d = static_cast<int>(X.rows());
  const Matrix Xp = permute_symmetric(X, bs.perm);
  const Matrix Mp = permute_symmetric(M, bs.perm);
  Matrix Yp = Matrix::Zero(d, d);
  int off = 0;
  for (int b = 0; b < bs.blocks(); ++b) {
    const int n = bs.block_sizes[b];
    if (off + n < d)
      Yp.block(off, off + n, n, d - off - n) =
          Mp.block(off, off + n, n, d - off - n);
    const Matrix Mb = Mp.block(off, off, n, n);
    if (n == 1) {
      Yp(off, off) = std::min(Mb(0, 0), 0.0);
    } else if (abscissa_metzler(Mb, opts.eig_tol) <= opts.eig_tol) {
      Yp.block(off, off, n, n) = Mb;
    } else {
      Matrix Xb = Xp.block(off, off, n, n);
      const double alpha = abscissa_metzler(Xb, opts.eig_tol);
      Xb.diagonal().array() -= alpha;  // back to the stability boundary
      Yp.block(off, off, n, n) = metzler_solve(Mb, &Xb, ctx, nullptr, depth + 1);
    }
    off += n;
  }
  return permute_symmetric(Yp, inverse_permutation(bs.perm));
}

Matrix metzler_solve(const Matrix& M, const Matrix* init, SolveContext& ctx,
                     std::vector<TraceEntry>* trace, int depth) {
  if (depth > 1000)
    throw std::runtime_error("hurwitz_stabilize: recursion too deep");
  const SolverOptions& opts = ctx.opts;
  const int d = static_cast<int>(M.rows());
  if (d == 1) return Matrix::Constant(1, 1, std::min(M(0, 0), 0.0));

  // Reducible target: off-diagonal blocks of the optimum copy the target.
  const BlockStructure bsM = frobenius_normal_form(M, opts.zero_tol);
  if (!bsM.irreducible()) {
    const Matrix Mp = permute_symmetric(M, bsM.perm);
    Matrix initp_mat;
    const bool have_init = init != nullptr;
    if (have_init) initp_mat = permute_symmetric(*init, bsM.perm);
    Matrix Yp = Mp;
    int off = 0;
    for (int b = 0; b < bsM.blocks(); ++b) {
      const int n = bsM.block_sizes[b];
      if (off > 0) Yp.block(off, 0, n, off).setZero();
      const Matrix Mb = Mp.block(off, off, n, n);
      if (n == 1) {
        Yp(off, off) = std::min(Mb(0, 0), 0.0);
      } else if (abscissa_metzler(Mb, opts.eig_tol) > opts.eig_tol) {
        Matrix Xb;
        const Matrix* sub = nullptr;
        if (have_init) {
          Xb = initp_mat.block(off, off, n, n);
          Xb.diagonal().array() -= abscissa_metzler(Xb, opts.eig_tol);
          sub = &Xb;
        }
        Yp.block(off, off, n, n) = metzler_solve(Mb, sub, ctx, nullptr, depth + 1);
      }
      off += n;
    }
    const Matrix Y = permute_symmetric(Yp, inverse_permutation(bsM.perm));
    if (trace) trace->push_back({0, frobenius_distance(Y, M), false});
    return Y;
  }

  Matrix X;
  if (init) {
    X = *init;
  } else {
    const double alpha = abscissa_metzler(M, opts.eig_tol);
    if (alpha <= 0.0) return M;
    X = M;
    X.diagonal().array() -= alpha;
  }

  int quirks = 0;
  while (true) {
    InnerResult ir = metzler_inner(M, X, ctx);
    X = std::move(ir.X);
    append_trace(trace, ir.trace);
    BlockStructure bsX = frobenius_normal_form(X, opts.zero_tol);
    if (ir.reduce || !bsX.irreducible()) {
      if (bsX.irreducible()) {
        Matrix Xc = X;
        const double mx = X.cwiseAbs().maxCoeff();
        const double thr = std::max(opts.zero_tol, kEvecZeroFraction * mx);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            if (i != j && Xc(i, j) <= thr) Xc(i, j) = 0.0;
        bsX = frobenius_normal_form(Xc, opts.zero_tol);
        if (bsX.irreducible()) {
          if (++quirks <= 3) continue;
          return X;
        }
        X = std::move(Xc);
      }
      X = metzler_reduce_blocks(X, M, bsX, ctx, depth);
      if (trace) {
        const int k = trace->empty() ? 0 : trace->back().k + 1;
        trace->push_back({k, frobenius_distance(X, M), true});
      }
      return X;
    }
    // Stall: a Metzler iterate on the alpha = 0 boundary has a positive
    // diagonal after shifting, so there is no cyclic-rescaling slack left.
    if (verify_hurwitz_stationary(X, M, opts).accepted) return X;
    // The sweeps are row- and column-wise optimal yet can stall short of
    // joint stationarity when a weak support entry keeps nearly-decoupled
    // parts tied together. Clip the smallest entries; once the support
    // splits, the block reduction solves the parts.
    {
      std::vector<std::pair<double, std::pair<int, int>>> cand;
      const double mx = X.cwiseAbs().maxCoeff();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (i != j && X(i, j) > opts.zero_tol && X(i, j) <= 0.25 * mx)
            cand.push_back({X(i, j), {i, j}});
      std::sort(cand.begin(), cand.end());
      if (cand.size() > 8) cand.resize(8);
      const double dist_now = frobenius_distance(X, M);
      Matrix Xc = X;
      for (const auto& c : cand) {
        Xc(c.second.first, c.second.second) = 0.0;
        const BlockStructure bsc = frobenius_normal_form(Xc, opts.zero_tol);
        if (bsc.irreducible()) continue;
        const Matrix Yc = metzler_reduce_blocks(Xc, M, bsc, ctx, depth);
        if (frobenius_distance(Yc, M) <= dist_now) {
          if (trace) {
            const int k = trace->empty() ? 0 : trace->back().k + 1;
            trace->push_back({k, frobenius_distance(Yc, M), true});
          }
          return Yc;
        }
      }
    }
    return X;
  }
}

}  // namespace

double spectral_abscissa(const Matrix& A) {
  require_square(A, "spectral_abscissa");
  validate_finite(A);
  if (is_metzler(A, kZeroTol)) return abscissa_metzler(A, kEigTol);
  Eigen::EigenSolver<Matrix> es(A);
  double alpha = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < A.rows(); ++i)
    alpha = std::max(alpha, es.eigenvalues()(i).real());
  return alpha;
}

DestabResult closest_hurwitz_unstable(const Matrix& A,
                                      const SolverOptions& opts) {
  require_square(A, "closest_hurwitz_unstable");
  validate_finite(A);
  DestabResult res;
  if (spectral_abscissa(A) >= 0.0) {
    res.X = A;
    res.boundary = true;
    if (is_metzler(A, kZeroTol)) {
      const SpectralTriple t = spectral_abscissa_triple(A, opts.eig_tol);
      res.u = t.u;
      res.v = t.v;
    }
    return res;
  }
  const SmallestEigPair p =
      smallest_sym_eigpair(A.transpose() * A, /*prefer_nonneg=*/false,
                           opts.eig_tol);
  res.degenerate = p.multiple;
  res.r = std::sqrt(std::max(p.mu, 0.0));
  if (res.r <= opts.zero_tol) {
    res.X = A;
    res.r = 0.0;
    res.boundary = true;
    return res;
  }
  Vector v = p.v;
  if (v.sum() < 0.0) v = -v;
  Vector u = -(A * v) / res.r;
  if (u.minCoeff() < 0.0 && (-u).minCoeff() >= 0.0 &&
      (-v).minCoeff() >= 0.0) {
    u = -u;
    v = -v;  // an all-nonpositive pair; flip both (X unchanged)
  }
  res.u = u;
  res.v = v;
  res.X = A + res.r * u * v.transpose();
  return res;
}

StationarityCertificate verify_hurwitz_stationary(const Matrix& X,
                                                  const Matrix& M,
                                                  const SolverOptions& opts) {
  require_square(X, "verify_hurwitz_stationary");
  validate_finite(X);
  validate_finite(M);
  if (M.rows() != X.rows() || M.cols() != X.cols())
    throw std::invalid_argument("verify_hurwitz_stationary: dimension mismatch");
  const int d = static_cast<int>(X.rows());

  StationarityCertificate cert;
  const double scale = std::max(1.0, M.norm());
  const double tol = opts.cert_tol * scale;
  double worst = 0.0;
  std::string worst_desc;
  const auto note = [&](double res, const char* desc) {
    if (res > worst) {
      worst = res;
      worst_desc = desc;
    }
  };

  double offdiag_neg = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) offdiag_neg = std::max(offdiag_neg, -X(i, j));
  note(std::max(0.0, offdiag_neg), "negative off-diagonal entry");

  const BlockStructure bs = frobenius_normal_form(X, opts.zero_tol);
  const Matrix Xp = permute_symmetric(X, bs.perm);
  const Matrix Mp = permute_symmetric(M, bs.perm);
  Matrix Lp = Matrix::Zero(d, d);

  double best_r = -1.0;
  Vector best_u, best_v;
  int best_off = 0;

  int off = 0;
  for (int b = 0; b < bs.blocks(); ++b) {
    const int n = bs.block_sizes[b];
    if (off + n < d) {
      const double dev = (Xp.block(off, off + n, n, d - off - n) -
                          Mp.block(off, off + n, n, d - off - n))
                             .cwiseAbs()
                             .maxCoeff();
      note(dev, "entries above the diagonal blocks differ from the target");
    }
    if (off > 0)
      note(Xp.block(off, 0, n, off).cwiseAbs().maxCoeff(),
           "support below the diagonal blocks");

    const Matrix Xb = Xp.block(off, off, n, n);
    const Matrix Mb = Mp.block(off, off, n, n);
    if ((Xb - Mb).norm() <= tol) {
      const double alpha =
          n == 1 ? Xb(0, 0) : abscissa_metzler(Xb, opts.eig_tol);
      note(std::max(0.0, alpha), "copied block has positive abscissa");
      cert.blockwise.push_back(BlockStatus::frozen_copy);
      off += n;
      continue;
    }

    double alpha;
    Vector u, v;
    if (n == 1) {
      alpha = Xb(0, 0);
      u = v = Vector::Ones(1);
    } else {
      const SpectralTriple t = spectral_abscissa_triple(Xb, opts.eig_tol);
      alpha = t.rho;
      u = t.u;
      v = t.v;
    }
    note(std::abs(alpha), "binding block abscissa away from zero");

    const Matrix W = u * v.transpose();
    const Matrix D = Mb - Xb;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i == j || Xb(i, j) > opts.zero_tol) {
          num += D(i, j) * W(i, j);
          den += W(i, j) * W(i, j);
        }
    const double rb = den > 0.0 ? num / den : 0.0;
    note(std::max(0.0, -rb), "negative multiplier scale");
    const Matrix Lb = rb * W - D;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || Xb(i, j) > opts.zero_tol)
          note(std::abs(Lb(i, j)), "gradient not rank-one over the support");
        else
          note(std::max(0.0, -Lb(i, j)),
               "negative multiplier at a zero entry");
      }
    Lp.block(off, off, n, n) = Lb;
    cert.blockwise.push_back(BlockStatus::stationary_primitive);
    if (rb > best_r) {
      best_r = rb;
      best_u = u;
      best_v = v;
      best_off = off;
    }
    off += n;
  }

  cert.u = Vector::Zero(d);
  cert.v = Vector::Zero(d);
  if (best_r >= 0.0) {
    cert.r = best_r;
    for (int t = 0; t < best_u.size(); ++t) {
      cert.u[bs.perm[best_off + t]] = best_u[t];
      cert.v[bs.perm[best_off + t]] = best_v[t];
    }
  }
  cert.Lambda = permute_symmetric(Lp, inverse_permutation(bs.perm));
  cert.max_residual = worst;
  cert.accepted = worst <= tol;
  if (!cert.accepted) cert.rejection = worst_desc;
  return cert;
}

HurwitzResult hurwitz_stabilize(const Matrix& A_input,
                                const SolverOptions& opts) {
  require_square(A_input, "hurwitz_stabilize");
  validate_finite(A_input);
  HurwitzResult res;
  const Matrix M = metzler_projection(A_input);
  const int d = static_cast<int>(M.rows());
  SolveContext ctx{opts};

  if (abscissa_metzler(M, opts.eig_tol) <= 0.0) {
    res.X = M;
    res.distance = frobenius_distance(M, A_input);
    res.alpha = abscissa_metzler(M, opts.eig_tol);
    res.trace.push_back({0, 0.0, false});
    res.certificate = verify_hurwitz_stationary(res.X, M, opts);
    res.classification = Classification::positive_global;
    return res;
  }

  Matrix init;
  const Matrix* initp = nullptr;
  if (opts.init_strategy == SolverOptions::Init::custom) {
    if (opts.initial.rows() != d || opts.initial.cols() != d)
      throw std::invalid_argument(
          "hurwitz_stabilize: custom initial iterate has wrong size");
    validate_finite(opts.initial);
    init = metzler_projection(opts.initial);
    initp = &init;
  }
  Matrix X = metzler_solve(M, initp, ctx, &res.trace, 0);

  std::mt19937_64 rng(opts.probe_seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int restarts = 0;
  while (true) {
    const double dist_now = frobenius_distance(X, M);
    const double dd = dist_now * dist_now;
    Matrix best;
    double best_dd = dd;
    bool found = false;
    for (int p = 0; p < opts.probe_count; ++p) {
      Matrix G(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = unif(rng);
      Matrix Y = metzler_projection(X + opts.probe_step * G);
      const double alpha = abscissa_metzler(Y, opts.eig_tol);
      if (alpha > 0.0) Y.diagonal().array() -= alpha;
      const double ydist = frobenius_distance(Y, M);
      if (ydist * ydist < best_dd - 1e-12 * std::max(1.0, dd)) {
        best_dd = ydist * ydist;
        best = Y;
        found = true;
      }
    }
    if (!found || restarts >= opts.max_restarts) break;
    Matrix init2 = best;
    init2.diagonal().array() -= abscissa_metzler(init2, opts.eig_tol);
    std::vector<TraceEntry> trace2;
    const Matrix X2 = metzler_solve(M, &init2, ctx, &trace2, 0);
    ++restarts;
    if (frobenius_distance(X2, M) <
        dist_now - 1e-12 * std::max(1.0, dist_now)) {
      X = X2;
      res.trace = std::move(trace2);
    } else {
      break;
    }
  }

  res.restarts = restarts;
  res.X = X;
  res.distance = frobenius_distance(X, A_input);
  res.alpha = abscissa_metzler(X, opts.eig_tol);
  res.iterations = ctx.sweeps;
  res.certificate = verify_hurwitz_stationary(X, M, opts);
  res.classification = res.certificate.accepted
                           ? Classification::stationary_local
                           : Classification::stationary_unverified;
  return res;
}

}  // namespace nnstab
