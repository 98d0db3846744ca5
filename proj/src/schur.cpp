#include "nnstab/schur.hpp"

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

// An eigenvector component below this fraction of the largest one is treated
// as zero, triggering the support-splitting recursion.
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

InnerResult inner_relax_impl(const Matrix& A, const Matrix& X0,
                             SolveContext& ctx) {
  const SolverOptions& opts = ctx.opts;
  const int d = static_cast<int>(A.rows());
  const int kmax =
      opts.max_iter < 0 ? default_max_iter(d) : opts.max_iter;
  InnerResult res;
  Matrix X = X0;
  double prev_step = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kmax; ++k) {
    const SpectralTriple tr = perron_power(X, opts.eig_tol);
    const Vector& w = (k % 2 == 0) ? tr.u : tr.v;
    if (w.minCoeff() <= kEvecZeroFraction * w.maxCoeff()) {
      res.trace.push_back({k, frobenius_distance(X, A), true});
      res.X = std::move(X);
      res.reduce = true;
      return res;
    }
    const Matrix Xold = X;
    if (k % 2 == 0) {
      for (int j = 0; j < d; ++j)
        X.col(j) = project_row(A.col(j), tr.u, tr.u[j], opts.qp_tol).x;
    } else {
      for (int i = 0; i < d; ++i)
        X.row(i) =
            project_row(A.row(i).transpose(), tr.v, tr.v[i], opts.qp_tol)
                .x.transpose();
    }
    ++ctx.sweeps;
    res.trace.push_back({k, frobenius_distance(X, A), false});
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

Matrix solve_core(const Matrix& A, const Matrix* init, SolveContext& ctx,
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

// Split along the (block upper-triangular) support of the iterate X: zeros
// stay below, the target's entries are copied above, and each diagonal block
// is either frozen (already stable target block) or re-solved with the
// current block as the starting point.
Matrix reduce_blocks(const Matrix& X, const Matrix& A,
                     const BlockStructure& bs, SolveContext& ctx, int depth) {
  const SolverOptions& opts = ctx.opts;
  const int d = static_cast<int>(X.rows());
  const Matrix Xp = permute_symmetric(X, bs.perm);
  const Matrix Ap = permute_symmetric(A, bs.perm);
  Matrix Yp = Matrix::Zero(d, d);
  int off = 0;
  for (int b = 0; b < bs.blocks(); ++b) {
    const int n = bs.block_sizes[b];
    if (off + n < d)
      Yp.block(off, off + n, n, d - off - n) =
          Ap.block(off, off + n, n, d - off - n);
    const Matrix Ab = Ap.block(off, off, n, n);
    if (n == 1) {
      Yp(off, off) = std::min(Ab(0, 0), 1.0);
    } else if (perron_triple(Ab, opts.eig_tol).rho <= 1.0 + opts.eig_tol) {
      Yp.block(off, off, n, n) = Ab;
    } else {
      const Matrix Xb = Xp.block(off, off, n, n);
      const double rho_x = perron_triple(Xb, opts.eig_tol).rho;
      Matrix initb;
      const Matrix* initp = nullptr;
      if (rho_x > opts.zero_tol) {
        initb = Xb / rho_x;
        initp = &initb;
      }
      Yp.block(off, off, n, n) = solve_core(Ab, initp, ctx, nullptr, depth + 1);
    }
    off += n;
  }
  return permute_symmetric(Yp, inverse_permutation(bs.perm));
}

Matrix solve_core(const Matrix& A, const Matrix* init, SolveContext& ctx,
                  std::vector<TraceEntry>* trace, int depth) {
  if (depth > 1000) throw std::runtime_error("stabilize: recursion too deep");
  const SolverOptions& opts = ctx.opts;
  const int d = static_cast<int>(A.rows());
  if (d == 1) return Matrix::Constant(1, 1, std::min(A(0, 0), 1.0));

  const BlockStructure bsA = frobenius_normal_form(A, opts.zero_tol);
  if (!bsA.irreducible()) {
    // Block upper-triangular target: the off-diagonal blocks of the closest
    // stable matrix coincide with the target's, so only the diagonal blocks
    // need solving.
    const Matrix Ap = permute_symmetric(A, bsA.perm);
    Matrix initp_mat;
    const bool have_init = init != nullptr;
    if (have_init) initp_mat = permute_symmetric(*init, bsA.perm);
    Matrix Yp = Ap;
    int off = 0;
    for (int b = 0; b < bsA.blocks(); ++b) {
      const int n = bsA.block_sizes[b];
      if (off > 0) Yp.block(off, 0, n, off).setZero();
      const Matrix Ab = Ap.block(off, off, n, n);
      if (n == 1) {
        Yp(off, off) = std::min(Ab(0, 0), 1.0);
      } else if (perron_triple(Ab, opts.eig_tol).rho > 1.0 + opts.eig_tol) {
        Matrix initb;
        const Matrix* sub = nullptr;
        if (have_init) {
          const Matrix Xb = initp_mat.block(off, off, n, n);
          const double rho_x = perron_triple(Xb, opts.eig_tol).rho;
          if (rho_x > opts.zero_tol) {
            initb = Xb / rho_x;
            sub = &initb;
          }
        }
        Yp.block(off, off, n, n) = solve_core(Ab, sub, ctx, nullptr, depth + 1);
      }
      off += n;
    }
    const Matrix Y = permute_symmetric(Yp, inverse_permutation(bsA.perm));
    if (trace) trace->push_back({0, frobenius_distance(Y, A), false});
    return Y;
  }

  Matrix X;
  if (init) {
    X = *init;
  } else {
    const double rho = perron_triple(A, opts.eig_tol).rho;
    if (rho <= 1.0) return A;
    X = A / rho;
  }

  int quirks = 0;
  while (true) {
    InnerResult ir = inner_relax_impl(A, X, ctx);
    X = std::move(ir.X);
    append_trace(trace, ir.trace);
    BlockStructure bsX = frobenius_normal_form(X, opts.zero_tol);
    if (ir.reduce || !bsX.irreducible()) {
      if (bsX.irreducible()) {
        // Eigenvector hit zero while the support stayed connected: clear the
        // near-zero entries and re-examine; retry the sweep if that still
        // does not split.
        Matrix Xc = X;
        const double thr =
            std::max(opts.zero_tol, kEvecZeroFraction * X.maxCoeff());
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            if (Xc(i, j) <= thr) Xc(i, j) = 0.0;
        bsX = frobenius_normal_form(Xc, opts.zero_tol);
        if (bsX.irreducible()) {
          if (++quirks <= 3) continue;
          return X;
        }
        X = std::move(Xc);
      }
      X = reduce_blocks(X, A, bsX, ctx, depth);
      if (trace) {
        const int k = trace->empty() ? 0 : trace->back().k + 1;
        trace->push_back({k, frobenius_distance(X, A), true});
      }
      return X;
    }
    // Stalled with a connected support: the only remaining slack is the
    // per-class rescaling available to matrices with cyclic support.
    const auto [primitive, part] = is_primitive(X, opts.zero_tol);
    if (!primitive) {
      const Matrix Xw = optimize_cyclic_weights(X, A, part, opts.zero_tol);
      if (frobenius_distance(Xw, A) < frobenius_distance(X, A)) {
        X = Xw;
        if (trace) {
          const int k = trace->empty() ? 0 : trace->back().k + 1;
          trace->push_back({k, frobenius_distance(X, A), false});
        }
      }
    }
    if (verify_stationary(X, A, opts).accepted) return X;
    // The sweeps are row- and column-wise optimal yet can stall short of
    // joint stationarity when a weak support entry keeps nearly-decoupled
    // parts tied together. Clip the smallest entries; once the support
    // splits, the block reduction solves the parts.
    {
      std::vector<std::pair<double, std::pair<int, int>>> cand;
      const double mx = X.maxCoeff();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (i != j && X(i, j) > opts.zero_tol && X(i, j) <= 0.25 * mx)
            cand.push_back({X(i, j), {i, j}});
      std::sort(cand.begin(), cand.end());
      if (cand.size() > 8) cand.resize(8);
      const double dist_now = frobenius_distance(X, A);
      Matrix Xc = X;
      for (const auto& c : cand) {
        Xc(c.second.first, c.second.second) = 0.0;
        const BlockStructure bsc = frobenius_normal_form(Xc, opts.zero_tol);
        if (bsc.irreducible()) continue;
        const Matrix Yc = reduce_blocks(Xc, A, bsc, ctx, depth);
        if (frobenius_distance(Yc, A) <= dist_now) {
          if (trace) {
            const int k = trace->empty() ? 0 : trace->back().k + 1;
            trace->push_back({k, frobenius_distance(Yc, A), true});
          }
          return Yc;
        }
      }
    }
    return X;
  }
}

}  // namespace

DestabResult closest_unstable(const Matrix& A, const SolverOptions& opts) {
  require_square(A, "closest_unstable");
  validate_finite(A);
  if (!is_nonneg(A))
    throw std::invalid_argument("closest_unstable: nonnegative input required");
  const int d = static_cast<int>(A.rows());
  DestabResult res;
  const SpectralTriple tr = perron_triple(A, opts.eig_tol);
  if (tr.rho >= 1.0) {
    res.X = A;
    res.u = tr.u;
    res.v = tr.v;
    res.boundary = true;
    return res;
  }
  const Matrix I = Matrix::Identity(d, d);
  const Matrix M = (I - A.transpose()) * (I - A);
  const SmallestEigPair p = smallest_sym_eigpair(M, /*prefer_nonneg=*/true,
                                                 opts.eig_tol);
  res.degenerate = p.multiple;
  res.r = std::sqrt(std::max(p.mu, 0.0));
  if (res.r <= opts.zero_tol) {
    res.X = A;
    res.r = 0.0;
    res.u = tr.u;
    res.v = tr.v;
    res.boundary = true;
    return res;
  }
  res.v = p.v;
  res.u = (I - A) * res.v / res.r;
  res.X = A + res.r * res.u * res.v.transpose();
  return res;
}

std::optional<DestabResult> positive_candidate(const Matrix& A,
                                               const SolverOptions& opts) {
  require_square(A, "positive_candidate");
  validate_finite(A);
  if (!is_nonneg(A))
    throw std::invalid_argument(
        "positive_candidate: nonnegative input required");
  const int d = static_cast<int>(A.rows());
  if (perron_triple(A, opts.eig_tol).rho <= 1.0) return std::nullopt;
  const Matrix I = Matrix::Identity(d, d);
  const Matrix M = (I - A.transpose()) * (I - A);
  const SmallestEigPair p = smallest_sym_eigpair(M, /*prefer_nonneg=*/true,
                                                 opts.eig_tol);
  const double r = std::sqrt(std::max(p.mu, 0.0));
  if (r <= opts.zero_tol) return std::nullopt;
  const Vector v = p.v;
  const Vector u = (A - I) * v / r;
  const double sign_tol = 1e-9;
  if (u.minCoeff() < -sign_tol || v.minCoeff() < -sign_tol)
    return std::nullopt;
  Matrix X = A - r * u * v.transpose();
  if (X.minCoeff() < -sign_tol * std::max(1.0, A.cwiseAbs().maxCoeff()))
    return std::nullopt;
  DestabResult res;
  res.X = nonneg_projection(X);
  res.r = r;
  res.u = u.cwiseMax(0.0);
  res.v = v.cwiseMax(0.0);
  res.degenerate = p.multiple;
  return res;
}

InnerResult inner_relax(const Matrix& A, const Matrix& X0,
                        const SolverOptions& opts) {
  require_square(A, "inner_relax");
  validate_finite(A);
  validate_finite(X0);
  if (X0.rows() != A.rows() || X0.cols() != A.cols())
    throw std::invalid_argument("inner_relax: dimension mismatch");
  if (!is_nonneg(A) || !is_nonneg(X0))
    throw std::invalid_argument("inner_relax: nonnegative matrices required");
  SolveContext ctx{opts};
  return inner_relax_impl(A, X0, ctx);
}

Matrix optimize_cyclic_weights(const Matrix& X, const Matrix& A,
                               const CyclicPartition& part, double zero_tol) {
  const int r = part.r;
  if (r <= 1) return X;
  std::vector<Matrix> xb;
  try {
    xb = cyclic_block_views(X, part, zero_tol);
  } catch (const std::invalid_argument&) {
    return X;
  }
  std::vector<Matrix> ab;
  for (int m = 0; m < r; ++m) {
    const auto& rows = part.classes[(m + 1) % r];
    const auto& cols = part.classes[m];
    Matrix B(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) B(i, j) = A(rows[i], cols[j]);
    ab.push_back(std::move(B));
  }

  std::vector<double> q(r), c(r);
  for (int m = 0; m < r; ++m) {
    q[m] = xb[m].squaredNorm();
    c[m] = (xb[m].array() * ab[m].array()).sum();
    if (q[m] <= 0.0 || c[m] <= 0.0) return X;
  }

  std::vector<double> s(r);
  double logprod = 0.0;
  for (int m = 0; m < r; ++m) logprod += std::log(c[m] / q[m]);
  if (logprod <= 0.0) {
    for (int m = 0; m < r; ++m) s[m] = c[m] / q[m];
  } else {
    // Scale the unit-product constraint in via the multiplier: each block
    // weight is the larger root of q s^2 - c s + lam/2 = 0, decreasing in
    // lam, and the product crosses one somewhere below the first
    // discriminant zero.
    const auto srow = [&](double lam, int m) {
      const double disc = std::max(c[m] * c[m] - 2.0 * q[m] * lam, 0.0);
      return (c[m] + std::sqrt(disc)) / (2.0 * q[m]);
    };
    const auto logg = [&](double lam) {
      double t = 0.0;
      for (int m = 0; m < r; ++m) t += std::log(srow(lam, m));
      return t;
    };
    double lam_max = std::numeric_limits<double>::infinity();
    for (int m = 0; m < r; ++m)
      lam_max = std::min(lam_max, c[m] * c[m] / (2.0 * q[m]));
    if (logg(lam_max) <= 0.0) {
      double lo = 0.0, hi = lam_max;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (logg(mid) > 0.0 ? lo : hi) = mid;
      }
      const double lam = 0.5 * (lo + hi);
      for (int m = 0; m < r; ++m) s[m] = srow(lam, m);
    } else if (r == 2) {
      // The larger-root branch cannot reach product one; scan the
      // one-dimensional constraint s1 = 1/s0 directly.
      const auto h = [&](double s0) {
        return q[0] * s0 * s0 - 2.0 * c[0] * s0 + q[1] / (s0 * s0) -
               2.0 * c[1] / s0;
      };
      double lo = std::log(1e-6), hi = std::log(1e6);
      const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      double f1 = h(std::exp(x1)), f2 = h(std::exp(x2));
      for (int it = 0; it < 300; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - gr * (hi - lo);
          f1 = h(std::exp(x1));
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + gr * (hi - lo);
          f2 = h(std::exp(x2));
        }
      }
      s[0] = std::exp(0.5 * (lo + hi));
      s[1] = 1.0 / s[0];
    } else {
      return X;
    }
  }

  Matrix Y = X;
  for (int m = 0; m < r; ++m)
    for (int i : part.classes[(m + 1) % r])
      for (int j : part.classes[m]) Y(i, j) *= s[m];
  return frobenius_distance(Y, A) <= frobenius_distance(X, A) ? Y : X;
}

StationarityCertificate verify_stationary(const Matrix& X, const Matrix& A,
                                          const SolverOptions& opts) {
  require_square(X, "verify_stationary");
  validate_finite(X);
  validate_finite(A);
  if (A.rows() != X.rows() || A.cols() != X.cols())
    throw std::invalid_argument("verify_stationary: dimension mismatch");
  const int d = static_cast<int>(X.rows());

  StationarityCertificate cert;
  const double scale = std::max(1.0, A.norm());
  const double tol = opts.cert_tol * scale;
  double worst = 0.0;
  std::string worst_desc;
  const auto note = [&](double res, const char* desc) {
    if (res > worst) {
      worst = res;
      worst_desc = desc;
    }
  };

  note(std::max(0.0, -X.minCoeff()), "negative entry");

  const BlockStructure bs = frobenius_normal_form(X, opts.zero_tol);
  const Matrix Xp = permute_symmetric(X, bs.perm);
  const Matrix Ap = permute_symmetric(A, bs.perm);
  Matrix Lp = Matrix::Zero(d, d);

  double best_r = -1.0;
  Vector best_u, best_v;
  int best_off = 0;

  int off = 0;
  for (int b = 0; b < bs.blocks(); ++b) {
    const int n = bs.block_sizes[b];
    if (off + n < d) {
      const double dev = (Xp.block(off, off + n, n, d - off - n) -
                          Ap.block(off, off + n, n, d - off - n))
                             .cwiseAbs()
                             .maxCoeff();
      note(dev, "entries above the diagonal blocks differ from the target");
    }
    if (off > 0)
      note(Xp.block(off, 0, n, off).cwiseAbs().maxCoeff(),
           "support below the diagonal blocks");

    const Matrix Xb = Xp.block(off, off, n, n);
    const Matrix Ab = Ap.block(off, off, n, n);
    if ((Xb - Ab).norm() <= tol) {
      const double rho =
          n == 1 ? Xb(0, 0) : perron_triple(Xb, opts.eig_tol).rho;
      note(std::max(0.0, rho - 1.0),
           "copied block exceeds unit spectral radius");
      cert.blockwise.push_back(BlockStatus::frozen_copy);
      off += n;
      continue;
    }

    double rho;
    Vector u, v;
    if (n == 1) {
      rho = Xb(0, 0);
      u = v = Vector::Ones(1);
    } else {
      const SpectralTriple t = perron_triple(Xb, opts.eig_tol);
      rho = t.rho;
      u = t.u;
      v = t.v;
    }
    note(std::abs(rho - 1.0),
         "binding block spectral radius away from one");

    const Matrix W = u * v.transpose();
    const Matrix D = Ab - Xb;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (Xb(i, j) > opts.zero_tol) {
          num += D(i, j) * W(i, j);
          den += W(i, j) * W(i, j);
        }
    const double rb = den > 0.0 ? num / den : 0.0;
    note(std::max(0.0, -rb), "negative multiplier scale");
    const Matrix Lb = rb * W - D;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (Xb(i, j) > opts.zero_tol)
          note(std::abs(Lb(i, j)), "gradient not rank-one over the support");
        else
          note(std::max(0.0, -Lb(i, j)),
               "negative multiplier at a zero entry");
      }
    Lp.block(off, off, n, n) = Lb;

    BlockStatus status = BlockStatus::stationary_primitive;
    if (n > 1) {
      const auto [primitive, part] = is_primitive(Xb, opts.zero_tol);
      if (!primitive) {
        status = BlockStatus::stationary_imprimitive;
        // Rescaling the cycle classes with unit weight product keeps the
        // spectral radius fixed; stationarity additionally needs the
        // per-class derivative gaps to agree.
        const std::vector<Matrix> xv = cyclic_block_views(Xb, part,
                                                          opts.zero_tol);
        std::vector<double> gap(part.r);
        double mean = 0.0;
        for (int m = 0; m < part.r; ++m) {
          const auto& rows = part.classes[(m + 1) % part.r];
          const auto& cols = part.classes[m];
          double cm = 0.0;
          for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j)
              cm += Xb(rows[i], cols[j]) * Ab(rows[i], cols[j]);
          gap[m] = xv[m].squaredNorm() - cm;
          mean += gap[m];
        }
        mean /= part.r;
        const double unit = std::max(1.0, Xb.norm());
        for (int m = 0; m < part.r; ++m)
          note(std::abs(gap[m] - mean) / unit,
               "cycle-class rescaling is not stationary");
      }
    }
    cert.blockwise.push_back(status);
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

StabilizeResult stabilize(const Matrix& A_input, const SolverOptions& opts) {
  require_square(A_input, "stabilize");
  validate_finite(A_input);
  StabilizeResult res;
  const Matrix A = nonneg_projection(A_input);
  const int d = static_cast<int>(A.rows());
  SolveContext ctx{opts};

  if (perron_triple(A, opts.eig_tol).rho <= 1.0) {
    res.X = A;
    res.distance = frobenius_distance(A, A_input);
    res.trace.push_back({0, 0.0, false});
    res.certificate = verify_stationary(res.X, A, opts);
    res.classification = Classification::positive_global;
    return res;
  }

  Matrix init;
  const Matrix* initp = nullptr;
  if (opts.init_strategy == SolverOptions::Init::custom) {
    if (opts.initial.rows() != d || opts.initial.cols() != d)
      throw std::invalid_argument("stabilize: custom initial iterate has wrong size");
    validate_finite(opts.initial);
    init = nonneg_projection(opts.initial);
    initp = &init;
  }
  Matrix X = solve_core(A, initp, ctx, &res.trace, 0);

  // Local-minimality probe: sample feasible points near the terminal iterate;
  // a strictly better sample restarts the relaxation from the sample.
  std::mt19937_64 rng(opts.probe_seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int restarts = 0;
  while (true) {
    const double dist_now = frobenius_distance(X, A);
    const double dd = dist_now * dist_now;
    Matrix best;
    double best_dd = dd;
    bool found = false;
    for (int p = 0; p < opts.probe_count; ++p) {
      Matrix G(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = unif(rng);
      Matrix Y = nonneg_projection(X + opts.probe_step * G);
      const double rho = perron_triple(Y, opts.eig_tol).rho;
      if (rho > 1.0) Y /= rho;
      const double ydist = frobenius_distance(Y, A);
      if (ydist * ydist < best_dd - 1e-12 * std::max(1.0, dd)) {
        best_dd = ydist * ydist;
        best = Y;
        found = true;
      }
    }
    if (!found || restarts >= opts.max_restarts) break;
    const double rho_b = perron_triple(best, opts.eig_tol).rho;
    if (rho_b <= opts.zero_tol) break;
    const Matrix init2 = best / rho_b;
    std::vector<TraceEntry> trace2;
    const Matrix X2 = solve_core(A, &init2, ctx, &trace2, 0);
    ++restarts;
    if (frobenius_distance(X2, A) <
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
  res.iterations = ctx.sweeps;
  res.certificate = verify_stationary(X, A, opts);
  res.classification = res.certificate.accepted
                           ? Classification::stationary_local
                           : Classification::stationary_unverified;
  if (X.minCoeff() > opts.zero_tol) {
    const auto cand = positive_candidate(A, opts);
    if (cand &&
        frobenius_distance(cand->X, X) <= 1e-6 * std::max(1.0, A.norm()))
      res.classification = Classification::positive_global;
  }
  return res;
}

}  // namespace nnstab
