#include "nnstab/partitions.hpp"

#include <algorithm>
#include <stdexcept>

#include "nnstab/spectral.hpp"

namespace nnstab {

Matrix lower_dominant_example(int d) {
  if (d < 2)
    throw std::invalid_argument("lower_dominant_example: d >= 2 required");
  Matrix A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = i >= j ? 2.0 : 1.0;
  return A;
}

bool is_lower_dominant(const Matrix& A) {
  if (A.rows() != A.cols() || A.rows() < 2) return false;
  if (!(A.minCoeff() > 0.0)) return false;
  const int d = static_cast<int>(A.rows());
  for (int i = 0; i < d; ++i)
    if (!(A(i, i) > 1.0)) return false;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j)
      if (!(A(i, j) > A(j, i))) return false;
  return true;
}

namespace {

std::vector<int> mask_bits(int mask) {
  std::vector<int> idx;
  for (int b = 0; mask >> b; ++b)
    if (mask & (1 << b)) idx.push_back(b);
  return idx;
}

void enumerate_rec(int remaining, OrderedPartition& cur,
                   std::vector<OrderedPartition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int s = remaining; s; s = (s - 1) & remaining) {
    cur.blocks.push_back(mask_bits(s));
    enumerate_rec(remaining & ~s, cur, out);
    cur.blocks.pop_back();
  }
}

}  // namespace

std::vector<OrderedPartition> all_ordered_partitions(int d) {
  if (d < 1 || d > 8)
    throw std::invalid_argument("all_ordered_partitions: 1 <= d <= 8 required");
  std::vector<OrderedPartition> out;
  OrderedPartition cur;
  enumerate_rec((1 << d) - 1, cur, out);
  return out;
}

Matrix partition_local_minimum(const Matrix& A, const OrderedPartition& part,
                               const SolverOptions& opts) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw std::invalid_argument("partition_local_minimum: square input");
  validate_finite(A);
  const int d = static_cast<int>(A.rows());
  std::vector<char> seen(d, 0);
  int total = 0;
  for (const auto& blk : part.blocks) {
    if (blk.empty())
      throw std::invalid_argument("partition_local_minimum: empty block");
    for (int i : blk) {
      if (i < 0 || i >= d || seen[i])
        throw std::invalid_argument("partition_local_minimum: bad partition");
      seen[i] = 1;
      ++total;
    }
  }
  if (total != d)
    throw std::invalid_argument("partition_local_minimum: partition must cover all indices");

  Matrix X = Matrix::Zero(d, d);
  for (size_t k = 0; k < part.blocks.size(); ++k) {
    const auto& blk = part.blocks[k];
    const int n = static_cast<int>(blk.size());
    Matrix Ab(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) Ab(a, b) = A(blk[a], blk[b]);
    const double rho = perron_triple(Ab, opts.eig_tol).rho;
    if (rho <= 1.0)
      throw std::invalid_argument(
          "partition_local_minimum: diagonal block with spectral radius <= 1");
    const Matrix Xb = stabilize(Ab, opts).X;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) X(blk[a], blk[b]) = Xb(a, b);
    for (size_t l = k + 1; l < part.blocks.size(); ++l)
      for (int i : blk)
        for (int j : part.blocks[l]) X(i, j) = A(i, j);
  }
  return X;
}

std::vector<LocalMinimum> enumerate_local_minima(const Matrix& A,
                                                 const SolverOptions& opts) {
  if (!is_lower_dominant(A))
    throw std::invalid_argument(
        "enumerate_local_minima: input must be strictly positive, lower "
        "dominant, with diagonal entries > 1");
  const int d = static_cast<int>(A.rows());
  std::vector<LocalMinimum> all;
  for (const auto& part : all_ordered_partitions(d)) {
    LocalMinimum lm;
    lm.partition = part;
    lm.X = partition_local_minimum(A, part, opts);
    lm.distance = frobenius_distance(lm.X, A);
    lm.stationary = verify_stationary(lm.X, A, opts).accepted;
    all.push_back(std::move(lm));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const LocalMinimum& a, const LocalMinimum& b) {
                     return a.distance < b.distance;
                   });
  const double thr = opts.cert_tol * std::max(1.0, A.norm());
  std::vector<LocalMinimum> kept;
  for (auto& lm : all) {
    if (!lm.stationary) continue;
    bool duplicate = false;
    for (const auto& k : kept)
      if (frobenius_distance(k.X, lm.X) <= thr) {
        duplicate = true;
        break;
      }
    if (!duplicate) kept.push_back(std::move(lm));
  }
  return kept;
}

}  // namespace nnstab
