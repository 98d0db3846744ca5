#include "nnstab/structure.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace nnstab {

namespace {

std::vector<std::vector<int>> adjacency(const Matrix& X, double zero_tol) {
  const int d = static_cast<int>(X.rows());
  std::vector<std::vector<int>> adj(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (X(i, j) > zero_tol) adj[i].push_back(j);
  return adj;
}

// Iterative Tarjan. Emits components sinks-first; reversing gives the
// sources-first order that makes the permuted matrix block upper-triangular.
std::vector<std::vector<int>> tarjan_sccs(
    const std::vector<std::vector<int>>& adj) {
  const int d = static_cast<int>(adj.size());
  std::vector<int> index(d, -1), low(d, 0);
  std::vector<char> on_stack(d, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;

  struct Frame {
    int v;
    size_t edge;
  };
  for (int root = 0; root < d; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < adj[f.v].size()) {
        const int w = adj[f.v][f.edge++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        const int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<int> comp;
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
    }
  }
  std::reverse(comps.begin(), comps.end());
  return comps;
}

}  // namespace

BlockStructure frobenius_normal_form(const Matrix& X, double zero_tol) {
  if (X.rows() != X.cols())
    throw std::invalid_argument("frobenius_normal_form: square input");
  const auto comps = tarjan_sccs(adjacency(X, zero_tol));
  BlockStructure bs;
  for (const auto& c : comps) {
    bs.block_sizes.push_back(static_cast<int>(c.size()));
    bs.perm.insert(bs.perm.end(), c.begin(), c.end());
  }
  return bs;
}

std::pair<bool, CyclicPartition> is_primitive(const Matrix& X,
                                              double zero_tol) {
  const int d = static_cast<int>(X.rows());
  if (frobenius_normal_form(X, zero_tol).blocks() != 1)
    throw std::invalid_argument("is_primitive: input not irreducible");

  // Levels over the mapping digraph (edge j -> i whenever X(i,j) > 0, so
  // that X maps class of j into class of i).
  std::vector<std::vector<int>> out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (X(i, j) > zero_tol) out[j].push_back(i);

  std::vector<int> level(d, -1);
  std::queue<int> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : out[v])
      if (level[w] == -1) {
        level[w] = level[v] + 1;
        q.push(w);
      }
  }
  int r = 0;
  for (int j = 0; j < d; ++j)
    for (int i : out[j]) r = std::gcd(r, std::abs(level[j] + 1 - level[i]));
  if (r == 0) r = 1;

  CyclicPartition part;
  part.r = r;
  part.classes.assign(r, {});
  for (int v = 0; v < d; ++v) part.classes[((level[v] % r) + r) % r].push_back(v);
  return {r == 1, part};
}

std::vector<Matrix> cyclic_block_views(const Matrix& X,
                                       const CyclicPartition& part,
                                       double zero_tol) {
  const int r = part.r;
  const int d = static_cast<int>(X.rows());
  std::vector<int> klass(d, -1);
  for (int k = 0; k < r; ++k)
    for (int v : part.classes[k]) klass[v] = k;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (X(i, j) > zero_tol && klass[i] != (klass[j] + 1) % r)
        throw std::invalid_argument(
            "cyclic_block_views: support outside cyclic pattern");
  std::vector<Matrix> views;
  for (int k = 0; k < r; ++k) {
    const auto& rows = part.classes[(k + 1) % r];
    const auto& cols = part.classes[k];
    Matrix B(rows.size(), cols.size());
    for (size_t a = 0; a < rows.size(); ++a)
      for (size_t b = 0; b < cols.size(); ++b) B(a, b) = X(rows[a], cols[b]);
    views.push_back(std::move(B));
  }
  return views;
}

}  // namespace nnstab
