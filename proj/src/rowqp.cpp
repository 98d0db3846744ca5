#include "nnstab/rowqp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nnstab {

namespace {

void check_direction(const Vector& v) {
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (!(v[j] > 0.0))
      throw std::invalid_argument("row projection: v must be positive");
}

// Ascending breakpoint walk for the multiplier once the constraint is known
// to be active.  free_index < 0 means every coordinate is clamped at zero.
double active_multiplier(const Vector& a, const Vector& v, double cap,
                         int free_index, double qp_tol) {
  struct Breakpoint {
    double lam;
    int j;
  };
  std::vector<Breakpoint> bps;
  double s_av = 0.0, s_vv = 0.0;
  if (free_index >= 0) {
    s_av += a[free_index] * v[free_index];
    s_vv += v[free_index] * v[free_index];
  }
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (static_cast<int>(j) == free_index) continue;
    if (a[j] > 0.0) {
      bps.push_back({a[j] / v[j], static_cast<int>(j)});
      s_av += a[j] * v[j];
      s_vv += v[j] * v[j];
    }
  }
  std::sort(bps.begin(), bps.end(),
            [](const Breakpoint& x, const Breakpoint& y) { return x.lam < y.lam; });

  double lo = 0.0;
  for (const auto& bp : bps) {
    const double cand = (s_av - cap) / s_vv;
    if (cand <= bp.lam + qp_tol * std::max(1.0, std::abs(bp.lam)))
      return std::max(cand, lo);
    s_av -= a[bp.j] * v[bp.j];
    s_vv -= v[bp.j] * v[bp.j];
    lo = bp.lam;
  }
  if (free_index >= 0) return std::max((s_av - cap) / s_vv, lo);
  // All clamped coordinates released: the inner product has decayed to zero,
  // which only matches cap == 0; the crossing sits at the last breakpoint.
  return lo;
}

RowQPSolution finish(const Vector& a, const Vector& v, double lambda,
                     int free_index) {
  RowQPSolution sol;
  sol.lambda = lambda;
  sol.x = (a - lambda * v).cwiseMax(0.0);
  if (free_index >= 0) sol.x[free_index] = a[free_index] - lambda * v[free_index];
  for (Eigen::Index j = 0; j < a.size(); ++j)
    if (static_cast<int>(j) != free_index && sol.x[j] == 0.0)
      sol.active_zero_set.push_back(static_cast<int>(j));
  return sol;
}

}  // namespace

RowQPSolution project_row(const Vector& a, const Vector& v, double cap,
                          double qp_tol) {
  if (a.size() != v.size())
    throw std::invalid_argument("project_row: size mismatch");
  check_direction(v);
  if (cap < 0.0)
    throw std::invalid_argument("project_row: cap must be nonnegative");
  const double slack = a.cwiseMax(0.0).dot(v);
  if (slack <= cap + qp_tol * std::max(1.0, cap)) return finish(a, v, 0.0, -1);
  return finish(a, v, active_multiplier(a, v, cap, -1, qp_tol), -1);
}

RowQPSolution project_row_free_diag(const Vector& a, const Vector& v,
                                    double cap, int free_index,
                                    double qp_tol) {
  if (a.size() != v.size())
    throw std::invalid_argument("project_row_free_diag: size mismatch");
  if (free_index < 0 || free_index >= static_cast<int>(a.size()))
    throw std::invalid_argument("project_row_free_diag: bad free index");
  check_direction(v);
  Vector x0 = a.cwiseMax(0.0);
  x0[free_index] = a[free_index];
  if (x0.dot(v) <= cap + qp_tol * std::max(1.0, std::abs(cap)))
    return finish(a, v, 0.0, free_index);
  return finish(a, v, active_multiplier(a, v, cap, free_index, qp_tol),
                free_index);
}

}  // namespace nnstab
