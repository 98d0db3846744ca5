#pragma once

#include "nnstab/matrix.hpp"

namespace nnstab {

// Solution of min ||x - a||^2 over x >= 0 with <x, v> <= cap (v > 0
// entrywise).  x = max(a - lambda * v, 0) for the reported multiplier.
struct RowQPSolution {
  Vector x;
  double lambda = 0.0;
  std::vector<int> active_zero_set;  // indices clamped to zero
};

// Exact solver via a single ascending sweep over the breakpoints
// lambda_j = a_j / v_j.  Throws if some v_j <= 0 or cap < 0.
RowQPSolution project_row(const Vector& a, const Vector& v, double cap,
                          double qp_tol = kQpTol);

// Same problem but coordinate `free_index` is unconstrained in sign (it is
// never clamped).  Used for rows holding a diagonal entry of a Metzler
// matrix; cap may be any real (typically 0).
RowQPSolution project_row_free_diag(const Vector& a, const Vector& v,
                                    double cap, int free_index,
                                    double qp_tol = kQpTol);

}  // namespace nnstab
