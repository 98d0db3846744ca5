#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nnstab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Shared default tolerances. Individual solvers take overrides through their
// options structs; these are the documented library-wide defaults.
inline constexpr double kZeroTol = 1e-10;
inline constexpr double kEigTol = 1e-10;
inline constexpr double kQpTol = 1e-12;
inline constexpr double kCertTol = 1e-6;

// Throws std::invalid_argument if any entry is NaN or infinite.
void validate_finite(const Matrix& X);

bool is_nonneg(const Matrix& X, double tol = 0.0);
bool is_metzler(const Matrix& X, double tol = 0.0);

// sqrt(sum of squared entry differences). Throws on dimension mismatch.
double frobenius_distance(const Matrix& X, const Matrix& A);

// Entrywise max with zero.
Matrix nonneg_projection(const Matrix& A);

// Diagonal preserved, off-diagonal clamped at zero.
Matrix metzler_projection(const Matrix& A);

struct Support {
  std::vector<std::pair<int, int>> positions;  // (row, col), row-major order
  bool contains(int i, int j) const;
};

Support support(const Matrix& X, double zero_tol = kZeroTol);

// Returns P*X*P^T where P is the permutation matrix with P(i, perm[i]) = 1,
// i.e. result(i, j) = X(perm[i], perm[j]). perm maps new index -> old index.
Matrix permute_symmetric(const Matrix& X, const std::vector<int>& perm);

std::vector<int> inverse_permutation(const std::vector<int>& perm);

// --- file I/O -------------------------------------------------------------
// CSV: one row per line, comma-separated decimals, no header; readers reject
// ragged rows. JSON: {"dim": d, "rows": [[...], ...]}. Writers emit 17
// significant digits so that write -> read round-trips exactly.

Matrix read_matrix_csv(const std::string& path);
Matrix read_matrix_json(const std::string& path);
Matrix read_matrix_auto(const std::string& path);  // dispatch on extension
void write_matrix_csv(std::ostream& out, const Matrix& X);
void write_matrix_csv(const std::string& path, const Matrix& X);
void write_matrix_json(std::ostream& out, const Matrix& X);
void write_matrix_json(const std::string& path, const Matrix& X);

}  // namespace nnstab
