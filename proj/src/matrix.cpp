#include "nnstab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nnstab {

void validate_finite(const Matrix& X) {
  if (!X.allFinite())
    throw std::invalid_argument("matrix has non-finite entries");
}

bool is_nonneg(const Matrix& X, double tol) { return X.minCoeff() >= -tol; }

bool is_metzler(const Matrix& X, double tol) {
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j)
      if (i != j && X(i, j) < -tol) return false;
  return true;
}

double frobenius_distance(const Matrix& X, const Matrix& A) {
  if (X.rows() != A.rows() || X.cols() != A.cols())
    throw std::invalid_argument("frobenius_distance: dimension mismatch");
  return (X - A).norm();
}

Matrix nonneg_projection(const Matrix& A) { return A.cwiseMax(0.0); }

Matrix metzler_projection(const Matrix& A) {
  Matrix R = A.cwiseMax(0.0);
  R.diagonal() = A.diagonal();
  return R;
}

bool Support::contains(int i, int j) const {
  return std::find(positions.begin(), positions.end(), std::make_pair(i, j)) !=
         positions.end();
}

Support support(const Matrix& X, double zero_tol) {
  Support s;
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j)
      if (X(i, j) > zero_tol) s.positions.emplace_back(i, j);
  return s;
}

Matrix permute_symmetric(const Matrix& X, const std::vector<int>& perm) {
  const int d = static_cast<int>(X.rows());
  if (static_cast<int>(perm.size()) != d)
    throw std::invalid_argument("permute_symmetric: wrong permutation size");
  std::vector<char> seen(d, 0);
  for (int p : perm) {
    if (p < 0 || p >= d || seen[p])
      throw std::invalid_argument("permute_symmetric: not a permutation");
    seen[p] = 1;
  }
  Matrix R(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) R(i, j) = X(perm[i], perm[j]);
  return R;
}

std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

namespace {

std::string format_entry(double x) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << x;
  return os.str();
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows,
                      const std::string& what) {
  if (rows.empty()) throw std::runtime_error(what + ": empty matrix");
  const size_t w = rows.front().size();
  if (w == 0) throw std::runtime_error(what + ": empty row");
  for (const auto& r : rows)
    if (r.size() != w) throw std::runtime_error(what + ": ragged rows");
  Matrix X(rows.size(), w);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < w; ++j) X(i, j) = rows[i][j];
  validate_finite(X);
  return X;
}

}  // namespace

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() ||
        line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      size_t pos = 0;
      double val;
      try {
        val = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw std::runtime_error(path + ": bad numeric cell '" + cell + "'");
      }
      while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
      if (pos != cell.size())
        throw std::runtime_error(path + ": bad numeric cell '" + cell + "'");
      row.push_back(val);
    }
    rows.push_back(std::move(row));
  }
  return rows_to_matrix(rows, path);
}

Matrix read_matrix_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("rows") || !j["rows"].is_array())
    throw std::runtime_error(path + ": missing 'rows' array");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j["rows"]) rows.push_back(r.get<std::vector<double>>());
  Matrix X = rows_to_matrix(rows, path);
  if (j.contains("dim") && j["dim"].get<int>() != X.rows())
    throw std::runtime_error(path + ": 'dim' disagrees with row count");
  if (X.rows() != X.cols())
    throw std::runtime_error(path + ": matrix not square");
  return X;
}

Matrix read_matrix_auto(const std::string& path) {
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".json") return read_matrix_json(path);
  return read_matrix_csv(path);
}

void write_matrix_csv(std::ostream& out, const Matrix& X) {
  for (int i = 0; i < X.rows(); ++i) {
    for (int j = 0; j < X.cols(); ++j) {
      if (j) out << ',';
      out << format_entry(X(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::string& path, const Matrix& X) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_matrix_csv(out, X);
}

void write_matrix_json(std::ostream& out, const Matrix& X) {
  nlohmann::json j;
  j["dim"] = X.rows();
  auto rows = nlohmann::json::array();
  for (int i = 0; i < X.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int j2 = 0; j2 < X.cols(); ++j2) row.push_back(X(i, j2));
    rows.push_back(row);
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

void write_matrix_json(const std::string& path, const Matrix& X) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_matrix_json(out, X);
}

}  // namespace nnstab
