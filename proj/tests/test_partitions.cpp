#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "nnstab/matrix.hpp"
#include "nnstab/partitions.hpp"
#include "nnstab/spectral.hpp"
#include "reference_data.hpp"

using nnstab::Matrix;
using nnstab::OrderedPartition;
using refdata::mat;

TEST_CASE("ordered partition counts follow the Fubini numbers") {
  CHECK(nnstab::all_ordered_partitions(1).size() == 1);
  CHECK(nnstab::all_ordered_partitions(2).size() == 3);
  CHECK(nnstab::all_ordered_partitions(3).size() == 13);
  CHECK(nnstab::all_ordered_partitions(4).size() == 75);
  CHECK_THROWS_AS(nnstab::all_ordered_partitions(0), std::invalid_argument);
  CHECK_THROWS_AS(nnstab::all_ordered_partitions(9), std::invalid_argument);
}

TEST_CASE("every ordered partition covers the index set exactly once") {
  for (const auto& part : nnstab::all_ordered_partitions(3)) {
    std::vector<int> seen(3, 0);
    for (const auto& blk : part.blocks) {
      CHECK(!blk.empty());
      for (int i : blk) {
        REQUIRE(i >= 0);
        REQUIRE(i < 3);
        ++seen[i];
      }
    }
    for (int c : seen) CHECK(c == 1);
  }
}

TEST_CASE("lower dominant example and its predicate") {
  const Matrix A3 = nnstab::lower_dominant_example(3);
  CHECK((A3 - mat({{2, 1, 1}, {2, 2, 1}, {2, 2, 2}})).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK_THROWS_AS(nnstab::lower_dominant_example(1), std::invalid_argument);
  for (int d = 2; d <= 4; ++d)
    CHECK(nnstab::is_lower_dominant(nnstab::lower_dominant_example(d)));

  Matrix bad = nnstab::lower_dominant_example(2);
  bad(0, 1) = 3.0;  // upper entry now dominates
  CHECK(!nnstab::is_lower_dominant(bad));
  Matrix weak_diag = nnstab::lower_dominant_example(2);
  weak_diag(0, 0) = 0.9;
  CHECK(!nnstab::is_lower_dominant(weak_diag));
  CHECK(!nnstab::is_lower_dominant(Matrix::Ones(2, 3)));
  CHECK(!nnstab::is_lower_dominant(2.0 * Matrix::Ones(2, 2)));  // symmetric
}

TEST_CASE("partition candidates for the 2x2 lower dominant example") {
  const Matrix A = nnstab::lower_dominant_example(2);

  OrderedPartition forward{{{0}, {1}}};
  const Matrix Xf = nnstab::partition_local_minimum(A, forward);
  CHECK((Xf - mat({{1, 1}, {0, 1}})).cwiseAbs().maxCoeff() == 0.0);

  OrderedPartition backward{{{1}, {0}}};
  const Matrix Xb = nnstab::partition_local_minimum(A, backward);
  CHECK((Xb - mat({{1, 0}, {2, 1}})).cwiseAbs().maxCoeff() == 0.0);

  OrderedPartition full{{{0, 1}}};
  const Matrix Xc = nnstab::partition_local_minimum(A, full);
  CHECK(nnstab::perron_triple(Xc).rho <= 1.0 + 1e-8);
  CHECK(nnstab::verify_stationary(Xc, A).accepted);
}

TEST_CASE("partition candidates reject blocks that are already stable") {
  const Matrix A = mat({{0.5, 1}, {1, 0.5}});
  OrderedPartition singletons{{{0}, {1}}};
  CHECK_THROWS_AS(nnstab::partition_local_minimum(A, singletons),
                  std::invalid_argument);
}

TEST_CASE("partition candidates validate the partition itself") {
  const Matrix A = nnstab::lower_dominant_example(2);
  CHECK_THROWS_AS(
      nnstab::partition_local_minimum(A, OrderedPartition{{{0}, {0, 1}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(nnstab::partition_local_minimum(A, OrderedPartition{{{0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      nnstab::partition_local_minimum(A, OrderedPartition{{{0}, {2}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      nnstab::partition_local_minimum(A, OrderedPartition{{{}, {0, 1}}}),
      std::invalid_argument);
}

TEST_CASE("enumerating local minima of the 2x2 lower dominant example") {
  const Matrix A = nnstab::lower_dominant_example(2);
  const auto minima = nnstab::enumerate_local_minima(A);
  REQUIRE(minima.size() >= 2);
  for (std::size_t i = 1; i < minima.size(); ++i)
    CHECK(minima[i - 1].distance <= minima[i].distance + 1e-15);
  for (std::size_t i = 0; i < minima.size(); ++i) {
    CHECK(minima[i].stationary);
    CHECK(nnstab::perron_triple(minima[i].X).rho <= 1.0 + 1e-8);
    for (std::size_t j = i + 1; j < minima.size(); ++j)
      CHECK(nnstab::frobenius_distance(minima[i].X, minima[j].X) > 1e-6);
  }
  // the two triangular candidates are both present; the cheaper one leads
  CHECK(minima.front().distance == doctest::Approx(std::sqrt(3.0)));
  CHECK((minima.front().X - mat({{1, 0}, {2, 1}})).cwiseAbs().maxCoeff() <=
        1e-9);
  bool has_upper = false;
  for (const auto& lm : minima)
    has_upper |= (lm.X - mat({{1, 1}, {0, 1}})).cwiseAbs().maxCoeff() <= 1e-9;
  CHECK(has_upper);
}

TEST_CASE("larger lower dominant examples yield many distinct minima") {
  const auto m3 = nnstab::enumerate_local_minima(nnstab::lower_dominant_example(3));
  CHECK(m3.size() >= 4);
  const auto m4 = nnstab::enumerate_local_minima(nnstab::lower_dominant_example(4));
  CHECK(m4.size() >= 8);
}

TEST_CASE("enumeration requires the lower dominant hypotheses") {
  CHECK_THROWS_AS(nnstab::enumerate_local_minima(Matrix::Identity(3, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(nnstab::enumerate_local_minima(2.0 * Matrix::Ones(2, 2)),
                  std::invalid_argument);
}
