#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "nnstab/hurwitz.hpp"
#include "nnstab/matrix.hpp"
#include "nnstab/spectral.hpp"
#include "oracles.hpp"
#include "reference_data.hpp"

using nnstab::Matrix;
using nnstab::Vector;
using refdata::mat;

TEST_CASE("spectral abscissa of general matrices") {
  // complex pair +-i sqrt(5): real parts are zero
  CHECK(std::abs(nnstab::spectral_abscissa(mat({{0, -5}, {1, 0}}))) <= 1e-12);
  CHECK(nnstab::spectral_abscissa(mat({{0.3, -1}, {1, 0.3}})) ==
        doctest::Approx(0.3));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int rep = 0; rep < 8; ++rep) {
    Matrix A(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) A(i, j) = unif(rng);
    CHECK(std::abs(nnstab::spectral_abscissa(A) - oracles::alpha(A)) <= 1e-7);
  }
}

TEST_CASE("recorded abscissa values of the Metzler examples") {
  CHECK(std::abs(nnstab::spectral_abscissa(refdata::metzler5_A) -
                 refdata::metzler5_alpha) <= 5e-4);
  CHECK(std::abs(nnstab::spectral_abscissa(refdata::metzler6_A) -
                 refdata::metzler6_alpha) <= 5e-4);
}

TEST_CASE("closest unstable matrix in the Hurwitz sense") {
  const Matrix& A = refdata::metzler2_A;
  const auto res = nnstab::closest_hurwitz_unstable(A);
  CHECK(!res.boundary);
  const double smin = nnstab::two_smallest_singular_values(A).first;
  CHECK(std::abs(res.r - smin) <= 1e-10);
  CHECK(nnstab::frobenius_distance(res.X, A) ==
        doctest::Approx(res.r).epsilon(1e-10));
  // the update makes v a null vector, so X is exactly singular
  CHECK((res.X * res.v).norm() <= 1e-12);
  CHECK(nnstab::two_smallest_singular_values(res.X).first <= 1e-8);
  const double ax = nnstab::spectral_abscissa(res.X);
  CHECK(ax >= -1e-8);
  CHECK(ax <= 1e-6);
  CHECK(std::abs(res.u.norm() - 1.0) <= 1e-10);
  CHECK(std::abs(res.v.norm() - 1.0) <= 1e-10);
}

TEST_CASE("Hurwitz destabilization is a no-op past the boundary") {
  const auto res = nnstab::closest_hurwitz_unstable(refdata::metzler5_A);
  CHECK(res.boundary);
  CHECK(res.r == 0.0);
  CHECK((res.X - refdata::metzler5_A).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stabilizing the 5x5 Metzler example") {
  const auto res = nnstab::hurwitz_stabilize(refdata::metzler5_A);
  CHECK(res.alpha <= 1e-6);
  CHECK(nnstab::spectral_abscissa(res.X) <= 1e-6);
  const double d2 = res.distance * res.distance;
  CHECK(d2 <= refdata::metzler5_gate_d2);
  // strictly better than the diagonal-shift heuristic
  CHECK(d2 < refdata::metzler5_heuristic_d2);
  CHECK(res.certificate.accepted);
  CHECK(res.classification == nnstab::Classification::stationary_local);
  CHECK(nnstab::is_metzler(res.X));
}

TEST_CASE("stabilizing the 6x6 Metzler example triggers a reduction") {
  const auto res = nnstab::hurwitz_stabilize(refdata::metzler6_A);
  CHECK(res.alpha <= 1e-6);
  const double d2 = res.distance * res.distance;
  CHECK(d2 <= refdata::metzler6_gate_d2);
  CHECK(res.certificate.accepted);
  bool saw_reduce = false;
  for (const auto& t : res.trace) saw_reduce |= t.reduce;
  CHECK(saw_reduce);
  CHECK(nnstab::is_metzler(res.X));
}

TEST_CASE("Hurwitz stabilization is trivial below the boundary") {
  const auto res = nnstab::hurwitz_stabilize(refdata::metzler2_A);
  CHECK((res.X - refdata::metzler2_A).cwiseAbs().maxCoeff() == 0.0);
  CHECK(res.distance == 0.0);
  CHECK(res.classification == nnstab::Classification::positive_global);
}

TEST_CASE("non-Metzler inputs are projected and billed for the clamp") {
  const Matrix M_in = mat({{0.2, -0.3}, {0.4, 0.1}});
  const auto res = nnstab::hurwitz_stabilize(M_in);
  CHECK(nnstab::is_metzler(res.X));
  CHECK(res.alpha <= 1e-6);
  CHECK(res.distance >= 0.3 - 1e-12);
  CHECK(res.distance ==
        doctest::Approx(nnstab::frobenius_distance(res.X, M_in)));
}

TEST_CASE("Hurwitz stationarity verification") {
  // the solver certifies against the Metzler projection of the input
  const Matrix M = nnstab::metzler_projection(refdata::metzler5_A);
  const auto res = nnstab::hurwitz_stabilize(refdata::metzler5_A);
  const auto cert = nnstab::verify_hurwitz_stationary(res.X, M);
  CHECK(cert.accepted);

  Matrix Xbad = res.X;
  Xbad(0, 1) += 0.05;
  CHECK(!nnstab::verify_hurwitz_stationary(Xbad, M).accepted);

  // a stable target verifies against itself as a frozen copy
  const auto frozen = nnstab::verify_hurwitz_stationary(refdata::metzler2_A,
                                                        refdata::metzler2_A);
  CHECK(frozen.accepted);
  CHECK(frozen.blockwise.size() == 1);
  CHECK(frozen.blockwise[0] == nnstab::BlockStatus::frozen_copy);
}

TEST_CASE("Hurwitz stabilization certifies random Metzler targets") {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  for (int rep = 0; rep < 6; ++rep) {
    const int d = 3 + rep % 3;
    Matrix M(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M(i, j) = unif(rng);
    M.diagonal().array() -= 0.4;  // keep the abscissa positive but modest
    REQUIRE(nnstab::spectral_abscissa(M) > 0.0);
    const auto res = nnstab::hurwitz_stabilize(M);
    CHECK(res.alpha <= 1e-6);
    CHECK(res.certificate.accepted);
    CHECK(nnstab::is_metzler(res.X));
    CHECK(res.distance > 0.0);
  }
}
