#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cvcap/capacity.hpp"
#include "cvcap/gaussian.hpp"
#include "cvcap/teleport.hpp"
#include "test_helpers.hpp"

using namespace cvcap;
using Catch::Approx;

TEST_CASE("vacuum CM has symplectic spectrum {1/2}", "[gaussian]") {
  const auto spectrum = symplectic_eigenvalues(CovMatrix::vacuum(1));
  REQUIRE(spectrum.values.size() == 1);
  REQUIRE(spectrum.values[0] == Approx(0.5).margin(1e-14));
}

TEST_CASE("pure EPR CM has all symplectic eigenvalues 1/2", "[gaussian]") {
  const auto spectrum = symplectic_eigenvalues(epr_cm(1.0).cm);
  REQUIRE(spectrum.values.size() == 2);
  REQUIRE(spectrum.values[0] == Approx(0.5).margin(1e-12));
  REQUIRE(spectrum.values[1] == Approx(0.5).margin(1e-12));
}

TEST_CASE("eigensolver matches the closed-form nu_BC for gamma_BC", "[gaussian]") {
  const double n = 0.5;
  const double s = 1.0;
  const auto spectrum = symplectic_eigenvalues(test_helpers::gamma_bc(n, s));
  REQUIRE(spectrum.values[0] == Approx(finite_s::nu_bc_plus(n, s)).margin(1e-10));
  REQUIRE(spectrum.values[1] == Approx(finite_s::nu_bc_minus(n, s)).margin(1e-10));
}

TEST_CASE("closed forms nu_B, nu_BC, d match the eigensolver on a grid",
          "[gaussian]") {
  for (double n : {0.05, 0.2, 0.5, 0.9}) {
    for (double s : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const auto bc = symplectic_eigenvalues(test_helpers::gamma_bc(n, s));
      CHECK(bc.values[0] == Approx(finite_s::nu_bc_plus(n, s)).margin(1e-9));
      CHECK(bc.values[1] == Approx(finite_s::nu_bc_minus(n, s)).margin(1e-9));

      const Eigen::Matrix2d gb =
          (n + 0.5 * std::cosh(2.0 * s)) * Eigen::Matrix2d::Identity();
      const auto b = symplectic_eigenvalues(CovMatrix(gb));
      CHECK(b.values[0] == Approx(finite_s::nu_b(n, s)).margin(1e-9));

      const auto d = symplectic_eigenvalues(
          partial_time_reversal(test_helpers::gamma_bc(n, s), 1));
      CHECK(d.values[0] == Approx(finite_s::cj_d_plus(n, s)).margin(1e-9));
      CHECK(d.values[1] == Approx(finite_s::cj_d_minus(n, s)).margin(1e-9));
    }
  }
}

TEST_CASE("non-symmetric input is rejected", "[gaussian]") {
  Eigen::Matrix2d m;
  m << 1.0, 0.5, 0.2, 1.0;
  REQUIRE_THROWS_AS(CovMatrix(m), validation_error);
}

TEST_CASE("odd dimension is rejected", "[gaussian]") {
  REQUIRE_THROWS_AS(CovMatrix(Eigen::Matrix3d::Identity()), validation_error);
}

TEST_CASE("g_entropy values", "[gaussian]") {
  REQUIRE(g_entropy(0.0) == 0.0);
  REQUIRE(g_entropy(1.0) == Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  REQUIRE(g_entropy(0.5) ==
          Approx(1.5 * std::log(1.5) - 0.5 * std::log(0.5)).epsilon(1e-14));
  REQUIRE(g_entropy(0.5) == Approx(0.954771).margin(1e-6));
  REQUIRE_THROWS_AS(g_entropy(-0.1), validation_error);
}

TEST_CASE("g_entropy stays continuous near zero", "[gaussian]") {
  REQUIRE(g_entropy(1e-14) < 1e-12);
  REQUIRE(g_entropy(1e-300) >= 0.0);
}

TEST_CASE("von Neumann entropy of pure and thermal states", "[gaussian]") {
  REQUIRE(von_neumann_entropy(CovMatrix::vacuum(1)) == Approx(0.0).margin(1e-12));

  // Thermal CM with nu = N + 1/2, N = e^{-2}: entropy g(e^{-2}).
  const double n = std::exp(-2.0);
  const Eigen::Matrix2d thermal = (n + 0.5) * Eigen::Matrix2d::Identity();
  REQUIRE(von_neumann_entropy(CovMatrix(thermal)) ==
          Approx(0.414776415841358).margin(1e-12));

  for (double s : {0.0, 0.3, 1.0, 4.0, 10.0}) {
    CHECK(von_neumann_entropy(epr_cm(s).cm) < 1e-9);
  }
}

TEST_CASE("von Neumann entropy rejects unphysical CMs", "[gaussian]") {
  const Eigen::Matrix2d squeezed_too_far = 0.2 * Eigen::Matrix2d::Identity();
  REQUIRE_THROWS_AS(von_neumann_entropy(CovMatrix(squeezed_too_far)),
                    validation_error);
}

TEST_CASE("partial time reversal is an involution", "[gaussian]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const CovMatrix cm = test_helpers::random_physical_cm(2, rng);
    for (int mode : {0, 1}) {
      const CovMatrix twice =
          partial_time_reversal(partial_time_reversal(cm, mode), mode);
      REQUIRE((twice.mat() - cm.mat()).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("partial time reversal of gamma_BC matches the printed d_pm",
          "[gaussian]") {
  const auto spectrum = symplectic_eigenvalues(
      partial_time_reversal(test_helpers::gamma_bc(0.3, 1.0), 1));
  REQUIRE(spectrum.values[0] == Approx(finite_s::cj_d_plus(0.3, 1.0)).margin(1e-10));
  REQUIRE(spectrum.values[1] == Approx(finite_s::cj_d_minus(0.3, 1.0)).margin(1e-10));
}

TEST_CASE("partial time reversal keeps block-diagonal spectra", "[gaussian]") {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.topLeftCorner<2, 2>() = 0.8 * Eigen::Matrix2d::Identity();
  m.bottomRightCorner<2, 2>() = 1.7 * Eigen::Matrix2d::Identity();
  const CovMatrix product(m);
  const auto before = symplectic_eigenvalues(product);
  const auto after = symplectic_eigenvalues(partial_time_reversal(product, 1));
  REQUIRE(after.values[0] == Approx(before.values[0]).margin(1e-12));
  REQUIRE(after.values[1] == Approx(before.values[1]).margin(1e-12));
}

TEST_CASE("partial time reversal validates its mode index", "[gaussian]") {
  const CovMatrix cm = CovMatrix::vacuum(2);
  REQUIRE_THROWS_AS(partial_time_reversal(cm, 2), validation_error);
  REQUIRE_THROWS_AS(partial_time_reversal(cm, -1), validation_error);
  REQUIRE_THROWS_AS(partial_time_reversal(CovMatrix::vacuum(1), 0),
                    validation_error);
}

TEST_CASE("log negativity of separable and entangled states", "[gaussian]") {
  REQUIRE(log_negativity(CovMatrix::vacuum(2)) == 0.0);
  // Pure EPR state: negativity 2s.
  REQUIRE(log_negativity(epr_cm(1.0).cm) == Approx(2.0).margin(1e-9));
  // gamma_BC at s=0 is a product state: d_- = 1/2 for any N.
  for (double n : {0.1, 0.5, 0.9}) {
    CHECK(log_negativity(test_helpers::gamma_bc(n, 0.0)) == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("symplectic spectrum is invariant under the collective transform",
          "[gaussian]") {
  std::mt19937_64 rng(42);
  const Eigen::Matrix4d r = collective_transform();
  for (int trial = 0; trial < 25; ++trial) {
    const CovMatrix cm = test_helpers::random_physical_cm(2, rng);
    const CovMatrix rotated(r.transpose() * cm.mat() * r);
    const auto before = symplectic_eigenvalues(cm);
    const auto after = symplectic_eigenvalues(rotated);
    REQUIRE(after.values[0] == Approx(before.values[0]).margin(1e-10));
    REQUIRE(after.values[1] == Approx(before.values[1]).margin(1e-10));
  }
}

TEST_CASE("random physical CMs satisfy the uncertainty bound", "[gaussian]") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 25; ++trial) {
    const CovMatrix cm = test_helpers::random_physical_cm(2, rng);
    REQUIRE(symplectic_eigenvalues(cm).min() >= 0.5 - 1e-9);
    REQUIRE(is_physical(cm));
  }
}

TEST_CASE("GaussianState validates mean length and physicality", "[gaussian]") {
  REQUIRE_THROWS_AS(GaussianState(Eigen::Vector3d::Zero(), CovMatrix::vacuum(1)),
                    validation_error);
  const Eigen::Matrix2d bad = 0.1 * Eigen::Matrix2d::Identity();
  REQUIRE_THROWS_AS(GaussianState(Eigen::Vector2d::Zero(), CovMatrix(bad)),
                    validation_error);
}
