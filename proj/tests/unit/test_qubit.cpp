#include <cmath>

#include "doctest.h"
#include "qwd/cost.hpp"
#include "qwd/divergence.hpp"
#include "qwd/errors.hpp"
#include "qwd/qubit.hpp"
#include "qwd/rng.hpp"
#include "qwd/transport.hpp"

using namespace qwd;

TEST_SUITE("qubit") {
  TEST_CASE("bloch round trip") {
    RngStream rng(51, 0);
    for (int i = 0; i < 20; ++i) {
      const DensityMatrix rho = random_state(2, 2, rng);
      const BlochVector b = to_bloch(rho);
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(b[j] - (rho.matrix() * pauli(j + 1).matrix()).trace().real()) < 1e-14);
      CHECK(frobenius_distance(from_bloch(b).matrix(), rho.matrix()) < 1e-14);
    }
    CHECK_THROWS_AS(BlochVector(1.0, 0.1, 0.0), OutsideBlochBall);
    CHECK_NOTHROW(BlochVector(1.0, 0.0, 0.0));
    CHECK_THROWS_AS(to_bloch(DensityMatrix::maximally_mixed(3)), DimensionMismatch);
  }

  TEST_CASE("certificate is dual feasible and attains the bound") {
    RngStream rng(52, 0);
    const CostOperator c = symmetric_cost();
    for (int i = 0; i < 20; ++i) {
      const DensityMatrix rho = random_state(2, 2, rng);
      const DensityMatrix omega = random_state(2, 1 + i % 2, rng);
      const DualCertificate cert = bloch_certificate(rho, omega);
      CHECK(dual_slack(c, cert) >= -1e-12);
      CHECK(std::abs(dual_objective(rho, omega, cert) - bloch_lower_bound(rho, omega)) < 1e-12);
      CHECK(bloch_lower_bound(rho, omega) <= solve_primal(rho, omega, c).squared_distance + 1e-6);
    }
  }

  TEST_CASE("symmetric self distance closed form") {
    CHECK(symmetric_self_distance_sq(BlochVector(0, 0, 0)) == doctest::Approx(0.0));
    CHECK(symmetric_self_distance_sq(BlochVector(0, 0, 1)) == doctest::Approx(4.0));
    CHECK(symmetric_self_distance_sq(BlochVector(0.6, 0, 0)) == doctest::Approx(0.8));
    RngStream rng(53, 0);
    for (int i = 0; i < 10; ++i) {
      const DensityMatrix rho = random_state(2, 2, rng);
      CHECK(std::abs(symmetric_self_distance_sq(rho) - self_distance_sq(rho, qubit_paulis())) <
            1e-10);
    }
  }

  TEST_CASE("uniform ball sampler") {
    RngStream rng(54, 0);
    const int n = 100000;
    int inner = 0;
    double mean_x = 0;
    for (int i = 0; i < n; ++i) {
      const BlochVector b = sample_uniform_ball(rng);
      CHECK(b.norm() <= 1.0);
      inner += b.norm() <= 0.5;
      mean_x += b[0];
    }
    // Volume fraction of the half-radius ball is 1/8.
    CHECK(std::abs(static_cast<double>(inner) / n - 0.125) < 0.005);
    CHECK(std::abs(mean_x / n) < 0.01);
  }

  TEST_CASE("sufficient condition rate") {
    const Corollary4Rate r = corollary4_rate(2000, 1);
    CHECK(r.samples == 2000);
    CHECK(r.rate() > 0.7);
    CHECK(r.rate() < 1.0);
    CHECK(corollary4_rate(2000, 1).satisfied == r.satisfied);
  }

  TEST_CASE("certified triplets satisfy the triangle inequality") {
    RngStream rng(55, 0);
    int certified = 0;
    for (int i = 0; i < 150; ++i) {
      const BlochVector a = sample_uniform_ball(rng), b = sample_uniform_ball(rng),
                        c = sample_uniform_ball(rng);
      if (!corollary4_condition(a, b, c)) continue;
      ++certified;
      const GapRecord g =
          triangle_gap(from_bloch(a), from_bloch(b), from_bloch(c), qubit_paulis());
      CHECK(g.gap >= -1e-6);
    }
    CHECK(certified > 100);
  }
}
