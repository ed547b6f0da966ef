#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qwd/cost.hpp"
#include "qwd/divergence.hpp"
#include "qwd/errors.hpp"
#include "qwd/qubit.hpp"
#include "qwd/rng.hpp"
#include "qwd/transport.hpp"

using namespace qwd;

TEST_SUITE("divergence") {
  TEST_CASE("divergence of a state with itself is exactly zero") {
    RngStream rng(41, 0);
    const DensityMatrix rho = random_state(3, 3, rng);
    const DivergenceValue v = divergence(rho, rho, random_observables(3, 3, rng));
    CHECK(v.value == 0.0);
    CHECK(v.raw_squared == 0.0);
  }

  TEST_CASE("components are consistent") {
    RngStream rng(42, 0);
    const DensityMatrix rho = random_state(2, 2, rng);
    const DensityMatrix omega = random_state(2, 2, rng);
    const DivergenceValue v = divergence(rho, omega, qubit_paulis());
    CHECK(std::abs(v.d2_rho_rho - symmetric_self_distance_sq(rho)) < 1e-9);
    CHECK(std::abs(v.d2_omega_omega - symmetric_self_distance_sq(omega)) < 1e-9);
    CHECK(std::abs(v.raw_squared - (v.d2_rho_omega - 0.5 * (v.d2_rho_rho + v.d2_omega_omega))) <
          1e-12);
    CHECK(std::abs(v.value - std::sqrt(v.raw_squared)) < 1e-12);
    CHECK(v.value > 0.0);
  }

  TEST_CASE("divergence is symmetric") {
    RngStream rng(43, 0);
    SolverConfig cfg;
    cfg.gap_tol = cfg.feas_tol = 1e-10;
    const DensityMatrix rho = random_state(3, 3, rng);
    const DensityMatrix omega = random_state(3, 2, rng);
    const ObservableSet a = random_observables(3, 2, rng);
    CHECK(std::abs(divergence(rho, omega, a, cfg).value - divergence(omega, rho, a, cfg).value) <
          1e-6);
  }

  TEST_CASE("non-transposed cost uses the SDP self distance") {
    RngStream rng(44, 0);
    const DensityMatrix rho = random_state(2, 2, rng);
    const CostOperator c = build_cost(qubit_paulis(), false);
    const double via_sdp = solve_primal(rho, rho, c).squared_distance;
    CHECK(std::abs(self_distance_sq(rho, c, {}) - via_sdp) < 1e-9);
  }

  TEST_CASE("cache returns identical values and counts hits") {
    RngStream rng(45, 0);
    const DensityMatrix rho = random_state(2, 2, rng);
    const DensityMatrix omega = random_state(2, 2, rng);
    const CostOperator c = symmetric_cost();
    SelfDistanceCache cache;
    const DivergenceValue a = divergence(rho, omega, c, {}, &cache);
    CHECK(cache.size() == 2);
    const DivergenceValue b = divergence(rho, omega, c, {}, &cache);
    CHECK(cache.hits() == 2);
    CHECK(a.value == b.value);
  }

  TEST_CASE("triangle gap record") {
    RngStream rng(46, 0);
    const DensityMatrix rho = random_state(2, 2, rng);
    const DensityMatrix omega = random_state(2, 2, rng);
    const DensityMatrix tau = random_state(2, 2, rng);
    const GapRecord g = triangle_gap(rho, omega, tau, qubit_paulis());
    CHECK(g.dim == 2);
    CHECK(std::abs(g.gap - (g.d_rho_omega + g.d_omega_tau - g.d_rho_tau)) < 1e-15);
    CHECK(g.gap > 0.0);
    const GapRecord same = triangle_gap(rho, rho, rho, qubit_paulis());
    CHECK(same.gap == 0.0);
  }

  TEST_CASE("csv formatting") {
    CHECK(gap_csv_header() == "dim,seed,sampler-tag,d_rho_omega,d_omega_tau,d_rho_tau,gap");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    GapRecord r;
    r.dim = 3;
    r.seed = 7;
    r.sampler_tag = "t";
    r.d_rho_omega = 0.5;
    r.d_omega_tau = 0.25;
    r.d_rho_tau = 0.125;
    r.gap = 0.625;
    CHECK(gap_csv_row(r) == "3,7,t,0.5,0.25,0.125,0.625");
  }
}
