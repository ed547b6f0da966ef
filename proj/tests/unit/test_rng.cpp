#include <cmath>

#include "doctest.h"
#include "qwd/rng.hpp"

using namespace qwd;

TEST_SUITE("rng") {
  TEST_CASE("same key gives the same stream") {
    RngStream a(11, 4), b(11, 4), c(11, 5), d(12, 4);
    const double x = a.normal();
    CHECK(x == b.normal());
    CHECK(x != c.normal());
    CHECK(x != d.normal());
    CHECK(RngStream(11, 4).substream(2).uniform() == RngStream(11, 4).substream(2).uniform());
    CHECK(RngStream(11, 4).substream(2).uniform() != RngStream(11, 4).substream(3).uniform());
  }

  TEST_CASE("wishart states are valid with the requested rank") {
    RngStream rng(1, 0);
    for (int d = 2; d <= 5; ++d)
      for (int r = 1; r <= d; ++r) {
        const DensityMatrix rho = random_state(d, r, rng);
        const RVector ev = rho.hermitian().eigenvalues();
        int rank = 0;
        for (int i = 0; i < d; ++i) rank += ev(i) > 1e-9;
        CHECK(rank == r);
        CHECK(std::abs(rho.hermitian().trace() - 1.0) < 1e-12);
      }
  }

  TEST_CASE("unitaries are unitary") {
    RngStream rng(2, 0);
    const CMatrix u = random_unitary(4, rng);
    CHECK((u.adjoint() * u - CMatrix::Identity(4, 4)).norm() < 1e-12);
  }

  TEST_CASE("moments of the normal and uniform draws") {
    RngStream rng(9, 0);
    const int n = 200000;
    double s = 0, s2 = 0, u = 0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.normal();
      s += x;
      s2 += x * x;
      u += rng.uniform();
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.02);
    CHECK(std::abs(u / n - 0.5) < 0.005);
  }
}
