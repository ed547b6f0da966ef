#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qwd/errors.hpp"
#include "qwd/hermitian.hpp"
#include "qwd/rng.hpp"

using namespace qwd;

TEST_SUITE("hermitian") {
  TEST_CASE("constructor rejects non-Hermitian input") {
    CMatrix m(2, 2);
    m << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 1.0;
    CHECK_THROWS_AS(HermitianMatrix{m}, NotHermitian);
    CHECK_THROWS_AS(HermitianMatrix{CMatrix(2, 3)}, DimensionMismatch);
  }

  TEST_CASE("stored matrix is exactly Hermitian") {
    CMatrix m(2, 2);
    m << 1.0, Complex(0.5, 0.25), Complex(0.5, -0.25 + 1e-14), 2.0;
    HermitianMatrix h(m);
    CHECK(h.matrix() == h.matrix().adjoint());
  }

  TEST_CASE("density checks") {
    CHECK_THROWS_AS(DensityMatrix(HermitianMatrix::identity(2)), NotDensity);
    CMatrix neg(2, 2);
    neg << 1.2, 0.0, 0.0, -0.2;
    CHECK_THROWS_AS(DensityMatrix{neg}, NotDensity);
    CHECK(DensityMatrix::basis_state(3, 1).is_pure());
    CHECK_FALSE(DensityMatrix::maximally_mixed(3).is_pure());
  }

  TEST_CASE("eigh reconstructs the matrix") {
    RngStream rng(3, 0);
    for (int d = 2; d <= 6; ++d) {
      const HermitianMatrix h = random_observable(d, rng);
      const Eigensystem es = eigh(h);
      for (int i = 1; i < d; ++i) CHECK(es.values(i) >= es.values(i - 1));
      const CMatrix back = es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
      CHECK(frobenius_distance(back, h.matrix()) < 1e-10);
      CHECK((es.vectors.adjoint() * es.vectors - CMatrix::Identity(d, d)).norm() < 1e-12);
    }
  }

  TEST_CASE("kron and partial trace agree with explicit loops") {
    RngStream rng(5, 0);
    for (int d1 = 1; d1 <= 3; ++d1)
      for (int d2 = 1; d2 <= 3; ++d2) {
        const CMatrix a = rng.complex_gaussian(d1, d1);
        const CMatrix b = rng.complex_gaussian(d2, d2);
        const CMatrix k = kron(a, b);
        CHECK(frobenius_distance(k, oracle::kron(a, b)) < 1e-13);
        const CMatrix m = rng.complex_gaussian(d1 * d2, d1 * d2);
        CHECK(frobenius_distance(partial_trace(m, Keep::first, d1, d2),
                                 oracle::trace_out_second(m, d1, d2)) < 1e-12);
        CHECK(frobenius_distance(partial_trace(m, Keep::second, d1, d2),
                                 oracle::trace_out_first(m, d1, d2)) < 1e-12);
      }
  }

  TEST_CASE("partial trace of a product") {
    const DensityMatrix r = DensityMatrix::basis_state(2, 0);
    const DensityMatrix w = DensityMatrix::maximally_mixed(3);
    const HermitianMatrix p = kron(r.hermitian(), w.hermitian());
    CHECK(frobenius_distance(partial_trace(p, Keep::first, 2, 3).matrix(), r.matrix()) < 1e-14);
    CHECK(frobenius_distance(partial_trace(p, Keep::second, 2, 3).matrix(), w.matrix()) < 1e-14);
    CHECK_THROWS_AS(partial_trace(p, Keep::first, 2, 2), DimensionMismatch);
  }

  TEST_CASE("sqrt_psd") {
    RngStream rng(7, 0);
    const DensityMatrix rho = random_state(4, 2, rng);
    const HermitianMatrix s = sqrt_psd(rho.hermitian());
    CHECK(frobenius_distance(s.matrix() * s.matrix(), rho.matrix()) < 1e-10);
    CHECK(s.min_eigenvalue() >= -1e-14);
    CHECK_THROWS_AS(sqrt_psd(HermitianMatrix::diagonal(RVector::Constant(2, -1e-3))), NotPsd);
    CHECK_NOTHROW(sqrt_psd(HermitianMatrix::diagonal(RVector::Constant(2, -1e-11))));
  }

  TEST_CASE("hermitian basis is orthonormal") {
    for (int d = 1; d <= 4; ++d) {
      const auto basis = hermitian_basis(d);
      REQUIRE(basis.size() == static_cast<std::size_t>(d * d));
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
          CHECK(std::abs(hs_inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-14);
    }
  }

  TEST_CASE("pauli algebra") {
    for (int j = 1; j <= 3; ++j) {
      const CMatrix s = pauli(j).matrix();
      CHECK(frobenius_distance(s * s, CMatrix::Identity(2, 2)) < 1e-15);
      CHECK(std::abs(s.trace()) < 1e-15);
    }
    const CMatrix prod = pauli(1).matrix() * pauli(2).matrix();
    CHECK(frobenius_distance(prod, Complex(0, 1) * pauli(3).matrix()) < 1e-15);
    CHECK(frobenius_distance(pauli(2).transpose().matrix(), -pauli(2).matrix()) < 1e-15);
  }

  TEST_CASE("observable set requires a common dimension") {
    CHECK_THROWS_AS(ObservableSet({}), InvalidInput);
    CHECK_THROWS_AS(ObservableSet({pauli(1), HermitianMatrix::identity(3)}), DimensionMismatch);
  }
}
