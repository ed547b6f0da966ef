#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "qwd/cost.hpp"
#include "qwd/rng.hpp"

using namespace qwd;

TEST_SUITE("cost") {
  TEST_CASE("symmetric cost spectrum is {0, 8, 8, 8}") {
    const RVector ev = symmetric_cost().matrix.eigenvalues();
    REQUIRE(ev.size() == 4);
    CHECK(std::abs(ev(0)) < 1e-12);
    for (int i = 1; i < 4; ++i) CHECK(std::abs(ev(i) - 8.0) < 1e-12);
  }

  TEST_CASE("cost matches a direct sum of squares") {
    RngStream rng(4, 0);
    const ObservableSet a = random_observables(3, 2, rng);
    for (bool tr : {true, false}) {
      const CostOperator c = build_cost(a, tr);
      CMatrix ref = CMatrix::Zero(9, 9);
      const CMatrix id = CMatrix::Identity(3, 3);
      for (const auto& o : a) {
        const CMatrix b = tr ? CMatrix(o.matrix().transpose()) : o.matrix();
        const CMatrix t = oracle::kron(o.matrix(), id) - oracle::kron(id, b);
        ref += t * t;
      }
      CHECK(frobenius_distance(c.matrix.matrix(), ref) < 1e-10);
      CHECK(c.matrix.min_eigenvalue() > -1e-10);
      CHECK(c.transpose == tr);
    }
  }

  TEST_CASE("pauli product sets") {
    const ObservableSet one = pauli_product_set(1);
    CHECK(one.size() == 3);
    CHECK(frobenius_distance(one[0].matrix(), pauli(1).matrix()) == 0.0);
    const ObservableSet two = pauli_product_set(2);
    REQUIRE(two.size() == 15);
    CHECK(two.dim() == 4);
    // lexicographic order: (0,1), (0,2), (0,3), (1,0), ...
    CHECK(frobenius_distance(two[0].matrix(), oracle::kron(pauli(0).matrix(), pauli(1).matrix())) <
          1e-15);
    CHECK(frobenius_distance(two[3].matrix(), oracle::kron(pauli(1).matrix(), pauli(0).matrix())) <
          1e-15);
    CHECK(pauli_product_set(3).size() == 63);
  }
}
