#include <cmath>

#include "doctest.h"
#include "qwd/complexity.hpp"
#include "qwd/cost.hpp"
#include "qwd/errors.hpp"
#include "qwd/nelder_mead.hpp"
#include "qwd/parallel.hpp"
#include "qwd/qubit.hpp"

using namespace qwd;

TEST_SUITE("complexity") {
  TEST_CASE("nelder mead finds the peak of a quadratic") {
    const auto f = [](const RVector& x) {
      return -(x(0) - 1.0) * (x(0) - 1.0) - 2.0 * (x(1) + 0.5) * (x(1) + 0.5) + 3.0;
    };
    const NelderMeadResult r = nelder_mead_maximize(f, RVector::Zero(2));
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.x(1) == doctest::Approx(-0.5).epsilon(1e-4));
    CHECK(r.value >= r.initial_value);
  }

  TEST_CASE("nelder mead respects the evaluation budget") {
    NelderMeadOptions opt;
    opt.max_evaluations = 30;
    const auto f = [](const RVector& x) { return -x.squaredNorm(); };
    const NelderMeadResult r = nelder_mead_maximize(f, RVector::Constant(4, 3.0), opt);
    CHECK(r.evaluations <= 30 + 5);
  }

  TEST_CASE("channels preserve trace") {
    RngStream rng(71, 0);
    const ChannelSpec chans[] = {ChannelSpec::identity(2), ChannelSpec::depolarizing(0.3),
                                 ChannelSpec::dephasing(0.2), ChannelSpec::random(2, 3, rng),
                                 ChannelSpec::unitary(pauli(1).matrix())};
    for (const auto& c : chans) {
      const DensityMatrix out = apply_channel(c, random_state(2, 2, rng));
      CHECK(out.hermitian().trace() == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(ChannelSpec({CMatrix::Identity(2, 2) * 0.5}), InvalidInput);
    CHECK_THROWS_AS(ChannelSpec::depolarizing(1.5), InvalidInput);
    CHECK_THROWS_AS(ChannelSpec::unitary(2.0 * CMatrix::Identity(2, 2)), InvalidInput);
  }

  TEST_CASE("depolarizing and dephasing act on the Bloch vector") {
    const DensityMatrix rho = from_bloch({0.3, -0.4, 0.5});
    const BlochVector d = to_bloch(apply_channel(ChannelSpec::depolarizing(0.4), rho));
    CHECK(d[0] == doctest::Approx(0.18));
    CHECK(d[2] == doctest::Approx(0.3));
    const BlochVector z = to_bloch(apply_channel(ChannelSpec::dephasing(0.25), rho));
    CHECK(z[0] == doctest::Approx(0.15));
    CHECK(z[2] == doctest::Approx(0.5));
  }

  TEST_CASE("composition and tensor products") {
    RngStream rng(72, 0);
    const ChannelSpec a = ChannelSpec::random(2, 2, rng);
    const ChannelSpec b = ChannelSpec::depolarizing(0.5);
    const DensityMatrix rho = random_state(2, 2, rng);
    CHECK(frobenius_distance(apply_channel(compose(b, a), rho).matrix(),
                             apply_channel(b, apply_channel(a, rho)).matrix()) < 1e-12);
    const ChannelSpec t = tensor(a, b);
    CHECK(t.dim() == 4);
    const DensityMatrix sigma = random_state(2, 2, rng);
    const DensityMatrix prod(kron(rho.hermitian(), sigma.hermitian()));
    const CMatrix expect =
        kron(apply_channel(a, rho).matrix(), apply_channel(b, sigma).matrix());
    CHECK(frobenius_distance(apply_channel(t, prod).matrix(), expect) < 1e-12);
  }

  TEST_CASE("identity channel has zero complexity") {
    const ComplexityResult r = wasserstein_complexity(ChannelSpec::identity(2), qubit_paulis(), 3);
    CHECK(r.value == 0.0);
    CHECK(r.restarts_used == 3);
    CHECK(r.restarts.size() == 3);
  }

  TEST_CASE("bit flip with a single observable") {
    ComplexityOptions opt;
    opt.restarts = 4;
    const ComplexityResult r = wasserstein_complexity(ChannelSpec::unitary(pauli(1).matrix()),
                                                      build_cost(ObservableSet({pauli(3)})), opt);
    CHECK(r.value >= 2.0 - 1e-4);
    for (const auto& rec : r.restarts) CHECK(rec.value >= rec.initial_value);
  }

  TEST_CASE("results do not depend on workers") {
    ComplexityOptions opt;
    opt.restarts = 3;
    opt.max_evaluations = 80;
    opt.seed = 9;
    const CostOperator c = symmetric_cost();
    const ChannelSpec phi = ChannelSpec::dephasing(0.7);
    const ComplexityResult a = wasserstein_complexity(phi, c, opt);
    opt.workers = 3;
    const ComplexityResult b = wasserstein_complexity(phi, c, opt);
    CHECK(a.value == b.value);
    CHECK(a.argmax_state.matrix() == b.argmax_state.matrix());
  }

  TEST_CASE("subadditivity report") {
    ComplexityOptions opt;
    opt.restarts = 3;
    opt.max_evaluations = 200;
    const SubadditivityReport r = subadditivity_report(
        ChannelSpec::dephasing(0.5), ChannelSpec::unitary(pauli(1).matrix()), symmetric_cost(), opt);
    CHECK(r.slack == doctest::Approx(r.c_first + r.c_second - r.c_composite));
    CHECK(r.warning == (r.slack < -kSubadditivityTolerance));
  }

  TEST_CASE("parallel_for rethrows the lowest failing index") {
    std::vector<int> out(50, 0);
    try {
      parallel_for(out.size(), 4, [&](std::size_t i) {
        if (i == 17 || i == 33) throw InvalidInput(std::to_string(i));
        out[i] = 1;
      });
      FAIL("expected an exception");
    } catch (const InvalidInput& e) {
      CHECK(std::string(e.what()) == "17");
    }
  }
}
