#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "qwd/errors.hpp"
#include "qwd/io.hpp"
#include "qwd/rng.hpp"

using namespace qwd;

TEST_SUITE("io") {
  TEST_CASE("matrix json round trip is exact") {
    RngStream rng(81, 0);
    const CMatrix m = rng.complex_gaussian(3, 3);
    CHECK(parse_matrix_json(matrix_to_json(m)) == m);
  }

  TEST_CASE("real entries are accepted") {
    const CMatrix m = parse_matrix_json(R"({"dim": 2, "entries": [[0.5, 0], [0, [0.5, 0]]]})");
    CHECK(m(0, 0) == Complex(0.5, 0));
    CHECK(m(1, 1) == Complex(0.5, 0));
  }

  TEST_CASE("malformed input is InvalidInput") {
    CHECK_THROWS_AS(parse_matrix_json("{"), InvalidInput);
    CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 2, "entries": [[1, 0]]})"), InvalidInput);
    CHECK_THROWS_AS(parse_matrix_json(R"({"dim": 1, "entries": [["x"]]})"), InvalidInput);
    CHECK_THROWS_AS(load_matrix("/nonexistent/file.json"), InvalidInput);
  }

  TEST_CASE("state and observable files") {
    const auto dir = std::filesystem::temp_directory_path() / "qwd_io_test";
    std::filesystem::create_directories(dir);
    const std::string p = (dir / "rho.json").string();
    save_matrix(p, DensityMatrix::maximally_mixed(2).matrix());
    CHECK(load_state(p).matrix() == DensityMatrix::maximally_mixed(2).matrix());
    save_matrix(p, CMatrix::Identity(2, 2));
    CHECK_THROWS_AS(load_state(p), NotDensity);

    const ObservableSet a = observables_from_selector("pauli-products:2", 4, 0);
    CHECK(a.size() == 15);
    const ObservableSet b = parse_observables_json(observables_to_json(a));
    CHECK(b.size() == 15);
    CHECK(b[14].matrix() == a[14].matrix());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("selectors") {
    CHECK(observables_from_selector("symmetric", 2, 0).size() == 3);
    CHECK_THROWS_AS(observables_from_selector("symmetric", 3, 0), DimensionMismatch);
    CHECK_THROWS_AS(observables_from_selector("pauli-products:2", 2, 0), DimensionMismatch);
    CHECK_THROWS_AS(observables_from_selector("bogus", 2, 0), InvalidInput);
    const ObservableSet r1 = observables_from_selector("random:2", 3, 5);
    const ObservableSet r2 = observables_from_selector("random:2", 3, 5);
    CHECK(r1[1].matrix() == r2[1].matrix());
    CHECK(channel_from_selector("identity", 3).dim() == 3);
    CHECK(channel_from_selector("depolarizing:0.5", 2).kraus().size() == 4);
    CHECK_THROWS_AS(channel_from_selector("depolarizing:abc", 2), InvalidInput);
    const ChannelSpec c = parse_channel_json(channel_to_json(ChannelSpec::dephasing(0.3)));
    CHECK(c.kraus().size() == 2);
  }
}
