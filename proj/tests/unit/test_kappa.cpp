#include <doctest.h>

#include <stdexcept>

#include "bodyshape/kappa.hpp"
#include "bodyshape/rng.hpp"

using namespace bodyshape;
using namespace bodyshape::stats;

TEST_CASE("identical labelings score 1") {
  CHECK(cohen_kappa({0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}) == doctest::Approx(1.0));
  CHECK(cohen_kappa({2, 2, 2, 1}, {2, 2, 2, 1}) == doctest::Approx(1.0));
}

TEST_CASE("perfectly swapped balanced labels score -1") {
  // po = 0, pe = 0.5.
  CHECK(cohen_kappa({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(-1.0));
}

TEST_CASE("chance-level agreement scores 0") {
  // po = 0.5, pe = 0.5.
  CHECK(cohen_kappa({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("kappa is symmetric in its arguments") {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> a(30), b(30);
    for (auto& v : a) v = static_cast<int>(rng.next_below(5));
    for (auto& v : b) v = static_cast<int>(rng.next_below(5));
    CHECK(cohen_kappa(a, b) == doctest::Approx(cohen_kappa(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("kappa below 1 whenever multi-label labelings differ") {
  SplitMix64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> a(20);
    for (auto& v : a) v = static_cast<int>(rng.next_below(3));
    std::vector<int> b = a;
    b[rng.next_below(20)] = (b[rng.next_below(20)] + 1) % 3;
    if (a == b) continue;
    CHECK(cohen_kappa(a, b) < 1.0);
  }
}

TEST_CASE("degenerate single-label universe") {
  CHECK(cohen_kappa({1, 1, 1}, {1, 1, 1}) == doctest::Approx(1.0));  // pe = 1, po = 1
  CHECK(cohen_kappa({1, 1, 1, 1}, {1, 1, 1, 2}) ==
        doctest::Approx(0.0));  // pe < 1 here, po < 1: plain formula
}

TEST_CASE("length mismatch and empty inputs are rejected") {
  CHECK_THROWS_AS(cohen_kappa({1, 2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(cohen_kappa({}, {}), std::invalid_argument);
}
