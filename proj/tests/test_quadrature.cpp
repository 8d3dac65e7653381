#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "troplaur/quadrature.hpp"

using namespace troplaur;

namespace {

// Linear scan with the filter written out in ratios.
std::int64_t scan_nodes(double ratio, double eps) {
  for (std::int64_t n = 1;; ++n)
    if (1.0 / std::abs(1.0 - std::pow(ratio, static_cast<double>(n))) <= eps) return n;
}

}  // namespace

TEST_CASE("advise_nodes returns the smallest sufficient N", "[quadrature][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lr(std::log(1.5), std::log(50.0)), le(std::log(1e-15), std::log(1e-2));
  for (int t = 0; t < 500; ++t) {
    double g = lr(rng), eps = std::exp(le(rng));
    FilterQuery q{-1.0, -1.0 + g, eps};
    auto n = advise_nodes(q);
    CHECK(filter_magnitude(q, n, q.nearest_excluded_log) <= eps);
    if (n > 1) CHECK(filter_magnitude(q, n - 1, q.nearest_excluded_log) > eps);
    CHECK(std::abs(n - scan_nodes(std::exp(g), eps)) <= 1);
  }
}

TEST_CASE("N grows as the gap narrows or epsilon shrinks", "[quadrature][property]") {
  std::int64_t prev = 0;
  for (double g = 3.0; g > 0.05; g *= 0.8) {
    auto n = advise_nodes({0.0, g, 1e-12});
    CHECK(n >= prev);
    prev = n;
  }
  prev = 0;
  for (double eps = 1e-2; eps > 1e-16; eps /= 10) {
    auto n = advise_nodes({0.0, 1.0, eps});
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("ratio 6.72 at 1e-15 needs 19 nodes", "[quadrature]") {
  double g = std::log(6.72);
  CHECK(advise_nodes({0.0, g, 1e-15}) == 19);
  CHECK(scan_nodes(6.72, 1e-15) == 19);
}

TEST_CASE("filter is exact inside and outside the contour", "[quadrature]") {
  FilterQuery q{0.0, 1.0, 1e-10};
  CHECK_THAT(filter_magnitude(q, 4, std::log(0.5)), Catch::Matchers::WithinRel(1.0 / (1.0 - std::pow(0.5, 4)), 1e-14));
  CHECK_THAT(filter_magnitude(q, 3, std::log(2.0)), Catch::Matchers::WithinRel(1.0 / 7.0, 1e-14));
  CHECK(filter_magnitude(q, 100000, 1.0) == 0.0);
}

TEST_CASE("bad filter queries are rejected", "[quadrature]") {
  CHECK_THROWS_AS(advise_nodes({1.0, 1.0, 1e-15}), std::invalid_argument);
  CHECK_THROWS_AS(advise_nodes({1.0, 0.5, 1e-15}), std::invalid_argument);
  CHECK_THROWS_AS(advise_nodes({0.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(advise_nodes({0.0, 1.0, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(filter_magnitude({0.0, 1.0, 1e-3}, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(filter_magnitude({0.0, 1.0, 1e-3}, 5, 0.0), std::domain_error);
}
