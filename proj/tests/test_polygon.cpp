#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "troplaur/generators.hpp"
#include "troplaur/polygon.hpp"
#include "troplaur/validation.hpp"

using namespace troplaur;
using Catch::Matchers::WithinAbs;

namespace {

void check_slopes_and_multiplicities(const NewtonPolygon& poly, const RootList& rl) {
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i + 2 < v.size(); ++i)
    CHECK(slope(v[i].point(), v[i + 1].point()) > slope(v[i + 1].point(), v[i + 2].point()));
  for (std::size_t i = 0; i + 1 < rl.roots.size(); ++i) CHECK(rl.roots[i].log_value < rl.roots[i + 1].log_value);
  int inf_left = 0, inf_right = 0;
  for (const auto& r : rl.roots) {
    if (r.infinite) (r.side == Side::Left ? inf_left : inf_right)++;
    if (r.kind == RootKind::HullSegment) CHECK(r.multiplicity == r.right_index - r.left_index);
  }
  CHECK(inf_left <= 1);
  CHECK(inf_right <= 1);
  // Between any two certified vertices the segment multiplicities add up.
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (!v[a].certified() || !v[b].certified()) continue;
      Index sum = 0;
      for (const auto& r : rl.roots)
        if (r.kind == RootKind::HullSegment && r.left_index >= v[a].index && r.right_index <= v[b].index)
          sum += r.multiplicity;
      CHECK(sum == v[b].index - v[a].index);
    }
  }
}

}  // namespace

TEST_CASE("rational-toy has two infinite roots and exact limits", "[polygon]") {
  auto p = make_rational_toy();
  auto poly = certify_window(p, {-8, 8});
  auto rl = roots_from_polygon(poly, p);
  REQUIRE(rl.roots.size() == 2);
  CHECK(rl.roots[0].infinite);
  CHECK(rl.roots[1].infinite);
  CHECK(rl.roots[0].kind == RootKind::DomainEndpoint);
  CHECK_THAT(rl.roots[0].log_value, WithinAbs(-std::log(3.0), 1e-12));
  CHECK_THAT(rl.roots[1].log_value, WithinAbs(std::numbers::ln2, 1e-12));
  auto al = alpha_limits(rl, p);
  CHECK(al.minus_status.exact);
  CHECK(al.plus_status.exact);
  CHECK(poly.find(-1).has_value());
  CHECK(poly.vertices[*poly.find(-1)].certified());
}

TEST_CASE("harmonic-exp roots are exp(-1/(j+1)) with a zero root", "[polygon]") {
  auto p = make_harmonic_exp();
  auto poly = certify_window(p, {1, 500});
  auto rl = roots_from_polygon(poly, p);
  REQUIRE(rl.roots.size() == 500);
  CHECK(rl.roots[0].kind == RootKind::ZeroRoot);
  CHECK(rl.roots[0].multiplicity == 1);
  for (Index j = 1; j <= 499; ++j) {
    const auto& r = rl.roots[static_cast<std::size_t>(j)];
    CHECK(r.multiplicity == 1);
    CHECK_THAT(r.log_value, WithinAbs(-1.0 / static_cast<double>(j + 1), 1e-12));
  }
  auto al = alpha_limits(rl, p);
  CHECK_FALSE(al.plus_status.exact);
  CHECK(std::abs(al.alpha_plus_log) <= 1.0 / 500 + 1e-12);
  CHECK(rl.right.kind == ProbeKind::Limit);
  check_slopes_and_multiplicities(poly, rl);
}

TEST_CASE("exp: interior vertices certified, last one open", "[polygon]") {
  auto p = make_exp();
  auto poly = certify_window(p, {0, 40});
  REQUIRE(poly.vertices.size() == 41);
  for (std::size_t i = 0; i + 1 < poly.vertices.size(); ++i) CHECK(poly.vertices[i].certified());
  CHECK_FALSE(poly.vertices.back().certified());
  CHECK(poly.right_open);
  auto rl = roots_from_polygon(poly, p);
  for (std::size_t i = 0; i < rl.roots.size(); ++i)
    CHECK_THAT(rl.roots[i].log_value, WithinAbs(std::log(static_cast<double>(i + 1)), 1e-12));
  auto al = alpha_limits(rl, p);
  CHECK(al.alpha_plus_log == kPosInf);
  CHECK(rl.right.kind == ProbeKind::NotPresent);
  check_slopes_and_multiplicities(poly, rl);
}

TEST_CASE("certified vertices survive on a four times larger window", "[polygon][property]") {
  const std::pair<CoefficientProvider, IndexRange> cases[] = {
      {make_exp(), {0, 30}},
      {make_rational_toy(), {-8, 8}},
      {make_rational_toy(), {-3, 20}},
      {make_two_sided_exp(), {-12, 12}},
      {make_saturating(), {1, 40}},
  };
  for (const auto& [p, w] : cases) {
    auto poly = certify_window(p, w);
    IndexRange big{w.lo - (3 * w.size()) / 2, w.hi + (3 * w.size()) / 2};
    if (p.support().lo) big.lo = std::max(big.lo, *p.support().lo);
    auto ref = brute_hull(sample(p, big));
    std::vector<Index> cert;
    for (const auto& v : poly.vertices)
      if (v.certified()) cert.push_back(v.index);
    REQUIRE_FALSE(cert.empty());
    for (std::size_t i = 0; i < cert.size(); ++i) {
      auto at = ref.find(cert[i]);
      REQUIRE(at.has_value());
      if (i + 1 < cert.size()) CHECK(ref.vertices[*at + 1].index == cert[i + 1]);
    }
  }
}

TEST_CASE("zero root only when all non-positive coefficients vanish", "[polygon]") {
  auto p = CoefficientProvider::from_table({{3, {1.5, 1}}});
  auto rl = roots_from_polygon(certify_window(p, {3, 3}), p);
  REQUIRE(rl.roots.size() == 1);
  CHECK(rl.roots[0].kind == RootKind::ZeroRoot);
  CHECK(rl.roots[0].multiplicity == 3);

  auto q = CoefficientProvider::from_table({{-1, {0.0, 1}}, {2, {0.0, 1}}});
  for (const auto& r : roots_from_polygon(certify_window(q, {-1, 2}), q).roots) CHECK(r.kind != RootKind::ZeroRoot);

  auto e = make_exp();
  for (const auto& r : roots_from_polygon(certify_window(e, {0, 10}), e).roots) CHECK(r.kind != RootKind::ZeroRoot);
}

TEST_CASE("endpoint probes classify the tails", "[polygon]") {
  auto toy = make_rational_toy();
  auto poly = certify_window(toy, {-8, 8});
  CHECK(detect_infinite_root(toy, Side::Left, poly).kind == ProbeKind::Root);
  CHECK(detect_infinite_root(toy, Side::Right, poly).kind == ProbeKind::Root);
  auto sat = make_saturating();
  auto sp = certify_window(sat, {1, 50});
  auto probe = detect_infinite_root(sat, Side::Right, sp);
  CHECK(probe.kind == ProbeKind::Root);
  CHECK(probe.log_alpha == 0.0);
  auto e = make_exp();
  CHECK(detect_infinite_root(e, Side::Left, certify_window(e, {0, 5})).kind == ProbeKind::NotPresent);
}

TEST_CASE("without envelopes the inner hull is estimated by window doubling", "[polygon]") {
  auto p = CoefficientProvider::from_function(
      "parabola", {}, [](Index j) { return Coefficient{-0.1 * static_cast<double>(j * j), 1}; }, IndexBounds{0, std::nullopt});
  auto poly = certify_window(p, {0, 40});
  CHECK(poly.right_open);
  bool any_estimated = false;
  for (const auto& v : poly.vertices) {
    CHECK(v.status != VertexStatus::Certified);
    any_estimated = any_estimated || v.status == VertexStatus::Estimated;
  }
  CHECK(any_estimated);
  auto rl = roots_from_polygon(poly, p);
  for (const auto& r : rl.roots)
    if (r.kind == RootKind::HullSegment) CHECK_THAT(r.log_value, WithinAbs(0.1 * static_cast<double>(2 * r.left_index + 1), 1e-12));
}

TEST_CASE("scaling shifts every root by -log c", "[polygon][property]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> logc(-3.0, 3.0);
  const std::pair<CoefficientProvider, IndexRange> cases[] = {
      {make_exp(), {0, 30}}, {make_rational_toy(), {-8, 8}}, {make_harmonic_exp(), {1, 60}}, {make_saturating(), {1, 30}}};
  for (int t = 0; t < 100; ++t) {
    double lc = logc(rng);
    for (const auto& [p, w] : cases) {
      auto base = roots_from_polygon(certify_window(p, w), p);
      auto q = p.scaled(lc);
      auto scaled = roots_from_polygon(certify_window(q, w), q);
      REQUIRE(base.roots.size() == scaled.roots.size());
      for (std::size_t i = 0; i < base.roots.size(); ++i) {
        const auto& a = base.roots[i];
        const auto& b = scaled.roots[i];
        CHECK(a.multiplicity == b.multiplicity);
        CHECK(a.infinite == b.infinite);
        if (std::isfinite(a.log_value)) CHECK_THAT(b.log_value, WithinAbs(a.log_value - lc, 1e-9));
        else CHECK(b.log_value == a.log_value);
      }
    }
  }
}
