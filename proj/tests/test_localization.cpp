#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "troplaur/synthetic.hpp"
#include "troplaur/validation.hpp"
#include "worked_examples.hpp"

using namespace troplaur;
using namespace troplaur::examples;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Textbook quadratic formula in long double.
std::pair<long double, long double> quadratic_roots(long double delta, long double c) {
  long double b = 2.0L + (1.0L - delta) / (delta * (1.0L + c));
  long double disc = std::sqrt(std::max(0.0L, b * b - 4.0L / delta));
  return {(b - disc) / 2.0L, (b + disc) / 2.0L};
}

struct Gap {
  Index k;
  double alpha_log, next_log;
};

// Consecutive tropical roots straight from the brute-force hull.
std::vector<Gap> brute_gaps(const State& s) {
  auto h = brute_hull(sample(s.provider, s.polygon.window));
  std::vector<Gap> out;
  const auto& v = h.vertices;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    double a = -slope(v[i - 1].point(), v[i].point());
    double b = -slope(v[i].point(), v[i + 1].point());
    out.push_back({v[i].index, a, b});
  }
  return out;
}

void all_items_agree_with_winding(const LocalizationReport& rep, const ScalarFunctionHandle& h) {
  for (const auto& it : rep.items) {
    if (!it.applicable) continue;
    auto c = check_item(h, it);
    INFO(to_string(it.kind) << " (" << std::exp(it.inner_log) << ", " << std::exp(it.outer_log) << ")");
    CHECK(c.expected == c.counted);
  }
}

}  // namespace

TEST_CASE("key_roots solves its quadratic", "[localization][property]") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lc(std::log(1e-3), std::log(1e3)), t(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    double c = std::exp(lc(rng));
    double tt = 1.0 - t(rng);
    double delta = tt / ((1 + 2 * c) * (1 + 2 * c));
    auto [f, g] = key_roots(delta, c);
    auto p = [&](double r) { return r * r - (2 + (1 - delta) / (delta * (1 + c))) * r + 1 / delta; };
    CHECK(std::abs(p(f)) <= 1e-10 * (1 + 1 / delta));
    CHECK(std::abs(p(g)) <= 1e-10 * (1 + 1 / delta));
    CHECK(std::abs(1 / (f - 1) + 1 / (g - 1) - 1 / c) <= 1e-10 / c);
    CHECK(1 + c <= f);
    CHECK(f <= g);
    if (tt < 0.9) {
      auto [fo, go] = quadratic_roots(delta, c);
      CHECK_THAT(f, WithinRel(static_cast<double>(fo), 1e-8));
      CHECK_THAT(g, WithinRel(static_cast<double>(go), 1e-8));
    }
  }
  CHECK_THROWS_AS(key_roots(0.2, 1.0), std::domain_error);
  CHECK_THROWS_AS(key_roots(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(key_roots(0.01, -1.0), std::domain_error);
  auto [f, g] = key_roots(1.0 / 9.0, 1.0);
  CHECK_THAT(f, WithinRel(3.0, 1e-7));
  CHECK_THAT(g, WithinRel(3.0, 1e-7));
}

TEST_CASE("the gate admits a gap exactly when delta <= (1+2kappa)^-2", "[localization]") {
  // Roots 1 and 1/delta: b = (1, 1 + 1/delta, 1/delta) tropically.
  for (double delta : {0.05, 1.0 / 9.0 - 1e-9, 0.12, 0.5}) {
    auto p = CoefficientProvider::from_table({{0, {0.0, 1}}, {1, {0.0, 1}}, {2, {std::log(delta), 1}}});
    auto s = State{p, certify_window(p, {0, 2})};
    auto rep = report_of(s, Mode::Wide);
    REQUIRE(rep.gaps.size() == 1);
    CHECK_THAT(rep.gaps[0].delta, WithinRel(delta, 1e-12));
    auto ex = items_of(rep, ItemKind::ExclusionAnnulus);
    CHECK(ex.size() == (delta <= 1.0 / 9.0 ? 1u : 0u));
    if (delta > 1.0 / 9.0) {
      bool reason = false;
      for (const auto& it : rep.items)
        if (it.kind == ItemKind::ExclusionAnnulus) reason = it.reason.find("delta") != std::string::npos;
      CHECK(reason);
    }
  }
}

TEST_CASE("wide mode uses log(1+2kappa) on each side of the gap", "[localization]") {
  auto s = exp_plus_sextic();
  auto rep = report_of(s, Mode::Wide);
  for (const auto& g : brute_gaps(s)) {
    bool passes = std::exp(g.alpha_log - g.next_log) <= 1.0 / 9.0;
    bool found = false;
    for (const auto& it : items_of(rep, ItemKind::InclusionDisk)) {
      if (it.count != g.k) continue;
      found = true;
      CHECK_THAT(it.outer_log, WithinAbs(g.alpha_log + std::log(3.0), 1e-12));
    }
    CHECK(found == passes);
  }
}

TEST_CASE("exp plus a sextic: sharp report matches the quadratic oracle and the argument principle", "[localization]") {
  auto s = exp_plus_sextic();
  auto rep = report_of(s, Mode::Sharp);
  auto disks = items_of(rep, ItemKind::InclusionDisk);
  auto excl = items_of(rep, ItemKind::ExclusionAnnulus);
  std::size_t passing = 0;
  for (const auto& g : brute_gaps(s)) {
    long double delta = std::exp(static_cast<long double>(g.alpha_log - g.next_log));
    if (delta > 1.0L / 9.0L) continue;
    ++passing;
    auto [f, gg] = quadratic_roots(delta, 1.0L);
    bool found = false;
    for (std::size_t i = 0; i < disks.size(); ++i) {
      if (disks[i].count != g.k) continue;
      found = true;
      CHECK_THAT(disks[i].outer_log, WithinAbs(g.alpha_log + static_cast<double>(std::log(f)), 1e-9));
      CHECK_THAT(excl[i].outer_log, WithinAbs(g.alpha_log + static_cast<double>(std::log(gg)), 1e-9));
    }
    CHECK(found);
  }
  CHECK(disks.size() == passing);
  CHECK(excl.size() == passing);
  REQUIRE(excl.size() == 2);
  auto lower = items_of(rep, ItemKind::LowerExclusionDisk);
  REQUIRE(lower.size() == 1);
  CHECK(lower[0].count == 0);
  CHECK(items_of(rep, ItemKind::UpperBoundDisk).empty());
  all_items_agree_with_winding(rep, function_of(s.provider));
}

TEST_CASE("two-sided example: every applicable item agrees with the argument principle", "[localization]") {
  auto s = two_sided_exp_plus_laurent();
  auto rep = report_of(s, Mode::Sharp);
  auto lower = items_of(rep, ItemKind::LowerExclusionDisk);
  REQUIRE(lower.size() == 1);
  CHECK(lower[0].count == -45);
  auto upper = items_of(rep, ItemKind::UpperBoundDisk);
  REQUIRE(upper.size() == 1);
  CHECK(upper[0].count == 45);
  auto ann = items_of(rep, ItemKind::InclusionAnnulus);
  REQUIRE_FALSE(ann.empty());
  all_items_agree_with_winding(rep, function_of(s.provider));
  all_items_agree_with_winding(report_of(s, Mode::Wide), function_of(s.provider));
}

TEST_CASE("inclusion annuli count the roots between consecutive passing gaps", "[localization]") {
  for (const auto& s : {exp_plus_sextic(), two_sided_exp_plus_laurent()}) {
    auto rep = report_of(s, Mode::Sharp);
    auto disks = items_of(rep, ItemKind::InclusionDisk);
    auto excl = items_of(rep, ItemKind::ExclusionAnnulus);
    for (const auto& an : items_of(rep, ItemKind::InclusionAnnulus)) {
      const ReportItem* a = nullptr;
      const ReportItem* b = nullptr;
      for (std::size_t i = 0; i < disks.size(); ++i) {
        if (disks[i].gap == an.gap) a = &disks[i];
        if (disks[i].gap == an.gap_to) b = &disks[i];
        if (disks[i].gap == an.gap) CHECK(excl[i].outer_log == an.inner_log);
      }
      REQUIRE(a);
      REQUIRE(b);
      CHECK(an.count == b->count - a->count);
      CHECK(an.outer_log == b->outer_log);
      CHECK(an.inner_log < an.outer_log);
    }
  }
}

TEST_CASE("scaling the variable shifts every radius by -log c", "[localization][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto s = exp_plus_sextic();
  auto base = report_of(s, Mode::Sharp);
  for (int t = 0; t < 20; ++t) {
    double lc = u(rng);
    auto q = s.provider.scaled(lc);
    auto rep = report_of({q, certify_window(q, s.polygon.window)}, Mode::Sharp);
    REQUIRE(rep.items.size() == base.items.size());
    for (std::size_t i = 0; i < rep.items.size(); ++i) {
      const auto& a = base.items[i];
      const auto& b = rep.items[i];
      CHECK(a.kind == b.kind);
      CHECK(a.count == b.count);
      CHECK(a.applicable == b.applicable);
      if (std::isfinite(a.outer_log)) CHECK_THAT(b.outer_log, WithinAbs(a.outer_log - lc, 1e-9));
      if (std::isfinite(a.inner_log)) CHECK_THAT(b.inner_log, WithinAbs(a.inner_log - lc, 1e-9));
    }
  }
}

TEST_CASE("matrix quartic: first inclusion disk holds n eigenvalues in every norm", "[localization][matrix]") {
  auto f = quartic_fixture(20, 42);
  auto h = det_handle(f);
  for (MatrixNorm nrm : {MatrixNorm::Two, MatrixNorm::One, MatrixNorm::Inf, MatrixNorm::Fro}) {
    f.norm = nrm;
    auto rep = localize(f, Mode::Sharp);
    CHECK(std::isinf(rep.limits.alpha_minus_log));
    CHECK(std::isinf(rep.limits.alpha_plus_log));
    auto disks = items_of(rep, ItemKind::InclusionDisk);
    REQUIRE_FALSE(disks.empty());
    CHECK(disks[0].count == 20);
    all_items_agree_with_winding(rep, h);
  }
}

TEST_CASE("matrix coefficients: kappa drives the gate and singular ones are skipped", "[localization][matrix]") {
  MatrixLaurentSeries f;
  f.coeffs[0] = Matrix::Identity(2, 2);
  f.coeffs[1] = Matrix::Identity(2, 2) * 100.0;
  f.coeffs[2] = Matrix::Identity(2, 2);
  auto rep = localize(f, Mode::Wide);
  auto disks = items_of(rep, ItemKind::InclusionDisk);
  REQUIRE(disks.size() == 1);
  CHECK(disks[0].count == 2);
  all_items_agree_with_winding(rep, det_handle(f));

  Matrix sing = Matrix::Zero(2, 2);
  sing(0, 0) = 100.0;
  f.coeffs[1] = sing;
  rep = localize(f, Mode::Wide);
  CHECK(items_of(rep, ItemKind::InclusionDisk).empty());
  bool noted = false;
  for (const auto& it : rep.items)
    if (it.kind == ItemKind::ExclusionAnnulus && !it.applicable) noted = it.reason.find("B_1") != std::string::npos;
  CHECK(noted);

  auto k = condition_number(Matrix::Identity(3, 3) * 2.0, MatrixNorm::Fro);
  CHECK(k.defined);
  CHECK_THAT(k.value, WithinRel(3.0, 1e-12));
}

TEST_CASE("an infinite lower tail makes every gap inapplicable", "[localization]") {
  auto p = make_rational_toy();
  auto rep = report_of({p, certify_window(p, {-8, 8})}, Mode::Wide);
  for (const auto& it : rep.items) CHECK_FALSE(it.applicable);
}
