#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "troplaur/generators.hpp"
#include "troplaur/polygon.hpp"
#include "troplaur/update.hpp"

using namespace troplaur;
using Catch::Matchers::WithinAbs;

namespace {

using Table = std::map<Index, Coefficient>;

// Reference combination, in plain doubles.
Coefficient combine_ref(Coefficient old, Index /*j*/, double log_g, int sign, Combine c) {
  if (c == Combine::Replace) return {log_g, sign};
  if (c == Combine::Max) return log_g > old.log_abs ? Coefficient{log_g, sign} : old;
  double a = old.log_abs == kNegInf ? 0.0 : old.sign * std::exp(old.log_abs);
  double s = a + sign * std::exp(log_g);
  if (s == 0.0) return {kNegInf, 1};
  return {std::log(std::abs(s)), s < 0 ? -1 : 1};
}

NewtonPolygon reference(const Table& t) {
  std::vector<std::pair<Index, LogCoeff>> pts;
  for (const auto& [j, c] : t) pts.emplace_back(j, LogCoeff(c.log_abs));
  return hull_finite(pts);
}

Table random_table(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(1, 30);
  std::uniform_int_distribution<Index> j(-20, 20);
  std::uniform_real_distribution<double> y(-10.0, 10.0);
  std::bernoulli_distribution neg(0.3);
  Table t;
  int k = n(rng);
  while (static_cast<int>(t.size()) < k) t[j(rng)] = {y(rng), neg(rng) ? -1 : 1};
  return t;
}

void same_polygon(const NewtonPolygon& a, const NewtonPolygon& b, double tol) {
  REQUIRE(a.indices() == b.indices());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) CHECK_THAT(a.vertices[i].log_coeff, WithinAbs(b.vertices[i].log_coeff, tol));
}

}  // namespace

TEST_CASE("monomial update equals the hull of the updated table", "[update][property]") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<Index> j(-25, 25);
  std::uniform_real_distribution<double> g(-12.0, 12.0);
  std::bernoulli_distribution neg(0.3);
  for (Combine c : {Combine::Replace, Combine::Max, Combine::Add}) {
    for (int t = 0; t < 400; ++t) {
      Table tab = random_table(rng);
      auto p = CoefficientProvider::from_table(tab);
      auto poly = certify_window(p, {*p.support().lo, *p.support().hi});
      MonomialUpdate u{j(rng), g(rng), neg(rng) ? -1 : 1};
      Coefficient nc = combine_ref(tab.count(u.index) ? tab[u.index] : Coefficient{}, u.index, u.log_gamma, u.sign, c);
      if (nc.log_abs == kNegInf) continue;
      auto r = update_with_monomial(poly, p, u, c);
      tab[u.index] = nc;
      same_polygon(r.polygon, reference(tab), 1e-12);
      CHECK(r.outcome.kind == OutcomeKind::FiniteDelta);
    }
  }
}

TEST_CASE("finite scans stay within removed + 2 comparisons per side", "[update][property]") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<Index> j(-20, 20);
  std::uniform_real_distribution<double> g(-5.0, 15.0);
  for (int t = 0; t < 500; ++t) {
    Table tab = random_table(rng);
    auto p = CoefficientProvider::from_table(tab);
    auto poly = certify_window(p, {*p.support().lo, *p.support().hi});
    MonomialUpdate u{j(rng), g(rng), 1};
    auto r = update_with_monomial(poly, p, u, Combine::Max);
    std::size_t rl = 0, rr = 0;
    for (Index x : r.outcome.removed) (x < u.index ? rl : x > u.index ? rr : rl) += x != u.index;
    CHECK(r.outcome.comparisons_left <= rl + 2);
    CHECK(r.outcome.comparisons_right <= rr + 2);
  }
}

TEST_CASE("update lists are order independent", "[update][property]") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<Index> j(-30, 30);
  std::uniform_real_distribution<double> g(-8.0, 8.0);
  std::uniform_int_distribution<int> len(1, 12);
  for (Combine c : {Combine::Replace, Combine::Max, Combine::Add}) {
    for (int t = 0; t < 100; ++t) {
      Table tab = random_table(rng);
      auto p = CoefficientProvider::from_table(tab);
      auto poly = certify_window(p, {*p.support().lo, *p.support().hi});
      std::vector<MonomialUpdate> ups;
      std::map<Index, bool> used;
      int n = len(rng);
      while (static_cast<int>(ups.size()) < n) {
        Index k = j(rng);
        if (used[k]) continue;
        used[k] = true;
        ups.push_back({k, g(rng), 1});
      }
      auto a = update_with_laurent_polynomial(poly, p, ups, c);
      std::shuffle(ups.begin(), ups.end(), rng);
      auto b = update_with_laurent_polynomial(poly, p, ups, c);
      REQUIRE(a.polygon.indices() == b.polygon.indices());
      for (std::size_t i = 0; i < a.polygon.vertices.size(); ++i)
        CHECK(a.polygon.vertices[i].log_coeff == b.polygon.vertices[i].log_coeff);
    }
  }
}

TEST_CASE("repeating a dominated update changes nothing", "[update]") {
  auto p = make_exp();
  auto poly = certify_window(p, {0, 30});
  MonomialUpdate u{4, 3.0, 1};
  auto once = update_with_monomial(poly, p, u, Combine::Max);
  auto twice = update_with_monomial(once.polygon, once.provider, u, Combine::Max);
  CHECK(once.polygon.indices() == twice.polygon.indices());
  CHECK(twice.outcome.removed.empty());
  CHECK(same_shape(once.polygon, twice.polygon));
}

TEST_CASE("duplicate indices are summed before updating", "[update]") {
  auto m = merge_updates({{5, -14.0, 1}, {2, 1.0, 1}, {5, -20.0, 1}});
  REQUIRE(m.size() == 2);
  CHECK(m[0].index == 5);
  CHECK_THAT(m[0].log_gamma, WithinAbs(std::log(std::exp(-14.0) + std::exp(-20.0)), 1e-14));
  CHECK_THROWS(merge_updates({{1, 0.0, 1}, {1, 0.0, -1}}));
}

TEST_CASE("saturating series with gamma = e at 0 truncates on the right", "[update]") {
  auto p = make_saturating();
  auto poly = certify_window(p, {1, 64});
  auto r = update_with_monomial(poly, p, {0, 1.0, 1}, Combine::Replace);
  CHECK(r.outcome.kind == OutcomeKind::InfiniteTruncation);
  CHECK(r.outcome.truncated_right);
  CHECK_FALSE(r.outcome.truncated_left);
  CHECK(r.outcome.kept_vertex == 0);
  auto rl = roots_from_polygon(r.polygon, r.provider);
  REQUIRE(rl.roots.size() == 1);
  CHECK(rl.roots[0].infinite);
  CHECK(rl.roots[0].side == Side::Right);
  CHECK(rl.roots[0].log_value == 0.0);
}

TEST_CASE("a small update at 0 keeps the saturating polygon finite", "[update]") {
  auto p = make_saturating();
  auto poly = certify_window(p, {1, 64});
  auto r = update_with_monomial(poly, p, {0, -5.0, 1}, Combine::Replace);
  CHECK(r.outcome.kind == OutcomeKind::FiniteDelta);
  CHECK(r.polygon.vertices.front().index == 0);
  CHECK(r.polygon.find(1).has_value());
}

TEST_CASE("a dominant centre coefficient truncates both sides of rational-toy", "[update]") {
  auto p = make_rational_toy();
  auto poly = certify_window(p, {-8, 8});
  auto r = update_with_monomial(poly, p, {0, 10.0, 1});
  CHECK(r.outcome.kind == OutcomeKind::InfiniteTruncation);
  CHECK(r.outcome.truncated_left);
  CHECK(r.outcome.truncated_right);
  CHECK(r.polygon.indices() == std::vector<Index>{0});
  auto rl = roots_from_polygon(r.polygon, r.provider);
  REQUIRE(rl.roots.size() == 2);
  CHECK_THAT(rl.roots[0].log_value, WithinAbs(-std::log(3.0), 1e-12));
  CHECK_THAT(rl.roots[1].log_value, WithinAbs(std::log(2.0), 1e-12));
}

TEST_CASE("updates past the window rebuild, decreases re-hull locally", "[update]") {
  auto p = make_exp();
  auto poly = certify_window(p, {0, 40});
  auto far = update_with_monomial(poly, p, {50, 0.0, 1});
  CHECK(far.outcome.rebuilt);
  auto ref = certify_window(p.with_override(50, {0.0, 1}), far.polygon.window);
  CHECK(same_shape(far.polygon, ref));
  // 50 is a hull point but its right neighbour lies past the window.
  CHECK(far.polygon.indices() == std::vector<Index>{0, 50, 101});
  CHECK(far.polygon.vertices.front().certified());
  CHECK(far.polygon.right_open);

  auto low = update_with_monomial(poly, p, {5, -40.0, 1});
  CHECK(low.outcome.removed == std::vector<Index>{5});
  auto ref2 = certify_window(p.with_override(5, {-40.0, 1}), {0, 40});
  CHECK(same_shape(low.polygon, ref2));
  CHECK_THROWS(update_with_monomial(poly, p, {3, std::nan(""), 1}));
}

TEST_CASE("combine policy names", "[update]") {
  CHECK(parse_combine("replace") == Combine::Replace);
  CHECK(parse_combine("max") == Combine::Max);
  CHECK(parse_combine("add") == Combine::Add);
  CHECK_THROWS(parse_combine("sum"));
  CHECK(std::string(to_string(Combine::Add)) == "add");
}
