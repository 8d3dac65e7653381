// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TROPLAUR_GENERATORS_HPP
#define TROPLAUR_GENERATORS_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "troplaur/series.hpp"

namespace troplaur {

namespace detail {

inline double log_factorial(Index k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// H_k. Direct summation for small k, asymptotic expansion otherwise; the
// expansion is accurate to ~1e-20 beyond k = 64.
inline double harmonic(Index k) {
  if (k <= 0) return 0.0;
  if (k <= 64) {
    long double s = 0.0L;
    for (Index i = k; i >= 1; --i) s += 1.0L / static_cast<long double>(i);
    return static_cast<double>(s);
  }
  long double x = static_cast<long double>(k);
  long double x2 = x * x;
  long double h = std::log(x) + 0.57721566490153286060651209L + 1.0L / (2.0L * x) - 1.0L / (12.0L * x2) +
                  1.0L / (120.0L * x2 * x2) - 1.0L / (252.0L * x2 * x2 * x2);
  return static_cast<double>(h);
}

// sup_{k>=1} (k*log_r - log k!), attained at k = floor(R) or floor(R)+1.
inline double exp_family(double log_r) {
  double r = std::exp(log_r);
  double best = kNegInf;
  Index k0 = std::max<Index>(1, static_cast<Index>(std::floor(std::min(r, 1e15))));
  for (Index k : {k0, k0 + 1}) best = std::max(best, static_cast<double>(k) * log_r - log_factorial(k));
  return best;
}

inline double param(const CoefficientProvider::Params& p, const std::string& key, double dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

inline std::optional<Index> truncation(const CoefficientProvider::Params& p) {
  auto it = p.find("n");
  if (it == p.end()) return std::nullopt;
  if (it->second < 0 || it->second != std::floor(it->second)) throw std::invalid_argument("truncation n must be a nonnegative integer");
  return static_cast<Index>(it->second);
}

}  // namespace detail

// b_j = 1/j! for j >= 0. Optional "n" truncates to j <= n.
inline CoefficientProvider make_exp(CoefficientProvider::Params params = {}) {
  auto n = detail::truncation(params);
  auto p = CoefficientProvider::from_function(
      "exp", params, [](Index j) { return Coefficient{-detail::log_factorial(j), 1}; }, IndexBounds{0, n});
  if (!n) {
    p = p.with_asymptote(Side::Right, {kPosInf, std::nullopt});
    p = p.with_bound_family(Side::Right, [](double log_r) -> std::optional<double> { return detail::exp_family(log_r); });
  }
  return p;
}

// b_j = 1/|j|!, with b_0 taken from "b0" (default 1). Optional "n" truncates
// to |j| <= n.
inline CoefficientProvider make_two_sided_exp(CoefficientProvider::Params params = {}) {
  auto n = detail::truncation(params);
  double b0 = detail::param(params, "b0", 1.0);
  if (b0 < 0) throw std::invalid_argument("b0 must be nonnegative");
  double log_b0 = b0 == 0 ? kNegInf : std::log(b0);
  IndexBounds sup;
  if (n) sup = {-*n, *n};
  auto p = CoefficientProvider::from_function(
      "two-sided-exp", params,
      [log_b0](Index j) { return j == 0 ? Coefficient{log_b0, 1} : Coefficient{-detail::log_factorial(j < 0 ? -j : j), 1}; },
      sup);
  if (!n) {
    p = p.with_asymptote(Side::Right, {kPosInf, std::nullopt});
    p = p.with_asymptote(Side::Left, {kNegInf, std::nullopt});
    p = p.with_bound_family(Side::Right, [](double log_r) -> std::optional<double> { return detail::exp_family(log_r); });
    p = p.with_bound_family(Side::Left, [](double log_r) -> std::optional<double> { return detail::exp_family(-log_r); });
  }
  return p;
}

// b_j = e^{H_j} for j >= 1, b_0 = 0. Radius 1 is not attained (xi = +inf).
inline CoefficientProvider make_harmonic_exp(CoefficientProvider::Params params = {}) {
  auto p = CoefficientProvider::from_function(
      "harmonic-exp", params, [](Index j) { return Coefficient{detail::harmonic(j), 1}; }, IndexBounds{1, std::nullopt});
  p = p.with_asymptote(Side::Right, {std::nullopt, kPosInf});
  // H_k + k*log_r is concave in k; its maximum sits at k = floor(-1/log_r).
  return p.with_bound_family(Side::Right, [](double log_r) -> std::optional<double> {
    if (!(log_r < 0)) return std::nullopt;
    double kstar = std::floor(-1.0 / log_r);
    if (kstar > 1e15) return std::nullopt;
    Index k0 = std::max<Index>(1, static_cast<Index>(kstar));
    double best = kNegInf;
    for (Index k : {k0, k0 + 1}) best = std::max(best, detail::harmonic(k) + static_cast<double>(k) * log_r);
    return best;
  });
}

// b_j = 2*3^{j+2} for j < 0, 3*2^{-j} for j >= 0; the Laurent expansion of
// 15/((1-3x)(x-2)) up to sign. Roots 1/3 and 2, both of infinite multiplicity.
inline CoefficientProvider make_rational_toy(CoefficientProvider::Params params = {}) {
  const double l2 = std::numbers::ln2;
  const double l3 = std::log(3.0);
  auto p = CoefficientProvider::from_function(
      "rational-toy", params,
      [l2, l3](Index j) {
        double x = static_cast<double>(j);
        return j < 0 ? Coefficient{l2 + (x + 2.0) * l3, 1} : Coefficient{l3 - x * l2, 1};
      },
      IndexBounds{});
  Envelope e;
  e.left = DecayBound{std::log(18.0), -l3};
  e.right = DecayBound{l3, l2};
  p = p.with_envelope(e);
  p = p.with_asymptote(Side::Left, {-l3, std::log(18.0)});
  p = p.with_asymptote(Side::Right, {l2, l3});
  return p;
}

// b_j = e^{(j-1)/j} for j >= 1: radius 1, attained (xi = 1).
inline CoefficientProvider make_saturating(CoefficientProvider::Params params = {}) {
  auto p = CoefficientProvider::from_function(
      "saturating", params,
      [](Index j) { return Coefficient{static_cast<double>(j - 1) / static_cast<double>(j), 1}; },
      IndexBounds{1, std::nullopt});
  Envelope e;
  e.right = DecayBound{1.0, 0.0};
  p = p.with_envelope(e);
  return p.with_asymptote(Side::Right, {0.0, 1.0});
}

inline CoefficientProvider make_generator(const std::string& id, const CoefficientProvider::Params& params = {}) {
  if (id == "exp") return make_exp(params);
  if (id == "two-sided-exp") return make_two_sided_exp(params);
  if (id == "harmonic-exp") return make_harmonic_exp(params);
  if (id == "rational-toy") return make_rational_toy(params);
  if (id == "saturating") return make_saturating(params);
  throw std::invalid_argument("unknown generator '" + id + "'");
}

}  // namespace troplaur

#endif  // TROPLAUR_GENERATORS_HPP
