// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0
//
// Node count for the trapezoidal rule on a circle, from the filter
// b0(z) = 1/(1 - (z/r)^N) it applies to the spectrum.

#ifndef TROPLAUR_QUADRATURE_HPP
#define TROPLAUR_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace troplaur {

struct FilterQuery {
  double contour_radius_log = 0.0;
  double nearest_excluded_log = 0.0;
  double epsilon = 1e-15;
};

// |1/(1 - exp(N (z_log - r_log)))| = 1/|expm1(t)|.
inline double filter_magnitude(const FilterQuery& q, std::int64_t n, double z_log) {
  if (n < 1) throw std::invalid_argument("node count must be at least 1");
  double d = z_log - q.contour_radius_log;
  if (d == 0.0) throw std::domain_error("z on the contour is a pole of the filter");
  double t = static_cast<double>(n) * d;
  if (t > 700.0) return std::exp(-t);
  return 1.0 / std::abs(std::expm1(t));
}

// Smallest N with filter_magnitude(q, N, R_ex) <= epsilon, by direct
// evaluation of the exact filter.
inline std::int64_t advise_nodes(const FilterQuery& q) {
  if (!(q.nearest_excluded_log > q.contour_radius_log)) throw std::invalid_argument("need R_ex > r");
  if (!(q.epsilon > 0 && q.epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
  double gap = q.nearest_excluded_log - q.contour_radius_log;
  auto ok = [&](std::int64_t n) { return filter_magnitude(q, n, q.nearest_excluded_log) <= q.epsilon; };
  double guess = std::ceil(std::log(1.0 / q.epsilon) / gap);
  std::int64_t n = guess > 1e15 ? std::int64_t{1} << 50 : std::max<std::int64_t>(1, static_cast<std::int64_t>(guess));
  while (!ok(n)) ++n;
  while (n > 1 && ok(n - 1)) --n;
  return n;
}

}  // namespace troplaur

#endif  // TROPLAUR_QUADRATURE_HPP
