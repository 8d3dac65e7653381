// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TROPLAUR_HULL_HPP
#define TROPLAUR_HULL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "troplaur/series.hpp"

namespace troplaur {

struct HullPoint {
  Index j = 0;
  double y = 0.0;
};

// Points within this band of a chord count as on it (collinear).
inline double collinear_tol(double a, double b, double c) {
  return 1e-12 * std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
}

// Height of p above the line through a and c (a.j != c.j).
inline double height_above(HullPoint a, HullPoint c, HullPoint p) {
  double t = static_cast<double>(p.j - a.j) / static_cast<double>(c.j - a.j);
  return p.y - (a.y + (c.y - a.y) * t);
}

inline bool strictly_above(HullPoint a, HullPoint c, HullPoint p) {
  return height_above(a, c, p) > collinear_tol(a.y, c.y, p.y);
}

inline bool on_line(HullPoint a, HullPoint c, HullPoint p) {
  return std::abs(height_above(a, c, p)) <= collinear_tol(a.y, c.y, p.y);
}

inline double slope(HullPoint a, HullPoint b) { return (b.y - a.y) / static_cast<double>(b.j - a.j); }

struct UpperHull {
  std::vector<HullPoint> vertices;
  // Points that sat above a chord by less than the collinearity band.
  std::size_t collapsed = 0;
};

// Monotone-chain upper hull. Input sorted by j, finite y only.
inline UpperHull upper_hull(const std::vector<HullPoint>& pts) {
  UpperHull h;
  auto& v = h.vertices;
  for (const HullPoint& p : pts) {
    if (!v.empty() && p.j <= v.back().j) throw std::invalid_argument("hull points must be strictly increasing in j");
    while (v.size() >= 2) {
      const HullPoint& a = v[v.size() - 2];
      const HullPoint& b = v.back();
      double hgt = height_above(a, p, b);
      if (hgt > collinear_tol(a.y, p.y, b.y)) break;
      if (hgt > 0) ++h.collapsed;
      v.pop_back();
    }
    v.push_back(p);
  }
  return h;
}

}  // namespace troplaur

#endif  // TROPLAUR_HULL_HPP
