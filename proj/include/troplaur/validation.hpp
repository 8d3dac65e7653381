// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent oracles: brute-force hulls, argument-principle counts,
// Newton refinement from a grid.

#ifndef TROPLAUR_VALIDATION_HPP
#define TROPLAUR_VALIDATION_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "troplaur/hull.hpp"
#include "troplaur/localization.hpp"
#include "troplaur/polygon.hpp"
#include "troplaur/series.hpp"

namespace troplaur {

using cplx = std::complex<double>;

// O(n^3) upper hull: (i, j) is an edge iff nothing lies strictly above the
// line through them and no point outside [i, j] lies on it.
inline NewtonPolygon brute_hull(const std::vector<std::pair<Index, LogCoeff>>& points) {
  if (points.size() > 2000) throw std::invalid_argument("brute_hull: more than 2000 points");
  std::vector<HullPoint> pts;
  for (const auto& [j, c] : points)
    if (!c.is_zero()) pts.push_back({j, c.value()});
  if (pts.empty()) throw std::invalid_argument("brute_hull: no finite point");
  std::sort(pts.begin(), pts.end(), [](HullPoint a, HullPoint b) { return a.j < b.j; });
  std::set<Index> verts;
  if (pts.size() == 1) verts.insert(pts[0].j);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      bool edge = true;
      for (std::size_t k = 0; k < pts.size() && edge; ++k) {
        if (k == i || k == j) continue;
        if (strictly_above(pts[i], pts[j], pts[k])) edge = false;
        else if ((k < i || k > j) && on_line(pts[i], pts[j], pts[k])) edge = false;
      }
      if (edge) {
        verts.insert(pts[i].j);
        verts.insert(pts[j].j);
      }
    }
  }
  NewtonPolygon poly;
  for (const auto& p : pts)
    if (verts.count(p.j)) poly.vertices.push_back({p.j, p.y, VertexStatus::Certified});
  poly.window = {points.front().first, points.back().first};
  return poly;
}

inline std::vector<std::pair<Index, LogCoeff>> sample(const CoefficientProvider& p, IndexRange w) {
  std::vector<std::pair<Index, LogCoeff>> out;
  for (Index j = w.lo; j <= w.hi; ++j) out.emplace_back(j, p.at(j));
  return out;
}

// A function for the argument principle. logderiv, when set, returns f'/f
// directly (used for det F via tr(F^-1 F')).
struct ScalarFunctionHandle {
  std::string name;
  std::function<cplx(cplx)> f;
  std::function<cplx(cplx)> df;
  std::function<cplx(cplx)> logderiv;

  cplx log_derivative(cplx z) const { return logderiv ? logderiv(z) : df(z) / f(z); }
};

inline ScalarFunctionHandle laurent_polynomial(const std::map<Index, cplx>& c, std::string name = "laurent") {
  auto tab = std::make_shared<const std::map<Index, cplx>>(c);
  ScalarFunctionHandle h;
  h.name = std::move(name);
  h.f = [tab](cplx z) {
    cplx s = 0;
    for (const auto& [j, a] : *tab) s += a * std::pow(z, static_cast<int>(j));
    return s;
  };
  h.df = [tab](cplx z) {
    cplx s = 0;
    for (const auto& [j, a] : *tab)
      if (j != 0) s += static_cast<double>(j) * a * std::pow(z, static_cast<int>(j - 1));
    return s;
  };
  return h;
}

namespace detail {

// sum_{j>=1} b_j z^j for |z| < 1, until terms are negligible.
inline ScalarFunctionHandle power_series(std::function<double(Index)> log_b, std::string name) {
  auto eval = [log_b](cplx z, bool deriv) {
    double r = std::abs(z);
    if (!(r < 1)) throw std::domain_error("power series evaluated outside its disk");
    cplx s = 0;
    int small = 0;
    for (Index j = 1; j < 50000000; ++j) {
      double lm = log_b(j) + static_cast<double>(deriv ? j - 1 : j) * std::log(r);
      cplx t = std::exp(lm) * std::polar(1.0, static_cast<double>(deriv ? j - 1 : j) * std::arg(z));
      if (deriv) t *= static_cast<double>(j);
      s += t;
      if (std::abs(t) <= 1e-18 * std::abs(s)) {
        if (++small > 50) break;
      } else {
        small = 0;
      }
    }
    return s;
  };
  ScalarFunctionHandle h;
  h.name = std::move(name);
  h.f = [eval](cplx z) { return eval(z, false); };
  h.df = [eval](cplx z) { return eval(z, true); };
  return h;
}

}  // namespace detail

// Classical function whose coefficients the provider tropicalizes, with
// signs, including any overridden coefficients.
inline ScalarFunctionHandle function_of(const CoefficientProvider& p) {
  ScalarFunctionHandle base;
  const std::string& id = p.id();
  const auto& params = p.params();
  bool truncated = params.count("n") > 0;
  auto base_coeff = [&p](Index j) -> cplx {
    Coefficient c = p.base_coefficient(j);
    return c.log_abs == kNegInf ? cplx(0) : cplx(c.sign * std::exp(c.log_abs));
  };
  if (id == "explicit") {
    std::map<Index, cplx> c;
    for (const auto& [j, v] : p.table())
      if (v.log_abs != kNegInf) c[j] = base_coeff(j);
    base = laurent_polynomial(c, "explicit");
  } else if (id == "exp" || id == "two-sided-exp") {
    double b0 = id == "exp" ? 1.0 : (params.count("b0") ? params.at("b0") : 1.0);
    if (truncated) {
      Index n = static_cast<Index>(params.at("n"));
      std::map<Index, cplx> c;
      for (Index j = (id == "exp" ? 0 : -n); j <= n; ++j) {
        double v = j == 0 ? b0 : std::exp(-std::lgamma(static_cast<double>(j < 0 ? -j : j) + 1.0));
        if (v != 0) c[j] = v;
      }
      base = laurent_polynomial(c, id);
    } else if (id == "exp") {
      base.f = [](cplx z) { return std::exp(z); };
      base.df = [](cplx z) { return std::exp(z); };
    } else {
      base.f = [b0](cplx z) { return std::exp(z) + std::exp(1.0 / z) - 2.0 + b0; };
      base.df = [](cplx z) { return std::exp(z) - std::exp(1.0 / z) / (z * z); };
    }
  } else if (id == "rational-toy") {
    // 18/(3z-1) + 6/(2-z), expanded on 1/3 < |z| < 2.
    base.f = [](cplx z) { return 18.0 / (3.0 * z - 1.0) + 6.0 / (2.0 - z); };
    base.df = [](cplx z) { return -54.0 / ((3.0 * z - 1.0) * (3.0 * z - 1.0)) + 6.0 / ((2.0 - z) * (2.0 - z)); };
  } else if (id == "harmonic-exp" || id == "saturating") {
    base = detail::power_series([p](Index j) { return p.base_coefficient(j).log_abs; }, id);
  } else {
    throw std::invalid_argument("no closed form for provider '" + id + "'");
  }
  base.name = id;

  // Overrides enter as a Laurent-polynomial correction.
  std::map<Index, cplx> delta;
  double ls = p.log_scale();
  for (const auto& [j, c] : p.overrides()) {
    double unscaled = c.log_abs == kNegInf ? kNegInf : c.log_abs - static_cast<double>(j) * ls;
    cplx neu = unscaled == kNegInf ? cplx(0) : cplx(c.sign * std::exp(unscaled));
    delta[j] = neu - base_coeff(j);
  }
  ScalarFunctionHandle corr = laurent_polynomial(delta);
  ScalarFunctionHandle out;
  out.name = base.name;
  double c = std::exp(ls);
  out.f = [base, corr, c](cplx z) { return base.f(c * z) + corr.f(c * z); };
  out.df = [base, corr, c](cplx z) { return c * (base.df(c * z) + corr.df(c * z)); };
  return out;
}

struct WindingError : std::runtime_error {
  double radius_log;
  WindingError(double r, const std::string& w) : std::runtime_error(w), radius_log(r) {}
};

namespace detail {

inline cplx pairwise_sum(const std::vector<cplx>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    cplx s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace detail

// Winding number of f around |z| = exp(radius_log): mean of z f'(z)/f(z)
// over N equispaced nodes, N doubled until the rounded value repeats with
// residual below 0.25.
inline Index count_zeros_minus_poles(const ScalarFunctionHandle& f, double radius_log, Index nodes = 64) {
  nodes = std::max<Index>(nodes, 64);
  const double r = std::exp(radius_log);
  std::optional<Index> prev;
  for (Index n = nodes; n <= (Index{1} << 16); n *= 2) {
    std::vector<cplx> terms(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
      cplx z = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
      terms[static_cast<std::size_t>(k)] = z * f.log_derivative(z);
    }
    cplx mean = detail::pairwise_sum(terms, 0, terms.size()) / static_cast<double>(n);
    double val = mean.real();
    if (!std::isfinite(val)) break;
    Index cnt = static_cast<Index>(std::llround(val));
    double resid = std::abs(val - static_cast<double>(cnt));
    if (prev && *prev == cnt && resid < 0.25) return cnt;
    prev = resid < 0.25 ? std::optional<Index>(cnt) : std::nullopt;
  }
  throw WindingError(radius_log, "winding count did not converge on |z| = " + std::to_string(r));
}

// det F winding via tr(F^-1 F'), which never forms det F itself.
inline ScalarFunctionHandle det_handle(const MatrixLaurentSeries& F) {
  auto coeffs = std::make_shared<const std::map<Index, Matrix>>(F.coeffs);
  ScalarFunctionHandle h;
  h.name = "det";
  h.logderiv = [coeffs](cplx z) {
    Index n = coeffs->begin()->second.rows();
    Matrix a = Matrix::Zero(n, n), da = Matrix::Zero(n, n);
    for (const auto& [j, b] : *coeffs) {
      a += b * std::pow(z, static_cast<int>(j));
      if (j != 0) da += b * (static_cast<double>(j) * std::pow(z, static_cast<int>(j - 1)));
    }
    Matrix x = a.partialPivLu().solve(da);
    return x.trace();
  };
  return h;
}

struct ItemCheck {
  Index expected = 0;
  Index counted = 0;
  bool ok() const { return expected == counted; }
};

// Zeros minus poles in the region of one report item. Radii are nudged into
// the open region so roots on a boundary circle do not stall the count.
inline ItemCheck check_item(const ScalarFunctionHandle& h, const ReportItem& it, double nudge = 1e-9) {
  auto wind = [&](double r) { return count_zeros_minus_poles(h, r); };
  ItemCheck c;
  switch (it.kind) {
    case ItemKind::ExclusionAnnulus:
      c.counted = wind(it.outer_log - nudge) - wind(it.inner_log + nudge);
      break;
    case ItemKind::InclusionAnnulus:
      c.expected = it.count;
      c.counted = wind(it.outer_log + nudge) - wind(it.inner_log - nudge);
      break;
    case ItemKind::LowerExclusionDisk:
      c.expected = it.count;
      c.counted = wind(it.outer_log - nudge);
      break;
    case ItemKind::InclusionDisk:
    case ItemKind::UpperBoundDisk:
      c.expected = it.count;
      c.counted = wind(it.outer_log + nudge);
      break;
  }
  return c;
}

// Newton from a polar grid in the open annulus; deduplicated, cross-checked
// against the winding count.
inline std::vector<cplx> refine_roots(const ScalarFunctionHandle& f, double inner_log, double outer_log,
                                      int grid_density = 24) {
  std::vector<cplx> found;
  const double rin = std::exp(inner_log), rout = std::exp(outer_log);
  const int nr = std::max(2, grid_density), na = 4 * std::max(2, grid_density);
  for (int a = 0; a < nr; ++a) {
    double rad = std::exp(inner_log + (outer_log - inner_log) * (a + 0.5) / nr);
    for (int b = 0; b < na; ++b) {
      cplx z = std::polar(rad, 2.0 * std::numbers::pi * (b + 0.25) / na);
      bool conv = false;
      for (int it = 0; it < 50; ++it) {
        cplx fz = f.f(z), dz = f.df(z);
        if (!std::isfinite(std::abs(fz)) || !std::isfinite(std::abs(dz)) || dz == cplx(0)) break;
        cplx step = fz / dz;
        z -= step;
        if (std::abs(step) <= 1e-12 * std::max(1.0, std::abs(z))) {
          conv = true;
          break;
        }
      }
      if (!conv) continue;
      double m = std::abs(z);
      if (!(m > rin && m < rout)) continue;
      bool dup = std::any_of(found.begin(), found.end(),
                             [&](cplx w) { return std::abs(w - z) <= 1e-8 * std::max(1.0, std::abs(z)); });
      if (!dup) found.push_back(z);
    }
  }
  Index expect = count_zeros_minus_poles(f, outer_log) - count_zeros_minus_poles(f, inner_log);
  if (static_cast<Index>(found.size()) != expect)
    throw std::runtime_error("refine_roots: found " + std::to_string(found.size()) + " roots, winding says " +
                             std::to_string(expect));
  std::sort(found.begin(), found.end(), [](cplx x, cplx y) {
    return std::abs(x) != std::abs(y) ? std::abs(x) < std::abs(y) : std::arg(x) < std::arg(y);
  });
  return found;
}

// Max relative mismatch between df and a central difference of f.
inline double derivative_mismatch(const ScalarFunctionHandle& f, const std::vector<cplx>& at) {
  double worst = 0;
  for (cplx z : at) {
    double h = 1e-6 * std::max(1.0, std::abs(z));
    cplx fd = (f.f(z + h) - f.f(z - h)) / (2.0 * h);
    cplx d = f.df(z);
    worst = std::max(worst, std::abs(fd - d) / std::max(1e-300, std::abs(d)));
  }
  return worst;
}

}  // namespace troplaur

#endif  // TROPLAUR_VALIDATION_HPP
