// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0
//
// Eigenvalue localization for matrix-valued Laurent series from the
// tropical roots of their coefficient norms.

#ifndef TROPLAUR_LOCALIZATION_HPP
#define TROPLAUR_LOCALIZATION_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "troplaur/polygon.hpp"
#include "troplaur/series.hpp"

namespace troplaur {

enum class MatrixNorm { One, Two, Inf, Fro };

inline const char* to_string(MatrixNorm n) {
  switch (n) {
    case MatrixNorm::One: return "one";
    case MatrixNorm::Two: return "two";
    case MatrixNorm::Inf: return "inf";
    default: return "fro";
  }
}

inline MatrixNorm parse_norm(const std::string& s) {
  if (s == "one") return MatrixNorm::One;
  if (s == "two") return MatrixNorm::Two;
  if (s == "inf") return MatrixNorm::Inf;
  if (s == "fro") return MatrixNorm::Fro;
  throw std::invalid_argument("unknown norm '" + s + "'");
}

using Matrix = Eigen::MatrixXcd;

struct MatrixLaurentSeries {
  std::map<Index, Matrix> coeffs;
  MatrixNorm norm = MatrixNorm::Two;

  Index n() const { return coeffs.empty() ? 0 : coeffs.begin()->second.rows(); }

  void validate() const {
    if (coeffs.empty()) throw std::invalid_argument("matrix series has no coefficients");
    Index sz = n();
    bool any = false;
    for (const auto& [j, b] : coeffs) {
      if (b.rows() != sz || b.cols() != sz) throw std::invalid_argument("coefficients must be square of equal size");
      if (!b.allFinite()) throw std::invalid_argument("non-finite matrix entry at index " + std::to_string(j));
      any = any || b.norm() > 0;
    }
    if (!any) throw std::invalid_argument("all coefficients are zero");
  }
  std::optional<Index> ell_minus() const {
    for (const auto& [j, b] : coeffs)
      if (b.norm() > 0) return j;
    return std::nullopt;
  }
  std::optional<Index> ell_plus() const {
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      if (it->second.norm() > 0) return it->first;
    return std::nullopt;
  }
  const Matrix* at(Index j) const {
    auto it = coeffs.find(j);
    return it == coeffs.end() ? nullptr : &it->second;
  }
  // F(c*lambda): B_j -> c^j B_j.
  MatrixLaurentSeries scaled(double c) const {
    MatrixLaurentSeries out{{}, norm};
    for (const auto& [j, b] : coeffs) out.coeffs[j] = b * std::pow(c, static_cast<double>(j));
    return out;
  }
};

inline double matrix_norm(const Matrix& b, MatrixNorm nrm, bool* fell_back = nullptr) {
  switch (nrm) {
    case MatrixNorm::One: return b.cwiseAbs().colwise().sum().maxCoeff();
    case MatrixNorm::Inf: return b.cwiseAbs().rowwise().sum().maxCoeff();
    case MatrixNorm::Fro: return b.norm();
    case MatrixNorm::Two: {
      Eigen::JacobiSVD<Matrix> svd(b);
      double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
      if (!std::isfinite(s)) {
        if (fell_back) *fell_back = true;
        return b.norm();
      }
      return s;
    }
  }
  return b.norm();
}

struct Kappa {
  double value = 1.0;
  bool defined = false;
  std::string reason;
};

// ||B|| ||B^-1||. Undefined when sigma_min <= n*eps*sigma_max.
inline Kappa condition_number(const Matrix& b, MatrixNorm nrm) {
  Kappa k;
  if (b.rows() != b.cols() || b.rows() == 0) {
    k.reason = "not square";
    return k;
  }
  Eigen::JacobiSVD<Matrix> svd(b);
  const auto& sv = svd.singularValues();
  double smax = sv(0), smin = sv(sv.size() - 1);
  double thresh = static_cast<double>(b.rows()) * std::numeric_limits<double>::epsilon() * smax;
  if (!(smax > 0) || smin <= thresh) {
    k.reason = "singular coefficient";
    return k;
  }
  k.defined = true;
  if (nrm == MatrixNorm::Two) {
    k.value = smax / smin;
  } else {
    Matrix inv = b.partialPivLu().inverse();
    k.value = matrix_norm(b, nrm) * matrix_norm(inv, nrm);
  }
  k.value = std::max(k.value, 1.0);
  return k;
}

inline CoefficientProvider tropicalize(const MatrixLaurentSeries& f, bool* fell_back = nullptr) {
  f.validate();
  std::map<Index, Coefficient> tab;
  for (const auto& [j, b] : f.coeffs) {
    double v = matrix_norm(b, f.norm, fell_back);
    tab[j] = {v > 0 ? std::log(v) : kNegInf, 1};
  }
  return CoefficientProvider::from_table(std::move(tab));
}

// Roots f <= g of r^2 - (2 + (1-delta)/(delta(1+c))) r + 1/delta.
// f = (1+c) + 2c^2 delta (1+c) / (1 - delta(1+2c+2c^2) + sqrt(D)),
// D = (1-delta)(1-(1+2c)^2 delta): the textbook root formula rearranged to
// avoid cancellation for small delta.
inline std::pair<double, double> key_roots(double delta, double c) {
  if (!(c > 0) || !std::isfinite(c)) throw std::domain_error("key_roots: c must be positive");
  double lim = 1.0 / ((1.0 + 2.0 * c) * (1.0 + 2.0 * c));
  if (!(delta > 0) || delta > lim * (1.0 + 1e-14)) throw std::domain_error("key_roots: delta outside (0, (1+2c)^-2]");
  double d = std::max(0.0, (1.0 - delta) * (1.0 - (1.0 + 2.0 * c) * (1.0 + 2.0 * c) * delta));
  double e = 1.0 - delta * (1.0 + 2.0 * c + 2.0 * c * c);
  double f = (1.0 + c) + 2.0 * c * c * delta * (1.0 + c) / (e + std::sqrt(d));
  double g = 1.0 / (delta * f);
  if (g < f) g = f;
  return {f, g};
}

enum class Mode { Wide, Sharp };

inline const char* to_string(Mode m) { return m == Mode::Wide ? "wide" : "sharp"; }

inline Mode parse_mode(const std::string& s) {
  if (s == "wide") return Mode::Wide;
  if (s == "sharp") return Mode::Sharp;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

struct RootGapData {
  Index k_prev = 0;
  Index k = 0;
  Index k_next = 0;
  double alpha_log = 0.0;
  double alpha_next_log = 0.0;
  double delta = 0.0;
  Kappa kappa_left;
  Kappa kappa_right;
};

enum class ItemKind { ExclusionAnnulus, InclusionDisk, InclusionAnnulus, LowerExclusionDisk, UpperBoundDisk };

inline const char* to_string(ItemKind k) {
  switch (k) {
    case ItemKind::ExclusionAnnulus: return "exclusion_annulus";
    case ItemKind::InclusionDisk: return "inclusion_disk";
    case ItemKind::InclusionAnnulus: return "inclusion_annulus";
    case ItemKind::LowerExclusionDisk: return "lower_exclusion_disk";
    default: return "upper_bound_disk";
  }
}

// Disks have inner_log = -inf. count: eigenvalues minus poles inside the
// disk, or eigenvalues inside the annulus; zero for exclusion annuli. For
// the lower exclusion disk it is the count at zero.
struct ReportItem {
  ItemKind kind = ItemKind::ExclusionAnnulus;
  double inner_log = kNegInf;
  double outer_log = kNegInf;
  Index count = 0;
  bool applicable = true;
  std::string reason;
  int gap = -1;
  int gap_to = -1;
};

struct LocalizationReport {
  Index n = 1;
  Mode mode = Mode::Wide;
  std::vector<ReportItem> items;
  std::vector<RootGapData> gaps;
  AlphaLimits limits;
  bool norm_fallback = false;
};

// Everything the localization theorems read off a series.
struct TropicalPicture {
  NewtonPolygon polygon;
  RootList roots;
  AlphaLimits limits;
  Index n = 1;
  std::optional<Index> ell_minus;
  std::optional<Index> ell_plus;
  std::function<Kappa(Index)> kappa;
};

inline std::vector<RootGapData> gap_data(const TropicalPicture& pic) {
  std::vector<const TropicalRoot*> seg;
  for (const auto& r : pic.roots.roots)
    if (r.kind == RootKind::HullSegment) seg.push_back(&r);
  std::vector<RootGapData> out;
  for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
    const auto& a = *seg[i];
    const auto& b = *seg[i + 1];
    if (a.right_index != b.left_index) continue;
    RootGapData g;
    g.k_prev = a.left_index;
    g.k = a.right_index;
    g.k_next = b.right_index;
    g.alpha_log = a.log_value;
    g.alpha_next_log = b.log_value;
    g.delta = std::exp(a.log_value - b.log_value);
    g.kappa_left = pic.kappa(g.k_prev);
    g.kappa_right = pic.kappa(g.k);
    out.push_back(g);
  }
  return out;
}

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace detail

inline std::vector<ReportItem> boundary_bounds(const TropicalPicture& pic) {
  std::vector<ReportItem> out;
  const TropicalRoot* first = nullptr;
  const TropicalRoot* last = nullptr;
  for (const auto& r : pic.roots.roots) {
    if (r.kind != RootKind::HullSegment) continue;
    if (!first) first = &r;
    last = &r;
  }
  ReportItem lo;
  lo.kind = ItemKind::LowerExclusionDisk;
  if (!pic.ell_minus) {
    lo.applicable = false;
    lo.reason = "ell_minus = -inf";
  } else if (!first) {
    lo.applicable = false;
    lo.reason = "no finite tropical root";
  } else {
    Kappa k = pic.kappa(*pic.ell_minus);
    lo.count = *pic.ell_minus * pic.n;
    if (!k.defined) {
      lo.applicable = false;
      lo.reason = "B_ell_minus: " + k.reason;
    } else {
      lo.outer_log = first->log_value - std::log1p(k.value);
    }
  }
  out.push_back(lo);
  ReportItem hi;
  hi.kind = ItemKind::UpperBoundDisk;
  hi.outer_log = kPosInf;
  if (!pic.ell_plus) {
    hi.applicable = false;
    hi.reason = "ell_plus = +inf";
  } else if (!last) {
    hi.applicable = false;
    hi.reason = "no finite tropical root";
  } else {
    Kappa k = pic.kappa(*pic.ell_plus);
    hi.count = *pic.ell_plus * pic.n;
    if (!k.defined) {
      hi.applicable = false;
      hi.reason = "B_ell_plus: " + k.reason;
    } else {
      hi.outer_log = last->log_value + std::log1p(k.value);
    }
  }
  out.push_back(hi);
  return out;
}

inline LocalizationReport localize(const TropicalPicture& pic, Mode mode) {
  LocalizationReport rep;
  rep.n = pic.n;
  rep.mode = mode;
  rep.limits = pic.limits;
  rep.gaps = gap_data(pic);

  struct Passing {
    int gap;
    double incl;
    double excl_out;
    Index k;
  };
  std::vector<Passing> pass;
  for (std::size_t gi = 0; gi < rep.gaps.size(); ++gi) {
    const auto& g = rep.gaps[gi];
    ReportItem ex;
    ex.kind = ItemKind::ExclusionAnnulus;
    ex.gap = static_cast<int>(gi);
    ex.inner_log = g.alpha_log;
    ex.outer_log = g.alpha_next_log;
    if (!pic.ell_minus) {
      ex.applicable = false;
      ex.reason = "ell_minus = -inf";
      rep.items.push_back(ex);
      continue;
    }
    if (!g.kappa_right.defined) {
      ex.applicable = false;
      ex.reason = "B_" + std::to_string(g.k) + ": " + g.kappa_right.reason;
      rep.items.push_back(ex);
      continue;
    }
    double kap = g.kappa_right.value;
    double gate = 1.0 / ((1.0 + 2.0 * kap) * (1.0 + 2.0 * kap));
    if (!(g.delta <= gate)) {
      ex.applicable = false;
      ex.reason = "delta = " + detail::fmt(g.delta) + " > (1+2kappa)^-2 = " + detail::fmt(gate);
      rep.items.push_back(ex);
      continue;
    }
    double incl, excl_out;
    if (mode == Mode::Wide) {
      double w = std::log1p(2.0 * kap);
      incl = g.alpha_log + w;
      excl_out = g.alpha_next_log - w;
    } else {
      auto [f, gg] = key_roots(g.delta, kap);
      incl = g.alpha_log + std::log(f);
      excl_out = g.alpha_log + std::log(gg);
    }
    std::string clip;
    if (excl_out > rep.limits.alpha_plus_log) {
      excl_out = rep.limits.alpha_plus_log;
      clip = "outer radius clipped to alpha_+inf";
    }
    if (incl < rep.limits.alpha_minus_log) {
      incl = rep.limits.alpha_minus_log;
      clip = "inner radius clipped to alpha_-inf";
    }
    ReportItem disk;
    disk.kind = ItemKind::InclusionDisk;
    disk.gap = static_cast<int>(gi);
    disk.outer_log = incl;
    disk.count = pic.n * g.k;
    disk.reason = clip;
    rep.items.push_back(disk);
    ex.inner_log = incl;
    ex.outer_log = excl_out;
    ex.reason = clip;
    rep.items.push_back(ex);
    pass.push_back({static_cast<int>(gi), incl, excl_out, g.k});
  }
  for (std::size_t a = 0; a < pass.size(); ++a) {
    for (std::size_t b = a + 1; b < pass.size(); ++b) {
      ReportItem an;
      an.kind = ItemKind::InclusionAnnulus;
      an.gap = pass[a].gap;
      an.gap_to = pass[b].gap;
      an.inner_log = pass[a].excl_out;
      an.outer_log = pass[b].incl;
      an.count = pic.n * (pass[b].k - pass[a].k);
      rep.items.push_back(an);
    }
  }
  for (auto& it : boundary_bounds(pic)) rep.items.push_back(std::move(it));
  auto key = [](const ReportItem& it) { return std::isfinite(it.inner_log) ? it.inner_log : it.outer_log; };
  std::stable_sort(rep.items.begin(), rep.items.end(), [&](const ReportItem& x, const ReportItem& y) {
    double kx = key(x), ky = key(y);
    if (kx != ky) return kx < ky;
    return static_cast<int>(x.kind) > static_cast<int>(y.kind);
  });
  return rep;
}

// Scalar series: kappa = 1 wherever the coefficient is nonzero.
inline TropicalPicture scalar_picture(const NewtonPolygon& poly, const CoefficientProvider& p) {
  TropicalPicture pic;
  pic.polygon = poly;
  pic.roots = roots_from_polygon(poly, p);
  pic.limits = alpha_limits(pic.roots, p);
  pic.n = 1;
  if (p.support().lo) pic.ell_minus = p.first_nonzero();
  if (p.support().hi) pic.ell_plus = p.last_nonzero();
  pic.kappa = [p](Index j) {
    Kappa k;
    if (p.log_abs(j) == kNegInf) {
      k.reason = "zero coefficient";
    } else {
      k.defined = true;
    }
    return k;
  };
  return pic;
}

inline TropicalPicture matrix_picture(const MatrixLaurentSeries& f, bool* fell_back = nullptr) {
  CoefficientProvider p = tropicalize(f, fell_back);
  TropicalPicture pic;
  pic.polygon = certify_window(p, {*f.ell_minus(), *f.ell_plus()});
  pic.roots = roots_from_polygon(pic.polygon, p);
  pic.limits = alpha_limits(pic.roots, p);
  pic.n = f.n();
  pic.ell_minus = f.ell_minus();
  pic.ell_plus = f.ell_plus();
  auto nrm = f.norm;
  auto coeffs = std::make_shared<const std::map<Index, Matrix>>(f.coeffs);
  pic.kappa = [coeffs, nrm](Index j) {
    auto it = coeffs->find(j);
    if (it == coeffs->end()) return Kappa{1.0, false, "zero coefficient"};
    return condition_number(it->second, nrm);
  };
  return pic;
}

inline LocalizationReport localize(const MatrixLaurentSeries& f, Mode mode) {
  bool fb = false;
  auto rep = localize(matrix_picture(f, &fb), mode);
  rep.norm_fallback = fb;
  return rep;
}

}  // namespace troplaur

#endif  // TROPLAUR_LOCALIZATION_HPP
