// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0
//
// Newton polygons of tropical Laurent series: finite hulls, certified
// windows, tropical roots and the limits alpha_{+-inf}.

#ifndef TROPLAUR_POLYGON_HPP
#define TROPLAUR_POLYGON_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "troplaur/hull.hpp"
#include "troplaur/series.hpp"

namespace troplaur {

// Ordered from strongest to weakest.
enum class VertexStatus { Certified = 0, Estimated = 1, Open = 2 };

inline const char* to_string(VertexStatus s) {
  switch (s) {
    case VertexStatus::Certified: return "certified";
    case VertexStatus::Estimated: return "estimated";
    default: return "open";
  }
}

inline VertexStatus weakest(VertexStatus a, VertexStatus b) { return a > b ? a : b; }

struct PolygonVertex {
  Index index = 0;
  double log_coeff = 0.0;
  VertexStatus status = VertexStatus::Certified;

  bool certified() const { return status == VertexStatus::Certified; }
  HullPoint point() const { return {index, log_coeff}; }
  friend bool operator==(const PolygonVertex&, const PolygonVertex&) = default;
};

struct LimitStatus {
  bool exact = true;
  double tolerance = 0.0;
  friend bool operator==(const LimitStatus&, const LimitStatus&) = default;
};

// Infinite segment leaving an end vertex: the domain endpoint is attained.
struct Ray {
  double slope = 0.0;
  LimitStatus status;
  friend bool operator==(const Ray&, const Ray&) = default;
};

struct NewtonPolygon {
  std::vector<PolygonVertex> vertices;
  bool left_open = false;
  bool right_open = false;
  IndexRange window{0, -1};
  std::optional<Ray> left_ray;
  std::optional<Ray> right_ray;
  std::size_t collapsed = 0;
  std::vector<std::string> notes;

  std::optional<std::size_t> find(Index j) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), j,
                               [](const PolygonVertex& v, Index x) { return v.index < x; });
    if (it == vertices.end() || it->index != j) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }
  std::vector<Index> indices() const {
    std::vector<Index> out;
    for (const auto& v : vertices) out.push_back(v.index);
    return out;
  }
};

inline bool same_shape(const NewtonPolygon& a, const NewtonPolygon& b) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i)
    if (a.vertices[i].index != b.vertices[i].index || a.vertices[i].log_coeff != b.vertices[i].log_coeff) return false;
  return true;
}

// Upper hull of the finite points; every vertex certified.
inline NewtonPolygon hull_finite(const std::vector<std::pair<Index, LogCoeff>>& points) {
  std::vector<HullPoint> pts;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].first <= points[i - 1].first) throw std::invalid_argument("points must be sorted by index");
    if (!points[i].second.is_zero()) pts.push_back({points[i].first, points[i].second.value()});
  }
  if (pts.empty()) throw std::invalid_argument("hull of an all-zero point set");
  UpperHull h = upper_hull(pts);
  NewtonPolygon poly;
  for (const auto& p : h.vertices) poly.vertices.push_back({p.j, p.y, VertexStatus::Certified});
  poly.window = {points.front().first, points.back().first};
  poly.collapsed = h.collapsed;
  return poly;
}

struct CertifyOptions {
  // Cap on tail indices evaluated for one pair.
  Index max_tail_checks = Index{1} << 22;
  // Heuristic mode gives up after this many doublings.
  int max_doublings = 14;
};

namespace detail {

inline std::vector<HullPoint> window_points(const CoefficientProvider& p, IndexRange w) {
  std::vector<HullPoint> pts;
  for (Index j = w.lo; j <= w.hi; ++j) {
    double v = p.log_abs(j);
    if (v != kNegInf) pts.push_back({j, v});
  }
  return pts;
}

// One side's tail seen as a right tail; the left side is handled by
// reflecting indices (j -> -j), which maps the inner radius R1 to 1/R1.
struct TailView {
  const CoefficientProvider* p;
  Side side;

  double log_b(Index k) const { return p->log_abs(side == Side::Right ? k : -k); }
  std::optional<double> bound(double log_r) const {
    return side == Side::Right ? p->bound_for(Side::Right, log_r) : p->bound_for(Side::Left, -log_r);
  }
  std::optional<double> fixed_log_r() const {
    const auto& e = p->envelope().on(side);
    if (!e) return std::nullopt;
    return side == Side::Right ? e->log_r : -e->log_r;
  }
};

// Envelope must hold on every window point of its side.
inline bool bound_holds_on(const TailView& t, IndexRange w, double log_c, double log_r) {
  for (Index k = std::max<Index>(w.lo, 1); k <= w.hi; ++k) {
    double v = t.log_b(k);
    double lim = log_c - static_cast<double>(k) * log_r;
    if (v > lim + collinear_tol(v, lim, 0.0)) return false;
  }
  return true;
}

// Right-tail certification of the pair (a, c), c the right vertex, in
// reflected coordinates for the left side. Window w is in the same frame.
inline bool certify_pair(const TailView& t, HullPoint a, HullPoint c, IndexRange w, const CertifyOptions& opt,
                         std::string& why) {
  double s = slope(a, c);
  std::vector<double> candidates;
  if (auto fr = t.fixed_log_r()) {
    candidates.push_back(*fr);
  } else {
    for (double d = 1.0; d > 1e-12; d *= 0.5) candidates.push_back(-s + d);
    candidates.push_back(-s);
  }
  for (double log_r : candidates) {
    auto log_c = t.bound(log_r);
    if (!log_c) continue;
    if (!bound_holds_on(t, w, *log_c, log_r)) {
      why = "envelope violated inside the window";
      return false;
    }
    double di = static_cast<double>(c.j - a.j);
    double den = di * log_r + c.y - a.y;
    double tol = collinear_tol(c.y, a.y, di * log_r);
    if (den < -tol) {
      why = "segment slope below -log R";
      continue;
    }
    double kmax;
    if (den <= tol) {
      // Parallel to the envelope line: certified iff the chord is not below it.
      double lim = *log_c - static_cast<double>(c.j) * log_r;
      if (c.y + collinear_tol(c.y, lim, 0.0) < lim) {
        why = "chord parallel to and below the envelope";
        continue;
      }
      kmax = static_cast<double>(w.hi);
    } else {
      double num = di * *log_c + static_cast<double>(a.j) * c.y - static_cast<double>(c.j) * a.y;
      kmax = std::floor(num / den);
    }
    kmax = std::max(kmax, 0.0);
    if (kmax - static_cast<double>(w.hi) > static_cast<double>(opt.max_tail_checks)) {
      why = "tail check range too long";
      continue;
    }
    bool ok = true;
    for (Index k = w.hi + 1; k <= static_cast<Index>(kmax); ++k) {
      HullPoint q{k, t.log_b(k)};
      if (q.y == kNegInf) continue;
      if (strictly_above(a, c, q)) {
        ok = false;
        why = "tail point above the chord at index " + std::to_string(t.side == Side::Right ? k : -k);
        break;
      }
    }
    if (ok) return true;
    return false;
  }
  if (why.empty()) why = "no admissible envelope radius";
  return false;
}

inline bool has_bound_source(const CoefficientProvider& p, Side s) { return p.has_bound_family(s); }

// Window-doubling stability test. Returns the set of vertex indices of the
// window hull whose presence and value stayed fixed in the inner region
// across two doublings; empty if never stable.
inline std::set<Index> heuristic_stable(const CoefficientProvider& p, IndexRange w, bool grow_left, bool grow_right,
                                        const CertifyOptions& opt) {
  auto clamp = [&](IndexRange r) {
    if (p.support().lo) r.lo = std::max(r.lo, std::min(*p.support().lo, w.lo));
    if (p.support().hi) r.hi = std::min(r.hi, std::max(*p.support().hi, w.hi));
    return r;
  };
  auto grow = [&](IndexRange r) {
    Index sz = r.size();
    if (grow_left) r.lo -= sz;
    if (grow_right) r.hi += sz;
    return clamp(r);
  };
  IndexRange cur = w;
  for (int it = 0; it < opt.max_doublings; ++it) {
    Index sz = cur.size();
    IndexRange inner = cur;
    if (grow_left && grow_right) {
      inner = {cur.lo + sz / 4, cur.hi - sz / 4};
    } else if (grow_right) {
      inner = {cur.lo, cur.lo + sz / 2};
    } else {
      inner = {cur.hi - sz / 2, cur.hi};
    }
    IndexRange w1 = grow(cur), w2 = grow(w1);
    if (w2.size() > (Index{1} << 22)) break;
    auto restrict_to = [&](IndexRange r) {
      std::vector<HullPoint> out;
      for (const auto& v : upper_hull(window_points(p, r)).vertices)
        if (inner.contains(v.j)) out.push_back(v);
      return out;
    };
    auto h0 = restrict_to(cur), h1 = restrict_to(w1), h2 = restrict_to(w2);
    auto same = [](const std::vector<HullPoint>& x, const std::vector<HullPoint>& y) {
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].j != y[i].j || x[i].y != y[i].y) return false;
      return true;
    };
    if (same(h0, h1) && same(h1, h2)) {
      std::set<Index> stable;
      for (const auto& v : h0) stable.insert(v.j);
      return stable;
    }
    cur = w1;
  }
  return {};
}

}  // namespace detail

// Hull of the window, with every consecutive pair certified against the
// infinite series where the decay envelope allows it.
inline NewtonPolygon certify_window(const CoefficientProvider& p, IndexRange w, const CertifyOptions& opt = {}) {
  if (w.hi < w.lo) throw std::invalid_argument("empty window");
  auto pts = detail::window_points(p, w);
  if (pts.empty()) throw std::invalid_argument("window contains no nonzero coefficient");
  UpperHull h = upper_hull(pts);
  NewtonPolygon poly;
  poly.window = w;
  poly.collapsed = h.collapsed;
  const auto& v = h.vertices;
  const std::size_t m = v.size();
  const std::size_t nseg = m - 1;
  std::vector<VertexStatus> seg(nseg, VertexStatus::Certified);
  bool tail[2] = {p.support().extends_beyond(w, Side::Left), p.support().extends_beyond(w, Side::Right)};
  bool need_heuristic[2] = {false, false};

  for (Side side : {Side::Left, Side::Right}) {
    int si = side == Side::Left ? 0 : 1;
    if (!tail[si]) continue;
    std::vector<VertexStatus> st(nseg, VertexStatus::Open);
    if (detail::has_bound_source(p, side) && nseg > 0) {
      detail::TailView tv{&p, side};
      IndexRange rw = side == Side::Right ? w : IndexRange{-w.hi, -w.lo};
      std::string why;
      // Walk inward from the boundary; once a pair holds, all inner pairs
      // hold by convexity.
      for (std::size_t step = 0; step < nseg; ++step) {
        std::size_t s = side == Side::Right ? nseg - 1 - step : step;
        HullPoint a = v[s], c = v[s + 1];
        if (side == Side::Left) {
          a = {-v[s + 1].j, v[s + 1].y};
          c = {-v[s].j, v[s].y};
        }
        if (detail::certify_pair(tv, a, c, rw, opt, why)) {
          if (side == Side::Right)
            for (std::size_t q = 0; q <= s; ++q) st[q] = VertexStatus::Certified;
          else
            for (std::size_t q = s; q < nseg; ++q) st[q] = VertexStatus::Certified;
          break;
        }
      }
      if (!why.empty()) poly.notes.push_back(std::string(to_string(side)) + ": " + why);
    } else {
      poly.notes.push_back(std::string(to_string(side)) + ": no envelope, heuristic mode");
    }
    if (std::any_of(st.begin(), st.end(), [](VertexStatus x) { return x != VertexStatus::Certified; }))
      need_heuristic[si] = true;
    for (std::size_t q = 0; q < nseg; ++q) seg[q] = weakest(seg[q], st[q]);
  }

  if (need_heuristic[0] || need_heuristic[1]) {
    auto stable = detail::heuristic_stable(p, w, need_heuristic[0], need_heuristic[1], opt);
    for (std::size_t q = 0; q < nseg; ++q) {
      if (seg[q] == VertexStatus::Open && stable.count(v[q].j) && stable.count(v[q + 1].j))
        seg[q] = VertexStatus::Estimated;
    }
    poly.notes.push_back(stable.empty() ? "heuristic: window hull not stable" : "heuristic: inner hull stable");
  }

  for (std::size_t i = 0; i < m; ++i) {
    VertexStatus s = VertexStatus::Certified;
    if (i == 0 && tail[0]) s = VertexStatus::Open;
    if (i + 1 == m && tail[1]) s = VertexStatus::Open;
    if (i > 0) s = weakest(s, seg[i - 1]);
    if (i + 1 < m) s = weakest(s, seg[i]);
    poly.vertices.push_back({v[i].j, v[i].y, s});
  }
  poly.left_open = tail[0] && !poly.vertices.front().certified();
  poly.right_open = tail[1] && !poly.vertices.back().certified();
  return poly;
}

enum class ProbeKind { NotPresent, Root, Limit };

// What the tail on one side says about alpha_{+-inf}. Root: the domain
// endpoint is attained and is an infinite-multiplicity root. Limit: the
// value is alpha_{+-inf} but not a root (or membership undecided).
struct EndpointProbe {
  ProbeKind kind = ProbeKind::NotPresent;
  double log_alpha = 0.0;
  LimitStatus status;
  std::string note;
};

namespace detail {

// -slope of the outermost segment of the hull over w on side s.
inline std::optional<double> outer_root(const CoefficientProvider& p, IndexRange w, Side s) {
  auto h = upper_hull(window_points(p, w)).vertices;
  if (h.size() < 2) return std::nullopt;
  return s == Side::Right ? -slope(h[h.size() - 2], h.back()) : -slope(h[0], h[1]);
}

}  // namespace detail

inline EndpointProbe detect_infinite_root(const CoefficientProvider& p, Side side, const NewtonPolygon& poly) {
  EndpointProbe r;
  const double far = side == Side::Right ? kPosInf : kNegInf;
  const auto& ray = side == Side::Right ? poly.right_ray : poly.left_ray;
  if (ray) {
    r.kind = ProbeKind::Root;
    r.log_alpha = -ray->slope;
    r.status = ray->status;
    r.note = "ray";
    return r;
  }
  if (p.support().bounded(side)) {
    r.log_alpha = far;
    r.note = "bounded support";
    return r;
  }
  const auto& a = p.asymptote(side);
  if (a && a->log_alpha) {
    r.log_alpha = *a->log_alpha;
    if (!std::isfinite(*a->log_alpha)) {
      r.note = "infinite radius";
      return r;
    }
    if (a->xi) {
      r.kind = *a->xi < kPosInf ? ProbeKind::Root : ProbeKind::Limit;
    } else {
      r.kind = ProbeKind::Limit;
      r.note = "endpoint membership unknown";
    }
    return r;
  }
  IndexRange w = poly.window;
  auto est = detail::outer_root(p, w, side);
  if (!est) {
    r.kind = ProbeKind::NotPresent;
    r.log_alpha = far;
    r.status = {false, kPosInf};
    r.note = "window too small to estimate";
    return r;
  }
  Index half = w.size() / 2;
  IndexRange hw = side == Side::Right ? IndexRange{w.lo, w.lo + std::max<Index>(half, 1)}
                                      : IndexRange{w.hi - std::max<Index>(half, 1), w.hi};
  auto prev = detail::outer_root(p, hw, side);
  r.log_alpha = *est;
  r.status = {false, prev ? std::abs(*est - *prev) : kPosInf};
  if (a && a->xi && *a->xi < kPosInf) {
    r.kind = ProbeKind::Root;
  } else {
    r.kind = ProbeKind::Limit;
    if (!(a && a->xi)) r.note = "endpoint membership undecided";
  }
  return r;
}

enum class RootKind { HullSegment, ZeroRoot, DomainEndpoint };

struct TropicalRoot {
  double log_value = 0.0;
  Index multiplicity = 0;
  bool infinite = false;
  RootKind kind = RootKind::HullSegment;
  Index left_index = 0;
  Index right_index = 0;
  Side side = Side::Right;
  bool certified = true;
};

struct RootList {
  std::vector<TropicalRoot> roots;
  EndpointProbe left;
  EndpointProbe right;
};

inline RootList roots_from_polygon(const NewtonPolygon& poly, const CoefficientProvider& p) {
  if (poly.vertices.empty()) throw std::invalid_argument("empty polygon");
  RootList out;
  out.left = detect_infinite_root(p, Side::Left, poly);
  out.right = detect_infinite_root(p, Side::Right, poly);

  std::vector<TropicalRoot> seg;
  for (std::size_t i = 0; i + 1 < poly.vertices.size(); ++i) {
    const auto& a = poly.vertices[i];
    const auto& b = poly.vertices[i + 1];
    TropicalRoot t;
    t.log_value = -slope(a.point(), b.point());
    t.multiplicity = b.index - a.index;
    t.left_index = a.index;
    t.right_index = b.index;
    t.certified = a.certified() && b.certified();
    seg.push_back(t);
  }
  // Window segments lying on an attained endpoint's ray are that ray.
  auto same = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); };
  std::size_t first = 0, last = seg.size();
  if (out.left.kind == ProbeKind::Root && !poly.left_ray)
    while (first < last && same(seg[first].log_value, out.left.log_alpha)) ++first;
  if (out.right.kind == ProbeKind::Root && !poly.right_ray)
    while (last > first && same(seg[last - 1].log_value, out.right.log_alpha)) --last;

  if (p.support().lo) {
    auto f = p.first_nonzero();
    if (f && *f >= 1) {
      TropicalRoot z;
      z.log_value = kNegInf;
      z.multiplicity = *f;
      z.kind = RootKind::ZeroRoot;
      z.left_index = 0;
      z.right_index = *f;
      out.roots.push_back(z);
    }
  }
  auto endpoint = [](const EndpointProbe& e, Side s, Index at) {
    TropicalRoot t;
    t.log_value = e.log_alpha;
    t.infinite = true;
    t.kind = RootKind::DomainEndpoint;
    t.side = s;
    t.left_index = t.right_index = at;
    t.certified = e.status.exact;
    return t;
  };
  if (out.left.kind == ProbeKind::Root) out.roots.push_back(endpoint(out.left, Side::Left, poly.vertices.front().index));
  for (std::size_t i = first; i < last; ++i) out.roots.push_back(seg[i]);
  if (out.right.kind == ProbeKind::Root) out.roots.push_back(endpoint(out.right, Side::Right, poly.vertices.back().index));
  return out;
}

struct AlphaLimits {
  double alpha_minus_log = kNegInf;
  double alpha_plus_log = kPosInf;
  LimitStatus minus_status;
  LimitStatus plus_status;

  DomainInterval domain(bool lower_closed, bool upper_closed) const {
    return {alpha_minus_log, alpha_plus_log, lower_closed && std::isfinite(alpha_minus_log),
            upper_closed && std::isfinite(alpha_plus_log)};
  }
};

// alpha_{+-inf}; these are log R1 and log R2 of the classical series.
inline AlphaLimits alpha_limits(const RootList& roots, const CoefficientProvider& p) {
  AlphaLimits a;
  auto side_value = [&](const EndpointProbe& e, Side s, double& val, LimitStatus& st) {
    if (p.support().bounded(s) && e.kind != ProbeKind::Root) {
      val = s == Side::Right ? kPosInf : kNegInf;
      st = {};
      return;
    }
    val = e.log_alpha;
    st = e.status;
  };
  side_value(roots.left, Side::Left, a.alpha_minus_log, a.minus_status);
  side_value(roots.right, Side::Right, a.alpha_plus_log, a.plus_status);
  return a;
}

}  // namespace troplaur

#endif  // TROPLAUR_POLYGON_HPP
