// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0
//
// Newton polygon of f + p from the polygon of f, p a Laurent polynomial:
// generalized Graham scan with a finite termination test on each side.

#ifndef TROPLAUR_UPDATE_HPP
#define TROPLAUR_UPDATE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "troplaur/polygon.hpp"
#include "troplaur/series.hpp"

namespace troplaur {

// replace: b_j := gamma. max: larger modulus wins. add: b_j + gamma with
// signs, the coefficient of the classical sum f + p.
enum class Combine { Replace, Max, Add };

inline const char* to_string(Combine c) {
  switch (c) {
    case Combine::Replace: return "replace";
    case Combine::Max: return "max";
    default: return "add";
  }
}

inline Combine parse_combine(const std::string& s) {
  if (s == "replace") return Combine::Replace;
  if (s == "max") return Combine::Max;
  if (s == "add") return Combine::Add;
  throw std::invalid_argument("unknown combine policy '" + s + "'");
}

struct MonomialUpdate {
  Index index = 0;
  double log_gamma = 0.0;
  int sign = 1;
};

enum class OutcomeKind { FiniteDelta, InfiniteTruncation };

struct UpdateOutcome {
  OutcomeKind kind = OutcomeKind::FiniteDelta;
  std::vector<Index> removed;
  // Vertices uncovered when a coefficient on the hull went down.
  std::vector<Index> added;
  bool inserted = false;
  bool truncated_left = false;
  bool truncated_right = false;
  Index kept_vertex = 0;
  std::size_t comparisons_left = 0;
  std::size_t comparisons_right = 0;
  // The scan ran past the known window and the polygon was recomputed.
  bool rebuilt = false;
};

struct UpdateResult {
  NewtonPolygon polygon;
  CoefficientProvider provider;
  UpdateOutcome outcome;
};

struct UpdateResults {
  NewtonPolygon polygon;
  CoefficientProvider provider;
  std::vector<UpdateOutcome> outcomes;
};

class UndecidableUpdate : public std::runtime_error {
 public:
  UndecidableUpdate(Side s, const std::string& what) : std::runtime_error(what), side_(s) {}
  Side side() const { return side_; }

 private:
  Side side_;
};

inline Coefficient combine_coefficients(Coefficient old, const MonomialUpdate& u, Combine policy) {
  Coefficient g{u.log_gamma, u.sign};
  switch (policy) {
    case Combine::Replace: return g;
    case Combine::Max: return g.log_abs > old.log_abs ? g : old;
    case Combine::Add: {
      if (old.log_abs == kNegInf) return g;
      double m = std::max(old.log_abs, g.log_abs);
      double v = old.sign * std::exp(old.log_abs - m) + g.sign * std::exp(g.log_abs - m);
      if (v == 0.0) return {kNegInf, 1};
      return {m + std::log(std::abs(v)), v > 0 ? 1 : -1};
    }
  }
  return g;
}

namespace detail {

// Height of the polygon at j; -inf where no coefficient can sit, nullopt
// where the polygon does not know (beyond an open end).
inline std::optional<double> hull_height(const NewtonPolygon& poly, const CoefficientProvider& p, Index j) {
  const auto& v = poly.vertices;
  if (j < v.front().index) {
    if (poly.left_ray) return v.front().log_coeff + poly.left_ray->slope * static_cast<double>(j - v.front().index);
    if (p.support().extends_beyond(poly.window, Side::Left) || j < poly.window.lo) {
      if (p.support().lo && j < *p.support().lo) return kNegInf;
      return std::nullopt;
    }
    return kNegInf;
  }
  if (j > v.back().index) {
    if (poly.right_ray) return v.back().log_coeff + poly.right_ray->slope * static_cast<double>(j - v.back().index);
    if (p.support().extends_beyond(poly.window, Side::Right) || j > poly.window.hi) {
      if (p.support().hi && j > *p.support().hi) return kNegInf;
      return std::nullopt;
    }
    return kNegInf;
  }
  auto it = std::lower_bound(v.begin(), v.end(), j, [](const PolygonVertex& a, Index x) { return a.index < x; });
  if (it->index == j) return it->log_coeff;
  const auto& b = *it;
  const auto& a = *(it - 1);
  double t = static_cast<double>(j - a.index) / static_cast<double>(b.index - a.index);
  return a.log_coeff + (b.log_coeff - a.log_coeff) * t;
}

inline NewtonPolygon rebuild(const NewtonPolygon& poly, const CoefficientProvider& np, Index j0) {
  IndexRange w{std::min(poly.window.lo, j0), std::max(poly.window.hi, j0)};
  Index sz = w.size();
  if (np.support().extends_beyond(w, Side::Left)) w.lo -= sz;
  if (np.support().extends_beyond(w, Side::Right)) w.hi += sz;
  if (np.support().lo) w.lo = std::max(w.lo, std::min(*np.support().lo, w.lo + sz));
  if (np.support().hi) w.hi = std::min(w.hi, std::max(*np.support().hi, w.hi - sz));
  return certify_window(np, w);
}

struct SideDecision {
  bool truncate = false;
  double log_alpha = 0.0;
  LimitStatus status;
};

// The scan on side s terminates iff
// xi_s = limsup (log b_j + j log alpha_s) > log gamma + j0 log alpha_s.
inline SideDecision termination_test(const NewtonPolygon& poly, const CoefficientProvider& p, Side s, Index j0,
                                     double new_log) {
  SideDecision d;
  if ((s == Side::Right ? poly.right_ray : poly.left_ray)) return d;  // handled by hull_height
  if (p.support().bounded(s)) return d;
  EndpointProbe probe = detect_infinite_root(p, s, poly);
  if (!std::isfinite(probe.log_alpha)) return d;
  d.log_alpha = probe.log_alpha;
  d.status = probe.status;
  double rhs = new_log + static_cast<double>(j0) * probe.log_alpha;
  const auto& a = p.asymptote(s);
  if (probe.status.exact && a && a->xi) {
    d.truncate = *a->xi <= rhs;
    return d;
  }
  // Estimate xi over the window on side s of j0.
  double xi = kNegInf;
  double spread = 0.0;
  for (Index j = poly.window.lo; j <= poly.window.hi; ++j) {
    if (s == Side::Right ? j <= j0 : j >= j0) continue;
    double v = p.log_abs(j);
    if (v == kNegInf) continue;
    xi = std::max(xi, v + static_cast<double>(j) * probe.log_alpha);
    spread = std::max(spread, std::abs(static_cast<double>(j - j0)));
  }
  double tol = probe.status.tolerance * spread;
  if (xi > rhs + tol) return d;
  throw UndecidableUpdate(s, std::string("cannot decide termination on the ") + to_string(s) +
                                 " side: window sup " + std::to_string(xi) + " vs " + std::to_string(rhs) +
                                 " within tolerance " + std::to_string(tol));
}

}  // namespace detail

inline UpdateResult update_with_monomial(const NewtonPolygon& poly, const CoefficientProvider& p,
                                         const MonomialUpdate& u, Combine policy = Combine::Replace) {
  if (!std::isfinite(u.log_gamma)) throw std::invalid_argument("log_gamma must be finite");
  if (poly.vertices.empty()) throw std::invalid_argument("empty polygon");
  const Index j0 = u.index;
  Coefficient old = p.coefficient(j0);
  Coefficient neu = combine_coefficients(old, u, policy);
  CoefficientProvider np = p.with_override(j0, neu);
  UpdateResult res{poly, np, {}};
  UpdateOutcome& out = res.outcome;
  NewtonPolygon& q = res.polygon;
  q.window = {std::min(q.window.lo, j0), std::max(q.window.hi, j0)};

  auto rebuilt = [&]() {
    NewtonPolygon r = detail::rebuild(poly, np, j0);
    for (const auto& v : poly.vertices)
      if (!r.find(v.index)) out.removed.push_back(v.index);
    out.inserted = r.find(j0).has_value();
    out.rebuilt = true;
    res.polygon = r;
    return res;
  };

  if (neu.log_abs <= old.log_abs) {
    if (neu.log_abs == old.log_abs) return res;
    auto at = poly.find(j0);
    if (!at) return res;
    std::size_t i = *at;
    bool first = i == 0, last = i + 1 == poly.vertices.size();
    if ((first && poly.left_ray) || (last && poly.right_ray)) return rebuilt();
    Index lo = first ? poly.window.lo : poly.vertices[i - 1].index;
    Index hi = last ? poly.window.hi : poly.vertices[i + 1].index;
    auto local = upper_hull(detail::window_points(np, {lo, hi})).vertices;
    VertexStatus st = VertexStatus::Certified;
    if (!first) st = weakest(st, poly.vertices[i - 1].status);
    if (!last) st = weakest(st, poly.vertices[i + 1].status);
    std::vector<PolygonVertex> vs(poly.vertices.begin(), poly.vertices.begin() + static_cast<std::ptrdiff_t>(i) - (first ? 0 : 1));
    for (const auto& h : local) {
      auto prev = poly.find(h.j);
      vs.push_back({h.j, h.y, prev ? poly.vertices[*prev].status : st});
      if (!prev) out.added.push_back(h.j);
    }
    vs.insert(vs.end(), poly.vertices.begin() + static_cast<std::ptrdiff_t>(i) + (last ? 1 : 2), poly.vertices.end());
    if (vs.empty()) throw std::invalid_argument("update leaves no nonzero coefficient in the window");
    if (std::none_of(local.begin(), local.end(), [&](const HullPoint& h) { return h.j == j0; })) out.removed.push_back(j0);
    q.vertices = std::move(vs);
    return res;
  }

  auto h = detail::hull_height(poly, p, j0);
  if (!h) return rebuilt();
  HullPoint node{j0, neu.log_abs};
  if (*h != kNegInf && node.y <= *h + collinear_tol(node.y, *h, 0.0)) return res;

  // Existing vertices on each side of the new node.
  std::vector<PolygonVertex> left, right;
  for (const auto& v : poly.vertices) {
    if (v.index < j0) left.push_back(v);
    if (v.index > j0) right.push_back(v);
  }
  if (poly.find(j0)) out.removed.push_back(j0);

  auto scan = [&](Side s, std::vector<PolygonVertex>& side_v, std::size_t& comparisons, std::optional<Ray>& ray,
                  bool& truncated) -> bool {
    // side_v ordered outward from the node.
    auto dec = detail::termination_test(poly, p, s, j0, node.y);
    if (dec.truncate) {
      for (const auto& v : side_v) out.removed.push_back(v.index);
      side_v.clear();
      ray = Ray{-dec.log_alpha, dec.status};
      truncated = true;
      return true;
    }
    std::size_t i = 0;
    while (i < side_v.size()) {
      HullPoint cur = side_v[i].point();
      HullPoint nxt;
      if (i + 1 < side_v.size()) {
        nxt = side_v[i + 1].point();
      } else if (ray) {
        Index step = s == Side::Right ? 1 : -1;
        nxt = {cur.j + step, cur.y + ray->slope * static_cast<double>(step)};
      } else if (p.support().extends_beyond(poly.window, s)) {
        return false;
      } else {
        break;
      }
      ++comparisons;
      bool keep = s == Side::Right ? strictly_above(node, nxt, cur) : strictly_above(nxt, node, cur);
      if (keep) break;
      out.removed.push_back(cur.j);
      ++i;
      if (i == side_v.size() && ray) truncated = true;
    }
    side_v.erase(side_v.begin(), side_v.begin() + static_cast<std::ptrdiff_t>(i));
    return true;
  };

  std::reverse(left.begin(), left.end());
  std::optional<Ray> lray = poly.left_ray, rray = poly.right_ray;
  if (!scan(Side::Right, right, out.comparisons_right, rray, out.truncated_right)) return rebuilt();
  if (!scan(Side::Left, left, out.comparisons_left, lray, out.truncated_left)) return rebuilt();
  std::reverse(left.begin(), left.end());

  VertexStatus st = VertexStatus::Certified;
  if (!left.empty()) st = weakest(st, left.back().status);
  if (!right.empty()) st = weakest(st, right.front().status);
  std::vector<PolygonVertex> vs = left;
  vs.push_back({j0, node.y, st});
  vs.insert(vs.end(), right.begin(), right.end());
  q.vertices = std::move(vs);
  q.left_ray = lray;
  q.right_ray = rray;
  if (out.truncated_left) q.left_open = false;
  if (out.truncated_right) q.right_open = false;
  if (left.empty() && !lray) q.left_open = p.support().extends_beyond(poly.window, Side::Left) && poly.left_open;
  if (right.empty() && !rray) q.right_open = p.support().extends_beyond(poly.window, Side::Right) && poly.right_open;
  out.inserted = true;
  out.kept_vertex = j0;
  if (out.truncated_left || out.truncated_right) out.kind = OutcomeKind::InfiniteTruncation;
  std::sort(out.removed.begin(), out.removed.end());
  out.removed.erase(std::unique(out.removed.begin(), out.removed.end()), out.removed.end());
  return res;
}

// Terms at the same index are summed first: p is a polynomial, its
// coefficient at j is the sum of the listed monomials there.
inline std::vector<MonomialUpdate> merge_updates(const std::vector<MonomialUpdate>& ups) {
  std::vector<MonomialUpdate> out;
  std::map<Index, std::size_t> pos;
  for (const auto& u : ups) {
    auto it = pos.find(u.index);
    if (it == pos.end()) {
      pos[u.index] = out.size();
      out.push_back(u);
      continue;
    }
    MonomialUpdate& m = out[it->second];
    Coefficient c = combine_coefficients({m.log_gamma, m.sign}, u, Combine::Add);
    if (c.log_abs == kNegInf) throw std::invalid_argument("update terms at one index cancel exactly");
    m.log_gamma = c.log_abs;
    m.sign = c.sign;
  }
  return out;
}

inline UpdateResults update_with_laurent_polynomial(const NewtonPolygon& poly, const CoefficientProvider& p,
                                                    const std::vector<MonomialUpdate>& updates,
                                                    Combine policy = Combine::Replace) {
  UpdateResults r{poly, p, {}};
  for (const auto& u : merge_updates(updates)) {
    auto step = update_with_monomial(r.polygon, r.provider, u, policy);
    r.polygon = std::move(step.polygon);
    r.provider = std::move(step.provider);
    r.outcomes.push_back(std::move(step.outcome));
  }
  return r;
}

}  // namespace troplaur

#endif  // TROPLAUR_UPDATE_HPP
