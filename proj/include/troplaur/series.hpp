// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0
//
// Log-domain tropical Laurent series: coefficients, providers, evaluation.

#ifndef TROPLAUR_SERIES_HPP
#define TROPLAUR_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace troplaur {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

using Index = std::int64_t;

// log|b_j|; -inf encodes a zero coefficient.
class LogCoeff {
 public:
  constexpr LogCoeff() noexcept = default;
  explicit LogCoeff(double v) : value_(v) {
    if (std::isnan(v) || v == kPosInf)
      throw std::domain_error("log-coefficient must be finite or -inf");
  }
  static constexpr LogCoeff zero() noexcept { return LogCoeff(); }

  constexpr double value() const noexcept { return value_; }
  constexpr bool is_zero() const noexcept { return value_ == kNegInf; }

  friend constexpr bool operator==(LogCoeff a, LogCoeff b) noexcept { return a.value_ == b.value_; }

 private:
  double value_ = kNegInf;
};

enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

// Closed finite index window [lo, hi].
struct IndexRange {
  Index lo = 0;
  Index hi = 0;

  Index size() const { return hi - lo + 1; }
  bool contains(Index j) const { return lo <= j && j <= hi; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// Support hint; nullopt means unbounded on that side.
struct IndexBounds {
  std::optional<Index> lo;
  std::optional<Index> hi;

  bool contains(Index j) const { return (!lo || *lo <= j) && (!hi || j <= *hi); }
  bool bounded(Side s) const { return s == Side::Left ? lo.has_value() : hi.has_value(); }
  // True when the support reaches past the window on side s.
  bool extends_beyond(const IndexRange& w, Side s) const {
    return s == Side::Left ? (!lo || *lo < w.lo) : (!hi || *hi > w.hi);
  }
};

// Domain of convergence in the log variable.
struct DomainInterval {
  double lower = kNegInf;
  double upper = kPosInf;
  bool lower_closed = false;
  bool upper_closed = false;
};

// log b_j <= log_c - j*log_r, for j > 0 on the right and j < 0 on the left.
// On the left log_r is the log of the inner radius R1.
struct DecayBound {
  double log_c = 0.0;
  double log_r = 0.0;
};

struct Envelope {
  std::optional<DecayBound> left;
  std::optional<DecayBound> right;

  std::optional<DecayBound>& on(Side s) { return s == Side::Left ? left : right; }
  const std::optional<DecayBound>& on(Side s) const { return s == Side::Left ? left : right; }
};

// Tail behaviour known in closed form. log_alpha is alpha_{+-inf} when
// pinned exactly; xi = limsup (log b_j + j*log alpha) along that side.
struct SideAsymptote {
  std::optional<double> log_alpha;
  std::optional<double> xi;
};

// Returns log_c valid for the requested log_r, or nullopt if no finite
// constant exists.
using BoundFamily = std::function<std::optional<double>(double log_r)>;

struct Coefficient {
  double log_abs = kNegInf;
  int sign = 1;
};

class CoefficientProvider {
 public:
  using Fn = std::function<Coefficient(Index)>;
  using Params = std::map<std::string, double>;

  CoefficientProvider() : d_(std::make_shared<Data>()) { d_->fn = [](Index) { return Coefficient{}; }; }

  static CoefficientProvider from_table(std::map<Index, Coefficient> table) {
    for (const auto& [j, c] : table) {
      LogCoeff check(c.log_abs);
      (void)check;
      if (c.sign != 1 && c.sign != -1) throw std::invalid_argument("coefficient sign must be +1 or -1");
    }
    auto d = std::make_shared<Data>();
    d->id = "explicit";
    IndexBounds sup;
    for (const auto& [j, c] : table) {
      if (c.log_abs == kNegInf) continue;
      if (!sup.lo) sup.lo = j;
      sup.hi = j;
    }
    if (!sup.lo) sup = IndexBounds{0, -1};
    d->support = sup;
    d->table = table;
    auto tab = std::make_shared<const std::map<Index, Coefficient>>(std::move(table));
    d->fn = [tab](Index j) {
      auto it = tab->find(j);
      return it == tab->end() ? Coefficient{} : it->second;
    };
    return CoefficientProvider(std::move(d));
  }

  static CoefficientProvider from_function(std::string id, Params params, Fn fn, IndexBounds support) {
    auto d = std::make_shared<Data>();
    d->id = std::move(id);
    d->params = std::move(params);
    d->fn = std::move(fn);
    d->support = support;
    return CoefficientProvider(std::move(d));
  }

  Coefficient coefficient(Index j) const {
    auto it = d_->overrides.find(j);
    if (it != d_->overrides.end()) return it->second;
    if (!d_->base_support.contains(j)) return {};
    Coefficient c = d_->fn(j);
    if (d_->log_shift != 0.0 && c.log_abs != kNegInf) c.log_abs += static_cast<double>(j) * d_->log_shift;
    return c;
  }
  // Coefficient before overrides and scaling.
  Coefficient base_coefficient(Index j) const {
    if (!d_->base_support.contains(j)) return {};
    return d_->fn(j);
  }
  double log_abs(Index j) const { return coefficient(j).log_abs; }
  LogCoeff at(Index j) const { return LogCoeff(log_abs(j)); }
  int sign(Index j) const { return coefficient(j).sign; }

  const IndexBounds& support() const { return d_->support; }
  bool is_explicit() const { return d_->id == "explicit"; }
  const std::string& id() const { return d_->id; }
  const Params& params() const { return d_->params; }
  const std::map<Index, Coefficient>& table() const { return d_->table; }
  const std::map<Index, Coefficient>& overrides() const { return d_->overrides; }
  double log_scale() const { return d_->log_shift; }

  const Envelope& envelope() const { return d_->envelope; }
  const std::optional<SideAsymptote>& asymptote(Side s) const {
    return s == Side::Left ? d_->asym_left : d_->asym_right;
  }
  bool has_bound_family(Side s) const { return static_cast<bool>(family(s)); }

  // Decay constant for a chosen radius, from the fixed envelope or the family.
  std::optional<double> bound_for(Side s, double log_r) const {
    const auto& fam = family(s);
    if (!fam) return std::nullopt;
    auto c = fam(log_r);
    if (!c) return std::nullopt;
    return absorb_overrides(s, *c, log_r);
  }

  CoefficientProvider with_envelope(Envelope e) const {
    auto d = clone();
    d->envelope = e;
    return CoefficientProvider(std::move(d));
  }
  CoefficientProvider with_asymptote(Side s, SideAsymptote a) const {
    auto d = clone();
    (s == Side::Left ? d->asym_left : d->asym_right) = a;
    return CoefficientProvider(std::move(d));
  }
  CoefficientProvider with_bound_family(Side s, BoundFamily f) const {
    auto d = clone();
    (s == Side::Left ? d->fam_left : d->fam_right) = std::move(f);
    return CoefficientProvider(std::move(d));
  }

  // Replaces b_j. Support widens if needed; envelope constants grow to keep
  // the bound valid. Asymptotes are unaffected by finitely many changes.
  CoefficientProvider with_override(Index j, Coefficient c) const {
    LogCoeff check(c.log_abs);
    (void)check;
    auto d = clone();
    d->overrides[j] = c;
    if (c.log_abs != kNegInf) {
      if (d->support.lo && d->support.hi && *d->support.lo > *d->support.hi) {
        d->support = {j, j};
      } else {
        if (d->support.lo && j < *d->support.lo) d->support.lo = j;
        if (d->support.hi && j > *d->support.hi) d->support.hi = j;
      }
      for (Side s : {Side::Left, Side::Right}) {
        auto& b = d->envelope.on(s);
        bool on_side = s == Side::Right ? j > 0 : j < 0;
        if (b && on_side) b->log_c = std::max(b->log_c, c.log_abs + static_cast<double>(j) * b->log_r);
      }
    }
    return CoefficientProvider(std::move(d));
  }

  // b_j -> b_j * c^j. Roots scale by 1/c.
  CoefficientProvider scaled(double log_c) const {
    auto d = clone();
    d->log_shift += log_c;
    std::map<Index, Coefficient> ov;
    for (auto [j, c] : d->overrides) {
      if (c.log_abs != kNegInf) c.log_abs += static_cast<double>(j) * log_c;
      ov[j] = c;
    }
    d->overrides = std::move(ov);
    for (Side s : {Side::Left, Side::Right}) {
      auto& b = d->envelope.on(s);
      if (b) b->log_r -= log_c;
      auto& a = s == Side::Left ? d->asym_left : d->asym_right;
      if (a && a->log_alpha && std::isfinite(*a->log_alpha)) *a->log_alpha -= log_c;
      auto& f = s == Side::Left ? d->fam_left : d->fam_right;
      if (f) f = [inner = f, log_c](double log_r) { return inner(log_r + log_c); };
    }
    return CoefficientProvider(std::move(d));
  }

  // inf{j : b_j != 0}, scanning at most `limit` indices from the support start.
  std::optional<Index> first_nonzero(Index limit = 1 << 20) const {
    if (!support().lo) return std::nullopt;
    Index j = *support().lo;
    Index stop = support().hi ? *support().hi : j + limit;
    for (; j <= stop; ++j)
      if (log_abs(j) != kNegInf) return j;
    return std::nullopt;
  }
  std::optional<Index> last_nonzero(Index limit = 1 << 20) const {
    if (!support().hi) return std::nullopt;
    Index j = *support().hi;
    Index stop = support().lo ? *support().lo : j - limit;
    for (; j >= stop; --j)
      if (log_abs(j) != kNegInf) return j;
    return std::nullopt;
  }

 private:
  struct Data {
    std::string id;
    Params params;
    Fn fn;
    std::map<Index, Coefficient> table;
    IndexBounds support;
    IndexBounds base_support;
    bool base_set = false;
    std::map<Index, Coefficient> overrides;
    double log_shift = 0.0;
    Envelope envelope;
    std::optional<SideAsymptote> asym_left, asym_right;
    BoundFamily fam_left, fam_right;
  };

  explicit CoefficientProvider(std::shared_ptr<Data> d) : d_(std::move(d)) {
    if (!d_->base_set) {
      d_->base_support = d_->support;
      d_->base_set = true;
    }
  }

  std::shared_ptr<Data> clone() const { return std::make_shared<Data>(*d_); }

  // Family for side s, falling back to the fixed envelope (valid for radii
  // no larger than its own on the right, no smaller on the left).
  BoundFamily family(Side s) const {
    const BoundFamily& f = s == Side::Left ? d_->fam_left : d_->fam_right;
    if (f) return f;
    const auto& b = d_->envelope.on(s);
    if (!b) return {};
    DecayBound e = *b;
    return [e, s](double log_r) -> std::optional<double> {
      if (log_r == e.log_r) return e.log_c;
      // A weaker radius keeps the bound valid with the same constant.
      if (s == Side::Right && log_r < e.log_r) return e.log_c;
      if (s == Side::Left && log_r > e.log_r) return e.log_c;
      return std::nullopt;
    };
  }

  double absorb_overrides(Side s, double log_c, double log_r) const {
    for (const auto& [j, c] : d_->overrides) {
      bool on_side = s == Side::Right ? j > 0 : j < 0;
      if (on_side && c.log_abs != kNegInf) log_c = std::max(log_c, c.log_abs + static_cast<double>(j) * log_r);
    }
    return log_c;
  }

  std::shared_ptr<Data> d_;
};

// max over the window of log b_j + j*logx.
inline double eval_tropical(const CoefficientProvider& p, double logx, IndexRange window) {
  if (window.hi < window.lo) throw std::invalid_argument("empty window");
  double best = kNegInf;
  for (Index j = window.lo; j <= window.hi; ++j) {
    double v = p.log_abs(j);
    if (v == kNegInf) continue;
    best = std::max(best, v + static_cast<double>(j) * logx);
  }
  return best;
}

inline std::vector<double> maxplus_of_maxtimes(const std::vector<double>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (!(x > 0.0)) throw std::domain_error("max-times roots must be positive");
    out.push_back(std::log(x));
  }
  return out;
}

inline std::vector<double> maxtimes_of_maxplus(const std::vector<double>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(std::exp(x));
  return out;
}

}  // namespace troplaur

#endif  // TROPLAUR_SERIES_HPP
