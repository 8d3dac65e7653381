// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON and CSV I/O for series specs, update lists, polygons, root lists and
// localization reports. Infinities are written as the strings "inf" and
// "-inf"; doubles round-trip exactly.

#ifndef TROPLAUR_IO_HPP
#define TROPLAUR_IO_HPP

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "troplaur/generators.hpp"
#include "troplaur/localization.hpp"
#include "troplaur/polygon.hpp"
#include "troplaur/synthetic.hpp"
#include "troplaur/update.hpp"

namespace troplaur {

using json = nlohmann::json;

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace io {

inline json ext(double x) {
  if (x == kPosInf) return "inf";
  if (x == kNegInf) return "-inf";
  return x;
}

inline double ext_from(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kPosInf;
    if (s == "-inf") return kNegInf;
  }
  throw SpecError(where + ": expected a number, \"inf\" or \"-inf\"");
}

inline const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SpecError(where + ": missing key '" + key + "'");
  return j.at(key);
}

inline Index index_from(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SpecError(where + ": index must be an integer");
  return j.get<Index>();
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
}

}  // namespace io

// A parsed series file: exactly one of scalar or matrix is set.
struct SeriesSpec {
  std::optional<CoefficientProvider> scalar;
  std::optional<MatrixLaurentSeries> matrix;
  std::optional<IndexRange> window;
};

inline SeriesSpec parse_series_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("series spec must be a JSON object");
  bool has_coeffs = doc.contains("coeffs"), has_id = doc.contains("id"), has_mat = doc.contains("matrix_coeffs");
  std::string kind = doc.value("kind", has_mat ? "matrix" : has_coeffs ? "explicit" : "generator");
  SeriesSpec out;

  if (kind == "explicit") {
    if (!has_coeffs || has_mat) throw SpecError("explicit spec needs 'coeffs' and no 'matrix_coeffs'");
    std::map<Index, Coefficient> tab;
    const auto& cs = doc.at("coeffs");
    if (!cs.is_array()) throw SpecError("coeffs: expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string where = "coeffs[" + std::to_string(i) + "]";
      Index j = io::index_from(io::need(cs[i], "j", where), where + ".j");
      Coefficient c;
      if (cs[i].contains("value")) {
        double v = cs[i].at("value").get<double>();
        if (!std::isfinite(v)) throw SpecError(where + ".value: must be finite");
        c = {v == 0 ? kNegInf : std::log(std::abs(v)), v < 0 ? -1 : 1};
      } else {
        c.log_abs = io::ext_from(io::need(cs[i], "log_abs", where), where + ".log_abs");
        c.sign = cs[i].value("sign", 1);
        if (c.log_abs == kPosInf || std::isnan(c.log_abs)) throw SpecError(where + ".log_abs: must be finite or -inf");
        if (c.sign != 1 && c.sign != -1) throw SpecError(where + ".sign: must be 1 or -1");
      }
      if (!tab.emplace(j, c).second) throw SpecError(where + ": duplicate index " + std::to_string(j));
    }
    out.scalar = CoefficientProvider::from_table(std::move(tab));
  } else if (kind == "generator") {
    if (!has_id || has_mat) throw SpecError("generator spec needs 'id' and no 'matrix_coeffs'");
    CoefficientProvider::Params params;
    if (doc.contains("params")) {
      for (auto it = doc.at("params").begin(); it != doc.at("params").end(); ++it) {
        if (!it.value().is_number()) throw SpecError("params." + it.key() + ": expected a number");
        params[it.key()] = it.value().get<double>();
      }
    }
    try {
      out.scalar = make_generator(doc.at("id").get<std::string>(), params);
    } catch (const std::invalid_argument& e) {
      throw SpecError(std::string("generator: ") + e.what());
    }
  } else if (kind == "matrix") {
    if (!has_mat || has_coeffs || has_id) throw SpecError("matrix spec needs 'matrix_coeffs' only");
    MatrixLaurentSeries f;
    const auto& ms = doc.at("matrix_coeffs");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      std::string where = "matrix_coeffs[" + std::to_string(i) + "]";
      Index j = io::index_from(io::need(ms[i], "j", where), where + ".j");
      const auto& re = io::need(ms[i], "re", where);
      Index n = static_cast<Index>(re.size());
      Matrix m = Matrix::Zero(n, n);
      for (Index r = 0; r < n; ++r) {
        if (static_cast<Index>(re[r].size()) != n) throw SpecError(where + ".re: matrix must be square");
        for (Index c = 0; c < n; ++c) m(r, c).real(re[r][c].get<double>());
      }
      if (ms[i].contains("im")) {
        const auto& im = ms[i].at("im");
        if (static_cast<Index>(im.size()) != n) throw SpecError(where + ".im: size differs from re");
        for (Index r = 0; r < n; ++r) {
          if (static_cast<Index>(im[r].size()) != n) throw SpecError(where + ".im: size differs from re");
          for (Index c = 0; c < n; ++c) m(r, c).imag(im[r][c].get<double>());
        }
      }
      if (!f.coeffs.emplace(j, std::move(m)).second) throw SpecError(where + ": duplicate index " + std::to_string(j));
    }
    f.norm = parse_norm(doc.value("norm", "two"));
    try {
      f.validate();
    } catch (const std::invalid_argument& e) {
      throw SpecError(e.what());
    }
    out.matrix = std::move(f);
  } else if (kind == "synthetic") {
    if (!has_id) throw SpecError("synthetic spec needs 'id'");
    out.matrix = synthetic_fixture(doc.at("id").get<std::string>(), doc.value("n", Index{20}));
    out.matrix->norm = parse_norm(doc.value("norm", "two"));
  } else {
    throw SpecError("unknown kind '" + kind + "'");
  }

  if (out.scalar && doc.contains("envelope")) {
    const auto& e = doc.at("envelope");
    Envelope env = out.scalar->envelope();
    if (e.contains("log_c1") != e.contains("log_r1") || e.contains("log_c2") != e.contains("log_r2"))
      throw SpecError("envelope: log_cK and log_rK come in pairs");
    if (e.contains("log_c1")) env.left = DecayBound{e.at("log_c1").get<double>(), e.at("log_r1").get<double>()};
    if (e.contains("log_c2")) env.right = DecayBound{e.at("log_c2").get<double>(), e.at("log_r2").get<double>()};
    out.scalar = out.scalar->with_envelope(env);
  }
  if (out.scalar && doc.contains("asymptote")) {
    const auto& a = doc.at("asymptote");
    for (Side s : {Side::Left, Side::Right}) {
      const char* key = to_string(s);
      if (!a.contains(key)) continue;
      std::string where = std::string("asymptote.") + key;
      SideAsymptote sa;
      if (a.at(key).contains("log_alpha")) sa.log_alpha = io::ext_from(a.at(key).at("log_alpha"), where + ".log_alpha");
      if (a.at(key).contains("xi")) sa.xi = io::ext_from(a.at(key).at("xi"), where + ".xi");
      out.scalar = out.scalar->with_asymptote(s, sa);
    }
  }
  if (doc.contains("window")) {
    const auto& w = doc.at("window");
    if (!w.is_array() || w.size() != 2) throw SpecError("window: expected [lo, hi]");
    out.window = IndexRange{io::index_from(w[0], "window[0]"), io::index_from(w[1], "window[1]")};
    if (out.window->lo > out.window->hi) throw SpecError("window: lo > hi");
  }
  return out;
}

inline SeriesSpec load_series_spec(const std::string& path) {
  try {
    return parse_series_spec(io::read_file(path));
  } catch (const SpecError& e) {
    std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw SpecError(path + ": " + msg);
  } catch (const json::exception& e) {
    throw SpecError(path + ": " + e.what());
  }
}

// Parses "a:b".
inline IndexRange parse_window(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw SpecError("window must look like lo:hi");
  try {
    std::size_t used = 0;
    Index lo = std::stoll(s.substr(0, colon), &used);
    if (used != colon) throw SpecError("bad window lower bound");
    std::string rest = s.substr(colon + 1);
    Index hi = std::stoll(rest, &used);
    if (used != rest.size()) throw SpecError("bad window upper bound");
    if (lo > hi) throw SpecError("window: lo > hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw SpecError("window must look like lo:hi");
  }
}

// Window from the command line, else the spec, else a bounded support.
inline IndexRange resolve_window(const std::optional<IndexRange>& cli, const SeriesSpec& spec) {
  if (cli) return *cli;
  if (spec.window) return *spec.window;
  if (spec.scalar) {
    const auto& s = spec.scalar->support();
    if (s.lo && s.hi) return {*s.lo, *s.hi};
    throw SpecError("series has unbounded support: pass --window or add \"window\" to the spec");
  }
  return {spec.matrix->coeffs.begin()->first, spec.matrix->coeffs.rbegin()->first};
}

struct UpdateSpec {
  std::vector<MonomialUpdate> updates;
  std::optional<Combine> combine;
};

inline UpdateSpec parse_updates(const json& doc) {
  UpdateSpec out;
  const json* arr = &doc;
  if (doc.is_object()) {
    arr = &io::need(doc, "updates", "updates file");
    if (doc.contains("combine")) out.combine = parse_combine(doc.at("combine").get<std::string>());
  }
  if (!arr->is_array()) throw SpecError("updates: expected an array");
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const auto& u = (*arr)[i];
    std::string where = "updates[" + std::to_string(i) + "]";
    MonomialUpdate m;
    m.index = io::index_from(io::need(u, "j", where), where + ".j");
    if (u.contains("coeff")) {
      double v = u.at("coeff").get<double>();
      if (v == 0 || !std::isfinite(v)) throw SpecError(where + ".coeff: must be finite and nonzero");
      m.log_gamma = std::log(std::abs(v));
      m.sign = v < 0 ? -1 : 1;
    } else {
      m.log_gamma = io::need(u, "log_gamma", where).get<double>();
      m.sign = u.value("sign", 1);
      if (!std::isfinite(m.log_gamma)) throw SpecError(where + ".log_gamma: must be finite");
      if (m.sign != 1 && m.sign != -1) throw SpecError(where + ".sign: must be 1 or -1");
    }
    out.updates.push_back(m);
  }
  return out;
}

inline UpdateSpec load_updates(const std::string& path) {
  try {
    return parse_updates(io::read_file(path));
  } catch (const json::exception& e) {
    throw SpecError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError(path + ": " + e.what());
  }
}

inline json to_json(const LimitStatus& s) {
  if (s.exact) return "exact";
  return json{{"estimated", io::ext(s.tolerance)}};
}

inline LimitStatus limit_status_from(const json& j) {
  if (j.is_string() && j.get<std::string>() == "exact") return {};
  return {false, io::ext_from(io::need(j, "estimated", "status"), "status.estimated")};
}

inline json to_json(const TropicalRoot& r) {
  json o;
  o["log_alpha"] = io::ext(r.log_value);
  o["alpha"] = io::ext(std::exp(r.log_value));
  if (r.infinite) o["mult"] = "inf";
  else o["mult"] = r.multiplicity;
  switch (r.kind) {
    case RootKind::HullSegment:
      o["kind"] = "hull_segment";
      o["left"] = r.left_index;
      o["right"] = r.right_index;
      break;
    case RootKind::ZeroRoot: o["kind"] = "zero_root"; break;
    case RootKind::DomainEndpoint:
      o["kind"] = "domain_endpoint";
      o["side"] = to_string(r.side);
      break;
  }
  o["certified"] = r.certified;
  return o;
}

inline json to_json(const AlphaLimits& a) {
  return json{{"alpha_minus_log", io::ext(a.alpha_minus_log)},
              {"alpha_plus_log", io::ext(a.alpha_plus_log)},
              {"minus_status", to_json(a.minus_status)},
              {"plus_status", to_json(a.plus_status)}};
}

inline json to_json(const NewtonPolygon& p) {
  json o;
  o["window"] = {p.window.lo, p.window.hi};
  json vs = json::array();
  for (const auto& v : p.vertices)
    vs.push_back({{"j", v.index}, {"log_b", v.log_coeff}, {"certified", v.certified()}, {"status", to_string(v.status)}});
  o["vertices"] = vs;
  o["left_open"] = p.left_open;
  o["right_open"] = p.right_open;
  for (Side s : {Side::Left, Side::Right}) {
    const auto& ray = s == Side::Left ? p.left_ray : p.right_ray;
    if (ray) o[std::string(to_string(s)) + "_ray"] = {{"slope", ray->slope}, {"status", to_json(ray->status)}};
  }
  o["collapsed"] = p.collapsed;
  if (!p.notes.empty()) o["notes"] = p.notes;
  return o;
}

inline NewtonPolygon polygon_from_json(const json& o) {
  NewtonPolygon p;
  const auto& w = io::need(o, "window", "polygon");
  p.window = {w.at(0).get<Index>(), w.at(1).get<Index>()};
  for (const auto& v : io::need(o, "vertices", "polygon")) {
    PolygonVertex pv;
    pv.index = v.at("j").get<Index>();
    pv.log_coeff = v.at("log_b").get<double>();
    std::string st = v.value("status", v.value("certified", true) ? "certified" : "open");
    pv.status = st == "certified" ? VertexStatus::Certified : st == "estimated" ? VertexStatus::Estimated : VertexStatus::Open;
    p.vertices.push_back(pv);
  }
  p.left_open = o.value("left_open", false);
  p.right_open = o.value("right_open", false);
  for (Side s : {Side::Left, Side::Right}) {
    std::string key = std::string(to_string(s)) + "_ray";
    if (!o.contains(key)) continue;
    Ray r{o.at(key).at("slope").get<double>(), limit_status_from(o.at(key).at("status"))};
    (s == Side::Left ? p.left_ray : p.right_ray) = r;
  }
  p.collapsed = o.value("collapsed", std::size_t{0});
  if (o.contains("notes")) p.notes = o.at("notes").get<std::vector<std::string>>();
  return p;
}

inline json to_json(const RootList& rl) {
  json rs = json::array();
  for (const auto& r : rl.roots) rs.push_back(to_json(r));
  return rs;
}

inline json to_json(const UpdateOutcome& u) {
  json o;
  o["kind"] = u.kind == OutcomeKind::FiniteDelta ? "finite_delta" : "infinite_truncation";
  o["removed"] = u.removed;
  o["added"] = u.added;
  o["inserted"] = u.inserted;
  if (u.kind == OutcomeKind::InfiniteTruncation) {
    json sides = json::array();
    if (u.truncated_left) sides.push_back("left");
    if (u.truncated_right) sides.push_back("right");
    o["sides"] = sides;
    o["kept_vertex"] = u.kept_vertex;
  }
  o["rebuilt"] = u.rebuilt;
  return o;
}

inline json to_json(const ReportItem& it) {
  json o;
  o["kind"] = to_string(it.kind);
  o["inner_log"] = io::ext(it.inner_log);
  o["outer_log"] = io::ext(it.outer_log);
  o["inner"] = io::ext(std::exp(it.inner_log));
  o["outer"] = io::ext(std::exp(it.outer_log));
  o["count"] = it.count;
  o["applicable"] = it.applicable;
  if (!it.reason.empty()) o["reason"] = it.reason;
  if (it.gap >= 0) o["gap"] = it.gap;
  if (it.gap_to >= 0) o["gap_to"] = it.gap_to;
  return o;
}

inline ItemKind item_kind_from(const std::string& s) {
  for (ItemKind k : {ItemKind::ExclusionAnnulus, ItemKind::InclusionDisk, ItemKind::InclusionAnnulus,
                     ItemKind::LowerExclusionDisk, ItemKind::UpperBoundDisk})
    if (s == to_string(k)) return k;
  throw SpecError("unknown report item kind '" + s + "'");
}

inline json to_json(const LocalizationReport& r) {
  json o;
  o["n"] = r.n;
  o["mode"] = to_string(r.mode);
  o["norm_fallback"] = r.norm_fallback;
  o["limits"] = to_json(r.limits);
  json items = json::array();
  for (const auto& it : r.items) items.push_back(to_json(it));
  o["items"] = items;
  return o;
}

inline LocalizationReport report_from_json(const json& o) {
  LocalizationReport r;
  r.n = io::need(o, "n", "report").get<Index>();
  r.mode = parse_mode(o.value("mode", "wide"));
  r.norm_fallback = o.value("norm_fallback", false);
  for (const auto& j : io::need(o, "items", "report")) {
    ReportItem it;
    it.kind = item_kind_from(j.at("kind").get<std::string>());
    it.inner_log = io::ext_from(j.at("inner_log"), "inner_log");
    it.outer_log = io::ext_from(j.at("outer_log"), "outer_log");
    it.count = j.value("count", Index{0});
    it.applicable = j.value("applicable", true);
    it.reason = j.value("reason", "");
    it.gap = j.value("gap", -1);
    it.gap_to = j.value("gap_to", -1);
    r.items.push_back(it);
  }
  return r;
}

// (j, log_b, on_hull) over the window; zero coefficients are skipped.
inline std::string polygon_csv(const CoefficientProvider& p, const NewtonPolygon& poly) {
  std::ostringstream os;
  os << std::setprecision(17) << "j,log_b,on_hull\n";
  for (Index j = poly.window.lo; j <= poly.window.hi; ++j) {
    double v = p.log_abs(j);
    if (v == kNegInf) continue;
    os << j << ',' << v << ',' << (poly.find(j) ? 1 : 0) << '\n';
  }
  return os.str();
}

inline std::string report_table(const LocalizationReport& r) {
  std::ostringstream os;
  os << "n = " << r.n << ", mode = " << to_string(r.mode) << "\n";
  os << std::left << std::setw(22) << "kind" << std::right << std::setw(13) << "inner" << std::setw(13) << "outer"
     << std::setw(13) << "log inner" << std::setw(13) << "log outer" << std::setw(7) << "count"
     << "  status\n";
  os << std::setprecision(5);
  for (const auto& it : r.items) {
    os << std::left << std::setw(22) << to_string(it.kind) << std::right << std::setw(13) << std::exp(it.inner_log)
       << std::setw(13) << std::exp(it.outer_log) << std::setw(13) << it.inner_log << std::setw(13) << it.outer_log
       << std::setw(7) << it.count << "  " << (it.applicable ? "ok" : "n/a");
    if (!it.reason.empty()) os << " (" << it.reason << ")";
    os << '\n';
  }
  return os.str();
}

}  // namespace troplaur

#endif  // TROPLAUR_IO_HPP
