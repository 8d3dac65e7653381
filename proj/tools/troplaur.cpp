// Copyright 2026 The troplaur Authors
// SPDX-License-Identifier: Apache-2.0
//
// troplaur: tropical roots, Newton polygons and eigenvalue localization
// from the command line. Exit codes: 0 ok, 1 usage or input error,
// 2 inapplicable gate, 3 validation mismatch.

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "troplaur/io.hpp"
#include "troplaur/quadrature.hpp"
#include "troplaur/validation.hpp"

using namespace troplaur;

namespace {

constexpr int kExitInapplicable = 2;
constexpr int kExitMismatch = 3;

struct Options {
  std::string spec;
  std::string updates;
  std::string report;
  std::string window;
  std::string mode = "wide";
  std::string norm;
  std::string combine;
  std::string out = "json";
  std::string output;
  double epsilon = 1e-15;
  int disk = 1;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw SpecError("cannot write '" + o.output + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::optional<IndexRange> cli_window(const Options& o) {
  if (o.window.empty()) return std::nullopt;
  return parse_window(o.window);
}

// Provider and polygon after certification and any updates.
struct ScalarState {
  CoefficientProvider provider;
  NewtonPolygon polygon;
  std::vector<UpdateOutcome> outcomes;
};

ScalarState scalar_state(const Options& o, const SeriesSpec& spec) {
  ScalarState st;
  st.provider = *spec.scalar;
  st.polygon = certify_window(st.provider, resolve_window(cli_window(o), spec));
  if (!o.updates.empty()) {
    UpdateSpec us = load_updates(o.updates);
    Combine c = !o.combine.empty() ? parse_combine(o.combine) : us.combine.value_or(Combine::Replace);
    auto r = update_with_laurent_polynomial(st.polygon, st.provider, us.updates, c);
    st.provider = r.provider;
    st.polygon = r.polygon;
    st.outcomes = r.outcomes;
  }
  return st;
}

json polygon_document(const ScalarState& st) {
  RootList rl = roots_from_polygon(st.polygon, st.provider);
  json doc = to_json(st.polygon);
  doc["roots"] = to_json(rl);
  doc["alpha_limits"] = to_json(alpha_limits(rl, st.provider));
  if (!st.outcomes.empty()) {
    json outs = json::array();
    for (const auto& u : st.outcomes) outs.push_back(to_json(u));
    doc["outcomes"] = outs;
  }
  return doc;
}

SeriesSpec load_scalar(const Options& o, const char* cmd) {
  SeriesSpec spec = load_series_spec(o.spec);
  if (!spec.scalar) throw SpecError(std::string(cmd) + " needs a scalar series spec");
  return spec;
}

int cmd_polygon(const Options& o) {
  SeriesSpec spec = load_scalar(o, "polygon");
  ScalarState st = scalar_state(o, spec);
  if (o.out == "csv") emit(o, polygon_csv(st.provider, st.polygon));
  else emit(o, polygon_document(st).dump(2));
  return 0;
}

int cmd_roots(const Options& o) {
  SeriesSpec spec = load_scalar(o, "roots");
  ScalarState st = scalar_state(o, spec);
  RootList rl = roots_from_polygon(st.polygon, st.provider);
  if (o.out == "table") {
    std::ostringstream os;
    os << std::setprecision(15);
    for (const auto& r : rl.roots) {
      os << std::setw(24) << r.log_value << std::setw(24) << std::exp(r.log_value) << "  ";
      if (r.infinite) os << "inf";
      else os << r.multiplicity;
      os << (r.certified ? "" : "  (estimated)") << '\n';
    }
    emit(o, os.str());
  } else {
    json doc{{"roots", to_json(rl)}, {"alpha_limits", to_json(alpha_limits(rl, st.provider))}};
    emit(o, doc.dump(2));
  }
  return 0;
}

int cmd_update(const Options& o) {
  if (o.updates.empty()) throw SpecError("update needs an updates file");
  SeriesSpec spec = load_scalar(o, "update");
  emit(o, polygon_document(scalar_state(o, spec)).dump(2));
  return 0;
}

LocalizationReport build_report(const Options& o, SeriesSpec& spec) {
  Mode mode = parse_mode(o.mode);
  if (spec.matrix) {
    if (!o.norm.empty()) spec.matrix->norm = parse_norm(o.norm);
    return localize(*spec.matrix, mode);
  }
  ScalarState st = scalar_state(o, spec);
  return localize(scalar_picture(st.polygon, st.provider), mode);
}

bool any_exclusion(const LocalizationReport& r) {
  for (const auto& it : r.items)
    if (it.kind == ItemKind::ExclusionAnnulus && it.applicable) return true;
  return false;
}

int cmd_localize(const Options& o) {
  SeriesSpec spec = load_series_spec(o.spec);
  LocalizationReport rep = build_report(o, spec);
  emit(o, o.out == "table" ? report_table(rep) : to_json(rep).dump(2));
  if (!any_exclusion(rep)) {
    std::cerr << "troplaur: no gap passes the localization gate\n";
    return kExitInapplicable;
  }
  return 0;
}

int cmd_advise(const Options& o) {
  LocalizationReport rep = report_from_json(io::read_file(o.report));
  int seen = 0;
  for (const auto& it : rep.items) {
    if (it.kind != ItemKind::InclusionDisk || !it.applicable || ++seen != o.disk) continue;
    for (const auto& ex : rep.items) {
      if (ex.kind != ItemKind::ExclusionAnnulus || !ex.applicable || ex.inner_log != it.outer_log) continue;
      FilterQuery q{it.outer_log, ex.outer_log, o.epsilon};
      auto n = advise_nodes(q);
      if (o.out == "json") {
        json doc{{"nodes", n},
                 {"contour_radius", std::exp(q.contour_radius_log)},
                 {"nearest_excluded", std::exp(q.nearest_excluded_log)},
                 {"epsilon", q.epsilon},
                 {"filter_at_nearest", filter_magnitude(q, n, q.nearest_excluded_log)}};
        emit(o, doc.dump(2));
      } else {
        emit(o, std::to_string(n));
      }
      return 0;
    }
    std::cerr << "troplaur: inclusion disk " << o.disk << " has no adjacent exclusion annulus\n";
    return kExitInapplicable;
  }
  std::cerr << "troplaur: report has no applicable inclusion disk number " << o.disk << "\n";
  return kExitInapplicable;
}

int cmd_validate(const Options& o) {
  SeriesSpec spec = load_series_spec(o.spec);
  LocalizationReport rep = report_from_json(io::read_file(o.report));
  ScalarFunctionHandle h;
  if (spec.matrix) {
    h = det_handle(*spec.matrix);
  } else {
    ScalarState st = scalar_state(o, spec);
    h = function_of(st.provider);
  }
  int bad = 0;
  std::ostringstream os;
  for (const auto& it : rep.items) {
    if (!it.applicable) continue;
    ItemCheck c = check_item(h, it);
    bad += !c.ok();
    os << (c.ok() ? "ok       " : "MISMATCH ") << to_string(it.kind) << " (" << std::exp(it.inner_log) << ", "
       << std::exp(it.outer_log) << ") expected " << c.expected << " got " << c.counted << '\n';
  }
  emit(o, os.str());
  return bad ? kExitMismatch : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical roots, Newton polygons and eigenvalue localization for Laurent series"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("-o,--output", o.output, "Output file (default stdout)");
  };
  auto add_scalar = [&](CLI::App* c) {
    c->add_option("spec", o.spec, "Series spec JSON")->required()->check(CLI::ExistingFile);
    c->add_option("--window", o.window, "Index window lo:hi");
    c->add_option("--combine", o.combine, "Coefficient combination at updated indices")
        ->check(CLI::IsMember({"replace", "max", "add"}));
    add_common(c);
  };

  auto* poly = app.add_subcommand("polygon", "Certified Newton polygon of a series");
  add_scalar(poly);
  poly->add_option("--updates", o.updates, "Updates JSON applied before output")->check(CLI::ExistingFile);
  poly->add_option("--out", o.out, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* roots = app.add_subcommand("roots", "Tropical roots with multiplicities");
  add_scalar(roots);
  roots->add_option("--updates", o.updates, "Updates JSON applied first")->check(CLI::ExistingFile);
  roots->add_option("--out", o.out, "json or table")->check(CLI::IsMember({"json", "table"}));

  auto* upd = app.add_subcommand("update", "Update a polygon with a Laurent polynomial");
  add_scalar(upd);
  upd->add_option("updates", o.updates, "Updates JSON")->required()->check(CLI::ExistingFile);

  auto* loc = app.add_subcommand("localize", "Eigenvalue localization report");
  add_scalar(loc);
  loc->add_option("--updates", o.updates, "Updates JSON for a scalar series")->check(CLI::ExistingFile);
  loc->add_option("--mode", o.mode, "wide or sharp")->check(CLI::IsMember({"wide", "sharp"}));
  loc->add_option("--norm", o.norm, "Matrix norm")->check(CLI::IsMember({"one", "two", "inf", "fro"}));
  loc->add_option("--out", o.out, "json or table")->check(CLI::IsMember({"json", "table"}));

  auto* adv = app.add_subcommand("advise", "Trapezoidal node count for a contour around an inclusion disk");
  adv->add_option("report", o.report, "Localization report JSON")->required()->check(CLI::ExistingFile);
  adv->add_option("--epsilon", o.epsilon, "Filter tolerance")->check(CLI::Range(0.0, 1.0));
  adv->add_option("--disk", o.disk, "Applicable inclusion disk, counted from 1")->check(CLI::PositiveNumber);
  adv->add_option("--out", o.out, "json or text")->check(CLI::IsMember({"json", "text"}));
  add_common(adv);

  auto* val = app.add_subcommand("validate", "Check a report against the argument principle");
  add_scalar(val);
  val->add_option("report", o.report, "Localization report JSON")->required()->check(CLI::ExistingFile);
  val->add_option("--updates", o.updates, "Updates JSON for a scalar series")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  if (adv->parsed() && adv->count("--out") == 0) o.out = "text";

  try {
    if (poly->parsed()) return cmd_polygon(o);
    if (roots->parsed()) return cmd_roots(o);
    if (upd->parsed()) return cmd_update(o);
    if (loc->parsed()) return cmd_localize(o);
    if (adv->parsed()) return cmd_advise(o);
    if (val->parsed()) return cmd_validate(o);
  } catch (const std::exception& e) {
    std::cerr << "troplaur: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
