#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tricontract/analysis.hpp"
#include "tricontract/errors.hpp"
#include "tricontract/metric.hpp"
#include "tricontract/phi.hpp"
#include "tricontract/solver.hpp"

namespace tricontract {

// A parsed input document: the finite space plus the self-map when the
// document carried one.
struct ParsedDocument {
  FiniteMetricSpace space;
  std::optional<SelfMap> map;
};

namespace detail {

inline ParsedDocument parse_space_impl(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(e.what(), e.byte);
  }

  if (!doc.is_object()) throw parse_error("top-level value must be an object");
  if (!doc.contains("points") || !doc["points"].is_array()) {
    throw parse_error("missing or non-array \"points\"");
  }
  if (!doc.contains("distances") || !doc["distances"].is_array()) {
    throw parse_error("missing or non-array \"distances\"");
  }

  std::vector<std::string> labels;
  for (const auto& p : doc["points"]) {
    if (!p.is_string()) throw parse_error("\"points\" entries must be strings");
    labels.push_back(p.get<std::string>());
  }

  std::vector<std::vector<double>> matrix;
  for (const auto& row : doc["distances"]) {
    if (!row.is_array()) throw parse_error("\"distances\" rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw parse_error("\"distances\" entries must be numbers");
      }
      r.push_back(v.get<double>());
    }
    matrix.push_back(std::move(r));
  }

  ParsedDocument out{FiniteMetricSpace(labels, matrix), std::nullopt};

  if (doc.contains("map")) {
    if (!doc["map"].is_object()) throw parse_error("\"map\" must be an object");
    std::map<std::string, std::string> table;
    for (const auto& [key, value] : doc["map"].items()) {
      if (!value.is_string()) {
        throw parse_error("\"map\" values must be point labels");
      }
      if (!out.space.contains(key)) {
        throw structure_error("map key \"" + key + "\" is not a point");
      }
      const std::string target = value.get<std::string>();
      if (!out.space.contains(target)) {
        throw structure_error("map value \"" + target + "\" is not a point");
      }
      table[key] = target;
    }
    SelfMap map = SelfMap::table(std::move(table));
    map.require_total(out.space);
    out.map = std::move(map);
  }
  return out;
}

}  // namespace detail

// Parses a document and checks only its structure (shape, label/table
// consistency) — metric axioms are not enforced. Lets callers report on
// malformed metrics instead of rejecting them.
inline ParsedDocument parse_space_unvalidated(const std::string& text) {
  return detail::parse_space_impl(text);
}

// Parses a document and enforces the metric axioms; the first violated axiom
// is reported with the offending points.
inline ParsedDocument parse_space(const std::string& text) {
  ParsedDocument doc = detail::parse_space_impl(text);
  const MetricValidationReport report = validate_metric(doc.space);
  if (!report.all_ok()) {
    const MetricViolation& v = report.violations.front();
    std::string msg = "metric axiom violated: " + v.axiom;
    std::string sep = " at ";
    for (const auto& p : v.points) {
      msg += sep + p;
      sep = ", ";
    }
    throw metric_error(msg, v.axiom, v.points);
  }
  return doc;
}

// --- serialization ----------------------------------------------------------
//
// All emitters use ordered_json with two-space indentation so output is
// byte-identical run to run.

inline std::string serialize_space(const FiniteMetricSpace& space,
                                   const SelfMap* map = nullptr) {
  nlohmann::ordered_json doc;
  doc["points"] = space.labels();
  doc["distances"] = space.matrix();
  if (map != nullptr) {
    nlohmann::ordered_json table = nlohmann::ordered_json::object();
    for (const auto& label : space.labels()) {
      table[label] = map->apply(space, label);
    }
    doc["map"] = std::move(table);
  }
  return doc.dump(2) + "\n";
}

inline nlohmann::ordered_json validation_to_json(
    const MetricValidationReport& report) {
  nlohmann::ordered_json j;
  j["zero_diagonal_ok"] = report.zero_diagonal_ok;
  j["symmetry_ok"] = report.symmetric_ok;
  j["positivity_ok"] = report.positivity_ok;
  j["triangle_ok"] = report.triangle_ok;
  j["valid"] = report.all_ok();
  nlohmann::ordered_json violations = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json entry;
    entry["axiom"] = v.axiom;
    entry["points"] = v.points;
    entry["observed"] = v.observed;
    violations.push_back(std::move(entry));
  }
  j["violations"] = std::move(violations);
  return j;
}

inline nlohmann::ordered_json certificate_to_json(
    const ContractionCertificate& cert) {
  nlohmann::ordered_json j;
  j["phi"] = to_string(cert.phi);
  j["alpha_star"] = cert.alpha_star;
  j["witness"] = cert.witness;
  j["contracting"] = cert.contracting;
  j["triples_checked"] = cert.triples_checked;
  return j;
}

inline nlohmann::ordered_json violations_to_json(
    const std::vector<TripleEvaluation>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json entry;
    entry["points"] = row.points;
    entry["phi_image"] = row.phi_image;
    entry["phi_preimage"] = row.phi_preimage;
    entry["ratio"] = row.ratio;
    arr.push_back(std::move(entry));
  }
  return arr;
}

inline nlohmann::ordered_json periodicity_to_json(
    const PeriodicityReport& report) {
  nlohmann::ordered_json j;
  j["fixed_points"] = report.fixed_points;
  j["period2_points"] = report.period2_points;
  j["has_fixed_point"] = !report.fixed_points.empty();
  j["has_period2"] = !report.period2_points.empty();
  return j;
}

inline nlohmann::ordered_json trace_to_json(const FiniteTrace& trace) {
  nlohmann::ordered_json j;
  j["start"] = trace.start;
  j["steps"] = trace.steps;
  j["d0"] = trace.d0;
  j["d_seq"] = trace.d_seq;
  nlohmann::ordered_json verdict;
  if (const auto* fp = std::get_if<FixedPointReached<std::string>>(&trace.verdict)) {
    verdict["kind"] = "fixed_point";
    verdict["point"] = fp->point;
  } else if (const auto* p2 = std::get_if<Period2Detected<std::string>>(&trace.verdict)) {
    verdict["kind"] = "period2";
    verdict["points"] = {p2->first, p2->second};
  } else if (const auto* tol = std::get_if<ToleranceReached<std::string>>(&trace.verdict)) {
    verdict["kind"] = "tolerance";
    verdict["point"] = tol->point;
    verdict["bound"] = tol->bound;
  } else {
    verdict["kind"] = "budget_exhausted";
  }
  j["verdict"] = std::move(verdict);
  return j;
}

// --- text rendering ---------------------------------------------------------

// Shortest round-trippable-ish decimal for CLI text output.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

}  // namespace tricontract
