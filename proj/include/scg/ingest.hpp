#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scg/error.hpp"
#include "scg/model.hpp"
#include "scg/scoring.hpp"

namespace scg {

namespace detail {

using nlohmann::json;

inline void add(std::vector<ValidationIssue>& issues, Errc code,
                std::string path, std::string message,
                Severity severity = Severity::Error) {
  issues.push_back({severity, code, std::move(path), std::move(message)});
}

inline void reject_unknown_keys(const json& obj, const std::string& prefix,
                                const std::set<std::string_view>& allowed,
                                std::vector<ValidationIssue>& issues) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      add(issues, Errc::SchemaError,
          prefix.empty() ? item.key() : prefix + "." + item.key(),
          "unknown key");
    }
  }
}

inline std::vector<ScoreRun> parse_run_array(
    const json& value, const std::string& path,
    std::vector<ValidationIssue>& issues) {
  std::vector<ScoreRun> runs;
  if (!value.is_array()) {
    add(issues, Errc::SchemaError, path, "must be an array of runs");
    return runs;
  }
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& entry = value[i];
    if (!entry.is_object()) {
      add(issues, Errc::SchemaError, p, "run must be an object");
      continue;
    }
    reject_unknown_keys(entry, p, {"label", "score"}, issues);
    ScoreRun run;
    if (!entry.contains("label") || !entry["label"].is_string() ||
        entry["label"].get<std::string>().empty()) {
      add(issues, Errc::SchemaError, p + ".label",
          "run needs a non-empty string label");
    } else {
      run.label = entry["label"].get<std::string>();
    }
    if (!entry.contains("score") || !entry["score"].is_number()) {
      add(issues, Errc::SchemaError, p + ".score", "run needs a numeric score");
    } else {
      run.score = entry["score"].get<double>();
      if (!valid_score(run.score)) {
        add(issues, Errc::RangeError, p + ".score",
            "score must lie in [0,1]");
      }
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

struct ParsedDocument {
  std::vector<ValidationIssue> issues;
  std::optional<EvaluationRecord> record;

  bool has_errors() const {
    for (const auto& issue : issues) {
      if (issue.severity == Severity::Error) return true;
    }
    return false;
  }
};

/// Checks one JSON document against the record schema and, when it is clean,
/// assembles the record. All findings are collected, not just the first.
inline ParsedDocument check_record_document(const json& doc) {
  ParsedDocument out;
  auto& issues = out.issues;
  if (!doc.is_object()) {
    add(issues, Errc::SchemaError, "", "top-level value must be an object");
    return out;
  }
  reject_unknown_keys(doc, "",
                      {"detector", "metric", "transferability", "robustness",
                       "interpretability", "param_count",
                       "efficiency_override"},
                      issues);

  EvaluationRecord record;

  if (!doc.contains("detector") || !doc["detector"].is_string() ||
      doc["detector"].get<std::string>().empty()) {
    add(issues, Errc::SchemaError, "detector",
        "missing or empty detector name");
  } else {
    record.detector = doc["detector"].get<std::string>();
  }

  if (!doc.contains("metric")) {
    add(issues, Errc::SchemaError, "metric", "missing required key 'metric'");
  } else if (!doc["metric"].is_string()) {
    add(issues, Errc::SchemaError, "metric", "metric must be a string");
  } else {
    const auto metric = metric_from_string(doc["metric"].get<std::string>());
    if (!metric) {
      add(issues, Errc::SchemaError, "metric", "metric must be AUC or ACC");
    } else {
      record.metric = *metric;
    }
  }

  if (!doc.contains("transferability")) {
    add(issues, Errc::SchemaError, "transferability",
        "missing required key 'transferability'");
  } else {
    record.transfer_runs =
        parse_run_array(doc["transferability"], "transferability", issues);
  }

  if (!doc.contains("robustness")) {
    add(issues, Errc::SchemaError, "robustness",
        "missing required key 'robustness'");
  } else if (!doc["robustness"].is_object()) {
    add(issues, Errc::SchemaError, "robustness", "robustness must be an object");
  } else {
    const json& rob = doc["robustness"];
    reject_unknown_keys(rob, "robustness",
                        {"compression", "noise", "adversarial"}, issues);
    for (std::size_t i = 0; i < kGroupTags.size(); ++i) {
      const std::string key{to_string(kGroupTags[i])};
      record.robustness[i].tag = kGroupTags[i];
      if (rob.contains(key)) {
        // An absent group key is allowed and means "untested".
        record.robustness[i].runs =
            parse_run_array(rob[key], "robustness." + key, issues);
      }
    }
  }

  if (!doc.contains("interpretability")) {
    add(issues, Errc::SchemaError, "interpretability",
        "missing required key 'interpretability'");
  } else if (!doc["interpretability"].is_object()) {
    add(issues, Errc::SchemaError, "interpretability",
        "interpretability must be an object");
  } else {
    const json& interp = doc["interpretability"];
    reject_unknown_keys(interp, "interpretability", {"band", "value"}, issues);
    if (!interp.contains("band") || !interp["band"].is_string()) {
      add(issues, Errc::SchemaError, "interpretability.band",
          "missing band name");
    } else {
      const auto band = band_from_string(interp["band"].get<std::string>());
      if (!band) {
        add(issues, Errc::SchemaError, "interpretability.band",
            "band must be one of none, basic_visualizations, "
            "interpretive_analyses, integrated_explainability");
      } else {
        record.interpretability.band = *band;
      }
    }
    if (!interp.contains("value") || !interp["value"].is_number()) {
      add(issues, Errc::SchemaError, "interpretability.value",
          "missing numeric value");
    } else {
      record.interpretability.value = interp["value"].get<double>();
      if (!valid_score(record.interpretability.value)) {
        add(issues, Errc::RangeError, "interpretability.value",
            "value must lie in [0,1]");
      } else if (interp.contains("band") && interp["band"].is_string() &&
                 band_from_string(interp["band"].get<std::string>())) {
        const BandRange range = band_range(record.interpretability.band);
        const double v = record.interpretability.value;
        if (v < range.lo || v > range.hi) {
          add(issues, Errc::OutOfBand, "interpretability.value",
              "value lies outside the declared band (accepted in lenient "
              "mode, rejected in strict mode)",
              Severity::Warning);
        }
      }
    }
  }

  const bool has_params = doc.contains("param_count");
  const bool has_override = doc.contains("efficiency_override");
  if (has_params && has_override) {
    add(issues, Errc::ConflictError, "efficiency_override",
        "param_count and efficiency_override are mutually exclusive");
  } else if (!has_params && !has_override) {
    add(issues, Errc::SchemaError, "param_count",
        "exactly one of param_count or efficiency_override is required");
  }
  if (has_params) {
    const json& pc = doc["param_count"];
    if (pc.is_number_unsigned()) {
      record.param_count = pc.get<std::uint64_t>();
    } else if (pc.is_number_integer()) {
      add(issues, Errc::RangeError, "param_count",
          "param_count must be non-negative");
    } else {
      add(issues, Errc::SchemaError, "param_count",
          "param_count must be an integer");
    }
  }
  if (has_override) {
    const json& ov = doc["efficiency_override"];
    if (!ov.is_number()) {
      add(issues, Errc::SchemaError, "efficiency_override",
          "efficiency_override must be a number");
    } else {
      record.efficiency_override = ov.get<double>();
      if (!valid_score(*record.efficiency_override)) {
        add(issues, Errc::RangeError, "efficiency_override",
            "efficiency_override must lie in [0,1]");
      } else if (!on_efficiency_scale(*record.efficiency_override)) {
        add(issues, Errc::OutOfBand, "efficiency_override",
            "value is not one of the discrete efficiency scale steps",
            Severity::Warning);
      }
    }
  }

  if (!out.has_errors()) {
    record.robustness[0].tag = GroupTag::Compression;
    record.robustness[1].tag = GroupTag::Noise;
    record.robustness[2].tag = GroupTag::Adversarial;
    out.record = std::move(record);
  }
  return out;
}

[[noreturn]] inline void throw_parse_error(std::vector<ValidationIssue> issues) {
  std::size_t errors = 0;
  const ValidationIssue* first = nullptr;
  for (const auto& issue : issues) {
    if (issue.severity == Severity::Error) {
      if (!first) first = &issue;
      ++errors;
    }
  }
  std::string message = first->path.empty()
                            ? first->message
                            : first->path + ": " + first->message;
  if (errors > 1) {
    message += " (and " + std::to_string(errors - 1) + " more issues)";
  }
  throw ParseError(first->code, message, std::move(issues));
}

inline json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(Errc::SyntaxError, e.what(),
                     {{Severity::Error, Errc::SyntaxError, "", e.what()}});
  }
}

inline void prefix_issue_paths(std::vector<ValidationIssue>& issues,
                               const std::string& prefix) {
  for (auto& issue : issues) {
    issue.path = issue.path.empty() ? prefix : prefix + "." + issue.path;
  }
}

}  // namespace detail

/// Parses and fully validates a single record document. Throws ParseError
/// with the complete issue list when the document is rejected.
inline EvaluationRecord parse_record(std::string_view text) {
  const auto doc = detail::parse_text(text);
  auto checked = detail::check_record_document(doc);
  if (!checked.record) detail::throw_parse_error(std::move(checked.issues));
  return *std::move(checked.record);
}

/// Non-throwing validation: returns every issue found in the document,
/// including warnings. An empty result means a clean document.
inline std::vector<ValidationIssue> validate_document(std::string_view text) {
  try {
    const auto doc = detail::parse_text(text);
    return detail::check_record_document(doc).issues;
  } catch (const ParseError& e) {
    return e.issues();
  }
}

namespace detail {

inline void check_unique_detectors(
    const std::vector<EvaluationRecord>& records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (records[i].detector == records[j].detector) {
        throw Error(Errc::DuplicateDetector,
                    "detector '" + records[i].detector +
                        "' appears more than once");
      }
    }
  }
}

}  // namespace detail

/// Parses a list of single-record documents in order. Detector names must be
/// unique across the whole suite.
inline std::vector<EvaluationRecord> parse_suite(
    std::span<const std::string> texts) {
  std::vector<EvaluationRecord> records;
  records.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    try {
      records.push_back(parse_record(texts[i]));
    } catch (ParseError& e) {
      auto issues = e.issues();
      detail::prefix_issue_paths(issues, "document[" + std::to_string(i) + "]");
      throw ParseError(e.code(),
                       "document[" + std::to_string(i) + "]: " + e.message(),
                       std::move(issues));
    }
  }
  detail::check_unique_detectors(records);
  return records;
}

/// Parses a document whose root is either a single record object or an array
/// of record objects.
inline std::vector<EvaluationRecord> parse_any(std::string_view text) {
  const auto doc = detail::parse_text(text);
  if (!doc.is_array()) {
    auto checked = detail::check_record_document(doc);
    if (!checked.record) detail::throw_parse_error(std::move(checked.issues));
    std::vector<EvaluationRecord> records;
    records.push_back(*std::move(checked.record));
    return records;
  }
  std::vector<EvaluationRecord> records;
  std::vector<ValidationIssue> issues;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto checked = detail::check_record_document(doc[i]);
    detail::prefix_issue_paths(checked.issues,
                               "[" + std::to_string(i) + "]");
    issues.insert(issues.end(), checked.issues.begin(), checked.issues.end());
    if (checked.record) records.push_back(*std::move(checked.record));
  }
  const bool failed = std::any_of(
      issues.begin(), issues.end(),
      [](const ValidationIssue& i) { return i.severity == Severity::Error; });
  if (failed) detail::throw_parse_error(std::move(issues));
  detail::check_unique_detectors(records);
  return records;
}

/// Canonical serialization: sorted keys, two-space indent, scores rendered
/// with full round-trip precision, every robustness group present even when
/// empty. parse_record(serialize_record(r)) == r, and semantically equal
/// records serialize to byte-identical documents.
inline std::string serialize_record(const EvaluationRecord& record) {
  ensure_valid(record);
  nlohmann::json doc;
  doc["detector"] = record.detector;
  doc["metric"] = to_string(record.metric);
  auto runs_to_json = [](const std::vector<ScoreRun>& runs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& run : runs) {
      arr.push_back({{"label", run.label}, {"score", run.score}});
    }
    return arr;
  };
  doc["transferability"] = runs_to_json(record.transfer_runs);
  nlohmann::json rob = nlohmann::json::object();
  for (const auto& group : record.robustness) {
    rob[std::string(to_string(group.tag))] = runs_to_json(group.runs);
  }
  doc["robustness"] = rob;
  doc["interpretability"] = {
      {"band", to_string(record.interpretability.band)},
      {"value", record.interpretability.value}};
  if (record.param_count) {
    doc["param_count"] = *record.param_count;
  } else {
    doc["efficiency_override"] = *record.efficiency_override;
  }
  return doc.dump(2) + "\n";
}

}  // namespace scg
