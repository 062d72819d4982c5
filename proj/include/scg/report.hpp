#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scg/error.hpp"
#include "scg/model.hpp"

namespace scg {

enum class DisplayFormat { Markdown, Csv, JsonLines };

inline std::optional<DisplayFormat> format_from_string(std::string_view s) {
  if (s == "markdown") return DisplayFormat::Markdown;
  if (s == "csv") return DisplayFormat::Csv;
  if (s == "jsonl") return DisplayFormat::JsonLines;
  return std::nullopt;
}

enum class SortOrder { InputOrder, ByScgDesc };

/// Half-up decimal rounding of `x` to `places` digits, returned as a string.
/// Works on the exact decimal expansion of the double (binary fractions
/// terminate), so the result is deterministic and free of re-rounding
/// artifacts: 0.4375 -> "0.44", 0.5625 -> "0.56".
inline std::string round_display(double x, int places) {
  if (places < 0) places = 0;
  if (places > 1000) places = 1000;
  const bool negative = std::signbit(x) && x < 0.0;
  // 1100 fractional digits cover the full expansion of any double < 2^63.
  std::string buf(1200, '\0');
  const int written =
      std::snprintf(buf.data(), buf.size(), "%.1100f", std::abs(x));
  buf.resize(static_cast<std::size_t>(written));
  const std::size_t dot = buf.find('.');
  std::string digits = buf.substr(0, dot) + buf.substr(dot + 1);
  std::size_t int_len = dot;

  const std::size_t keep = int_len + static_cast<std::size_t>(places);
  const bool round_up = keep < digits.size() && digits[keep] >= '5';
  digits.resize(keep);
  if (round_up) {
    std::size_t i = digits.size();
    while (i > 0) {
      --i;
      if (digits[i] == '9') {
        digits[i] = '0';
      } else {
        ++digits[i];
        break;
      }
      if (i == 0) {
        digits.insert(digits.begin(), '1');
        ++int_len;
      }
    }
  }

  std::string out = negative ? "-" : "";
  out += digits.substr(0, int_len);
  if (places > 0) {
    out += '.';
    out += digits.substr(int_len);
  }
  return out;
}

namespace detail {

inline std::string csv_cell(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footnotes;  // markdown only

  std::string to_markdown() const {
    std::string out;
    auto emit_row = [&out](const std::vector<std::string>& cells) {
      out += '|';
      for (const auto& cell : cells) {
        out += ' ';
        out += cell;
        out += " |";
      }
      out += '\n';
    };
    emit_row(header);
    out += '|';
    for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
    out += '\n';
    for (const auto& row : rows) emit_row(row);
    if (!footnotes.empty()) {
      out += '\n';
      for (const auto& note : footnotes) {
        out += "\\* ";
        out += note;
        out += '\n';
      }
    }
    return out;
  }

  std::string to_csv() const {
    std::string out;
    auto emit_row = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out += ',';
        out += csv_cell(cells[i]);
      }
      out += '\n';
    };
    emit_row(header);
    for (const auto& row : rows) emit_row(row);
    return out;
  }

  std::string render(DisplayFormat format) const {
    return format == DisplayFormat::Markdown ? to_markdown() : to_csv();
  }
};

inline const GroupSummary& group_of(const ReliabilityReport& report,
                                    GroupTag tag) {
  for (const auto& g : report.groups) {
    if (g.tag == tag) return g;
  }
  return report.groups[0];
}

/// Cell text for one robustness group: the rounded mean when tested,
/// otherwise 0.00 under zero-fill and an em dash under renormalize.
inline std::string group_cell(const ReliabilityReport& report, GroupTag tag) {
  const auto& g = group_of(report, tag);
  if (g.run_count == 0) {
    return report.policy.missing_group == MissingGroupPolicy::ZeroFill
               ? round_display(0.0, report.policy.rounding)
               : "—";
  }
  return round_display(g.mean, report.policy.rounding);
}

}  // namespace detail

/// Full machine-readable form of one report (used for JSON-lines output).
inline nlohmann::json report_to_json(const ReliabilityReport& report) {
  nlohmann::json doc;
  doc["detector"] = report.detector;
  doc["metric"] = to_string(report.metric);
  doc["pillars"] = {{"transferability", report.pillars.transferability},
                    {"robustness", report.pillars.robustness},
                    {"interpretability", report.pillars.interpretability},
                    {"efficiency", report.pillars.efficiency}};
  doc["scg"] = report.scg;
  const int places = report.policy.rounding;
  doc["display"] = {
      {"transferability", round_display(report.pillars.transferability, places)},
      {"robustness", round_display(report.pillars.robustness, places)},
      {"interpretability",
       round_display(report.pillars.interpretability, places)},
      {"efficiency", round_display(report.pillars.efficiency, places)},
      {"scg", round_display(report.scg, places)}};
  nlohmann::json groups = nlohmann::json::object();
  for (const auto& g : report.groups) {
    groups[std::string(to_string(g.tag))] = {{"runs", g.run_count},
                                             {"mean", g.mean}};
  }
  doc["robustness_groups"] = groups;
  nlohmann::json notes = nlohmann::json::array();
  for (const auto& note : report.pillars.notes) {
    notes.push_back({{"kind", to_string(note.kind)},
                     {"subject", note.subject},
                     {"message", note.message}});
  }
  doc["notes"] = notes;
  doc["policy"] = {
      {"missing_group", to_string(report.policy.missing_group)},
      {"weights", report.policy.weights},
      {"interpretability_mode", to_string(report.policy.interpretability_mode)},
      {"rounding", report.policy.rounding}};
  return doc;
}

/// Per-group robustness table: method, metric, the three group means, and
/// the aggregate. Rows keep the caller's order.
inline std::string render_robustness_table(
    std::span<const ReliabilityReport> reports, DisplayFormat format) {
  if (reports.empty()) {
    throw Error(Errc::EmptyReportSet, "no reports to render");
  }
  if (format == DisplayFormat::JsonLines) {
    std::string out;
    for (const auto& report : reports) {
      nlohmann::json doc;
      doc["detector"] = report.detector;
      doc["metric"] = to_string(report.metric);
      nlohmann::json groups = nlohmann::json::object();
      for (const auto& g : report.groups) {
        groups[std::string(to_string(g.tag))] = {
            {"tested", g.run_count > 0},
            {"runs", g.run_count},
            {"mean", g.mean},
            {"display", detail::group_cell(report, g.tag)}};
      }
      doc["groups"] = groups;
      doc["robustness"] = report.pillars.robustness;
      doc["display"] =
          round_display(report.pillars.robustness, report.policy.rounding);
      out += doc.dump();
      out += '\n';
    }
    return out;
  }
  detail::TextTable table;
  table.header = {"Method", "Metric", "Score_comp", "Score_perturb",
                  "Score_adv", "R"};
  for (const auto& report : reports) {
    table.rows.push_back(
        {report.detector, std::string(to_string(report.metric)),
         detail::group_cell(report, GroupTag::Compression),
         detail::group_cell(report, GroupTag::Noise),
         detail::group_cell(report, GroupTag::Adversarial),
         round_display(report.pillars.robustness, report.policy.rounding)});
  }
  return table.render(format);
}

/// Pillar leaderboard: method, metric, the four pillars and the global
/// score. Cells backed by an override or an out-of-band warning carry a `*`
/// marker; markdown output lists the reasons as footnotes.
inline std::string render_leaderboard(std::span<const ReliabilityReport> reports,
                                      DisplayFormat format, SortOrder sort) {
  if (reports.empty()) {
    throw Error(Errc::EmptyReportSet, "no reports to render");
  }
  std::vector<const ReliabilityReport*> ordered;
  ordered.reserve(reports.size());
  for (const auto& report : reports) ordered.push_back(&report);
  if (sort == SortOrder::ByScgDesc) {
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const ReliabilityReport* a, const ReliabilityReport* b) {
                       if (a->scg != b->scg) return a->scg > b->scg;
                       return a->detector < b->detector;
                     });
  }

  if (format == DisplayFormat::JsonLines) {
    std::string out;
    for (const auto* report : ordered) {
      nlohmann::json doc = report_to_json(*report);
      nlohmann::json flags = nlohmann::json::array();
      if (report->has_note(NoteKind::InterpretabilityOutOfBand)) {
        flags.push_back(to_string(NoteKind::InterpretabilityOutOfBand));
      }
      if (report->has_note(NoteKind::EfficiencyOverride)) {
        flags.push_back(to_string(NoteKind::EfficiencyOverride));
      }
      doc["flags"] = flags;
      out += doc.dump();
      out += '\n';
    }
    return out;
  }

  detail::TextTable table;
  table.header = {"Method", "Metric", "T", "R", "I", "E", "SCG"};
  for (const auto* report : ordered) {
    const int places = report->policy.rounding;
    std::string interp = round_display(report->pillars.interpretability, places);
    std::string eff = round_display(report->pillars.efficiency, places);
    for (const auto& note : report->pillars.notes) {
      if (note.kind == NoteKind::InterpretabilityOutOfBand) {
        interp += '*';
        table.footnotes.push_back(report->detector + ": " + note.message);
      } else if (note.kind == NoteKind::EfficiencyOverride) {
        eff += '*';
        table.footnotes.push_back(report->detector + ": " + note.message);
      }
    }
    table.rows.push_back(
        {report->detector, std::string(to_string(report->metric)),
         round_display(report->pillars.transferability, places),
         round_display(report->pillars.robustness, places), interp, eff,
         round_display(report->scg, places)});
  }
  return table.render(format);
}

}  // namespace scg
