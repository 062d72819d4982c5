#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "scg/error.hpp"
#include "scg/model.hpp"
#include "scg/report.hpp"
#include "scg/scoring.hpp"

namespace scg {

/// How one detector's global score and rank move when untested robustness
/// groups are excluded from the mean instead of counted as 0.
struct PolicyDelta {
  std::string detector;
  double scg_zero_fill = 0.0;
  double scg_renormalized = 0.0;
  double delta = 0.0;  // scg_renormalized - scg_zero_fill, >= 0
  int rank_zero_fill = 0;
  int rank_renormalized = 0;

  bool operator==(const PolicyDelta&) const = default;
};

namespace detail {

/// 1-based ranks by score descending; ties broken by name ascending.
inline std::vector<int> rank_desc(std::span<const std::string> names,
                                  std::span<const double> scores) {
  std::vector<std::size_t> order(names.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (scores[a] != scores[b]) return scores[a] > scores[b];
                     return names[a] < names[b];
                   });
  std::vector<int> ranks(names.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    ranks[order[pos]] = static_cast<int>(pos) + 1;
  }
  return ranks;
}

}  // namespace detail

/// Scores every record under both missing-group policies (all other policy
/// knobs taken from `base`) and reports global score and rank under each.
inline std::vector<PolicyDelta> compare_missing_policies(
    std::span<const EvaluationRecord> records, const ScoringPolicy& base) {
  ScoringPolicy zero_fill = base;
  zero_fill.missing_group = MissingGroupPolicy::ZeroFill;
  ScoringPolicy renormalize = base;
  renormalize.missing_group = MissingGroupPolicy::Renormalize;

  std::vector<std::string> names;
  std::vector<double> scg_zf, scg_rn;
  names.reserve(records.size());
  for (const auto& record : records) {
    names.push_back(record.detector);
    scg_zf.push_back(score_detector(record, zero_fill).scg);
    scg_rn.push_back(score_detector(record, renormalize).scg);
  }
  const auto ranks_zf = detail::rank_desc(names, scg_zf);
  const auto ranks_rn = detail::rank_desc(names, scg_rn);

  std::vector<PolicyDelta> deltas;
  deltas.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    deltas.push_back({names[i], scg_zf[i], scg_rn[i], scg_rn[i] - scg_zf[i],
                      ranks_zf[i], ranks_rn[i]});
  }
  return deltas;
}

struct WeightSweepCell {
  std::string detector;
  double scg = 0.0;
  int rank = 0;

  bool operator==(const WeightSweepCell&) const = default;
};

struct WeightSweepRow {
  std::array<double, 4> weights{};
  std::vector<WeightSweepCell> cells;  // in record input order
};

/// Recomputes the global score for every record under each weight set.
/// Pillars are computed once per record at full precision; only the final
/// weighted mean varies across sets.
inline std::vector<WeightSweepRow> weight_sweep(
    std::span<const EvaluationRecord> records,
    std::span<const std::array<double, 4>> weight_sets,
    const ScoringPolicy& base) {
  for (const auto& weights : weight_sets) check_weights(weights);

  std::vector<std::string> names;
  std::vector<PillarScores> pillars;
  names.reserve(records.size());
  for (const auto& record : records) {
    ReliabilityReport report = score_detector(record, base);
    names.push_back(report.detector);
    pillars.push_back(std::move(report.pillars));
  }

  std::vector<WeightSweepRow> rows;
  rows.reserve(weight_sets.size());
  for (const auto& weights : weight_sets) {
    WeightSweepRow row;
    row.weights = weights;
    std::vector<double> scores;
    scores.reserve(records.size());
    for (const auto& p : pillars) scores.push_back(global_score(p, weights));
    const auto ranks = detail::rank_desc(names, scores);
    for (std::size_t i = 0; i < names.size(); ++i) {
      row.cells.push_back({names[i], scores[i], ranks[i]});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string render_policy_deltas(std::span<const PolicyDelta> deltas,
                                        DisplayFormat format,
                                        int rounding = 2) {
  if (deltas.empty()) {
    throw Error(Errc::EmptyReportSet, "no policy deltas to render");
  }
  if (format == DisplayFormat::JsonLines) {
    std::string out;
    for (const auto& d : deltas) {
      nlohmann::json doc = {{"analysis", "missing-policy"},
                            {"detector", d.detector},
                            {"scg_zero_fill", d.scg_zero_fill},
                            {"scg_renormalized", d.scg_renormalized},
                            {"delta", d.delta},
                            {"rank_zero_fill", d.rank_zero_fill},
                            {"rank_renormalized", d.rank_renormalized}};
      out += doc.dump();
      out += '\n';
    }
    return out;
  }
  detail::TextTable table;
  table.header = {"Method", "SCG (zero-fill)", "SCG (renormalize)", "Delta",
                  "Rank (zero-fill)", "Rank (renormalize)"};
  for (const auto& d : deltas) {
    table.rows.push_back({d.detector, round_display(d.scg_zero_fill, rounding),
                          round_display(d.scg_renormalized, rounding),
                          round_display(d.delta, rounding),
                          std::to_string(d.rank_zero_fill),
                          std::to_string(d.rank_renormalized)});
  }
  return table.render(format);
}

inline std::string render_weight_sweep(std::span<const WeightSweepRow> rows,
                                       DisplayFormat format,
                                       int rounding = 2) {
  if (rows.empty()) {
    throw Error(Errc::EmptyReportSet, "no sweep rows to render");
  }
  if (format == DisplayFormat::JsonLines) {
    std::string out;
    for (const auto& row : rows) {
      for (const auto& cell : row.cells) {
        nlohmann::json doc = {{"analysis", "weight-sweep"},
                              {"weights", row.weights},
                              {"detector", cell.detector},
                              {"scg", cell.scg},
                              {"rank", cell.rank}};
        out += doc.dump();
        out += '\n';
      }
    }
    return out;
  }
  detail::TextTable table;
  table.header = {"Weights (T,R,I,E)", "Method", "SCG", "Rank"};
  for (const auto& row : rows) {
    std::string weights = nlohmann::json(row.weights).dump();
    for (const auto& cell : row.cells) {
      table.rows.push_back({weights, cell.detector,
                            round_display(cell.scg, rounding),
                            std::to_string(cell.rank)});
    }
  }
  return table.render(format);
}

}  // namespace scg
