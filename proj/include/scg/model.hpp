#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scg/error.hpp"

namespace scg {

// ---------------------------------------------------------------------------
// Metrics and runs
// ---------------------------------------------------------------------------

/// Per-test metric a detector was evaluated with. A record uses exactly one
/// metric for all of its runs; mixing the two inside one record is not
/// representable.
enum class MetricKind { Auc, Acc };

constexpr std::string_view to_string(MetricKind m) {
  return m == MetricKind::Auc ? "AUC" : "ACC";
}

inline std::optional<MetricKind> metric_from_string(std::string_view s) {
  if (s == "AUC") return MetricKind::Auc;
  if (s == "ACC") return MetricKind::Acc;
  return std::nullopt;
}

/// A single experimental result: a label (dataset or perturbation name, e.g.
/// "c23") and a score in [0,1]. Labels are informational; scoring only looks
/// at the score.
struct ScoreRun {
  std::string label;
  double score = 0.0;

  bool operator==(const ScoreRun&) const = default;
};

// ---------------------------------------------------------------------------
// Robustness groups
// ---------------------------------------------------------------------------

enum class GroupTag { Compression, Noise, Adversarial };

inline constexpr std::array<GroupTag, 3> kGroupTags = {
    GroupTag::Compression, GroupTag::Noise, GroupTag::Adversarial};

constexpr std::string_view to_string(GroupTag g) {
  switch (g) {
    case GroupTag::Compression: return "compression";
    case GroupTag::Noise: return "noise";
    case GroupTag::Adversarial: return "adversarial";
  }
  return "?";
}

/// One perturbation category and its runs. An empty run list means the
/// detector was never tested in this category.
struct RobustnessGroup {
  GroupTag tag = GroupTag::Compression;
  std::vector<ScoreRun> runs;

  bool operator==(const RobustnessGroup&) const = default;
};

// ---------------------------------------------------------------------------
// Interpretability
// ---------------------------------------------------------------------------

/// Qualitative interpretability tiers. Each maps to a closed value range;
/// `None` admits exactly 0.0.
enum class InterpretabilityBand {
  None,
  BasicVisualizations,
  InterpretiveAnalyses,
  IntegratedExplainability,
};

inline constexpr std::array<InterpretabilityBand, 4> kInterpretabilityBands = {
    InterpretabilityBand::None,
    InterpretabilityBand::BasicVisualizations,
    InterpretabilityBand::InterpretiveAnalyses,
    InterpretabilityBand::IntegratedExplainability,
};

constexpr std::string_view to_string(InterpretabilityBand b) {
  switch (b) {
    case InterpretabilityBand::None: return "none";
    case InterpretabilityBand::BasicVisualizations:
      return "basic_visualizations";
    case InterpretabilityBand::InterpretiveAnalyses:
      return "interpretive_analyses";
    case InterpretabilityBand::IntegratedExplainability:
      return "integrated_explainability";
  }
  return "?";
}

inline std::optional<InterpretabilityBand> band_from_string(
    std::string_view s) {
  for (auto b : kInterpretabilityBands) {
    if (to_string(b) == s) return b;
  }
  return std::nullopt;
}

struct BandRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Closed [lo, hi] range of admissible values for a band.
constexpr BandRange band_range(InterpretabilityBand b) {
  switch (b) {
    case InterpretabilityBand::None: return {0.0, 0.0};
    case InterpretabilityBand::BasicVisualizations: return {0.3, 0.5};
    case InterpretabilityBand::InterpretiveAnalyses: return {0.6, 0.8};
    case InterpretabilityBand::IntegratedExplainability: return {0.9, 1.0};
  }
  return {0.0, 0.0};
}

struct InterpretabilityRating {
  InterpretabilityBand band = InterpretabilityBand::None;
  double value = 0.0;

  bool operator==(const InterpretabilityRating&) const = default;
};

// ---------------------------------------------------------------------------
// Evaluation record
// ---------------------------------------------------------------------------

/// All raw evidence for one detector. Robustness groups are kept in the
/// fixed order compression, noise, adversarial. Exactly one of `param_count`
/// and `efficiency_override` must be set; the override exists for published
/// efficiency values that are not producible from a parameter count.
struct EvaluationRecord {
  std::string detector;
  MetricKind metric = MetricKind::Auc;
  std::vector<ScoreRun> transfer_runs;
  std::array<RobustnessGroup, 3> robustness = {
      RobustnessGroup{GroupTag::Compression, {}},
      RobustnessGroup{GroupTag::Noise, {}},
      RobustnessGroup{GroupTag::Adversarial, {}},
  };
  InterpretabilityRating interpretability;
  std::optional<std::uint64_t> param_count;
  std::optional<double> efficiency_override;

  bool operator==(const EvaluationRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Policy
// ---------------------------------------------------------------------------

/// How an untested robustness group enters the 3-way mean: as a 0 term
/// (the published convention) or excluded, averaging only tested groups.
enum class MissingGroupPolicy { ZeroFill, Renormalize };

constexpr std::string_view to_string(MissingGroupPolicy p) {
  return p == MissingGroupPolicy::ZeroFill ? "zero-fill" : "renormalize";
}

enum class InterpretabilityMode { Strict, Lenient };

constexpr std::string_view to_string(InterpretabilityMode m) {
  return m == InterpretabilityMode::Strict ? "strict" : "lenient";
}

inline constexpr std::array<double, 4> kEqualWeights = {0.25, 0.25, 0.25,
                                                        0.25};

struct ScoringPolicy {
  MissingGroupPolicy missing_group = MissingGroupPolicy::ZeroFill;
  /// Pillar weights in the order transferability, robustness,
  /// interpretability, efficiency. Must be non-negative and sum to 1.
  std::array<double, 4> weights = kEqualWeights;
  InterpretabilityMode interpretability_mode = InterpretabilityMode::Lenient;
  /// Decimal places for display rounding (half-up).
  int rounding = 2;

  bool operator==(const ScoringPolicy&) const = default;
};

// ---------------------------------------------------------------------------
// Scoring outputs
// ---------------------------------------------------------------------------

enum class NoteKind { EmptyGroup, EfficiencyOverride, InterpretabilityOutOfBand };

constexpr std::string_view to_string(NoteKind k) {
  switch (k) {
    case NoteKind::EmptyGroup: return "empty-group";
    case NoteKind::EfficiencyOverride: return "efficiency-override";
    case NoteKind::InterpretabilityOutOfBand:
      return "interpretability-out-of-band";
  }
  return "?";
}

/// A warning attached to a computed score. `subject` names the affected
/// group or pillar; `message` is the human-readable text.
struct Note {
  NoteKind kind = NoteKind::EmptyGroup;
  std::string subject;
  std::string message;

  bool operator==(const Note&) const = default;
};

struct PillarScores {
  double transferability = 0.0;
  double robustness = 0.0;
  double interpretability = 0.0;
  double efficiency = 0.0;
  std::vector<Note> notes;

  bool operator==(const PillarScores&) const = default;
};

/// Per-group evidence kept alongside the aggregate robustness pillar so the
/// robustness table can be rendered from reports alone. `mean` is 0.0 for an
/// untested group (run_count == 0).
struct GroupSummary {
  GroupTag tag = GroupTag::Compression;
  std::size_t run_count = 0;
  double mean = 0.0;

  bool operator==(const GroupSummary&) const = default;
};

struct ReliabilityReport {
  std::string detector;
  MetricKind metric = MetricKind::Auc;
  PillarScores pillars;
  double scg = 0.0;
  ScoringPolicy policy;
  std::array<GroupSummary, 3> groups{};

  bool operator==(const ReliabilityReport&) const = default;

  bool has_note(NoteKind kind) const {
    for (const auto& n : pillars.notes) {
      if (n.kind == kind) return true;
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// Record validation
// ---------------------------------------------------------------------------

namespace detail {

inline bool valid_score(double s) { return s >= 0.0 && s <= 1.0; }

inline void check_runs(const std::vector<ScoreRun>& runs,
                       const std::string& path,
                       std::vector<ValidationIssue>& out) {
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (runs[i].label.empty()) {
      out.push_back({Severity::Error, Errc::SchemaError, p + ".label",
                     "label must be non-empty"});
    }
    if (!valid_score(runs[i].score)) {
      out.push_back({Severity::Error, Errc::RangeError, p + ".score",
                     "score must lie in [0,1]"});
    }
  }
}

}  // namespace detail

/// Structural validation of an in-memory record. Returns every issue found;
/// an empty result means the record satisfies all type invariants.
inline std::vector<ValidationIssue> validate(const EvaluationRecord& r) {
  std::vector<ValidationIssue> issues;
  if (r.detector.empty()) {
    issues.push_back({Severity::Error, Errc::SchemaError, "detector",
                      "detector name must be non-empty"});
  }
  detail::check_runs(r.transfer_runs, "transferability", issues);
  for (std::size_t i = 0; i < r.robustness.size(); ++i) {
    if (r.robustness[i].tag != kGroupTags[i]) {
      issues.push_back({Severity::Error, Errc::SchemaError,
                        "robustness[" + std::to_string(i) + "]",
                        "groups must appear once each, in the order "
                        "compression, noise, adversarial"});
      continue;
    }
    detail::check_runs(r.robustness[i].runs,
                       "robustness." + std::string(to_string(kGroupTags[i])),
                       issues);
  }
  if (!detail::valid_score(r.interpretability.value)) {
    issues.push_back({Severity::Error, Errc::RangeError,
                      "interpretability.value", "value must lie in [0,1]"});
  }
  if (r.param_count && r.efficiency_override) {
    issues.push_back(
        {Severity::Error, Errc::ConflictError, "efficiency_override",
         "param_count and efficiency_override are mutually exclusive"});
  } else if (!r.param_count && !r.efficiency_override) {
    issues.push_back(
        {Severity::Error, Errc::SchemaError, "param_count",
         "exactly one of param_count or efficiency_override is required"});
  }
  if (r.efficiency_override &&
      !detail::valid_score(*r.efficiency_override)) {
    issues.push_back({Severity::Error, Errc::RangeError, "efficiency_override",
                      "efficiency_override must lie in [0,1]"});
  }
  return issues;
}

/// Throws the first validation issue as an Error. Scoring and serialization
/// entry points call this, so no partially-valid record makes it through.
inline void ensure_valid(const EvaluationRecord& r) {
  const auto issues = validate(r);
  for (const auto& issue : issues) {
    if (issue.severity == Severity::Error) {
      throw Error(issue.code, issue.path + ": " + issue.message);
    }
  }
}

}  // namespace scg
