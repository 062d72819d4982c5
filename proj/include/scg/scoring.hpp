#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "scg/error.hpp"
#include "scg/model.hpp"

namespace scg {

namespace detail {

/// Mean over the multiset of values: the inputs are sorted before
/// accumulation, so the result is bit-identical under any reordering of the
/// runs that produced them.
inline double multiset_mean(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

inline void require_scores_in_range(std::span<const ScoreRun> runs,
                                    std::string_view where) {
  for (const auto& run : runs) {
    if (!valid_score(run.score)) {
      throw Error(Errc::InvalidScore,
                  std::string(where) + " run '" + run.label +
                      "' has score outside [0,1]");
    }
  }
}

}  // namespace detail

/// Mean detector score over unseen datasets.
inline double transferability(std::span<const ScoreRun> runs) {
  if (runs.empty()) {
    throw Error(Errc::EmptyRunSet,
                "transferability needs at least one cross-dataset run");
  }
  detail::require_scores_in_range(runs, "cross-dataset");
  std::vector<double> scores;
  scores.reserve(runs.size());
  for (const auto& run : runs) scores.push_back(run.score);
  return detail::multiset_mean(std::move(scores));
}

struct RobustnessResult {
  double value = 0.0;
  std::array<GroupSummary, 3> groups{};
  std::vector<Note> notes;
};

/// Mean of the per-group means over compression, noise and adversarial runs.
/// Group means are computed first and only then averaged; this differs from a
/// pooled mean whenever group sizes differ. An untested group either counts
/// as a 0 term (ZeroFill) or is dropped from the outer mean (Renormalize).
/// Each untested group is reported in a note.
inline RobustnessResult robustness(const std::array<RobustnessGroup, 3>& groups,
                                   const ScoringPolicy& policy) {
  RobustnessResult result;
  double sum = 0.0;
  int tested = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& group = groups[i];
    const auto name = to_string(group.tag);
    detail::require_scores_in_range(group.runs, name);
    GroupSummary summary{group.tag, group.runs.size(), 0.0};
    if (group.runs.empty()) {
      const bool zero_fill =
          policy.missing_group == MissingGroupPolicy::ZeroFill;
      result.notes.push_back(
          {NoteKind::EmptyGroup, std::string(name),
           std::string(name) + " untested" +
               (zero_fill ? ", counted as 0" : ", excluded from the mean")});
    } else {
      std::vector<double> scores;
      scores.reserve(group.runs.size());
      for (const auto& run : group.runs) scores.push_back(run.score);
      summary.mean = detail::multiset_mean(std::move(scores));
      sum += summary.mean;
      ++tested;
    }
    result.groups[i] = summary;
  }
  if (policy.missing_group == MissingGroupPolicy::Renormalize) {
    if (tested == 0) {
      throw Error(Errc::AllGroupsEmpty,
                  "no robustness group has runs; nothing to renormalize over");
    }
    result.value = sum / static_cast<double>(tested);
  } else {
    result.value = sum / 3.0;
  }
  return result;
}

/// Discrete efficiency score from the total parameter count. Lower bounds
/// are inclusive, upper bounds exclusive.
inline double efficiency(std::uint64_t param_count) noexcept {
  if (param_count < 10'000'000ULL) return 1.0;
  if (param_count < 50'000'000ULL) return 0.8;
  if (param_count < 100'000'000ULL) return 0.6;
  if (param_count < 300'000'000ULL) return 0.4;
  if (param_count < 1'000'000'000ULL) return 0.2;
  return 0.0;
}

inline constexpr std::array<double, 6> kEfficiencyScale = {1.0, 0.8, 0.6,
                                                           0.4, 0.2, 0.0};

/// True if `value` is one of the six discrete efficiency scale steps.
inline bool on_efficiency_scale(double value) {
  for (double step : kEfficiencyScale) {
    if (value == step) return true;
  }
  return false;
}

struct InterpretabilityResult {
  double value = 0.0;
  std::vector<Note> notes;
};

/// Checks a rating against its band's closed range. Out-of-band values are
/// an error in Strict mode and a warning in Lenient mode.
inline InterpretabilityResult interpretability_check(
    const InterpretabilityRating& rating, InterpretabilityMode mode) {
  if (!detail::valid_score(rating.value)) {
    throw Error(Errc::InvalidValue,
                "interpretability value must lie in [0,1]");
  }
  const BandRange range = band_range(rating.band);
  InterpretabilityResult result{rating.value, {}};
  if (rating.value < range.lo || rating.value > range.hi) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "interpretability %g lies outside band '%s' [%g, %g]",
                  rating.value, std::string(to_string(rating.band)).c_str(),
                  range.lo, range.hi);
    if (mode == InterpretabilityMode::Strict) {
      throw Error(Errc::OutOfBand, buf);
    }
    result.notes.push_back(
        {NoteKind::InterpretabilityOutOfBand, "interpretability", buf});
  }
  return result;
}

inline void check_weights(const std::array<double, 4>& weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw Error(Errc::BadWeights, "weights must be non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(Errc::BadWeights, "weights must sum to 1");
  }
}

/// Weighted mean of the four pillars; the global reliability score. With
/// equal weights this reduces bit-exactly to (T + R + I + E) / 4 because
/// scaling by 0.25 is exact.
inline double global_score(const PillarScores& pillars,
                           const std::array<double, 4>& weights) {
  check_weights(weights);
  const std::array<double, 4> values = {
      pillars.transferability, pillars.robustness, pillars.interpretability,
      pillars.efficiency};
  for (double v : values) {
    if (!detail::valid_score(v)) {
      throw Error(Errc::InvalidScore, "pillar value outside [0,1]");
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) sum += weights[i] * values[i];
  return sum;
}

/// Full pipeline for one detector: every pillar, the global score, and all
/// warnings accumulated along the way. Errors are annotated with the
/// detector name.
inline ReliabilityReport score_detector(const EvaluationRecord& record,
                                        const ScoringPolicy& policy) {
  try {
    ensure_valid(record);
    check_weights(policy.weights);

    PillarScores pillars;
    pillars.transferability = transferability(record.transfer_runs);

    RobustnessResult rob = robustness(record.robustness, policy);
    pillars.robustness = rob.value;
    pillars.notes = std::move(rob.notes);

    InterpretabilityResult interp = interpretability_check(
        record.interpretability, policy.interpretability_mode);
    pillars.interpretability = interp.value;
    pillars.notes.insert(pillars.notes.end(), interp.notes.begin(),
                         interp.notes.end());

    if (record.efficiency_override) {
      pillars.efficiency = *record.efficiency_override;
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "efficiency %g taken from override%s", pillars.efficiency,
                    on_efficiency_scale(pillars.efficiency)
                        ? ""
                        : "; value is not on the discrete parameter scale");
      pillars.notes.push_back({NoteKind::EfficiencyOverride, "efficiency", buf});
    } else {
      pillars.efficiency = efficiency(*record.param_count);
    }

    ReliabilityReport report;
    report.detector = record.detector;
    report.metric = record.metric;
    report.scg = global_score(pillars, policy.weights);
    report.pillars = std::move(pillars);
    report.policy = policy;
    report.groups = rob.groups;
    return report;
  } catch (const Error& e) {
    throw Error(e.code(), record.detector.empty()
                              ? e.message()
                              : record.detector + ": " + e.message());
  }
}

}  // namespace scg
