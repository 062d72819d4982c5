// Property suite over generated records. Each property runs on at least
// 1000 records; the oracle in support/oracle.hpp is the reference.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "scg/ingest.hpp"
#include "scg/report.hpp"
#include "scg/scoring.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace scg;
using testsupport::GeneratorOptions;
using testsupport::RecordGenerator;

namespace {

constexpr int kIterations = 1000;

ScoringPolicy policy_for(MissingGroupPolicy missing) {
  ScoringPolicy policy;
  policy.missing_group = missing;
  return policy;
}

bool in_unit_range(double x) { return x >= 0.0 && x <= 1.0; }

/// Picks a run (across transfer and robustness) and bumps its score upward.
/// Returns false when the record has no run with room to grow.
bool bump_one_run(RecordGenerator& gen, EvaluationRecord& record) {
  std::vector<double*> slots;
  for (auto& run : record.transfer_runs) slots.push_back(&run.score);
  for (auto& group : record.robustness) {
    for (auto& run : group.runs) slots.push_back(&run.score);
  }
  std::shuffle(slots.begin(), slots.end(), gen.rng());
  for (double* slot : slots) {
    const double room = 1.0 - *slot;
    if (room < 1e-6) continue;
    // Keep the bump well above summation noise.
    const double step = room * (0.001 + 0.999 * gen.uniform_score());
    *slot = std::min(1.0, *slot + step);
    return true;
  }
  return false;
}

}  // namespace

TEST_CASE("property: every score stays in [0,1]") {
  RecordGenerator gen(1);
  for (int i = 0; i < kIterations; ++i) {
    const auto record = gen.next({.ensure_tested_group = true});
    for (auto missing :
         {MissingGroupPolicy::ZeroFill, MissingGroupPolicy::Renormalize}) {
      const auto report = score_detector(record, policy_for(missing));
      REQUIRE(in_unit_range(report.pillars.transferability));
      REQUIRE(in_unit_range(report.pillars.robustness));
      REQUIRE(in_unit_range(report.pillars.interpretability));
      REQUIRE(in_unit_range(report.pillars.efficiency));
      REQUIRE(in_unit_range(report.scg));
    }
  }
}

TEST_CASE("property: raising one run score never lowers T, R or SCG") {
  RecordGenerator gen(2);
  int bumped = 0;
  for (int i = 0; i < kIterations || bumped < kIterations; ++i) {
    auto record = gen.next({.ensure_tested_group = true});
    const auto before = score_detector(record, ScoringPolicy{});
    if (!bump_one_run(gen, record)) continue;
    ++bumped;
    const auto after = score_detector(record, ScoringPolicy{});
    REQUIRE(after.pillars.transferability >= before.pillars.transferability);
    REQUIRE(after.pillars.robustness >= before.pillars.robustness);
    REQUIRE(after.scg >= before.scg);
  }
}

TEST_CASE("property: run order never changes any output bit") {
  RecordGenerator gen(3);
  for (int i = 0; i < kIterations; ++i) {
    auto record = gen.next({.ensure_tested_group = true});
    const auto before = score_detector(record, ScoringPolicy{});

    auto shuffled = record;
    std::shuffle(shuffled.transfer_runs.begin(), shuffled.transfer_runs.end(),
                 gen.rng());
    for (auto& group : shuffled.robustness) {
      std::shuffle(group.runs.begin(), group.runs.end(), gen.rng());
    }
    const auto after = score_detector(shuffled, ScoringPolicy{});

    REQUIRE(after.pillars.transferability == before.pillars.transferability);
    REQUIRE(after.pillars.robustness == before.pillars.robustness);
    REQUIRE(after.pillars.interpretability == before.pillars.interpretability);
    REQUIRE(after.pillars.efficiency == before.pillars.efficiency);
    REQUIRE(after.scg == before.scg);
    for (std::size_t g = 0; g < 3; ++g) {
      REQUIRE(after.groups[g].mean == before.groups[g].mean);
    }
  }
}

TEST_CASE("property: zero-fill never exceeds renormalize") {
  RecordGenerator gen(4);
  for (int i = 0; i < kIterations; ++i) {
    const auto record = gen.next({.ensure_tested_group = true});
    const auto zf =
        score_detector(record, policy_for(MissingGroupPolicy::ZeroFill));
    const auto rn =
        score_detector(record, policy_for(MissingGroupPolicy::Renormalize));
    REQUIRE(zf.pillars.robustness <= rn.pillars.robustness);
    REQUIRE(zf.scg <= rn.scg);
  }
}

TEST_CASE("property: equal-weight SCG equals the plain pillar mean") {
  RecordGenerator gen(5);
  for (int i = 0; i < kIterations; ++i) {
    const auto record = gen.next({.ensure_tested_group = true});
    const auto report = score_detector(record, ScoringPolicy{});
    const auto& p = report.pillars;
    const double plain = (p.transferability + p.robustness +
                          p.interpretability + p.efficiency) /
                         4.0;
    REQUIRE_THAT(report.scg, Catch::Matchers::WithinAbs(plain, 1e-12));
  }
}

TEST_CASE("property: implementation matches the naive oracle") {
  RecordGenerator gen(6);
  for (int i = 0; i < kIterations; ++i) {
    const auto record = gen.next({.ensure_tested_group = true});
    for (auto missing :
         {MissingGroupPolicy::ZeroFill, MissingGroupPolicy::Renormalize}) {
      const bool zero_fill = missing == MissingGroupPolicy::ZeroFill;
      const auto report = score_detector(record, policy_for(missing));
      REQUIRE_THAT(report.pillars.transferability,
                   Catch::Matchers::WithinAbs(
                       testsupport::oracle::transferability(record), 1e-12));
      REQUIRE_THAT(report.pillars.robustness,
                   Catch::Matchers::WithinAbs(
                       testsupport::oracle::robustness(record, zero_fill),
                       1e-12));
      REQUIRE(report.pillars.efficiency ==
              testsupport::oracle::efficiency_pillar(record));
      REQUIRE_THAT(report.scg,
                   Catch::Matchers::WithinAbs(
                       testsupport::oracle::global_score(record, zero_fill),
                       1e-12));
    }
  }
}

TEST_CASE("property: serialization round-trips every generated record") {
  RecordGenerator gen(7);
  for (int i = 0; i < kIterations; ++i) {
    const auto record = gen.next();
    const auto text = serialize_record(record);
    REQUIRE(parse_record(text) == record);
    // Canonical form is stable: re-serialization is byte-identical.
    REQUIRE(serialize_record(parse_record(text)) == text);
  }
}

TEST_CASE("property: the parser survives arbitrary bytes") {
  RecordGenerator gen(8);
  const std::string seed_doc = serialize_record(gen.next());
  int parsed_ok = 0;
  for (int i = 0; i < kIterations; ++i) {
    std::string text;
    if (i % 3 == 0) {
      // Random bytes.
      const auto length = gen.uniform_size(0, 512);
      text.reserve(length);
      for (std::size_t j = 0; j < length; ++j) {
        text.push_back(static_cast<char>(gen.uniform_size(0, 255)));
      }
    } else if (i % 3 == 1) {
      // Truncations of a valid document.
      text = seed_doc.substr(0, gen.uniform_size(0, seed_doc.size()));
    } else {
      // Random single-byte mutations of a valid document.
      text = seed_doc;
      const auto hits = gen.uniform_size(1, 8);
      for (std::size_t j = 0; j < hits; ++j) {
        text[gen.uniform_size(0, text.size() - 1)] =
            static_cast<char>(gen.uniform_size(0, 255));
      }
    }
    try {
      (void)parse_record(text);
      ++parsed_ok;
    } catch (const ParseError& e) {
      // Rejection is fine; crashing is not. Every rejection must carry at
      // least one error-severity issue.
      bool has_error = false;
      for (const auto& issue : e.issues()) {
        has_error = has_error || issue.severity == Severity::Error;
      }
      REQUIRE(has_error);
    } catch (const Error&) {
      // Duplicate-detector errors from array roots.
    }
  }
  // Smoke check that the loop really exercised the parser.
  REQUIRE(parsed_ok >= 0);
}

TEST_CASE("property: efficiency never increases with the parameter count") {
  RecordGenerator gen(10);
  for (int i = 0; i < kIterations; ++i) {
    const std::uint64_t a = gen.param_count();
    const std::uint64_t b = gen.param_count();
    const auto [lo, hi] = std::minmax(a, b);
    REQUIRE(efficiency(lo) >= efficiency(hi));
  }
}

TEST_CASE("property: rounding output re-parses within half an ulp of scale") {
  RecordGenerator gen(9);
  for (int i = 0; i < kIterations; ++i) {
    const double x = gen.uniform_score();
    const int places = static_cast<int>(gen.uniform_size(0, 6));
    const std::string text = round_display(x, places);
    const double back = std::stod(text);
    const double scale = std::pow(10.0, -places);
    REQUIRE(std::abs(back - x) <= 0.5 * scale + 1e-12);
  }
}
