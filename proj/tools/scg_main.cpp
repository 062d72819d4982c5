// scg: reliability scoring for deepfake detectors.
//
// Subcommands: score, report, verify-paper, sensitivity, validate.
// Exit codes: 0 success, 1 validation or scoring failure, 2 usage error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scg/scg.hpp"

namespace fs = std::filesystem;

namespace {

struct InputDoc {
  std::string source;
  std::string text;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw scg::Error(scg::Errc::SchemaError,
                     "cannot read input file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Expands each path: a directory contributes its *.json files in filename
/// order, anything else is read as a single document.
std::vector<InputDoc> load_inputs(const std::vector<std::string>& paths) {
  std::vector<InputDoc> docs;
  for (const auto& raw : paths) {
    const fs::path path(raw);
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
          files.push_back(entry.path());
        }
      }
      std::sort(files.begin(), files.end());
      for (const auto& file : files) {
        docs.push_back({file.string(), read_file(file)});
      }
    } else {
      docs.push_back({path.string(), read_file(path)});
    }
  }
  return docs;
}

/// Parses every input document (object or array root) and enforces detector
/// uniqueness across the whole run.
std::vector<scg::EvaluationRecord> load_records(
    const std::vector<std::string>& paths) {
  std::vector<scg::EvaluationRecord> records;
  for (const auto& doc : load_inputs(paths)) {
    try {
      auto parsed = scg::parse_any(doc.text);
      records.insert(records.end(), std::make_move_iterator(parsed.begin()),
                     std::make_move_iterator(parsed.end()));
    } catch (const scg::Error& e) {
      throw scg::Error(e.code(), doc.source + ": " + e.message());
    }
  }
  std::set<std::string_view> seen;
  for (const auto& record : records) {
    if (!seen.insert(record.detector).second) {
      throw scg::Error(scg::Errc::DuplicateDetector,
                       "detector '" + record.detector +
                           "' appears more than once across the inputs");
    }
  }
  return records;
}

void write_output(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    throw scg::Error(scg::Errc::SchemaError,
                     "cannot write output file '" + output_path + "'");
  }
  out << text;
}

struct PolicyFlags {
  std::string missing = "zero-fill";
  std::vector<double> weights;
  bool strict_interpretability = false;
};

void add_policy_flags(CLI::App* cmd, PolicyFlags& flags) {
  cmd->add_option("--policy", flags.missing,
                  "Missing-group policy: zero-fill counts an untested "
                  "robustness group as 0, renormalize averages only the "
                  "tested groups")
      ->check(CLI::IsMember({"zero-fill", "renormalize"}));
  cmd->add_option("--weights", flags.weights,
                  "Pillar weights as w1,w2,w3,w4 (transferability, "
                  "robustness, interpretability, efficiency); default equal")
      ->delimiter(',');
  cmd->add_flag("--strict-interpretability", flags.strict_interpretability,
                "Reject interpretability values outside their band instead "
                "of warning");
}

scg::ScoringPolicy to_policy(const PolicyFlags& flags) {
  scg::ScoringPolicy policy;
  policy.missing_group = flags.missing == "renormalize"
                             ? scg::MissingGroupPolicy::Renormalize
                             : scg::MissingGroupPolicy::ZeroFill;
  if (!flags.weights.empty()) {
    if (flags.weights.size() != 4) {
      throw CLI::ValidationError("--weights", "expected exactly four values");
    }
    std::copy(flags.weights.begin(), flags.weights.end(),
              policy.weights.begin());
  }
  policy.interpretability_mode = flags.strict_interpretability
                                     ? scg::InterpretabilityMode::Strict
                                     : scg::InterpretabilityMode::Lenient;
  return policy;
}

std::array<double, 4> parse_weight_set(const std::string& spec) {
  std::vector<double> values;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t consumed = 0;
    try {
      values.push_back(std::stod(item, &consumed));
    } catch (const std::exception&) {
      consumed = std::string::npos;
    }
    if (consumed != item.size()) {
      throw scg::Error(scg::Errc::BadWeights,
                       "cannot parse weight '" + item + "' in '" + spec + "'");
    }
  }
  if (values.size() != 4) {
    throw scg::Error(scg::Errc::BadWeights,
                     "weight set '" + spec + "' must hold four values");
  }
  std::array<double, 4> weights{};
  std::copy(values.begin(), values.end(), weights.begin());
  return weights;
}

int run_verify_paper() {
  const auto result = scg::golden::verify();
  std::size_t cells_passed = 0;
  for (const auto& cell : result.cells) {
    if (cell.pass) ++cells_passed;
    std::cout << (cell.pass ? "PASS " : "FAIL ") << cell.table << ' '
              << cell.detector << ' ' << cell.cell
              << " expected=" << cell.expected << " actual=" << cell.actual
              << '\n';
  }
  std::size_t flags_expected = 0;
  std::size_t flags_matched = 0;
  for (const auto& flag : result.flags) {
    if (flag.expected) ++flags_expected;
    if (flag.expected && flag.present) ++flags_matched;
    std::cout << (flag.pass() ? "PASS " : "FAIL ") << "flag " << flag.detector
              << ' ' << flag.kind << ' '
              << (flag.expected
                      ? (flag.present ? "(expected discrepancy, flagged)"
                                      : "(expected discrepancy, NOT flagged)")
                      : "(unexpected flag)")
              << '\n';
  }
  std::cout << "verify-paper: " << cells_passed << '/' << result.cells.size()
            << " cells match, " << flags_matched << '/' << flags_expected
            << " expected discrepancies flagged"
            << (result.ok ? "" : ", MISMATCHES FOUND") << '\n';
  return result.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reliability scoring for deepfake detectors: four pillars "
               "(transferability, robustness, interpretability, efficiency) "
               "and a global score per detector"};
  app.require_subcommand(1);

  // score
  auto* score_cmd = app.add_subcommand(
      "score", "Score detectors; one JSON report per line on stdout");
  std::vector<std::string> score_inputs;
  std::string score_output;
  PolicyFlags score_policy;
  score_cmd->add_option("--input", score_inputs, "Record file or directory")
      ->required();
  score_cmd->add_option("--output", score_output, "Write to file instead");
  add_policy_flags(score_cmd, score_policy);

  // report
  auto* report_cmd =
      app.add_subcommand("report", "Render a robustness or leaderboard table");
  std::vector<std::string> report_inputs;
  std::string report_output;
  std::string report_table = "leaderboard";
  std::string report_format = "markdown";
  std::string report_sort = "input";
  PolicyFlags report_policy;
  report_cmd->add_option("--input", report_inputs, "Record file or directory")
      ->required();
  report_cmd->add_option("--output", report_output, "Write to file instead");
  report_cmd->add_option("--table", report_table, "Which table to render")
      ->check(CLI::IsMember({"robustness", "leaderboard"}));
  report_cmd->add_option("--format", report_format, "Output format")
      ->check(CLI::IsMember({"markdown", "csv", "jsonl"}));
  report_cmd
      ->add_option("--sort", report_sort,
                   "Row order for the leaderboard: input order or global "
                   "score descending")
      ->check(CLI::IsMember({"input", "scg"}));
  add_policy_flags(report_cmd, report_policy);

  // verify-paper
  auto* verify_cmd = app.add_subcommand(
      "verify-paper",
      "Recompute the bundled case-study dataset and compare against the "
      "published table values");

  // sensitivity
  auto* sens_cmd = app.add_subcommand(
      "sensitivity",
      "Quantify how scores and ranks react to policy and weight choices");
  std::vector<std::string> sens_inputs;
  std::string sens_output;
  std::string sens_analysis = "policies";
  std::string sens_format = "jsonl";
  std::vector<std::string> sens_weight_sets;
  PolicyFlags sens_policy;
  sens_cmd->add_option("--input", sens_inputs, "Record file or directory")
      ->required();
  sens_cmd->add_option("--output", sens_output, "Write to file instead");
  sens_cmd
      ->add_option("--analysis", sens_analysis,
                   "policies: zero-fill vs renormalize; weights: sweep over "
                   "pillar weight sets")
      ->check(CLI::IsMember({"policies", "weights"}));
  sens_cmd->add_option("--format", sens_format, "Output format")
      ->check(CLI::IsMember({"markdown", "csv", "jsonl"}));
  sens_cmd->add_option("--weight-set", sens_weight_sets,
                       "Weight set w1,w2,w3,w4 for --analysis weights; may be "
                       "repeated. Default: equal weights plus the four "
                       "single-pillar sets");
  add_policy_flags(sens_cmd, sens_policy);

  // validate
  auto* validate_cmd = app.add_subcommand(
      "validate", "Check record files against the schema; list every issue");
  std::vector<std::string> validate_inputs;
  validate_cmd
      ->add_option("--input", validate_inputs, "Record file or directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (score_cmd->parsed()) {
      const auto policy = to_policy(score_policy);
      const auto records = load_records(score_inputs);
      std::string out;
      for (const auto& record : records) {
        out += scg::report_to_json(scg::score_detector(record, policy)).dump();
        out += '\n';
      }
      write_output(out, score_output);
      return 0;
    }

    if (report_cmd->parsed()) {
      const auto policy = to_policy(report_policy);
      const auto records = load_records(report_inputs);
      std::vector<scg::ReliabilityReport> reports;
      reports.reserve(records.size());
      for (const auto& record : records) {
        reports.push_back(scg::score_detector(record, policy));
      }
      const auto format = *scg::format_from_string(report_format);
      std::string out;
      if (report_table == "robustness") {
        out = scg::render_robustness_table(reports, format);
      } else {
        const auto sort = report_sort == "scg" ? scg::SortOrder::ByScgDesc
                                               : scg::SortOrder::InputOrder;
        out = scg::render_leaderboard(reports, format, sort);
      }
      write_output(out, report_output);
      return 0;
    }

    if (verify_cmd->parsed()) {
      return run_verify_paper();
    }

    if (sens_cmd->parsed()) {
      const auto policy = to_policy(sens_policy);
      const auto records = load_records(sens_inputs);
      const auto format = *scg::format_from_string(sens_format);
      std::string out;
      if (sens_analysis == "policies") {
        const auto deltas = scg::compare_missing_policies(records, policy);
        out = scg::render_policy_deltas(deltas, format, policy.rounding);
      } else {
        std::vector<std::array<double, 4>> weight_sets;
        if (sens_weight_sets.empty()) {
          weight_sets = {{0.25, 0.25, 0.25, 0.25},
                         {1, 0, 0, 0},
                         {0, 1, 0, 0},
                         {0, 0, 1, 0},
                         {0, 0, 0, 1}};
        } else {
          for (const auto& spec : sens_weight_sets) {
            weight_sets.push_back(parse_weight_set(spec));
          }
        }
        const auto rows = scg::weight_sweep(records, weight_sets, policy);
        out = scg::render_weight_sweep(rows, format, policy.rounding);
      }
      write_output(out, sens_output);
      return 0;
    }

    if (validate_cmd->parsed()) {
      bool failed = false;
      for (const auto& doc : load_inputs(validate_inputs)) {
        const auto issues = scg::validate_document(doc.text);
        if (issues.empty()) {
          std::cout << doc.source << ": ok\n";
          continue;
        }
        for (const auto& issue : issues) {
          failed = failed || issue.severity == scg::Severity::Error;
          std::cout << doc.source << ": " << scg::severity_name(issue.severity)
                    << ": " << (issue.path.empty() ? "(document)" : issue.path)
                    << ": " << issue.message << " ["
                    << scg::errc_name(issue.code) << "]\n";
        }
      }
      return failed ? 1 : 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const scg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
