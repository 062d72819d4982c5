#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "scg/golden.hpp"
#include "scg/ingest.hpp"

using namespace scg;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const std::map<std::string, std::string> kFiles = {
    {"SCLoRA", "01-sclora.json"},   {"OSDFD", "02-osdfd.json"},
    {"CFM", "03-cfm.json"},         {"FrePGAN", "04-frepgan.json"},
    {"TruthLens", "05-truthlens.json"},
};

}  // namespace

TEST_CASE("embedded documents match the files in data/golden byte for byte") {
  const std::filesystem::path dir =
      std::filesystem::path(SCG_DATA_DIR) / "golden";
  for (const auto& doc : golden::kDocuments) {
    const auto path = dir / kFiles.at(std::string(doc.name));
    REQUIRE(read_file(path) == doc.text);
  }
}

TEST_CASE("bundled documents are in canonical serialized form") {
  for (const auto& doc : golden::kDocuments) {
    const auto record = parse_record(doc.text);
    REQUIRE(serialize_record(record) == doc.text);
  }
}

TEST_CASE("bundled records parse to the expected shapes") {
  const auto records = golden::records();
  REQUIRE(records.size() == 5);

  const auto& sclora = records[0];
  REQUIRE(sclora.detector == "SCLoRA");
  REQUIRE(sclora.param_count == 86'000'000ULL);
  REQUIRE(sclora.robustness[1].runs.empty());
  REQUIRE(sclora.robustness[2].runs.empty());

  const auto& osdfd = records[1];
  REQUIRE(osdfd.efficiency_override == 0.62);
  REQUIRE_FALSE(osdfd.param_count.has_value());

  const auto& truthlens = records[4];
  REQUIRE(truthlens.metric == MetricKind::Acc);
  REQUIRE(truthlens.param_count == 1'000'000'000ULL);
  REQUIRE(truthlens.interpretability.band ==
          InterpretabilityBand::IntegratedExplainability);
}

TEST_CASE("verify recomputes every published cell") {
  const auto result = golden::verify();
  REQUIRE(result.ok);
  REQUIRE(result.cells.size() == 45);  // 5 detectors x (4 + 5) cells
  for (const auto& cell : result.cells) {
    INFO(cell.table << " " << cell.detector << " " << cell.cell << " expected "
                    << cell.expected << " got " << cell.actual);
    REQUIRE(cell.pass);
  }

  REQUIRE(result.flags.size() == 3);
  for (const auto& flag : result.flags) {
    REQUIRE(flag.expected);
    REQUIRE(flag.present);
  }
}
