#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ntos/artifacts.hpp"
#include "ntos/tables.hpp"

using namespace ntos;

namespace {

TableArtifact sample_artifact() {
  TableArtifact a;
  a.schema_id = "ntos.test.v1";
  a.columns = {"x", "y"};
  a.set_meta("tool_version", std::string(kToolVersion));
  a.set_meta("alpha", 0.1);
  a.add_row({1.0, 1.0 / 3.0});
  a.add_row({2.0, -1.2345678901234567e-200});
  a.add_row({3.0, std::nan("")});
  return a;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("csv rendering: header comments, 17 digits, newline endings") {
  const std::string csv = render_table(sample_artifact(), TableFormat::csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# schema = ntos.test.v1");
  std::getline(in, line);
  CHECK(line.rfind("# tool_version = ", 0) == 0);
  std::getline(in, line);
  CHECK(line == "# alpha = 0.10000000000000001");
  std::getline(in, line);
  CHECK(line == "x,y");
  std::getline(in, line);
  CHECK(line == "1,0.33333333333333331");
  CHECK(csv.back() == '\n');
  CHECK(csv.find("nan") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("json round trip is exact") {
  const TableArtifact a = sample_artifact();
  const auto path = temp_file("ntos_roundtrip.json");
  write_table(a, TableFormat::json, path.string());
  const TableArtifact b = read_table_json(path.string());
  CHECK(b.schema_id == a.schema_id);
  CHECK(b.columns == a.columns);
  CHECK(b.metadata == a.metadata);
  REQUIRE(b.rows.size() == a.rows.size());
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    for (std::size_t c = 0; c < a.columns.size(); ++c) {
      if (std::isnan(a.rows[r][c])) {
        CHECK(std::isnan(b.rows[r][c]));
      } else {
        CHECK(b.rows[r][c] == a.rows[r][c]);  // bitwise-equal values
      }
    }
  }
  std::filesystem::remove(path);
}

TEST_CASE("rendering is deterministic") {
  const TableArtifact a = sample_artifact();
  CHECK(render_table(a, TableFormat::csv) == render_table(a, TableFormat::csv));
  CHECK(render_table(a, TableFormat::json) == render_table(a, TableFormat::json));
}

TEST_CASE("ragged rows are rejected") {
  TableArtifact a = sample_artifact();
  CHECK_THROWS_AS((a.add_row({1.0})), std::invalid_argument);
  a.rows.back().pop_back();
  CHECK_THROWS_AS(render_table(a, TableFormat::csv), std::invalid_argument);
}

TEST_CASE("spectrum artifact carries 2N-1 rows per size and echoes couplings") {
  const ChainParams p{2.0, 1.5, 1.0, 1e-7, 1e-7};
  std::vector<SpectrumRecord> recs = {spectrum(p, SystemSize{4}),
                                      spectrum(p, SystemSize{6})};
  const TableArtifact a = spectrum_artifact(p, recs);
  CHECK(a.rows.size() == 7 + 11);
  bool has_t1 = false, has_lam = false;
  for (const auto& [k, v] : a.metadata) {
    if (k == "t1") has_t1 = true;
    if (k == "lambda_L") has_lam = true;
  }
  CHECK(has_t1);
  CHECK(has_lam);
}
