#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NTOS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "ntos_cli_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 64") {
  CHECK(run_cli("--definitely-not-a-flag") == 64);
  CHECK(run_cli("nsweep --n not-a-range --out /dev/null") == 64);
  CHECK(run_cli("curves --kind moebius --out /dev/null") == 64);
}

TEST_CASE("invalid parameters exit with 1") {
  TempDir tmp;
  // |t1| == |gamma| is rejected by the model layer
  CHECK(run_cli("nsweep --t1 1 --gamma 1 --out " + tmp.file("x.csv")) == 1);
}

TEST_CASE("nsweep artifact has the documented schema") {
  TempDir tmp;
  const std::string out = tmp.file("sweep.csv");
  REQUIRE(run_cli("nsweep --t1 2 --t2 1.5 --gamma 1 --lambda-l 1e-7 "
                  "--lambda-r 1e-7 --n 2:12 --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("# schema = ntos.nsweep.v1", 0) == 0);
  CHECK(text.find("\nN,re_emin,im_emin,ln_abs_emin,pred_ln_abs\n") !=
        std::string::npos);
  // 11 sizes -> 11 data rows after the header block
  int rows = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#' && line[0] != 'N') ++rows;
  }
  CHECK(rows == 11);
}

TEST_CASE("spectrum artifact row count follows the matrix dimension") {
  TempDir tmp;
  const std::string out = tmp.file("spec.json");
  REQUIRE(run_cli("spectrum --t1 2 --t2 1.5 --gamma 1 --lambda-l 1e-7 "
                  "--lambda-r 1e-7 --n 5 --format json --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"ntos.spectrum.v1\"") != std::string::npos);
  // one column array carries 2N-1 = 9 entries
  CHECK(text.find("\"is_emin\"") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  TempDir tmp;
  const std::string a = tmp.file("a.csv"), b = tmp.file("b.csv");
  const std::string args = "nsweep --t1 2.5 --t2 2.8 --gamma 1 --lambda-l 1e-5 "
                           "--lambda-r 1e-5 --n 2:30 --out ";
  REQUIRE(run_cli(args + a) == 0);
  REQUIRE(run_cli(args + b) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("multi-quantity phase run emits one file per quantity") {
  TempDir tmp;
  const std::string out = tmp.file("grid.csv");
  REQUIRE(run_cli("phase --quantity slope --quantity winding --gamma 1 "
                  "--lambda-l 1e-5 --lambda-r 1e-5 --t1 -4:4:21 --t2 -4:4:21 "
                  "--out " + out) == 0);
  CHECK(fs::exists(tmp.file("grid_slope.csv")));
  CHECK(fs::exists(tmp.file("grid_winding.csv")));
  CHECK(!fs::exists(out));
}

TEST_CASE("config file overrides flags and rejects unknown keys") {
  TempDir tmp;
  const std::string cfg = tmp.file("run.json");
  const std::string out = tmp.file("c.csv");
  {
    std::ofstream f(cfg);
    f << R"({"t1": 2.0, "t2": 1.5, "n": "2:8"})";
  }
  REQUIRE(run_cli("nsweep --t1 99 --gamma 1 --lambda-l 1e-7 --lambda-r 1e-7 "
                  "--config " + cfg + " --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("# t1 = 2\n") != std::string::npos);

  {
    std::ofstream f(cfg);
    f << R"({"t1": 2.0, "frobnicate": 1})";
  }
  CHECK(run_cli("nsweep --gamma 1 --config " + cfg + " --out " + out) == 64);
}

TEST_CASE("curves artifact samples both branches") {
  TempDir tmp;
  const std::string out = tmp.file("pbc.csv");
  REQUIRE(run_cli("curves --t1 2 --t2 1.5 --gamma 1 --kind pbc --samples 64 "
                  "--out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("parameter,re_plus,im_plus,re_minus,im_minus") !=
        std::string::npos);
  CHECK(text.find("# kind = PBC") != std::string::npos);
}

TEST_CASE("unidir requires exactly one zeroed coupling") {
  TempDir tmp;
  CHECK(run_cli("unidir --t1 2.5 --t2 2.8 --gamma 1 --lambda-l 1e-5 "
                "--lambda-r 1e-5 --out " + tmp.file("u.csv")) == 64);
  CHECK(run_cli("unidir --t1 2.5 --t2 2.8 --gamma 1 --lambda-l 1e-5 "
                "--zeroed r --n 2:20 --out " + tmp.file("u.csv")) == 0);
}
