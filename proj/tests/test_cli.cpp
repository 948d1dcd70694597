#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Case {
  std::string name;
  std::vector<std::string> args;
  int exit_code;
};

// Inputs are referenced relative to a scratch directory holding a copy of
// fixtures/inputs, so output never depends on the checkout location.
const std::vector<Case>& cases() {
  static const std::vector<Case> all = {
      {"check_torus", {"check", "inputs/torus.2cx"}, 0},
      {"check_three_squares", {"check", "inputs/three_squares.2cx"}, 1},
      {"check_pinched", {"check", "inputs/pinched_triangles.2cx"}, 1},
      {"check_rp2", {"check", "inputs/rp2.2cx"}, 1},
      {"check_rp2_json", {"--out", "json", "check", "inputs/rp2.2cx"}, 1},
      {"homology_s3_z", {"--ring", "z", "homology", "inputs/closed_s3.2cx"}, 0},
      {"homology_rp2_z", {"--ring", "z", "homology", "inputs/rp2.2cx"}, 0},
      {"homology_rel", {"homology", "--rel", "inputs/closed_s3.2cx", "inputs/closed_s3_t.cells", "--ring", "q"}, 0},
      {"homology_rel_nested", {"homology", "--rel", "inputs/nested2.2cx", "inputs/nested2_inner.cells"}, 0},
      {"homology_cone", {"homology", "inputs/closed_s3.2cx", "--cone", "c+"}, 0},
      {"adm_validate", {"adm", "validate", "inputs/t_itself.adm"}, 0},
      {"adm_report_figlnk", {"adm", "report", "inputs/figlnk.adm"}, 0},
      {"adm_report_json", {"--out", "json", "adm", "report", "inputs/t_itself_plus_mirror.adm"}, 0},
      {"adm_normalize_figlnk", {"adm", "normalize", "inputs/figlnk.adm"}, 0},
      {"adm_normalize_fold", {"adm", "normalize", "inputs/fold.adm"}, 0},
      {"adm_normalize_double_fold", {"adm", "normalize", "inputs/double_fold.adm"}, 2},
      {"adm_promote", {"adm", "promote", "inputs/t_itself_plus_mirror.adm", "--eps", "1/10", "-o", "promoted.adm"}, 0},
      {"scl_ab", {"scl", "[a,b]", "--basis", "a,b"}, 0},
      {"scl_abcd", {"scl", "[a,b][c,d]"}, 0},
      {"scl_chain", {"scl", "a + b + AB"}, 0},
      {"scl_infinite", {"scl", "a"}, 0},
      {"scl_json", {"--out", "json", "scl", "[a,b]"}, 0},
      {"scl_compare", {"scl", "[a,b]", "--compare", "a,b,c,d"}, 0},
      {"scl_sandwich", {"scl", "--sandwich", "3"}, 0},
      {"scl_certificate", {"scl", "[a,b][c,d]", "--certificate", "cert.json"}, 0},
      {"verify_certificate", {"verify", "cert.json"}, 0},
      {"verify_main_fold", {"verify-main", "--surface", "inputs/fold.adm", "--sub", "inputs/closed_s3_t.cells", "--mode", "standard"}, 2},
      {"verify_main_nested", {"verify-main", "--surface", "inputs/t_itself_nested2.adm", "--sub", "inputs/nested2_inner.cells"}, 0},
      {"verify_main_s3_standard", {"verify-main", "--surface", "inputs/t_itself.adm", "--sub", "inputs/closed_s3_t.cells"}, 1},
      {"verify_main_s3_perfect", {"verify-main", "--surface", "inputs/t_itself.adm", "--sub", "inputs/closed_s3_t.cells", "--mode", "perfect"}, 0},
      {"verify_main_sigma", {"verify-main", "--surface", "inputs/sigma_genus1.adm", "--sub", "inputs/closed_s3_t.cells", "--mode", "perfect"}, 1},
      {"harness_a_genus1", {"harness", "A", "--genus", "1"}, 0},
      {"harness_a_genus2", {"harness", "A", "--genus", "2"}, 0},
      {"harness_b", {"harness", "B"}, 0},
      {"fixtures_list", {"fixtures", "list"}, 0},
      {"fixtures_dump", {"fixtures", "dump", "closed_s3"}, 0},
      {"usage_no_subcommand", {}, 2},
      {"usage_bad_ring", {"--ring", "x", "check", "inputs/torus.2cx"}, 2},
      {"usage_missing_file", {"check", "inputs/nope.2cx"}, 2},
      {"usage_bad_chain", {"scl", "aA"}, 2},
      {"usage_bad_mode", {"verify-main", "--surface", "inputs/t_itself.adm", "--sub", "inputs/closed_s3_t.cells", "--mode", "loose"}, 2},
      {"usage_rel_without_cells", {"homology", "--rel", "inputs/closed_s3.2cx"}, 2},
  };
  return all;
}

struct Run {
  int code;
  std::string text;
};

Run run(const Case& c) {
  std::ostringstream out, err;
  const int code = scltopo::run_cli(c.args, out, err);
  std::string text = out.str();
  if (!err.str().empty()) text += "--- stderr\n" + err.str();
  text += "--- exit " + std::to_string(code) + "\n";
  return {code, text};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Scratch {
  fs::path old = fs::current_path();
  fs::path dir = fs::temp_directory_path() / "scltopo_cli_golden";
  Scratch() {
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::copy(fs::path(SCLTOPO_FIXTURES) / "inputs", dir / "inputs", fs::copy_options::recursive);
    fs::current_path(dir);
  }
  ~Scratch() {
    fs::current_path(old);
    fs::remove_all(dir);
  }
};

}  // namespace

TEST_CASE("CLI output matches the golden files byte for byte") {
  Scratch scratch;
  const fs::path golden = fs::path(SCLTOPO_FIXTURES) / "golden";
  const bool update = std::getenv("SCLTOPO_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : cases()) {
    CAPTURE(c.name);
    const Run r = run(c);
    CHECK(r.code == c.exit_code);
    const fs::path file = golden / (c.name + ".txt");
    if (update) {
      std::ofstream(file, std::ios::binary) << r.text;
      continue;
    }
    REQUIRE(fs::exists(file));
    CHECK(r.text == slurp(file));
  }
}

TEST_CASE("CLI output is stable across runs") {
  Scratch scratch;
  for (const char* name : {"scl_abcd", "adm_normalize_figlnk", "harness_b", "homology_cone"}) {
    for (const auto& c : cases()) {
      if (c.name != name) continue;
      CAPTURE(c.name);
      CHECK(run(c).text == run(c).text);
    }
  }
}

TEST_CASE("certificates written by scl replay, and tampering is caught") {
  Scratch scratch;
  std::ostringstream out, err;
  REQUIRE(scltopo::run_cli({"scl", "[a,b]", "--certificate", "c.json"}, out, err) == 0);
  CHECK(scltopo::run_cli({"verify", "c.json"}, out, err) == 0);
  std::string text = slurp("c.json");
  const auto at = text.find("\"optimum\": \"1/2\"");
  REQUIRE(at != std::string::npos);
  text.replace(at, 16, "\"optimum\": \"1/3\"");
  std::ofstream("c.json", std::ios::binary) << text;
  std::ostringstream out2, err2;
  CHECK(scltopo::run_cli({"verify", "c.json"}, out2, err2) == 1);
}

TEST_CASE("promote writes a surface that validates") {
  Scratch scratch;
  std::ostringstream out, err;
  REQUIRE(scltopo::run_cli({"adm", "promote", "inputs/t_itself_plus_mirror.adm", "--eps", "1/2", "-o", "p.adm"}, out, err) == 0);
  std::ostringstream out2, err2;
  CHECK(scltopo::run_cli({"adm", "validate", "p.adm"}, out2, err2) == 0);
}
