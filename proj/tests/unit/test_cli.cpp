#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qbloch/cli.hpp"
#include "qbloch/errors.hpp"
#include "qbloch/io.hpp"

using namespace qbloch;

namespace {

const std::filesystem::path kData = QBLOCH_DATA_DIR;

struct Outcome {
  int status;
  std::string out, err;
};

Outcome call(RunConfig cfg) {
  std::ostringstream out, err;
  const int status = run(cfg, out, err);
  return {status, out.str(), err.str()};
}

RunConfig config(Command c, const std::string& file) {
  RunConfig cfg;
  cfg.command = c;
  cfg.input_path = (kData / file).string();
  return cfg;
}

}  // namespace

TEST_CASE("solve and cv on the 4_1 family") {
  const auto s = call(config(Command::solve, "four_one.json"));
  REQUIRE(s.status == 0);
  const auto pts = json::parse(s.out)["points"];
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) CHECK(std::abs(std::abs(p["u"][0][1].get<double>()) - kPi / 3) < 1e-10);

  const auto c = call(config(Command::cv, "four_one.json"));
  REQUIRE(c.status == 0);
  const auto mods = json::parse(c.out)["cv"]["moduli"];
  REQUIRE(mods.size() == 2);
  CHECK(std::abs(mods[0].get<double>() - 0.7239261119) < 1e-9);
  CHECK(std::abs(mods[1].get<double>() - 1.3813564445) < 1e-9);
}

TEST_CASE("bloch reports regulator values") {
  const auto b = call(config(Command::bloch, "four_one.json"));
  REQUIRE(b.status == 0);
  const auto el = json::parse(b.out)["elements"];
  REQUIRE(el.size() == 2);
  for (const auto& e : el) {
    CHECK(std::abs(std::abs(e["rogers"]["value"][1].get<double>()) - 2.0298832128193074) < 1e-9);
    CHECK(e["diagram_defect"].get<double>() < 1e-9);
  }
}

TEST_CASE("seq emits exact rows as CSV") {
  auto cfg = config(Command::seq, "four_one_special.json");
  cfg.n_max = 3;
  cfg.mode = "exact";
  cfg.format = "csv";
  const auto r = call(cfg);
  REQUIRE(r.status == 0);
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> re;
  std::getline(in, line);
  CHECK(line == "n,re,im,log_abs,growth_estimate");
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string n, value;
    std::getline(row, n, ',');
    std::getline(row, value, ',');
    re.push_back(value);
  }
  CHECK(re == std::vector<std::string>{"0", "1", "5", "13"});
}

TEST_CASE("output file is written") {
  auto cfg = config(Command::cv, "half.json");
  const auto path = std::filesystem::temp_directory_path() / "qbloch_cli_cv.json";
  cfg.output = path.string();
  REQUIRE(call(cfg).status == 0);
  std::ifstream in(path);
  const auto j = json::parse(in);
  CHECK(j["cv"]["values"].size() == 1);
}

TEST_CASE("validation errors exit with status 1") {
  auto bad = std::filesystem::temp_directory_path() / "qbloch_cli_bad.json";
  std::ofstream(bad) << R"({"r": 0, "Q": {"matrix": [[1]], "linear": ["0"]}, "L": {"coeffs": [1]}, "epsilon": 1, "factors": []})";
  RunConfig cfg;
  cfg.command = Command::solve;
  cfg.input_path = bad.string();
  const auto r = call(cfg);
  CHECK(r.status == 1);
  const auto e = json::parse(r.err);
  CHECK(e["error"] == "SchemaError");
  CHECK(e["issues"][0]["pointer"] == "/Q/linear/0");

  auto seq_plain = config(Command::seq, "four_one.json");
  CHECK(call(seq_plain).status == 1);
  auto csv_solve = config(Command::solve, "four_one.json");
  csv_solve.format = "csv";
  CHECK(call(csv_solve).status == 1);
  RunConfig none;
  none.command = Command::cv;
  CHECK(json::parse(call(none).err)["error"] == "ConfigError");
}

TEST_CASE("numerical failures exit with status 2") {
  // eps (1 - z) = z^0 with eps = +1 has no solution in C**
  auto dir = std::filesystem::temp_directory_path() / "qbloch_cli_empty.json";
  std::ofstream(dir) << to_json(one_variable_family(0, 1, 1)).dump();
  RunConfig cfg;
  cfg.command = Command::solve;
  cfg.input_path = dir.string();
  cfg.starts = 20;
  const auto r = call(cfg);
  CHECK(r.status == 2);
  CHECK(json::parse(r.err)["error"] == "ConvergenceError");

  auto sing = config(Command::sing, "four_one_special.json");
  sing.n_max = 150;
  CHECK(call(sing).status == 1);
}

TEST_CASE("parse_command") {
  CHECK(parse_command("selftest") == Command::selftest);
  CHECK_THROWS_AS(parse_command("frobnicate"), ConfigError);
}
