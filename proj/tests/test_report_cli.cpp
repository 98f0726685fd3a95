#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "subshift/cli.hpp"
#include "subshift/config.hpp"
#include "subshift/error.hpp"
#include "subshift/experiment.hpp"
#include "subshift/report.hpp"

using namespace subshift;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "subshift_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "subshift");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.618033988749895) == "0.618033989");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-7) == "1e-07");
  CHECK(format_number(123456789012.0) == "1.23456789e+11");
  CHECK(format_cell(Cell{std::string("a,b")}) == "\"a,b\"");
  CHECK(format_cell(Cell{true}) == "true");
  CHECK(format_cell(Cell{std::int64_t{42}}) == "42");
}

TEST_CASE("csv rendering") {
  ReportEnvelope r;
  r.experiment = "frequencies";
  r.columns = {"scale", "estimate", "oscillation"};
  CHECK(render_csv(r) == "scale,estimate,oscillation\n");
  r.rows.push_back({std::int64_t{1024}, 0.5, 0.25});
  CHECK(render_csv(r) == "scale,estimate,oscillation\n1024,0.5,0.25\n");
}

TEST_CASE("json round trip") {
  ReportEnvelope r;
  r.experiment = "diagnostics";
  r.config = {{"generator.kind", "fibonacci"}, {"experiment.scales", "1,2"}};
  r.columns = {"quantity", "value", "scale", "verdict"};
  r.rows = {{std::string("C_est"), 0.1 + 0.2, std::int64_t{100000}, std::string("")},
            {std::string("periodic_flag"), false, std::int64_t{3}, std::string("")}};
  r.verdicts = {judge("pq", 0.3819660112501051, ">", 0.05)};
  r.notes = {"note"};
  CHECK(report_from_json(to_json(r)) == r);
  const auto text = render_json(r);
  CHECK(report_from_json(nlohmann::ordered_json::parse(text)) == r);
  r.timings = {{"index", 0.125}};
  CHECK(report_from_json(to_json(r)) == r);
  auto bad = to_json(r);
  bad["schema"] = "other/9";
  try {
    report_from_json(bad);
    FAIL("foreign schema accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
  }
}

TEST_CASE("config file and validation") {
  const auto dir = scratch("config");
  const auto ini = dir / "exp.ini";
  std::ofstream(ini) << "[generator]\nkind = thue-morse\nlength = 5000\n\n[experiment]\nname = frequencies\n"
                        "scales = 64, 128,256\nwords = 01\n\n[output]\nformat = csv\n\n[thresholds]\noscillation = 0.1\n";
  auto cfg = load_config(ini);
  CHECK(cfg.generator.kind == "thue-morse");
  CHECK(cfg.generator.length == 5000);
  CHECK(cfg.scales == std::vector<std::size_t>{64, 128, 256});
  CHECK(cfg.words == std::vector<std::string>{"01"});
  CHECK(cfg.format == OutputFormat::csv);
  CHECK(cfg.thresholds.get("oscillation") == 0.1);
  validate(cfg);

  cfg.scales = {10, 5};
  try {
    validate(cfg);
    FAIL("unsorted scales accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config);
    CHECK(std::string(e.what()).find("scales") != std::string::npos);
  }

  std::ofstream(dir / "bad.ini") << "[experiment]\nbogus = 1\n";
  CHECK_THROWS_AS(load_config(dir / "bad.ini"), Error);
  std::ofstream(dir / "bad2.ini") << "[thresholds]\npq = 2\n";
  CHECK_THROWS_AS(load_config(dir / "bad2.ini"), Error);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(Errc::config) == 2);
  CHECK(exit_code(Errc::invalid_spec) == 2);
  CHECK(exit_code(Errc::insufficient_sample) == 3);
  CHECK(exit_code(Errc::io) == 3);
  CHECK(exit_code(Errc::invariant) == 4);
}

TEST_CASE("cli: unsorted scales exit 2 naming scales") {
  const auto r = cli({"analyze", "frequencies", "--length", "1000", "--scales", "64,32", "--out",
                      scratch("unsorted").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("scales") != std::string::npos);
}

TEST_CASE("cli: flag errors") {
  CHECK(cli({"analyze", "nonsense"}).code == 2);
  CHECK(cli({"analyze", "frequencies", "--threshold", "pq=7", "--length", "100"}).code == 2);
  CHECK(cli({"analyze", "frequencies", "--threshold", "nope=0.1", "--length", "100"}).code == 2);
  CHECK(cli({"analyze", "frequencies", "--kind", "sturmian", "--alpha", "2", "--length", "100"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli: insufficient sample and io errors exit 3") {
  const auto dir = scratch("codes");
  auto r = cli({"analyze", "returns", "--kind", "block-doubling", "--length", "4096", "--scales", "4", "--out",
                dir.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("occurs only once") != std::string::npos);
  r = cli({"analyze", "frequencies", "--length", "100", "--scales", "1000", "--out", dir.string()});
  CHECK(r.code == 3);
  r = cli({"analyze", "frequencies", "--sample", (dir / "missing.txt").string(), "--out", dir.string()});
  CHECK(r.code == 3);
  std::ofstream(dir / "blocker") << "x";
  r = cli({"analyze", "frequencies", "--length", "1000", "--out", (dir / "blocker" / "sub").string()});
  CHECK(r.code == 3);
  CHECK(cli({"report", (dir / "missing.json").string()}).code == 3);
}

TEST_CASE("cli: frequencies pipeline writes both formats") {
  const auto dir = scratch("freq");
  const auto r = cli({"analyze", "frequencies", "--length", "100000", "--scales", "1024,8192,65536", "--words", "a",
                      "--out", dir.string(), "--quiet"});
  REQUIRE(r.code == 0);
  const auto csv = slurp(dir / "frequencies.csv");
  CHECK(csv.rfind("scale,estimate,oscillation\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  const auto rep = read_report(dir / "frequencies.json");
  CHECK(rep.schema == "subshift-report/1");
  CHECK(rep.verdicts.at(0).name == "oscillation");
  CHECK(rep.verdicts.at(0).threshold == 0.05);

  const auto again = cli({"report", (dir / "frequencies.json").string()});
  CHECK(again.code == 0);
  CHECK(again.out == csv);
}

TEST_CASE("cli: flags override the config file") {
  const auto dir = scratch("override");
  std::ofstream(dir / "c.ini") << "[generator]\nkind = fibonacci\nlength = 4000\n[experiment]\nname = frequencies\n"
                                  "scales = 10,20\n";
  const auto r = cli({"analyze", "frequencies", "--config", (dir / "c.ini").string(), "--scales", "100,200", "--csv",
                      "--out", dir.string(), "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "frequencies.csv"));
  CHECK_FALSE(fs::exists(dir / "frequencies.json"));
  const auto csv = slurp(dir / "frequencies.csv");
  CHECK(csv.find("\n100,") != std::string::npos);
  CHECK(csv.find("\n10,") == std::string::npos);
}

TEST_CASE("cli: diagnostics on a periodic sample") {
  const auto dir = scratch("diag");
  const auto r = cli({"analyze", "diagnostics", "--kind", "periodic", "--base", "abc", "--length", "30000", "--out",
                      dir.string(), "--quiet"});
  REQUIRE(r.code == 0);
  const auto csv = slurp(dir / "diagnostics.csv");
  CHECK(csv.rfind("quantity,value,scale,verdict\n", 0) == 0);
  CHECK(csv.find("periodic_flag,true") != std::string::npos);
  const auto rep = read_report(dir / "diagnostics.json");
  bool found = false;
  for (const auto& v : rep.verdicts)
    if (v.name == "periodic-flag") found = v.pass;
  CHECK(found);
}

TEST_CASE("cli: generate") {
  auto r = cli({"generate", "--kind", "fibonacci", "--length", "8"});
  CHECK(r.code == 0);
  CHECK(r.out == "abaababa\n");
  r = cli({"generate", "--kind", "substitution", "--rules", "0:01,1:10", "--length", "8"});
  CHECK(r.out == "01101001\n");
  r = cli({"generate", "--kind", "sturmian", "--alpha", "1/2", "--length", "6"});
  CHECK(r.out == "010101\n");
  const auto dir = scratch("gen");
  r = cli({"generate", "--kind", "block-doubling", "--length", "7", "--out", (dir / "s.txt").string()});
  CHECK(slurp(dir / "s.txt") == "0110000\n");
  const auto a = cli({"analyze", "returns", "--sample", (dir / "s.txt").string(), "--scales", "1", "--out",
                      dir.string(), "--quiet"});
  CHECK(a.code == 0);
}

TEST_CASE("output directory from the environment") {
  const auto dir = scratch("env");
  setenv("SUBSHIFT_OUT_DIR", dir.string().c_str(), 1);
  const auto r = cli({"analyze", "frequencies", "--length", "2000", "--scales", "100", "--quiet"});
  unsetenv("SUBSHIFT_OUT_DIR");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "frequencies.csv"));
}

TEST_CASE("every experiment runs and is deterministic") {
  for (const auto& name : known_experiments()) {
    ExperimentConfig cfg;
    cfg.experiment = name;
    cfg.generator.kind = name == "set-failure" ? "block-doubling" : "fibonacci";
    cfg.generator.length = 1 << 17;
    if (name == "set-failure") cfg.words = {"0", "000", "0000000"};
    const auto a = run(cfg);
    const auto b = run(cfg);
    CHECK(render_csv(a) == render_csv(b));
    CHECK(render_json(a) == render_json(b));
    CHECK(report_from_json(to_json(a)) == a);
    CHECK(a.timings.empty());
    CHECK_FALSE(a.rows.empty());
  }
}
