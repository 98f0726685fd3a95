#include "subshift/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <vector>

#include "CLI11.hpp"
#include "subshift/config.hpp"
#include "subshift/experiment.hpp"
#include "subshift/report.hpp"

namespace subshift {

int exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::config:
    case Errc::invalid_spec:
    case Errc::parse:
    case Errc::invalid_input:
    case Errc::no_fixed_point:
      return 2;
    case Errc::insufficient_occurrences:
    case Errc::insufficient_sample:
    case Errc::sample_too_short:
    case Errc::io:
      return 3;
    case Errc::invariant:
      return 4;
    case Errc::oracle_limit:
      return 1;
  }
  return 1;
}

namespace {

struct Flags {
  std::string config;
  std::string sample;
  std::string kind, rules, subst_seed, alpha, rho, base;
  std::size_t length = 0;
  std::string scales, prefixes, words, function;
  std::size_t window = 0, maxlen = 0, starts = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool json = false, csv = false, both = false;
  std::vector<std::string> thresholds;
  bool timings = false;
  bool quiet = false;
};

void add_generator_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "INI experiment file");
  cmd->add_option("--kind", f.kind,
                  "generator: fibonacci, thue-morse, substitution, sturmian, periodic, block-doubling, file");
  cmd->add_option("--length", f.length, "sample length");
  cmd->add_option("--rules", f.rules, "substitution rules, e.g. a:ab,b:a");
  cmd->add_option("--subst-seed", f.subst_seed, "substitution seed letter");
  cmd->add_option("--alpha", f.alpha, "Sturmian slope in (0,1), exact decimal or p/q");
  cmd->add_option("--rho", f.rho, "Sturmian intercept");
  cmd->add_option("--base", f.base, "periodic base word");
}

// Config file first, then flags; flags win.
ExperimentConfig assemble(const CLI::App* cmd, const Flags& f, const std::string& experiment) {
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
  if (given("--kind")) apply_setting(cfg, "generator", "kind", f.kind);
  if (given("--length")) cfg.generator.length = f.length;
  if (given("--rules")) apply_setting(cfg, "generator", "rules", f.rules);
  if (given("--subst-seed")) apply_setting(cfg, "generator", "seed", f.subst_seed);
  if (given("--alpha")) apply_setting(cfg, "generator", "alpha", f.alpha);
  if (given("--rho")) apply_setting(cfg, "generator", "rho", f.rho);
  if (given("--base")) apply_setting(cfg, "generator", "base", f.base);
  if (given("--sample")) {
    apply_setting(cfg, "generator", "kind", "file");
    apply_setting(cfg, "generator", "path", f.sample);
  }
  if (!experiment.empty()) cfg.experiment = experiment;
  if (given("--scales")) apply_setting(cfg, "experiment", "scales", f.scales);
  if (given("--prefixes")) apply_setting(cfg, "experiment", "prefixes", f.prefixes);
  if (given("--words")) apply_setting(cfg, "experiment", "words", f.words);
  if (given("--function")) apply_setting(cfg, "experiment", "function", f.function);
  if (given("--window")) cfg.window = f.window;
  if (given("--maxlen")) cfg.maxlen = f.maxlen;
  if (given("--starts")) cfg.starts = f.starts;
  if (given("--seed")) cfg.rng_seed = f.seed;
  if (given("--out")) cfg.out_dir = f.out;
  if (cfg.out_dir.empty())
    if (const char* env = std::getenv("SUBSHIFT_OUT_DIR"); env && *env) cfg.out_dir = env;
  if (f.json) cfg.format = OutputFormat::json;
  if (f.csv) cfg.format = OutputFormat::csv;
  if (f.both) cfg.format = OutputFormat::both;
  if (f.timings) cfg.timings = true;
  for (const auto& t : f.thresholds) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::config, "--threshold expects name=value, got '" + t + "'");
    apply_setting(cfg, "thresholds", t.substr(0, eq), t.substr(eq + 1));
  }
  validate(cfg);
  return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-sample experiments on subshifts: frequencies, ergodic averages, return words."};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Flags f;

  auto* gen = app.add_subcommand("generate", "write a generated sample word");
  add_generator_flags(gen, f);
  gen->add_option("--out", f.out, "output file (default: stdout)");

  std::string experiment;
  auto* analyze = app.add_subcommand("analyze", "run an experiment and emit CSV/JSON");
  analyze->add_option("experiment", experiment, "experiment name")
      ->required()
      ->check(CLI::IsMember(known_experiments()));
  add_generator_flags(analyze, f);
  analyze->add_option("--sample", f.sample, "sample file (one symbol per character)");
  analyze->add_option("--scales", f.scales, "comma-separated strictly increasing lengths");
  analyze->add_option("--prefixes", f.prefixes, "partitioning-sequence prefix lengths (additive)");
  analyze->add_option("--words", f.words, "comma-separated words: patterns, window word or base words");
  analyze->add_option("--function", f.function, "subadditive function: neg-disjoint or length");
  analyze->add_option("--window", f.window, "window length L");
  analyze->add_option("--maxlen", f.maxlen, "maximal factor length");
  analyze->add_option("--starts", f.starts, "number of Birkhoff start positions");
  analyze->add_option("--seed", f.seed, "seed for Birkhoff start positions");
  analyze->add_option("--out", f.out, "output directory (default: $SUBSHIFT_OUT_DIR or .)");
  auto* json_flag = analyze->add_flag("--json", f.json, "emit JSON only");
  auto* csv_flag = analyze->add_flag("--csv", f.csv, "emit CSV only");
  auto* both_flag = analyze->add_flag("--both", f.both, "emit CSV and JSON");
  json_flag->excludes(csv_flag)->excludes(both_flag);
  csv_flag->excludes(both_flag);
  analyze->add_option("--threshold", f.thresholds, "verdict threshold override name=value")->take_all();
  analyze->add_flag("--timings", f.timings, "include wall-clock timings in the report");
  analyze->add_flag("--quiet", f.quiet, "suppress the stage log");

  std::string report_path;
  auto* rep = app.add_subcommand("report", "re-emit a JSON report as CSV");
  rep->add_option("report", report_path, "JSON report file")->required();
  rep->add_option("--out", f.out, "output file (default: stdout)");
  bool report_json = false;
  rep->add_flag("--json", report_json, "re-emit normalized JSON instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const auto cfg = assemble(gen, f, "");
      const Word w = generate_sample(cfg.generator);
      if (f.out.empty()) {
        out << w.str() << "\n";
      } else {
        std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
        if (!file) throw Error(Errc::io, "cannot write '" + f.out + "'");
        file << w.str() << "\n";
        if (!file) throw Error(Errc::io, "write to '" + f.out + "' failed");
      }
      return 0;
    }
    if (analyze->parsed()) {
      const auto cfg = assemble(analyze, f, experiment);
      const auto report = run(cfg, f.quiet ? nullptr : &err);
      for (const auto& path : write_outputs(report, cfg)) err << "[output] " << path.string() << "\n";
      for (const auto& v : report.verdicts)
        err << "[verdict] " << v.name << " " << (v.pass ? "pass" : "fail") << " (" << format_number(v.value) << " "
            << v.relation << " " << format_number(v.threshold) << ")\n";
      return 0;
    }
    if (rep->parsed()) {
      const auto report = read_report(report_path);
      const std::string text = report_json ? render_json(report) : render_csv(report);
      if (f.out.empty()) {
        out << text;
      } else {
        std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
        if (!file) throw Error(Errc::io, "cannot write '" + f.out + "'");
        file << text;
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "subshift: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "subshift: unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace subshift
