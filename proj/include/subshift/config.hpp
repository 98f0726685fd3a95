#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subshift/ergodic.hpp"
#include "subshift/word.hpp"

namespace subshift {

// Where the sample comes from.
struct GeneratorSpec {
  // fibonacci | thue-morse | substitution | sturmian | periodic | block-doubling | file
  std::string kind = "fibonacci";
  std::size_t length = 1'000'000;
  std::string rules;  // substitution: "a:ab,b:a"
  std::string seed;   // substitution seed letter, optional
  std::string alpha;  // sturmian slope, exact decimal or p/q
  std::string rho = "0";
  std::string base;   // periodic base word
  std::string path;   // file
};

enum class OutputFormat { csv, json, both };

struct ExperimentConfig {
  GeneratorSpec generator;
  // frequencies | additive | birkhoff | subadditive | diagnostics | returns | set-failure
  std::string experiment;
  std::vector<std::size_t> scales;
  std::size_t maxlen = 16;
  std::size_t window = 0;
  // Function spec: patterns, window word, base words; meaning depends on the experiment.
  std::vector<std::string> words;
  // subadditive: neg-disjoint | length
  std::string function = "neg-disjoint";
  std::vector<std::size_t> prefixes;  // additive: partitioning-sequence lengths
  std::size_t starts = 50;            // birkhoff
  std::uint64_t rng_seed = 1;         // birkhoff start positions
  std::filesystem::path out_dir;
  OutputFormat format = OutputFormat::both;
  bool timings = false;
  Thresholds thresholds;

  // Ordered key/value view of everything above, used as the config echo.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

const std::vector<std::string>& known_experiments();

std::vector<std::size_t> parse_size_list(const std::string& key, const std::string& text);
std::size_t parse_size(const std::string& key, const std::string& text);
OutputFormat parse_format(const std::string& text);
std::string to_string(OutputFormat f);

// Reads an INI file with sections [generator], [experiment], [output] and
// [thresholds]. Unknown sections or keys are config errors.
ExperimentConfig load_config(const std::filesystem::path& path);
// Applies one "section.key" = value assignment; flags go through here too.
void apply_setting(ExperimentConfig& cfg, const std::string& section, const std::string& key,
                   const std::string& value);
// Throws Errc::config naming the offending parameter.
void validate(const ExperimentConfig& cfg);

}  // namespace subshift
