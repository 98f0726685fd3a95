#include "subshift/config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "subshift/error.hpp"
#include "subshift/factor_index.hpp"
#include "subshift/generators.hpp"

namespace subshift {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

std::string join(const std::vector<std::size_t>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + std::to_string(items[i]);
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw Error(Errc::config, key + ": not a number: '" + text + "'");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> names{"frequencies", "additive",    "birkhoff",   "subadditive",
                                              "diagnostics", "returns",     "set-failure"};
  return names;
}

std::size_t parse_size(const std::string& key, const std::string& text) {
  const auto t = trim(text);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw Error(Errc::config, key + ": not a nonnegative integer: '" + text + "'");
  return v;
}

std::vector<std::size_t> parse_size_list(const std::string& key, const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) out.push_back(parse_size(key, item));
  return out;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  if (text == "both") return OutputFormat::both;
  throw Error(Errc::config, "format: expected csv, json or both, got '" + text + "'");
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::both: return "both";
  }
  return "both";
}

void apply_setting(ExperimentConfig& cfg, const std::string& section, const std::string& key,
                   const std::string& raw) {
  const std::string value = trim(raw);
  const std::string name = section + "." + key;
  auto& g = cfg.generator;
  if (section == "generator") {
    if (key == "kind") g.kind = value;
    else if (key == "length") g.length = parse_size(name, value);
    else if (key == "rules") g.rules = value;
    else if (key == "seed") g.seed = value;
    else if (key == "alpha") g.alpha = value;
    else if (key == "rho") g.rho = value;
    else if (key == "base") g.base = value;
    else if (key == "path") g.path = value;
    else throw Error(Errc::config, "unknown key '" + name + "'");
  } else if (section == "experiment") {
    if (key == "name") cfg.experiment = value;
    else if (key == "scales") cfg.scales = parse_size_list("scales", value);
    else if (key == "maxlen") cfg.maxlen = parse_size("maxlen", value);
    else if (key == "window") cfg.window = parse_size("window", value);
    else if (key == "words") cfg.words = split_list(value);
    else if (key == "function") cfg.function = value;
    else if (key == "prefixes") cfg.prefixes = parse_size_list("prefixes", value);
    else if (key == "starts") cfg.starts = parse_size("starts", value);
    else if (key == "seed") cfg.rng_seed = parse_size("experiment.seed", value);
    else throw Error(Errc::config, "unknown key '" + name + "'");
  } else if (section == "output") {
    if (key == "dir") cfg.out_dir = value;
    else if (key == "format") cfg.format = parse_format(value);
    else if (key == "timings") cfg.timings = value == "true" || value == "1" || value == "yes";
    else throw Error(Errc::config, "unknown key '" + name + "'");
  } else if (section == "thresholds") {
    try {
      cfg.thresholds.set(key, parse_double("thresholds." + key, value));
    } catch (const Error& e) {
      throw Error(Errc::config, e.what());
    }
  } else {
    throw Error(Errc::config, "unknown section '" + section + "'");
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    if (!std::filesystem::exists(path)) throw Error(Errc::io, "cannot open config '" + path.string() + "'");
    throw Error(Errc::config, "config '" + path.string() + "': " + e.what());
  }
  ExperimentConfig cfg;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw Error(Errc::config, "key '" + section + "' outside any section");
    for (const auto& [key, value] : body) apply_setting(cfg, section, key, value.data());
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  const auto& g = cfg.generator;
  static const std::vector<std::string> kinds{"fibonacci", "thue-morse", "substitution", "sturmian",
                                              "periodic",  "block-doubling", "file"};
  if (std::find(kinds.begin(), kinds.end(), g.kind) == kinds.end())
    throw Error(Errc::config, "generator.kind: unknown generator '" + g.kind + "'");
  if (g.kind != "file") {
    if (g.length == 0) throw Error(Errc::config, "generator.length must be positive");
    if (g.length > FactorIndex::kMaxSampleLength)
      throw Error(Errc::config, "generator.length " + std::to_string(g.length) + " exceeds the cap of " +
                                    std::to_string(FactorIndex::kMaxSampleLength) + " symbols");
  }
  if (g.kind == "substitution" && g.rules.empty()) throw Error(Errc::config, "generator.rules is required");
  if (g.kind == "sturmian" && g.alpha.empty()) throw Error(Errc::config, "generator.alpha is required");
  if (g.kind == "periodic" && g.base.empty()) throw Error(Errc::config, "generator.base is required");
  if (g.kind == "file" && g.path.empty()) throw Error(Errc::config, "generator.path (or --sample) is required");

  if (!cfg.experiment.empty()) {
    const auto& names = known_experiments();
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end())
      throw Error(Errc::config, "experiment: unknown experiment '" + cfg.experiment + "'");
  }
  for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
    if (cfg.scales[i] == 0) throw Error(Errc::config, "scales: lengths must be positive");
    if (i > 0 && cfg.scales[i] <= cfg.scales[i - 1])
      throw Error(Errc::config, "scales: must be strictly increasing (" + std::to_string(cfg.scales[i - 1]) +
                                    " then " + std::to_string(cfg.scales[i]) + ")");
  }
  for (std::size_t i = 0; i < cfg.prefixes.size(); ++i) {
    if (cfg.prefixes[i] == 0) throw Error(Errc::config, "prefixes: lengths must be positive");
    if (i > 0 && cfg.prefixes[i] <= cfg.prefixes[i - 1])
      throw Error(Errc::config, "prefixes: must be strictly increasing");
  }
  if (cfg.maxlen == 0) throw Error(Errc::config, "maxlen must be positive");
  if (cfg.starts == 0) throw Error(Errc::config, "starts must be positive");
  if (cfg.function != "neg-disjoint" && cfg.function != "length")
    throw Error(Errc::config, "function: expected neg-disjoint or length, got '" + cfg.function + "'");
  for (const auto& [name, value] : cfg.thresholds.all())
    if (!(value > 0.0 && value <= 1.0)) throw Error(Errc::config, "thresholds." + name + " must lie in (0, 1]");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out{{"generator.kind", generator.kind}};
  if (generator.kind != "file") out.emplace_back("generator.length", std::to_string(generator.length));
  if (generator.kind == "substitution") {
    out.emplace_back("generator.rules", generator.rules);
    out.emplace_back("generator.seed", generator.seed);
  }
  if (generator.kind == "sturmian") {
    out.emplace_back("generator.alpha", generator.alpha);
    out.emplace_back("generator.rho", generator.rho);
  }
  if (generator.kind == "periodic") out.emplace_back("generator.base", generator.base);
  if (generator.kind == "file") out.emplace_back("generator.path", generator.path);
  out.emplace_back("experiment.name", experiment);
  out.emplace_back("experiment.scales", join(scales));
  out.emplace_back("experiment.maxlen", std::to_string(maxlen));
  out.emplace_back("experiment.window", std::to_string(window));
  out.emplace_back("experiment.words", join(words));
  out.emplace_back("experiment.function", function);
  out.emplace_back("experiment.prefixes", join(prefixes));
  out.emplace_back("experiment.starts", std::to_string(starts));
  out.emplace_back("experiment.seed", std::to_string(rng_seed));
  for (const auto& [name, value] : thresholds.all()) out.emplace_back("thresholds." + name, format_double(value));
  return out;
}

}  // namespace subshift
