#include "subshift/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include "subshift/error.hpp"
#include "subshift/factor_index.hpp"
#include "subshift/generators.hpp"
#include "subshift/return_words.hpp"

namespace subshift {

namespace {

using Clock = std::chrono::steady_clock;

class StageLog {
 public:
  StageLog(std::ostream* out, bool keep) : out_(out), keep_(keep) {}

  template <class Fn>
  auto operator()(const std::string& stage, Fn&& fn) {
    const auto t0 = Clock::now();
    auto finish = [&] {
      const double s = std::chrono::duration<double>(Clock::now() - t0).count();
      if (out_) *out_ << "[stage] " << stage << " " << format_number(s) << " s\n";
      if (keep_) timings_.push_back({stage, s});
    };
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      finish();
    } else {
      auto result = fn();
      finish();
      return result;
    }
  }

  std::vector<StageTiming> take() { return std::move(timings_); }

 private:
  std::ostream* out_;
  bool keep_;
  std::vector<StageTiming> timings_;
};

std::vector<std::size_t> powers_of_two(std::size_t lo_exp, std::size_t hi_exp, std::size_t cap) {
  std::vector<std::size_t> out;
  for (std::size_t e = lo_exp; e <= hi_exp; ++e) {
    const std::size_t v = std::size_t{1} << e;
    if (v > cap) break;
    out.push_back(v);
  }
  return out;
}

Word parse_word(const Word& sample, const std::string& text, const std::string& what) {
  try {
    return Word::parse(sample.alphabet(), text);
  } catch (const Error& e) {
    throw Error(Errc::config, what + " '" + text + "': " + e.what());
  }
}

std::vector<Word> parse_words(const Word& sample, const std::vector<std::string>& texts, const std::string& what) {
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(parse_word(sample, t, what));
  return out;
}

Word first_letter(const Word& sample) { return Word(sample.alphabet(), {0}); }

std::string verdict_cell(const Verdict& v) {
  return std::string(v.pass ? "pass " : "fail ") + v.relation + format_number(v.threshold);
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

double spread_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

void run_frequencies(const ExperimentConfig& cfg, const FactorIndex& index, StageLog& stage, ReportEnvelope& out) {
  if (cfg.words.size() > 1) throw Error(Errc::config, "words: frequencies takes a single pattern");
  const Word v = cfg.words.empty() ? first_letter(index.sample()) : parse_word(index.sample(), cfg.words[0], "words");
  auto scales = cfg.scales.empty() ? powers_of_two(6, 62, index.size()) : cfg.scales;
  const auto F = builtin_occurrence_additive(v);
  const auto report = stage("estimate", [&] { return prefix_average_series(F, index, scales); });
  out.columns = {"scale", "estimate", "oscillation"};
  for (const auto& p : report.series) out.rows.push_back({as_int(p.scale), p.estimate[0], p.oscillation});
  if (!report.series.empty())
    out.verdicts.push_back(
        judge("oscillation", report.series.back().oscillation, "<", cfg.thresholds.get("oscillation")));
}

void run_additive(const ExperimentConfig& cfg, const FactorIndex& index, StageLog& stage, ReportEnvelope& out) {
  std::vector<Word> patterns;
  if (cfg.words.empty()) {
    for (std::size_t s = 0; s < index.alphabet()->size(); ++s)
      patterns.emplace_back(index.alphabet(), std::vector<Symbol>{static_cast<Symbol>(s)});
  } else {
    patterns = parse_words(index.sample(), cfg.words, "words");
  }
  auto scales = cfg.scales.empty() ? powers_of_two(6, 62, index.size()) : cfg.scales;
  auto prefixes = cfg.prefixes.empty() ? powers_of_two(1, 6, index.size() / 4) : cfg.prefixes;
  const auto F = occurrence_vector_additive(patterns);
  const auto series = stage("prefix-average", [&] { return prefix_average_series(F, index, scales); });
  const auto hier = stage("hierarchical", [&] { return hierarchical_series(F, index, prefixes); });

  out.columns = {"method", "scale", "pattern", "estimate", "oscillation"};
  for (const auto& p : series.series)
    for (std::size_t d = 0; d < patterns.size(); ++d)
      out.rows.push_back({std::string("prefix"), as_int(p.scale), patterns[d].str(), p.estimate[d], p.oscillation});
  for (const auto& h : hier)
    for (std::size_t d = 0; d < patterns.size(); ++d)
      out.rows.push_back(
          {std::string("hierarchical"), as_int(h.x.size()), patterns[d].str(), h.value[d], std::abs(h.nu_sum - 1.0)});

  if (!series.series.empty())
    out.verdicts.push_back(
        judge("oscillation", series.series.back().oscillation, "<", cfg.thresholds.get("oscillation")));
  if (!series.series.empty() && !hier.empty()) {
    Vec diff = hier.back().value;
    for (std::size_t d = 0; d < diff.size(); ++d) diff[d] -= series.series.back().estimate[d];
    out.verdicts.push_back(judge("hierarchical", max_norm(diff), "<=", cfg.thresholds.get("hierarchical")));
    out.verdicts.push_back(
        judge("density", std::abs(hier.back().nu_sum - 1.0), "<=", cfg.thresholds.get("density")));
  }
}

void run_birkhoff(const ExperimentConfig& cfg, const FactorIndex& index, StageLog& stage, ReportEnvelope& out) {
  if (cfg.words.size() > 1) throw Error(Errc::config, "words: birkhoff takes a single window word");
  const Word window =
      cfg.words.empty() ? first_letter(index.sample()) : parse_word(index.sample(), cfg.words[0], "words");
  if (window.size() % 2 == 0) throw Error(Errc::config, "words: birkhoff window '" + window.str() + "' must have odd length");
  const auto f = CylinderFunction::indicator(window);
  const std::size_t k = f.radius();
  const std::size_t total = index.size();
  std::vector<std::size_t> scales = cfg.scales;
  if (scales.empty())
    for (std::size_t n = 100; 2 * n + 2 * k <= total; n *= 10) scales.push_back(n);
  if (scales.empty()) throw Error(Errc::insufficient_sample, "sample of length " + std::to_string(total) +
                                                                 " is too short for default birkhoff scales");
  require_scales(scales, total);
  if (scales.back() + 2 * k > total)
    throw Error(Errc::insufficient_sample, "scale " + std::to_string(scales.back()) + " + 2k exceeds the sample length");
  const std::size_t range = total - scales.back() - 2 * k;
  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < cfg.starts; ++i) starts.push_back(static_cast<std::size_t>(rng() % (range + 1)));

  const auto report = stage("birkhoff", [&] { return birkhoff_series(f, index.sample(), scales, starts); });
  out.columns = {"scale", "estimate", "oscillation"};
  for (const auto& p : report.series) out.rows.push_back({as_int(p.scale), p.estimate[0], p.oscillation});
  out.verdicts.push_back(judge("birkhoff", report.series.back().oscillation, "<", cfg.thresholds.get("birkhoff")));

  // Window agreement on the first recurring factors of length maxlen.
  const std::size_t wlen = std::max(cfg.maxlen, 2 * k + 1);
  if (wlen <= total) {
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t checked = 0;
    stage("window-defect", [&] {
      for (const auto& c : index.factor_classes(wlen)) {
        if (checked >= 32) break;
        if (c.occurrences() < 2) continue;
        try {
          const auto d = window_agreement_defect(f, index.sample(), index.sample().substr(c.start, wlen));
          worst = std::max(worst, d.defect - d.bound);
          ++checked;
        } catch (const Error& e) {
          if (e.code() != Errc::invalid_input) throw;
        }
      }
    });
    if (checked > 0) out.verdicts.push_back(judge("window-defect", worst, "<=", 0.0));
  }
}

void run_subadditive(const ExperimentConfig& cfg, const FactorIndex& index, StageLog& stage, ReportEnvelope& out) {
  SubadditiveFunction F;
  if (cfg.function == "length") {
    F = length_function();
  } else {
    if (cfg.words.size() > 1) throw Error(Errc::config, "words: neg-disjoint takes a single word");
    F = builtin_neg_disjoint(cfg.words.empty() ? first_letter(index.sample())
                                               : parse_word(index.sample(), cfg.words[0], "words"));
  }
  auto scales = cfg.scales.empty() ? powers_of_two(1, 12, index.size()) : cfg.scales;
  const auto report = stage("subadditive", [&] {
    return subadditive_limit_report(F, index, scales, cfg.thresholds.get("set"), index.size());
  });
  out.columns = {"scale", "prefix_average", "Fn", "running_inf"};
  for (const auto& p : report.series)
    out.rows.push_back({as_int(p.scale), p.estimate[0], p.estimate[1], p.estimate[2]});
  out.verdicts = report.verdicts;
}

void run_diagnostics(const ExperimentConfig& cfg, const FactorIndex& index, StageLog& stage, ReportEnvelope& out) {
  const std::size_t total = index.size();
  std::size_t window = cfg.window;
  if (window == 0) window = std::max(8 * cfg.maxlen, total / 10);
  const auto report = stage("diagnostics", [&] { return diagnostics(index, cfg.maxlen, window, cfg.thresholds); });
  const auto& d = *report.diagnostics;
  out.columns = {"quantity", "value", "scale", "verdict"};
  const std::string none;
  out.rows.push_back({std::string("C_est"), d.c_est, as_int(window), none});
  out.rows.push_back({std::string("C_argmin"), d.c_argmin.str(), as_int(window), none});
  out.rows.push_back({std::string("E_est"), d.e_est, as_int(window), none});
  out.rows.push_back({std::string("E_argmin"), d.e_argmin.str(), as_int(window), none});
  out.rows.push_back({std::string("N_est"), as_int(d.n_est), as_int(cfg.maxlen), none});
  out.rows.push_back({std::string("power_root"), d.power_root.str(), as_int(cfg.maxlen), none});
  out.rows.push_back({std::string("kappa_est"), d.kappa_est, as_int(cfg.maxlen), none});
  out.rows.push_back({std::string("linrep_D_est"), d.linrep_d_est, as_int(cfg.maxlen), none});
  out.rows.push_back({std::string("bridge_bound"), d.bridge_bound, as_int(window), none});
  out.rows.push_back({std::string("period"), as_int(d.period), as_int(total), none});
  out.rows.push_back({std::string("periodic_flag"), d.periodic, as_int(total), none});
  out.rows.push_back({std::string("power_unbounded_flag"), d.power_unbounded, as_int(total), none});
  out.rows.push_back({std::string("nonrecurrent_factors"), as_int(d.nonrecurrent_factors), as_int(cfg.maxlen), none});
  for (const auto& v : parse_words(index.sample(), cfg.words, "words"))
    out.rows.push_back({"nu[" + v.str() + "]", nu_estimate(index, v, window), as_int(window), none});

  out.verdicts = report.verdicts;
  out.verdicts.push_back(judge("periodic-flag", static_cast<double>(d.period) / static_cast<double>(total), "<=", 0.25));
  for (const auto& v : out.verdicts) out.rows.push_back({v.name, v.value, as_int(window), verdict_cell(v)});
  if (d.nonrecurrent_factors > 0)
    out.notes.push_back(std::to_string(d.nonrecurrent_factors) + " factor(s) of length <= " +
                        std::to_string(cfg.maxlen) +
                        " occur once in the sample; they are skipped in kappa_est. Windowed quasiweights of a "
                        "non-minimal sample may differ from the limit over all words.");
}

void run_returns(const ExperimentConfig& cfg, const FactorIndex& index, StageLog& stage, ReportEnvelope& out) {
  auto ns = cfg.scales.empty() ? std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64} : cfg.scales;
  require_scales(ns, index.size());
  const auto stats = stage("returns", [&] { return return_stats(index, ns); });
  out.columns = {"n", "complexity", "m", "kappa_est", "n_est", "power_root"};
  for (const auto& s : stats)
    out.rows.push_back({as_int(s.n), as_int(index.factor_count(s.n)), as_int(s.m), s.kappa_est, as_int(s.n_est),
                        s.power_root.str()});
  for (const auto& u : parse_words(index.sample(), cfg.words, "words")) {
    const auto rw = return_words(index, u);
    std::string list;
    for (std::size_t i = 0; i < rw.words.size(); ++i) list += (i ? "," : "") + rw.words[i].str();
    out.notes.push_back("return words of " + u.str() + ": " + list +
                        (rw.complete_within_sample ? "" : " (recurrence not confirmed within the sample)"));
  }
}

void run_set_failure(const ExperimentConfig& cfg, const FactorIndex& index, StageLog& stage, ReportEnvelope& out) {
  std::vector<Word> vs;
  if (cfg.words.empty()) {
    for (std::size_t len : {1, 3, 7}) vs.emplace_back(index.alphabet(), std::vector<Symbol>(len, 0));
  } else {
    vs = parse_words(index.sample(), cfg.words, "words");
  }
  const auto F = [&] {
    try {
      return set_failure_function(index, vs);
    } catch (const Error& e) {
      throw Error(Errc::config, std::string("words: ") + e.what());
    }
  }();
  auto scales = cfg.scales.empty() ? powers_of_two(8, 16, index.size()) : cfg.scales;
  require_scales(scales, index.size());
  std::vector<double> values;
  stage("set-failure", [&] {
    const auto eval = F.bind(index.sample());
    for (std::size_t n : scales) values.push_back(eval(0, n) / static_cast<double>(n));
  });
  out.columns = {"scale", "estimate"};
  for (std::size_t i = 0; i < scales.size(); ++i) out.rows.push_back({as_int(scales[i]), values[i]});
  out.verdicts.push_back(judge("spread", spread_of(values), ">=", cfg.thresholds.get("spread")));
}

}  // namespace

Word generate_sample(const GeneratorSpec& g) {
  if (g.kind == "fibonacci") return substitution_fixed_point(Substitution::fibonacci(), g.length);
  if (g.kind == "thue-morse") return substitution_fixed_point(Substitution::thue_morse(), g.length);
  if (g.kind == "substitution") {
    const auto s = Substitution::parse(g.rules, g.seed.empty() ? std::nullopt : std::optional<std::string>(g.seed));
    return substitution_fixed_point(s, g.length);
  }
  if (g.kind == "sturmian") return sturmian_word(parse_rational(g.alpha), parse_rational(g.rho), g.length).word;
  if (g.kind == "periodic") return periodic_word(word_from_text(g.base), g.length);
  if (g.kind == "block-doubling") return block_doubling_word(g.length);
  if (g.kind == "file") return word_from_file(g.path);
  throw Error(Errc::config, "generator.kind: unknown generator '" + g.kind + "'");
}

ReportEnvelope run(const ExperimentConfig& cfg, std::ostream* log) {
  validate(cfg);
  const auto t0 = Clock::now();
  const Word sample = generate_sample(cfg.generator);
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (log) *log << "[stage] generate " << format_number(seconds) << " s\n";
  auto report = run(cfg, sample, log);
  if (cfg.timings) report.timings.insert(report.timings.begin(), {"generate", seconds});
  return report;
}

ReportEnvelope run(const ExperimentConfig& cfg, const Word& sample, std::ostream* log) {
  validate(cfg);
  if (cfg.experiment.empty()) throw Error(Errc::config, "experiment: no experiment named");
  StageLog stage(log, cfg.timings);
  ReportEnvelope out;
  out.experiment = cfg.experiment;
  out.config = cfg.echo();
  out.config.emplace_back("sample.length", std::to_string(sample.size()));

  const auto index = stage("index", [&] { return FactorIndex(sample); });
  if (cfg.generator.kind == "sturmian") {
    const auto alpha = parse_rational(cfg.generator.alpha);
    if (boost::multiprecision::denominator(alpha) * 2 <= sample.size())
      out.notes.push_back("rational slope: the sample is periodic, not Sturmian");
  }

  const auto& e = cfg.experiment;
  if (e == "frequencies") run_frequencies(cfg, index, stage, out);
  else if (e == "additive") run_additive(cfg, index, stage, out);
  else if (e == "birkhoff") run_birkhoff(cfg, index, stage, out);
  else if (e == "subadditive") run_subadditive(cfg, index, stage, out);
  else if (e == "diagnostics") run_diagnostics(cfg, index, stage, out);
  else if (e == "returns") run_returns(cfg, index, stage, out);
  else if (e == "set-failure") run_set_failure(cfg, index, stage, out);
  else throw Error(Errc::config, "experiment: unknown experiment '" + e + "'");

  out.timings = stage.take();
  return out;
}

std::vector<std::filesystem::path> write_outputs(const ReportEnvelope& report, const ExperimentConfig& cfg) {
  std::filesystem::path dir = cfg.out_dir.empty() ? std::filesystem::path(".") : cfg.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, "cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  if (cfg.format != OutputFormat::json) {
    written.push_back(dir / (report.experiment + ".csv"));
    emit_csv(report, written.back());
  }
  if (cfg.format != OutputFormat::csv) {
    written.push_back(dir / (report.experiment + ".json"));
    emit_json(report, written.back());
  }
  return written;
}

}  // namespace subshift
