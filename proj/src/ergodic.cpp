#include "subshift/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

#include "subshift/error.hpp"
#include "subshift/return_words.hpp"

namespace subshift {

namespace {

using Positions = std::vector<std::size_t>;

// Greedy disjoint-copy counting on the fly: jump[i] is the first occurrence
// index starting at or after pos[i] + len.
struct DisjointCounter {
  Positions pos;
  std::vector<std::size_t> jump;
  std::size_t len = 0;

  DisjointCounter(Positions p, std::size_t pattern_length) : pos(std::move(p)), len(pattern_length) {
    jump.resize(pos.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      j = std::max(j, i + 1);
      while (j < pos.size() && pos[j] < pos[i] + len) ++j;
      jump[i] = j;
    }
  }

  std::size_t copies(std::size_t start, std::size_t length) const {
    std::size_t i = static_cast<std::size_t>(std::lower_bound(pos.begin(), pos.end(), start) - pos.begin());
    std::size_t n = 0;
    while (i < pos.size() && pos[i] + len <= start + length) {
      ++n;
      i = jump[i];
    }
    return n;
  }

  std::size_t occurrences(std::size_t start, std::size_t length) const {
    if (length < len) return 0;
    auto lo = std::lower_bound(pos.begin(), pos.end(), start);
    auto hi = std::upper_bound(lo, pos.end(), start + length - len);
    return static_cast<std::size_t>(hi - lo);
  }
};

std::string join_words(const std::vector<Word>& ws) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? "," : "") + ws[i].str();
  return out;
}

// Spread in max-norm of a family of vectors.
struct Spread {
  Vec lo, hi;

  void add(const Vec& v) {
    if (lo.empty()) {
      lo = hi = v;
      return;
    }
    for (std::size_t d = 0; d < v.size(); ++d) {
      lo[d] = std::min(lo[d], v[d]);
      hi[d] = std::max(hi[d], v[d]);
    }
  }
  double width() const {
    double w = 0.0;
    for (std::size_t d = 0; d < lo.size(); ++d) w = std::max(w, hi[d] - lo[d]);
    return w;
  }
};

Vec scaled(Vec v, double factor) {
  for (auto& x : v) x *= factor;
  return v;
}

}  // namespace

double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::size_t next = 0;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(mu);
          if (next >= n || failure) return;
          i = next++;
        }
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// --- functions ---------------------------------------------------------------

WindowEvaluator AdditiveFunction::bind(const Word& sample) const {
  if (bind_sample) return bind_sample(sample);
  auto data = std::make_shared<const std::vector<Symbol>>(sample.data());
  auto eval = evaluate;
  return [data, eval](std::size_t start, std::size_t length) {
    return eval(std::span<const Symbol>(*data).subspan(start, length));
  };
}

ScalarWindowEvaluator SubadditiveFunction::bind(const Word& sample) const {
  if (bind_sample) return bind_sample(sample);
  auto data = std::make_shared<const std::vector<Symbol>>(sample.data());
  auto eval = evaluate;
  return [data, eval](std::size_t start, std::size_t length) {
    return eval(std::span<const Symbol>(*data).subspan(start, length));
  };
}

AdditiveFunction occurrence_vector_additive(const std::vector<Word>& patterns) {
  if (patterns.empty()) throw Error(Errc::invalid_input, "occurrence function needs at least one pattern");
  std::size_t longest = 0;
  for (const auto& p : patterns) {
    if (p.empty()) throw Error(Errc::invalid_input, "occurrence patterns must be nonempty");
    require_same_alphabet(p, patterns.front());
    longest = std::max(longest, p.size());
  }
  auto pats = std::make_shared<std::vector<std::vector<Symbol>>>();
  for (const auto& p : patterns) pats->push_back(p.data());

  AdditiveFunction F;
  F.name = "occ[" + join_words(patterns) + "]";
  F.dim = patterns.size();
  F.D = 1.0;
  const double cut_loss = static_cast<double>(longest - 1);
  F.c = [cut_loss](double r) { return std::min(1.0, cut_loss / std::max(r, 1.0)); };
  F.evaluate = [pats](std::span<const Symbol> w) {
    Vec out;
    for (const auto& p : *pats) out.push_back(static_cast<double>(naive::find_all(p, w).size()));
    return out;
  };
  F.bind_sample = [pats](const Word& sample) -> WindowEvaluator {
    // starts[d][i]: occurrences of pattern d starting before i.
    auto starts = std::make_shared<std::vector<std::vector<std::uint32_t>>>();
    auto lens = std::make_shared<std::vector<std::size_t>>();
    for (const auto& p : *pats) {
      std::vector<std::uint32_t> cum(sample.size() + 1, 0);
      const auto hits = naive::find_all(p, sample.symbols());
      std::size_t h = 0;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        cum[i + 1] = cum[i];
        if (h < hits.size() && hits[h] == i) {
          ++cum[i + 1];
          ++h;
        }
      }
      starts->push_back(std::move(cum));
      lens->push_back(p.size());
    }
    return [starts, lens](std::size_t start, std::size_t length) {
      Vec out(lens->size(), 0.0);
      for (std::size_t d = 0; d < lens->size(); ++d) {
        const std::size_t len = (*lens)[d];
        if (length < len) continue;
        const auto& cum = (*starts)[d];
        out[d] = static_cast<double>(cum[start + length - len + 1] - cum[start]);
      }
      return out;
    };
  };
  return F;
}

AdditiveFunction builtin_occurrence_additive(const Word& v) { return occurrence_vector_additive({v}); }

SubadditiveFunction builtin_neg_disjoint(const Word& v) {
  if (v.empty()) throw Error(Errc::invalid_input, "l_v needs a nonempty v");
  auto pat = std::make_shared<const std::vector<Symbol>>(v.data());
  SubadditiveFunction F;
  F.name = "-l[" + v.str() + "]";
  F.evaluate = [pat](std::span<const Symbol> w) {
    const auto pos = naive::find_all(*pat, w);
    return 0.0 - static_cast<double>(naive::greedy_disjoint(pos, pat->size()) * pat->size());
  };
  F.bind_sample = [pat](const Word& sample) -> ScalarWindowEvaluator {
    auto counter = std::make_shared<const DisjointCounter>(naive::find_all(*pat, sample.symbols()), pat->size());
    return [counter](std::size_t start, std::size_t length) {
      return 0.0 - static_cast<double>(counter->copies(start, length) * counter->len);
    };
  };
  return F;
}

SubadditiveFunction length_function() {
  SubadditiveFunction F;
  F.name = "length";
  F.evaluate = [](std::span<const Symbol> w) { return static_cast<double>(w.size()); };
  F.bind_sample = [](const Word&) -> ScalarWindowEvaluator {
    return [](std::size_t, std::size_t length) { return static_cast<double>(length); };
  };
  return F;
}

SubadditiveFunction set_failure_function(const FactorIndex& index, const std::vector<Word>& vs) {
  if (vs.empty()) throw Error(Errc::invalid_spec, "set_failure_function needs at least one word");
  for (std::size_t j = 0; j < vs.size(); ++j) {
    require_same_alphabet(vs[j], index.sample());
    if (vs[j].empty()) throw Error(Errc::invalid_spec, "set_failure_function words must be nonempty");
    if (j > 0 && vs[j].size() <= 2 * vs[j - 1].size())
      throw Error(Errc::invalid_spec, "word lengths must more than double: |" + vs[j].str() + "| = " +
                                          std::to_string(vs[j].size()) + " <= 2*" +
                                          std::to_string(vs[j - 1].size()));
  }
  std::vector<SubadditiveFunction> terms;
  for (const auto& v : vs) terms.push_back(builtin_neg_disjoint(v));
  auto shared = std::make_shared<const std::vector<SubadditiveFunction>>(std::move(terms));

  SubadditiveFunction F;
  F.name = "-sum l[" + join_words(vs) + "]";
  F.evaluate = [shared](std::span<const Symbol> w) {
    double total = 0.0;
    for (const auto& t : *shared) total += t.evaluate(w);
    return total;
  };
  F.bind_sample = [shared](const Word& sample) -> ScalarWindowEvaluator {
    auto bound = std::make_shared<std::vector<ScalarWindowEvaluator>>();
    for (const auto& t : *shared) bound->push_back(t.bind(sample));
    return [bound](std::size_t start, std::size_t length) {
      double total = 0.0;
      for (const auto& b : *bound) total += b(start, length);
      return total;
    };
  };
  return F;
}

// --- cylinder functions ------------------------------------------------------

CylinderFunction::CylinderFunction(AlphabetPtr alphabet, std::size_t radius, std::size_t dim,
                                   std::map<Word, Vec> table)
    : alphabet_(std::move(alphabet)), radius_(radius), dim_(dim), table_(std::move(table)) {
  if (!alphabet_) throw Error(Errc::invalid_input, "cylinder function needs an alphabet");
  if (dim_ == 0) throw Error(Errc::invalid_input, "cylinder function dimension must be positive");
  for (const auto& [w, value] : table_) {
    if (w.size() != 2 * radius_ + 1)
      throw Error(Errc::invalid_input, "cylinder table word '" + w.str() + "' has the wrong length");
    if (value.size() != dim_) throw Error(Errc::invalid_input, "cylinder table value has the wrong dimension");
    if (!same_alphabet(w.alphabet(), alphabet_)) throw Error(Errc::invalid_input, "cylinder table alphabet mismatch");
    lookup_.emplace(std::string(w.data().begin(), w.data().end()), value);
    sup_norm_ = std::max(sup_norm_, max_norm(value));
  }
}

namespace {

constexpr std::size_t kMaxCylinderTable = std::size_t{1} << 20;

std::vector<Word> all_words(const AlphabetPtr& alphabet, std::size_t length) {
  const std::size_t k = alphabet->size();
  double total = std::pow(static_cast<double>(k), static_cast<double>(length));
  if (total > static_cast<double>(kMaxCylinderTable))
    throw Error(Errc::invalid_input, "cylinder table would exceed 2^20 windows");
  std::vector<Word> out;
  std::vector<Symbol> cur(length, 0);
  for (;;) {
    out.emplace_back(alphabet, cur);
    std::size_t i = length;
    while (i > 0 && cur[i - 1] + 1u == k) cur[--i] = 0;
    if (i == 0) break;
    ++cur[i - 1];
  }
  return out;
}

}  // namespace

CylinderFunction CylinderFunction::indicator(const Word& window) {
  if (window.size() % 2 == 0) throw Error(Errc::invalid_input, "indicator window length must be odd");
  std::map<Word, Vec> table;
  for (auto& w : all_words(window.alphabet(), window.size())) {
    const double v = w == window ? 1.0 : 0.0;
    table.emplace(std::move(w), Vec{v});
  }
  return CylinderFunction(window.alphabet(), window.size() / 2, 1, std::move(table));
}

CylinderFunction CylinderFunction::constant(AlphabetPtr alphabet, std::size_t radius, double value) {
  std::map<Word, Vec> table;
  for (auto& w : all_words(alphabet, 2 * radius + 1)) table.emplace(std::move(w), Vec{value});
  return CylinderFunction(std::move(alphabet), radius, 1, std::move(table));
}

const Vec& CylinderFunction::operator()(std::span<const Symbol> window) const {
  auto it = lookup_.find(std::string(window.begin(), window.end()));
  if (it == lookup_.end()) {
    std::string shown;
    for (Symbol s : window) shown += s < alphabet_->size() ? alphabet_->label(s) : "?";
    throw Error(Errc::invalid_input, "window '" + shown + "' is not in the cylinder table");
  }
  return it->second;
}

// --- reports -----------------------------------------------------------------

Verdict judge(std::string name, double value, std::string relation, double threshold) {
  bool pass = false;
  if (relation == "<")
    pass = value < threshold;
  else if (relation == "<=")
    pass = value <= threshold;
  else if (relation == ">")
    pass = value > threshold;
  else if (relation == ">=")
    pass = value >= threshold;
  else
    throw Error(Errc::invalid_input, "unknown verdict relation '" + relation + "'");
  return {std::move(name), value, std::move(relation), threshold, pass};
}

const Verdict* ErgodicReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

Thresholds::Thresholds()
    : values_{{"pq", 0.05},           {"oscillation", 0.05}, {"set", 0.02},
              {"hierarchical", 0.005}, {"density", 0.005},    {"birkhoff", 0.005},
              {"spread", 0.2}} {}

double Thresholds::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw Error(Errc::config, "unknown threshold '" + name + "'");
  return it->second;
}

void Thresholds::set(const std::string& name, double value) {
  if (!values_.count(name)) throw Error(Errc::config, "unknown threshold '" + name + "'");
  if (!(value > 0.0 && value <= 1.0))
    throw Error(Errc::config, "threshold '" + name + "' must lie in (0, 1]");
  values_[name] = value;
}

void require_scales(std::span<const std::size_t> scales, std::size_t sample_length) {
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] == 0) throw Error(Errc::invalid_input, "scales must be positive");
    if (i > 0 && scales[i] <= scales[i - 1])
      throw Error(Errc::invalid_input, "scales must be strictly increasing");
    if (scales[i] > sample_length)
      throw Error(Errc::insufficient_sample, "scale " + std::to_string(scales[i]) +
                                                 " exceeds the sample length " + std::to_string(sample_length));
  }
}

ErgodicReport prefix_average_series(const AdditiveFunction& F, const FactorIndex& index,
                                    std::span<const std::size_t> scales) {
  require_scales(scales, index.size());
  const auto eval = F.bind(index.sample());
  ErgodicReport report;
  report.series.resize(scales.size());
  parallel_for(scales.size(), [&](std::size_t i) {
    const std::size_t n = scales[i];
    const double inv = 1.0 / static_cast<double>(n);
    Spread spread;
    for (const auto& c : index.factor_classes(n)) spread.add(scaled(eval(c.start, n), inv));
    report.series[i] = {n, scaled(eval(0, n), inv), spread.width(), {}};
  });
  return report;
}

HierarchicalEstimate hierarchical_estimate(const AdditiveFunction& F, const FactorIndex& index, const Word& x) {
  const auto returns = return_words(index, x);
  HierarchicalEstimate est;
  est.x = x;
  est.value.assign(F.dim, 0.0);
  const double total = static_cast<double>(index.size());
  for (const auto& y : returns.words) {
    // Frequency of y via occurrences of y x.
    const double nu = static_cast<double>(index.count(y + x)) / total * static_cast<double>(y.size());
    const Vec fy = F(y);
    for (std::size_t d = 0; d < F.dim; ++d) est.value[d] += nu * fy[d] / static_cast<double>(y.size());
    est.return_words.push_back(y);
    est.nu.push_back(nu);
    est.nu_sum += nu;
  }
  return est;
}

std::vector<HierarchicalEstimate> hierarchical_series(const AdditiveFunction& F, const FactorIndex& index,
                                                      std::span<const std::size_t> prefix_lengths) {
  require_scales(prefix_lengths, index.size());
  std::vector<HierarchicalEstimate> out;
  for (std::size_t len : prefix_lengths) out.push_back(hierarchical_estimate(F, index, index.sample().substr(0, len)));
  return out;
}

namespace {

// f evaluated at every admissible centre t in [k, N-k), indexed by t-k.
std::vector<Vec> cylinder_values(const CylinderFunction& f, const Word& sample) {
  require_same_alphabet(Word(f.alphabet()), sample);
  const std::size_t width = 2 * f.radius() + 1;
  std::vector<Vec> values;
  if (sample.size() < width) return values;
  values.reserve(sample.size() - width + 1);
  for (std::size_t s = 0; s + width <= sample.size(); ++s) values.push_back(f(sample.symbols().subspan(s, width)));
  return values;
}

}  // namespace

ErgodicReport birkhoff_series(const CylinderFunction& f, const Word& sample, std::span<const std::size_t> scales,
                              std::span<const std::size_t> starts) {
  require_scales(scales, sample.size());
  if (starts.empty()) throw Error(Errc::invalid_input, "birkhoff series needs at least one start");
  const std::size_t k = f.radius();
  for (std::size_t s : starts)
    if (s + scales.back() + 2 * k > sample.size())
      throw Error(Errc::invalid_input, "window outside sample: start " + std::to_string(s) + " + scale " +
                                           std::to_string(scales.back()) + " + 2k exceeds " +
                                           std::to_string(sample.size()));
  const auto values = cylinder_values(f, sample);
  const std::size_t dim = f.dim();
  // cum[(i)*dim + d] = sum of the first i centre values.
  std::vector<double> cum((values.size() + 1) * dim, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t d = 0; d < dim; ++d) cum[(i + 1) * dim + d] = cum[i * dim + d] + values[i][d];

  ErgodicReport report;
  for (std::size_t n : scales) {
    SeriesPoint pt;
    pt.scale = n;
    pt.estimate.assign(dim, 0.0);
    Spread spread;
    for (std::size_t s : starts) {
      Vec avg(dim);
      for (std::size_t d = 0; d < dim; ++d)
        avg[d] = (cum[(s + n) * dim + d] - cum[s * dim + d]) / static_cast<double>(n);
      for (std::size_t d = 0; d < dim; ++d) pt.estimate[d] += avg[d] / static_cast<double>(starts.size());
      spread.add(avg);
      pt.members.push_back(std::move(avg));
    }
    pt.oscillation = spread.width();
    report.series.push_back(std::move(pt));
  }
  return report;
}

DefectReport window_agreement_defect(const CylinderFunction& f, const Word& sample, const Word& w) {
  require_same_alphabet(w, sample);
  const std::size_t k = f.radius();
  if (w.size() <= 2 * k)
    throw Error(Errc::invalid_input, "window agreement needs |w| > 2k (|w| = " + std::to_string(w.size()) +
                                         ", k = " + std::to_string(k) + ")");
  const auto text = sample.symbols();
  Spread spread;
  std::size_t used = 0;
  for (std::size_t q : naive::find_all(w.symbols(), text)) {
    if (q < k || q + w.size() + k > text.size()) continue;
    Vec sum(f.dim(), 0.0);
    for (std::size_t j = 0; j < w.size(); ++j) {
      const auto& v = f(text.subspan(q + j - k, 2 * k + 1));
      for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += v[d];
    }
    spread.add(sum);
    ++used;
  }
  if (used < 2)
    throw Error(Errc::invalid_input, "'" + w.str() + "' has fewer than two occurrences with windows inside the sample");
  return {spread.width(), 4.0 * f.sup_norm() * static_cast<double>(k), used};
}

namespace {

double max_over_factors(const ScalarWindowEvaluator& eval, const FactorIndex& index, std::size_t n) {
  const auto classes = index.factor_classes(n);
  if (classes.empty()) throw Error(Errc::invalid_input, "no factors of length " + std::to_string(n));
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : classes) best = std::max(best, eval(c.start, n) / static_cast<double>(n));
  return best;
}

}  // namespace

double subadditive_Fn(const SubadditiveFunction& F, const FactorIndex& index, std::size_t n) {
  if (n == 0 || n > index.size())
    throw Error(Errc::invalid_input, "no factors of length " + std::to_string(n) + " in the sample");
  return max_over_factors(F.bind(index.sample()), index, n);
}

ErgodicReport subadditive_limit_report(const SubadditiveFunction& F, const FactorIndex& index,
                                       std::span<const std::size_t> scales, double tolerance,
                                       std::size_t terminal_length) {
  require_scales(scales, index.size());
  if (scales.empty()) throw Error(Errc::invalid_input, "subadditive report needs at least one scale");
  if (terminal_length == 0) terminal_length = scales.back();
  if (terminal_length > index.size())
    throw Error(Errc::insufficient_sample, "terminal length " + std::to_string(terminal_length) +
                                               " exceeds the sample length " + std::to_string(index.size()));
  const auto eval = F.bind(index.sample());
  std::vector<double> fn(scales.size());
  parallel_for(scales.size(), [&](std::size_t i) { fn[i] = max_over_factors(eval, index, scales[i]); });

  ErgodicReport report;
  double running_inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const std::size_t n = scales[i];
    const double prefix = eval(0, n) / static_cast<double>(n);
    running_inf = std::min(running_inf, fn[i]);
    report.series.push_back({n, {prefix, fn[i], running_inf}, std::abs(prefix - running_inf), {}});
  }
  const double terminal = eval(0, terminal_length) / static_cast<double>(terminal_length);
  report.verdicts.push_back(judge("set-agreement", std::abs(terminal - running_inf), "<=", tolerance));
  return report;
}

double nu_estimate(const FactorIndex& index, const Word& v, std::size_t window, std::size_t stride) {
  require_same_alphabet(v, index.sample());
  if (v.empty()) throw Error(Errc::invalid_input, "quasiweight of the empty word is undefined");
  if (window < 4 * v.size())
    throw Error(Errc::invalid_input, "window " + std::to_string(window) + " must be at least 4|v| = " +
                                         std::to_string(4 * v.size()));
  if (window > index.size())
    throw Error(Errc::invalid_input, "window " + std::to_string(window) + " exceeds the sample length " +
                                         std::to_string(index.size()));
  if (stride == 0) stride = window / 4;
  const DisjointCounter counter(index.positions(v.symbols()), v.size());
  std::size_t worst = std::numeric_limits<std::size_t>::max();
  for (std::size_t s = 0; s + window <= index.size(); s += stride) worst = std::min(worst, counter.copies(s, window));
  return static_cast<double>(worst * v.size()) / static_cast<double>(window);
}

std::size_t smallest_period(std::span<const Symbol> w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t b = border[i - 1];
    while (b > 0 && w[i] != w[b]) b = border[b - 1];
    if (w[i] == w[b]) ++b;
    border[i] = b;
  }
  return n - border[n - 1];
}

ErgodicReport diagnostics(const FactorIndex& index, std::size_t maxlen, std::size_t window,
                          const Thresholds& thresholds) {
  if (maxlen == 0) throw Error(Errc::invalid_input, "maxlen must be positive");
  if (8 * maxlen > window)
    throw Error(Errc::invalid_input, "maxlen " + std::to_string(maxlen) + " must be at most window/8 = " +
                                         std::to_string(window / 8));
  const std::size_t total = index.size();
  if (window > total)
    throw Error(Errc::insufficient_sample, "window " + std::to_string(window) + " exceeds the sample length " +
                                               std::to_string(total) + "; no factor of length 1.." +
                                               std::to_string(maxlen) + " can be weighed");

  struct Item {
    std::size_t n;
    FactorClass cls;
  };
  std::vector<Item> items;
  for (std::size_t n = 1; n <= maxlen; ++n)
    for (const auto& c : index.factor_classes(n)) items.push_back({n, c});

  const std::size_t stride = window / 4;
  const auto sa = index.suffix_array();
  std::vector<Quasiweight> weights(items.size());
  parallel_for(items.size(), [&](std::size_t i) {
    const auto& it = items[i];
    Positions pos(sa.begin() + it.cls.lo, sa.begin() + it.cls.hi);
    std::sort(pos.begin(), pos.end());
    const DisjointCounter counter(std::move(pos), it.n);
    std::size_t copies = std::numeric_limits<std::size_t>::max();
    std::size_t hits = std::numeric_limits<std::size_t>::max();
    for (std::size_t s = 0; s + window <= total; s += stride) {
      copies = std::min(copies, counter.copies(s, window));
      hits = std::min(hits, counter.occurrences(s, window));
    }
    const double scale = static_cast<double>(it.n) / static_cast<double>(window);
    weights[i] = {index.sample().substr(it.cls.start, it.n), static_cast<double>(copies) * scale,
                  static_cast<double>(hits) * scale};
  });

  Diagnostics diag;
  diag.maxlen = maxlen;
  diag.window = window;
  diag.c_est = std::numeric_limits<double>::infinity();
  diag.e_est = std::numeric_limits<double>::infinity();
  for (const auto& q : weights) {
    if (q.nu < diag.c_est) {
      diag.c_est = q.nu;
      diag.c_argmin = q.v;
    }
    if (q.weight < diag.e_est) {
      diag.e_est = q.weight;
      diag.e_argmin = q.v;
    }
  }

  const std::size_t top[] = {maxlen};
  const auto stats = return_stats(index, top, /*skip_nonrecurrent=*/true).front();
  diag.n_est = stats.n_est;
  diag.power_root = stats.power_root;
  diag.kappa_est = stats.kappa_est;
  diag.nonrecurrent_factors = stats.nonrecurrent;
  diag.power_unbounded = 4 * stats.n_est * stats.power_root.size() >= total;

  ErgodicReport report;
  std::vector<double> recurrence(maxlen + 1, 0.0);
  for (std::size_t n = 1; n <= maxlen && n <= total / 4; ++n) {
    recurrence[n] = static_cast<double>(index.recurrence_estimate(n).r_est) / static_cast<double>(n);
    diag.linrep_d_est = std::max(diag.linrep_d_est, recurrence[n]);
  }
  for (std::size_t n = 1; n <= maxlen; ++n) {
    double nu_min = std::numeric_limits<double>::infinity(), w_min = nu_min;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].n != n) continue;
      nu_min = std::min(nu_min, weights[i].nu);
      w_min = std::min(w_min, weights[i].weight);
    }
    report.series.push_back({n, {nu_min, w_min, recurrence[n]}, 0.0, {}});
  }

  diag.period = smallest_period(index.sample().symbols());
  diag.periodic = 4 * diag.period <= total;
  diag.bridge_bound = diag.e_est / (2.0 * (diag.kappa_est + 1.0));
  diag.per_word = std::move(weights);

  report.verdicts.push_back(judge("pq", diag.c_est, ">", thresholds.get("pq")));
  report.verdicts.push_back(judge("bridge", diag.c_est, ">=", diag.bridge_bound));
  report.diagnostics = std::move(diag);
  return report;
}

}  // namespace subshift
