#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "subshift/factor_index.hpp"
#include "subshift/word.hpp"

namespace subshift {

// Values live in R^d with the max-norm.
using Vec = std::vector<double>;

double max_norm(std::span<const double> v);

// Evaluates a function on the window sample[start, start+length) of the sample
// it was bound to.
using WindowEvaluator = std::function<Vec(std::size_t start, std::size_t length)>;
using ScalarWindowEvaluator = std::function<double(std::size_t start, std::size_t length)>;

// F : words -> R^d with |F(v)| <= D |v| and concatenation defect bounded by
// sum_j c(|v_j|) |v_j|.
struct AdditiveFunction {
  std::string name;
  std::size_t dim = 1;
  double D = 1.0;
  std::function<double(double)> c;
  std::function<Vec(std::span<const Symbol>)> evaluate;
  // Optional fast path: precomputes per-sample data so windows cost O(d).
  std::function<WindowEvaluator(const Word&)> bind_sample;

  Vec operator()(const Word& w) const { return evaluate(w.symbols()); }
  WindowEvaluator bind(const Word& sample) const;
};

// F(w) = #_v(w), D = 1, c(r) = min(1, (|v|-1)/max(r,1)).
AdditiveFunction builtin_occurrence_additive(const Word& v);
// Vector of occurrence counts, one coordinate per pattern.
AdditiveFunction occurrence_vector_additive(const std::vector<Word>& patterns);

struct SubadditiveFunction {
  std::string name;
  std::function<double(std::span<const Symbol>)> evaluate;
  std::function<ScalarWindowEvaluator(const Word&)> bind_sample;

  double operator()(const Word& w) const { return evaluate(w.symbols()); }
  ScalarWindowEvaluator bind(const Word& sample) const;
};

// F(w) = -l_v(w) = -(max disjoint copies of v in w) |v|.
SubadditiveFunction builtin_neg_disjoint(const Word& v);
// F(w) = |w|.
SubadditiveFunction length_function();
// F(w) = -sum_j l_{v_j}(w); requires |v_{j+1}| > 2 |v_j|.
SubadditiveFunction set_failure_function(const FactorIndex& index, const std::vector<Word>& vs);

// f depends on the radius-k window centred at a position: a table from
// length-(2k+1) words to R^d.
class CylinderFunction {
 public:
  CylinderFunction(AlphabetPtr alphabet, std::size_t radius, std::size_t dim,
                   std::map<Word, Vec> table);

  // 1 on the given window, 0 on every other word of the same length; the
  // window length must be odd.
  static CylinderFunction indicator(const Word& window);
  static CylinderFunction constant(AlphabetPtr alphabet, std::size_t radius, double value);

  std::size_t radius() const noexcept { return radius_; }
  std::size_t dim() const noexcept { return dim_; }
  double sup_norm() const noexcept { return sup_norm_; }
  const std::map<Word, Vec>& table() const noexcept { return table_; }
  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }

  // Throws invalid_input for windows absent from the table.
  const Vec& operator()(std::span<const Symbol> window) const;

 private:
  AlphabetPtr alphabet_;
  std::size_t radius_;
  std::size_t dim_;
  std::map<Word, Vec> table_;
  std::unordered_map<std::string, Vec> lookup_;
  double sup_norm_ = 0.0;
};

struct SeriesPoint {
  std::size_t scale = 0;
  Vec estimate;
  double oscillation = 0.0;
  // Optional per-member values (per start for Birkhoff series).
  std::vector<Vec> members;
};

struct Verdict {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<", "<=", ">", ">="
  double threshold = 0.0;
  bool pass = false;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Verdict judge(std::string name, double value, std::string relation, double threshold);

struct Quasiweight {
  Word v;
  // min over windows of l_v(window)/L
  double nu = 0.0;
  // min over windows of #_v(window) |v| / L
  double weight = 0.0;
};

struct Diagnostics {
  std::size_t maxlen = 0;
  std::size_t window = 0;
  double c_est = 0.0;
  Word c_argmin;
  double e_est = 0.0;
  Word e_argmin;
  std::size_t n_est = 0;
  Word power_root;
  double kappa_est = 0.0;
  double linrep_d_est = 0.0;
  double bridge_bound = 0.0;
  std::size_t period = 0;  // smallest period of the whole sample
  bool periodic = false;   // period <= |sample|/4
  bool power_unbounded = false;
  std::size_t nonrecurrent_factors = 0;
  std::vector<Quasiweight> per_word;
};

struct ErgodicReport {
  std::vector<SeriesPoint> series;
  std::optional<Diagnostics> diagnostics;
  std::vector<Verdict> verdicts;

  const Verdict* verdict(const std::string& name) const;
};

// Named verdict thresholds with the documented defaults:
//   pq 0.05, oscillation 0.05, set 0.02, hierarchical 0.005, density 0.005,
//   birkhoff 0.005, spread 0.2.
class Thresholds {
 public:
  Thresholds();
  double get(const std::string& name) const;
  void set(const std::string& name, double value);
  const std::map<std::string, double>& all() const noexcept { return values_; }

 private:
  std::map<std::string, double> values_;
};

// Scales must be strictly increasing and positive.
void require_scales(std::span<const std::size_t> scales, std::size_t sample_length);

// estimate = F(prefix_n)/n; oscillation = spread (max-norm) of F(v)/|v| over
// the distinct length-n factors v.
ErgodicReport prefix_average_series(const AdditiveFunction& F, const FactorIndex& index,
                                    std::span<const std::size_t> scales);

struct HierarchicalEstimate {
  Word x;
  Vec value;
  std::vector<Word> return_words;
  std::vector<double> nu;
  double nu_sum = 0.0;
};

// sum_j nu_j F(y_j)/|y_j| over the return words y_j of x, with
// nu_j = #_{y_j x}(sample) |y_j| / |sample|.
HierarchicalEstimate hierarchical_estimate(const AdditiveFunction& F, const FactorIndex& index,
                                           const Word& x);
// Partitioning sequence of sample prefixes of the given (increasing) lengths.
std::vector<HierarchicalEstimate> hierarchical_series(const AdditiveFunction& F,
                                                      const FactorIndex& index,
                                                      std::span<const std::size_t> prefix_lengths);

// Averages f over centres start+k .. start+k+n-1 (windows sample[start+j,
// start+j+2k]); oscillation = spread over starts.
ErgodicReport birkhoff_series(const CylinderFunction& f, const Word& sample,
                              std::span<const std::size_t> scales,
                              std::span<const std::size_t> starts);

struct DefectReport {
  double defect = 0.0;
  double bound = 0.0;  // 4 ||f|| k
  std::size_t occurrences_used = 0;
};

// Spread of sum_{j<|w|} f(centre q+j) over occurrences q of w whose windows
// fit inside the sample.
DefectReport window_agreement_defect(const CylinderFunction& f, const Word& sample, const Word& w);

// max of F(v)/n over distinct length-n factors.
double subadditive_Fn(const SubadditiveFunction& F, const FactorIndex& index, std::size_t n);

// estimate = {F(prefix_n)/n, F^(n), running inf of F^(n)}; oscillation =
// |F(prefix_n)/n - running inf|. Verdict "set-agreement" compares the terminal
// prefix value F(prefix_T)/T (T = terminal_length, or the last scale when 0)
// with the minimum of F^(n) over the scales.
ErgodicReport subadditive_limit_report(const SubadditiveFunction& F, const FactorIndex& index,
                                       std::span<const std::size_t> scales,
                                       double tolerance = 0.02,
                                       std::size_t terminal_length = 0);

// Liminf proxy: min over windows (stride L/4 unless given) of l_v(window)/L.
double nu_estimate(const FactorIndex& index, const Word& v, std::size_t window,
                   std::size_t stride = 0);

ErgodicReport diagnostics(const FactorIndex& index, std::size_t maxlen, std::size_t window,
                          const Thresholds& thresholds = {});

// Smallest period of w (KMP border).
std::size_t smallest_period(std::span<const Symbol> w);

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace subshift
