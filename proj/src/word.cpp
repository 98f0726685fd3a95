#include "subshift/word.hpp"

#include <algorithm>
#include <functional>

#include "subshift/error.hpp"

namespace subshift {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_input: return "invalid-input";
    case Errc::oracle_limit: return "oracle-limit";
    case Errc::sample_too_short: return "sample-too-short";
    case Errc::invalid_spec: return "invalid-spec";
    case Errc::no_fixed_point: return "no-fixed-point";
    case Errc::parse: return "parse-error";
    case Errc::insufficient_occurrences: return "insufficient-occurrences";
    case Errc::insufficient_sample: return "insufficient-sample";
    case Errc::io: return "io-error";
    case Errc::config: return "config-error";
    case Errc::invariant: return "invariant-violation";
  }
  return "unknown";
}

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (const auto& l : labels_) single_char_ = single_char_ && l.size() == 1;
}

AlphabetPtr Alphabet::make(std::vector<std::string> labels) {
  if (labels.empty()) throw Error(Errc::invalid_input, "alphabet must not be empty");
  if (labels.size() > kMaxSize)
    throw Error(Errc::invalid_input, "alphabet exceeds 256 symbols");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw Error(Errc::invalid_input, "empty symbol label");
    for (std::size_t j = 0; j < i; ++j)
      if (labels[i] == labels[j])
        throw Error(Errc::invalid_input, "duplicate symbol label '" + labels[i] + "'");
  }
  return AlphabetPtr(new Alphabet(std::move(labels)));
}

AlphabetPtr Alphabet::from_chars(std::string_view chars) {
  std::vector<std::string> labels;
  labels.reserve(chars.size());
  for (char c : chars) labels.emplace_back(1, c);
  return make(std::move(labels));
}

std::optional<Symbol> Alphabet::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Symbol>(i);
  return std::nullopt;
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Word::Word(AlphabetPtr alphabet, std::vector<Symbol> data)
    : alphabet_(std::move(alphabet)), data_(std::move(data)) {
  if (!alphabet_) throw Error(Errc::invalid_input, "word requires an alphabet");
  const auto n = alphabet_->size();
  for (Symbol s : data_)
    if (s >= n) throw Error(Errc::invalid_input, "symbol id outside alphabet");
}

Word Word::parse(AlphabetPtr alphabet, std::string_view text) {
  if (!alphabet) throw Error(Errc::invalid_input, "word requires an alphabet");
  if (!alphabet->single_char_labels())
    throw Error(Errc::invalid_input, "parse needs single-character labels");
  std::vector<Symbol> data;
  data.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto id = alphabet->find(text.substr(i, 1));
    if (!id)
      throw Error(Errc::parse, "unknown symbol '" + std::string(1, text[i]) +
                                   "' at offset " + std::to_string(i));
    data.push_back(*id);
  }
  return Word(std::move(alphabet), std::move(data));
}

Word Word::substr(std::size_t pos, std::size_t len) const {
  if (pos > data_.size()) throw Error(Errc::invalid_input, "substr start out of range");
  len = std::min(len, data_.size() - pos);
  return view_copy(symbols().subspan(pos, len));
}

bool Word::starts_with(const Word& prefix) const noexcept {
  return prefix.size() <= size() &&
         std::equal(prefix.data_.begin(), prefix.data_.end(), data_.begin());
}

std::string Word::str() const {
  std::string out;
  if (!alphabet_) return out;
  out.reserve(data_.size());
  for (Symbol s : data_) out += alphabet_->label(s);
  return out;
}

Word operator+(const Word& a, const Word& b) {
  require_same_alphabet(a, b);
  std::vector<Symbol> data;
  data.reserve(a.size() + b.size());
  data.insert(data.end(), a.data_.begin(), a.data_.end());
  data.insert(data.end(), b.data_.begin(), b.data_.end());
  return Word(a.alphabet_ ? a.alphabet_ : b.alphabet_, std::move(data));
}

void require_same_alphabet(const Word& a, const Word& b) {
  if (!same_alphabet(a.alphabet(), b.alphabet()))
    throw Error(Errc::invalid_input, "alphabet mismatch between '" + a.str() +
                                         "' and '" + b.str() + "'");
}

namespace {

void require_pattern(const Word& pattern, const Word& host) {
  require_same_alphabet(pattern, host);
  if (pattern.empty())
    throw Error(Errc::invalid_input, "pattern must be nonempty (occurrences of the empty word are undefined)");
}

}  // namespace

namespace naive {

std::vector<std::size_t> find_all(std::span<const Symbol> pattern,
                                  std::span<const Symbol> host) {
  std::vector<std::size_t> out;
  if (pattern.empty() || pattern.size() > host.size()) return out;
  for (std::size_t i = 0; i + pattern.size() <= host.size(); ++i)
    if (std::equal(pattern.begin(), pattern.end(), host.begin() + i)) out.push_back(i);
  return out;
}

std::size_t greedy_disjoint(std::span<const std::size_t> sorted_positions,
                            std::size_t pattern_length) {
  std::size_t taken = 0;
  std::size_t free_from = 0;
  for (std::size_t p : sorted_positions) {
    if (p >= free_from) {
      ++taken;
      free_from = p + pattern_length;
    }
  }
  return taken;
}

bool is_primitive(std::span<const Symbol> w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return false;
  }
  return true;
}

}  // namespace naive

std::size_t count_occurrences(const Word& pattern, const Word& host) {
  require_pattern(pattern, host);
  return naive::find_all(pattern.symbols(), host.symbols()).size();
}

OccurrenceList occurrences(const Word& pattern, const Word& host) {
  require_pattern(pattern, host);
  return {pattern, naive::find_all(pattern.symbols(), host.symbols())};
}

std::size_t max_disjoint_copies(const Word& pattern, const Word& host) {
  require_pattern(pattern, host);
  auto pos = naive::find_all(pattern.symbols(), host.symbols());
  return naive::greedy_disjoint(pos, pattern.size());
}

std::size_t max_disjoint_copies_bruteforce(const Word& pattern, const Word& host) {
  require_pattern(pattern, host);
  if (host.size() > kBruteforceLimit)
    throw Error(Errc::oracle_limit, "brute-force oracle limited to hosts of length " +
                                        std::to_string(kBruteforceLimit));
  const auto pos = naive::find_all(pattern.symbols(), host.symbols());
  const std::size_t len = pattern.size();
  std::size_t best = 0;
  // Enumerates every subset of pairwise non-overlapping occurrences.
  std::function<void(std::size_t, std::size_t, std::size_t)> visit =
      [&](std::size_t i, std::size_t free_from, std::size_t chosen) {
        if (i == pos.size()) {
          best = std::max(best, chosen);
          return;
        }
        visit(i + 1, free_from, chosen);
        if (pos[i] >= free_from) visit(i + 1, pos[i] + len, chosen + 1);
      };
  visit(0, 0, 0);
  return best;
}

std::set<Word> factors(const Word& w, std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_input, "factor length must be positive");
  std::set<Word> out;
  if (n > w.size()) return out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  return out;
}

bool is_primitive(const Word& w) {
  if (w.empty()) throw Error(Errc::invalid_input, "primitivity of the empty word is undefined");
  return naive::is_primitive(w.symbols());
}

Word power(const Word& w, std::size_t k) {
  std::vector<Symbol> data;
  data.reserve(w.size() * k);
  for (std::size_t i = 0; i < k; ++i) data.insert(data.end(), w.data().begin(), w.data().end());
  return Word(w.alphabet(), std::move(data));
}

}  // namespace subshift
