#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subshift {

using Symbol = std::uint8_t;

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

// Ordered list of distinct symbol labels. Symbol ids are 0..size-1 in the
// listed order; labels only matter at I/O boundaries.
class Alphabet {
 public:
  static constexpr std::size_t kMaxSize = 256;

  static AlphabetPtr make(std::vector<std::string> labels);
  // One label per character, in the order given ("ab" -> {a, b}).
  static AlphabetPtr from_chars(std::string_view chars);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(Symbol id) const { return labels_.at(id); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Symbol> find(std::string_view label) const;
  bool single_char_labels() const noexcept { return single_char_; }

  bool operator==(const Alphabet& other) const noexcept {
    return labels_ == other.labels_;
  }

 private:
  explicit Alphabet(std::vector<std::string> labels);

  std::vector<std::string> labels_;
  bool single_char_ = true;
};

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) noexcept;

class Word {
 public:
  Word() = default;
  explicit Word(AlphabetPtr alphabet, std::vector<Symbol> data = {});

  // Reads one symbol per character; requires single-character labels.
  static Word parse(AlphabetPtr alphabet, std::string_view text);

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  Symbol operator[](std::size_t i) const noexcept { return data_[i]; }
  std::span<const Symbol> symbols() const noexcept { return data_; }
  const std::vector<Symbol>& data() const noexcept { return data_; }

  Word substr(std::size_t pos, std::size_t len) const;
  Word view_copy(std::span<const Symbol> part) const {
    return Word(alphabet_, {part.begin(), part.end()});
  }
  bool starts_with(const Word& prefix) const noexcept;

  std::string str() const;

  friend Word operator+(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) noexcept {
    return a.data_ == b.data_ && same_alphabet(a.alphabet_, b.alphabet_);
  }
  friend std::strong_ordering operator<=>(const Word& a,
                                          const Word& b) noexcept {
    return a.data_ <=> b.data_;
  }

 private:
  AlphabetPtr alphabet_;
  std::vector<Symbol> data_;
};

struct OccurrenceList {
  Word pattern;
  std::vector<std::size_t> positions;

  std::size_t count() const noexcept { return positions.size(); }
};

// Throws invalid_input unless both words share an alphabet.
void require_same_alphabet(const Word& a, const Word& b);

// Overlapping occurrences are all counted.
std::size_t count_occurrences(const Word& pattern, const Word& host);
OccurrenceList occurrences(const Word& pattern, const Word& host);

// Greedy left-to-right choice of non-overlapping occurrences.
std::size_t max_disjoint_copies(const Word& pattern, const Word& host);

// Exhaustive search over sets of non-overlapping occurrences. Test oracle only;
// hosts longer than kBruteforceLimit are rejected with oracle_limit.
inline constexpr std::size_t kBruteforceLimit = 24;
std::size_t max_disjoint_copies_bruteforce(const Word& pattern,
                                           const Word& host);

// l_v(w): number of disjoint copies times |v|.
inline std::size_t disjoint_cover_length(const Word& pattern,
                                         const Word& host) {
  return max_disjoint_copies(pattern, host) * pattern.size();
}

std::set<Word> factors(const Word& w, std::size_t n);

bool is_primitive(const Word& w);
Word power(const Word& w, std::size_t k);

namespace naive {

// Span-level kernels shared by the word-level operations above.
std::vector<std::size_t> find_all(std::span<const Symbol> pattern,
                                  std::span<const Symbol> host);
std::size_t greedy_disjoint(std::span<const std::size_t> sorted_positions,
                            std::size_t pattern_length);
bool is_primitive(std::span<const Symbol> w);

}  // namespace naive

}  // namespace subshift
