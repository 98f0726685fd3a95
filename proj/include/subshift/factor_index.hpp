#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "subshift/word.hpp"

namespace subshift {

// One distinct factor of a fixed length: its suffix-array interval [lo, hi)
// and a representative start position in the sample.
struct FactorClass {
  std::size_t start = 0;
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t occurrences() const noexcept { return hi - lo; }
};

// Per-position class ids for factors of one length. id[i] identifies the
// factor sample[i, i+length) (ids follow lexicographic order); positions that
// do not start a full-length factor hold -1.
struct FactorClasses {
  std::size_t length = 0;
  std::size_t count = 0;
  std::vector<std::int32_t> id;
};

struct RecurrenceProfile {
  std::size_t n = 0;
  // Smallest L such that every length-L window fully inside the sample
  // contains every length-n factor of the sample.
  std::size_t r_est = 0;
  // True when r_est <= |sample|/2, i.e. at least two disjoint windows
  // witness the recurrence bound.
  bool valid = false;
};

// Immutable substring-statistics index over one sample word, backed by a
// suffix array (SA-IS) and its LCP array. All queries are const and safe to
// run concurrently.
class FactorIndex {
 public:
  // Hard cap on sample length; the index keeps everything resident.
  static constexpr std::size_t kMaxSampleLength = 10'000'000;

  explicit FactorIndex(Word sample);

  const Word& sample() const noexcept { return sample_; }
  std::size_t size() const noexcept { return sample_.size(); }
  const AlphabetPtr& alphabet() const noexcept { return sample_.alphabet(); }

  std::size_t count(const Word& v) const;
  OccurrenceList occurrence_positions(const Word& v) const;
  // Sorted start positions of an arbitrary symbol span (may be empty).
  std::vector<std::size_t> positions(std::span<const Symbol> v) const;
  // Suffix-array interval of suffixes starting with v.
  std::pair<std::size_t, std::size_t> find(std::span<const Symbol> v) const;

  // Distinct length-n factors in lexicographic order.
  std::vector<Word> enumerate_factors(std::size_t n) const;
  std::vector<FactorClass> factor_classes(std::size_t n) const;
  FactorClasses classify(std::size_t n) const;
  std::size_t factor_count(std::size_t n) const;
  // Number of distinct nonempty factors of the sample.
  std::size_t distinct_factor_count() const noexcept;

  // Largest k with v^k a factor; v must be primitive.
  std::size_t max_power(const Word& v) const;

  RecurrenceProfile recurrence_estimate(std::size_t n) const;

  std::span<const std::uint32_t> suffix_array() const noexcept { return sa_; }
  // lcp[i] = longest common prefix of suffixes sa[i-1] and sa[i]; lcp[0] = 0.
  std::span<const std::uint32_t> lcp() const noexcept { return lcp_; }

 private:
  void require_pattern(const Word& v) const;

  Word sample_;
  std::vector<std::uint32_t> sa_;
  std::vector<std::uint32_t> lcp_;
};

FactorIndex build_index(Word w);

// Suffix array of an integer string with values in [0, upper]. Exposed for
// tests.
std::vector<std::uint32_t> suffix_array(std::span<const std::int32_t> s,
                                        std::int32_t upper);

}  // namespace subshift
