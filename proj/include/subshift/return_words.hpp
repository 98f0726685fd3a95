#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "subshift/factor_index.hpp"
#include "subshift/word.hpp"

namespace subshift {

struct ReturnWordSet {
  Word base;
  // Distinct return words in lexicographic order.
  std::vector<Word> words;
  // Heuristic: the recurrence estimate at |base| is valid. A finite sample
  // cannot certify that no other return words exist.
  bool complete_within_sample = false;
};

// host = prefix . blocks[0] ... blocks[l-1] . suffix, with one block per
// occurrence of the base word; the last block is the base itself.
struct UPartition {
  Word host;
  Word base;
  Word prefix;
  std::vector<Word> blocks;
  Word suffix;
  std::size_t l = 0;

  Word reassemble() const;
};

struct ReturnStats {
  std::size_t n = 0;
  // Minimal return-word length over all length-n factors.
  std::size_t m = 0;
  // Lower estimate of the return-length constant: every observed return word
  // z of a factor v satisfies |z| >= |v| / kappa_est.
  double kappa_est = 0.0;
  // Largest observed exponent k with v^k a factor, v primitive, |v| <= n.
  std::size_t n_est = 0;
  Word power_root;
  // Factors of length <= n that occur only once (skipped, never fatal, when
  // return_stats is asked to tolerate them).
  std::size_t nonrecurrent = 0;
};

// Return words of u: the blocks between consecutive occurrences of u in the
// sample. Requires at least two occurrences.
ReturnWordSet return_words(const FactorIndex& index, const Word& u);

// Total: with no occurrence of u the prefix is the whole host.
UPartition u_partition(const Word& host, const Word& u);

// Number of return-word blocks u_j (j < l) of the u-partition of w equal to z.
std::size_t p_topological(const Word& z, const Word& u, const Word& w);

ReturnStats m_of_n(const FactorIndex& index, std::size_t n);
// Same statistics for several lengths, sharing one pass per factor length.
// With skip_nonrecurrent, factors occurring once are ignored instead of
// raising insufficient_sample (their m contribution is simply absent).
std::vector<ReturnStats> return_stats(const FactorIndex& index, std::span<const std::size_t> ns,
                                      bool skip_nonrecurrent = false);

// Checks p_topological(z, u, w) == count_occurrences(z u, w) after validating
// that z is an observed return word of u and w is a factor of the sample.
bool verify_prop_frequenz(const FactorIndex& index, const Word& z, const Word& u, const Word& w);

// Gap statistics of the factors of one length.
struct ReturnProfile {
  std::size_t n = 0;
  // 0 when no factor of this length recurs.
  std::size_t min_gap = 0;
  std::size_t singletons = 0;
  std::optional<std::size_t> singleton_start;
};
ReturnProfile return_profile(const FactorIndex& index, std::size_t n);

struct PowerStats {
  std::size_t exponent = 0;
  std::size_t root_start = 0;
  std::size_t root_length = 0;
};
// best[p-1]: largest exponent of a primitive factor of length p, p = 1..maxlen.
// Exponents below 2 are reported as 1 for every p <= |sample|.
std::vector<PowerStats> power_profile(const Word& sample, std::size_t maxlen);

}  // namespace subshift
