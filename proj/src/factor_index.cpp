#include "subshift/factor_index.hpp"

#include <algorithm>
#include <numeric>

#include "subshift/error.hpp"

namespace subshift {

namespace {

// SA-IS (Nong, Zhang & Chan) on int32 strings; recursion on the reduced LMS
// string. Inputs shorter than kNaiveThreshold are sorted directly.
constexpr std::size_t kNaiveThreshold = 10;

std::vector<std::int32_t> sa_naive(std::span<const std::int32_t> s) {
  std::vector<std::int32_t> sa(s.size());
  std::iota(sa.begin(), sa.end(), 0);
  std::sort(sa.begin(), sa.end(), [&](std::int32_t a, std::int32_t b) {
    return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
  });
  return sa;
}

std::vector<std::int32_t> sa_is(std::span<const std::int32_t> s, std::int32_t upper) {
  const auto n = static_cast<std::int32_t>(s.size());
  if (s.size() < kNaiveThreshold) return sa_naive(s);

  std::vector<std::int32_t> sa(n);
  std::vector<bool> is_s(n);  // S-type flags; the last symbol is L-type
  for (std::int32_t i = n - 2; i >= 0; --i)
    is_s[i] = s[i] == s[i + 1] ? is_s[i + 1] : s[i] < s[i + 1];

  // Bucket heads: sum_l[c] is the start of c's bucket, sum_s[c] the start of
  // its S-type part.
  std::vector<std::int32_t> sum_l(upper + 2, 0), sum_s(upper + 2, 0);
  for (std::int32_t i = 0; i < n; ++i) {
    if (!is_s[i])
      ++sum_s[s[i]];
    else
      ++sum_l[s[i] + 1];
  }
  for (std::int32_t c = 0; c <= upper; ++c) {
    sum_s[c] += sum_l[c];
    if (c < upper) sum_l[c + 1] += sum_s[c];
  }

  auto induce = [&](const std::vector<std::int32_t>& lms) {
    std::fill(sa.begin(), sa.end(), -1);
    std::vector<std::int32_t> buf(sum_s.begin(), sum_s.end());
    for (std::int32_t d : lms)
      if (d != n) sa[buf[s[d]]++] = d;
    std::copy(sum_l.begin(), sum_l.end(), buf.begin());
    sa[buf[s[n - 1]]++] = n - 1;
    for (std::int32_t i = 0; i < n; ++i) {
      const std::int32_t v = sa[i];
      if (v >= 1 && !is_s[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
    }
    std::copy(sum_l.begin(), sum_l.end(), buf.begin());
    for (std::int32_t i = n - 1; i >= 0; --i) {
      const std::int32_t v = sa[i];
      if (v >= 1 && is_s[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
    }
  };

  std::vector<std::int32_t> lms_map(n + 1, -1);
  std::vector<std::int32_t> lms;
  for (std::int32_t i = 1; i < n; ++i) {
    if (!is_s[i - 1] && is_s[i]) {
      lms_map[i] = static_cast<std::int32_t>(lms.size());
      lms.push_back(i);
    }
  }
  const auto m = static_cast<std::int32_t>(lms.size());

  induce(lms);

  if (m > 0) {
    std::vector<std::int32_t> sorted_lms;
    sorted_lms.reserve(m);
    for (std::int32_t v : sa)
      if (lms_map[v] != -1) sorted_lms.push_back(v);

    // Name LMS substrings; equal substrings share a name.
    std::vector<std::int32_t> reduced(m);
    std::int32_t names = 0;
    reduced[lms_map[sorted_lms[0]]] = 0;
    for (std::int32_t i = 1; i < m; ++i) {
      std::int32_t l = sorted_lms[i - 1], r = sorted_lms[i];
      const std::int32_t end_l = lms_map[l] + 1 < m ? lms[lms_map[l] + 1] : n;
      const std::int32_t end_r = lms_map[r] + 1 < m ? lms[lms_map[r] + 1] : n;
      bool same = true;
      if (end_l - l != end_r - r) {
        same = false;
      } else {
        while (l < end_l && s[l] == s[r]) {
          ++l;
          ++r;
        }
        if (l == n || s[l] != s[r]) same = false;
      }
      if (!same) ++names;
      reduced[lms_map[sorted_lms[i]]] = names;
    }

    auto reduced_sa = sa_is(reduced, names);
    for (std::int32_t i = 0; i < m; ++i) sorted_lms[i] = lms[reduced_sa[i]];
    induce(sorted_lms);
  }
  return sa;
}

std::vector<std::uint32_t> kasai(std::span<const Symbol> s, std::span<const std::uint32_t> sa) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::uint32_t>(i);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace

std::vector<std::uint32_t> suffix_array(std::span<const std::int32_t> s, std::int32_t upper) {
  auto sa = sa_is(s, upper);
  return {sa.begin(), sa.end()};
}

FactorIndex::FactorIndex(Word sample) : sample_(std::move(sample)) {
  if (sample_.empty()) throw Error(Errc::invalid_input, "cannot index an empty sample");
  if (sample_.size() > kMaxSampleLength)
    throw Error(Errc::invalid_input, "sample length " + std::to_string(sample_.size()) +
                                         " exceeds the cap of " +
                                         std::to_string(kMaxSampleLength) + " symbols");
  std::vector<std::int32_t> s(sample_.data().begin(), sample_.data().end());
  sa_ = subshift::suffix_array(s, static_cast<std::int32_t>(sample_.alphabet()->size()) - 1);
  lcp_ = kasai(sample_.symbols(), sa_);
}

FactorIndex build_index(Word w) { return FactorIndex(std::move(w)); }

void FactorIndex::require_pattern(const Word& v) const {
  require_same_alphabet(v, sample_);
  if (v.empty()) throw Error(Errc::invalid_input, "pattern must be nonempty");
}

std::pair<std::size_t, std::size_t> FactorIndex::find(std::span<const Symbol> v) const {
  const auto text = sample_.symbols();
  const std::size_t n = text.size();
  // Compares the |v|-prefix of suffix `pos` with v.
  auto cmp = [&](std::size_t pos) {
    const std::size_t avail = n - pos;
    const std::size_t len = std::min(avail, v.size());
    for (std::size_t k = 0; k < len; ++k) {
      if (text[pos + k] != v[k]) return text[pos + k] < v[k] ? -1 : 1;
    }
    return len < v.size() ? -1 : 0;
  };
  auto lo = std::partition_point(sa_.begin(), sa_.end(),
                                 [&](std::uint32_t p) { return cmp(p) < 0; });
  auto hi = std::partition_point(lo, sa_.end(), [&](std::uint32_t p) { return cmp(p) == 0; });
  return {static_cast<std::size_t>(lo - sa_.begin()), static_cast<std::size_t>(hi - sa_.begin())};
}

std::size_t FactorIndex::count(const Word& v) const {
  require_pattern(v);
  auto [lo, hi] = find(v.symbols());
  return hi - lo;
}

std::vector<std::size_t> FactorIndex::positions(std::span<const Symbol> v) const {
  if (v.empty()) return {};
  auto [lo, hi] = find(v);
  std::vector<std::size_t> out(sa_.begin() + lo, sa_.begin() + hi);
  std::sort(out.begin(), out.end());
  return out;
}

OccurrenceList FactorIndex::occurrence_positions(const Word& v) const {
  require_pattern(v);
  return {v, positions(v.symbols())};
}

std::vector<FactorClass> FactorIndex::factor_classes(std::size_t n) const {
  if (n == 0) throw Error(Errc::invalid_input, "factor length must be positive");
  std::vector<FactorClass> out;
  const std::size_t len = size();
  // Suffixes sharing an n-prefix are contiguous in the suffix array, and every
  // suffix between two of them is at least n long, so lcp[r] < n marks a new
  // class exactly.
  for (std::size_t r = 0; r < len; ++r) {
    const std::size_t pos = sa_[r];
    if (len - pos < n) continue;
    if (out.empty() || lcp_[r] < n || out.back().hi != r)
      out.push_back({pos, r, r + 1});
    else
      out.back().hi = r + 1;
  }
  return out;
}

std::vector<Word> FactorIndex::enumerate_factors(std::size_t n) const {
  std::vector<Word> out;
  for (const auto& c : factor_classes(n)) out.push_back(sample_.substr(c.start, n));
  return out;
}

FactorClasses FactorIndex::classify(std::size_t n) const {
  FactorClasses fc;
  fc.length = n;
  fc.id.assign(size(), -1);
  const auto classes = factor_classes(n);
  fc.count = classes.size();
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t r = classes[c].lo; r < classes[c].hi; ++r)
      fc.id[sa_[r]] = static_cast<std::int32_t>(c);
  return fc;
}

std::size_t FactorIndex::factor_count(std::size_t n) const { return factor_classes(n).size(); }

std::size_t FactorIndex::distinct_factor_count() const noexcept {
  std::size_t total = 0;
  for (std::size_t r = 0; r < sa_.size(); ++r) total += size() - sa_[r] - lcp_[r];
  return total;
}

std::size_t FactorIndex::max_power(const Word& v) const {
  require_pattern(v);
  if (!is_primitive(v))
    throw Error(Errc::invalid_input, "max_power needs a primitive word, got '" + v.str() + "'");
  const auto pos = positions(v.symbols());
  if (pos.empty()) return 0;
  std::vector<bool> hit(size(), false);
  for (std::size_t p : pos) hit[p] = true;
  // chain[i]: number of back-to-back copies of v starting at pos[i].
  std::vector<std::size_t> chain(pos.size(), 1);
  std::size_t best = 1;
  std::size_t j = pos.size();
  for (std::size_t i = pos.size(); i-- > 0;) {
    const std::size_t next = pos[i] + v.size();
    if (next < size() && hit[next]) {
      while (j > 0 && pos[j - 1] >= next) --j;
      chain[i] = 1 + chain[j];
      best = std::max(best, chain[i]);
    }
  }
  return best;
}

RecurrenceProfile FactorIndex::recurrence_estimate(std::size_t n) const {
  if (n == 0) throw Error(Errc::invalid_input, "factor length must be positive");
  const std::size_t len = size();
  if (n > len / 4)
    throw Error(Errc::sample_too_short,
                "recurrence estimate for n=" + std::to_string(n) + " needs a sample of length >= " +
                    std::to_string(4 * n) + ", have " + std::to_string(len));
  const auto fc = classify(n);
  std::vector<std::uint32_t> seen(fc.count);

  // Every window of length L contains all classes.
  auto covers = [&](std::size_t window) {
    std::fill(seen.begin(), seen.end(), 0);
    std::size_t covered = 0;
    auto add = [&](std::size_t p) {
      if (seen[fc.id[p]]++ == 0) ++covered;
    };
    auto remove = [&](std::size_t p) {
      if (--seen[fc.id[p]] == 0) --covered;
    };
    // Starts of factors inside window [s, s+window) are s .. s+window-n.
    for (std::size_t p = 0; p + n <= window; ++p) add(p);
    if (covered != fc.count) return false;
    for (std::size_t s = 1; s + window <= len; ++s) {
      remove(s - 1);
      add(s + window - n);
      if (covered != fc.count) return false;
    }
    return true;
  };

  std::size_t lo = n, hi = len;  // covers(len) always holds
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (covers(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return {n, lo, lo <= len / 2};
}

}  // namespace subshift
