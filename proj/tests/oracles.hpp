#pragma once

// Naive reference implementations over std::string. Nothing here touches the
// library, so agreement with it is meaningful.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::size_t> positions(const std::string& v, const std::string& w) {
  std::vector<std::size_t> out;
  if (v.empty() || v.size() > w.size()) return out;
  for (std::size_t i = 0; i + v.size() <= w.size(); ++i)
    if (w.compare(i, v.size(), v) == 0) out.push_back(i);
  return out;
}

inline std::size_t count(const std::string& v, const std::string& w) { return positions(v, w).size(); }

inline std::set<std::string> factors(const std::string& w, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  return out;
}

inline std::size_t distinct_factors(const std::string& w) {
  std::set<std::string> all;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t n = 1; i + n <= w.size(); ++n) all.insert(w.substr(i, n));
  return all.size();
}

// Maximum number of pairwise disjoint occurrences, by trying every subset of
// occurrences (bitmask); only for short hosts.
inline std::size_t max_disjoint_exhaustive(const std::string& v, const std::string& w) {
  const auto pos = positions(v, w);
  const std::size_t k = pos.size();
  std::size_t best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::size_t chosen = 0;
    std::size_t last_end = 0;
    bool ok = true, any = false;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      if (any && pos[i] < last_end) ok = false;
      last_end = pos[i] + v.size();
      any = true;
      ++chosen;
    }
    if (ok) best = std::max(best, chosen);
  }
  return best;
}

inline bool primitive(const std::string& v) {
  for (std::size_t d = 1; d < v.size(); ++d) {
    if (v.size() % d) continue;
    std::string rep;
    while (rep.size() < v.size()) rep += v.substr(0, d);
    if (rep == v) return false;
  }
  return !v.empty();
}

inline std::string repeat(const std::string& v, std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < k; ++i) out += v;
  return out;
}

inline std::size_t max_power(const std::string& v, const std::string& w) {
  std::size_t k = 0;
  while (w.find(repeat(v, k + 1)) != std::string::npos) ++k;
  return k;
}

// Largest exponent over primitive factors of length <= maxlen.
inline std::size_t max_exponent(const std::string& w, std::size_t maxlen) {
  std::size_t best = 0;
  for (std::size_t n = 1; n <= maxlen; ++n)
    for (const auto& v : factors(w, n))
      if (primitive(v)) best = std::max(best, max_power(v, w));
  return best;
}

inline std::string substitute(const std::map<char, std::string>& rules, char seed, std::size_t length) {
  std::string w(1, seed);
  while (w.size() < length) {
    std::string next;
    for (char c : w) next += rules.at(c);
    w = next;
  }
  return w.substr(0, length);
}

inline std::string fibonacci(std::size_t length) { return substitute({{'a', "ab"}, {'b', "a"}}, 'a', length); }
inline std::string thue_morse(std::size_t length) {
  // Parity of the binary digit sum.
  std::string w;
  for (std::size_t i = 0; i < length; ++i) w += static_cast<char>('0' + (__builtin_popcountll(i) & 1));
  return w;
}

// floor((n+1) p/q + r/s) - floor(n p/q + r/s) with nonnegative integers.
inline std::string sturmian(long long p, long long q, long long r, long long s, std::size_t length) {
  auto fl = [&](long long n) { return (n * p * s + r * q) / (q * s); };
  std::string w;
  for (std::size_t n = 0; n < length; ++n)
    w += static_cast<char>('0' + (fl(static_cast<long long>(n) + 1) - fl(static_cast<long long>(n))));
  return w;
}

inline std::string block_doubling(std::size_t length) {
  std::string w;
  char c = '0';
  for (std::size_t b = 1; w.size() < length; b *= 2, c = c == '0' ? '1' : '0') w += std::string(b, c);
  return w.substr(0, length);
}

inline std::string periodic(const std::string& base, std::size_t length) {
  std::string w;
  while (w.size() < length) w += base;
  return w.substr(0, length);
}

// Distinct gaps between consecutive occurrences of u, as words.
inline std::set<std::string> return_words(const std::string& w, const std::string& u) {
  std::set<std::string> out;
  const auto pos = positions(u, w);
  for (std::size_t i = 0; i + 1 < pos.size(); ++i) out.insert(w.substr(pos[i], pos[i + 1] - pos[i]));
  return out;
}

// Minimal gap between two occurrences of any length-n factor.
inline std::size_t min_return(const std::string& w, std::size_t n) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& v : factors(w, n)) {
    const auto pos = positions(v, w);
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) best = std::min(best, pos[i + 1] - pos[i]);
  }
  return best;
}

// Smallest L with every length-L window containing every length-n factor.
inline std::size_t recurrence(const std::string& w, std::size_t n) {
  const auto all = factors(w, n);
  for (std::size_t L = n; L <= w.size(); ++L) {
    bool ok = true;
    for (std::size_t s = 0; s + L <= w.size() && ok; ++s) ok = factors(w.substr(s, L), n) == all;
    if (ok) return L;
  }
  return w.size();
}

inline std::size_t greedy_disjoint(const std::string& v, const std::string& w) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + v.size() <= w.size();) {
    if (w.compare(i, v.size(), v) == 0) {
      ++n;
      i += v.size();
    } else {
      ++i;
    }
  }
  return n;
}

inline std::string random_word(std::mt19937_64& rng, std::size_t length, const std::string& letters) {
  std::string w;
  for (std::size_t i = 0; i < length; ++i) w += letters[rng() % letters.size()];
  return w;
}

}  // namespace oracle
