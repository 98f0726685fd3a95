#include "subshift/return_words.hpp"

#include <algorithm>
#include <set>

#include "subshift/error.hpp"

namespace subshift {

Word UPartition::reassemble() const {
  Word out = prefix;
  for (const auto& b : blocks) out = out + b;
  return out + suffix;
}

ReturnWordSet return_words(const FactorIndex& index, const Word& u) {
  require_same_alphabet(u, index.sample());
  if (u.empty()) throw Error(Errc::invalid_input, "return words of the empty word are undefined");
  const auto pos = index.positions(u.symbols());
  if (pos.size() < 2)
    throw Error(Errc::insufficient_occurrences,
                "'" + u.str() + "' occurs " + std::to_string(pos.size()) +
                    " time(s) in the sample; return words need at least two occurrences");

  const auto text = index.sample().symbols();
  auto less = [&](std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b) {
    return std::lexicographical_compare(text.begin() + a.first, text.begin() + a.first + a.second,
                                        text.begin() + b.first, text.begin() + b.first + b.second);
  };
  std::set<std::pair<std::size_t, std::size_t>, decltype(less)> distinct(less);
  for (std::size_t i = 0; i + 1 < pos.size(); ++i) distinct.insert({pos[i], pos[i + 1] - pos[i]});

  ReturnWordSet out;
  out.base = u;
  for (auto [start, len] : distinct) {
    Word z = index.sample().substr(start, len);
    const Word zu = z + u;
    if (!zu.starts_with(u) || count_occurrences(u, zu) != 2)
      throw Error(Errc::invariant, "block '" + z.str() + "' fails the return-word definition for '" + u.str() + "'");
    out.words.push_back(std::move(z));
  }
  if (u.size() <= index.size() / 4) out.complete_within_sample = index.recurrence_estimate(u.size()).valid;
  return out;
}

UPartition u_partition(const Word& host, const Word& u) {
  require_same_alphabet(host, u);
  if (u.empty()) throw Error(Errc::invalid_input, "u-partition needs a nonempty base word");
  UPartition part;
  part.host = host;
  part.base = u;
  const auto pos = naive::find_all(u.symbols(), host.symbols());
  part.l = pos.size();
  if (pos.empty()) {
    part.prefix = host;
    part.suffix = Word(host.alphabet());
    return part;
  }
  part.prefix = host.substr(0, pos.front());
  for (std::size_t j = 0; j + 1 < pos.size(); ++j)
    part.blocks.push_back(host.substr(pos[j], pos[j + 1] - pos[j]));
  part.blocks.push_back(host.substr(pos.back(), u.size()));
  part.suffix = host.substr(pos.back() + u.size(), host.size());
  return part;
}

std::size_t p_topological(const Word& z, const Word& u, const Word& w) {
  require_same_alphabet(z, u);
  if (z.empty() || u.empty()) throw Error(Errc::invalid_input, "z and u must be nonempty");
  const auto part = u_partition(w, u);
  if (part.l < 2) return 0;
  // The terminal block u_l is the trailing copy of u, not a return-word block.
  return static_cast<std::size_t>(std::count(part.blocks.begin(), part.blocks.end() - 1, z));
}

bool verify_prop_frequenz(const FactorIndex& index, const Word& z, const Word& u, const Word& w) {
  require_same_alphabet(z, index.sample());
  require_same_alphabet(u, index.sample());
  require_same_alphabet(w, index.sample());
  if (z.empty() || u.empty() || w.empty()) throw Error(Errc::invalid_input, "z, u, w must be nonempty");
  const Word zu = z + u;
  if (!zu.starts_with(u) || count_occurrences(u, zu) != 2 || index.count(zu) == 0)
    throw Error(Errc::invalid_input, "'" + z.str() + "' is not an observed return word of '" + u.str() + "'");
  if (index.count(w) == 0) throw Error(Errc::invalid_input, "'" + w.str() + "' is not a factor of the sample");
  return p_topological(z, u, w) == count_occurrences(zu, w);
}

ReturnProfile return_profile(const FactorIndex& index, std::size_t n) {
  const auto fc = index.classify(n);
  ReturnProfile prof;
  prof.n = n;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> last(fc.count, kNone);
  std::vector<std::uint32_t> seen(fc.count, 0);
  std::size_t best = kNone;
  for (std::size_t i = 0; i + n <= index.size(); ++i) {
    const auto c = static_cast<std::size_t>(fc.id[i]);
    if (last[c] != kNone) best = std::min(best, i - last[c]);
    last[c] = i;
    ++seen[c];
  }
  for (std::size_t c = 0; c < fc.count; ++c) {
    if (seen[c] == 1) {
      if (!prof.singleton_start) prof.singleton_start = last[c];
      ++prof.singletons;
    }
  }
  prof.min_gap = best == kNone ? 0 : best;
  return prof;
}

std::vector<PowerStats> power_profile(const Word& sample, std::size_t maxlen) {
  const auto s = sample.symbols();
  const std::size_t len = s.size();
  std::vector<PowerStats> out(maxlen);
  for (std::size_t p = 1; p <= maxlen; ++p) {
    auto& best = out[p - 1];
    if (p <= len) best = {1, 0, p};
    if (2 * p > len) continue;
    // A maximal stretch [a, a+r) with s[i] == s[i+p] spans s[a, a+r+p), a word
    // of period p and exponent floor((r+p)/p). Non-primitive roots are covered
    // by their own shorter period.
    auto settle = [&](std::size_t a, std::size_t r) {
      if (r < p) return;
      const std::size_t k = (r + p) / p;
      if (k > best.exponent && naive::is_primitive(s.subspan(a, p))) best = {k, a, p};
    };
    std::size_t run = 0;
    for (std::size_t i = 0; i + p < len; ++i) {
      if (s[i] == s[i + p]) {
        ++run;
      } else {
        settle(i - run, run);
        run = 0;
      }
    }
    settle(len - p - run, run);
  }
  return out;
}

std::vector<ReturnStats> return_stats(const FactorIndex& index, std::span<const std::size_t> ns,
                                      bool skip_nonrecurrent) {
  if (ns.empty()) return {};
  const std::size_t top = *std::max_element(ns.begin(), ns.end());
  if (*std::min_element(ns.begin(), ns.end()) == 0)
    throw Error(Errc::invalid_input, "factor length must be positive");
  if (top > index.size())
    throw Error(Errc::insufficient_sample, "factor length " + std::to_string(top) +
                                               " exceeds the sample length " + std::to_string(index.size()));

  std::vector<ReturnProfile> profiles;
  for (std::size_t n = 1; n <= top; ++n) profiles.push_back(return_profile(index, n));
  const auto powers = power_profile(index.sample(), top);

  std::vector<ReturnStats> out;
  for (std::size_t n : ns) {
    const auto& prof = profiles[n - 1];
    if (prof.singletons > 0 && !skip_nonrecurrent)
      throw Error(Errc::insufficient_sample,
                  "factor '" + index.sample().substr(*prof.singleton_start, n).str() +
                      "' of length " + std::to_string(n) + " occurs only once in the sample");
    ReturnStats st;
    st.n = n;
    st.m = prof.min_gap;
    std::size_t best_power = 0;
    for (std::size_t p = 1; p <= n; ++p) {
      const auto& ps = powers[p - 1];
      if (ps.exponent > st.n_est) {
        st.n_est = ps.exponent;
        best_power = p;
      }
    }
    if (best_power > 0)
      st.power_root = index.sample().substr(powers[best_power - 1].root_start, best_power);
    // Observed return words of factors up to length n, plus the return word v
    // of v^(k-1) implied by every observed power v^k.
    double kappa = 0.0;
    for (std::size_t len = 1; len <= n; ++len) st.nonrecurrent += profiles[len - 1].singletons;
    for (std::size_t len = 1; len <= n; ++len)
      if (profiles[len - 1].min_gap > 0)
        kappa = std::max(kappa, static_cast<double>(len) / static_cast<double>(profiles[len - 1].min_gap));
    if (st.n_est >= 2) kappa = std::max(kappa, static_cast<double>(st.n_est - 1));
    st.kappa_est = kappa;
    out.push_back(std::move(st));
  }
  return out;
}

ReturnStats m_of_n(const FactorIndex& index, std::size_t n) {
  const std::size_t ns[] = {n};
  return return_stats(index, ns).front();
}

}  // namespace subshift
