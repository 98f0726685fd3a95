#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "subshift/error.hpp"
#include "subshift/factor_index.hpp"
#include "subshift/generators.hpp"

using namespace subshift;

namespace {

AlphabetPtr alphabet_for(const std::string& s) {
  std::string letters;
  for (char c : s)
    if (letters.find(c) == std::string::npos) letters += c;
  std::sort(letters.begin(), letters.end());
  return Alphabet::from_chars(letters);
}

FactorIndex I(const std::string& s, const AlphabetPtr& a) { return FactorIndex(Word::parse(a, s)); }
FactorIndex I(const std::string& s) { return I(s, alphabet_for(s)); }

std::vector<std::uint32_t> naive_sa(const std::vector<std::int32_t>& s) {
  std::vector<std::uint32_t> sa(s.size());
  std::iota(sa.begin(), sa.end(), 0u);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
  });
  return sa;
}

}  // namespace

TEST_CASE("suffix array matches sorted suffixes") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 1 + rng() % 200;
    const int sigma = 1 + static_cast<int>(rng() % 5);
    std::vector<std::int32_t> s(n);
    for (auto& x : s) x = static_cast<std::int32_t>(rng() % sigma);
    CHECK(suffix_array(s, sigma - 1) == naive_sa(s));
  }
}

TEST_CASE("distinct factor counts") {
  CHECK(I("abaab").distinct_factor_count() == 11);
  CHECK(I("abaab").distinct_factor_count() == oracle::distinct_factors("abaab"));
  CHECK(I("a").distinct_factor_count() == 1);
  CHECK(I("aaaa").distinct_factor_count() == 4);
  CHECK(I("aaaa").factor_count(2) == 1);
}

TEST_CASE("count and positions examples") {
  const auto ab = Alphabet::from_chars("ab");
  const auto idx = I("abaab", ab);
  CHECK(idx.count(Word::parse(ab, "ab")) == 2);
  CHECK(idx.count(Word::parse(ab, "abaab")) == 1);
  CHECK(idx.count(Word::parse(ab, "bb")) == 0);
  CHECK(idx.count(Word::parse(ab, "abaaba")) == 0);
  CHECK(I("abaababa", ab).occurrence_positions(Word::parse(ab, "ab")).positions == std::vector<std::size_t>{0, 3, 5});
  CHECK(I("aaa", ab).occurrence_positions(Word::parse(ab, "aa")).positions == std::vector<std::size_t>{0, 1});
  const auto abcd = Alphabet::from_chars("abcd");
  CHECK(I("abc", abcd).occurrence_positions(Word::parse(abcd, "d")).positions.empty());
}

TEST_CASE("enumerate_factors examples") {
  auto strs = [](const std::vector<Word>& ws) {
    std::vector<std::string> out;
    for (const auto& w : ws) out.push_back(w.str());
    return out;
  };
  CHECK(strs(I("abab").enumerate_factors(2)) == std::vector<std::string>{"ab", "ba"});
  CHECK(strs(I("aaaa").enumerate_factors(3)) == std::vector<std::string>{"aaa"});
  CHECK(I("ab").enumerate_factors(3).empty());
}

TEST_CASE("max_power examples") {
  const auto tm = substitution_fixed_point(Substitution::thue_morse(), 64);
  CHECK(FactorIndex(tm).max_power(Word::parse(tm.alphabet(), "01")) == 2);
  CHECK(I("aaaa").max_power(Word::parse(alphabet_for("a"), "a")) == 4);
  const auto abc = Alphabet::from_chars("abc");
  CHECK(I("abcabc", abc).max_power(Word::parse(abc, "abc")) == 2);
  CHECK(I("abcabc", abc).max_power(Word::parse(abc, "cb")) == 0);
  try {
    I("abab").max_power(Word::parse(alphabet_for("ab"), "abab"));
    FAIL("non-primitive root accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_input);
  }
}

TEST_CASE("recurrence estimate examples") {
  const auto ab = Alphabet::from_chars("ab");
  // Every length-3 window of (ab)^8 already holds both "ab" and "ba".
  CHECK(I(oracle::periodic("ab", 16), ab).recurrence_estimate(2).r_est == 3);
  CHECK(oracle::recurrence(oracle::periodic("ab", 16), 2) == 3);
  CHECK(I(std::string(1000, 'a'), ab).recurrence_estimate(1).r_est == 1);
  CHECK(I(oracle::fibonacci(10000), ab).recurrence_estimate(1).r_est == 3);
  CHECK(I(oracle::fibonacci(10000), ab).recurrence_estimate(1).valid);
  try {
    I("abab", ab).recurrence_estimate(2);
    FAIL("short sample accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::sample_too_short);
  }
}

TEST_CASE("recurrence estimate agrees with window oracle") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 40; ++round) {
    const std::string w = round % 2 ? oracle::fibonacci(40 + rng() % 60) : oracle::random_word(rng, 40 + rng() % 40, "ab");
    const std::size_t n = 1 + rng() % 3;
    CHECK(I(w, Alphabet::from_chars("ab")).recurrence_estimate(n).r_est == oracle::recurrence(w, n));
  }
}

TEST_CASE("factor classes partition the positions") {
  const auto idx = I(oracle::fibonacci(500), Alphabet::from_chars("ab"));
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto classes = idx.factor_classes(n);
    const auto fc = idx.classify(n);
    CHECK(classes.size() == n + 1);
    CHECK(fc.count == classes.size());
    std::size_t total = 0;
    for (const auto& c : classes) total += c.occurrences();
    CHECK(total == idx.size() - n + 1);
    for (std::size_t i = 0; i + n <= idx.size(); ++i) {
      const auto& c = classes[static_cast<std::size_t>(fc.id[i])];
      CHECK(idx.sample().substr(i, n) == idx.sample().substr(c.start, n));
    }
  }
}

TEST_CASE("empty samples are rejected") {
  try {
    FactorIndex(Word(Alphabet::from_chars("ab")));
    FAIL("empty sample accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_input);
  }
}
