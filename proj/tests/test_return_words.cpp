#include "doctest.h"
#include "oracles.hpp"
#include "subshift/error.hpp"
#include "subshift/generators.hpp"
#include "subshift/return_words.hpp"

using namespace subshift;

namespace {

const AlphabetPtr ab = Alphabet::from_chars("ab");
const AlphabetPtr abc = Alphabet::from_chars("abc");

Word W(const std::string& s, const AlphabetPtr& a = ab) { return Word::parse(a, s); }

std::set<std::string> strs(const std::vector<Word>& ws) {
  std::set<std::string> out;
  for (const auto& w : ws) out.insert(w.str());
  return out;
}

std::vector<std::string> blocks(const UPartition& p) {
  std::vector<std::string> out;
  for (const auto& b : p.blocks) out.push_back(b.str());
  return out;
}

}  // namespace

TEST_CASE("return words examples") {
  const FactorIndex fib(W(oracle::fibonacci(10000)));
  CHECK(strs(return_words(fib, W("a")).words) == std::set<std::string>{"a", "ab"});
  CHECK(strs(return_words(fib, W("ab")).words) == std::set<std::string>{"ab", "aba"});
  CHECK(return_words(fib, W("ab")).complete_within_sample);
  const FactorIndex per(W(oracle::periodic("abc", 300), abc));
  CHECK(strs(return_words(per, W("abc", abc)).words) == std::set<std::string>{"abc"});
  try {
    return_words(FactorIndex(W("abaa")), W("b"));
    FAIL("single occurrence accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::insufficient_occurrences);
  }
}

TEST_CASE("return words agree with gap oracle") {
  const std::string tm = oracle::thue_morse(4096);
  const FactorIndex idx(W(tm, binary_alphabet()));
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& u : oracle::factors(tm, n))
      CHECK(strs(return_words(idx, W(u, binary_alphabet())).words) == oracle::return_words(tm, u));
}

TEST_CASE("u-partition examples") {
  const auto p = u_partition(W("abaababa"), W("ab"));
  CHECK(p.prefix.empty());
  CHECK(blocks(p) == std::vector<std::string>{"aba", "ab", "ab"});
  CHECK(p.suffix.str() == "a");
  CHECK(p.l == 3);

  const auto q = u_partition(W("aaa"), W("aa"));
  CHECK(q.prefix.empty());
  CHECK(blocks(q) == std::vector<std::string>{"a", "aa"});
  CHECK(q.suffix.empty());

  const auto r = u_partition(W("bbb"), W("a"));
  CHECK(r.prefix.str() == "bbb");
  CHECK(r.blocks.empty());
  CHECK(r.suffix.empty());
  CHECK(r.l == 0);
}

TEST_CASE("p_topological examples") {
  CHECK(p_topological(W("aba"), W("ab"), W("abaababa")) == 1);
  CHECK(p_topological(W("ab"), W("ab"), W("abaababa")) == 1);
  CHECK(p_topological(W("b"), W("a"), W("bbb")) == 0);
  CHECK(p_topological(W("abc", abc), W("abc", abc), W(oracle::periodic("abc", 15), abc)) == 4);
}

TEST_CASE("block counts match occurrences of z u") {
  const FactorIndex fib(W(oracle::fibonacci(10000)));
  CHECK(verify_prop_frequenz(fib, W("aba"), W("ab"), W("abaababa")));
  CHECK(verify_prop_frequenz(fib, W("ab"), W("ab"), W("abaababa")));
  CHECK(count_occurrences(W("abab"), W("abaababa")) == 1);
  const FactorIndex per(W(oracle::periodic("abc", 300), abc));
  CHECK(verify_prop_frequenz(per, W("abc", abc), W("abc", abc), W(oracle::periodic("abc", 15), abc)));
  try {
    verify_prop_frequenz(fib, W("b"), W("ab"), W("abaab"));
    FAIL("non-return word accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_input);
  }
}

TEST_CASE("m(n) examples") {
  CHECK(m_of_n(FactorIndex(W(oracle::periodic("ab", 200))), 2).m == 2);
  CHECK(m_of_n(FactorIndex(W(oracle::fibonacci(10000))), 1).m == 1);
  CHECK(m_of_n(FactorIndex(W(std::string(1000, 'a'))), 3).m == 1);
  try {
    m_of_n(FactorIndex(W("aabbb")), 2);
    FAIL("singleton factor accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::insufficient_sample);
    CHECK(std::string(e.what()).find("'aa'") != std::string::npos);
  }
}

TEST_CASE("return statistics agree with oracles") {
  for (const std::string& w : {oracle::fibonacci(3000), oracle::thue_morse(3000), oracle::sturmian(3, 7, 1, 5, 3000)}) {
    const auto alphabet = w[0] == 'a' ? ab : binary_alphabet();
    const FactorIndex idx(W(w, alphabet));
    for (std::size_t n : {1, 2, 3, 5, 8, 13}) {
      const auto st = m_of_n(idx, n);
      CHECK(st.m == oracle::min_return(w, n));
      CHECK(st.n_est == oracle::max_exponent(w, n));
      CHECK(static_cast<double>(st.n_est) <= st.kappa_est + 1.0);
    }
  }
}

TEST_CASE("power profile agrees with oracle") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 60; ++round) {
    const std::string w = oracle::random_word(rng, 10 + rng() % 50, round % 3 ? "ab" : "abc");
    const auto prof = power_profile(W(w, abc), 6);
    for (std::size_t p = 1; p <= 6; ++p) {
      std::size_t expect = 0;
      for (const auto& v : oracle::factors(w, p))
        if (oracle::primitive(v)) expect = std::max(expect, oracle::max_power(v, w));
      CHECK(prof[p - 1].exponent == std::max<std::size_t>(expect, 1));
    }
  }
}
