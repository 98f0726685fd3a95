#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "subshift/error.hpp"
#include "subshift/generators.hpp"

using namespace subshift;

namespace {

template <class Fn>
Errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::invariant;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("subshift_test_" + name);
  std::ofstream(path, std::ios::binary) << body;
  return path;
}

}  // namespace

TEST_CASE("substitution fixed points") {
  CHECK(substitution_fixed_point(Substitution::fibonacci(), 8).str() == "abaababa");
  CHECK(substitution_fixed_point(Substitution::thue_morse(), 8).str() == "01101001");
  CHECK(substitution_fixed_point(Substitution::fibonacci(), 1).str() == "a");
  CHECK(substitution_fixed_point(Substitution::thue_morse(), 1).str() == "0");
  CHECK(substitution_fixed_point(Substitution::fibonacci(), 5000).str() == oracle::fibonacci(5000));
  CHECK(substitution_fixed_point(Substitution::thue_morse(), 5000).str() == oracle::thue_morse(5000));
}

TEST_CASE("substitution parsing and properties") {
  const auto s = Substitution::parse("a:ab,b:a");
  CHECK(substitution_fixed_point(s, 13).str() == oracle::fibonacci(13));
  CHECK(s.primitive());
  CHECK(s.extendable());
  CHECK(Substitution::thue_morse().primitive());
  CHECK_FALSE(Substitution::parse("a:ab,b:b").primitive());
  CHECK(code_of([] { Substitution::parse("a:ba,b:a"); substitution_fixed_point(Substitution::parse("a:ba,b:a"), 4); }) ==
        Errc::invalid_spec);
  CHECK(code_of([] { substitution_fixed_point(Substitution::parse("a:a,b:b"), 4); }) == Errc::no_fixed_point);
  CHECK(code_of([] { Substitution::parse("a:ab,b:"); }) == Errc::invalid_spec);
  CHECK(code_of([] { Substitution::parse("a:ac,b:a"); }) == Errc::invalid_spec);
  CHECK(code_of([] { Substitution::parse("nonsense"); }) == Errc::invalid_spec);
  CHECK(substitution_fixed_point(Substitution::parse("a:ab,b:a", "a"), 3).str() == "aba");
}

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("0.7") == Rational(7, 10));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(significant_digits("0.618033988749894848204586834365") == 30);
  CHECK(code_of([] { parse_rational("1/0"); }) == Errc::invalid_spec);
  CHECK(code_of([] { parse_rational("abc"); }) == Errc::invalid_spec);
}

TEST_CASE("sturmian words follow the floor formula") {
  // s[n] = floor((n+1)a + r) - floor(n a + r) for n = 0..7.
  const auto golden = parse_rational("0.618033988749894848204586834366");
  CHECK(sturmian_word(golden, 0, 8).word.str() == "01011010");
  // The same sequence read from n = 1.
  CHECK(sturmian_word(golden, 0, 9).word.str().substr(1) == "10110101");
  CHECK_FALSE(sturmian_word(golden, 0, 8).periodic);

  const auto half = sturmian_word(Rational(1, 2), 0, 6);
  CHECK(half.word.str() == "010101");
  CHECK(half.periodic);
  CHECK(sturmian_word(parse_rational("0.7"), 0, 1).word.str() == "0");
  CHECK(code_of([] { sturmian_word(Rational(3, 2), 0, 4); }) == Errc::invalid_spec);
  CHECK(code_of([] { sturmian_word(Rational(0), 0, 4); }) == Errc::invalid_spec);

  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    const long long q = 2 + static_cast<long long>(rng() % 200), p = 1 + static_cast<long long>(rng() % (q - 1));
    const long long s = 1 + static_cast<long long>(rng() % 50), r = static_cast<long long>(rng() % (3 * s));
    CHECK(sturmian_word(Rational(p, q), Rational(r, s), 300).word.str() == oracle::sturmian(p, q, r, s, 300));
  }
}

TEST_CASE("periodic and block-doubling words") {
  const auto abc = Alphabet::from_chars("abc");
  CHECK(periodic_word(Word::parse(abc, "abc"), 7).str() == "abcabca");
  CHECK(periodic_word(Word::parse(abc, "a"), 3).str() == "aaa");
  CHECK(periodic_word(Word::parse(abc, "ab"), 2).str() == "ab");
  CHECK(code_of([&] { periodic_word(Word(abc), 2); }) == Errc::invalid_spec);
  CHECK(block_doubling_word(7).str() == "0110000");
  CHECK(block_doubling_word(1).str() == "0");
  CHECK(block_doubling_word(3).str() == "011");
  CHECK(block_doubling_word(3000).str() == oracle::block_doubling(3000));
}

TEST_CASE("sample files") {
  CHECK(word_from_file(temp_file("a.txt", "abab\n")).str() == "abab");
  const auto bin = word_from_file(temp_file("b.txt", "011010"), binary_alphabet());
  CHECK(bin.size() == 6);
  CHECK(code_of([] { word_from_file(temp_file("c.txt", "abcx"), Alphabet::from_chars("abc")); }) == Errc::parse);
  CHECK(code_of([] { word_from_file("/nonexistent/sample.txt"); }) == Errc::io);
  CHECK(code_of([] { word_from_file(temp_file("d.txt", "\n")); }) == Errc::invalid_input);
  try {
    word_from_file(temp_file("e.txt", "abcx"), Alphabet::from_chars("abc"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("offset 3") != std::string::npos);
  }
}
