#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "subshift/word.hpp"

namespace subshift {

using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", an integer, or a plain decimal ("0.6180339887...") exactly.
Rational parse_rational(std::string_view text);
// Number of significant digits of a decimal literal (0 for fractions).
std::size_t significant_digits(std::string_view text);

class Substitution {
 public:
  Substitution(AlphabetPtr alphabet, std::map<Symbol, Word> images, Symbol seed);

  // Rules as "a:ab,b:a" (alphabet taken from the rule keys in order), or one of
  // the presets "fibonacci" (a->ab, b->a) and "thue-morse" (0->01, 1->10).
  static Substitution parse(std::string_view rules, std::optional<std::string> seed = {});
  static Substitution fibonacci();
  static Substitution thue_morse();

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const Word& image(Symbol s) const { return images_.at(s); }
  Symbol seed() const noexcept { return seed_; }
  // image(seed) begins with seed.
  bool extendable() const;
  // Some power of the incidence matrix is entrywise positive.
  bool primitive() const;

  Word apply(const Word& w) const;

 private:
  AlphabetPtr alphabet_;
  std::map<Symbol, Word> images_;
  Symbol seed_;
};

Word substitution_fixed_point(const Substitution& s, std::size_t length);

struct SturmianSample {
  Word word;
  // Rational slope with at least two full periods inside the sample.
  bool periodic = false;
};

// s[n] = floor((n+1)*alpha + rho) - floor(n*alpha + rho), n = 0..length-1,
// evaluated in exact rational arithmetic over the alphabet {0, 1}.
SturmianSample sturmian_word(const Rational& alpha, const Rational& rho, std::size_t length);

Word periodic_word(const Word& base, std::size_t length);

// Prefix of 0^1 1^2 0^4 1^8 ... over {0, 1}.
Word block_doubling_word(std::size_t length);

// One character per symbol; a single trailing newline is dropped. Without an
// alphabet the distinct characters are used in byte order.
Word word_from_file(const std::filesystem::path& path, AlphabetPtr alphabet = nullptr);
Word word_from_text(std::string_view text, AlphabetPtr alphabet = nullptr);

AlphabetPtr binary_alphabet();

}  // namespace subshift
