#include "subshift/generators.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "subshift/error.hpp"

namespace subshift {

namespace mp = boost::multiprecision;

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

mp::cpp_int parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(Errc::invalid_spec, "not an integer: '" + std::string(s) + "'");
  // cpp_int reads a leading 0 as an octal prefix.
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  mp::cpp_int v{std::string(s)};
  return negative ? mp::cpp_int(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::invalid_spec, "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(text.substr(0, slash));
    auto den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(Errc::invalid_spec, "zero denominator in '" + original + "'");
    return Rational(num, den);
  }
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw Error(Errc::invalid_spec, "malformed number '" + original + "'");
  if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
    throw Error(Errc::invalid_spec, "malformed number '" + original + "'");
  const mp::cpp_int num = parse_integer(std::string(whole.empty() ? "0" : whole) + std::string(frac));
  mp::cpp_int den = mp::pow(mp::cpp_int(10), static_cast<unsigned>(frac.size()));
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

std::size_t significant_digits(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return 0;
  std::string digits;
  for (char c : text)
    if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? 0 : digits.size() - first;
}

AlphabetPtr binary_alphabet() {
  static const AlphabetPtr alphabet = Alphabet::from_chars("01");
  return alphabet;
}

Substitution::Substitution(AlphabetPtr alphabet, std::map<Symbol, Word> images, Symbol seed)
    : alphabet_(std::move(alphabet)), images_(std::move(images)), seed_(seed) {
  if (!alphabet_) throw Error(Errc::invalid_spec, "substitution requires an alphabet");
  for (std::size_t s = 0; s < alphabet_->size(); ++s) {
    auto it = images_.find(static_cast<Symbol>(s));
    if (it == images_.end())
      throw Error(Errc::invalid_spec, "no image for symbol '" + alphabet_->label(static_cast<Symbol>(s)) + "'");
    if (it->second.empty())
      throw Error(Errc::invalid_spec, "empty image for symbol '" + alphabet_->label(static_cast<Symbol>(s)) + "'");
    if (!same_alphabet(it->second.alphabet(), alphabet_))
      throw Error(Errc::invalid_spec, "image alphabet mismatch");
  }
  if (seed_ >= alphabet_->size()) throw Error(Errc::invalid_spec, "seed outside alphabet");
}

Substitution Substitution::parse(std::string_view rules, std::optional<std::string> seed) {
  if (rules == "fibonacci") return fibonacci();
  if (rules == "thue-morse") return thue_morse();

  std::vector<std::pair<std::string, std::string>> pairs;
  std::stringstream ss{std::string(rules)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0)
      throw Error(Errc::invalid_spec, "malformed substitution rule '" + item + "' (expected x:image)");
    pairs.emplace_back(item.substr(0, colon), item.substr(colon + 1));
  }
  if (pairs.empty()) throw Error(Errc::invalid_spec, "no substitution rules given");
  std::vector<std::string> labels;
  for (const auto& [key, image] : pairs) labels.push_back(key);
  auto alphabet = Alphabet::make(labels);
  std::map<Symbol, Word> images;
  for (const auto& [key, image] : pairs) {
    if (image.empty()) throw Error(Errc::invalid_spec, "empty image for symbol '" + key + "'");
    try {
      images.emplace(*alphabet->find(key), Word::parse(alphabet, image));
    } catch (const Error& e) {
      throw Error(Errc::invalid_spec, "substitution image for '" + key + "': " + e.what());
    }
  }
  Symbol seed_id = 0;
  if (seed) {
    auto id = alphabet->find(*seed);
    if (!id) throw Error(Errc::invalid_spec, "seed '" + *seed + "' is not a rule symbol");
    seed_id = *id;
  }
  return Substitution(alphabet, std::move(images), seed_id);
}

Substitution Substitution::fibonacci() {
  auto ab = Alphabet::from_chars("ab");
  return Substitution(ab, {{0, Word::parse(ab, "ab")}, {1, Word::parse(ab, "a")}}, 0);
}

Substitution Substitution::thue_morse() {
  auto bin = binary_alphabet();
  return Substitution(bin, {{0, Word::parse(bin, "01")}, {1, Word::parse(bin, "10")}}, 0);
}

bool Substitution::extendable() const { return image(seed_)[0] == seed_; }

bool Substitution::primitive() const {
  const std::size_t k = alphabet_->size();
  // reach[i][j]: j occurs in the image of i under the current power.
  std::vector<std::vector<bool>> m(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (Symbol s : image(static_cast<Symbol>(i)).symbols()) m[i][s] = true;
  auto power = m;
  // Wielandt: a primitive k x k matrix has a positive power of order <= (k-1)^2 + 1.
  const std::size_t limit = (k - 1) * (k - 1) + 1;
  for (std::size_t e = 1; e <= limit; ++e) {
    bool positive = true;
    for (std::size_t i = 0; i < k && positive; ++i)
      for (std::size_t j = 0; j < k && positive; ++j) positive = power[i][j];
    if (positive) return true;
    std::vector<std::vector<bool>> next(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l)
        if (power[i][l])
          for (std::size_t j = 0; j < k; ++j)
            if (m[l][j]) next[i][j] = true;
    power = std::move(next);
  }
  return false;
}

Word Substitution::apply(const Word& w) const {
  std::vector<Symbol> out;
  for (Symbol s : w.symbols()) {
    const auto& img = image(s).data();
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(alphabet_, std::move(out));
}

Word substitution_fixed_point(const Substitution& s, std::size_t length) {
  if (length == 0) throw Error(Errc::invalid_spec, "target length must be positive");
  if (!s.extendable())
    throw Error(Errc::invalid_spec, "image of the seed '" + s.alphabet()->label(s.seed()) +
                                        "' does not begin with the seed");
  std::vector<Symbol> current{s.seed()};
  while (current.size() < length) {
    std::vector<Symbol> next;
    next.reserve(std::min<std::size_t>(length, current.size() * 2));
    // Iterates are nested prefixes, so truncating each one to `length` loses
    // nothing of the final prefix.
    for (Symbol x : current) {
      const auto& img = s.image(x).data();
      next.insert(next.end(), img.begin(), img.end());
      if (next.size() >= length) break;
    }
    if (next.size() > length) next.resize(length);
    if (next.size() <= current.size())
      throw Error(Errc::no_fixed_point, "substitution iterates stop growing at length " +
                                            std::to_string(current.size()));
    current = std::move(next);
  }
  current.resize(length);
  return Word(s.alphabet(), std::move(current));
}

SturmianSample sturmian_word(const Rational& alpha, const Rational& rho, std::size_t length) {
  if (length == 0) throw Error(Errc::invalid_spec, "target length must be positive");
  if (alpha <= 0 || alpha >= 1) throw Error(Errc::invalid_spec, "alpha must lie in (0, 1)");
  const mp::cpp_int a_num = mp::numerator(alpha), a_den = mp::denominator(alpha);
  const mp::cpp_int r_num = mp::numerator(rho), r_den = mp::denominator(rho);
  const mp::cpp_int q = mp::lcm(a_den, r_den);
  const mp::cpp_int step = a_num * (q / a_den);
  // frac(n*alpha + rho) * q, kept in [0, q).
  mp::cpp_int rem = (r_num * (q / r_den)) % q;
  if (rem < 0) rem += q;

  std::vector<Symbol> out(length);
  for (std::size_t n = 0; n < length; ++n) {
    rem += step;
    if (rem >= q) {
      rem -= q;
      out[n] = 1;
    } else {
      out[n] = 0;
    }
  }
  return {Word(binary_alphabet(), std::move(out)), a_den * 2 <= length};
}

Word periodic_word(const Word& base, std::size_t length) {
  if (base.empty()) throw Error(Errc::invalid_spec, "periodic base word must be nonempty");
  std::vector<Symbol> out(length);
  for (std::size_t i = 0; i < length; ++i) out[i] = base[i % base.size()];
  return Word(base.alphabet(), std::move(out));
}

Word block_doubling_word(std::size_t length) {
  if (length == 0) throw Error(Errc::invalid_spec, "target length must be positive");
  std::vector<Symbol> out;
  out.reserve(length);
  std::size_t block = 1;
  Symbol symbol = 0;
  while (out.size() < length) {
    const std::size_t take = std::min(block, length - out.size());
    out.insert(out.end(), take, symbol);
    block *= 2;
    symbol ^= 1;
  }
  return Word(binary_alphabet(), std::move(out));
}

Word word_from_text(std::string_view text, AlphabetPtr alphabet) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::invalid_input, "sample text is empty");
  if (!alphabet) {
    std::array<bool, 256> present{};
    for (char c : text) present[static_cast<unsigned char>(c)] = true;
    std::string chars;
    for (std::size_t c = 0; c < present.size(); ++c)
      if (present[c]) chars += static_cast<char>(c);
    alphabet = Alphabet::from_chars(chars);
  }
  return Word::parse(std::move(alphabet), text);
}

Word word_from_file(const std::filesystem::path& path, AlphabetPtr alphabet) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open sample file '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return word_from_text(text, std::move(alphabet));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace subshift
