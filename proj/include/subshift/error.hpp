#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subshift {

enum class Errc {
  invalid_input,
  oracle_limit,
  sample_too_short,
  invalid_spec,
  no_fixed_point,
  parse,
  insufficient_occurrences,
  insufficient_sample,
  io,
  config,
  invariant,
};

std::string_view to_string(Errc code);

// Every failure raised by the library carries one of the codes above; the CLI
// maps them onto process exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace subshift
