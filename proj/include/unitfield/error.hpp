#pragma once

#include <stdexcept>
#include <string>

namespace unitfield {

enum class Errc {
  zero_function,          // valuation/height of 0
  domain,                 // input outside an operation's domain (non-unit, ...)
  parse,
  degenerate_fourple,
  degenerate_configuration,
  not_rational,
  degenerate_cover,
  degenerate_input,       // a = 1 in gcd_sum, vanishing subsum in Zannier, ...
  non_unit_u1,
  non_unit_u2,
  non_integer_y,
  equation_mismatch,
  constant_lambda,
  lambda_support,
  lambda_strict_support,
  config,
  grid_too_large,
  io,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::zero_function: return "zero-function";
    case Errc::domain: return "domain";
    case Errc::parse: return "parse";
    case Errc::degenerate_fourple: return "degenerate-fourple";
    case Errc::degenerate_configuration: return "degenerate-configuration";
    case Errc::not_rational: return "not-rational-over-base";
    case Errc::degenerate_cover: return "degenerate-cover";
    case Errc::degenerate_input: return "degenerate-input";
    case Errc::non_unit_u1: return "non-unit-u1";
    case Errc::non_unit_u2: return "non-unit-u2";
    case Errc::non_integer_y: return "non-integer-y";
    case Errc::equation_mismatch: return "equation-mismatch";
    case Errc::constant_lambda: return "constant-lambda";
    case Errc::lambda_support: return "lambda-support-outside-S";
    case Errc::lambda_strict_support: return "lambda-squared-minus-4-support-outside-S";
    case Errc::config: return "config";
    case Errc::grid_too_large: return "grid-too-large";
    case Errc::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace unitfield
