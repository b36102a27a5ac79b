#pragma once

#include <stdexcept>
#include <string>

namespace ramp1 {

// Machine-readable failure codes. The CLI maps these 1:1 onto the
// "code" field of JSON error documents.
enum class errc {
  not_prime,
  not_irreducible,
  division_by_zero,
  field_too_large,
  zero_map,
  constant_map,
  inseparable_map,
  truncation_exhausted,
  condition_violated,
  precondition_violated,
  too_much_ramification,
  budget_exceeded,
  parse_error,
  verification_failed,
  internal,
};

const char* errc_name(errc c) noexcept;

class error : public std::runtime_error {
public:
  error(errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

class parse_error : public error {
public:
  parse_error(std::size_t pos, const std::string& msg)
      : error(errc::parse_error, msg), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

private:
  std::size_t pos_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) {
  throw error(c, msg);
}

}  // namespace ramp1
