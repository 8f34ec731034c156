#pragma once

#include <stdexcept>
#include <string>

namespace bent {

enum class errc {
  invalid_parameter,
  not_a_group,
  wrong_kind,
  unsupported_structure,
  dimension_mismatch,
  incomplete_dual,
  parse_error,
  verification_failed,
  too_large,
};

/// Library error carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace bent
