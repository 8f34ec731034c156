#pragma once

#include <istream>
#include <sstream>
#include <string>

#include "bent/errors.hpp"

namespace bent::detail {

// Line-oriented reader that skips blank lines and `#` comments and tracks
// line numbers for parse errors.
class LineReader {
 public:
  explicit LineReader(std::istream& in, std::string source = "input") : in_(in), source_(std::move(source)) {}

  // Next meaningful line, or false at end of input.
  bool next(std::string& line) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_no_;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      auto first = raw.find_first_not_of(" \t\r\n");
      if (first == std::string::npos) continue;
      auto last = raw.find_last_not_of(" \t\r\n");
      line = raw.substr(first, last - first + 1);
      return true;
    }
    return false;
  }

  std::string require(const std::string& what) {
    std::string line;
    if (!next(line)) fail(errc::parse_error, source_ + ": unexpected end of input, expected " + what);
    return line;
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(errc::parse_error, source_ + ":" + std::to_string(line_no_) + ": " + msg);
  }

  int line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string source_;
  int line_no_ = 0;
};

}  // namespace bent::detail
