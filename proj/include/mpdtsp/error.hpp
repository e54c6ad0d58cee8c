#pragma once

#include <stdexcept>
#include <string>

namespace mpdtsp {

// Bad caller input: out-of-range ids, empty clouds, malformed instances.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sequence that is not a closed tour where one is required.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The exact solvers refuse instances above their size limit.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that must hold by construction did not. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string keyword, int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + keyword + ": " + message),
        keyword_(std::move(keyword)),
        line_(line) {}

  const std::string& keyword() const noexcept { return keyword_; }
  int line() const noexcept { return line_; }

 private:
  std::string keyword_;
  int line_;
};

}  // namespace mpdtsp
