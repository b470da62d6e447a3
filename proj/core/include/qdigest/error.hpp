#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdigest {

/// Raised when an argument falls outside an operation's domain: a value
/// above sigma, a quantile outside (0, 1), mismatched configurations.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed wire bytes. `field()` names the offending header field or
/// tuple component, `offset()` is the byte offset where it was read.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string field, std::size_t offset, const std::string& what)
      : std::runtime_error("decode error at byte " + std::to_string(offset) + " (" + field +
                           "): " + what),
        field_(std::move(field)),
        offset_(offset) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string field_;
  std::size_t offset_;
};

/// Text input (grid files, config files) that does not parse.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qdigest
