#ifndef WEBSK_ERROR_HPP
#define WEBSK_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace websk {

// Base for every error raised by the library. The CLI maps the
// subclasses onto exit codes: input problems -> 2, resource guards -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid input (syntax, trivalence, duplicate ids, bad terms).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public InputError {
 public:
  ValidationError(std::string subject, const std::string& what)
      : InputError(what), subject_(std::move(subject)) {}

  // Offending identifier (vertex id, edge id, generator name), may be empty.
  const std::string& subject() const noexcept { return subject_; }

 private:
  std::string subject_;
};

// A guard (state cap, brute-force size, search bound) was exceeded.
// Never accompanied by a partial answer.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace websk

#endif  // WEBSK_ERROR_HPP
