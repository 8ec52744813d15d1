#pragma once

#include <stdexcept>
#include <string>

namespace caplab {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed body/profile specification (bad parameter, unknown key).
class InvalidSpec : public Error {
 public:
  InvalidSpec(const std::string& what, std::string pointer = {})
      : Error(pointer.empty() ? what : what + " (at " + pointer + ")"),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Operation needs metadata or smoothness the body does not carry.
class UnsupportedBody : public Error {
 public:
  using Error::Error;
};

class WrongConvexity : public Error {
 public:
  using Error::Error;
};

/// A capacity sequence is too short to determine the requested term.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Gluing two characteristics at p = 2 has a singular exponent.
class UndefinedGluing : public Error {
 public:
  using Error::Error;
};

/// Sampled body invariant failed at load time.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Unreadable input file or unwritable output path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace caplab
