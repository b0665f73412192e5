#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lehmer {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidArgument {
 public:
  ParseError(std::size_t position, const std::string& message)
      : InvalidArgument("at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class LimitExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class CorruptCheckpoint : public Error {
 public:
  using Error::Error;
};

}  // namespace lehmer
