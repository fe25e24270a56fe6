#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace selfinv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed spec text. Carries the byte offset of the failure and the tokens
// that would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position,
             std::vector<std::string> expected)
      : Error(message), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

// Structurally valid spec with a parameter outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation requested on a spec that lacks the capability (no density, no
// closed-form cdf, ...).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A draw hit a probability-zero event (e.g. an exact zero from a continuous
// law). The message identifies the stream so the event is reproducible.
class SampleError : public Error {
 public:
  using Error::Error;
};

}  // namespace selfinv
