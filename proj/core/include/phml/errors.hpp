#pragma once

#include <stdexcept>
#include <string>

namespace phml {

// Input could not be parsed; message carries a line/field locus.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class EmptySequence : public std::runtime_error {
 public:
  explicit EmptySequence(const std::string& msg) : std::runtime_error(msg) {}
};

class NotConnected : public std::runtime_error {
 public:
  explicit NotConnected(const std::string& msg) : std::runtime_error(msg) {}
};

class NonPositiveWeight : public std::runtime_error {
 public:
  explicit NonPositiveWeight(const std::string& msg) : std::runtime_error(msg) {}
};

class MismatchedInputs : public std::runtime_error {
 public:
  explicit MismatchedInputs(const std::string& msg) : std::runtime_error(msg) {}
};

// A pair required by the injection construction is missing upstream.
// Reaching this means the reduction or matching code is broken.
class UnmatchedPair : public std::logic_error {
 public:
  explicit UnmatchedPair(const std::string& msg) : std::logic_error(msg) {}
};

// Brute-force oracle refused an input above its size bound.
class TooLarge : public std::runtime_error {
 public:
  explicit TooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace phml
