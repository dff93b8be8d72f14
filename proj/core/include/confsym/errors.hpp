#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace confsym {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the expression parser. Carries the byte offset of the offending
/// token and the set of tokens that would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position,
             std::vector<std::string> expected = {});

  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
  std::vector<std::string> expected_;
};

class CyclicSubstitution : public Error {
 public:
  using Error::Error;
};

class MissingBinding : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation outside the supported symbolic fragment (e.g. a non-integer
/// power of a sum).
class Unsupported : public Error {
 public:
  using Error::Error;
};

class UnknownCase : public Error {
 public:
  using Error::Error;
};

class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class ClosureFailure : public Error {
 public:
  using Error::Error;
};

class NotAWeightVector : public Error {
 public:
  using Error::Error;
};

class FixtureViolation : public Error {
 public:
  using Error::Error;
};

class NonzeroResidual : public Error {
 public:
  using Error::Error;
};

class NotMonomial : public Error {
 public:
  using Error::Error;
};

class IncompatibleSystem : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class FlowLeftDomain : public Error {
 public:
  using Error::Error;
};

class NoDecay : public Error {
 public:
  using Error::Error;
};

}  // namespace confsym
