#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solhom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Hypothesis violations on the input number c.
class BoundaryRoot : public Error {
 public:
  using Error::Error;
};

class ZeroInput : public Error {
 public:
  using Error::Error;
};

/// A rational prime divides [O_K : Z[theta]] and local data would be needed.
class IndexObstruction : public Error {
 public:
  using Error::Error;
};

/// Input that lies outside what the library can certify (reducibility, generator checks, search bounds).
class Unsupported : public Error {
 public:
  using Error::Error;
};

class NotContained : public Error {
 public:
  using Error::Error;
};

class DegenerateFix : public Error {
 public:
  using Error::Error;
};

class HypothesisN1 : public Error {
 public:
  using Error::Error;
};

class NonCommuting : public Error {
 public:
  using Error::Error;
};

class AtomClassExceeded : public Error {
 public:
  using Error::Error;
};

/// A runtime integrality or consistency check on an intermediate result failed.
class FlatteningFailure : public Error {
 public:
  using Error::Error;
};

/// A vector that does not lie in the group it was offered to.
class NotAnElement : public Error {
 public:
  using Error::Error;
};

class InternalCheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace solhom
