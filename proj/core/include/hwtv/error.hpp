#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwtv {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed image file. `offset()` is the byte position where parsing failed.
class FormatError : public Error {
 public:
  enum class Kind { MalformedHeader, TruncatedPayload, DimensionOverflow, InvalidSample };

  FormatError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

// ISNR is unbounded because the reconstruction equals the ground truth.
class InfiniteIsnr : public Error {
 public:
  InfiniteIsnr() : Error("reconstruction equals ground truth: ISNR is infinite") {}
};

// A solver iterate became non-finite.
class Divergence : public Error {
 public:
  explicit Divergence(int iteration)
      : Error("solver diverged at iteration " + std::to_string(iteration)),
        iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

}  // namespace hwtv
