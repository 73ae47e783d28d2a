#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specmosaic {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimensions of two operands disagree, or a band count does not fit a pattern.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A patch origin, size or stride breaks the SFA phase.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// A window reaches outside its parent image.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Data violates a value invariant (non-finite samples, bad pattern, bad params).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A file is malformed: bad sidecar, wrong magic, truncated payload.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A PGM file uses a sample depth other than 16 bits.
class UnsupportedDepthError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Filesystem failure (missing file, unwritable directory).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input carries no usable signal for the requested metric.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Wraps a failure that happened while processing one record of a batch.
class RecordError : public Error {
 public:
  RecordError(std::size_t index, const std::string& what)
      : Error("record " + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace specmosaic
