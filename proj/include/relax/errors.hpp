#pragma once

#include <stdexcept>
#include <string>

namespace relax {

// Malformed input content (bad magic, wrong shape, out-of-range value...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file that does not follow its container layout. The message names the byte offset.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// No saliency falls on retinal layers 1..7, so the attribution ratio is undefined.
class DegenerateExplanation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Opening, reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace relax
