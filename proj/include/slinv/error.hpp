#pragma once

#include <stdexcept>
#include <string>

namespace slinv {

// Argument outside the domain of a potential or boundary function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite values during shooting; usually the step is too coarse for |λ| or |q|.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The counting point sits on an eigenvalue, so the count below it is not well defined.
class AmbiguousCountError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data that contradicts the structure of the forward problem
// (e.g. non-interlaced spectra, invalid fixed-index dataset).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files or schema violations.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slinv
