#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stcode {

/// Invalid code parameters, array geometry or coefficient choice.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GeometryError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// A coupling coefficient outside F_q \ {0, 1}.
class ThetaDomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class ZeroInverseError : public std::domain_error {
 public:
  ZeroInverseError() : std::domain_error("inverse of zero in GF(2^w)") {}
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(std::size_t rank, std::size_t order)
      : std::runtime_error("singular matrix: rank " + std::to_string(rank) +
                           " < " + std::to_string(order)),
        rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

/// Erasure decoding failed: too few symbols, or symbols that disagree.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No coefficient draw produced a verified MDS code within the retry budget.
class VerificationExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Repair asked the symbol source for a coordinate it cannot serve.
class MissingSymbolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mismatched shard files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stcode
