#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "stcode/galois.hpp"

namespace stcode {

using gf::Elem;

/// A symbol of a row codeword at a known position.
struct KnownSymbol {
  std::size_t position;
  Elem value;
};

/// Systematic (n, k) Reed-Solomon code over GF(2^w).
///
/// The generator is the k x n Vandermonde matrix on the evaluation points
/// 0, 1, g, g^2, ... (g the field's generator), row-reduced so that its
/// first k columns are the identity. Every k x k minor is invertible.
class RsCode {
 public:
  RsCode(std::size_t n, std::size_t k, std::shared_ptr<const gf::Field> field);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  const gf::Field& field() const { return *field_; }
  const std::shared_ptr<const gf::Field>& field_ptr() const { return field_; }
  const gf::Matrix& generator() const { return generator_; }

  /// data (k symbols) -> codeword (n symbols); first k symbols equal data.
  std::vector<Elem> encode(std::span<const Elem> data) const;

  /// Recovers the unique codeword agreeing with `known` (>= k distinct
  /// positions). Extra symbols are checked for consistency.
  std::vector<Elem> erasure_decode(std::span<const KnownSymbol> known) const;

 private:
  std::size_t n_;
  std::size_t k_;
  std::shared_ptr<const gf::Field> field_;
  gf::Matrix generator_;
};

}  // namespace stcode
