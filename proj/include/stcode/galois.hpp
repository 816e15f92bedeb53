#pragma once

// GF(2^w) arithmetic for w in {8, 16} and dense linear algebra over it.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "stcode/error.hpp"

namespace stcode::gf {

/// A field element. Values are < 2^w for the owning field.
using Elem = std::uint16_t;

struct FieldSpec {
  int w = 8;
  std::uint32_t modulus = 0x11D;

  static FieldSpec standard(int w);

  std::uint32_t order() const { return std::uint32_t{1} << w; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Carry-less multiply reduced modulo `modulus`. Slow; used to build tables.
std::uint32_t poly_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int w);

/// True iff `poly` (degree exactly w) has no factor of degree 1..w/2.
bool is_irreducible(std::uint32_t poly, int w);

class Field {
 public:
  /// Validates the spec (w in {8,16}, irreducible modulus of degree w).
  explicit Field(FieldSpec spec);

  /// Shared instance for the default modulus of width `w`.
  static std::shared_ptr<const Field> standard(int w);
  static std::shared_ptr<const Field> make(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  int w() const { return spec_.w; }
  std::uint32_t order() const { return spec_.order(); }
  Elem max_value() const { return static_cast<Elem>(order() - 1); }
  /// Generator of the multiplicative group used for the log tables.
  Elem generator() const { return generator_; }

  static Elem add(Elem a, Elem b) { return a ^ b; }
  static Elem sub(Elem a, Elem b) { return a ^ b; }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw ZeroInverseError();
    return exp_[(order() - 1) - log_[a]];
  }
  Elem div(Elem a, Elem b) const {
    if (b == 0) throw ZeroInverseError();
    if (a == 0) return 0;
    return exp_[log_[a] + (order() - 1) - log_[b]];
  }
  /// generator^e, e taken modulo q-1.
  Elem pow_gen(std::uint64_t e) const { return exp_[e % (order() - 1)]; }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Raw tables for tight loops. log(0) is unspecified; exp has 2(q-1) entries.
  std::span<const std::uint32_t> log_table() const { return log_; }
  std::span<const Elem> exp_table() const { return exp_; }

 private:
  FieldSpec spec_;
  Elem generator_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

/// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data);

  static Matrix identity(std::size_t order);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> data() const { return data_; }

  /// Rows picked in the given order.
  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix select_cols(std::span<const std::size_t> cols) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

std::vector<Elem> mul(const Field& f, const Matrix& m, std::span<const Elem> x);
/// Row vector times matrix: x^T * m.
std::vector<Elem> mul_left(const Field& f, std::span<const Elem> x, const Matrix& m);
Matrix mul(const Field& f, const Matrix& a, const Matrix& b);

/// Solves m * x = rhs for square m. Gaussian elimination, first nonzero pivot
/// in column order. Throws SingularMatrixError carrying the rank.
std::vector<Elem> solve(const Field& f, const Matrix& m, std::span<const Elem> rhs);

Matrix inverse(const Field& f, const Matrix& m);

std::size_t rank(const Field& f, Matrix m);

/// Rank of a row-major rows x cols block, destroying its contents.
std::size_t rank_in_place(const Field& f, std::span<Elem> data, std::size_t rows, std::size_t cols);

}  // namespace stcode::gf
