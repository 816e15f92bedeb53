#include "stcode/rs_base.hpp"

#include <algorithm>
#include <string>

namespace stcode {

RsCode::RsCode(std::size_t n, std::size_t k, std::shared_ptr<const gf::Field> field)
    : n_(n), k_(k), field_(std::move(field)) {
  if (!field_) throw ParameterError("RsCode requires a field");
  if (k < 1 || k >= n) throw ParameterError("RsCode requires 1 <= k < n");
  if (n > field_->order()) {
    throw ParameterError("n = " + std::to_string(n) + " exceeds the field order " +
                         std::to_string(field_->order()));
  }
  const gf::Field& f = *field_;

  // Column j evaluates the monomials 1, x, ..., x^(k-1) at point x_j.
  gf::Matrix vandermonde(k, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Elem point = (j == 0) ? Elem{0} : f.pow_gen(j - 1);
    Elem power = 1;
    for (std::size_t i = 0; i < k; ++i) {
      vandermonde(i, j) = power;
      power = f.mul(power, point);
    }
  }
  std::vector<std::size_t> head(k);
  for (std::size_t i = 0; i < k; ++i) head[i] = i;
  const gf::Matrix head_inv = gf::inverse(f, vandermonde.select_cols(head));
  generator_ = gf::mul(f, head_inv, vandermonde);
}

std::vector<Elem> RsCode::encode(std::span<const Elem> data) const {
  if (data.size() != k_) {
    throw ParameterError("rs encode expects " + std::to_string(k_) + " symbols, got " +
                         std::to_string(data.size()));
  }
  return gf::mul_left(*field_, data, generator_);
}

std::vector<Elem> RsCode::erasure_decode(std::span<const KnownSymbol> known) const {
  std::vector<bool> seen(n_, false);
  std::vector<std::size_t> positions;
  std::vector<Elem> values;
  for (const auto& s : known) {
    if (s.position >= n_) throw DecodeError("symbol position out of range");
    if (seen[s.position]) continue;
    seen[s.position] = true;
    if (positions.size() < k_) {
      positions.push_back(s.position);
      values.push_back(s.value);
    }
  }
  if (positions.size() < k_) {
    throw DecodeError("insufficient symbols: need " + std::to_string(k_) + ", have " +
                      std::to_string(positions.size()));
  }

  // codeword_j = sum_i data_i * G(i, j)  =>  G_S^T * data = values.
  const gf::Matrix system = generator_.select_cols(positions).transpose();
  const std::vector<Elem> data = gf::solve(*field_, system, values);
  std::vector<Elem> codeword = encode(data);
  for (const auto& s : known) {
    if (codeword[s.position] != s.value) throw DecodeError("inconsistent symbols");
  }
  return codeword;
}

}  // namespace stcode
