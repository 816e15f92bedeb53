#pragma once

// Slow reference implementations used to check the library independently.

#include <cstdint>
#include <random>
#include <vector>

#include "stcode/galois.hpp"
#include "stcode/set_transform.hpp"

namespace oracle {

// Shift-and-add multiply in GF(2^w) modulo `poly`.
inline std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int w) {
  std::uint32_t acc = 0;
  const std::uint32_t top = 1u << w;
  while (b) {
    if (b & 1) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= poly;
  }
  return acc;
}

inline std::uint32_t gf_pow(std::uint32_t a, std::uint64_t e, std::uint32_t poly, int w) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = gf_mul(r, a, poly, w);
    a = gf_mul(a, a, poly, w);
    e >>= 1;
  }
  return r;
}

// a^(q-2) by Fermat.
inline std::uint32_t gf_inv(std::uint32_t a, std::uint32_t poly, int w) {
  return gf_pow(a, (std::uint64_t{1} << w) - 2, poly, w);
}

// Gaussian elimination with the shift-and-add multiply.
inline std::size_t rank(std::vector<std::vector<std::uint32_t>> m, std::uint32_t poly, int w) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const std::uint32_t iv = gf_inv(m[r][c], poly, w);
    for (auto& x : m[r]) x = gf_mul(x, iv, poly, w);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const std::uint32_t f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] ^= gf_mul(f, m[r][j], poly, w);
    }
    ++r;
  }
  return r;
}

// Direct coupling of a square alpha x alpha array: for i < j,
// x(i,j) = b(i,j) + b(j,i) and x(j,i) = theta*b(i,j) + b(j,i).
inline stcode::SymbolGrid couple_square(const stcode::SymbolGrid& b, const std::vector<std::uint32_t>& thetas,
                                        std::uint32_t poly, int w) {
  stcode::SymbolGrid x = b;
  std::size_t t = 0;
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = i + 1; j < b.rows(); ++j) {
      const std::uint32_t th = thetas[t++];
      x.at(i, j) = static_cast<stcode::Elem>(b.at(i, j) ^ b.at(j, i));
      x.at(j, i) = static_cast<stcode::Elem>(gf_mul(th, b.at(i, j), poly, w) ^ b.at(j, i));
    }
  }
  return x;
}

inline std::vector<stcode::Elem> random_symbols(std::mt19937_64& rng, std::size_t count, int w) {
  std::uniform_int_distribution<std::uint32_t> dist(0, (1u << w) - 1);
  std::vector<stcode::Elem> out(count);
  for (auto& x : out) x = static_cast<stcode::Elem>(dist(rng));
  return out;
}

}  // namespace oracle
