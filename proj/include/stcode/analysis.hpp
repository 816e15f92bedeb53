#pragma once

// Closed-form repair and field-size bounds for ST-RS(n, k, alpha) codes and
// the elastic-transformed (ET-RS) comparison quantities.

#include <cstdint>
#include <string>
#include <vector>

namespace stcode {

/// Exact non-negative fraction.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// Decimal rendering cut (not rounded) after `decimals` digits, "0.428".
  std::string truncated(int decimals = 3) const;
  /// Decimal rendering rounded half-up, "0.567".
  std::string rounded(int decimals = 3) const;
  /// Percent with one decimal, truncated: "42.8%".
  std::string percent() const;
  std::string fraction() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
  }
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Lower bound on single-node repair downloads under the uniform (mode N)
/// partition: k + alpha - 1 when k <= floor(n/alpha) - 1 + n mod alpha,
/// otherwise 2k - floor(n/alpha) - n mod alpha + alpha.
int repair_lower_bound(int n, int k, int alpha);

/// Field size above which coupling coefficients making the code MDS exist:
/// C(n-1, k-1) - C(ceil(n/alpha) - 1, ceil(k/alpha) - 1). Saturates.
std::uint64_t field_size_bound(int n, int k, int alpha);

/// Cut-set (MSR) bound on the repair ratio: (n-1) / (k(n-k)).
Ratio cutset_ratio(int n, int k);

/// Per-node repair lower bound of an ET-RS(n,k,alpha) code for the first
/// n - 2(n mod alpha) nodes: k + max(0, k - (floor(n/alpha) - 1)) + alpha - 1.
int elastic_node_lower_bound(int n, int k, int alpha);

/// The (alpha - n mod alpha) * floor(n/alpha) nodes (0-based, uniform
/// partition) whose repair undercuts the ET-RS bound by at least n mod alpha:
/// the first alpha - n mod alpha local columns of every transformed array.
std::vector<int> gap_nodes(int n, int k, int alpha);

struct BoundsRow {
  int n = 0;
  int k = 0;
  int alpha = 0;
  int repair_bound = 0;
  std::uint64_t field_bound = 0;
  Ratio cutset;
  int elastic_bound = 0;
  std::vector<int> gap_nodes;
  int guaranteed_gap = 0;
};

BoundsRow bounds_row(int n, int k, int alpha);

/// Smallest supported width (8 or 16) whose field exceeds field_size_bound
/// and holds n evaluation points; 16 when neither does.
int default_field_width(int n, int k, int alpha);

}  // namespace stcode
