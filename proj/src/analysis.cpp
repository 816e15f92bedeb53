#include "stcode/analysis.hpp"

#include <algorithm>
#include <limits>

#include "stcode/error.hpp"

namespace stcode {

namespace {

void check(int n, int k, int alpha) {
  if (k < 1 || n <= k || alpha < 1) throw ParameterError("bounds require 1 <= k < n and alpha >= 1");
}

std::string decimal(std::uint64_t num, std::uint64_t den, int decimals, bool round) {
  unsigned __int128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  unsigned __int128 scaled = static_cast<unsigned __int128>(num) * scale;
  unsigned __int128 q = scaled / den;
  if (round && (scaled % den) * 2 >= den) ++q;
  const auto whole = static_cast<std::uint64_t>(q / scale);
  auto frac = static_cast<std::uint64_t>(q % scale);
  std::string out = std::to_string(whole);
  if (decimals > 0) {
    std::string digits = std::to_string(frac);
    out += "." + std::string(decimals - digits.size(), '0') + digits;
  }
  return out;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

std::string Ratio::truncated(int decimals) const { return decimal(num, den, decimals, false); }
std::string Ratio::rounded(int decimals) const { return decimal(num, den, decimals, true); }
std::string Ratio::percent() const { return decimal(num * 100, den, 1, false) + "%"; }

int repair_lower_bound(int n, int k, int alpha) {
  check(n, k, alpha);
  const int blocks = n / alpha;
  const int rem = n % alpha;
  if (k <= blocks - 1 + rem) return k + alpha - 1;
  return 2 * k - blocks - rem + alpha;
}

std::uint64_t field_size_bound(int n, int k, int alpha) {
  check(n, k, alpha);
  const std::uint64_t all = binomial(n - 1, k - 1);
  const int cn = (n + alpha - 1) / alpha;
  const int ck = (k + alpha - 1) / alpha;
  const std::uint64_t aligned = binomial(cn - 1, ck - 1);
  if (all == std::numeric_limits<std::uint64_t>::max()) return all;
  return all - std::min(all, aligned);
}

Ratio cutset_ratio(int n, int k) {
  check(n, k, 1);
  return {static_cast<std::uint64_t>(n - 1), static_cast<std::uint64_t>(k) * (n - k)};
}

int elastic_node_lower_bound(int n, int k, int alpha) {
  check(n, k, alpha);
  return k + std::max(0, k - (n / alpha - 1)) + (alpha - 1);
}

std::vector<int> gap_nodes(int n, int k, int alpha) {
  check(n, k, alpha);
  const int blocks = n / alpha;
  const int rem = n % alpha;
  std::vector<int> out;
  for (int b = 0; b < blocks; ++b)
    for (int c = 0; c < alpha - rem; ++c) out.push_back(b * alpha + c);
  return out;
}

BoundsRow bounds_row(int n, int k, int alpha) {
  BoundsRow row;
  row.n = n;
  row.k = k;
  row.alpha = alpha;
  row.repair_bound = repair_lower_bound(n, k, alpha);
  row.field_bound = field_size_bound(n, k, alpha);
  row.cutset = cutset_ratio(n, k);
  row.elastic_bound = elastic_node_lower_bound(n, k, alpha);
  row.gap_nodes = gap_nodes(n, k, alpha);
  row.guaranteed_gap = n % alpha;
  return row;
}

int default_field_width(int n, int k, int alpha) {
  if (n <= 256 && field_size_bound(n, k, alpha) < 256) return 8;
  return 16;
}

}  // namespace stcode
