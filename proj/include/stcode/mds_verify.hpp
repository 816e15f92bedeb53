#pragma once

#include <cstdint>
#include <vector>

#include "stcode/analysis.hpp"
#include "stcode/galois.hpp"
#include "stcode/st_code.hpp"

namespace stcode {

/// Linear map from the k*alpha data symbols to the n*alpha stored symbols.
/// Row node*alpha + row holds the coefficients of x(row, node).
struct GlobalMap {
  int n = 0;
  int k = 0;
  int alpha = 0;
  gf::Matrix matrix;

  std::size_t row_index(int node, int row) const { return std::size_t(node) * alpha + row; }
  /// The k*alpha x k*alpha restriction to the given nodes.
  gf::Matrix restrict_to(std::span<const int> nodes) const;
};

/// Composes the RS generator with each sub-array's couplings symbolically.
GlobalMap build_global_matrix(const CodeDescriptor& desc);

struct MdsVerdict {
  bool ok = true;
  bool exhaustive = true;
  std::uint64_t subsets_checked = 0;
  /// Lexicographically first failing subset (exhaustive mode) or first failing
  /// sample; empty when ok.
  std::vector<int> failing_subset;
  std::size_t failing_rank = 0;
};

/// Checks every k-node subset when C(n,k) <= exhaustive_limit, otherwise
/// exhaustive_limit uniformly sampled subsets.
MdsVerdict verify_mds(const CodeDescriptor& desc, std::uint64_t exhaustive_limit = 1'000'000);

}  // namespace stcode
