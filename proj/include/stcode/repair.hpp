#pragma once

// Single-node repair of ST-RS codes.
//
// The failed node t sits in the diagonal set R'(s,s) of its sub-array for
// exactly one row s (the major row). Repair downloads
//   S1: k row-s symbols, cheapest to decouple first,
//   S2: the coupling partners needed to recover S1's original values,
//   S3: the partners needed to rebuild each failed symbol from row s,
// RS-decodes row s, then solves each failed symbol's coupling group.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "stcode/analysis.hpp"
#include "stcode/st_code.hpp"

namespace stcode {

struct RepairPlan {
  int failed_node = 0;
  int major_row = 0;
  std::vector<Cell> s1;
  std::vector<Cell> s2;
  std::vector<Cell> s3;
  /// |S1| + per-S1-symbol partner counts + |S3|, before deduplication.
  std::size_t raw_downloads = 0;

  std::size_t total() const { return s1.size() + s2.size() + s3.size(); }
  /// S1, S2 and S3 merged and sorted.
  std::vector<Cell> downloads() const;
};

/// Row s with x(s, node) in the diagonal set R'(s,s) of the node's sub-array.
int major_row(const CodeDescriptor& desc, int node);

RepairPlan plan_repair(const CodeDescriptor& desc, int node);

/// Where repair reads stored symbols from.
class SymbolSource {
 public:
  virtual ~SymbolSource() = default;
  virtual Elem fetch(Cell cell) = 0;
};

/// Serves a full codeword array except one erased column.
class GridSource final : public SymbolSource {
 public:
  GridSource(const SymbolGrid& grid, int erased_node) : grid_(grid), erased_(erased_node) {}
  Elem fetch(Cell cell) override;

 private:
  const SymbolGrid& grid_;
  int erased_;
};

/// Records every coordinate fetched through it.
class TrackingSource final : public SymbolSource {
 public:
  explicit TrackingSource(SymbolSource& inner) : inner_(inner) {}
  Elem fetch(Cell cell) override;

  const std::vector<Cell>& accessed() const { return accessed_; }
  std::size_t count() const { return accessed_.size(); }

 private:
  SymbolSource& inner_;
  std::vector<Cell> accessed_;
};

/// Fetches every planned coordinate exactly once and returns the alpha
/// symbols of the failed column.
std::vector<Elem> execute_repair(const CodeDescriptor& desc, const RepairPlan& plan, SymbolSource& source);

struct BandwidthReport {
  CodeParams params;
  /// Deduplicated downloads per node.
  std::vector<std::size_t> counts;
  std::vector<std::size_t> raw_counts;

  std::uint64_t total() const;
  /// Sum of counts over n * k * alpha.
  Ratio average_ratio() const;
  Ratio raw_average_ratio() const;
  Ratio node_ratio(int node) const;
};

BandwidthReport measure_bandwidth(const CodeDescriptor& desc);

}  // namespace stcode
