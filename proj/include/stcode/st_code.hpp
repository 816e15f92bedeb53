#pragma once

// Set-transformed Reed-Solomon array codes ST-RS(n, k, alpha).
//
// alpha rows of an (n, k) systematic RS code are stacked into an alpha x n
// array, the columns are partitioned into sub-arrays of width in
// [alpha, 2*alpha), and each sub-array is set-transformed. Node j stores
// column j.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stcode/galois.hpp"
#include "stcode/rs_base.hpp"
#include "stcode/set_transform.hpp"

namespace stcode {

enum class PartitionMode : std::uint8_t {
  /// Data columns and parity columns are partitioned separately.
  KR = 0,
  /// All n columns are partitioned uniformly.
  N = 1,
};

const char* to_string(PartitionMode mode);
PartitionMode parse_partition_mode(const std::string& text);

struct CodeParams {
  int n = 0;
  int k = 0;
  int alpha = 0;
  gf::FieldSpec field = gf::FieldSpec::standard(8);
  PartitionMode mode = PartitionMode::KR;
  std::uint64_t seed = 0;

  int r() const { return n - k; }
  /// Throws ParameterError unless 2 <= alpha <= r, k >= 1, n <= q and the
  /// partition mode has at least one piece per part.
  void validate() const;

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

struct ColumnRange {
  int first = 0;
  int width = 0;
  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

using ColumnPartition = std::vector<ColumnRange>;

ColumnPartition column_partition(const CodeParams& params);

/// Where a node's column sits inside the partition.
struct NodeLocation {
  std::size_t subarray;
  int local_col;
};

struct VerificationSummary {
  bool run = false;
  bool exhaustive = false;
  std::uint64_t subsets_checked = 0;
  int attempts = 0;
};

/// Immutable description of one built code.
class CodeDescriptor {
 public:
  CodeDescriptor(CodeParams params, std::shared_ptr<const gf::Field> field, std::vector<CouplingPlan> plans);

  const CodeParams& params() const { return params_; }
  int n() const { return params_.n; }
  int k() const { return params_.k; }
  int alpha() const { return params_.alpha; }
  const gf::Field& field() const { return *field_; }
  const std::shared_ptr<const gf::Field>& field_ptr() const { return field_; }
  const RsCode& rs() const { return rs_; }
  const ColumnPartition& partition() const { return partition_; }
  const std::vector<CouplingPlan>& plans() const { return plans_; }

  NodeLocation locate(int node) const;
  const CouplingPlan& plan_for(int node) const { return plans_[locate(node).subarray]; }
  /// Group containing the global cell and the member index of the cell.
  const CouplingGroup& group_of(Cell global, std::size_t* member = nullptr) const;
  /// Members of a group, translated to global columns.
  std::vector<Cell> global_members(Cell global) const;

  bool verified() const { return verification_.run && verification_.exhaustive; }
  const VerificationSummary& verification() const { return verification_; }
  void set_verification(VerificationSummary v) { verification_ = v; }

  /// Copy with one coupling coefficient overwritten (no validation).
  /// Test hook; the result is marked unverified.
  CodeDescriptor with_forced_theta(std::size_t subarray, std::size_t group, Elem theta) const;

 private:
  CodeParams params_;
  std::shared_ptr<const gf::Field> field_;
  RsCode rs_;
  ColumnPartition partition_;
  std::vector<CouplingPlan> plans_;
  std::vector<NodeLocation> locations_;
  VerificationSummary verification_;
};

struct BuildOptions {
  int max_attempts = 32;
  std::uint64_t exhaustive_limit = 1'000'000;
  /// Skips MDS verification entirely (descriptor reports run = false).
  bool verify = true;
};

/// Draws coupling coefficients from the seeded stream and verifies the MDS
/// property, redrawing with the next attempt index on failure. Throws
/// VerificationExhaustedError after max_attempts failures.
CodeDescriptor build_code(const CodeParams& params, const BuildOptions& options = {});

/// Deterministic coefficient stream for (seed, attempt): values in [2, q).
ThetaSource theta_stream(std::uint64_t seed, int attempt, const gf::Field& field);

/// data holds k*alpha symbols, row-major over (row, data column).
SymbolGrid st_encode(const CodeDescriptor& desc, std::span<const Elem> data);

struct NodeColumn {
  int node;
  std::vector<Elem> symbols;
};

/// Recovers the k*alpha data symbols from any k node columns.
std::vector<Elem> st_decode(const CodeDescriptor& desc, std::span<const NodeColumn> columns);

/// Decoder for a fixed set of k nodes; precomputes the inverse system once.
class Decoder {
 public:
  Decoder(const CodeDescriptor& desc, std::vector<int> nodes);

  const std::vector<int>& nodes() const { return nodes_; }
  /// `stored` holds alpha symbols per node, nodes in the order given at
  /// construction.
  std::vector<Elem> decode(std::span<const Elem> stored) const;

 private:
  std::shared_ptr<const gf::Field> field_;
  std::vector<int> nodes_;
  gf::Matrix inverse_;
};

}  // namespace stcode
