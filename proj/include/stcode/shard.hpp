#pragma once

// Shard files: one per node, a fixed header followed by the node's column of
// every stripe.
//
// Header (big-endian integers), 31 bytes:
//   0  magic "STRS"      4
//   4  version (=1)      1
//   5  w                 1
//   6  n, k, alpha       1 each
//   9  partition mode    1   (0 = kr, 1 = n)
//  10  seed              8
//  18  node index        1
//  19  payload length    8   (original file length in bytes)
//  27  stripe size       4   (symbols per array cell per stripe)
//
// Payload: for each stripe, rows 0..alpha-1 of the node's column, each cell
// being stripe_size symbols of w/8 bytes (big-endian for w = 16).

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "stcode/analysis.hpp"
#include "stcode/st_code.hpp"

namespace stcode {

struct ShardHeader {
  static constexpr std::array<char, 4> kMagic{'S', 'T', 'R', 'S'};
  static constexpr std::uint8_t kVersion = 1;
  static constexpr std::size_t kSize = 31;

  std::uint8_t w = 8;
  std::uint8_t n = 0;
  std::uint8_t k = 0;
  std::uint8_t alpha = 0;
  PartitionMode mode = PartitionMode::KR;
  std::uint64_t seed = 0;
  std::uint8_t node_index = 0;
  std::uint64_t payload_length = 0;
  std::uint32_t stripe_size = 1;

  std::array<std::uint8_t, kSize> serialize() const;
  /// Throws FormatError on bad magic, version or parameters.
  static ShardHeader parse(std::span<const std::uint8_t> bytes);

  CodeParams params() const;
  /// Same code, payload length and stripe size (node index may differ).
  bool same_stripe_set(const ShardHeader& other) const;

  std::size_t symbol_bytes() const { return w / 8; }
  std::uint64_t stripe_count() const;
  /// Bytes of one node's column for one stripe.
  std::uint64_t column_bytes() const { return std::uint64_t(alpha) * stripe_size * symbol_bytes(); }

  friend bool operator==(const ShardHeader&, const ShardHeader&) = default;
};

std::string shard_file_name(int node);

struct EncodeOptions {
  CodeParams params;
  std::uint32_t stripe_size = 1;
};

/// Writes n shard files for `input` into `out_dir`. Returns the shard paths.
std::vector<std::filesystem::path> encode_file(const std::filesystem::path& input, const std::filesystem::path& out_dir,
                                               const EncodeOptions& options);

/// Rebuilds the original file from any k shards found in `dir`.
void decode_dir(const std::filesystem::path& dir, const std::filesystem::path& output);

struct RepairReport {
  int node = 0;
  CodeParams params;
  std::uint64_t stripes = 0;
  std::uint32_t stripe_size = 1;
  /// Planned downloads per stripe element (one symbol per cell).
  std::size_t symbols_per_stripe = 0;
  std::size_t s1 = 0;
  std::size_t s2 = 0;
  std::size_t s3 = 0;
  /// Symbols actually read from helper shards.
  std::uint64_t symbols_read = 0;
  Ratio ratio;
  int lower_bound = 0;
};

/// Regenerates shard `node` in `dir` reading only the planned coordinates of
/// the other shards.
RepairReport repair_dir(const std::filesystem::path& dir, int node);

}  // namespace stcode
