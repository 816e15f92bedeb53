#include "stcode/st_code.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "stcode/error.hpp"
#include "stcode/mds_verify.hpp"

namespace stcode {

const char* to_string(PartitionMode mode) { return mode == PartitionMode::KR ? "kr" : "n"; }

PartitionMode parse_partition_mode(const std::string& text) {
  if (text == "kr" || text == "KR") return PartitionMode::KR;
  if (text == "n" || text == "N") return PartitionMode::N;
  throw ParameterError("unknown partition mode '" + text + "' (expected kr or n)");
}

void CodeParams::validate() const {
  const std::string tag = "(n,k,alpha)=(" + std::to_string(n) + "," + std::to_string(k) + "," +
                          std::to_string(alpha) + "): ";
  if (k < 1 || n <= k) throw ParameterError(tag + "requires 1 <= k < n");
  if (alpha < 2 || alpha > r()) throw ParameterError(tag + "requires 2 <= alpha <= n-k");
  if (static_cast<std::uint32_t>(n) > field.order()) {
    throw ParameterError(tag + "n exceeds the field order 2^" + std::to_string(field.w));
  }
  if (mode == PartitionMode::KR && k < alpha) {
    throw ParameterError(tag + "kr partition requires k >= alpha");
  }
}

ColumnPartition column_partition(const CodeParams& params) {
  params.validate();
  ColumnPartition out;
  auto split = [&](int first, int width) {
    const int pieces = width / params.alpha;
    for (int p = 0; p < pieces; ++p) {
      const int w = (p + 1 < pieces) ? params.alpha : width - (pieces - 1) * params.alpha;
      out.push_back({first, w});
      first += w;
    }
  };
  if (params.mode == PartitionMode::KR) {
    split(0, params.k);
    split(params.k, params.r());
  } else {
    split(0, params.n);
  }
  return out;
}

CodeDescriptor::CodeDescriptor(CodeParams params, std::shared_ptr<const gf::Field> field,
                               std::vector<CouplingPlan> plans)
    : params_(std::move(params)),
      field_(std::move(field)),
      rs_(static_cast<std::size_t>(params_.n), static_cast<std::size_t>(params_.k), field_),
      partition_(column_partition(params_)),
      plans_(std::move(plans)) {
  if (field_->spec() != params_.field) throw ParameterError("field does not match code parameters");
  if (plans_.size() != partition_.size()) throw ParameterError("one coupling plan per sub-array required");
  for (std::size_t s = 0; s < partition_.size(); ++s) {
    const auto& g = plans_[s].geometry();
    if (g.alpha() != params_.alpha || g.beta() != partition_[s].width) {
      throw GeometryError("coupling plan geometry does not match the column partition");
    }
    for (int c = 0; c < partition_[s].width; ++c) locations_.push_back({s, c});
  }
}

NodeLocation CodeDescriptor::locate(int node) const {
  if (node < 0 || node >= params_.n) throw ParameterError("node index " + std::to_string(node) + " out of range");
  return locations_[node];
}

const CouplingGroup& CodeDescriptor::group_of(Cell global, std::size_t* member) const {
  const auto loc = locate(global.col);
  const auto slot = plans_[loc.subarray].slot({global.row, loc.local_col});
  if (member) *member = slot.member;
  return plans_[loc.subarray].groups()[slot.group];
}

std::vector<Cell> CodeDescriptor::global_members(Cell global) const {
  const auto loc = locate(global.col);
  const int offset = partition_[loc.subarray].first;
  std::vector<Cell> out = group_of(global).members;
  for (auto& c : out) c.col += offset;
  return out;
}

CodeDescriptor CodeDescriptor::with_forced_theta(std::size_t subarray, std::size_t group, Elem theta) const {
  CodeDescriptor copy = *this;
  copy.plans_.at(subarray) = plans_.at(subarray).with_theta_unchecked(group, theta);
  copy.verification_ = {};
  return copy;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

ThetaSource theta_stream(std::uint64_t seed, int attempt, const gf::Field& field) {
  auto engine = std::make_shared<std::mt19937_64>(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(attempt))));
  const std::uint64_t mask = field.order() - 1;
  return [engine, mask]() -> Elem {
    for (;;) {
      const auto v = (*engine)() & mask;
      if (v >= 2) return static_cast<Elem>(v);
    }
  };
}

CodeDescriptor build_code(const CodeParams& params, const BuildOptions& options) {
  params.validate();
  auto field = gf::Field::make(params.field);
  const ColumnPartition partition = column_partition(params);

  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const ThetaSource thetas = theta_stream(params.seed, attempt, *field);
    std::vector<CouplingPlan> plans;
    plans.reserve(partition.size());
    for (const auto& range : partition) plans.emplace_back(SubArrayGeometry(params.alpha, range.width), thetas);

    CodeDescriptor desc(params, field, std::move(plans));
    if (!options.verify) return desc;

    const MdsVerdict verdict = verify_mds(desc, options.exhaustive_limit);
    if (verdict.ok) {
      desc.set_verification({true, verdict.exhaustive, verdict.subsets_checked, attempt + 1});
      return desc;
    }
  }
  throw VerificationExhaustedError("no MDS coefficient choice found in " + std::to_string(options.max_attempts) +
                                   " attempts over GF(2^" + std::to_string(params.field.w) +
                                   "); the field is likely too small for these parameters");
}

SymbolGrid st_encode(const CodeDescriptor& desc, std::span<const Elem> data) {
  const int k = desc.k();
  const int alpha = desc.alpha();
  if (data.size() != std::size_t(k) * alpha) {
    throw ParameterError("st_encode expects " + std::to_string(k * alpha) + " data symbols, got " +
                         std::to_string(data.size()));
  }
  SymbolGrid grid(alpha, desc.n());
  for (int i = 0; i < alpha; ++i) {
    const auto row = desc.rs().encode(data.subspan(std::size_t(i) * k, k));
    for (int j = 0; j < desc.n(); ++j) grid.at(i, j) = row[j];
  }
  for (std::size_t s = 0; s < desc.plans().size(); ++s) {
    apply_transform_at(desc.field(), desc.plans()[s], grid, desc.partition()[s].first);
  }
  return grid;
}

std::vector<Elem> st_decode(const CodeDescriptor& desc, std::span<const NodeColumn> columns) {
  if (columns.size() < std::size_t(desc.k())) {
    throw DecodeError("st_decode needs " + std::to_string(desc.k()) + " node columns, got " +
                      std::to_string(columns.size()));
  }
  std::vector<int> nodes;
  std::vector<Elem> stored;
  for (std::size_t i = 0; i < std::size_t(desc.k()); ++i) {
    if (columns[i].symbols.size() != std::size_t(desc.alpha())) throw DecodeError("node column has wrong length");
    nodes.push_back(columns[i].node);
    stored.insert(stored.end(), columns[i].symbols.begin(), columns[i].symbols.end());
  }
  return Decoder(desc, std::move(nodes)).decode(stored);
}

Decoder::Decoder(const CodeDescriptor& desc, std::vector<int> nodes)
    : field_(desc.field_ptr()), nodes_(std::move(nodes)) {
  if (nodes_.size() != std::size_t(desc.k())) throw DecodeError("decoder needs exactly k nodes");
  std::vector<int> sorted = nodes_;
  std::ranges::sort(sorted);
  if (std::ranges::adjacent_find(sorted) != sorted.end()) throw DecodeError("decoder nodes must be distinct");
  for (int node : nodes_) desc.locate(node);
  inverse_ = gf::inverse(*field_, build_global_matrix(desc).restrict_to(nodes_));
}

std::vector<Elem> Decoder::decode(std::span<const Elem> stored) const {
  if (stored.size() != inverse_.cols()) throw DecodeError("stored symbol count mismatch");
  return gf::mul(*field_, inverse_, stored);
}

}  // namespace stcode
