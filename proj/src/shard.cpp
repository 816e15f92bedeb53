#include "stcode/shard.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <system_error>

#include "stcode/error.hpp"
#include "stcode/repair.hpp"

namespace stcode {

namespace fs = std::filesystem;

namespace {

void put_be(std::uint8_t* dst, std::uint64_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) {
    dst[i] = static_cast<std::uint8_t>(v & 0xFF);
    v >>= 8;
  }
}

std::uint64_t get_be(const std::uint8_t* src, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v = (v << 8) | src[i];
  return v;
}

Elem read_symbol(const std::uint8_t* p, std::size_t bytes) {
  return bytes == 1 ? Elem{p[0]} : static_cast<Elem>((p[0] << 8) | p[1]);
}

void write_symbol(std::uint8_t* p, Elem v, std::size_t bytes) {
  if (bytes == 1) {
    p[0] = static_cast<std::uint8_t>(v);
  } else {
    p[0] = static_cast<std::uint8_t>(v >> 8);
    p[1] = static_cast<std::uint8_t>(v & 0xFF);
  }
}

std::vector<std::uint8_t> read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes to a sibling temporary and renames over the destination.
void write_atomic(const fs::path& path, std::span<const std::uint8_t> head, std::span<const std::uint8_t> body) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(head.data()), static_cast<std::streamsize>(head.size()));
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (!out) throw std::system_error(errno, std::generic_category(), "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

class FileHandle {
 public:
  explicit FileHandle(const fs::path& path) : fd_(::open(path.c_str(), O_RDONLY)) {
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  }
  FileHandle(const FileHandle&) = delete;
  FileHandle& operator=(const FileHandle&) = delete;
  ~FileHandle() { ::close(fd_); }

  void read_at(std::uint64_t offset, std::span<std::uint8_t> out) const {
    const auto got = ::pread(fd_, out.data(), out.size(), static_cast<off_t>(offset));
    if (got != static_cast<ssize_t>(out.size())) throw FormatError("shard truncated");
  }

 private:
  int fd_;
};

struct ShardSet {
  ShardHeader header;
  std::map<int, fs::path> paths;
};

ShardSet scan_shards(const fs::path& dir) {
  ShardSet set;
  std::optional<ShardHeader> ref;
  if (!fs::is_directory(dir)) throw FormatError("not a directory: " + dir.string());
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (!entry.is_regular_file() || !name.starts_with("shard_") || !name.ends_with(".strs")) continue;
    std::array<std::uint8_t, ShardHeader::kSize> raw{};
    std::ifstream in(entry.path(), std::ios::binary);
    in.read(reinterpret_cast<char*>(raw.data()), raw.size());
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw FormatError("short shard header: " + name);
    const ShardHeader h = ShardHeader::parse(raw);
    if (ref && !ref->same_stripe_set(h)) throw FormatError("header mismatch across shards: " + name);
    if (!ref) ref = h;
    if (set.paths.contains(h.node_index)) throw FormatError("duplicate shard for node " + std::to_string(h.node_index));
    const auto expected = ShardHeader::kSize + h.stripe_count() * h.column_bytes();
    if (fs::file_size(entry.path()) != expected) throw FormatError("shard payload has wrong length: " + name);
    set.paths.emplace(h.node_index, entry.path());
  }
  if (!ref) throw FormatError("no shards found in " + dir.string());
  set.header = *ref;
  return set;
}

CodeDescriptor descriptor_for(const ShardHeader& h) { return build_code(h.params()); }

}  // namespace

std::array<std::uint8_t, ShardHeader::kSize> ShardHeader::serialize() const {
  std::array<std::uint8_t, kSize> out{};
  std::memcpy(out.data(), kMagic.data(), kMagic.size());
  out[4] = kVersion;
  out[5] = w;
  out[6] = n;
  out[7] = k;
  out[8] = alpha;
  out[9] = static_cast<std::uint8_t>(mode);
  put_be(out.data() + 10, seed, 8);
  out[18] = node_index;
  put_be(out.data() + 19, payload_length, 8);
  put_be(out.data() + 27, stripe_size, 4);
  return out;
}

ShardHeader ShardHeader::parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSize) throw FormatError("shard header too short");
  if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) throw FormatError("bad shard magic");
  if (bytes[4] != kVersion) throw FormatError("unsupported shard version " + std::to_string(bytes[4]));
  if (bytes[9] > 1) throw FormatError("bad partition mode byte");
  ShardHeader h;
  h.w = bytes[5];
  h.n = bytes[6];
  h.k = bytes[7];
  h.alpha = bytes[8];
  h.mode = static_cast<PartitionMode>(bytes[9]);
  h.seed = get_be(bytes.data() + 10, 8);
  h.node_index = bytes[18];
  h.payload_length = get_be(bytes.data() + 19, 8);
  h.stripe_size = static_cast<std::uint32_t>(get_be(bytes.data() + 27, 4));
  if (h.w != 8 && h.w != 16) throw FormatError("bad symbol width " + std::to_string(h.w));
  if (h.stripe_size == 0) throw FormatError("stripe size must be positive");
  try {
    h.params().validate();
  } catch (const ParameterError& e) {
    throw FormatError(std::string("bad code parameters in shard header: ") + e.what());
  }
  if (h.node_index >= h.n) throw FormatError("node index out of range");
  return h;
}

CodeParams ShardHeader::params() const {
  return {n, k, alpha, gf::FieldSpec::standard(w), mode, seed};
}

bool ShardHeader::same_stripe_set(const ShardHeader& o) const {
  return w == o.w && n == o.n && k == o.k && alpha == o.alpha && mode == o.mode && seed == o.seed &&
         payload_length == o.payload_length && stripe_size == o.stripe_size;
}

std::uint64_t ShardHeader::stripe_count() const {
  const std::uint64_t symbols = (payload_length + symbol_bytes() - 1) / symbol_bytes();
  const std::uint64_t per_stripe = std::uint64_t(k) * alpha * stripe_size;
  return (symbols + per_stripe - 1) / per_stripe;
}

std::string shard_file_name(int node) {
  std::string digits = std::to_string(node);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return "shard_" + digits + ".strs";
}

std::vector<fs::path> encode_file(const fs::path& input, const fs::path& out_dir, const EncodeOptions& options) {
  const CodeParams& p = options.params;
  p.validate();
  if (p.n > 255) throw ParameterError("shard format supports at most 255 nodes");
  if (options.stripe_size == 0) throw ParameterError("stripe size must be positive");
  const CodeDescriptor desc = build_code(p);

  ShardHeader header;
  header.w = static_cast<std::uint8_t>(p.field.w);
  header.n = static_cast<std::uint8_t>(p.n);
  header.k = static_cast<std::uint8_t>(p.k);
  header.alpha = static_cast<std::uint8_t>(p.alpha);
  header.mode = p.mode;
  header.seed = p.seed;
  header.stripe_size = options.stripe_size;

  const std::vector<std::uint8_t> bytes = read_all(input);
  header.payload_length = bytes.size();
  const std::size_t bps = header.symbol_bytes();
  const std::uint64_t stripes = header.stripe_count();
  const std::size_t L = options.stripe_size;
  const std::size_t ka = std::size_t(p.k) * p.alpha;

  std::vector<std::vector<std::uint8_t>> payload(p.n, std::vector<std::uint8_t>(stripes * header.column_bytes()));
  std::vector<Elem> data(ka);
  for (std::uint64_t s = 0; s < stripes; ++s) {
    for (std::size_t l = 0; l < L; ++l) {
      for (std::size_t d = 0; d < ka; ++d) {
        const std::uint64_t offset = ((s * ka + d) * L + l) * bps;
        std::uint8_t sym[2] = {0, 0};
        for (std::size_t b = 0; b < std::min<std::size_t>(bps, 2); ++b)
          if (offset + b < bytes.size()) sym[b] = bytes[offset + b];
        data[d] = read_symbol(sym, bps);
      }
      const SymbolGrid grid = st_encode(desc, data);
      for (int j = 0; j < p.n; ++j)
        for (int i = 0; i < p.alpha; ++i)
          write_symbol(&payload[j][((s * p.alpha + i) * L + l) * bps], grid.at(i, j), bps);
    }
  }

  fs::create_directories(out_dir);
  std::vector<fs::path> paths;
  for (int j = 0; j < p.n; ++j) {
    header.node_index = static_cast<std::uint8_t>(j);
    const auto head = header.serialize();
    paths.push_back(out_dir / shard_file_name(j));
    write_atomic(paths.back(), head, payload[j]);
  }
  return paths;
}

void decode_dir(const fs::path& dir, const fs::path& output) {
  const ShardSet set = scan_shards(dir);
  const ShardHeader& h = set.header;
  if (set.paths.size() < h.k) {
    throw FormatError("insufficient shards: need " + std::to_string(h.k) + ", found " +
                      std::to_string(set.paths.size()));
  }
  const CodeDescriptor desc = descriptor_for(h);
  std::vector<int> nodes;
  std::vector<std::vector<std::uint8_t>> columns;
  for (const auto& [node, path] : set.paths) {
    if (nodes.size() == h.k) break;
    nodes.push_back(node);
    columns.push_back(read_all(path));
  }
  const Decoder decoder(desc, nodes);

  const std::size_t bps = h.symbol_bytes();
  const std::size_t L = h.stripe_size;
  const std::size_t ka = std::size_t(h.k) * h.alpha;
  const std::uint64_t stripes = h.stripe_count();
  std::vector<std::uint8_t> out(stripes * ka * L * bps);
  std::vector<Elem> stored(ka);
  for (std::uint64_t s = 0; s < stripes; ++s) {
    for (std::size_t l = 0; l < L; ++l) {
      for (std::size_t c = 0; c < nodes.size(); ++c)
        for (int i = 0; i < h.alpha; ++i)
          stored[c * h.alpha + i] =
              read_symbol(&columns[c][ShardHeader::kSize + ((s * h.alpha + i) * L + l) * bps], bps);
      const auto data = decoder.decode(stored);
      for (std::size_t d = 0; d < ka; ++d) write_symbol(&out[((s * ka + d) * L + l) * bps], data[d], bps);
    }
  }
  out.resize(h.payload_length);
  write_atomic(output, {}, out);
}

namespace {

class ShardFileSource final : public SymbolSource {
 public:
  ShardFileSource(const ShardHeader& h, const std::map<int, fs::path>& paths, const std::vector<int>& nodes)
      : header_(h) {
    for (int node : nodes) {
      const auto it = paths.find(node);
      if (it == paths.end()) throw FormatError("insufficient shards: helper node " + std::to_string(node) + " missing");
      files_.emplace(node, std::make_unique<FileHandle>(it->second));
    }
  }

  void position(std::uint64_t stripe, std::size_t element) {
    stripe_ = stripe;
    element_ = element;
  }

  Elem fetch(Cell cell) override {
    const auto it = files_.find(cell.col);
    if (it == files_.end()) throw MissingSymbolError("node " + std::to_string(cell.col) + " not opened for repair");
    const std::size_t bps = header_.symbol_bytes();
    const std::uint64_t offset =
        ShardHeader::kSize + ((stripe_ * header_.alpha + cell.row) * header_.stripe_size + element_) * bps;
    std::uint8_t buf[2] = {0, 0};
    it->second->read_at(offset, {buf, bps});
    return read_symbol(buf, bps);
  }

 private:
  ShardHeader header_;
  std::map<int, std::unique_ptr<FileHandle>> files_;
  std::uint64_t stripe_ = 0;
  std::size_t element_ = 0;
};

}  // namespace

RepairReport repair_dir(const fs::path& dir, int node) {
  ShardSet set = scan_shards(dir);
  ShardHeader h = set.header;
  if (node < 0 || node >= h.n) throw ParameterError("node index out of range");
  set.paths.erase(node);

  const CodeDescriptor desc = descriptor_for(h);
  const RepairPlan plan = plan_repair(desc, node);
  std::vector<int> helpers;
  for (const Cell c : plan.downloads()) helpers.push_back(c.col);
  std::ranges::sort(helpers);
  helpers.erase(std::unique(helpers.begin(), helpers.end()), helpers.end());

  ShardFileSource files(h, set.paths, helpers);
  TrackingSource tracked(files);
  const std::size_t bps = h.symbol_bytes();
  const std::size_t L = h.stripe_size;
  const std::uint64_t stripes = h.stripe_count();
  std::vector<std::uint8_t> payload(stripes * h.column_bytes());
  for (std::uint64_t s = 0; s < stripes; ++s) {
    for (std::size_t l = 0; l < L; ++l) {
      files.position(s, l);
      const auto column = execute_repair(desc, plan, tracked);
      for (int i = 0; i < h.alpha; ++i) write_symbol(&payload[((s * h.alpha + i) * L + l) * bps], column[i], bps);
    }
  }

  h.node_index = static_cast<std::uint8_t>(node);
  const auto head = h.serialize();
  write_atomic(dir / shard_file_name(node), head, payload);

  RepairReport report;
  report.node = node;
  report.params = h.params();
  report.stripes = stripes;
  report.stripe_size = h.stripe_size;
  report.symbols_per_stripe = plan.total();
  report.s1 = plan.s1.size();
  report.s2 = plan.s2.size();
  report.s3 = plan.s3.size();
  report.symbols_read = tracked.count();
  report.ratio = {plan.total(), std::uint64_t(h.k) * h.alpha};
  report.lower_bound = repair_lower_bound(h.n, h.k, h.alpha);
  return report;
}

}  // namespace stcode
