#include "stcode/mds_verify.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "stcode/error.hpp"

namespace stcode {

gf::Matrix GlobalMap::restrict_to(std::span<const int> nodes) const {
  std::vector<std::size_t> rows;
  rows.reserve(nodes.size() * alpha);
  for (int node : nodes) {
    if (node < 0 || node >= n) throw ParameterError("node index " + std::to_string(node) + " out of range");
    for (int r = 0; r < alpha; ++r) rows.push_back(row_index(node, r));
  }
  return matrix.select_rows(rows);
}

GlobalMap build_global_matrix(const CodeDescriptor& desc) {
  const int n = desc.n();
  const int k = desc.k();
  const int alpha = desc.alpha();
  const gf::Field& f = desc.field();
  const gf::Matrix& gen = desc.rs().generator();

  GlobalMap map{n, k, alpha, gf::Matrix(std::size_t(n) * alpha, std::size_t(k) * alpha)};
  for (int node = 0; node < n; ++node) {
    for (int row = 0; row < alpha; ++row) {
      std::size_t member = 0;
      const auto& group = desc.group_of({row, node}, &member);
      const auto members = desc.global_members({row, node});
      const gf::Matrix forward = group.forward_matrix();
      auto out = map.matrix.row(map.row_index(node, row));
      for (std::size_t m = 0; m < members.size(); ++m) {
        const Elem coeff = forward(member, m);
        if (coeff == 0) continue;
        // b(row', col') = sum_t data(row', t) * G(t, col')
        const Cell src = members[m];
        for (int t = 0; t < k; ++t) out[std::size_t(src.row) * k + t] ^= f.mul(coeff, gen(t, src.col));
      }
    }
  }
  return map;
}

namespace {

class SubsetChecker {
 public:
  explicit SubsetChecker(const CodeDescriptor& desc)
      : desc_(desc), map_(build_global_matrix(desc)), order_(std::size_t(desc.k()) * desc.alpha()), work_(order_ * order_) {}

  /// Rank of the restriction to `nodes`.
  std::size_t rank(std::span<const int> nodes) {
    const int alpha = desc_.alpha();
    Elem* dst = work_.data();
    for (int node : nodes) {
      for (int r = 0; r < alpha; ++r) {
        const auto src = map_.matrix.row(map_.row_index(node, r));
        dst = std::copy(src.begin(), src.end(), dst);
      }
    }
    return gf::rank_in_place(desc_.field(), work_, order_, order_);
  }

  std::size_t order() const { return order_; }

 private:
  const CodeDescriptor& desc_;
  GlobalMap map_;
  std::size_t order_;
  std::vector<Elem> work_;
};

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace

MdsVerdict verify_mds(const CodeDescriptor& desc, std::uint64_t exhaustive_limit) {
  const int n = desc.n();
  const int k = desc.k();
  SubsetChecker checker(desc);
  MdsVerdict verdict;

  auto check = [&](const std::vector<int>& subset) {
    ++verdict.subsets_checked;
    const std::size_t r = checker.rank(subset);
    if (r == checker.order()) return true;
    verdict.ok = false;
    verdict.failing_subset = subset;
    verdict.failing_rank = r;
    return false;
  };

  const std::uint64_t total = binomial(n, k);
  if (total <= exhaustive_limit) {
    verdict.exhaustive = true;
    std::vector<int> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    do {
      if (!check(subset)) return verdict;
    } while (next_combination(subset, n));
    return verdict;
  }

  verdict.exhaustive = false;
  std::mt19937_64 rng(desc.params().seed ^ 0x5EEDF00DCAFEULL);
  std::vector<int> pool(n);
  for (std::uint64_t s = 0; s < exhaustive_limit; ++s) {
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
      const auto j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(n - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + k);
    std::ranges::sort(subset);
    if (!check(subset)) return verdict;
  }
  return verdict;
}

}  // namespace stcode
