// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails or overruns its time limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "stcode/analysis.hpp"
#include "stcode/bench.hpp"
#include "stcode/mds_verify.hpp"
#include "stcode/repair.hpp"
#include "stcode/shard.hpp"
#include "stcode/st_code.hpp"

using namespace stcode;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Checker {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  Outcome& outcome() { return out_; }

 private:
  Outcome out_;
};

CodeParams params(int n, int k, int alpha, PartitionMode mode, int w = 0, std::uint64_t seed = 1) {
  CodeParams p;
  p.n = n;
  p.k = k;
  p.alpha = alpha;
  p.field = gf::FieldSpec::standard(w == 0 ? default_field_width(n, k, alpha) : w);
  p.mode = mode;
  p.seed = seed;
  return p;
}

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

Outcome criterion1() {
  Checker c;
  const auto desc = build_code(params(14, 10, 3, PartitionMode::KR, 16));
  const RepairPlan plan = plan_repair(desc, 0);
  const auto ratio = measure_bandwidth(desc).node_ratio(0);
  c.require(plan.s1.size() == 10 && plan.s2.size() == 5 && plan.s3.size() == 2,
            "|S1|,|S2|,|S3| = " + std::to_string(plan.s1.size()) + "," + std::to_string(plan.s2.size()) + "," +
                std::to_string(plan.s3.size()));
  c.require(plan.total() == 17, "total " + std::to_string(plan.total()));
  c.require(ratio.percent() == "56.6%" && ratio.rounded(3) == "0.567", "ratio " + ratio.fraction());
  if (c.outcome().ok) c.outcome().detail = "17 symbols (10+5+2), ratio " + ratio.rounded(3);
  return c.outcome();
}

Outcome criterion2() {
  Checker c;
  std::ostringstream detail;
  for (const auto& row : published_ratios()) {
    bool matched = false;
    std::string seen;
    for (const auto mode : {PartitionMode::KR, PartitionMode::N}) {
      const auto report = measure_bandwidth(build_code(params(row.n, row.k, row.alpha, mode)));
      const double pct = 100.0 * report.average_ratio().value();
      c.require(pct <= row.st_rs + 0.5, "(" + std::to_string(row.n) + "," + std::to_string(row.k) + "," +
                                            std::to_string(row.alpha) + ") " + to_string(mode) + " " +
                                            fmt(pct, 2) + "% exceeds " + fmt(row.st_rs, 1) + "% + 0.5");
      if (std::abs(pct - row.st_rs) <= 0.5) matched = true;
      seen += std::string(seen.empty() ? "" : "/") + to_string(mode) + " " + fmt(pct, 2);
    }
    c.require(matched, "(" + std::to_string(row.n) + "," + std::to_string(row.k) + "," + std::to_string(row.alpha) +
                           ") no mode within 0.5 pt of " + fmt(row.st_rs, 1));
    detail << " " << row.n << "," << row.k << "," << row.alpha << ":" << seen;
  }
  if (c.outcome().ok) c.outcome().detail = "percent (kr/n)" + detail.str();
  return c.outcome();
}

Outcome criterion3() {
  Checker c;
  std::string got;
  for (const auto& row : published_ratios()) {
    const std::string pct = cutset_ratio(row.n, row.k).percent();
    c.require(pct == fmt(row.cutset, 1) + "%", pct + " vs " + fmt(row.cutset, 1) + "%");
    got += " " + pct;
  }
  if (c.outcome().ok) c.outcome().detail = "cut-set" + got;
  return c.outcome();
}

Outcome criterion4() {
  Checker c;
  c.require(repair_lower_bound(14, 10, 3) == 17, "(14,10,3) bound");
  c.require(repair_lower_bound(10, 7, 3) == 13, "(10,7,3) bound");
  std::string got;
  for (const auto& row : published_ratios()) {
    const auto report = measure_bandwidth(build_code(params(row.n, row.k, row.alpha, PartitionMode::N)));
    const auto lo = *std::ranges::min_element(report.counts);
    const int bound = repair_lower_bound(row.n, row.k, row.alpha);
    c.require(lo >= std::size_t(bound), "min " + std::to_string(lo) + " below bound " + std::to_string(bound));
    c.require(lo == std::size_t(bound), "bound " + std::to_string(bound) + " not attained (min " +
                                            std::to_string(lo) + ")");
    got += " " + std::to_string(lo) + "=" + std::to_string(bound);
  }
  if (c.outcome().ok) c.outcome().detail = "min=bound" + got;
  return c.outcome();
}

Outcome criterion5() {
  Checker c;
  const auto a = build_code(params(10, 7, 3, PartitionMode::N, 8));
  const auto va = verify_mds(a);
  c.require(va.ok && va.exhaustive && va.subsets_checked == 120, "(10,7,3) GF(2^8)");
  const auto b = build_code(params(14, 10, 3, PartitionMode::N, 16));
  const auto vb = verify_mds(b);
  c.require(vb.ok && vb.exhaustive && vb.subsets_checked == 1001, "(14,10,3) GF(2^16)");
  if (c.outcome().ok) c.outcome().detail = "120/120 and 1001/1001 subsets full rank";
  return c.outcome();
}

Outcome criterion6() {
  Checker c;
  std::mt19937_64 rng(6);
  std::uint64_t repairs = 0;
  for (const auto& row : published_ratios()) {
    for (const auto mode : {PartitionMode::KR, PartitionMode::N}) {
      const auto desc = build_code(params(row.n, row.k, row.alpha, mode));
      const std::size_t ka = std::size_t(row.k) * row.alpha;
      for (int t = 0; t < row.n; ++t) {
        const RepairPlan plan = plan_repair(desc, t);
        const auto planned = plan.downloads();
        const std::set<Cell> allowed(planned.begin(), planned.end());
        for (int trial = 0; trial < 100; ++trial) {
          const SymbolGrid x = st_encode(desc, oracle::random_symbols(rng, ka, desc.field().w()));
          GridSource grid(x, t);
          TrackingSource tracker(grid);
          const bool exact = execute_repair(desc, plan, tracker) == x.column(t);
          bool inside = tracker.count() == plan.total();
          for (const Cell cell : tracker.accessed()) inside = inside && allowed.contains(cell);
          c.require(exact, "wrong symbols for node " + std::to_string(t));
          c.require(inside, "unplanned access for node " + std::to_string(t));
          ++repairs;
        }
      }
    }
  }
  if (c.outcome().ok) c.outcome().detail = std::to_string(repairs) + " repairs exact";
  return c.outcome();
}

Outcome criterion7() {
  Checker c;
  const auto report = measure_bandwidth(build_code(params(14, 10, 3, PartitionMode::N, 16)));
  const int bound = elastic_node_lower_bound(14, 10, 3);
  const auto gaps = gap_nodes(14, 10, 3);
  c.require(bound == 19, "elastic bound " + std::to_string(bound));
  c.require(gaps.size() == 4, "gap node count " + std::to_string(gaps.size()));
  std::string got;
  for (const int t : gaps) {
    const int gap = bound - static_cast<int>(report.counts[t]);
    c.require(gap >= 2, "node " + std::to_string(t) + " gap " + std::to_string(gap));
    got += " " + std::to_string(t) + ":" + std::to_string(gap);
  }
  if (c.outcome().ok) c.outcome().detail = "gaps" + got;
  return c.outcome();
}

Outcome criterion8() {
  Checker c;
  std::mt19937_64 rng(8);
  const auto f = gf::Field::standard(8);
  auto draw = [&rng] { return Elem(std::uniform_int_distribution<int>(2, 255)(rng)); };
  const std::vector<std::pair<int, int>> geoms = {{2, 2}, {3, 3}, {3, 4}, {3, 5}, {4, 6}, {4, 7}};
  for (auto [alpha, beta] : geoms) {
    const CouplingPlan plan = build_plan(alpha, beta, draw);
    std::vector<std::uint32_t> thetas;
    if (alpha == beta)
      for (int i = 0; i < alpha; ++i)
        for (int j = i + 1; j < alpha; ++j) thetas.push_back(plan.group_of({i, j}).theta);
    const std::size_t cells = std::size_t(alpha) * beta;
    for (int t = 0; t < 1000; ++t) {
      SymbolGrid x(alpha, beta, oracle::random_symbols(rng, cells, 8));
      SymbolGrid y(alpha, beta, oracle::random_symbols(rng, cells, 8));
      const Elem a = oracle::random_symbols(rng, 1, 8)[0];
      const SymbolGrid tx = apply_transform(*f, plan, x);
      const SymbolGrid ty = apply_transform(*f, plan, y);
      c.require(invert_transform(*f, plan, tx) == x, "inverse fails for " + std::to_string(alpha) + "x" +
                                                        std::to_string(beta));
      SymbolGrid comb(alpha, beta), expect(alpha, beta);
      for (int r = 0; r < alpha; ++r)
        for (int col = 0; col < beta; ++col) {
          comb.at(r, col) = Elem(f->mul(a, x.at(r, col)) ^ y.at(r, col));
          expect.at(r, col) = Elem(f->mul(a, tx.at(r, col)) ^ ty.at(r, col));
        }
      c.require(apply_transform(*f, plan, comb) == expect, "linearity fails for " + std::to_string(alpha) + "x" +
                                                                std::to_string(beta));
      if (alpha == beta)
        c.require(tx == oracle::couple_square(x, thetas, 0x11D, 8), "square case differs from direct coupling");
    }
  }
  if (c.outcome().ok) c.outcome().detail = "6 geometries x 1000 grids";
  return c.outcome();
}

std::vector<std::uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion9() {
  Checker c;
  const fs::path dir = fs::temp_directory_path() / ("stcode_accept_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::mt19937_64 rng(9);
  std::vector<std::uint8_t> data(1 << 20);
  for (auto& b : data) b = static_cast<std::uint8_t>(rng());
  {
    std::ofstream out(dir / "input.bin", std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  }
  const auto paths = encode_file(dir / "input.bin", dir / "shards", {params(14, 10, 3, PartitionMode::KR, 16), 1});
  std::size_t node0 = 0;
  for (int t = 0; t < 14; ++t) {
    const auto before = slurp(paths[t]);
    fs::remove(paths[t]);
    const RepairReport r = repair_dir(dir / "shards", t);
    if (t == 0) node0 = r.symbols_per_stripe;
    c.require(slurp(paths[t]) == before, "repaired shard " + std::to_string(t) + " differs");
    c.require(r.symbols_read == r.stripes * r.symbols_per_stripe, "read count differs from plan");
    fs::remove(dir / "output.bin");
    decode_dir(dir / "shards", dir / "output.bin");
    c.require(slurp(dir / "output.bin") == data, "decode after repairing " + std::to_string(t) + " differs");
  }
  c.require(node0 == 17, "node 0 repair reads " + std::to_string(node0) + " symbols per stripe");
  fs::remove_all(dir);
  if (c.outcome().ok) c.outcome().detail = "14/14 shards repaired bit-exact, node 0 reads 17 per stripe";
  return c.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "example repair (14,10,3) node 0", 1, criterion1},
      {2, "published ST-RS averages", 120, criterion2},
      {3, "published cut-set ratios", 1, criterion3},
      {4, "repair lower bound attained", 60, criterion4},
      {5, "exhaustive MDS verification", 120, criterion5},
      {6, "repair correctness property", 600, criterion6},
      {7, "gap nodes beat elastic bound", 1, criterion7},
      {8, "transformation properties", 30, criterion8},
      {9, "file round trip (14,10,3)", 120, criterion9},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = cr.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.ok && secs >= cr.limit_seconds) {
      out.ok = false;
      out.detail += " (over time limit)";
    }
    if (!out.ok) ++failed;
    std::printf("criterion %d %s: %s [%.2fs < %.0fs] %s\n", cr.id, cr.name, out.ok ? "PASS" : "FAIL", secs,
                cr.limit_seconds, out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
