// stcode: shard files with ST-RS codes, repair lost shards, verify and bench.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stcode/analysis.hpp"
#include "stcode/bench.hpp"
#include "stcode/error.hpp"
#include "stcode/mds_verify.hpp"
#include "stcode/shard.hpp"
#include "stcode/st_code.hpp"

namespace {

using namespace stcode;

struct CodeFlags {
  int n = 0;
  int k = 0;
  int alpha = 0;
  int w = 0;
  std::string mode = "kr";
  std::uint64_t seed = 1;

  void add(CLI::App* app, bool required = true, std::vector<std::string> modes = {"kr", "n"}) {
    auto* on = app->add_option("--n", n, "Total nodes");
    auto* ok = app->add_option("--k", k, "Data nodes");
    auto* oa = app->add_option("--alpha", alpha, "Symbols per node");
    if (required) {
      on->required();
      ok->required();
      oa->required();
    }
    app->add_option("--w", w, "Field width 8 or 16 (0 picks from the field-size bound)")
        ->check(CLI::IsMember({0, 8, 16}));
    app->add_option("--mode", mode, "Column partition")->check(CLI::IsMember(modes));
    app->add_option("--seed", seed, "Coefficient seed");
  }

  CodeParams params() const { return make(n, k, alpha); }

  CodeParams make(int nn, int kk, int aa) const {
    CodeParams p;
    p.n = nn;
    p.k = kk;
    p.alpha = aa;
    p.field = gf::FieldSpec::standard(w == 0 ? default_field_width(nn, kk, aa) : w);
    p.mode = parse_partition_mode(mode);
    p.seed = seed;
    return p;
  }
};

struct Triple {
  int n, k, alpha;
};

std::vector<Triple> parse_params(const std::vector<std::string>& items) {
  std::vector<Triple> out;
  for (const auto& item : items) {
    Triple t{};
    char c1 = 0, c2 = 0;
    std::istringstream in(item);
    if (!(in >> t.n >> c1 >> t.k >> c2 >> t.alpha) || c1 != ',' || c2 != ',' || !in.eof())
      throw ParameterError("expected n,k,alpha but got '" + item + "'");
    out.push_back(t);
  }
  return out;
}

std::vector<Triple> table_params() {
  std::vector<Triple> out;
  for (const auto& row : published_ratios()) out.push_back({row.n, row.k, row.alpha});
  return out;
}

int cmd_encode(const CodeFlags& flags, const std::string& input, const std::string& out, std::uint32_t stripe) {
  EncodeOptions opt;
  opt.params = flags.params();
  opt.stripe_size = stripe;
  const auto paths = encode_file(input, out, opt);
  std::cout << "wrote " << paths.size() << " shards to " << out << "\n";
  return 0;
}

int cmd_decode(const std::string& dir, const std::string& out) {
  decode_dir(dir, out);
  std::cout << "decoded " << dir << " -> " << out << "\n";
  return 0;
}

int cmd_repair(const std::string& dir, int node) {
  const RepairReport r = repair_dir(dir, node);
  std::cout << "repaired node " << r.node << " (" << r.stripes << " stripes, stripe size " << r.stripe_size
            << ")\n";
  std::cout << "S1 " << r.s1 << ", S2 " << r.s2 << ", S3 " << r.s3 << "\n";
  std::cout << "symbols per stripe: " << r.symbols_per_stripe << "\n";
  std::cout << "symbols read: " << r.symbols_read << "\n";
  std::cout << "ratio: " << r.ratio.rounded(3) << " (" << r.ratio.fraction() << ")\n";
  std::cout << "lower bound: " << r.lower_bound << "\n";
  return 0;
}

int cmd_bench(const CodeFlags& flags, const std::vector<Triple>& rows, const std::string& prefix) {
  std::vector<PartitionMode> modes;
  if (flags.mode == "both") {
    modes = {PartitionMode::KR, PartitionMode::N};
  } else {
    modes = {parse_partition_mode(flags.mode)};
  }
  std::vector<BenchRecord> records;
  for (const auto mode : modes) {
    for (const auto& t : rows) {
      CodeFlags row_flags = flags;
      row_flags.mode = to_string(mode);
      std::cout << t.n << "," << t.k << "," << t.alpha << " " << to_string(mode) << ": " << std::flush;
      try {
        records.push_back(run_bench_case(row_flags.make(t.n, t.k, t.alpha)));
      } catch (const std::exception& e) {
        BenchRecord rec;
        rec.params.n = t.n;
        rec.params.k = t.k;
        rec.params.alpha = t.alpha;
        rec.params.mode = mode;
        rec.error = e.what();
        records.push_back(rec);
      }
      const auto& rec = records.back();
      if (!rec.error.empty()) {
        std::cout << "error: " << rec.error << "\n";
      } else {
        std::cout << rec.report->average_ratio().percent() << " (cut-set " << rec.cutset.percent() << ")\n";
      }
    }
  }
  {
    std::ofstream csv(prefix + ".csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + prefix + ".csv");
    write_bench_csv(csv, records);
  }
  {
    std::ofstream json(prefix + ".json");
    if (!json) throw std::runtime_error("cannot write " + prefix + ".json");
    json << bench_json(records).dump(2) << "\n";
  }
  int failed = 0;
  for (const auto& rec : records) failed += rec.error.empty() ? 0 : 1;
  return failed == 0 ? 0 : 1;
}

int cmd_verify(const CodeFlags& flags, bool inject_unit_theta) {
  const CodeParams p = flags.params();
  p.validate();
  const std::uint64_t bound = field_size_bound(p.n, p.k, p.alpha);
  const std::uint64_t q = p.field.order();
  std::cout << "field GF(2^" << p.field.w << "), q = " << q << "\n";
  if (bound < q) {
    std::cout << "bound " << bound << " < " << q << "\n";
  } else {
    std::cout << "warning: bound " << bound << " >= " << q << ", existence of MDS coefficients not guaranteed\n";
  }

  MdsVerdict verdict;
  if (inject_unit_theta) {
    BuildOptions opt;
    opt.verify = false;
    CodeDescriptor desc = build_code(p, opt);
    const auto& groups = desc.plans().front().groups();
    std::size_t target = groups.size();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (groups[g].kind != GroupKind::Identity) {
        target = g;
        break;
      }
    }
    if (target == groups.size()) throw ParameterError("no coupled group to inject into");
    desc = desc.with_forced_theta(0, target, 1);
    std::cout << "injected theta = 1 into group " << target << " of sub-array 0\n";
    verdict = verify_mds(desc);
  } else {
    try {
      const CodeDescriptor desc = build_code(p);
      const auto& v = desc.verification();
      std::cout << "ok: " << v.subsets_checked << (v.exhaustive ? " subsets (exhaustive)" : " subsets (sampled)")
                << ", attempts " << v.attempts << "\n";
      return 0;
    } catch (const VerificationExhaustedError& e) {
      std::cout << "failed: " << e.what() << "\n";
      return 1;
    }
  }
  if (verdict.ok) {
    std::cout << "ok: " << verdict.subsets_checked << " subsets\n";
    return 0;
  }
  std::cout << "failing subset {";
  for (std::size_t i = 0; i < verdict.failing_subset.size(); ++i)
    std::cout << (i ? "," : "") << verdict.failing_subset[i];
  std::cout << "} rank " << verdict.failing_rank << " < " << p.k * p.alpha << "\n";
  return 1;
}

int cmd_bounds(const std::vector<Triple>& rows) {
  std::printf("%4s %4s %6s %8s %12s %8s %8s  %s\n", "n", "k", "alpha", "repair", "field", "cutset", "et-rs",
              "gap nodes");
  for (const auto& t : rows) {
    const BoundsRow b = bounds_row(t.n, t.k, t.alpha);
    std::string gaps;
    for (const int g : b.gap_nodes) gaps += (gaps.empty() ? "" : ",") + std::to_string(g);
    std::printf("%4d %4d %6d %8d %12llu %8s %8d  %s\n", b.n, b.k, b.alpha, b.repair_bound,
                static_cast<unsigned long long>(b.field_bound), b.cutset.percent().c_str(), b.elastic_bound,
                gaps.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-transformed Reed-Solomon array codes"};
  app.require_subcommand(1);

  CodeFlags enc_flags;
  std::string enc_input, enc_out = "shards";
  std::uint32_t enc_stripe = 1;
  auto* enc = app.add_subcommand("encode", "Split a file into n shards");
  enc_flags.add(enc);
  enc->add_option("input", enc_input, "File to encode")->required()->check(CLI::ExistingFile);
  enc->add_option("--out", enc_out, "Output directory");
  enc->add_option("--stripe-size", enc_stripe, "Symbols per cell per stripe")->check(CLI::PositiveNumber);

  std::string dec_dir, dec_out;
  auto* dec = app.add_subcommand("decode", "Rebuild a file from any k shards");
  dec->add_option("dir", dec_dir, "Shard directory")->required()->check(CLI::ExistingDirectory);
  dec->add_option("--out", dec_out, "Output file")->required();

  std::string rep_dir;
  int rep_node = 0;
  auto* rep = app.add_subcommand("repair", "Regenerate one missing shard");
  rep->add_option("dir", rep_dir, "Shard directory")->required()->check(CLI::ExistingDirectory);
  rep->add_option("--node", rep_node, "Missing node (0-based)")->required();

  CodeFlags bench_flags;
  std::vector<std::string> bench_params;
  std::string bench_out = "bench";
  auto* bench = app.add_subcommand("bench", "Measure repair bandwidth and write CSV + JSON");
  bench_flags.add(bench, false, {"kr", "n", "both"});
  bench->add_option("--params", bench_params, "n,k,alpha (repeatable; default the published table)");
  bench->add_option("--out", bench_out, "Output prefix for PREFIX.csv and PREFIX.json");

  CodeFlags ver_flags;
  bool inject = false;
  auto* ver = app.add_subcommand("verify", "Build a code and check the MDS property");
  ver_flags.add(ver);
  ver->add_flag("--inject-unit-theta", inject, "Force one coupling coefficient to 1 (test hook)");

  std::vector<std::string> bnd_params;
  CodeFlags bnd_flags;
  auto* bnd = app.add_subcommand("bounds", "Print repair, field-size and cut-set bounds");
  bnd_flags.add(bnd, false);
  bnd->add_option("--params", bnd_params, "n,k,alpha (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enc) return cmd_encode(enc_flags, enc_input, enc_out, enc_stripe);
    if (*dec) return cmd_decode(dec_dir, dec_out);
    if (*rep) return cmd_repair(rep_dir, rep_node);
    if (*bench) {
      std::vector<Triple> rows;
      if (bench_flags.n != 0) rows.push_back({bench_flags.n, bench_flags.k, bench_flags.alpha});
      for (const auto& t : parse_params(bench_params)) rows.push_back(t);
      if (rows.empty()) rows = table_params();
      return cmd_bench(bench_flags, rows, bench_out);
    }
    if (*ver) return cmd_verify(ver_flags, inject);
    if (*bnd) {
      std::vector<Triple> rows;
      if (bnd_flags.n != 0) rows.push_back({bnd_flags.n, bnd_flags.k, bnd_flags.alpha});
      for (const auto& t : parse_params(bnd_params)) rows.push_back(t);
      if (rows.empty()) rows = table_params();
      return cmd_bounds(rows);
    }
  } catch (const std::exception& e) {
    std::cerr << "stcode: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
