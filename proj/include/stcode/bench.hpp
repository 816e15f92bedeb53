#pragma once

// Repair-bandwidth benchmark records and their CSV / JSON renderings.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stcode/analysis.hpp"
#include "stcode/repair.hpp"
#include "stcode/st_code.hpp"

namespace stcode {

/// Published average repair-bandwidth ratios (percent) for one parameter set.
struct PublishedRatios {
  int n, k, alpha;
  double et_rs;
  double htec;
  double st_rs;
  double cutset;
};

/// The five published parameter sets, in table order.
const std::vector<PublishedRatios>& published_ratios();
std::optional<PublishedRatios> published_ratios(int n, int k, int alpha);

struct BenchRecord {
  CodeParams params;
  std::optional<BandwidthReport> report;
  VerificationSummary verification;
  int repair_bound = 0;
  Ratio cutset;
  double build_seconds = 0;
  double measure_seconds = 0;
  /// Non-empty when the row failed to build.
  std::string error;
};

/// Builds, verifies and measures one code. Errors are captured in the record.
BenchRecord run_bench_case(const CodeParams& params, const BuildOptions& options = {});

/// One line per node: n,k,alpha,mode,node,count,ratio. Byte-stable.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

nlohmann::json bench_json(const std::vector<BenchRecord>& records);

}  // namespace stcode
