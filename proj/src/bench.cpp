#include "stcode/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

namespace stcode {

const std::vector<PublishedRatios>& published_ratios() {
  static const std::vector<PublishedRatios> rows = {
      {10, 7, 3, 72.3, 68.5, 65.7, 42.8},  //
      {14, 10, 4, 55.3, 60.1, 51.7, 32.5},
      {17, 13, 4, 54.2, 57.2, 49.7, 30.7},
      {22, 18, 4, 50.1, 54.1, 48.1, 29.1},
      {29, 25, 4, 49.0, 51.5, 46.8, 28.0},
  };
  return rows;
}

std::optional<PublishedRatios> published_ratios(int n, int k, int alpha) {
  for (const auto& row : published_ratios())
    if (row.n == n && row.k == k && row.alpha == alpha) return row;
  return std::nullopt;
}

BenchRecord run_bench_case(const CodeParams& params, const BuildOptions& options) {
  using clock = std::chrono::steady_clock;
  BenchRecord rec;
  rec.params = params;
  try {
    rec.repair_bound = repair_lower_bound(params.n, params.k, params.alpha);
    rec.cutset = cutset_ratio(params.n, params.k);
    const auto t0 = clock::now();
    const CodeDescriptor desc = build_code(params, options);
    const auto t1 = clock::now();
    rec.report = measure_bandwidth(desc);
    const auto t2 = clock::now();
    rec.verification = desc.verification();
    rec.build_seconds = std::chrono::duration<double>(t1 - t0).count();
    rec.measure_seconds = std::chrono::duration<double>(t2 - t1).count();
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "n,k,alpha,mode,node,count,ratio\n";
  for (const auto& rec : records) {
    if (!rec.report) continue;
    const auto& p = rec.params;
    for (int t = 0; t < p.n; ++t) {
      out << p.n << ',' << p.k << ',' << p.alpha << ',' << to_string(p.mode) << ',' << t << ','
          << rec.report->counts[t] << ',' << rec.report->node_ratio(t).rounded(4) << '\n';
    }
  }
}

nlohmann::json bench_json(const std::vector<BenchRecord>& records) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& rec : records) {
    const auto& p = rec.params;
    nlohmann::json row = {
        {"n", p.n},
        {"k", p.k},
        {"alpha", p.alpha},
        {"mode", to_string(p.mode)},
        {"w", p.field.w},
        {"seed", p.seed},
        {"repair_lower_bound", rec.repair_bound},
        {"cutset_ratio", rec.cutset.value()},
        {"cutset_percent", rec.cutset.percent()},
        {"build_seconds", rec.build_seconds},
        {"measure_seconds", rec.measure_seconds},
    };
    if (!rec.error.empty()) row["error"] = rec.error;
    row["verification"] = {
        {"run", rec.verification.run},
        {"exhaustive", rec.verification.exhaustive},
        {"subsets_checked", rec.verification.subsets_checked},
        {"attempts", rec.verification.attempts},
    };
    if (rec.report) {
      const auto& r = *rec.report;
      const auto avg = r.average_ratio();
      const auto raw = r.raw_average_ratio();
      row["average_ratio"] = avg.value();
      row["average_ratio_exact"] = avg.fraction();
      row["average_percent"] = avg.percent();
      row["raw_average_ratio"] = raw.value();
      row["raw_average_ratio_exact"] = raw.fraction();
      row["min_count"] = *std::ranges::min_element(r.counts);
      row["max_count"] = *std::ranges::max_element(r.counts);
      row["counts"] = r.counts;
    }
    if (const auto ref = published_ratios(p.n, p.k, p.alpha)) {
      row["published_percent"] = {
          {"et_rs", ref->et_rs}, {"htec", ref->htec}, {"st_rs", ref->st_rs}, {"cutset", ref->cutset}};
    }
    rows.push_back(std::move(row));
  }
  return {{"records", rows}};
}

}  // namespace stcode
