#include "stcode/repair.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace stcode {

std::vector<Cell> RepairPlan::downloads() const {
  std::vector<Cell> out;
  out.reserve(total());
  out.insert(out.end(), s1.begin(), s1.end());
  out.insert(out.end(), s2.begin(), s2.end());
  out.insert(out.end(), s3.begin(), s3.end());
  std::ranges::sort(out);
  return out;
}

int major_row(const CodeDescriptor& desc, int node) {
  const auto loc = desc.locate(node);
  return desc.plans()[loc.subarray].geometry().set_index_of_column(loc.local_col);
}

namespace {

// Group members (global cells) other than `failed` whose stored values pin
// down the members outside row s, given all row-s originals. Picked in member
// order, skipping equations that add no rank on the unknowns.
std::vector<std::size_t> rebuild_equations(const gf::Field& f, const CouplingGroup& group,
                                           const std::vector<Cell>& members, std::size_t failed, int s,
                                           std::vector<std::size_t>* unknowns_out = nullptr) {
  std::vector<std::size_t> unknowns;
  for (std::size_t m = 0; m < members.size(); ++m)
    if (members[m].row != s) unknowns.push_back(m);
  const gf::Matrix forward = group.forward_matrix();

  std::vector<std::size_t> chosen;
  std::vector<Elem> rows;
  for (std::size_t m = 0; m < members.size() && chosen.size() < unknowns.size(); ++m) {
    if (m == failed) continue;
    std::vector<Elem> trial = rows;
    for (std::size_t u : unknowns) trial.push_back(forward(m, u));
    if (gf::rank(f, gf::Matrix(chosen.size() + 1, unknowns.size(), trial)) == chosen.size() + 1) {
      rows = std::move(trial);
      chosen.push_back(m);
    }
  }
  if (chosen.size() != unknowns.size()) throw std::logic_error("coupling group cannot be rebuilt from row s");
  if (unknowns_out) *unknowns_out = std::move(unknowns);
  return chosen;
}

}  // namespace

RepairPlan plan_repair(const CodeDescriptor& desc, int node) {
  const int s = major_row(desc, node);
  const int n = desc.n();
  const int alpha = desc.alpha();

  RepairPlan plan;
  plan.failed_node = node;
  plan.major_row = s;

  std::set<Cell> s3;
  for (int i = 0; i < alpha; ++i) {
    if (i == s) continue;
    std::size_t failed = 0;
    const auto& group = desc.group_of({i, node}, &failed);
    const auto members = desc.global_members({i, node});
    for (std::size_t m : rebuild_equations(desc.field(), group, members, failed, s)) s3.insert(members[m]);
  }

  std::vector<bool> excluded(n, false);
  excluded[node] = true;
  for (const Cell c : s3)
    if (c.row == s) excluded[c.col] = true;

  struct Candidate {
    int col;
    std::vector<Cell> partners;
  };
  std::vector<Candidate> candidates;
  for (int j = 0; j < n; ++j) {
    if (excluded[j]) continue;
    std::size_t member = 0;
    const auto& group = desc.group_of({s, j}, &member);
    Candidate cand{j, {}};
    if (!group.is_original(member)) {
      for (const Cell c : desc.global_members({s, j}))
        if (c != Cell{s, j}) cand.partners.push_back(c);
    }
    const bool touches_failed = std::ranges::any_of(cand.partners, [&](Cell c) { return c.col == node; });
    if (!touches_failed) candidates.push_back(std::move(cand));
  }
  if (candidates.size() < std::size_t(desc.k())) {
    throw std::logic_error("fewer than k helper symbols available in the major row");
  }
  std::ranges::stable_sort(candidates, [](const Candidate& a, const Candidate& b) {
    return a.partners.size() < b.partners.size();
  });
  candidates.resize(desc.k());
  std::ranges::sort(candidates, {}, &Candidate::col);

  std::set<Cell> s1;
  for (const auto& cand : candidates) s1.insert({s, cand.col});
  std::set<Cell> s2;
  std::size_t raw = s1.size() + s3.size();
  for (const auto& cand : candidates) {
    raw += cand.partners.size();
    for (const Cell c : cand.partners)
      if (!s1.contains(c) && !s3.contains(c)) s2.insert(c);
  }

  plan.s1.assign(s1.begin(), s1.end());
  plan.s2.assign(s2.begin(), s2.end());
  plan.s3.assign(s3.begin(), s3.end());
  plan.raw_downloads = raw;
  return plan;
}

Elem GridSource::fetch(Cell cell) {
  if (cell.col == erased_) throw MissingSymbolError("symbol of the erased node requested");
  if (cell.row < 0 || cell.row >= grid_.rows() || cell.col < 0 || cell.col >= grid_.cols()) {
    throw MissingSymbolError("symbol coordinate out of range");
  }
  return grid_[cell];
}

Elem TrackingSource::fetch(Cell cell) {
  accessed_.push_back(cell);
  return inner_.fetch(cell);
}

std::vector<Elem> execute_repair(const CodeDescriptor& desc, const RepairPlan& plan, SymbolSource& source) {
  const gf::Field& f = desc.field();
  const int s = plan.major_row;
  const int t = plan.failed_node;

  std::map<Cell, Elem> stored;
  for (const Cell c : plan.downloads()) {
    if (c.col == t) throw MissingSymbolError("repair plan references the failed node");
    stored.emplace(c, source.fetch(c));
  }
  auto stored_at = [&](Cell c) {
    const auto it = stored.find(c);
    if (it == stored.end()) throw MissingSymbolError("repair needs a symbol outside its plan");
    return it->second;
  };

  // Original values of the S1 symbols.
  std::vector<KnownSymbol> row_known;
  for (const Cell c : plan.s1) {
    std::size_t member = 0;
    const auto& group = desc.group_of(c, &member);
    if (group.is_original(member)) {
      row_known.push_back({std::size_t(c.col), stored_at(c)});
      continue;
    }
    std::vector<Elem> x;
    for (const Cell m : desc.global_members(c)) x.push_back(stored_at(m));
    const auto b = gf::solve(f, group.forward_matrix(), x);
    row_known.push_back({std::size_t(c.col), b[member]});
  }
  const std::vector<Elem> row_s = desc.rs().erasure_decode(row_known);

  std::vector<Elem> out(desc.alpha());
  out[s] = row_s[t];
  for (int i = 0; i < desc.alpha(); ++i) {
    if (i == s) continue;
    std::size_t failed = 0;
    const auto& group = desc.group_of({i, t}, &failed);
    const auto members = desc.global_members({i, t});
    const gf::Matrix forward = group.forward_matrix();
    std::vector<std::size_t> unknowns;
    const auto equations = rebuild_equations(f, group, members, failed, s, &unknowns);

    std::vector<Elem> b(members.size(), 0);
    for (std::size_t m = 0; m < members.size(); ++m)
      if (members[m].row == s) b[m] = row_s[members[m].col];

    gf::Matrix system(unknowns.size(), unknowns.size());
    std::vector<Elem> rhs(unknowns.size());
    for (std::size_t e = 0; e < equations.size(); ++e) {
      const std::size_t m = equations[e];
      Elem value = stored_at(members[m]);
      for (std::size_t j = 0; j < members.size(); ++j)
        if (members[j].row == s) value ^= f.mul(forward(m, j), b[j]);
      rhs[e] = value;
      for (std::size_t u = 0; u < unknowns.size(); ++u) system(e, u) = forward(m, unknowns[u]);
    }
    const auto solved = gf::solve(f, system, rhs);
    for (std::size_t u = 0; u < unknowns.size(); ++u) b[unknowns[u]] = solved[u];

    Elem x = 0;
    for (std::size_t j = 0; j < members.size(); ++j) x ^= f.mul(forward(failed, j), b[j]);
    out[i] = x;
  }
  return out;
}

std::uint64_t BandwidthReport::total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

Ratio BandwidthReport::average_ratio() const {
  return {total(), std::uint64_t(params.n) * params.k * params.alpha};
}

Ratio BandwidthReport::raw_average_ratio() const {
  return {std::accumulate(raw_counts.begin(), raw_counts.end(), std::uint64_t{0}),
          std::uint64_t(params.n) * params.k * params.alpha};
}

Ratio BandwidthReport::node_ratio(int node) const {
  return {counts.at(node), std::uint64_t(params.k) * params.alpha};
}

BandwidthReport measure_bandwidth(const CodeDescriptor& desc) {
  BandwidthReport report;
  report.params = desc.params();
  for (int t = 0; t < desc.n(); ++t) {
    const RepairPlan plan = plan_repair(desc, t);
    report.counts.push_back(plan.total());
    report.raw_counts.push_back(plan.raw_downloads);
  }
  return report;
}

}  // namespace stcode
