#include "stcode/set_transform.hpp"

#include <string>

#include "stcode/error.hpp"

namespace stcode {

SymbolGrid::SymbolGrid(int rows, int cols, std::vector<Elem> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != std::size_t(rows) * cols) throw ParameterError("grid data length does not match shape");
}

std::vector<Elem> SymbolGrid::column(int c) const {
  std::vector<Elem> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

void SymbolGrid::set_column(int c, std::span<const Elem> values) {
  if (values.size() != std::size_t(rows_)) throw ParameterError("column length mismatch");
  for (int r = 0; r < rows_; ++r) at(r, c) = values[r];
}

SubArrayGeometry::SubArrayGeometry(int alpha, int beta) : alpha_(alpha), beta_(beta) {
  if (alpha < 1 || beta < alpha || beta >= 2 * alpha) {
    throw GeometryError("sub-array geometry requires 1 <= alpha <= beta < 2*alpha, got alpha=" +
                        std::to_string(alpha) + " beta=" + std::to_string(beta));
  }
}

Region SubArrayGeometry::region(Cell c) const {
  const int a = square();
  if (c.row < a) return c.col < a ? Region::A : Region::B1;
  return c.col < a ? Region::B2 : Region::C;
}

int SubArrayGeometry::set_index_of_column(int col) const {
  const int a = square();
  return col < a ? col : (col + a) / 2;
}

std::vector<Cell> SubArrayGeometry::set_cells(int i, int j) const {
  const int a = square();
  if (j < a) return {{i, j}};
  return {{i, 2 * j - a}, {i, 2 * j - a + 1}};
}

SetAllocation::SetAllocation(SubArrayGeometry geometry) : geometry_(geometry) {
  const int alpha = geometry_.alpha();
  sets_.reserve(std::size_t(alpha) * alpha);
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) sets_.push_back(geometry_.set_cells(i, j));
}

std::size_t SetAllocation::singleton_count() const {
  std::size_t n = 0;
  for (const auto& s : sets_) n += (s.size() == 1);
  return n;
}

std::size_t SetAllocation::pair_count() const { return sets_.size() - singleton_count(); }

SetAllocation allocate_sets(int alpha, int beta) { return SetAllocation(SubArrayGeometry(alpha, beta)); }

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Identity:
      return "identity";
    case GroupKind::Pair:
      return "pair";
    case GroupKind::Triple:
      return "triple";
  }
  return "?";
}

gf::Matrix CouplingGroup::forward_matrix() const {
  switch (kind) {
    case GroupKind::Identity:
      return gf::Matrix::identity(members.size());
    case GroupKind::Pair:
      return gf::Matrix(2, 2, {1, 1, theta, 1});
    case GroupKind::Triple:
      return gf::Matrix(3, 3, {1, 0, 1, 0, 1, 0, theta, theta, 1});
  }
  return {};
}

bool CouplingGroup::is_original(std::size_t member) const {
  return kind == GroupKind::Identity || (kind == GroupKind::Triple && member == 1);
}

CouplingPlan::CouplingPlan(SubArrayGeometry geometry, const ThetaSource& thetas) : allocation_(geometry) {
  const int alpha = geometry.alpha();
  const int a = geometry.square();
  auto draw = [&] {
    const Elem t = thetas();
    if (t == 0 || t == 1) throw ThetaDomainError("coupling coefficient must not be 0 or 1");
    return t;
  };

  for (int i = 0; i < alpha; ++i) groups_.push_back({GroupKind::Identity, allocation_.set(i, i), 0});
  for (int i = 0; i < a; ++i)
    for (int j = i + 1; j < a; ++j) groups_.push_back({GroupKind::Pair, {{i, j}, {j, i}}, draw()});
  for (int i = 0; i < a; ++i) {
    for (int j = a; j < alpha; ++j) {
      const auto& upper = allocation_.set(i, j);
      groups_.push_back({GroupKind::Triple, {upper[0], upper[1], {j, i}}, draw()});
    }
  }
  for (int i = a; i < alpha; ++i) {
    for (int j = i + 1; j < alpha; ++j) {
      const auto& upper = allocation_.set(i, j);
      const auto& lower = allocation_.set(j, i);
      groups_.push_back({GroupKind::Pair, {upper[0], lower[0]}, draw()});
      groups_.push_back({GroupKind::Pair, {upper[1], lower[1]}, draw()});
    }
  }

  constexpr Slot kUnset{~std::size_t{0}, 0};
  slots_.assign(std::size_t(alpha) * geometry.beta(), kUnset);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    for (std::size_t m = 0; m < groups_[g].members.size(); ++m) {
      const Cell c = groups_[g].members[m];
      slots_[std::size_t(c.row) * geometry.beta() + c.col] = {g, m};
    }
  }
}

std::size_t CouplingPlan::count(GroupKind kind) const {
  std::size_t n = 0;
  for (const auto& g : groups_) n += (g.kind == kind);
  return n;
}

CouplingPlan CouplingPlan::with_theta_unchecked(std::size_t group, Elem theta) const {
  CouplingPlan copy = *this;
  copy.groups_.at(group).theta = theta;
  return copy;
}

CouplingPlan build_plan(int alpha, int beta, const ThetaSource& thetas) {
  return CouplingPlan(SubArrayGeometry(alpha, beta), thetas);
}

namespace {

void check_block(const CouplingPlan& plan, const SymbolGrid& grid, int col_offset) {
  const auto& g = plan.geometry();
  if (grid.rows() != g.alpha() || col_offset < 0 || col_offset + g.beta() > grid.cols()) {
    throw ParameterError("grid shape does not match the coupling plan");
  }
}

}  // namespace

void apply_transform_at(const gf::Field& f, const CouplingPlan& plan, SymbolGrid& grid, int col_offset) {
  check_block(plan, grid, col_offset);
  auto at = [&](Cell c) -> Elem& { return grid.at(c.row, c.col + col_offset); };
  for (const auto& g : plan.groups()) {
    const auto& m = g.members;
    switch (g.kind) {
      case GroupKind::Identity:
        break;
      case GroupKind::Pair: {
        const Elem u = at(m[0]);
        const Elem v = at(m[1]);
        at(m[0]) = u ^ v;
        at(m[1]) = v ^ f.mul(g.theta, u);
        break;
      }
      case GroupKind::Triple: {
        const Elem b1 = at(m[0]);
        const Elem b2 = at(m[1]);
        const Elem b3 = at(m[2]);
        at(m[0]) = b1 ^ b3;
        at(m[2]) = b3 ^ f.mul(g.theta, b1 ^ b2);
        break;
      }
    }
  }
}

void invert_transform_at(const gf::Field& f, const CouplingPlan& plan, SymbolGrid& grid, int col_offset) {
  check_block(plan, grid, col_offset);
  std::vector<Elem> x;
  for (const auto& g : plan.groups()) {
    if (g.kind == GroupKind::Identity) continue;
    x.clear();
    for (const Cell c : g.members) x.push_back(grid.at(c.row, c.col + col_offset));
    const auto b = gf::solve(f, g.forward_matrix(), x);
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      grid.at(g.members[i].row, g.members[i].col + col_offset) = b[i];
    }
  }
}

SymbolGrid apply_transform(const gf::Field& f, const CouplingPlan& plan, const SymbolGrid& src) {
  if (src.cols() != plan.geometry().beta()) throw ParameterError("grid shape does not match the coupling plan");
  SymbolGrid out = src;
  apply_transform_at(f, plan, out, 0);
  return out;
}

SymbolGrid invert_transform(const gf::Field& f, const CouplingPlan& plan, const SymbolGrid& dst) {
  if (dst.cols() != plan.geometry().beta()) throw ParameterError("grid shape does not match the coupling plan");
  SymbolGrid out = dst;
  invert_transform_at(f, plan, out, 0);
  return out;
}

std::vector<SubArrayGeometry> split_wide(int alpha, int beta) {
  if (alpha < 1 || beta < 2 * alpha) throw GeometryError("split_wide requires beta >= 2*alpha");
  std::vector<SubArrayGeometry> out;
  const int rem = beta % alpha;
  const int squares = rem == 0 ? beta / alpha : (beta + alpha - 1) / alpha - 2;
  for (int i = 0; i < squares; ++i) out.emplace_back(alpha, alpha);
  if (rem != 0) out.emplace_back(alpha, alpha + rem);
  return out;
}

}  // namespace stcode
