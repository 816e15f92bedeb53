#pragma once

// Set transformation of an alpha x beta symbol array (alpha <= beta < 2*alpha).
//
// The array is split into four regions: A (a x a, a = 2*alpha - beta) in the
// top-left, B1 to its right, B2 below it and C in the bottom-right. Columns
// 0..a-1 each form one set per row; the remaining 2*(beta - alpha) columns
// are paired, so row i holds the sets R(i,0..alpha-1). Every off-diagonal
// pair of sets R(i,j), R(j,i) is then linearly coupled:
//
//   A   (Pair)   x_u = b_u + b_v,           x_v = b_v + theta*b_u
//   B1/B2 (Triple) x_1 = b_1 + b_3, x_2 = b_2, x_3 = b_3 + theta*(b_1 + b_2)
//   C   (Pair)   componentwise as in A, one theta per component
//
// where u (resp. the B1 set) is the set above the diagonal. Diagonal sets are
// stored unchanged. Each coupling is invertible because theta is not 0 or 1.

#include <compare>
#include <cstddef>
#include <functional>
#include <vector>

#include "stcode/galois.hpp"

namespace stcode {

using gf::Elem;

/// 0-based (row, column) coordinate inside an array.
struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Row-major rows x cols grid of field elements.
class SymbolGrid {
 public:
  SymbolGrid() = default;
  SymbolGrid(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}
  SymbolGrid(int rows, int cols, std::vector<Elem> data);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Elem& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  Elem at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
  Elem& operator[](Cell c) { return at(c.row, c.col); }
  Elem operator[](Cell c) const { return at(c.row, c.col); }

  std::vector<Elem> column(int c) const;
  void set_column(int c, std::span<const Elem> values);
  const std::vector<Elem>& values() const { return data_; }

  friend bool operator==(const SymbolGrid&, const SymbolGrid&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elem> data_;
};

enum class Region { A, B1, B2, C };

class SubArrayGeometry {
 public:
  /// Throws GeometryError unless 1 <= alpha <= beta < 2*alpha.
  SubArrayGeometry(int alpha, int beta);

  int alpha() const { return alpha_; }
  int beta() const { return beta_; }
  /// Side of the square region A (2*alpha - beta).
  int square() const { return 2 * alpha_ - beta_; }
  /// Rows of B2 / C (beta - alpha).
  int extra() const { return beta_ - alpha_; }

  Region region(Cell c) const;
  /// Set index j (0-based) whose cells in any row include column `col`.
  int set_index_of_column(int col) const;
  /// Cells of R(i, j), one or two of them.
  std::vector<Cell> set_cells(int i, int j) const;

  friend bool operator==(const SubArrayGeometry&, const SubArrayGeometry&) = default;

 private:
  int alpha_;
  int beta_;
};

class SetAllocation {
 public:
  explicit SetAllocation(SubArrayGeometry geometry);

  const SubArrayGeometry& geometry() const { return geometry_; }
  const std::vector<Cell>& set(int i, int j) const { return sets_[std::size_t(i) * geometry_.alpha() + j]; }
  std::size_t singleton_count() const;
  std::size_t pair_count() const;

 private:
  SubArrayGeometry geometry_;
  std::vector<std::vector<Cell>> sets_;
};

SetAllocation allocate_sets(int alpha, int beta);

enum class GroupKind { Identity, Pair, Triple };

const char* to_string(GroupKind kind);

/// One coupled-set combination. Member order:
///   Identity: the diagonal set's cells
///   Pair:     (upper cell u, lower cell v)
///   Triple:   (B1 coupled cell, B1 original cell, B2 cell)
struct CouplingGroup {
  GroupKind kind = GroupKind::Identity;
  std::vector<Cell> members;
  Elem theta = 0;

  /// x_members = forward_matrix * b_members.
  gf::Matrix forward_matrix() const;
  /// True when the member's stored value equals its original value.
  bool is_original(std::size_t member) const;
};

using ThetaSource = std::function<Elem()>;

class CouplingPlan {
 public:
  /// Builds the plan for an alpha x beta array drawing one theta per Pair or
  /// Triple group, in group order. Throws ThetaDomainError for theta in {0,1}.
  CouplingPlan(SubArrayGeometry geometry, const ThetaSource& thetas);

  const SubArrayGeometry& geometry() const { return allocation_.geometry(); }
  const SetAllocation& allocation() const { return allocation_; }
  const std::vector<CouplingGroup>& groups() const { return groups_; }

  struct Slot {
    std::size_t group;
    std::size_t member;
  };
  Slot slot(Cell c) const { return slots_[std::size_t(c.row) * geometry().beta() + c.col]; }
  const CouplingGroup& group_of(Cell c) const { return groups_[slot(c).group]; }

  std::size_t count(GroupKind kind) const;

  /// Copy with one group's theta replaced without validation. Test hook for
  /// exercising non-invertible couplings.
  CouplingPlan with_theta_unchecked(std::size_t group, Elem theta) const;

 private:
  SetAllocation allocation_;
  std::vector<CouplingGroup> groups_;
  std::vector<Slot> slots_;
};

CouplingPlan build_plan(int alpha, int beta, const ThetaSource& thetas);

/// Applies / inverts the plan on the alpha x beta block of `grid` starting at
/// column `col_offset`.
void apply_transform_at(const gf::Field& f, const CouplingPlan& plan, SymbolGrid& grid, int col_offset);
void invert_transform_at(const gf::Field& f, const CouplingPlan& plan, SymbolGrid& grid, int col_offset);

SymbolGrid apply_transform(const gf::Field& f, const CouplingPlan& plan, const SymbolGrid& src);
SymbolGrid invert_transform(const gf::Field& f, const CouplingPlan& plan, const SymbolGrid& dst);

/// Splits an alpha x beta array with beta >= 2*alpha into pieces of width in
/// [alpha, 2*alpha).
std::vector<SubArrayGeometry> split_wide(int alpha, int beta);

}  // namespace stcode
