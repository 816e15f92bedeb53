#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "stcode/set_transform.hpp"

using namespace stcode;

namespace {

ThetaSource random_thetas(std::mt19937_64& rng, int w) {
  return [&rng, w] {
    std::uniform_int_distribution<std::uint32_t> d(2, (1u << w) - 1);
    return Elem(d(rng));
  };
}

// Cells of set R(i,j) written out from the allocation rule.
std::vector<Cell> oracle_set(int alpha, int beta, int i, int j) {
  const int a = 2 * alpha - beta;
  if (j < a) return {{i, j}};
  return {{i, 2 * j - a}, {i, 2 * j - a + 1}};
}

// Transform written directly from the coupling equations; coefficients are
// looked up through the plan by the cell they couple.
SymbolGrid oracle_transform(const CouplingPlan& plan, const SymbolGrid& b, std::uint32_t poly, int w) {
  const int alpha = plan.geometry().alpha(), beta = plan.geometry().beta();
  const int a = 2 * alpha - beta;
  auto mul = [&](std::uint32_t x, std::uint32_t y) { return oracle::gf_mul(x, y, poly, w); };
  SymbolGrid x = b;
  for (int i = 0; i < alpha; ++i) {
    for (int j = i + 1; j < alpha; ++j) {
      const auto up = oracle_set(alpha, beta, i, j), lo = oracle_set(alpha, beta, j, i);
      if (j < a) {
        const Cell u = up[0], v = lo[0];
        const auto th = plan.group_of(u).theta;
        x[u] = Elem(b[u] ^ b[v]);
        x[v] = Elem(mul(th, b[u]) ^ b[v]);
      } else if (i < a) {
        const Cell c1 = up[0], c2 = up[1], c3 = lo[0];
        const auto th = plan.group_of(c1).theta;
        x[c1] = Elem(b[c1] ^ b[c3]);
        x[c2] = b[c2];
        x[c3] = Elem(mul(th, b[c1] ^ b[c2]) ^ b[c3]);
      } else {
        for (int m = 0; m < 2; ++m) {
          const Cell u = up[m], v = lo[m];
          const auto th = plan.group_of(u).theta;
          x[u] = Elem(b[u] ^ b[v]);
          x[v] = Elem(mul(th, b[u]) ^ b[v]);
        }
      }
    }
  }
  return x;
}

const std::vector<std::pair<int, int>> kGeometries = {{2, 2}, {3, 3}, {3, 4}, {3, 5}, {4, 6}, {4, 7}};

}  // namespace

TEST(SetTransform, GeometryRegions) {
  SubArrayGeometry g(3, 5);  // a = 1, e = 2
  EXPECT_EQ(g.square(), 1);
  EXPECT_EQ(g.extra(), 2);
  EXPECT_EQ(g.region({0, 0}), Region::A);
  EXPECT_EQ(g.region({0, 3}), Region::B1);
  EXPECT_EQ(g.region({2, 0}), Region::B2);
  EXPECT_EQ(g.region({2, 4}), Region::C);
  EXPECT_THROW(SubArrayGeometry(3, 6), GeometryError);
  EXPECT_THROW(SubArrayGeometry(3, 2), GeometryError);
  EXPECT_THROW(SubArrayGeometry(0, 0), GeometryError);
}

TEST(SetTransform, SetsPartitionEveryRow) {
  for (auto [alpha, beta] : kGeometries) {
    const SetAllocation alloc = allocate_sets(alpha, beta);
    const int a = 2 * alpha - beta, e = beta - alpha;
    EXPECT_EQ(alloc.singleton_count(), std::size_t(alpha * a));
    EXPECT_EQ(alloc.pair_count(), std::size_t(alpha * e));
    for (int i = 0; i < alpha; ++i) {
      std::set<int> cols;
      for (int j = 0; j < alpha; ++j) {
        EXPECT_EQ(alloc.set(i, j), oracle_set(alpha, beta, i, j));
        for (const Cell c : alloc.set(i, j)) {
          EXPECT_EQ(c.row, i);
          EXPECT_EQ(alloc.geometry().set_index_of_column(c.col), j);
          cols.insert(c.col);
        }
      }
      EXPECT_EQ(cols.size(), std::size_t(beta));
    }
  }
}

TEST(SetTransform, GroupCountsAndCoverage) {
  std::mt19937_64 rng(1);
  for (auto [alpha, beta] : kGeometries) {
    const CouplingPlan plan = build_plan(alpha, beta, random_thetas(rng, 8));
    const int a = 2 * alpha - beta, e = beta - alpha;
    EXPECT_EQ(plan.count(GroupKind::Identity), std::size_t(alpha));
    EXPECT_EQ(plan.count(GroupKind::Triple), std::size_t(a * e));
    EXPECT_EQ(plan.count(GroupKind::Pair), std::size_t(a * (a - 1) / 2 + e * (e - 1)));
    std::map<Cell, int> seen;
    for (std::size_t g = 0; g < plan.groups().size(); ++g) {
      const auto& grp = plan.groups()[g];
      for (std::size_t m = 0; m < grp.members.size(); ++m) {
        ++seen[grp.members[m]];
        EXPECT_EQ(plan.slot(grp.members[m]).group, g);
        EXPECT_EQ(plan.slot(grp.members[m]).member, m);
      }
      if (grp.kind != GroupKind::Identity) {
        EXPECT_GE(grp.theta, 2);
      }
    }
    EXPECT_EQ(seen.size(), std::size_t(alpha * beta));
    for (const auto& [cell, n] : seen) EXPECT_EQ(n, 1);
  }
}

TEST(SetTransform, MatchesDirectEquations) {
  std::mt19937_64 rng(2);
  for (int w : {8, 16}) {
    const std::uint32_t poly = gf::FieldSpec::standard(w).modulus;
    const auto f = gf::Field::standard(w);
    for (auto [alpha, beta] : kGeometries) {
      const CouplingPlan plan = build_plan(alpha, beta, random_thetas(rng, w));
      for (int t = 0; t < 50; ++t) {
        SymbolGrid b(alpha, beta, oracle::random_symbols(rng, std::size_t(alpha) * beta, w));
        ASSERT_EQ(apply_transform(*f, plan, b), oracle_transform(plan, b, poly, w));
      }
    }
  }
}

TEST(SetTransform, SquareCaseIsBaseCoupling) {
  std::mt19937_64 rng(3);
  const auto f = gf::Field::standard(8);
  for (int alpha : {2, 3, 4, 5}) {
    const CouplingPlan plan = build_plan(alpha, alpha, random_thetas(rng, 8));
    std::vector<std::uint32_t> thetas;
    for (int i = 0; i < alpha; ++i)
      for (int j = i + 1; j < alpha; ++j) thetas.push_back(plan.group_of({i, j}).theta);
    for (int t = 0; t < 100; ++t) {
      SymbolGrid b(alpha, alpha, oracle::random_symbols(rng, std::size_t(alpha) * alpha, 8));
      ASSERT_EQ(apply_transform(*f, plan, b), oracle::couple_square(b, thetas, 0x11D, 8));
    }
  }
}

TEST(SetTransform, InverseAndLinearity) {
  std::mt19937_64 rng(4);
  const auto f = gf::Field::standard(8);
  for (auto [alpha, beta] : kGeometries) {
    const CouplingPlan plan = build_plan(alpha, beta, random_thetas(rng, 8));
    const std::size_t cells = std::size_t(alpha) * beta;
    for (int t = 0; t < 1000; ++t) {
      SymbolGrid x(alpha, beta, oracle::random_symbols(rng, cells, 8));
      SymbolGrid y(alpha, beta, oracle::random_symbols(rng, cells, 8));
      const Elem c = oracle::random_symbols(rng, 1, 8)[0];
      const SymbolGrid tx = apply_transform(*f, plan, x);
      ASSERT_EQ(invert_transform(*f, plan, tx), x);
      SymbolGrid comb(alpha, beta);
      for (int r = 0; r < alpha; ++r)
        for (int col = 0; col < beta; ++col) comb.at(r, col) = Elem(f->mul(c, x.at(r, col)) ^ y.at(r, col));
      const SymbolGrid ty = apply_transform(*f, plan, y);
      const SymbolGrid tc = apply_transform(*f, plan, comb);
      for (int r = 0; r < alpha; ++r)
        for (int col = 0; col < beta; ++col) ASSERT_EQ(tc.at(r, col), Elem(f->mul(c, tx.at(r, col)) ^ ty.at(r, col)));
    }
  }
}

TEST(SetTransform, OriginalSymbolsUnchanged) {
  std::mt19937_64 rng(5);
  const auto f = gf::Field::standard(8);
  for (auto [alpha, beta] : kGeometries) {
    const CouplingPlan plan = build_plan(alpha, beta, random_thetas(rng, 8));
    SymbolGrid b(alpha, beta, oracle::random_symbols(rng, std::size_t(alpha) * beta, 8));
    const SymbolGrid x = apply_transform(*f, plan, b);
    for (const auto& g : plan.groups())
      for (std::size_t m = 0; m < g.members.size(); ++m)
        if (g.is_original(m)) EXPECT_EQ(x[g.members[m]], b[g.members[m]]);
  }
}

TEST(SetTransform, ThetaDomain) {
  const ThetaSource one = [] { return Elem(1); };
  const ThetaSource zero = [] { return Elem(0); };
  EXPECT_THROW(build_plan(3, 4, one), ThetaDomainError);
  EXPECT_THROW(build_plan(2, 2, zero), ThetaDomainError);
  // A 1x1 array has nothing to couple, so no coefficient is drawn.
  EXPECT_NO_THROW(build_plan(1, 1, zero));
}

TEST(SetTransform, UnitThetaMakesPairSingular) {
  const auto f = gf::Field::standard(8);
  const CouplingPlan plan = build_plan(2, 2, [] { return Elem(5); });
  std::size_t pair = 0;
  while (plan.groups()[pair].kind != GroupKind::Pair) ++pair;
  const CouplingPlan bad = plan.with_theta_unchecked(pair, 1);
  EXPECT_EQ(gf::rank(*f, bad.groups()[pair].forward_matrix()), 1u);
  SymbolGrid x(2, 2, {1, 2, 3, 4});
  EXPECT_THROW(invert_transform(*f, bad, x), SingularMatrixError);
}

TEST(SetTransform, SplitWide) {
  for (int alpha = 2; alpha <= 5; ++alpha) {
    for (int beta = 2 * alpha; beta <= 6 * alpha; ++beta) {
      const auto parts = split_wide(alpha, beta);
      int total = 0;
      for (const auto& g : parts) {
        EXPECT_GE(g.beta(), alpha);
        EXPECT_LT(g.beta(), 2 * alpha);
        total += g.beta();
      }
      EXPECT_EQ(total, beta);
    }
  }
}
