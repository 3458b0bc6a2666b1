#include <gtest/gtest.h>

#include <set>

#include "qmmp/rep_oracle.hpp"

using namespace qmmp;

namespace {

DimVector dv(std::vector<std::int64_t> e) { return DimVector(std::move(e)); }

FpMatrix mat(std::vector<std::vector<int>> rows, std::size_t cols) {
  FpMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = static_cast<std::uint8_t>(rows[i][j]);
  return m;
}

FiniteRep zero_rep(const Quiver& q, const DimVector& m, int p) {
  FiniteRep r{q, m, p, {}};
  for (const auto& a : q.arrows()) r.maps.emplace_back(static_cast<std::size_t>(m[a.target]), static_cast<std::size_t>(m[a.source]));
  return r;
}

// framing "0" with `a` arrows into base vertex "1"; optional loop at "1"
Quiver framed(int a, int b, int loops = 0) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int k = 0; k < a; ++k) e.emplace_back("0", "1");
  for (int k = 0; k < b; ++k) e.emplace_back("1", "0");
  for (int k = 0; k < loops; ++k) e.emplace_back("1", "1");
  return Quiver({"0", "1"}, e);
}

const Quiver kKronecker2({"1", "2"}, {{"1", "2"}, {"1", "2"}});
const Quiver kLoop({"v"}, {{"v", "v"}});

}  // namespace

TEST(Enumeration, Counts) {
  EXPECT_EQ(enumerate_reps(kKronecker2, dv({1, 1}), 2).size(), 4u);
  EXPECT_EQ(enumerate_reps(Quiver({"v"}, {}), dv({1}), 3).size(), 1u);
  EXPECT_EQ(enumerate_reps(kLoop, dv({2}), 2).size(), 16u);
  EXPECT_EQ(rep_count(kLoop, dv({2}), 3), 81u);
}

TEST(Enumeration, Budget) {
  EXPECT_THROW(enumerate_reps(kLoop, dv({3}), 3, 100), BudgetExceeded);
  EXPECT_THROW(enumerate_reps(kLoop, dv({1}), 4), InputError);
}

TEST(Enumeration, Distinct) {
  const auto reps = enumerate_reps(kLoop, dv({2}), 3);
  std::set<std::vector<std::uint8_t>> seen;
  for (const auto& r : reps) seen.insert(r.maps[0].data);
  EXPECT_EQ(seen.size(), 81u);
}

TEST(Subspaces, Counts) {
  EXPECT_EQ(all_subspaces(2, 2).size(), 5u);
  EXPECT_EQ(all_subspaces(3, 2).size(), 16u);
  EXPECT_EQ(all_subspaces(2, 3).size(), 6u);
  EXPECT_EQ(all_subspaces(0, 5).size(), 1u);
}

TEST(InvariantTuples, Kronecker) {
  for (const auto& r : enumerate_reps(kKronecker2, dv({1, 1}), 3)) {
    EXPECT_TRUE(has_invariant_tuple_with_dim(r, dv({0, 1})));
    EXPECT_FALSE(is_simple_abs(r));
  }
}

TEST(InvariantTuples, LoopWithEigenvalue) {
  FiniteRep r{kLoop, dv({2}), 2, {mat({{1, 1}, {0, 1}}, 2)}};
  EXPECT_TRUE(has_invariant_tuple_with_dim(r, dv({1})));
  const auto counts = invariant_subspace_tuples(r);
  EXPECT_EQ(counts.at(dv({1})), 1u);
  // x^2 + x + 1 has no root in F_2
  FiniteRep irr{kLoop, dv({2}), 2, {mat({{0, 1}, {1, 1}}, 2)}};
  EXPECT_FALSE(has_invariant_tuple_with_dim(irr, dv({1})));
  // but it is not absolutely simple: End is F_4
  EXPECT_EQ(endomorphism_dimension(irr), 2u);
  EXPECT_FALSE(is_simple_abs(irr));
}

TEST(InvariantTuples, ZeroRep) {
  const Quiver q({"1", "2"}, {{"1", "2"}, {"2", "1"}});
  const auto r = zero_rep(q, dv({1, 2}), 2);
  const auto counts = invariant_subspace_tuples(r);
  for (std::int64_t x = 0; x <= 1; ++x)
    for (std::int64_t y = 0; y <= 2; ++y) EXPECT_TRUE(counts.count(dv({x, y}))) << x << "," << y;
}

TEST(SimpleAbs, TwoCycleIdentity) {
  const Quiver q({"1", "2"}, {{"1", "2"}, {"2", "1"}});
  FiniteRep r{q, dv({1, 1}), 3, {mat({{1}}, 1), mat({{1}}, 1)}};
  EXPECT_TRUE(is_simple_abs(r));
  EXPECT_EQ(endomorphism_dimension(r), 1u);
}

TEST(SimpleAbs, ZeroRepNotSimple) {
  const Quiver q({"1", "2"}, {{"1", "2"}, {"2", "1"}});
  EXPECT_FALSE(is_simple_abs(zero_rep(q, dv({1, 1}), 2)));
  EXPECT_TRUE(is_simple_abs(zero_rep(q, dv({1, 0}), 2)));
}

TEST(StarPlus, SurjectiveFraming) {
  FiniteRep r{framed(2, 0), dv({1, 2}), 2, {mat({{1}, {0}}, 1), mat({{0}, {1}}, 1)}};
  EXPECT_TRUE(is_star_plus_stable(r, "0"));
  EXPECT_FALSE(is_star_plus_stable(zero_rep(framed(2, 0), dv({1, 2}), 2), "0"));
  FiniteRep one{framed(1, 0), dv({1, 1}), 3, {mat({{2}}, 1)}};
  EXPECT_TRUE(is_star_plus_stable(one, "0"));
}

TEST(StarPlus, GeneratedThroughLoop) {
  // one framing vector, the loop rotates it into the second direction
  FiniteRep r{framed(1, 0, 1), dv({1, 2}), 2, {mat({{1}, {0}}, 1), mat({{0, 0}, {1, 0}}, 2)}};
  const auto c = star_plus_closure(r, "0");
  EXPECT_TRUE(c.stable);
  EXPECT_EQ(c.iterations, 1u);
  FiniteRep stuck{framed(1, 0, 1), dv({1, 2}), 2, {mat({{1}, {0}}, 1), mat({{1, 0}, {0, 1}}, 2)}};
  EXPECT_FALSE(is_star_plus_stable(stuck, "0"));
}

TEST(StarMinus, Coframing) {
  FiniteRep r{framed(0, 2), dv({1, 2}), 2, {mat({{1, 0}}, 2), mat({{0, 1}}, 2)}};
  EXPECT_TRUE(is_star_minus_stable(r, "0"));
  EXPECT_FALSE(is_star_plus_stable(r, "0"));
  EXPECT_FALSE(is_star_minus_stable(zero_rep(framed(0, 2), dv({1, 2}), 2), "0"));
}

TEST(StarMinus, IsPlusOfDual) {
  for (const auto& r : enumerate_reps(framed(1, 1, 1), dv({1, 2}), 2))
    EXPECT_EQ(is_star_minus_stable(r, "0"), is_star_plus_stable(dual_rep(r), "0"));
}

TEST(BaseChange, PreservesEndomorphismsAndSimplicity) {
  std::mt19937_64 rng(5);
  const Quiver q({"1", "2"}, {{"1", "2"}, {"2", "1"}, {"1", "1"}});
  for (const auto& r : enumerate_reps(q, dv({1, 2}), 2)) {
    const auto g = random_base_change(r, rng);
    EXPECT_EQ(endomorphism_dimension(r), endomorphism_dimension(g));
    EXPECT_EQ(is_simple_abs(r), is_simple_abs(g));
  }
}

TEST(Matrices, InverseAndRank) {
  const auto a = mat({{1, 2}, {0, 1}}, 2);
  const auto inv = inverse(a, 3);
  ASSERT_TRUE(inv);
  EXPECT_EQ(mat_mul(a, *inv, 3).data, identity(2).data);
  EXPECT_FALSE(inverse(mat({{1, 1}, {1, 1}}, 2), 2));
  auto s = mat({{1, 1}, {2, 2}}, 2);
  EXPECT_EQ(rref(s, 3), 1u);
}
