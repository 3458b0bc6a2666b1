#include <gtest/gtest.h>

#include "generators.hpp"
#include "qmmp/classifier.hpp"
#include "qmmp/quiver.hpp"

using namespace qmmp;

namespace {

using Edges = std::vector<std::pair<VertexId, VertexId>>;

Quiver kronecker(int arrows) { return Quiver({"1", "2"}, Edges(static_cast<std::size_t>(arrows), {"1", "2"})); }

DimVector dv(std::vector<std::int64_t> e) { return DimVector(std::move(e)); }

// Straight from the definition: sum_i m_i m2_i - sum over arrows m_s m2_t.
std::int64_t euler_by_edges(const Quiver& q, const DimVector& m, const DimVector& m2) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < q.size(); ++i) s += m[i] * m2[i];
  for (const auto& [src, dst] : q.edge_list()) s -= m[q.index_of(src)] * m2[q.index_of(dst)];
  return s;
}

Quiver two_vertex_symmetric(int each_way, int loops1, int loops2) {
  Edges e;
  for (int k = 0; k < each_way; ++k) {
    e.emplace_back("1", "2");
    e.emplace_back("2", "1");
  }
  for (int k = 0; k < loops1; ++k) e.emplace_back("1", "1");
  for (int k = 0; k < loops2; ++k) e.emplace_back("2", "2");
  return Quiver({"1", "2"}, e);
}

}  // namespace

TEST(Quiver, CanonicalOrderIgnoresInputOrder) {
  const Quiver a({"b", "a"}, {{"b", "a"}, {"a", "b"}, {"a", "a"}});
  const Quiver b({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "a"}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.vertices(), (std::vector<VertexId>{"a", "b"}));
  EXPECT_EQ(a.edge_count(0, 0), 1);
  EXPECT_EQ(a.edge_count(0, 1), 1);
}

TEST(Quiver, RejectsBadInput) {
  EXPECT_THROW(Quiver({"a", "a"}, {}), InputError);
  EXPECT_THROW(Quiver({"a"}, {{"a", "z"}}), InputError);
  EXPECT_THROW(DimVector({1, -1}), InputError);
  EXPECT_THROW(euler_pairing(kronecker(1), dv({1}), dv({1, 1})), InputError);
}

TEST(EulerPairing, Kronecker3) { EXPECT_EQ(euler_pairing(kronecker(3), dv({1, 1}), dv({1, 1})), -1); }

TEST(EulerPairing, ZeroArgument) {
  const Quiver q = two_vertex_symmetric(2, 3, 2);
  EXPECT_EQ(euler_pairing(q, dv({3, 5}), dv({0, 0})), 0);
  EXPECT_EQ(euler_pairing(q, dv({0, 0}), dv({3, 5})), 0);
}

TEST(EulerPairing, SymmetricWithLoops) {
  const Quiver q = two_vertex_symmetric(2, 3, 2);
  EXPECT_EQ(euler_by_edges(q, dv({1, 1}), dv({1, 1})), -7);
  EXPECT_EQ(euler_pairing(q, dv({1, 1}), dv({1, 1})), -7);
}

TEST(EulerPairing, AgreesWithEdgeSum) {
  testgen::Rng rng(11);
  for (int c = 0; c < 200; ++c) {
    const auto n = static_cast<std::size_t>(testgen::uniform(rng, 1, 4));
    const Quiver q = testgen::random_quiver(rng, n, 3, 2);
    const auto m = testgen::random_dim(rng, n, 4, false), m2 = testgen::random_dim(rng, n, 4, false);
    ASSERT_EQ(euler_pairing(q, m, m2), euler_by_edges(q, m, m2));
  }
}

TEST(DualQuiver, ReversesArrows) {
  const Quiver d = dual_quiver(kronecker(3));
  EXPECT_EQ(d.edge_count(1, 0), 3);
  EXPECT_EQ(d.edge_count(0, 1), 0);
  const Quiver s = two_vertex_symmetric(2, 3, 2);
  EXPECT_EQ(dual_quiver(s), s);
  const Quiver cyc({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"3", "1"}});
  EXPECT_EQ(dual_quiver(cyc), Quiver({"1", "2", "3"}, {{"2", "1"}, {"3", "2"}, {"1", "3"}}));
}

TEST(Symmetry, Examples) {
  EXPECT_TRUE(is_symmetric(Quiver({"1", "2"}, {{"1", "2"}, {"2", "1"}})));
  EXPECT_FALSE(is_symmetric(kronecker(2)));
  const ExtendedQuiverSpec spec{Quiver({"1"}, {}), {2}, {1}, 0, "0"};
  EXPECT_FALSE(is_symmetric(build_extended(spec)));
}

TEST(SupportSubquiver, Examples) {
  const Quiver q({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"3", "1"}, {"2", "2"}});
  EXPECT_EQ(support_subquiver(q, dv({1, 1, 0})), Quiver({"1", "2"}, {{"1", "2"}, {"2", "2"}}));
  EXPECT_EQ(support_subquiver(q, dv({1, 2, 1})), q);
  EXPECT_EQ(support_subquiver(q, dv({0, 1, 0})), Quiver({"2"}, {{"2", "2"}}));
}

TEST(StrongConnectivity, Examples) {
  EXPECT_TRUE(is_strongly_connected(Quiver({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"3", "1"}})));
  EXPECT_FALSE(is_strongly_connected(kronecker(1)));
  EXPECT_TRUE(is_strongly_connected(Quiver({"v"}, {{"v", "v"}})));
  const auto bad = unreachable_pair(kronecker(2));
  ASSERT_TRUE(bad);
  EXPECT_EQ(*bad, (std::pair<std::size_t, std::size_t>{1, 0}));
}

TEST(TrivialType, Examples) {
  EXPECT_EQ(trivial_type_of(Quiver({"v"}, {})).kind, TrivialType::Kind::A1);
  const auto two_cycle = trivial_type_of(Quiver({"1", "2"}, {{"1", "2"}, {"2", "1"}}));
  EXPECT_EQ(two_cycle.kind, TrivialType::Kind::TildeAn);
  EXPECT_EQ(two_cycle.n, 2u);
  EXPECT_EQ(trivial_type_of(Quiver({"v"}, {{"v", "v"}, {"v", "v"}})).kind, TrivialType::Kind::Other);
  const auto one_loop = trivial_type_of(Quiver({"v"}, {{"v", "v"}}));
  EXPECT_EQ(one_loop.kind, TrivialType::Kind::TildeAn);
  EXPECT_EQ(one_loop.n, 1u);
  // a chord spoils the cycle
  EXPECT_EQ(trivial_type_of(Quiver({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"3", "1"}, {"1", "3"}})).kind,
            TrivialType::Kind::Other);
  EXPECT_EQ(detect_trivial_type(Quiver({"1", "2", "3"}, {{"1", "2"}, {"2", "1"}, {"2", "3"}}), dv({1, 1, 0})).kind,
            TrivialType::Kind::TildeAn);
}

TEST(CanonicalCharacter, Examples) {
  EXPECT_EQ(canonical_character(two_vertex_symmetric(2, 1, 0)), (std::vector<std::int64_t>{0, 0}));
  EXPECT_EQ(canonical_character(kronecker(3)), (std::vector<std::int64_t>{3, -3}));
  // Q* with a = (4), b = (2): kappa_1 = b - a, kappa_0 = a - b.
  const Quiver qs = build_extended({Quiver({"1"}, {}), {4}, {2}, 0, "0"});
  EXPECT_EQ(canonical_character(qs), (std::vector<std::int64_t>{2, -2}));
}

TEST(ExpectedStableDim, Examples) {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int l1 = 0; l1 <= 2; ++l1)
        for (int l2 = 0; l2 <= 2; ++l2) {
          Edges e;
          for (int k = 0; k < a; ++k) e.emplace_back("1", "2");
          for (int k = 0; k < b; ++k) e.emplace_back("2", "1");
          for (int k = 0; k < l1; ++k) e.emplace_back("1", "1");
          for (int k = 0; k < l2; ++k) e.emplace_back("2", "2");
          EXPECT_EQ(expected_stable_dim(Quiver({"1", "2"}, e), dv({1, 1})), a + b + l1 + l2 - 1);
        }
  EXPECT_EQ(expected_stable_dim(Quiver({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"3", "1"}}), dv({1, 1, 1})), 1);
  EXPECT_EQ(expected_stable_dim(Quiver({"v"}, {}), dv({1})), 0);
}
