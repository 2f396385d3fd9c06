#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace quiversp;
using quiversp::testing::five_node_quiver;

TEST(Quiver, FiveNodeQuiverHasEightArrows) {
  const Quiver q = five_node_quiver();
  EXPECT_EQ(q.node_count(), 5u);
  EXPECT_EQ(q.arrow_count(), 8u);
  EXPECT_EQ(q.node_id(q.tail(q.arrow_index("a35"))), "3");
  EXPECT_EQ(q.node_id(q.head(q.arrow_index("a35"))), "5");
  // construction order is preserved
  EXPECT_EQ(q.arrow(2).id, "a22");
}

TEST(Quiver, SingleNodeHasOnlyTrivialPath) {
  const Quiver q({"1"}, {});
  const auto paths = enumerate_paths(q, 4);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_TRUE(paths[0].is_trivial());
  EXPECT_EQ(paths[0].head(), 0u);
}

TEST(Quiver, RejectsUnknownEndpointAndDuplicates) {
  EXPECT_THROW(Quiver({"1", "2", "3", "4", "5"}, {{"a17", "1", "7"}}), ValidationError);
  EXPECT_THROW(Quiver({"1", "1"}, {}), ValidationError);
  EXPECT_THROW(Quiver({"1", "2"}, {{"a", "1", "2"}, {"a", "2", "1"}}), ValidationError);
}

TEST(Quiver, ParallelArrowsAndLoopsAreAllowed) {
  const Quiver q({"1", "2"}, {{"x", "1", "2"}, {"y", "1", "2"}, {"l", "2", "2"}});
  EXPECT_EQ(q.arrow_count(), 3u);
  EXPECT_EQ(enumerate_paths(q, 2).size(), 2u + 3u + 3u);  // x,y,l; l∘x, l∘y, l∘l
}

TEST(Path, ConcatComposesWhenEndpointsMatch) {
  const Quiver q = five_node_quiver();
  const Path a12 = Path::arrow(q, "a12");
  const Path a23 = Path::arrow(q, "a23");

  auto p = concat(a23, a12);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->length(), 2u);
  EXPECT_EQ(q.node_id(p->tail()), "1");
  EXPECT_EQ(q.node_id(p->head()), "3");
  EXPECT_EQ(p->arrow_ids(), (std::vector<std::string>{"a12", "a23"}));

  EXPECT_EQ(concat(Path::trivial(q, "2"), a12), a12);
  EXPECT_EQ(concat(a12, Path::trivial(q, "1")), a12);
  EXPECT_FALSE(concat(a12, a23));
  EXPECT_FALSE(concat(Path::trivial(q, "1"), Path::trivial(q, "2")));
}

TEST(Path, RejectsNonComposableArrowsAndForeignQuivers) {
  const Quiver q = five_node_quiver();
  EXPECT_THROW(Path::from_ids(q, {"a23", "a12"}), ValidationError);
  EXPECT_THROW(Path::from_ids(q, {"a13"}), ValidationError);
  const Quiver other({"1", "2"}, {{"a12", "1", "2"}});
  EXPECT_THROW(concat(Path::arrow(q, "a12"), Path::trivial(other, "2")), QuiverMismatch);
}

TEST(Path, HeadTailBookkeepingAndAssociativity) {
  const Quiver q = five_node_quiver();
  const auto paths = enumerate_paths(q, 3);
  std::size_t triples = 0;
  for (const auto& p1 : paths) {
    for (const auto& p2 : paths) {
      auto p21 = concat(p2, p1);
      if (p21) {
        EXPECT_EQ(p21->head(), p2.head());
        EXPECT_EQ(p21->tail(), p1.tail());
        EXPECT_EQ(p21->length(), p1.length() + p2.length());
      }
      if (p1.length() + p2.length() > 3) continue;
      for (const auto& p3 : paths) {
        if (p1.length() + p2.length() + p3.length() > 3) continue;
        auto left = p21 ? concat(p3, *p21) : std::nullopt;
        auto p32 = concat(p3, p2);
        auto right = p32 ? concat(*p32, p1) : std::nullopt;
        ASSERT_EQ(left.has_value(), right.has_value());
        if (left) {
          EXPECT_EQ(*left, *right);
          ++triples;
        }
      }
    }
  }
  EXPECT_GT(triples, 0u);
}

TEST(EnumeratePaths, CountsOnFiveNodeQuiver) {
  const Quiver q = five_node_quiver();
  EXPECT_EQ(enumerate_paths(q, 0).size(), 5u);
  EXPECT_EQ(enumerate_paths(q, 1).size(), 13u);

  // Oracle: every ordered arrow pair (first, second) with t(second) = h(first).
  std::size_t pairs = 0;
  for (std::size_t a1 = 0; a1 < q.arrow_count(); ++a1) {
    for (std::size_t a2 = 0; a2 < q.arrow_count(); ++a2) {
      if (q.tail(a2) == q.head(a1)) ++pairs;
    }
  }
  EXPECT_EQ(pairs, 13u);  // hand count: 2+2+2+2+1+2+1+1
  EXPECT_EQ(enumerate_paths(q, 2).size(), 13u + pairs);
}

TEST(EnumeratePaths, OrderIsCanonicalAndPrefixStable) {
  const Quiver q = five_node_quiver();
  for (std::size_t len = 1; len <= 4; ++len) {
    const auto longer = enumerate_paths(q, len);
    const auto shorter = enumerate_paths(q, len - 1);
    EXPECT_TRUE(std::is_sorted(longer.begin(), longer.end()));
    std::vector<Path> restricted;
    for (const auto& p : longer) {
      if (p.length() <= len - 1) restricted.push_back(p);
    }
    EXPECT_EQ(restricted, shorter);
  }
}

TEST(IsAcyclic, DetectsLoopsAndCycles) {
  EXPECT_FALSE(is_acyclic(five_node_quiver()));
  EXPECT_TRUE(is_acyclic(make_chain(3)));
  EXPECT_FALSE(is_acyclic(Quiver({"1", "2"}, {{"x", "1", "2"}, {"y", "2", "1"}})));
  EXPECT_FALSE(is_acyclic(Quiver({"1"}, {{"l", "1", "1"}})));
  EXPECT_TRUE(is_acyclic(Quiver({"1"}, {})));
}

TEST(ChainOrder, RecognizesEquiorientedChains) {
  EXPECT_TRUE(chain_order(make_chain(4)));
  // Same chain listed out of order.
  const Quiver shuffled({"c", "a", "b"}, {{"y", "b", "c"}, {"x", "a", "b"}});
  auto order = chain_order(shuffled);
  ASSERT_TRUE(order);
  EXPECT_EQ(order->nodes, (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_FALSE(chain_order(Quiver({"1", "2", "3"}, {{"x", "1", "2"}, {"y", "3", "2"}})));
  EXPECT_FALSE(chain_order(five_node_quiver()));
}
