#include <gtest/gtest.h>

#include <numeric>

#include "gwpower/burnside.hpp"

using namespace gwpower;

namespace
{

// Marks of X^(n) at H, counted from the H-orbits of X: a multiset is
// H-fixed iff it is a union of whole H-orbits.
std::int64_t sym_mark_oracle(const FiniteGroup& g, const GroupAction& x, FiniteGroup::Subgroup h, int n)
{
  auto acts = element_actions(g, x);
  std::vector<int> seen(static_cast<std::size_t>(x.size), 0);
  std::vector<std::int64_t> series(static_cast<std::size_t>(n) + 1, 0);
  series[0] = 1;
  for (int p = 0; p < x.size; ++p) {
    if (seen[static_cast<std::size_t>(p)])
      continue;
    std::vector<int> orbit{p};
    seen[static_cast<std::size_t>(p)] = 1;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (int e : g.members(h)) {
        int q = acts[static_cast<std::size_t>(e)][static_cast<std::size_t>(orbit[k])];
        if (!seen[static_cast<std::size_t>(q)]) {
          seen[static_cast<std::size_t>(q)] = 1;
          orbit.push_back(q);
        }
      }
    int len = static_cast<int>(orbit.size());
    for (int k = len; k <= n; ++k)
      series[static_cast<std::size_t>(k)] += series[static_cast<std::size_t>(k - len)];
  }
  return series[static_cast<std::size_t>(n)];
}

} // namespace

TEST(Groups, OrdersAndSubgroupClasses)
{
  struct Case
  {
    const char* name;
    int order;
    std::size_t classes;
  };
  for (const auto& c : {Case{"C1", 1, 1}, Case{"C4", 4, 3}, Case{"C6", 6, 4}, Case{"V4", 4, 5}, Case{"S3", 6, 4},
                        Case{"D4", 8, 8}, Case{"Q8", 8, 6}, Case{"C2^3", 8, 16}, Case{"A4", 12, 5},
                        Case{"D6", 12, 10}, Case{"C2xC4", 8, 8}}) {
    FiniteGroup g = named_group(c.name);
    EXPECT_EQ(g.order(), c.order) << c.name;
    EXPECT_EQ(g.subgroup_classes().size(), c.classes) << c.name;
  }
  EXPECT_THROW(named_group("S5"), std::invalid_argument);
}

TEST(Groups, OrderGuard)
{
  // S4 has order 24.
  EXPECT_THROW(FiniteGroup(4, {detail::cycle_perm(4, {{0, 1}}), detail::rotation(4)}), resource_error);
}

TEST(TableOfMarks, KleinFourGroup)
{
  FiniteGroup g = named_group("V4");
  TableOfMarks t = table_of_marks(g);
  ASSERT_EQ(t.classes.size(), 5u);
  std::vector<std::vector<std::int64_t>> expect{
      {4, 0, 0, 0, 0}, {2, 2, 0, 0, 0}, {2, 0, 2, 0, 0}, {2, 0, 0, 2, 0}, {1, 1, 1, 1, 1}};
  EXPECT_EQ(t.marks, expect);
}

TEST(TableOfMarks, SymmetricGroupS3)
{
  FiniteGroup g = named_group("S3");
  TableOfMarks t = table_of_marks(g);
  std::vector<std::vector<std::int64_t>> expect{{6, 0, 0, 0}, {3, 1, 0, 0}, {2, 0, 2, 0}, {1, 1, 1, 1}};
  EXPECT_EQ(t.marks, expect);
}

TEST(BurnsideRing, DecomposeAndRecompose)
{
  for (const auto& name : {"V4", "S3", "D4", "C6", "A4"}) {
    FiniteGroup g = named_group(name);
    GroupAction x = disjoint_union(regular_action(g), product(coset_action(g, g.subgroup_classes()[1]),
                                                              coset_action(g, g.subgroup_classes()[1])));
    BurnsideElement b = decompose_gset(g, x);
    EXPECT_EQ(mark_vector(g, recompose(g, b)), mark_vector(g, x)) << name;
    BurnsideElement reg = decompose_gset(g, regular_action(g));
    EXPECT_EQ(reg.coeffs.front(), 1);
    EXPECT_EQ(std::accumulate(reg.coeffs.begin(), reg.coeffs.end(), std::int64_t(0)), 1);
  }
}

TEST(BurnsideRing, SymmetricSeriesMarksMatchOrbitCounting)
{
  for (const auto& name : {"V4", "C4", "S3", "D4", "Q8"}) {
    FiniteGroup g = named_group(name);
    GroupAction x = regular_action(g);
    auto series = sym_series(g, x, 6);
    auto tom = table_of_marks(g);
    for (int n = 0; n <= 6; ++n) {
      auto marks = mark_vector(g, recompose(g, series[static_cast<std::size_t>(n)]));
      for (std::size_t j = 0; j < tom.classes.size(); ++j)
        EXPECT_EQ(marks[j], sym_mark_oracle(g, x, tom.classes[j], n)) << name << " n=" << n << " H" << j;
    }
  }
}

TEST(BurnsideRing, KleinClosedSeries)
{
  FiniteGroup g = named_group("V4");
  EXPECT_EQ(sym_series(g, regular_action(g), 12), klein_closed_series(12));
  auto s = klein_closed_series(4);
  EXPECT_EQ(s[4].coeffs, (std::vector<std::int64_t>{7, 1, 1, 1, 1}));
}

TEST(Actions, InconsistentActionsAreRejected)
{
  FiniteGroup g = named_group("C4");
  GroupAction bad{2, {{0, 0}}};
  EXPECT_THROW(element_actions(g, bad), std::invalid_argument);
  // A 3-cycle has order not dividing 4.
  GroupAction three{3, {{1, 2, 0}}};
  EXPECT_THROW(element_actions(g, three), std::invalid_argument);
}
