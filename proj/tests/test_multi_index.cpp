#include "goursat/multi_index.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace goursat;

TEST(MultiIndex, SlotsRoundTrip) {
    std::set<int> seen;
    for (const MultiIndex& i : all_indices()) {
        EXPECT_EQ(MultiIndex::from_slot(i.slot()), i);
        EXPECT_LE(i.total(), 6);
        seen.insert(i.slot());
    }
    EXPECT_EQ(seen.size(), 36u);
}

TEST(MultiIndex, ExactlyOneDominant) {
    int count = 0;
    for (const MultiIndex& i : all_indices()) count += i.is_dominant() ? 1 : 0;
    EXPECT_EQ(count, 1);
    EXPECT_EQ(MultiIndex::dominant(), MultiIndex(1, 1, 2, 2));
    EXPECT_EQ(MultiIndex::dominant().slot(), 35);
}

TEST(MultiIndex, ComponentDimensions) {
    int by_dim[5] = {};
    for (const MultiIndex& i : all_indices()) ++by_dim[i.full_axes().size()];
    EXPECT_EQ(by_dim[0], 4);
    EXPECT_EQ(by_dim[1], 12);
    EXPECT_EQ(by_dim[2], 13);
    EXPECT_EQ(by_dim[3], 6);
    EXPECT_EQ(by_dim[4], 1);
    EXPECT_EQ(MultiIndex(1, 0, 1, 1).full_axes(), AxisSet{0});
    EXPECT_EQ(MultiIndex(0, 0, 0, 0).full_axes(), AxisSet{});
}

TEST(MultiIndex, ParseAndValidate) {
    EXPECT_EQ(MultiIndex::parse("1,0,2,1"), MultiIndex(1, 0, 2, 1));
    EXPECT_EQ(MultiIndex::parse(" 0, 1 ,1,2"), MultiIndex(0, 1, 1, 2));
    EXPECT_EQ(MultiIndex(0, 1, 1, 2).name(), "0,1,1,2");
    EXPECT_THROW(MultiIndex::parse("1,0,2"), std::invalid_argument);
    EXPECT_THROW(MultiIndex::parse("1,0,2,x"), std::invalid_argument);
    EXPECT_THROW(MultiIndex(2, 0, 0, 0), std::invalid_argument);
    EXPECT_THROW(MultiIndex(0, 0, 3, 0), std::invalid_argument);
    EXPECT_THROW(MultiIndex(0, -1, 0, 0), std::invalid_argument);
}

TEST(EVector, ComponentsHaveTheirAxes) {
    const Grid4 g = unit_grid(3);
    EVector v(g);
    for (const MultiIndex& i : all_indices()) EXPECT_EQ(v[i].axes(), i.full_axes());
    EXPECT_THROW(v.set(MultiIndex(1, 0, 0, 0), Field(g, AxisSet{1})), std::invalid_argument);
    EXPECT_THROW(v.set(MultiIndex(1, 0, 0, 0), Field(unit_grid(4), AxisSet{0})), std::invalid_argument);
    v.set(MultiIndex::dominant(), Field::constant(g, AxisSet::all(), 3.0));
    EXPECT_EQ(v.boundary_part()[MultiIndex::dominant()].max_abs(), 0.0);
}
