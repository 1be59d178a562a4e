#include <gtest/gtest.h>

#include <set>

#include <av1324/domino.hpp>
#include <av1324/genfun.hpp>

#include "oracles.hpp"

using namespace av1324;

namespace {

std::vector<Permutation> primitives(int n) {
    std::vector<Permutation> out;
    for_each_classified(n, [&](std::span<const int> w, PositionalClass c) {
        if (c.a == 1 && c.k == 1) out.emplace_back(std::vector<int>(w.begin(), w.end()));
    });
    return out;
}

} // namespace

TEST(ToDomino, Examples) {
    const GriddedDomino empty = to_domino(parse_permutation("12"));
    EXPECT_EQ(empty.points(), 0u);
    EXPECT_EQ(to_string(empty), "B:|T:|cols:");

    const GriddedDomino d = to_domino(parse_permutation("2143"));
    EXPECT_EQ(to_string(d), "B:1|T:1|cols:bt");
    EXPECT_EQ(from_domino(d), parse_permutation("2143"));
    EXPECT_THROW(to_domino(parse_permutation("1234")), std::domain_error);
}

TEST(ToDomino, SixDistinctImagesAtSizeFour) {
    std::set<GriddedDomino> image;
    for (const auto& p : primitives(4)) image.insert(to_domino(p));
    EXPECT_EQ(image.size(), 6u);
}

TEST(FromDomino, EmptyIsTwelve) {
    EXPECT_EQ(from_domino(GriddedDomino{}), parse_permutation("12"));
}

TEST(FromDomino, RejectsInvalidDominoes) {
    // Bottom cell word contains 132.
    GriddedDomino bad{{Cell::bottom, Cell::bottom, Cell::bottom}, parse_permutation("132"), {}};
    EXPECT_THROW(from_domino(bad), std::domain_error);
    // Top cell word contains 213.
    GriddedDomino bad_top{{Cell::top, Cell::top, Cell::top}, {}, parse_permutation("213")};
    EXPECT_THROW(from_domino(bad_top), std::domain_error);
    // Cells fine, underlying permutation 1324.
    GriddedDomino bad_underlying{{Cell::bottom, Cell::top, Cell::bottom, Cell::top},
                                 parse_permutation("12"), parse_permutation("12")};
    EXPECT_EQ(bad_underlying.underlying(), (std::vector<int>{1, 3, 2, 4}));
    EXPECT_THROW(from_domino(bad_underlying), std::domain_error);
    // Tag count mismatch.
    GriddedDomino mismatch{{Cell::bottom}, {}, parse_permutation("1")};
    EXPECT_THROW(from_domino(mismatch), std::domain_error);
}

TEST(EnumerateDominoes, Counts) {
    const std::vector<std::size_t> expected{1, 2, 6, 22, 91, 408};
    for (int p = 0; p < static_cast<int>(expected.size()); ++p)
        EXPECT_EQ(enumerate_dominoes(p).size(), expected[p]) << "p=" << p;
}

TEST(EnumerateDominoes, CountLawMatchesClosedForm) {
    for (int p = 0; p <= 8; ++p)
        EXPECT_EQ(BigInt(enumerate_dominoes(p).size()), primitive_count(p + 2)) << "p=" << p;
}

TEST(EnumerateDominoes, EveryOutputIsValidAndDistinct) {
    for (int p = 0; p <= 6; ++p) {
        const auto all = enumerate_dominoes(p);
        std::set<GriddedDomino> uniq(all.begin(), all.end());
        EXPECT_EQ(uniq.size(), all.size());
        for (const auto& d : all) {
            ASSERT_TRUE(oracle::reduce(d.underlying()).size() == static_cast<std::size_t>(p));
            ASSERT_FALSE(oracle::contains(d.underlying(), {1, 3, 2, 4}));
            ASSERT_FALSE(oracle::contains(d.bottom.values(), {1, 3, 2}));
            ASSERT_FALSE(oracle::contains(d.top.values(), {2, 1, 3}));
        }
    }
}

TEST(Bijection, ImageEqualsEnumerationAndRoundTrips) {
    for (int p = 0; p <= 6; ++p) {
        std::set<GriddedDomino> image;
        for (const auto& prim : primitives(p + 2)) {
            const GriddedDomino d = to_domino(prim);
            ASSERT_EQ(from_domino(d), prim);
            image.insert(d);
        }
        const auto all = enumerate_dominoes(p);
        EXPECT_EQ(image, std::set<GriddedDomino>(all.begin(), all.end())) << "p=" << p;
        for (const auto& d : all) ASSERT_EQ(to_domino(from_domino(d)), d);
    }
}

TEST(Text, DominoRoundTrip) {
    for (const auto& d : enumerate_dominoes(4)) EXPECT_EQ(parse_domino(to_string(d)), d);
    EXPECT_THROW(parse_domino("B:1|T:1"), std::invalid_argument);
    EXPECT_THROW(parse_domino("B:1|T:1|cols:bx"), std::invalid_argument);
}
