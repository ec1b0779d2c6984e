#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace segcrawl;
using segcrawl::testing::make_dataset;

namespace {

std::vector<std::size_t> sizes_of(const std::vector<Segment>& segments) {
    std::vector<std::size_t> out;
    for (const auto& s : segments) out.push_back(s.size());
    return out;
}

}  // namespace

TEST(PartitionTest, EqualDivision) {
    const auto segments = partition(make_dataset(500), 10);
    ASSERT_EQ(segments.size(), 10u);
    for (const auto& s : segments) EXPECT_EQ(s.size(), 50u);
}

TEST(PartitionTest, RemainderGoesToLowestSegments) {
    const auto dataset = make_dataset(10);
    const auto segments = partition(dataset, 3);
    EXPECT_EQ(sizes_of(segments), (std::vector<std::size_t>{4, 3, 3}));
    EXPECT_EQ(segments[0].entries.front().index, 0u);
    EXPECT_EQ(segments[1].entries.front().index, 4u);
    EXPECT_EQ(segments[2].entries.front().index, 7u);
}

TEST(PartitionTest, SingleSegmentIsIdentity) {
    const auto dataset = make_dataset(17);
    const auto segments = partition(dataset, 1);
    ASSERT_EQ(segments.size(), 1u);
    EXPECT_EQ(segments[0].entries, dataset.entries());
}

TEST(PartitionTest, MoreSegmentsThanUrlsLeavesEmptyTail) {
    const auto segments = partition(make_dataset(3), 5);
    EXPECT_EQ(sizes_of(segments), (std::vector<std::size_t>{1, 1, 1, 0, 0}));
    for (std::size_t i = 0; i < segments.size(); ++i) EXPECT_EQ(segments[i].segment_id, i);
}

TEST(PartitionTest, ZeroSegmentsIsInvalid) {
    EXPECT_THROW(partition(make_dataset(3), 0), InvalidConfigError);
}

TEST(PartitionTest, RoundTripProperty) {
    std::mt19937_64 rng(20240508);
    for (int c = 0; c < 300; ++c) {
        const std::size_t len = rng() % 257;
        const std::size_t n = 1 + rng() % 40;
        const auto dataset = make_dataset(len);
        const auto segments = partition(dataset, n);
        ASSERT_EQ(segments.size(), n);

        std::vector<UrlEntry> joined;
        std::size_t lo = SIZE_MAX, hi = 0;
        for (const auto& s : segments) {
            joined.insert(joined.end(), s.entries.begin(), s.entries.end());
            lo = std::min(lo, s.size());
            hi = std::max(hi, s.size());
        }
        ASSERT_EQ(joined, dataset.entries()) << "len=" << len << " n=" << n;
        ASSERT_LE(hi - lo, 1u);
    }
}
