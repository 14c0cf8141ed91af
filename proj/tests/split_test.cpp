#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "diffrec/split.hpp"

using namespace diffrec;

namespace {

LinkSet make_links(std::size_t n) {
    LinkSet links;
    links.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        links.push_back(Link{static_cast<UserIndex>(k / 97), static_cast<ItemIndex>(k % 97)});
    return links;
}

std::multiset<Link> as_set(const LinkSet& links) {
    return std::multiset<Link>(links.begin(), links.end());
}

void expect_partition(const LinkSet& whole, const std::vector<const LinkSet*>& parts) {
    std::multiset<Link> joined;
    std::size_t total = 0;
    for (const LinkSet* part : parts) {
        for (const Link& l : *part) joined.insert(l);
        total += part->size();
    }
    EXPECT_EQ(total, whole.size());
    EXPECT_EQ(joined, as_set(whole));
}

TEST(SplitTwo, SizesFollowRoundHalfUp) {
    for (std::size_t n : {1u, 2u, 3u, 9u, 10u, 11u, 95u, 100u, 7919u}) {
        for (double f : {0.1, 0.25, 0.5, 0.9}) {
            const LinkSet links = make_links(n);
            SplitSpec spec;
            spec.probe_fraction = f;
            spec.seed = 3;
            const std::size_t expected =
                static_cast<std::size_t>(std::floor(f * static_cast<double>(n) + 0.5));
            if (expected == 0 || expected >= n) continue;  // degenerate inputs skipped here
            auto [train, probe] = split_two(links, spec);
            EXPECT_EQ(probe.size(), expected) << "n=" << n << " f=" << f;
            EXPECT_EQ(train.size(), n - expected);
            expect_partition(links, {&train, &probe});
        }
    }
}

TEST(SplitTwo, SizePropertyAcrossManyCounts) {
    for (std::size_t n = 2; n <= 10000; n = n * 3 + 1) {
        const LinkSet links = make_links(n);
        SplitSpec spec;
        spec.probe_fraction = 0.1;
        spec.seed = 11;
        auto [train, probe] = split_two(links, spec);
        const std::size_t expected =
            static_cast<std::size_t>(std::floor(0.1 * static_cast<double>(n) + 0.5));
        EXPECT_EQ(probe.size(), expected);
        EXPECT_EQ(train.size() + probe.size(), n);
    }
}

TEST(SplitTwo, TenLinksGiveOneProbe) {
    SplitSpec spec;
    spec.probe_fraction = 0.1;
    spec.seed = 5;
    auto [train, probe] = split_two(make_links(10), spec);
    EXPECT_EQ(probe.size(), 1u);
    EXPECT_EQ(train.size(), 9u);
}

TEST(SplitTwo, DeterministicPerSeedAndSensitiveToSeed) {
    const LinkSet links = make_links(500);
    SplitSpec spec;
    spec.probe_fraction = 0.1;
    spec.seed = 42;
    auto [train_a, probe_a] = split_two(links, spec);
    auto [train_b, probe_b] = split_two(links, spec);
    EXPECT_EQ(train_a, train_b);
    EXPECT_EQ(probe_a, probe_b);

    spec.seed = 43;
    auto [train_c, probe_c] = split_two(links, spec);
    EXPECT_NE(probe_a, probe_c);
}

TEST(SplitTwo, FractionBoundsEnforced) {
    const LinkSet links = make_links(10);
    for (double f : {0.0, 1.0, -0.1, 1.5}) {
        SplitSpec spec;
        spec.probe_fraction = f;
        EXPECT_THROW(split_two(links, spec), SpecError) << f;
    }
}

TEST(SplitThree, SizesAndPartition) {
    const LinkSet links = make_links(1000);
    SplitSpec spec;
    spec.probe_fraction = 0.1;
    spec.testing_fraction = 0.1;
    spec.seed = 9;
    auto [train, testing, probe] = split_three(links, spec);
    EXPECT_EQ(train.size(), 800u);
    EXPECT_EQ(testing.size(), 100u);
    EXPECT_EQ(probe.size(), 100u);
    expect_partition(links, {&train, &testing, &probe});

    auto again = split_three(links, spec);
    EXPECT_EQ(std::get<0>(again), train);
    EXPECT_EQ(std::get<1>(again), testing);
    EXPECT_EQ(std::get<2>(again), probe);
}

TEST(SplitThree, RequiresTestingFraction) {
    SplitSpec spec;
    spec.probe_fraction = 0.1;
    EXPECT_THROW(split_three(make_links(10), spec), SpecError);
}

TEST(SplitThree, FractionsMustLeaveTrainingMass) {
    SplitSpec spec;
    spec.probe_fraction = 0.5;
    spec.testing_fraction = 0.5;
    EXPECT_THROW(split_three(make_links(10), spec), SpecError);
}

TEST(SplitSparsity, TrainingFractionP) {
    auto [train, probe] = split_sparsity(make_links(1000), 0.3, 17);
    EXPECT_EQ(train.size(), 300u);
    EXPECT_EQ(probe.size(), 700u);
}

TEST(SplitSparsity, PointNineMatchesStandardSplitShape) {
    const LinkSet links = make_links(730);
    auto [train_s, probe_s] = split_sparsity(links, 0.9, 23);
    SplitSpec spec;
    spec.probe_fraction = 0.1;
    spec.seed = 23;
    auto [train_t, probe_t] = split_two(links, spec);
    EXPECT_EQ(train_s.size() + probe_s.size(), links.size());
    // Same seed, complementary fractions: identical partition sizes and,
    // by the shared shuffle-prefix construction, identical membership.
    EXPECT_EQ(train_s.size(), train_t.size());
    EXPECT_EQ(as_set(train_s), as_set(train_t));
}

TEST(SplitSparsity, DeterministicAndValidated) {
    const LinkSet links = make_links(50);
    auto a = split_sparsity(links, 0.4, 3);
    auto b = split_sparsity(links, 0.4, 3);
    EXPECT_EQ(a.first, b.first);
    EXPECT_THROW(split_sparsity(links, 0.0, 3), SpecError);
    EXPECT_THROW(split_sparsity(links, 1.0, 3), SpecError);
}

TEST(SynthDataset, ExactCountsNoDuplicates) {
    const LinkSet links = synth_dataset(40, 30, 500, 7);
    EXPECT_EQ(links.size(), 500u);
    std::set<std::pair<UserIndex, ItemIndex>> seen;
    for (const Link& l : links) {
        EXPECT_LT(l.user, 40u);
        EXPECT_LT(l.item, 30u);
        EXPECT_TRUE(seen.emplace(l.user, l.item).second) << "duplicate link";
    }
}

TEST(SynthDataset, DeterministicPerSeed) {
    EXPECT_EQ(synth_dataset(20, 20, 150, 5), synth_dataset(20, 20, 150, 5));
    EXPECT_NE(synth_dataset(20, 20, 150, 5), synth_dataset(20, 20, 150, 6));
}

TEST(SynthDataset, SingleCellAndInfeasibleCount) {
    const LinkSet links = synth_dataset(1, 1, 1, 3);
    ASSERT_EQ(links.size(), 1u);
    EXPECT_EQ(links[0], (Link{0, 0}));
    EXPECT_THROW(synth_dataset(2, 2, 5, 3), SpecError);
}

TEST(SynthDataset, FullCapacityTerminates) {
    const LinkSet links = synth_dataset(8, 8, 64, 11);
    EXPECT_EQ(links.size(), 64u);
}

TEST(SynthDataset, ItemDegreeDistributionIsRightSkewed) {
    const LinkSet links = synth_dataset(300, 300, 6000, 13);
    std::vector<std::size_t> degree(300, 0);
    for (const Link& l : links) ++degree[l.item];
    std::sort(degree.begin(), degree.end());
    // Preferential attachment concentrates links: the busiest tenth of
    // items must hold well over its uniform share (10%) of all links.
    std::size_t top_decile = 0;
    for (std::size_t k = 270; k < 300; ++k) top_decile += degree[k];
    EXPECT_GT(top_decile, links.size() / 5);
}

}  // namespace
