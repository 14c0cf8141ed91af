#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "diffrec/errors.hpp"
#include "diffrec/graph.hpp"

namespace diffrec {

/// How to divide a link set. Fractions are interpreted against the total
/// link count with round-half-up; the training side absorbs the remainder.
struct SplitSpec {
    double probe_fraction = 0.1;
    std::optional<double> testing_fraction;
    std::uint64_t seed = 0;
};

namespace detail {

// Fisher-Yates with mt19937_64 and modulo reduction. std::shuffle is
// implementation-defined, so the permutation is pinned here to keep
// splits identical across platforms and standard libraries.
inline void seeded_shuffle(LinkSet& links, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = links.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(links[i - 1], links[j]);
    }
}

// round-half-up of fraction*count
inline std::size_t round_size(double fraction, std::size_t count) {
    return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count) + 0.5));
}

}  // namespace detail

/**
 * Random two-way division: the probe takes round(probe_fraction*|links|)
 * links, training keeps the rest. Identical seed gives an identical
 * partition. Train and probe are disjoint and cover the input.
 */
inline std::pair<LinkSet, LinkSet> split_two(const LinkSet& links, const SplitSpec& spec) {
    if (!(spec.probe_fraction > 0.0 && spec.probe_fraction < 1.0))
        throw SpecError("probe_fraction must lie in (0,1)");
    LinkSet shuffled = links;
    detail::seeded_shuffle(shuffled, spec.seed);
    const std::size_t n_probe = detail::round_size(spec.probe_fraction, shuffled.size());
    LinkSet train(shuffled.begin(), shuffled.end() - static_cast<std::ptrdiff_t>(n_probe));
    LinkSet probe(shuffled.end() - static_cast<std::ptrdiff_t>(n_probe), shuffled.end());
    return {std::move(train), std::move(probe)};
}

/**
 * Random three-way division into train / testing / probe. Testing and
 * probe sizes follow the rounding rule; training absorbs the remainder.
 */
inline std::tuple<LinkSet, LinkSet, LinkSet> split_three(const LinkSet& links,
                                                         const SplitSpec& spec) {
    if (!spec.testing_fraction.has_value())
        throw SpecError("split_three requires a testing_fraction");
    const double pf = spec.probe_fraction;
    const double tf = *spec.testing_fraction;
    if (!(pf > 0.0 && pf < 1.0) || !(tf > 0.0 && tf < 1.0) || pf + tf >= 1.0)
        throw SpecError("fractions must lie in (0,1) and sum below 1");
    LinkSet shuffled = links;
    detail::seeded_shuffle(shuffled, spec.seed);
    const std::size_t n_probe = detail::round_size(pf, shuffled.size());
    const std::size_t n_testing = detail::round_size(tf, shuffled.size());
    if (n_probe + n_testing > shuffled.size())
        throw SpecError("fractions leave no training data");
    const std::size_t n_train = shuffled.size() - n_probe - n_testing;
    LinkSet train(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n_train));
    LinkSet testing(shuffled.begin() + static_cast<std::ptrdiff_t>(n_train),
                    shuffled.begin() + static_cast<std::ptrdiff_t>(n_train + n_testing));
    LinkSet probe(shuffled.begin() + static_cast<std::ptrdiff_t>(n_train + n_testing),
                  shuffled.end());
    return {std::move(train), std::move(testing), std::move(probe)};
}

/**
 * Sparsity-study division: training keeps a seed-determined random
 * fraction p of the links, the probe is the full complement. Lower p
 * means sparser training data.
 */
inline std::pair<LinkSet, LinkSet> split_sparsity(const LinkSet& links, double p,
                                                  std::uint64_t seed) {
    if (!(p > 0.0 && p < 1.0)) throw SpecError("sparsity fraction p must lie in (0,1)");
    LinkSet shuffled = links;
    detail::seeded_shuffle(shuffled, seed);
    const std::size_t n_train = detail::round_size(p, shuffled.size());
    LinkSet train(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n_train));
    LinkSet probe(shuffled.begin() + static_cast<std::ptrdiff_t>(n_train), shuffled.end());
    return {std::move(train), std::move(probe)};
}

/**
 * Synthetic duplicate-free bipartite link set standing in for data that
 * cannot be redistributed. Items are drawn preferentially (probability
 * proportional to current item degree + 1) so the item-degree
 * distribution is right-skewed like real collection data; users are drawn
 * uniformly. Deterministic per seed.
 */
inline LinkSet synth_dataset(std::uint32_t num_users, std::uint32_t num_items,
                             std::size_t num_links, std::uint64_t seed) {
    if (num_users == 0 || num_items == 0)
        throw SpecError("synth_dataset needs at least one user and one item");
    const std::size_t capacity =
        static_cast<std::size_t>(num_users) * static_cast<std::size_t>(num_items);
    if (num_links > capacity)
        throw SpecError("num_links exceeds num_users*num_items possible pairs");

    std::mt19937_64 rng(seed);
    LinkSet links;
    links.reserve(num_links);
    std::vector<bool> taken(capacity, false);
    // Urn of item ids: one virtual ticket per item plus one per existing
    // link gives P(item) proportional to degree+1.
    std::vector<ItemIndex> urn;
    urn.reserve(num_links);

    std::size_t rejections = 0;
    while (links.size() < num_links) {
        const std::uint64_t pick = rng() % (num_items + urn.size());
        const ItemIndex item = pick < num_items ? static_cast<ItemIndex>(pick)
                                                : urn[pick - num_items];
        const UserIndex user = static_cast<UserIndex>(rng() % num_users);
        const std::size_t key =
            static_cast<std::size_t>(user) * num_items + item;
        if (taken[key]) {
            // Dense corner: after too many collisions fill the remainder
            // uniformly from the still-free pairs to guarantee termination.
            if (++rejections > 1000 && links.size() + 1000 > capacity) {
                std::vector<std::size_t> free_pairs;
                for (std::size_t k = 0; k < capacity; ++k)
                    if (!taken[k]) free_pairs.push_back(k);
                while (links.size() < num_links) {
                    const std::size_t at = static_cast<std::size_t>(rng() % free_pairs.size());
                    const std::size_t k = free_pairs[at];
                    free_pairs[at] = free_pairs.back();
                    free_pairs.pop_back();
                    links.push_back(Link{static_cast<UserIndex>(k / num_items),
                                         static_cast<ItemIndex>(k % num_items)});
                }
                break;
            }
            continue;
        }
        taken[key] = true;
        rejections = 0;
        links.push_back(Link{user, item});
        urn.push_back(item);
    }
    return links;
}

}  // namespace diffrec
