#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "diffrec/diffusion.hpp"
#include "diffrec/errors.hpp"
#include "diffrec/graph.hpp"

namespace diffrec {

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string("nan");
}

// Probe links grouped by user, users ascending, items sorted within a
// group. Fixed iteration order keeps every mean reproducible.
inline std::vector<std::pair<UserIndex, std::vector<ItemIndex>>> group_probe_by_user(
    const LinkSet& probe) {
    LinkSet sorted = probe;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<UserIndex, std::vector<ItemIndex>>> groups;
    for (const Link& l : sorted) {
        if (groups.empty() || groups.back().first != l.user)
            groups.push_back({l.user, {}});
        groups.back().second.push_back(l.item);
    }
    return groups;
}

}  // namespace detail

/// Mean probe-rank outcome. value is absent when no probe link could be
/// evaluated; evaluated + skipped always equals the probe size.
struct RankingScoreResult {
    std::optional<double> value;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
};

/**
 * Ranking score: for each probe link (i, alpha) the position of alpha in
 * user i's full list of uncollected items, divided by the list length,
 * averaged over evaluable probe links. Tied scores receive the midrank of
 * their tie block, so the value is free of item-index bias. Probe links
 * of cold users (no list) are skipped and counted.
 */
inline RankingScoreResult ranking_score(const BatchRecommendations& recs,
                                        const LinkSet& probe, const BipartiteGraph& g) {
    RankingScoreResult out;
    double sum = 0.0;
    for (const auto& [user, items] : detail::group_probe_by_user(probe)) {
        if (user >= g.num_users()) throw DimensionError("probe user index out of range");
        for (ItemIndex a : items)
            if (a >= g.num_items()) throw DimensionError("probe item index out of range");

        if (user >= recs.lists.size() || !recs.lists[user]) {
            out.skipped += items.size();
            continue;
        }
        const auto& entries = recs.lists[user]->entries;
        const std::size_t n = entries.size();
        std::size_t found = 0;
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i + 1;
            while (j < n && entries[j].score == entries[i].score) ++j;
            const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
            for (std::size_t k = i; k < j; ++k) {
                if (std::binary_search(items.begin(), items.end(), entries[k].item)) {
                    sum += midrank / static_cast<double>(n);
                    ++found;
                }
            }
            i = j;
        }
        out.evaluated += found;
        out.skipped += items.size() - found;
    }
    if (out.evaluated > 0) out.value = sum / static_cast<double>(out.evaluated);
    return out;
}

/**
 * Precision at L: the fraction of the top-L list hitting the user's probe
 * links, averaged over users that have both a probe link and a list.
 * Absent when no user qualifies.
 */
inline std::optional<double> precision_at(const BatchRecommendations& recs,
                                          const LinkSet& probe, std::uint32_t top_l) {
    if (top_l == 0) throw SpecError("list length L must be at least 1");
    double sum = 0.0;
    std::size_t users = 0;
    for (const auto& [user, items] : detail::group_probe_by_user(probe)) {
        if (user >= recs.lists.size() || !recs.lists[user]) continue;
        const auto& entries = recs.lists[user]->entries;
        const std::size_t m = std::min<std::size_t>(top_l, entries.size());
        std::size_t hits = 0;
        for (std::size_t k = 0; k < m; ++k)
            if (std::binary_search(items.begin(), items.end(), entries[k].item)) ++hits;
        sum += static_cast<double>(hits) / static_cast<double>(top_l);
        ++users;
    }
    if (users == 0) return std::nullopt;
    return sum / static_cast<double>(users);
}

/**
 * Mean Hamming distance 1 - C_ij(L)/L over all unordered pairs of users
 * possessing lists. When a full list is shorter than L the overlap counts
 * the actual list; the denominator stays L.
 */
inline double hamming_mean(const BatchRecommendations& recs, std::uint32_t top_l) {
    if (top_l == 0) throw SpecError("list length L must be at least 1");
    std::vector<std::vector<ItemIndex>> tops;
    for (const auto& list : recs.lists) {
        if (!list) continue;
        const std::size_t m = std::min<std::size_t>(top_l, list->entries.size());
        std::vector<ItemIndex> ids(m);
        for (std::size_t k = 0; k < m; ++k) ids[k] = list->entries[k].item;
        std::sort(ids.begin(), ids.end());
        tops.push_back(std::move(ids));
    }
    if (tops.size() < 2)
        throw InsufficientPopulationError("hamming distance needs at least two users with lists");

    double sum = 0.0;
    for (std::size_t a = 0; a + 1 < tops.size(); ++a) {
        for (std::size_t b = a + 1; b < tops.size(); ++b) {
            std::size_t overlap = 0, i = 0, j = 0;
            while (i < tops[a].size() && j < tops[b].size()) {
                if (tops[a][i] < tops[b][j]) ++i;
                else if (tops[a][i] > tops[b][j]) ++j;
                else { ++overlap; ++i; ++j; }
            }
            sum += 1.0 - static_cast<double>(overlap) / static_cast<double>(top_l);
        }
    }
    const double pairs = static_cast<double>(tops.size()) *
                         static_cast<double>(tops.size() - 1) / 2.0;
    return sum / pairs;
}

/**
 * Mean novelty: average training degree of the items in the top-L lists.
 * Lists shorter than L divide by their actual length; users with empty
 * lists do not contribute.
 */
inline double novelty_mean(const BatchRecommendations& recs, const BipartiteGraph& g,
                           std::uint32_t top_l) {
    if (top_l == 0) throw SpecError("list length L must be at least 1");
    double sum = 0.0;
    std::size_t users = 0;
    for (const auto& list : recs.lists) {
        if (!list || list->entries.empty()) continue;
        const std::size_t m = std::min<std::size_t>(top_l, list->entries.size());
        double deg_sum = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            deg_sum += static_cast<double>(g.item_degree(list->entries[k].item));
        sum += deg_sum / static_cast<double>(m);
        ++users;
    }
    if (users == 0) return 0.0;
    return sum / static_cast<double>(users);
}

inline constexpr std::uint32_t kDefaultListLength = 20;

/// Full evaluation bundle for one algorithm/parameter/split combination.
struct MetricsReport {
    std::optional<double> ranking_score;
    std::optional<double> precision;
    double hamming = 0.0;
    double novelty = 0.0;
    std::uint32_t list_length = kDefaultListLength;
    std::size_t links_evaluated = 0;
    std::size_t links_skipped = 0;
    std::size_t users_evaluated = 0;

    static std::string csv_header() {
        return "algorithm,lambda,theta,seed,L,RS,P,H,N,"
               "links_evaluated,links_skipped,users_evaluated";
    }

    std::string to_csv_row(const std::string& algorithm, double lambda, double theta,
                           std::uint64_t seed) const {
        std::string row = algorithm;
        row += ',';
        row += detail::fmt_double(lambda);
        row += ',';
        row += detail::fmt_double(theta);
        row += ',';
        row += std::to_string(seed);
        row += ',';
        row += std::to_string(list_length);
        row += ',';
        row += detail::fmt_opt(ranking_score);
        row += ',';
        row += detail::fmt_opt(precision);
        row += ',';
        row += detail::fmt_double(hamming);
        row += ',';
        row += detail::fmt_double(novelty);
        row += ',';
        row += std::to_string(links_evaluated);
        row += ',';
        row += std::to_string(links_skipped);
        row += ',';
        row += std::to_string(users_evaluated);
        return row;
    }

    std::string to_kv() const {
        std::string out;
        out += "ranking_score=" + detail::fmt_opt(ranking_score) + "\n";
        out += "precision=" + detail::fmt_opt(precision) + "\n";
        out += "hamming=" + detail::fmt_double(hamming) + "\n";
        out += "novelty=" + detail::fmt_double(novelty) + "\n";
        out += "L=" + std::to_string(list_length) + "\n";
        out += "links_evaluated=" + std::to_string(links_evaluated) + "\n";
        out += "links_skipped=" + std::to_string(links_skipped) + "\n";
        out += "users_evaluated=" + std::to_string(users_evaluated) + "\n";
        return out;
    }
};

/**
 * Compose the four metrics against one probe set. recs must hold full
 * (untruncated) lists; the top-L prefix is taken internally for P, H, N.
 */
inline MetricsReport evaluate(const BatchRecommendations& recs, const LinkSet& probe,
                              const BipartiteGraph& g,
                              std::uint32_t top_l = kDefaultListLength) {
    MetricsReport report;
    report.list_length = top_l;
    const RankingScoreResult rs = ranking_score(recs, probe, g);
    report.ranking_score = rs.value;
    report.links_evaluated = rs.evaluated;
    report.links_skipped = rs.skipped;
    report.precision = precision_at(recs, probe, top_l);
    report.hamming = hamming_mean(recs, top_l);
    report.novelty = novelty_mean(recs, g, top_l);
    report.users_evaluated = recs.num_with_lists();
    return report;
}

}  // namespace diffrec
