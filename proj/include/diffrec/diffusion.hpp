#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "diffrec/errors.hpp"
#include "diffrec/graph.hpp"

namespace diffrec {

/**
 * Parameter pair selecting the algorithm family. lambda blends the two
 * degree normalizations (1 = pure mass-diffusion style, 0 = pure
 * heat-conduction style); theta is the similarity-preference exponent
 * applied to the intermediate user resources between the two passes.
 *
 * theta <= 0 is rejected: with the 0^theta = 0 convention a non-positive
 * exponent would hand unbounded weight to zero-overlap users.
 */
struct DiffusionParams {
    double lambda;
    double theta;

    DiffusionParams(double lambda_, double theta_) : lambda(lambda_), theta(theta_) {
        if (!(lambda >= 0.0 && lambda <= 1.0))
            throw SpecError("lambda must lie in [0,1]");
        if (!(theta > 0.0)) throw SpecError("theta must be positive");
    }

    static DiffusionParams mass_diffusion() { return {1.0, 1.0}; }
    static DiffusionParams heat_conduction() { return {0.0, 1.0}; }
};

/// Per-user resources f_ij after the first diffusion pass, for one target.
struct SimilarityVector {
    UserIndex target;
    std::vector<double> values;
};

/// Per-item scores f_ibeta after the second diffusion pass, for one target.
struct ScoreVector {
    UserIndex target;
    std::vector<double> values;
};

struct ItemScore {
    ItemIndex item;
    double score;

    friend bool operator==(const ItemScore&, const ItemScore&) = default;
};

/// Ranking of the target's uncollected items: descending score, ties by
/// ascending item index. Deterministic for a given graph and parameters.
struct RecommendationList {
    UserIndex target;
    std::vector<ItemScore> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

/// Batch result keyed by user index; cold users (zero training degree)
/// have no list and are tallied in skipped.
struct BatchRecommendations {
    std::vector<std::optional<RecommendationList>> lists;
    std::size_t skipped = 0;

    std::size_t num_with_lists() const {
        std::size_t n = 0;
        for (const auto& l : lists) n += l.has_value();
        return n;
    }
};

namespace detail {

// Reciprocal degree powers d^-lambda and d^-(1-lambda), tabulated once
// per (graph, lambda). Power calls dominate the kernel otherwise.
struct DegreePowers {
    std::vector<double> inv_lambda;
    std::vector<double> inv_one_minus_lambda;

    DegreePowers(std::uint32_t max_degree, double lambda) {
        inv_lambda.resize(max_degree + 1, 0.0);
        inv_one_minus_lambda.resize(max_degree + 1, 0.0);
        for (std::uint32_t d = 1; d <= max_degree; ++d) {
            inv_lambda[d] = std::pow(static_cast<double>(d), -lambda);
            inv_one_minus_lambda[d] = std::pow(static_cast<double>(d), -(1.0 - lambda));
        }
    }
};

}  // namespace detail

/**
 * Two-pass diffusion scorer over an immutable training graph. The graph
 * and parameters are read-only after construction, so one engine can be
 * shared by any number of scoring threads.
 */
class DiffusionEngine {
public:
    DiffusionEngine(const BipartiteGraph& g, const DiffusionParams& params)
        : g_(g),
          params_(params),
          powers_(std::max(g.max_user_degree(), g.max_item_degree()), params.lambda) {}

    const BipartiteGraph& graph() const { return g_; }
    const DiffusionParams& params() const { return params_; }

    /// First pass: f_ij for every user j (target included). Zero exactly
    /// for users sharing no item with the target.
    SimilarityVector similarity(UserIndex target) const {
        SimilarityVector f{target, {}};
        similarity_into(target, f.values);
        return f;
    }

    /// Second pass: per-item scores from a similarity vector produced on
    /// the same graph and target. Users with f_ij = 0 contribute nothing
    /// (0^theta is taken as exactly 0); items with zero training degree
    /// score exactly 0.
    ScoreVector score_items(UserIndex target, const SimilarityVector& f) const {
        if (f.values.size() != g_.num_users())
            throw SpecError("similarity vector does not match graph dimensions");
        ScoreVector s{target, {}};
        scores_into(f.values, s.values);
        return s;
    }

    /// Full pipeline for one target: similarity, scoring, then the ranked
    /// list of uncollected items (top-L prefix when L is given).
    RecommendationList recommend(UserIndex target,
                                 std::optional<std::uint32_t> top_l = std::nullopt) const {
        std::vector<double> f, s;
        similarity_into(target, f);
        scores_into(f, s);
        return build_list(target, s, top_l);
    }

    /// One list per non-cold user. Deterministic for any worker count:
    /// per-target work is independent and lands in its own slot.
    BatchRecommendations recommend_all(std::optional<std::uint32_t> top_l = std::nullopt,
                                       unsigned workers = 0) const {
        const std::uint32_t n = g_.num_users();
        BatchRecommendations out;
        out.lists.resize(n);

        if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
        workers = std::min<unsigned>(workers, std::max<std::uint32_t>(n, 1));

        auto run_range = [&](std::uint32_t begin, std::uint32_t end) {
            std::vector<double> f, s;
            for (std::uint32_t u = begin; u < end; ++u) {
                if (g_.user_degree(u) == 0) continue;
                similarity_into(u, f);
                scores_into(f, s);
                out.lists[u] = build_list(u, s, top_l);
            }
        };

        if (workers <= 1 || n <= 1) {
            run_range(0, n);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            const std::uint32_t chunk = (n + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                const std::uint32_t begin = std::min(n, w * chunk);
                const std::uint32_t end = std::min(n, begin + chunk);
                if (begin < end) pool.emplace_back(run_range, begin, end);
            }
            for (auto& t : pool) t.join();
        }

        for (std::uint32_t u = 0; u < n; ++u)
            if (!out.lists[u]) ++out.skipped;
        return out;
    }

private:
    void similarity_into(UserIndex target, std::vector<double>& f) const {
        if (target >= g_.num_users()) throw DimensionError("target user out of range");
        const auto& uoff = g_.user_offsets();
        const auto& uadj = g_.user_adjacency();
        const auto& ioff = g_.item_offsets();
        const auto& iadj = g_.item_adjacency();

        if (uoff[target + 1] == uoff[target])
            throw ColdUserError("user " + std::to_string(target) +
                                " has no training links");

        f.assign(g_.num_users(), 0.0);
        for (std::uint32_t k = uoff[target]; k < uoff[target + 1]; ++k) {
            const ItemIndex a = uadj[k];
            const double w = powers_.inv_lambda[ioff[a + 1] - ioff[a]];
            for (std::uint32_t t = ioff[a]; t < ioff[a + 1]; ++t) f[iadj[t]] += w;
        }
        for (std::uint32_t j = 0; j < g_.num_users(); ++j) {
            if (f[j] != 0.0)
                f[j] *= powers_.inv_one_minus_lambda[uoff[j + 1] - uoff[j]];
        }
    }

    void scores_into(const std::vector<double>& f, std::vector<double>& s) const {
        const auto& uoff = g_.user_offsets();
        const auto& uadj = g_.user_adjacency();
        const auto& ioff = g_.item_offsets();
        const double theta = params_.theta;

        s.assign(g_.num_items(), 0.0);
        for (std::uint32_t j = 0; j < g_.num_users(); ++j) {
            const double fj = f[j];
            if (fj == 0.0) continue;
            const double w = (theta == 1.0 ? fj : std::pow(fj, theta)) *
                             powers_.inv_lambda[uoff[j + 1] - uoff[j]];
            for (std::uint32_t k = uoff[j]; k < uoff[j + 1]; ++k) s[uadj[k]] += w;
        }
        for (ItemIndex b = 0; b < g_.num_items(); ++b) {
            if (s[b] != 0.0)
                s[b] *= powers_.inv_one_minus_lambda[ioff[b + 1] - ioff[b]];
        }
    }

    RecommendationList build_list(UserIndex target, const std::vector<double>& s,
                                  std::optional<std::uint32_t> top_l) const {
        const auto& uoff = g_.user_offsets();
        const auto& uadj = g_.user_adjacency();

        RecommendationList list{target, {}};
        list.entries.reserve(g_.num_items() - (uoff[target + 1] - uoff[target]));
        std::uint32_t k = uoff[target];
        const std::uint32_t k_end = uoff[target + 1];
        for (ItemIndex b = 0; b < g_.num_items(); ++b) {
            if (k < k_end && uadj[k] == b) {
                ++k;
                continue;
            }
            list.entries.push_back(ItemScore{b, s[b]});
        }
        std::sort(list.entries.begin(), list.entries.end(),
                  [](const ItemScore& x, const ItemScore& y) {
                      if (x.score != y.score) return x.score > y.score;
                      return x.item < y.item;
                  });
        if (top_l && list.entries.size() > *top_l) list.entries.resize(*top_l);
        return list;
    }

    const BipartiteGraph& g_;
    DiffusionParams params_;
    detail::DegreePowers powers_;
};

// Free-function forms for one-off use; batch work should hold a
// DiffusionEngine so the degree-power tables are built once.

inline SimilarityVector similarity(const BipartiteGraph& g, UserIndex target,
                                   const DiffusionParams& params) {
    return DiffusionEngine(g, params).similarity(target);
}

inline ScoreVector score_items(const BipartiteGraph& g, UserIndex target,
                               const SimilarityVector& f, const DiffusionParams& params) {
    return DiffusionEngine(g, params).score_items(target, f);
}

inline RecommendationList recommend(const BipartiteGraph& g, UserIndex target,
                                    const DiffusionParams& params,
                                    std::optional<std::uint32_t> top_l = std::nullopt) {
    return DiffusionEngine(g, params).recommend(target, top_l);
}

inline BatchRecommendations recommend_all(const BipartiteGraph& g,
                                          const DiffusionParams& params,
                                          std::optional<std::uint32_t> top_l = std::nullopt,
                                          unsigned workers = 0) {
    return DiffusionEngine(g, params).recommend_all(top_l, workers);
}

}  // namespace diffrec
