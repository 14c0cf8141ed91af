#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "diffrec/diffusion.hpp"
#include "diffrec/errors.hpp"
#include "diffrec/graph.hpp"
#include "diffrec/metrics.hpp"
#include "diffrec/split.hpp"

namespace diffrec {

struct Dims {
    std::uint32_t num_users = 0;
    std::uint32_t num_items = 0;
};

/// Cross product of (theta, lambda) cells and split seeds. Grids must be
/// strictly increasing so argmin tie-breaking ("lexicographically smallest
/// (theta, lambda)") is well defined.
struct GridSpec {
    std::vector<double> theta_values;
    std::vector<double> lambda_values;
    std::vector<std::uint64_t> seeds;
    std::uint32_t list_length = kDefaultListLength;

    void validate() const {
        if (theta_values.empty()) throw SpecError("theta grid is empty");
        if (lambda_values.empty()) throw SpecError("lambda grid is empty");
        if (seeds.empty()) throw SpecError("seed list is empty");
        if (list_length == 0) throw SpecError("list length L must be at least 1");
        for (double t : theta_values)
            if (!(t > 0.0)) throw SpecError("theta grid values must be positive");
        for (double l : lambda_values)
            if (!(l >= 0.0 && l <= 1.0))
                throw SpecError("lambda grid values must lie in [0,1]");
        if (std::adjacent_find(theta_values.begin(), theta_values.end(),
                               std::greater_equal<>()) != theta_values.end())
            throw SpecError("theta grid must be strictly increasing");
        if (std::adjacent_find(lambda_values.begin(), lambda_values.end(),
                               std::greater_equal<>()) != lambda_values.end())
            throw SpecError("lambda grid must be strictly increasing");
    }
};

// Grids are generated from integer ratios so that landmark values
// (theta=1, lambda=1) are exact doubles and row extraction can compare
// with == instead of a tolerance.

/// theta 0.2, 0.4, ..., 4.0.
inline std::vector<double> default_theta_grid() {
    std::vector<double> v;
    for (int k = 1; k <= 20; ++k) v.push_back(k / 5.0);
    return v;
}

/// lambda 0.00, 0.02, ..., 1.00. The 0.02 step is the coarsest that can
/// resolve an optimum near 0.32.
inline std::vector<double> default_lambda_grid() {
    std::vector<double> v;
    for (int j = 0; j <= 50; ++j) v.push_back(j / 50.0);
    return v;
}

inline std::vector<std::uint64_t> default_seeds() { return {1, 2, 3, 4, 5}; }

/// Coarser grids for studies that multiply the cell count by many
/// sparsity levels. theta keeps the value 1.0 so the theta-free hybrid's
/// search space stays a subset of the full one.
inline std::vector<double> coarse_theta_grid() {
    std::vector<double> v;
    for (int k = 0; k <= 9; ++k) v.push_back((4 * k + 1) / 5.0);
    return v;
}

inline std::vector<double> coarse_lambda_grid() {
    std::vector<double> v;
    for (int j = 0; j <= 20; ++j) v.push_back(j / 20.0);
    return v;
}

/// Seed-aggregated numbers for one (theta, lambda) cell. Means cover the
/// seeds where the metric was evaluable; rs_count says how many that was.
struct CellStats {
    double theta = 0.0;
    double lambda = 0.0;
    double rs_mean = std::numeric_limits<double>::quiet_NaN();
    double rs_stddev = 0.0;
    std::size_t rs_count = 0;
    double p_mean = std::numeric_limits<double>::quiet_NaN();
    double h_mean = std::numeric_limits<double>::quiet_NaN();
    double n_mean = std::numeric_limits<double>::quiet_NaN();
};

struct SweepResult {
    GridSpec grid;
    /// Row-major: reports[(ti * lambda_count + li) * seed_count + si].
    std::vector<MetricsReport> reports;
    /// cells[ti * lambda_count + li].
    std::vector<CellStats> cells;
    std::size_t best_index = 0;

    std::size_t theta_count() const { return grid.theta_values.size(); }
    std::size_t lambda_count() const { return grid.lambda_values.size(); }
    std::size_t seed_count() const { return grid.seeds.size(); }

    const MetricsReport& report_at(std::size_t ti, std::size_t li, std::size_t si) const {
        return reports[(ti * lambda_count() + li) * seed_count() + si];
    }
    const CellStats& cell_at(std::size_t ti, std::size_t li) const {
        return cells[ti * lambda_count() + li];
    }
    const CellStats& best_cell() const { return cells[best_index]; }
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_stddev(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

struct SeedSplit {
    BipartiteGraph graph;  // training side
    LinkSet probe;
};

enum class MetricMode { full, rs_only };

inline MetricsReport evaluate_cell(const BatchRecommendations& recs, const LinkSet& probe,
                                   const BipartiteGraph& g, std::uint32_t top_l,
                                   MetricMode mode) {
    if (mode == MetricMode::full) return evaluate(recs, probe, g, top_l);
    MetricsReport report;
    report.list_length = top_l;
    const RankingScoreResult rs = ranking_score(recs, probe, g);
    report.ranking_score = rs.value;
    report.links_evaluated = rs.evaluated;
    report.links_skipped = rs.skipped;
    report.users_evaluated = recs.num_with_lists();
    return report;
}

// Shared body of every grid search: fixed split per seed, all cells
// evaluated against it, deterministic aggregation order.
inline SweepResult run_grid_on_splits(const std::vector<SeedSplit>& splits,
                                      const GridSpec& grid, unsigned workers,
                                      MetricMode mode) {
    const std::size_t nt = grid.theta_values.size();
    const std::size_t nl = grid.lambda_values.size();
    const std::size_t ns = grid.seeds.size();

    SweepResult out;
    out.grid = grid;
    out.reports.resize(nt * nl * ns);
    out.cells.resize(nt * nl);

    for (std::size_t si = 0; si < ns; ++si) {
        const SeedSplit& sp = splits[si];
        for (std::size_t ti = 0; ti < nt; ++ti) {
            for (std::size_t li = 0; li < nl; ++li) {
                const DiffusionParams params(grid.lambda_values[li], grid.theta_values[ti]);
                const DiffusionEngine engine(sp.graph, params);
                const BatchRecommendations recs = engine.recommend_all(std::nullopt, workers);
                out.reports[(ti * nl + li) * ns + si] =
                    evaluate_cell(recs, sp.probe, sp.graph, grid.list_length, mode);
            }
        }
    }

    for (std::size_t ti = 0; ti < nt; ++ti) {
        for (std::size_t li = 0; li < nl; ++li) {
            CellStats& cell = out.cells[ti * nl + li];
            cell.theta = grid.theta_values[ti];
            cell.lambda = grid.lambda_values[li];
            std::vector<double> rs, p, h, n;
            for (std::size_t si = 0; si < ns; ++si) {
                const MetricsReport& r = out.reports[(ti * nl + li) * ns + si];
                if (r.ranking_score) rs.push_back(*r.ranking_score);
                if (r.precision) p.push_back(*r.precision);
                if (mode == MetricMode::full) {
                    h.push_back(r.hamming);
                    n.push_back(r.novelty);
                }
            }
            cell.rs_count = rs.size();
            if (!rs.empty()) {
                cell.rs_mean = mean_of(rs);
                cell.rs_stddev = sample_stddev(rs, cell.rs_mean);
            }
            if (!p.empty()) cell.p_mean = mean_of(p);
            if (!h.empty()) cell.h_mean = mean_of(h);
            if (!n.empty()) cell.n_mean = mean_of(n);
        }
    }

    // First strict minimum in (theta, lambda) scan order ==
    // lexicographically smallest argmin.
    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
        if (out.cells[i].rs_count == 0) continue;
        if (!found || out.cells[i].rs_mean < best) {
            best = out.cells[i].rs_mean;
            out.best_index = i;
            found = true;
        }
    }
    if (!found) throw SpecError("no grid cell produced an evaluable ranking score");
    return out;
}

inline std::vector<SeedSplit> make_probe_splits(const LinkSet& links, Dims dims,
                                                const std::vector<std::uint64_t>& seeds,
                                                double split_fraction) {
    std::vector<SeedSplit> splits;
    splits.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
        SplitSpec spec;
        spec.probe_fraction = split_fraction;
        spec.seed = seed;
        auto [train, probe] = split_two(links, spec);
        if (train.empty()) throw SpecError("split leaves no training links");
        splits.push_back({build_graph(train, dims.num_users, dims.num_items),
                          std::move(probe)});
    }
    return splits;
}

}  // namespace detail

/**
 * Exhaustive grid search. One split per seed, reused across every cell so
 * parameter effects are isolated from split noise; full metrics per cell.
 */
inline SweepResult run_grid(const LinkSet& links, Dims dims, const GridSpec& grid,
                            double split_fraction = 0.1, unsigned workers = 0) {
    grid.validate();
    const auto splits = detail::make_probe_splits(links, dims, grid.seeds, split_fraction);
    return detail::run_grid_on_splits(splits, grid, workers, detail::MetricMode::full);
}

/// One-dimensional sweep with lambda pinned (default 1, the pure
/// mass-diffusion family).
inline SweepResult sweep_theta(const LinkSet& links, Dims dims,
                               const std::vector<double>& theta_values,
                               double lambda_fixed = 1.0,
                               const std::vector<std::uint64_t>& seeds = default_seeds(),
                               std::uint32_t list_length = kDefaultListLength,
                               double split_fraction = 0.1, unsigned workers = 0) {
    GridSpec grid;
    grid.theta_values = theta_values;
    grid.lambda_values = {lambda_fixed};
    grid.seeds = seeds;
    grid.list_length = list_length;
    return run_grid(links, dims, grid, split_fraction, workers);
}

/// Optimum found at one sparsity level, for the full two-parameter hybrid
/// ("pref") and the theta-free hybrid ("orig", theta pinned to 1).
struct SparsityPoint {
    double p = 0.0;
    double rs_pref_mean = 0.0;
    double rs_pref_stddev = 0.0;
    double theta_star = 0.0;
    double lambda_star = 0.0;
    double rs_orig_mean = 0.0;
    double rs_orig_stddev = 0.0;
    double lambda_star_orig = 0.0;
};

struct SparsityCurve {
    std::vector<SparsityPoint> points;  // p strictly increasing
    std::uint32_t list_length = kDefaultListLength;
};

/**
 * Sparsity study: for each p, keep a p-fraction of links as training and
 * probe on the rest, then locate the RS-optimal cell for both hybrid
 * variants. Both variants see identical splits, so whenever the theta
 * grid contains 1.0 the pref optimum can never fall behind the orig one.
 */
inline SparsityCurve sparsity_study(const LinkSet& links, Dims dims,
                                    const std::vector<double>& p_values, GridSpec grid,
                                    const std::vector<std::uint64_t>& seeds,
                                    unsigned workers = 0) {
    grid.seeds = seeds;
    grid.validate();
    if (p_values.empty()) throw SpecError("p grid is empty");
    for (double p : p_values)
        if (!(p > 0.0 && p < 1.0)) throw SpecError("p values must lie in (0,1)");
    if (std::adjacent_find(p_values.begin(), p_values.end(), std::greater_equal<>()) !=
        p_values.end())
        throw SpecError("p values must be strictly increasing");

    GridSpec orig_grid = grid;
    orig_grid.theta_values = {1.0};

    SparsityCurve curve;
    curve.list_length = grid.list_length;
    for (double p : p_values) {
        std::vector<detail::SeedSplit> splits;
        splits.reserve(seeds.size());
        for (std::uint64_t seed : seeds) {
            auto [train, probe] = split_sparsity(links, p, seed);
            if (train.empty()) throw SpecError("sparsity level leaves no training links");
            splits.push_back({build_graph(train, dims.num_users, dims.num_items),
                              std::move(probe)});
        }
        const SweepResult pref =
            detail::run_grid_on_splits(splits, grid, workers, detail::MetricMode::rs_only);
        const SweepResult orig = detail::run_grid_on_splits(splits, orig_grid, workers,
                                                            detail::MetricMode::rs_only);
        SparsityPoint pt;
        pt.p = p;
        pt.rs_pref_mean = pref.best_cell().rs_mean;
        pt.rs_pref_stddev = pref.best_cell().rs_stddev;
        pt.theta_star = pref.best_cell().theta;
        pt.lambda_star = pref.best_cell().lambda;
        pt.rs_orig_mean = orig.best_cell().rs_mean;
        pt.rs_orig_stddev = orig.best_cell().rs_stddev;
        pt.lambda_star_orig = orig.best_cell().lambda;
        curve.points.push_back(pt);
    }
    return curve;
}

/// Result of the three-way tuning protocol.
struct TuneOutcome {
    DiffusionParams chosen = DiffusionParams::mass_diffusion();
    MetricsReport testing_report;  // chosen cell, graph = train, probe = testing
    MetricsReport probe_report;    // graph = train + testing, probe = probe
};

/**
 * Tune on the testing set, report on the probe set. Parameters are chosen
 * by minimal RS with the training graph alone; the final evaluation
 * treats train and testing links together as known history. grid.seeds is
 * ignored here — the split seed comes from spec.
 */
inline TuneOutcome tune_and_test(const LinkSet& links, Dims dims, const SplitSpec& spec,
                                 GridSpec grid, unsigned workers = 0) {
    if (grid.seeds.empty()) grid.seeds = {spec.seed};
    grid.validate();
    auto [train, testing, probe] = split_three(links, spec);
    if (train.empty()) throw SpecError("split leaves no training links");

    const BipartiteGraph train_graph = build_graph(train, dims.num_users, dims.num_items);

    bool found = false;
    double best_rs = std::numeric_limits<double>::infinity();
    std::size_t best_ti = 0, best_li = 0;
    for (std::size_t ti = 0; ti < grid.theta_values.size(); ++ti) {
        for (std::size_t li = 0; li < grid.lambda_values.size(); ++li) {
            const DiffusionParams params(grid.lambda_values[li], grid.theta_values[ti]);
            const DiffusionEngine engine(train_graph, params);
            const BatchRecommendations recs = engine.recommend_all(std::nullopt, workers);
            const RankingScoreResult rs = ranking_score(recs, testing, train_graph);
            if (!rs.value) continue;
            if (!found || *rs.value < best_rs) {
                best_rs = *rs.value;
                best_ti = ti;
                best_li = li;
                found = true;
            }
        }
    }
    if (!found) throw SpecError("no grid cell produced an evaluable ranking score");

    TuneOutcome out;
    out.chosen = DiffusionParams(grid.lambda_values[best_li], grid.theta_values[best_ti]);

    {
        const DiffusionEngine engine(train_graph, out.chosen);
        const BatchRecommendations recs = engine.recommend_all(std::nullopt, workers);
        out.testing_report = evaluate(recs, testing, train_graph, grid.list_length);
    }

    LinkSet known = train;
    known.insert(known.end(), testing.begin(), testing.end());
    const BipartiteGraph final_graph = build_graph(known, dims.num_users, dims.num_items);
    const DiffusionEngine engine(final_graph, out.chosen);
    const BatchRecommendations recs = engine.recommend_all(std::nullopt, workers);
    out.probe_report = evaluate(recs, probe, final_graph, grid.list_length);
    return out;
}

}  // namespace diffrec
