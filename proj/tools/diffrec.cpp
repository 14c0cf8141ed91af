// Command-line front end: prepare / evaluate / sweep / sparsity / tune /
// synth. Flags override a key=value config file (--config), which
// overrides built-in defaults.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "diffrec/diffrec.hpp"

namespace fs = std::filesystem;
using namespace diffrec;

namespace {

char resolve_delimiter(const std::string& value) {
    if (value == "tab" || value == "\\t") return '\t';
    if (value == "comma") return ',';
    if (value.size() == 1) return value[0];
    throw UsageError("--delim must be a single character, 'tab', or 'comma'");
}

std::string printable_delimiter(char d) {
    if (d == '\t') return "tab";
    std::string s(1, d);
    return s;
}

// Selector -> (params, fixed-role validation). md/hc/hybrid pin theta to
// 1 and reject an explicit --theta; the pure families pin lambda.
DiffusionParams selector_params(const std::string& algo, const std::optional<double>& theta,
                                const std::optional<double>& lambda) {
    if (algo == "md" || algo == "hc") {
        if (theta) throw UsageError("selector '" + algo + "' does not take --theta");
        if (lambda) throw UsageError("selector '" + algo + "' does not take --lambda");
        return algo == "md" ? DiffusionParams::mass_diffusion()
                            : DiffusionParams::heat_conduction();
    }
    if (algo == "spmd" || algo == "sphc") {
        if (!theta) throw UsageError("selector '" + algo + "' requires --theta");
        if (lambda) throw UsageError("selector '" + algo + "' does not take --lambda");
        return DiffusionParams(algo == "spmd" ? 1.0 : 0.0, *theta);
    }
    if (algo == "hybrid") {
        if (theta) throw UsageError("selector 'hybrid' does not take --theta (fixed to 1)");
        if (!lambda) throw UsageError("selector 'hybrid' requires --lambda");
        return DiffusionParams(*lambda, 1.0);
    }
    if (algo == "hybrid-pref") {
        if (!theta || !lambda) throw UsageError("selector 'hybrid-pref' requires --theta and --lambda");
        return DiffusionParams(*lambda, *theta);
    }
    throw UsageError("unknown --algo '" + algo + "' (md|hc|spmd|sphc|hybrid|hybrid-pref)");
}

LinksFile load_links_or_usage(const fs::path& dir) {
    const fs::path path = dir / "links.tsv";
    if (!fs::exists(path))
        throw UsageError(path.string() + " not found; run prepare or synth first");
    return read_links(path);
}

void echo_grid(ConfigEcho& echo, const GridSpec& grid) {
    std::string thetas, lambdas, seeds;
    for (double t : grid.theta_values) {
        if (!thetas.empty()) thetas += ',';
        thetas += detail::fmt_double(t);
    }
    for (double l : grid.lambda_values) {
        if (!lambdas.empty()) lambdas += ',';
        lambdas += detail::fmt_double(l);
    }
    for (std::uint64_t s : grid.seeds) {
        if (!seeds.empty()) seeds += ',';
        seeds += std::to_string(s);
    }
    echo.emplace_back("theta_grid", thetas);
    echo.emplace_back("lambda_grid", lambdas);
    echo.emplace_back("seeds", seeds);
    echo.emplace_back("L", std::to_string(grid.list_length));
}

void print_metric_table_header() {
    std::printf("%-14s %-8s %-8s %12s %12s %12s %12s\n", "algorithm", "lambda", "theta",
                "RS", "P", "H", "N");
}

void print_metric_row(const std::string& algo, double lambda, double theta,
                      const MetricsReport& r) {
    std::printf("%-14s %-8s %-8s %12s %12s %12s %12s\n", algo.c_str(),
                detail::fmt_double(lambda).c_str(), detail::fmt_double(theta).c_str(),
                detail::fmt_opt(r.ranking_score).c_str(), detail::fmt_opt(r.precision).c_str(),
                detail::fmt_double(r.hamming).c_str(), detail::fmt_double(r.novelty).c_str());
}

// --- prepare ---------------------------------------------------------------

struct PrepareOpts {
    std::string data;
    std::string delim = "tab";
    int min_rating = 3;
    double probe_frac = 0.1;
    std::optional<double> test_frac;
    std::uint64_t seed = 1;
    std::string out;
};

int run_prepare(const PrepareOpts& o) {
    std::ifstream in(o.data, std::ios::binary);
    if (!in) throw IoError("cannot open " + o.data + " for reading");
    const char delim = resolve_delimiter(o.delim);
    const auto records = parse_ratings(in, delim);
    const FilteredLinks filtered = threshold_filter(records, o.min_rating);

    SplitSpec spec;
    spec.probe_fraction = o.probe_frac;
    spec.testing_fraction = o.test_frac;
    spec.seed = o.seed;

    Manifest manifest;
    manifest.seed = o.seed;
    manifest.probe_fraction = o.probe_frac;
    manifest.testing_fraction = o.test_frac;

    LinkSet probe, testing;
    if (o.test_frac) {
        auto parts = split_three(filtered.links, spec);
        testing = std::move(std::get<1>(parts));
        probe = std::move(std::get<2>(parts));
    } else {
        probe = split_two(filtered.links, spec).second;
    }
    for (const Link& l : probe)
        manifest.probe_raw.emplace_back(filtered.id_map.raw_user(l.user),
                                        filtered.id_map.raw_item(l.item));
    for (const Link& l : testing)
        manifest.testing_raw.emplace_back(filtered.id_map.raw_user(l.user),
                                          filtered.id_map.raw_item(l.item));

    ConfigEcho echo{{"cmd", "prepare"},
                    {"data", o.data},
                    {"delim", printable_delimiter(delim)},
                    {"min_rating", std::to_string(o.min_rating)},
                    {"probe_fraction", detail::fmt_double_exact(o.probe_frac)},
                    {"seed", std::to_string(o.seed)}};
    if (o.test_frac)
        echo.emplace_back("testing_fraction", detail::fmt_double_exact(*o.test_frac));

    fs::create_directories(o.out);
    write_links(fs::path(o.out) / "links.tsv", filtered.links, filtered.num_users(),
                filtered.num_items(), echo);
    write_idmap(fs::path(o.out) / "idmap.tsv", filtered.id_map, echo);
    write_manifest(fs::path(o.out) / "manifest.txt", manifest, echo);

    std::printf("users=%u items=%u links=%zu train=%zu testing=%zu probe=%zu\n",
                filtered.num_users(), filtered.num_items(), filtered.links.size(),
                filtered.links.size() - probe.size() - testing.size(), testing.size(),
                probe.size());
    return 0;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateOpts {
    std::string out;
    std::string algo;
    std::optional<double> theta;
    std::optional<double> lambda;
    std::uint32_t list_length = kDefaultListLength;
    unsigned workers = 0;
};

int run_evaluate(const EvaluateOpts& o) {
    const fs::path dir(o.out);
    const LinksFile links = load_links_or_usage(dir);
    const fs::path manifest_path = dir / "manifest.txt";
    if (!fs::exists(manifest_path))
        throw UsageError(manifest_path.string() + " not found; run prepare first");
    const IdMap idmap = read_idmap(dir / "idmap.tsv");
    const Manifest manifest = read_manifest(manifest_path);

    auto to_links = [&](const std::vector<std::pair<std::int64_t, std::int64_t>>& raw) {
        LinkSet out_links;
        out_links.reserve(raw.size());
        for (const auto& [ru, ra] : raw) {
            if (!idmap.has_user(ru) || !idmap.has_item(ra))
                throw UsageError("manifest link " + std::to_string(ru) + "," +
                                 std::to_string(ra) + " not present in id map");
            out_links.push_back(Link{idmap.user_index(ru), idmap.item_index(ra)});
        }
        return out_links;
    };
    const LinkSet probe = to_links(manifest.probe_raw);
    const LinkSet testing = to_links(manifest.testing_raw);

    std::unordered_set<std::uint64_t> held;
    held.reserve(probe.size() + testing.size());
    auto key = [](const Link& l) {
        return (static_cast<std::uint64_t>(l.user) << 32) | l.item;
    };
    for (const Link& l : probe) held.insert(key(l));
    for (const Link& l : testing) held.insert(key(l));

    LinkSet train;
    train.reserve(links.links.size() - held.size());
    for (const Link& l : links.links)
        if (held.count(key(l)) == 0) train.push_back(l);
    if (train.size() + held.size() != links.links.size())
        throw UsageError("manifest does not match links.tsv (held-out links missing)");
    if (train.empty()) throw SpecError("split leaves no training links");

    const DiffusionParams params = selector_params(o.algo, o.theta, o.lambda);
    const BipartiteGraph graph = build_graph(train, links.num_users, links.num_items);
    const DiffusionEngine engine(graph, params);
    const BatchRecommendations recs = engine.recommend_all(std::nullopt, o.workers);
    const MetricsReport report = evaluate(recs, probe, graph, o.list_length);

    ConfigEcho echo{{"cmd", "evaluate"},
                    {"algo", o.algo},
                    {"lambda", detail::fmt_double(params.lambda)},
                    {"theta", detail::fmt_double(params.theta)},
                    {"seed", std::to_string(manifest.seed)},
                    {"L", std::to_string(o.list_length)}};
    std::string csv = detail::render_echo(echo);
    csv += MetricsReport::csv_header();
    csv += '\n';
    csv += report.to_csv_row(o.algo, params.lambda, params.theta, manifest.seed);
    csv += '\n';
    write_file_atomic(dir / ("metrics_" + o.algo + ".csv"), csv);

    print_metric_table_header();
    print_metric_row(o.algo, params.lambda, params.theta, report);
    return 0;
}

// --- sweep -----------------------------------------------------------------

struct SweepOpts {
    std::string out;
    std::string algo = "hybrid-pref";
    std::vector<double> theta_grid;
    std::vector<double> lambda_grid;
    std::vector<std::uint64_t> seeds;
    double probe_frac = 0.1;
    std::uint32_t list_length = kDefaultListLength;
    unsigned workers = 0;
};

GridSpec grid_for_selector(const std::string& algo, std::vector<double> theta_grid,
                           std::vector<double> lambda_grid,
                           std::vector<std::uint64_t> seeds, std::uint32_t list_length) {
    GridSpec grid;
    grid.seeds = seeds.empty() ? default_seeds() : std::move(seeds);
    grid.list_length = list_length;
    const bool has_theta = !theta_grid.empty();
    const bool has_lambda = !lambda_grid.empty();
    if (algo == "hybrid-pref") {
        grid.theta_values = has_theta ? std::move(theta_grid) : default_theta_grid();
        grid.lambda_values = has_lambda ? std::move(lambda_grid) : default_lambda_grid();
    } else if (algo == "spmd" || algo == "sphc") {
        if (has_lambda)
            throw UsageError("selector '" + algo + "' pins lambda; --lambda-grid not allowed");
        grid.theta_values = has_theta ? std::move(theta_grid) : default_theta_grid();
        grid.lambda_values = {algo == "spmd" ? 1.0 : 0.0};
    } else if (algo == "hybrid") {
        if (has_theta)
            throw UsageError("selector 'hybrid' pins theta to 1; --theta-grid not allowed");
        grid.theta_values = {1.0};
        grid.lambda_values = has_lambda ? std::move(lambda_grid) : default_lambda_grid();
    } else if (algo == "md" || algo == "hc") {
        if (has_theta || has_lambda)
            throw UsageError("selector '" + algo + "' takes no parameter grids");
        grid.theta_values = {1.0};
        grid.lambda_values = {algo == "md" ? 1.0 : 0.0};
    } else {
        throw UsageError("unknown --algo '" + algo + "' (md|hc|spmd|sphc|hybrid|hybrid-pref)");
    }
    return grid;
}

int run_sweep(const SweepOpts& o) {
    const fs::path dir(o.out);
    const LinksFile links = load_links_or_usage(dir);
    const GridSpec grid =
        grid_for_selector(o.algo, o.theta_grid, o.lambda_grid, o.seeds, o.list_length);
    const Dims dims{links.num_users, links.num_items};
    const SweepResult sweep = run_grid(links.links, dims, grid, o.probe_frac, o.workers);

    ConfigEcho echo{{"cmd", "sweep"},
                    {"algo", o.algo},
                    {"probe_fraction", detail::fmt_double_exact(o.probe_frac)}};
    echo_grid(echo, grid);
    write_sweep_csv(dir / "sweep.csv", sweep, o.algo, echo);
    write_sweep_summary_csv(dir / "sweep_summary.csv", sweep, echo);
    write_heatmap_tsv(dir / "heatmap_rs.tsv", sweep, HeatmapMetric::rs, echo);
    write_heatmap_tsv(dir / "heatmap_p.tsv", sweep, HeatmapMetric::p, echo);
    write_heatmap_tsv(dir / "heatmap_h.tsv", sweep, HeatmapMetric::h, echo);
    write_heatmap_tsv(dir / "heatmap_n.tsv", sweep, HeatmapMetric::n, echo);

    const CellStats& best = sweep.best_cell();
    std::printf("cells=%zu seeds=%zu best: theta=%s lambda=%s rs_mean=%s rs_stddev=%s\n",
                sweep.cells.size(), sweep.seed_count(), detail::fmt_double(best.theta).c_str(),
                detail::fmt_double(best.lambda).c_str(), detail::fmt_double(best.rs_mean).c_str(),
                detail::fmt_double(best.rs_stddev).c_str());
    return 0;
}

// --- sparsity --------------------------------------------------------------

struct SparsityOpts {
    std::string out;
    std::vector<double> p_values;
    std::vector<double> theta_grid;
    std::vector<double> lambda_grid;
    std::vector<std::uint64_t> seeds;
    std::uint32_t list_length = kDefaultListLength;
    unsigned workers = 0;
};

int run_sparsity(const SparsityOpts& o) {
    const fs::path dir(o.out);
    const LinksFile links = load_links_or_usage(dir);

    std::vector<double> p_values = o.p_values;
    if (p_values.empty())
        for (int k = 1; k <= 9; ++k) p_values.push_back(k / 10.0);

    GridSpec grid;
    grid.theta_values = o.theta_grid.empty() ? coarse_theta_grid() : o.theta_grid;
    grid.lambda_values = o.lambda_grid.empty() ? coarse_lambda_grid() : o.lambda_grid;
    grid.list_length = o.list_length;
    const std::vector<std::uint64_t> seeds = o.seeds.empty() ? default_seeds() : o.seeds;
    grid.seeds = seeds;

    const Dims dims{links.num_users, links.num_items};
    const SparsityCurve curve =
        sparsity_study(links.links, dims, p_values, grid, seeds, o.workers);

    ConfigEcho echo{{"cmd", "sparsity"}};
    {
        std::string ps;
        for (double p : p_values) {
            if (!ps.empty()) ps += ',';
            ps += detail::fmt_double(p);
        }
        echo.emplace_back("p_values", ps);
    }
    echo_grid(echo, grid);
    write_sparsity_csv(dir / "sparsity.csv", curve, echo);

    std::printf("%-6s %-14s %-10s %-12s %-14s %-12s\n", "p", "rs_pref", "theta*", "lambda*",
                "rs_orig", "lambda*_orig");
    for (const SparsityPoint& pt : curve.points)
        std::printf("%-6s %-14s %-10s %-12s %-14s %-12s\n", detail::fmt_double(pt.p).c_str(),
                    detail::fmt_double(pt.rs_pref_mean).c_str(),
                    detail::fmt_double(pt.theta_star).c_str(),
                    detail::fmt_double(pt.lambda_star).c_str(),
                    detail::fmt_double(pt.rs_orig_mean).c_str(),
                    detail::fmt_double(pt.lambda_star_orig).c_str());
    return 0;
}

// --- tune ------------------------------------------------------------------

struct TuneOpts {
    std::string out;
    double probe_frac = 0.1;
    double test_frac = 0.1;
    std::uint64_t seed = 1;
    std::vector<double> theta_grid;
    std::vector<double> lambda_grid;
    std::uint32_t list_length = kDefaultListLength;
    unsigned workers = 0;
};

int run_tune(const TuneOpts& o) {
    const fs::path dir(o.out);
    const LinksFile links = load_links_or_usage(dir);
    const Dims dims{links.num_users, links.num_items};

    SplitSpec spec;
    spec.probe_fraction = o.probe_frac;
    spec.testing_fraction = o.test_frac;
    spec.seed = o.seed;

    GridSpec pref_grid;
    pref_grid.theta_values = o.theta_grid.empty() ? default_theta_grid() : o.theta_grid;
    pref_grid.lambda_values = o.lambda_grid.empty() ? default_lambda_grid() : o.lambda_grid;
    pref_grid.seeds = {o.seed};
    pref_grid.list_length = o.list_length;
    GridSpec orig_grid = pref_grid;
    orig_grid.theta_values = {1.0};

    const TuneOutcome pref = tune_and_test(links.links, dims, spec, pref_grid, o.workers);
    const TuneOutcome orig = tune_and_test(links.links, dims, spec, orig_grid, o.workers);

    ConfigEcho echo{{"cmd", "tune"},
                    {"probe_fraction", detail::fmt_double_exact(o.probe_frac)},
                    {"testing_fraction", detail::fmt_double_exact(o.test_frac)},
                    {"seed", std::to_string(o.seed)}};
    echo_grid(echo, pref_grid);
    write_tune_csv(dir / "tune_hybrid_pref.csv", pref, "hybrid-pref", o.seed, echo);
    write_tune_csv(dir / "tune_hybrid.csv", orig, "hybrid", o.seed, echo);
    write_tune_summary_csv(dir / "tune_summary.csv",
                           {{"hybrid-pref", pref}, {"hybrid", orig}}, echo);

    print_metric_table_header();
    print_metric_row("hybrid-pref", pref.chosen.lambda, pref.chosen.theta, pref.probe_report);
    print_metric_row("hybrid", orig.chosen.lambda, orig.chosen.theta, orig.probe_report);
    return 0;
}

// --- synth -----------------------------------------------------------------

struct SynthOpts {
    std::uint32_t users = 3000;
    std::uint32_t items = 3000;
    std::uint64_t links = 197248;
    std::uint64_t seed = 1;
    std::string out;
};

int run_synth(const SynthOpts& o) {
    const LinkSet links = synth_dataset(o.users, o.items, o.links, o.seed);
    ConfigEcho echo{{"cmd", "synth"},
                    {"users", std::to_string(o.users)},
                    {"items", std::to_string(o.items)},
                    {"links", std::to_string(o.links)},
                    {"seed", std::to_string(o.seed)}};
    fs::create_directories(o.out);
    write_links(fs::path(o.out) / "links.tsv", links, o.users, o.items, echo);
    std::printf("users=%u items=%u links=%zu\n", o.users, o.items, links.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bipartite diffusion recommender: data preparation, scoring, and experiment drivers"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");
    app.get_formatter()->column_width(34);

    PrepareOpts prepare;
    auto* cmd_prepare = app.add_subcommand("prepare", "Parse ratings, filter, split, write work dir");
    cmd_prepare->add_option("--data", prepare.data, "Ratings file (user, item, rating[, timestamp])")
        ->required();
    cmd_prepare->add_option("--delim", prepare.delim, "Field delimiter: single char, 'tab', 'comma'");
    cmd_prepare->add_option("--min-rating", prepare.min_rating, "Keep ratings >= this (default 3)");
    cmd_prepare->add_option("--probe-frac", prepare.probe_frac, "Probe fraction (default 0.1)");
    cmd_prepare->add_option("--test-frac", prepare.test_frac,
                            "Testing fraction for three-way splits (off by default)");
    cmd_prepare->add_option("--seed", prepare.seed, "Split seed (default 1)");
    cmd_prepare->add_option("--out", prepare.out, "Work directory to create")->required();

    EvaluateOpts evaluate;
    auto* cmd_evaluate =
        app.add_subcommand("evaluate", "Score one algorithm against the prepared probe split");
    cmd_evaluate->add_option("--out", evaluate.out, "Work directory from prepare")->required();
    cmd_evaluate->add_option("--algo", evaluate.algo, "md|hc|spmd|sphc|hybrid|hybrid-pref")
        ->required();
    cmd_evaluate->add_option("--theta", evaluate.theta, "Similarity exponent (spmd|sphc|hybrid-pref)");
    cmd_evaluate->add_option("--lambda", evaluate.lambda, "Blend parameter (hybrid|hybrid-pref)");
    cmd_evaluate->add_option("--L", evaluate.list_length, "Recommendation list length (default 20)");
    cmd_evaluate->add_option("--workers", evaluate.workers, "Worker threads (0 = all cores)");

    SweepOpts sweep;
    auto* cmd_sweep = app.add_subcommand("sweep", "Grid search over (theta, lambda) across seeds");
    cmd_sweep->add_option("--out", sweep.out, "Work directory holding links.tsv")->required();
    cmd_sweep->add_option("--algo", sweep.algo, "Family to sweep (default hybrid-pref)");
    cmd_sweep->add_option("--theta-grid", sweep.theta_grid, "Theta values (default 0.2..4.0 step 0.2)")
        ->delimiter(',');
    cmd_sweep->add_option("--lambda-grid", sweep.lambda_grid, "Lambda values (default 0..1 step 0.02)")
        ->delimiter(',');
    cmd_sweep->add_option("--seeds", sweep.seeds, "Split seeds (default 1,2,3,4,5)")->delimiter(',');
    cmd_sweep->add_option("--probe-frac", sweep.probe_frac, "Probe fraction (default 0.1)");
    cmd_sweep->add_option("--L", sweep.list_length, "Recommendation list length (default 20)");
    cmd_sweep->add_option("--workers", sweep.workers, "Worker threads (0 = all cores)");

    SparsityOpts sparsity;
    auto* cmd_sparsity =
        app.add_subcommand("sparsity", "Optimal RS of both hybrids at several training densities");
    cmd_sparsity->add_option("--out", sparsity.out, "Work directory holding links.tsv")->required();
    cmd_sparsity->add_option("--p-values", sparsity.p_values, "Training fractions (default 0.1..0.9)")
        ->delimiter(',');
    cmd_sparsity->add_option("--theta-grid", sparsity.theta_grid,
                             "Theta values (default 0.2..3.8 step 0.4)")
        ->delimiter(',');
    cmd_sparsity->add_option("--lambda-grid", sparsity.lambda_grid,
                             "Lambda values (default 0..1 step 0.05)")
        ->delimiter(',');
    cmd_sparsity->add_option("--seeds", sparsity.seeds, "Split seeds (default 1,2,3,4,5)")
        ->delimiter(',');
    cmd_sparsity->add_option("--L", sparsity.list_length, "Recommendation list length (default 20)");
    cmd_sparsity->add_option("--workers", sparsity.workers, "Worker threads (0 = all cores)");

    TuneOpts tune;
    auto* cmd_tune =
        app.add_subcommand("tune", "Three-way split: tune on testing, report on probe");
    cmd_tune->add_option("--out", tune.out, "Work directory holding links.tsv")->required();
    cmd_tune->add_option("--probe-frac", tune.probe_frac, "Probe fraction (default 0.1)");
    cmd_tune->add_option("--test-frac", tune.test_frac, "Testing fraction (default 0.1)");
    cmd_tune->add_option("--seed", tune.seed, "Split seed (default 1)");
    cmd_tune->add_option("--theta-grid", tune.theta_grid, "Theta values (default 0.2..4.0 step 0.2)")
        ->delimiter(',');
    cmd_tune->add_option("--lambda-grid", tune.lambda_grid, "Lambda values (default 0..1 step 0.02)")
        ->delimiter(',');
    cmd_tune->add_option("--L", tune.list_length, "Recommendation list length (default 20)");
    cmd_tune->add_option("--workers", tune.workers, "Worker threads (0 = all cores)");

    SynthOpts synth;
    auto* cmd_synth =
        app.add_subcommand("synth", "Generate a preferential-attachment bipartite dataset");
    cmd_synth->add_option("--users", synth.users, "User count (default 3000)");
    cmd_synth->add_option("--items", synth.items, "Item count (default 3000)");
    cmd_synth->add_option("--links", synth.links, "Link count (default 197248)");
    cmd_synth->add_option("--seed", synth.seed, "Generator seed (default 1)");
    cmd_synth->add_option("--out", synth.out, "Work directory to create")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_prepare->parsed()) return run_prepare(prepare);
        if (cmd_evaluate->parsed()) return run_evaluate(evaluate);
        if (cmd_sweep->parsed()) return run_sweep(sweep);
        if (cmd_sparsity->parsed()) return run_sparsity(sparsity);
        if (cmd_tune->parsed()) return run_tune(tune);
        if (cmd_synth->parsed()) return run_synth(synth);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
