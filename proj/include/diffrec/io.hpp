#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diffrec/dataset.hpp"
#include "diffrec/errors.hpp"
#include "diffrec/graph.hpp"
#include "diffrec/harness.hpp"
#include "diffrec/metrics.hpp"

namespace diffrec {

/// Resolved-config keys echoed at the top of every output file as
/// "# key=value" lines, so any artifact names the run that produced it.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

namespace detail {

// Shortest representation that parses back to the same bits.
inline std::string fmt_double_exact(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string render_echo(const ConfigEcho& echo) {
    std::string out;
    for (const auto& [key, value] : echo) {
        out += "# ";
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    return out;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return in;
}

inline void split_fields(std::string_view line, char delimiter,
                         std::vector<std::string_view>& fields) {
    fields.clear();
    while (true) {
        const std::size_t pos = line.find(delimiter);
        if (pos == std::string_view::npos) {
            fields.push_back(line);
            return;
        }
        fields.push_back(line.substr(0, pos));
        line.remove_prefix(pos + 1);
    }
}

// Strips the trailing \r of CRLF files and tells comment/blank lines
// apart from content.
inline bool content_line(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return !line.empty() && line[0] != '#';
}

inline bool parse_double(std::string_view field, double& out) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !field.empty();
}

}  // namespace detail

/// Writes via a sibling .tmp file and renames into place, so a crash or
/// failure never leaves a partial file under the final name.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw IoError("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("failed to move " + tmp.string() + " into place: " + ec.message());
}

// ---------------------------------------------------------------------------
// Link file: one dimensions line "num_users<TAB>num_items<TAB>num_links",
// then one "user<TAB>item" line per link, indices zero-based.

struct LinksFile {
    LinkSet links;
    std::uint32_t num_users = 0;
    std::uint32_t num_items = 0;
};

inline void write_links(const std::filesystem::path& path, const LinkSet& links,
                        std::uint32_t num_users, std::uint32_t num_items,
                        const ConfigEcho& echo) {
    std::string out = detail::render_echo(echo);
    out += std::to_string(num_users);
    out += '\t';
    out += std::to_string(num_items);
    out += '\t';
    out += std::to_string(links.size());
    out += '\n';
    for (const Link& l : links) {
        out += std::to_string(l.user);
        out += '\t';
        out += std::to_string(l.item);
        out += '\n';
    }
    write_file_atomic(path, out);
}

inline LinksFile read_links(const std::filesystem::path& path) {
    std::ifstream in = detail::open_input(path);
    LinksFile out;
    std::string line;
    std::vector<std::string_view> fields;
    std::size_t line_no = 0;
    bool have_dims = false;
    std::size_t declared = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::content_line(line)) continue;
        detail::split_fields(line, '\t', fields);
        std::int64_t a = 0, b = 0, c = 0;
        if (!have_dims) {
            if (fields.size() != 3 || !detail::parse_int64(fields[0], a) ||
                !detail::parse_int64(fields[1], b) || !detail::parse_int64(fields[2], c) ||
                a < 0 || b < 0 || c < 0)
                throw ParseError(line_no, "malformed dimensions line");
            out.num_users = static_cast<std::uint32_t>(a);
            out.num_items = static_cast<std::uint32_t>(b);
            declared = static_cast<std::size_t>(c);
            out.links.reserve(declared);
            have_dims = true;
            continue;
        }
        if (fields.size() != 2 || !detail::parse_int64(fields[0], a) ||
            !detail::parse_int64(fields[1], b) || a < 0 || b < 0)
            throw ParseError(line_no, "malformed link line");
        out.links.push_back(Link{static_cast<UserIndex>(a), static_cast<ItemIndex>(b)});
    }
    if (!have_dims) throw ParseError(line_no, "missing dimensions line");
    if (out.links.size() != declared)
        throw ParseError(line_no, "expected " + std::to_string(declared) + " links, found " +
                                      std::to_string(out.links.size()));
    return out;
}

// ---------------------------------------------------------------------------
// Id map file: "user<TAB>raw<TAB>index" then "item<TAB>raw<TAB>index"
// rows, indices ascending. Re-interning in file order reproduces the map.

inline void write_idmap(const std::filesystem::path& path, const IdMap& map,
                        const ConfigEcho& echo) {
    std::string out = detail::render_echo(echo);
    for (UserIndex u = 0; u < map.num_users(); ++u) {
        out += "user\t";
        out += std::to_string(map.raw_user(u));
        out += '\t';
        out += std::to_string(u);
        out += '\n';
    }
    for (ItemIndex a = 0; a < map.num_items(); ++a) {
        out += "item\t";
        out += std::to_string(map.raw_item(a));
        out += '\t';
        out += std::to_string(a);
        out += '\n';
    }
    write_file_atomic(path, out);
}

inline IdMap read_idmap(const std::filesystem::path& path) {
    std::ifstream in = detail::open_input(path);
    IdMap map;
    std::string line;
    std::vector<std::string_view> fields;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::content_line(line)) continue;
        detail::split_fields(line, '\t', fields);
        std::int64_t raw = 0, index = 0;
        if (fields.size() != 3 || !detail::parse_int64(fields[1], raw) ||
            !detail::parse_int64(fields[2], index))
            throw ParseError(line_no, "malformed id map line");
        if (fields[0] == "user") {
            if (map.intern_user(raw) != static_cast<UserIndex>(index))
                throw ParseError(line_no, "user index out of order");
        } else if (fields[0] == "item") {
            if (map.intern_item(raw) != static_cast<ItemIndex>(index))
                throw ParseError(line_no, "item index out of order");
        } else {
            throw ParseError(line_no, "unknown id map row kind '" + std::string(fields[0]) + "'");
        }
    }
    return map;
}

// ---------------------------------------------------------------------------
// Split manifest: "key=value" lines for seed and fractions, then one
// "probe<TAB>raw_user<TAB>raw_item" line per held-out link (and
// "testing<TAB>..." rows for three-way splits). Raw ids keep the manifest
// meaningful next to the original ratings file.

struct Manifest {
    std::uint64_t seed = 0;
    double probe_fraction = 0.0;
    std::optional<double> testing_fraction;
    std::vector<std::pair<std::int64_t, std::int64_t>> probe_raw;
    std::vector<std::pair<std::int64_t, std::int64_t>> testing_raw;
};

inline void write_manifest(const std::filesystem::path& path, const Manifest& manifest,
                           const ConfigEcho& echo) {
    std::string out = detail::render_echo(echo);
    out += "seed=" + std::to_string(manifest.seed) + '\n';
    out += "probe_fraction=" + detail::fmt_double_exact(manifest.probe_fraction) + '\n';
    if (manifest.testing_fraction)
        out += "testing_fraction=" + detail::fmt_double_exact(*manifest.testing_fraction) + '\n';
    for (const auto& [u, a] : manifest.probe_raw)
        out += "probe\t" + std::to_string(u) + '\t' + std::to_string(a) + '\n';
    for (const auto& [u, a] : manifest.testing_raw)
        out += "testing\t" + std::to_string(u) + '\t' + std::to_string(a) + '\n';
    write_file_atomic(path, out);
}

inline Manifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in = detail::open_input(path);
    Manifest manifest;
    bool saw_seed = false, saw_probe_fraction = false;
    std::string line;
    std::vector<std::string_view> fields;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::content_line(line)) continue;
        detail::split_fields(line, '\t', fields);
        if (fields.size() == 3 && (fields[0] == "probe" || fields[0] == "testing")) {
            std::int64_t u = 0, a = 0;
            if (!detail::parse_int64(fields[1], u) || !detail::parse_int64(fields[2], a))
                throw ParseError(line_no, "malformed manifest link line");
            auto& side = fields[0] == "probe" ? manifest.probe_raw : manifest.testing_raw;
            side.emplace_back(u, a);
            continue;
        }
        const std::string_view sv = fields.size() == 1 ? fields[0] : std::string_view(line);
        const std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected key=value or link line");
        const std::string_view key = sv.substr(0, eq);
        const std::string_view value = sv.substr(eq + 1);
        if (key == "seed") {
            std::int64_t s = 0;
            if (!detail::parse_int64(value, s) || s < 0)
                throw ParseError(line_no, "unparseable seed");
            manifest.seed = static_cast<std::uint64_t>(s);
            saw_seed = true;
        } else if (key == "probe_fraction") {
            if (!detail::parse_double(value, manifest.probe_fraction))
                throw ParseError(line_no, "unparseable probe_fraction");
            saw_probe_fraction = true;
        } else if (key == "testing_fraction") {
            double f = 0.0;
            if (!detail::parse_double(value, f))
                throw ParseError(line_no, "unparseable testing_fraction");
            manifest.testing_fraction = f;
        } else {
            throw ParseError(line_no, "unknown manifest key '" + std::string(key) + "'");
        }
    }
    if (!saw_seed || !saw_probe_fraction)
        throw ParseError(line_no, "manifest missing seed or probe_fraction");
    return manifest;
}

// ---------------------------------------------------------------------------
// Harness artifacts.

/// One row per (theta, lambda, seed) in grid scan order.
inline void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep,
                            const std::string& algorithm, const ConfigEcho& echo) {
    std::string out = detail::render_echo(echo);
    out += MetricsReport::csv_header();
    out += '\n';
    for (std::size_t ti = 0; ti < sweep.theta_count(); ++ti)
        for (std::size_t li = 0; li < sweep.lambda_count(); ++li)
            for (std::size_t si = 0; si < sweep.seed_count(); ++si) {
                out += sweep.report_at(ti, li, si)
                           .to_csv_row(algorithm, sweep.grid.lambda_values[li],
                                       sweep.grid.theta_values[ti], sweep.grid.seeds[si]);
                out += '\n';
            }
    write_file_atomic(path, out);
}

/// Per-cell seed means; the winning cell is echoed in the header.
inline void write_sweep_summary_csv(const std::filesystem::path& path,
                                    const SweepResult& sweep, ConfigEcho echo) {
    echo.emplace_back("best_theta", detail::fmt_double(sweep.best_cell().theta));
    echo.emplace_back("best_lambda", detail::fmt_double(sweep.best_cell().lambda));
    echo.emplace_back("best_rs_mean", detail::fmt_double(sweep.best_cell().rs_mean));
    std::string out = detail::render_echo(echo);
    out += "theta,lambda,rs_mean,rs_stddev,rs_count,p_mean,h_mean,n_mean\n";
    for (std::size_t ti = 0; ti < sweep.theta_count(); ++ti)
        for (std::size_t li = 0; li < sweep.lambda_count(); ++li) {
            const CellStats& c = sweep.cell_at(ti, li);
            out += detail::fmt_double(c.theta);
            out += ',';
            out += detail::fmt_double(c.lambda);
            out += ',';
            out += detail::fmt_double(c.rs_mean);
            out += ',';
            out += detail::fmt_double(c.rs_stddev);
            out += ',';
            out += std::to_string(c.rs_count);
            out += ',';
            out += detail::fmt_double(c.p_mean);
            out += ',';
            out += detail::fmt_double(c.h_mean);
            out += ',';
            out += detail::fmt_double(c.n_mean);
            out += '\n';
        }
    write_file_atomic(path, out);
}

enum class HeatmapMetric { rs, p, h, n };

/// Matrix of seed-mean values, rows theta ascending, columns lambda
/// ascending, both labeled.
inline void write_heatmap_tsv(const std::filesystem::path& path, const SweepResult& sweep,
                              HeatmapMetric metric, const ConfigEcho& echo) {
    std::string out = detail::render_echo(echo);
    out += "theta\\lambda";
    for (double l : sweep.grid.lambda_values) {
        out += '\t';
        out += detail::fmt_double(l);
    }
    out += '\n';
    for (std::size_t ti = 0; ti < sweep.theta_count(); ++ti) {
        out += detail::fmt_double(sweep.grid.theta_values[ti]);
        for (std::size_t li = 0; li < sweep.lambda_count(); ++li) {
            const CellStats& c = sweep.cell_at(ti, li);
            double v = 0.0;
            switch (metric) {
                case HeatmapMetric::rs: v = c.rs_mean; break;
                case HeatmapMetric::p: v = c.p_mean; break;
                case HeatmapMetric::h: v = c.h_mean; break;
                case HeatmapMetric::n: v = c.n_mean; break;
            }
            out += '\t';
            out += detail::fmt_double(v);
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

inline void write_sparsity_csv(const std::filesystem::path& path, const SparsityCurve& curve,
                               const ConfigEcho& echo) {
    std::string out = detail::render_echo(echo);
    out += "p,rs_pref_mean,rs_pref_stddev,theta_star,lambda_star,"
           "rs_orig_mean,rs_orig_stddev,lambda_star_orig\n";
    for (const SparsityPoint& pt : curve.points) {
        out += detail::fmt_double(pt.p);
        out += ',';
        out += detail::fmt_double(pt.rs_pref_mean);
        out += ',';
        out += detail::fmt_double(pt.rs_pref_stddev);
        out += ',';
        out += detail::fmt_double(pt.theta_star);
        out += ',';
        out += detail::fmt_double(pt.lambda_star);
        out += ',';
        out += detail::fmt_double(pt.rs_orig_mean);
        out += ',';
        out += detail::fmt_double(pt.rs_orig_stddev);
        out += ',';
        out += detail::fmt_double(pt.lambda_star_orig);
        out += '\n';
    }
    write_file_atomic(path, out);
}

/// Full per-set metric rows for one tuned method: one row evaluated on
/// the testing set, one on the probe set.
inline void write_tune_csv(const std::filesystem::path& path, const TuneOutcome& outcome,
                           const std::string& algorithm, std::uint64_t seed,
                           const ConfigEcho& echo) {
    std::string out = detail::render_echo(echo);
    out += "set,";
    out += MetricsReport::csv_header();
    out += '\n';
    out += "testing," + outcome.testing_report.to_csv_row(algorithm, outcome.chosen.lambda,
                                                          outcome.chosen.theta, seed);
    out += '\n';
    out += "probe," + outcome.probe_report.to_csv_row(algorithm, outcome.chosen.lambda,
                                                      outcome.chosen.theta, seed);
    out += '\n';
    write_file_atomic(path, out);
}

/// Side-by-side comparison of tuned methods on the probe set, one row per
/// method.
inline void write_tune_summary_csv(const std::filesystem::path& path,
                                   const std::vector<std::pair<std::string, TuneOutcome>>& rows,
                                   const ConfigEcho& echo) {
    std::string out = detail::render_echo(echo);
    out += "algorithm,theta_star,lambda_star,testing_rs,probe_rs,probe_p,probe_h,probe_n\n";
    for (const auto& [algorithm, outcome] : rows) {
        out += algorithm;
        out += ',';
        out += detail::fmt_double(outcome.chosen.theta);
        out += ',';
        out += detail::fmt_double(outcome.chosen.lambda);
        out += ',';
        out += detail::fmt_opt(outcome.testing_report.ranking_score);
        out += ',';
        out += detail::fmt_opt(outcome.probe_report.ranking_score);
        out += ',';
        out += detail::fmt_opt(outcome.probe_report.precision);
        out += ',';
        out += detail::fmt_double(outcome.probe_report.hamming);
        out += ',';
        out += detail::fmt_double(outcome.probe_report.novelty);
        out += '\n';
    }
    write_file_atomic(path, out);
}

}  // namespace diffrec
