#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "diffrec/errors.hpp"
#include "diffrec/graph.hpp"

namespace diffrec {

inline constexpr int kMinRatingScale = 1;
inline constexpr int kMaxRatingScale = 5;

/// One raw rating event as read from disk. IDs are opaque; the timestamp
/// is carried along but ignored downstream.
struct RatingRecord {
    std::int64_t raw_user_id;
    std::int64_t raw_item_id;
    int rating;
    std::optional<std::int64_t> timestamp;
};

/// Bijective mapping between raw dataset IDs and dense 0-based indices,
/// in first-appearance order of the records that survived filtering.
class IdMap {
public:
    UserIndex user_index(std::int64_t raw) const {
        auto it = user_forward_.find(raw);
        if (it == user_forward_.end()) throw DimensionError("unknown raw user id");
        return it->second;
    }
    ItemIndex item_index(std::int64_t raw) const {
        auto it = item_forward_.find(raw);
        if (it == item_forward_.end()) throw DimensionError("unknown raw item id");
        return it->second;
    }
    bool has_user(std::int64_t raw) const { return user_forward_.count(raw) != 0; }
    bool has_item(std::int64_t raw) const { return item_forward_.count(raw) != 0; }

    std::int64_t raw_user(UserIndex u) const { return user_inverse_.at(u); }
    std::int64_t raw_item(ItemIndex a) const { return item_inverse_.at(a); }

    std::uint32_t num_users() const { return static_cast<std::uint32_t>(user_inverse_.size()); }
    std::uint32_t num_items() const { return static_cast<std::uint32_t>(item_inverse_.size()); }

    UserIndex intern_user(std::int64_t raw) {
        auto [it, inserted] = user_forward_.try_emplace(
            raw, static_cast<UserIndex>(user_inverse_.size()));
        if (inserted) user_inverse_.push_back(raw);
        return it->second;
    }
    ItemIndex intern_item(std::int64_t raw) {
        auto [it, inserted] = item_forward_.try_emplace(
            raw, static_cast<ItemIndex>(item_inverse_.size()));
        if (inserted) item_inverse_.push_back(raw);
        return it->second;
    }

private:
    std::unordered_map<std::int64_t, UserIndex> user_forward_;
    std::unordered_map<std::int64_t, ItemIndex> item_forward_;
    std::vector<std::int64_t> user_inverse_;
    std::vector<std::int64_t> item_inverse_;
};

namespace detail {

inline bool parse_int64(std::string_view field, std::int64_t& out) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !field.empty();
}

}  // namespace detail

/**
 * Parse delimited rating lines: user_id, item_id, rating[, timestamp].
 * Blank lines and lines starting with '#' are skipped, so the parser
 * accepts files written by the CLI (which prefixes a config-echo comment
 * header). Errors carry the 1-based line number.
 */
inline std::vector<RatingRecord> parse_ratings(std::istream& source, char delimiter = '\t') {
    std::vector<RatingRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        std::vector<std::string_view> fields;
        std::string_view rest = line;
        while (true) {
            auto pos = rest.find(delimiter);
            if (pos == std::string_view::npos) {
                fields.push_back(rest);
                break;
            }
            fields.push_back(rest.substr(0, pos));
            rest.remove_prefix(pos + 1);
        }
        if (fields.size() < 3)
            throw ParseError(line_no, "expected at least 3 fields, got " +
                                          std::to_string(fields.size()));

        std::int64_t user, item, rating;
        if (!detail::parse_int64(fields[0], user))
            throw ParseError(line_no, "unparseable user id '" + std::string(fields[0]) + "'");
        if (!detail::parse_int64(fields[1], item))
            throw ParseError(line_no, "unparseable item id '" + std::string(fields[1]) + "'");
        if (!detail::parse_int64(fields[2], rating))
            throw ParseError(line_no, "unparseable rating '" + std::string(fields[2]) + "'");
        if (rating < kMinRatingScale || rating > kMaxRatingScale)
            throw RatingRangeError(line_no, "rating " + std::to_string(rating) +
                                                " outside " + std::to_string(kMinRatingScale) +
                                                ".." + std::to_string(kMaxRatingScale));

        RatingRecord rec{user, item, static_cast<int>(rating), std::nullopt};
        if (fields.size() >= 4) {
            std::int64_t ts;
            if (!detail::parse_int64(fields[3], ts))
                throw ParseError(line_no, "unparseable timestamp '" + std::string(fields[3]) + "'");
            rec.timestamp = ts;
        }
        records.push_back(rec);
    }
    return records;
}

/// Result of thresholding: the binary link set plus the ID mapping that
/// defines the dense index space (and with it the graph dimensions).
struct FilteredLinks {
    LinkSet links;
    IdMap id_map;

    std::uint32_t num_users() const { return id_map.num_users(); }
    std::uint32_t num_items() const { return id_map.num_items(); }
};

/**
 * Keep records with rating >= min_rating as binary links ("ratings higher
 * than 2" corresponds to min_rating = 3 on the 1..5 scale). Raw IDs are
 * remapped densely in first-appearance order among kept records; repeated
 * (user, item) pairs collapse to the first occurrence.
 */
inline FilteredLinks threshold_filter(const std::vector<RatingRecord>& records, int min_rating) {
    if (min_rating < kMinRatingScale || min_rating > kMaxRatingScale)
        throw SpecError("min_rating " + std::to_string(min_rating) + " outside rating scale");

    FilteredLinks out;
    std::unordered_map<std::uint64_t, bool> seen;
    seen.reserve(records.size());
    for (const RatingRecord& rec : records) {
        if (rec.rating < min_rating) continue;
        UserIndex u = out.id_map.intern_user(rec.raw_user_id);
        ItemIndex a = out.id_map.intern_item(rec.raw_item_id);
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | a;
        if (!seen.try_emplace(key, true).second) continue;
        out.links.push_back(Link{u, a});
    }
    return out;
}

}  // namespace diffrec
