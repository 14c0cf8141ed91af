#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "diffrec/errors.hpp"

namespace diffrec {

using UserIndex = std::uint32_t;
using ItemIndex = std::uint32_t;

/// One user-item link, in the dense 0-based index space.
struct Link {
    UserIndex user;
    ItemIndex item;

    friend bool operator==(const Link&, const Link&) = default;
    friend auto operator<=>(const Link&, const Link&) = default;
};

/// Ordered list of (user, item) pairs. Serves as raw data, training set
/// and probe set alike; which role it plays is up to the caller.
using LinkSet = std::vector<Link>;

/**
 * Immutable bipartite network in compressed form. Both directions are
 * stored explicitly: row view (user -> items) and column view
 * (item -> users), each sorted ascending. Degrees are O(1), neighbor
 * iteration is O(deg). Safe for concurrent reads once built.
 */
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    std::uint32_t num_users() const { return num_users_; }
    std::uint32_t num_items() const { return num_items_; }
    std::size_t num_links() const { return user_items_.size(); }

    std::uint32_t user_degree(UserIndex u) const {
        check_user(u);
        return user_offsets_[u + 1] - user_offsets_[u];
    }

    std::uint32_t item_degree(ItemIndex a) const {
        check_item(a);
        return item_offsets_[a + 1] - item_offsets_[a];
    }

    /// Items collected by user u, ascending.
    std::pair<const ItemIndex*, const ItemIndex*> items_of(UserIndex u) const {
        check_user(u);
        return {user_items_.data() + user_offsets_[u],
                user_items_.data() + user_offsets_[u + 1]};
    }

    /// Users who collected item a, ascending.
    std::pair<const UserIndex*, const UserIndex*> users_of(ItemIndex a) const {
        check_item(a);
        return {item_users_.data() + item_offsets_[a],
                item_users_.data() + item_offsets_[a + 1]};
    }

    std::uint32_t max_user_degree() const { return max_user_degree_; }
    std::uint32_t max_item_degree() const { return max_item_degree_; }

    // Raw compressed views for kernels that iterate both directions
    // without per-call bounds checks.
    const std::vector<std::uint32_t>& user_offsets() const { return user_offsets_; }
    const std::vector<ItemIndex>& user_adjacency() const { return user_items_; }
    const std::vector<std::uint32_t>& item_offsets() const { return item_offsets_; }
    const std::vector<UserIndex>& item_adjacency() const { return item_users_; }

    friend BipartiteGraph build_graph(const LinkSet& links,
                                      std::uint32_t num_users,
                                      std::uint32_t num_items);

private:
    void check_user(UserIndex u) const {
        if (u >= num_users_) throw DimensionError("user index out of range");
    }
    void check_item(ItemIndex a) const {
        if (a >= num_items_) throw DimensionError("item index out of range");
    }

    std::uint32_t num_users_ = 0;
    std::uint32_t num_items_ = 0;
    std::vector<std::uint32_t> user_offsets_{0};
    std::vector<ItemIndex> user_items_;
    std::vector<std::uint32_t> item_offsets_{0};
    std::vector<UserIndex> item_users_;
    std::uint32_t max_user_degree_ = 0;
    std::uint32_t max_item_degree_ = 0;
};

/**
 * Build both adjacency views from a link list. Indices must fall inside
 * the declared dimensions and pairs must be unique; violations throw
 * DimensionError / DuplicateLinkError.
 */
inline BipartiteGraph build_graph(const LinkSet& links, std::uint32_t num_users,
                                  std::uint32_t num_items) {
    BipartiteGraph g;
    g.num_users_ = num_users;
    g.num_items_ = num_items;

    std::vector<std::uint32_t> user_count(num_users, 0);
    std::vector<std::uint32_t> item_count(num_items, 0);
    for (const Link& l : links) {
        if (l.user >= num_users) throw DimensionError("link user index out of range");
        if (l.item >= num_items) throw DimensionError("link item index out of range");
        ++user_count[l.user];
        ++item_count[l.item];
    }

    g.user_offsets_.assign(num_users + 1, 0);
    for (std::uint32_t u = 0; u < num_users; ++u)
        g.user_offsets_[u + 1] = g.user_offsets_[u] + user_count[u];
    g.item_offsets_.assign(num_items + 1, 0);
    for (std::uint32_t a = 0; a < num_items; ++a)
        g.item_offsets_[a + 1] = g.item_offsets_[a] + item_count[a];

    g.user_items_.resize(links.size());
    g.item_users_.resize(links.size());
    std::vector<std::uint32_t> upos(g.user_offsets_.begin(), g.user_offsets_.end() - 1);
    std::vector<std::uint32_t> ipos(g.item_offsets_.begin(), g.item_offsets_.end() - 1);
    for (const Link& l : links) {
        g.user_items_[upos[l.user]++] = l.item;
        g.item_users_[ipos[l.item]++] = l.user;
    }

    for (std::uint32_t u = 0; u < num_users; ++u) {
        auto first = g.user_items_.begin() + g.user_offsets_[u];
        auto last = g.user_items_.begin() + g.user_offsets_[u + 1];
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last)
            throw DuplicateLinkError("duplicate (user, item) link for user " +
                                     std::to_string(u));
    }
    for (std::uint32_t a = 0; a < num_items; ++a) {
        auto first = g.item_users_.begin() + g.item_offsets_[a];
        auto last = g.item_users_.begin() + g.item_offsets_[a + 1];
        std::sort(first, last);
    }

    for (std::uint32_t u = 0; u < num_users; ++u)
        g.max_user_degree_ = std::max(g.max_user_degree_, user_count[u]);
    for (std::uint32_t a = 0; a < num_items; ++a)
        g.max_item_degree_ = std::max(g.max_item_degree_, item_count[a]);
    return g;
}

}  // namespace diffrec
