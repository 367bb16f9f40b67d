#pragma once

#include "ringel/error.hpp"
#include "ringel/tree.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace ringel
{
    struct Star
    {
        int center = 0;         ///< vertex id in the original tree
        std::vector<int> leaves; ///< stripped leaves hanging from the center
    };

    struct StarForest
    {
        std::vector<Star> stars;

        auto edge_count() const -> int
        {
            int h = 0;
            for (const auto & s : stars)
                h += static_cast<int>(s.leaves.size());
            return h;
        }
    };

    /// T = T0 (+) F. All ids in `tree`, `in_t0` and `forest` refer to the
    /// original tree; `t0` is the same subtree relabeled onto 0..|T0|-1.
    struct Split
    {
        Tree tree;                     ///< the input tree, rerooted at x0
        std::vector<char> in_t0;
        StarForest forest;
        Tree t0;                       ///< compact copy of T0, rooted at x0
        std::vector<int> t0_to_tree;   ///< compact id -> original id
        std::vector<int> tree_to_t0;   ///< original id -> compact id, -1 for stripped leaves

        auto root() const -> int { return tree.root(); }

        auto is_center(int v) const -> bool
        {
            return std::any_of(forest.stars.begin(), forest.stars.end(), [&](const Star & s) { return s.center == v; });
        }

        /// Reattach every stripped leaf to its center.
        auto reattached() const -> Tree
        {
            Tree::EdgeList edges;
            for (auto [u, v] : t0.edges())
                edges.emplace_back(t0_to_tree[static_cast<std::size_t>(u)], t0_to_tree[static_cast<std::size_t>(v)]);
            for (const auto & s : forest.stars)
                for (auto leaf : s.leaves)
                    edges.emplace_back(s.center, leaf);
            return {tree.vertex_count(), std::move(edges), root()};
        }
    };

    /// Strip `count` leaves, preferring those latest in the peeling order, and
    /// root T0 at its lowest-indexed vertex that is not a star center.
    inline auto strip_leaves(const Tree & tree, int count) -> Split
    {
        auto n = tree.vertex_count();
        require(tree.edge_count() >= 2, ErrorCode::InvalidTree, "leaf stripping needs a tree with at least 2 edges");
        require(count >= 0 && count <= leaf_count(tree), ErrorCode::RegimeViolation,
            "cannot strip " + std::to_string(count) + " leaves from a tree with " + std::to_string(leaf_count(tree))
                + " leaves");

        const auto & order = tree.bfs_order();
        std::vector<int> position(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            position[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

        std::vector<int> leaves;
        for (int v = 0; v < n; ++v)
            if (tree.is_leaf(v))
                leaves.push_back(v);
        std::sort(leaves.begin(), leaves.end(), [&](int a, int b) {
            return position[static_cast<std::size_t>(a)] > position[static_cast<std::size_t>(b)];
        });

        std::vector<char> in_t0(static_cast<std::size_t>(n), 1);
        std::vector<char> center(static_cast<std::size_t>(n), 0);
        auto has_free_root = [&]() {
            for (int v = 0; v < n; ++v)
                if (in_t0[static_cast<std::size_t>(v)] && ! center[static_cast<std::size_t>(v)])
                    return true;
            return false;
        };

        std::map<int, std::vector<int>> stars;
        int stripped = 0;
        for (auto leaf : leaves) {
            if (stripped == count)
                break;
            auto hub = tree.neighbors(leaf).front();
            auto was_center = center[static_cast<std::size_t>(hub)];
            in_t0[static_cast<std::size_t>(leaf)] = 0;
            center[static_cast<std::size_t>(hub)] = 1;
            if (! has_free_root()) {
                in_t0[static_cast<std::size_t>(leaf)] = 1;
                center[static_cast<std::size_t>(hub)] = was_center;
                continue;
            }
            stars[hub].push_back(leaf);
            ++stripped;
        }
        require(stripped == count, ErrorCode::RegimeViolation,
            "could only strip " + std::to_string(stripped) + " of " + std::to_string(count)
                + " leaves while keeping a non-center root");

        int x0 = -1;
        for (int v = 0; v < n && x0 < 0; ++v)
            if (in_t0[static_cast<std::size_t>(v)] && ! center[static_cast<std::size_t>(v)])
                x0 = v;

        Split split{tree.rerooted(x0), in_t0, {}, {}, {}, {}};
        for (auto & [hub, ls] : stars) {
            std::sort(ls.begin(), ls.end());
            split.forest.stars.push_back({hub, ls});
        }

        // Compact T0 ids follow the original ids in increasing order.
        split.tree_to_t0.assign(static_cast<std::size_t>(n), -1);
        for (int v = 0; v < n; ++v)
            if (in_t0[static_cast<std::size_t>(v)]) {
                split.tree_to_t0[static_cast<std::size_t>(v)] = static_cast<int>(split.t0_to_tree.size());
                split.t0_to_tree.push_back(v);
            }
        Tree::EdgeList t0_edges;
        for (auto [u, v] : tree.edges())
            if (in_t0[static_cast<std::size_t>(u)] && in_t0[static_cast<std::size_t>(v)])
                t0_edges.emplace_back(split.tree_to_t0[static_cast<std::size_t>(u)],
                    split.tree_to_t0[static_cast<std::size_t>(v)]);
        split.t0 = Tree(static_cast<int>(split.t0_to_tree.size()), std::move(t0_edges),
            split.tree_to_t0[static_cast<std::size_t>(x0)]);
        return split;
    }

    /// ceil(2m/5): the number of leaves moved into the star forest.
    inline auto forest_leaf_target(int m) -> int
    {
        return (2 * m + 4) / 5;
    }
}
