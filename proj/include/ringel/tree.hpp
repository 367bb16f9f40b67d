#pragma once

#include "ringel/error.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ringel
{
    /// Rooted tree on vertices 0..n-1. Construction validates connectivity and
    /// acyclicity; afterwards the value is immutable.
    class Tree
    {
    public:
        using EdgeList = std::vector<std::pair<int, int>>;

        Tree() :
            Tree(1, {}, 0)
        {
        }

        Tree(int n, EdgeList edges, int root = 0) :
            _n(n),
            _edges(std::move(edges)),
            _root(root)
        {
            require(n >= 1, ErrorCode::InvalidTree, "a tree needs at least one vertex");
            require(static_cast<int>(_edges.size()) == n - 1, ErrorCode::InvalidTree,
                "a tree on " + std::to_string(n) + " vertices has " + std::to_string(n - 1) + " edges, got "
                    + std::to_string(_edges.size()));
            require(root >= 0 && root < n, ErrorCode::InvalidTree, "root out of range");
            _adjacency.assign(static_cast<std::size_t>(n), {});
            for (auto & [u, v] : _edges) {
                require(u >= 0 && u < n && v >= 0 && v < n && u != v, ErrorCode::InvalidTree,
                    "bad edge " + std::to_string(u) + " " + std::to_string(v));
                _adjacency[static_cast<std::size_t>(u)].push_back(v);
                _adjacency[static_cast<std::size_t>(v)].push_back(u);
            }
            for (auto & nbrs : _adjacency)
                std::sort(nbrs.begin(), nbrs.end());

            // n-1 edges plus connectivity implies acyclic.
            _parent.assign(static_cast<std::size_t>(n), -1);
            _depth.assign(static_cast<std::size_t>(n), -1);
            _bfs.reserve(static_cast<std::size_t>(n));
            _depth[static_cast<std::size_t>(root)] = 0;
            std::queue<int> queue;
            queue.push(root);
            while (! queue.empty()) {
                auto u = queue.front();
                queue.pop();
                _bfs.push_back(u);
                for (auto v : neighbors(u))
                    if (_depth[static_cast<std::size_t>(v)] < 0) {
                        _depth[static_cast<std::size_t>(v)] = _depth[static_cast<std::size_t>(u)] + 1;
                        _parent[static_cast<std::size_t>(v)] = u;
                        queue.push(v);
                    }
            }
            require(static_cast<int>(_bfs.size()) == n, ErrorCode::InvalidTree, "edge list is not connected");
        }

        auto vertex_count() const -> int { return _n; }
        auto edge_count() const -> int { return _n - 1; }
        auto root() const -> int { return _root; }
        auto edges() const -> const EdgeList & { return _edges; }
        auto neighbors(int v) const -> const std::vector<int> & { return _adjacency[static_cast<std::size_t>(v)]; }
        auto degree(int v) const -> int { return static_cast<int>(neighbors(v).size()); }
        /// Parent with respect to the root; -1 for the root itself.
        auto parent(int v) const -> int { return _parent[static_cast<std::size_t>(v)]; }
        auto depth(int v) const -> int { return _depth[static_cast<std::size_t>(v)]; }
        /// Breadth-first order from the root, neighbors visited in increasing id.
        auto bfs_order() const -> const std::vector<int> & { return _bfs; }

        auto children(int v) const -> std::vector<int>
        {
            std::vector<int> result;
            for (auto u : neighbors(v))
                if (u != parent(v))
                    result.push_back(u);
            return result;
        }

        auto is_leaf(int v) const -> bool { return _n >= 2 && degree(v) == 1; }

        auto rerooted(int new_root) const -> Tree { return {_n, _edges, new_root}; }

        /// Edges normalized to (min, max) and sorted; equal iff same labeled tree.
        auto normalized_edges() const -> EdgeList
        {
            auto result = _edges;
            for (auto & [u, v] : result)
                if (u > v)
                    std::swap(u, v);
            std::sort(result.begin(), result.end());
            return result;
        }

    private:
        int _n;
        EdgeList _edges;
        int _root;
        std::vector<std::vector<int>> _adjacency;
        std::vector<int> _parent;
        std::vector<int> _depth;
        std::vector<int> _bfs;
    };

    struct PeelingOrdering
    {
        std::vector<int> order;
    };

    /// Every prefix of the order induces a connected subgraph and the order
    /// starts at the root.
    inline auto is_peeling_ordering(const Tree & tree, const std::vector<int> & order) -> bool
    {
        if (static_cast<int>(order.size()) != tree.vertex_count() || order.empty() || order.front() != tree.root())
            return false;
        std::vector<char> seen(static_cast<std::size_t>(tree.vertex_count()), 0);
        seen[static_cast<std::size_t>(order.front())] = 1;
        for (std::size_t t = 1; t < order.size(); ++t) {
            auto v = order[t];
            if (v < 0 || v >= tree.vertex_count() || seen[static_cast<std::size_t>(v)])
                return false;
            const auto & nbrs = tree.neighbors(v);
            if (std::none_of(nbrs.begin(), nbrs.end(), [&](int u) { return seen[static_cast<std::size_t>(u)]; }))
                return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
        return true;
    }

    inline auto peeling_ordering(const Tree & tree) -> PeelingOrdering
    {
        return {tree.bfs_order()};
    }

    inline auto leaf_count(const Tree & tree) -> int
    {
        int count = 0;
        for (int v = 0; v < tree.vertex_count(); ++v)
            if (tree.is_leaf(v))
                ++count;
        return count;
    }

    namespace detail
    {
        inline auto tree_centers(const Tree & tree) -> std::vector<int>
        {
            auto n = tree.vertex_count();
            if (n <= 2) {
                std::vector<int> all(static_cast<std::size_t>(n));
                std::iota(all.begin(), all.end(), 0);
                return all;
            }
            std::vector<int> degree(static_cast<std::size_t>(n));
            std::vector<int> layer;
            for (int v = 0; v < n; ++v) {
                degree[static_cast<std::size_t>(v)] = tree.degree(v);
                if (degree[static_cast<std::size_t>(v)] == 1)
                    layer.push_back(v);
            }
            int remaining = n;
            while (remaining > 2) {
                remaining -= static_cast<int>(layer.size());
                std::vector<int> next;
                for (auto v : layer)
                    for (auto u : tree.neighbors(v))
                        if (--degree[static_cast<std::size_t>(u)] == 1)
                            next.push_back(u);
                layer = std::move(next);
            }
            std::sort(layer.begin(), layer.end());
            return layer;
        }

        inline auto encode_rooted(const Tree & tree, int root) -> std::string
        {
            // Iterative post-order so deep paths do not exhaust the stack.
            auto n = static_cast<std::size_t>(tree.vertex_count());
            std::vector<int> parent(n, -1), order;
            order.reserve(n);
            std::vector<int> stack{root};
            parent[static_cast<std::size_t>(root)] = root;
            while (! stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                order.push_back(v);
                for (auto u : tree.neighbors(v))
                    if (parent[static_cast<std::size_t>(u)] == -1) {
                        parent[static_cast<std::size_t>(u)] = v;
                        stack.push_back(u);
                    }
            }
            std::vector<std::vector<std::string>> parts(n);
            std::vector<std::string> code(n);
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                auto v = static_cast<std::size_t>(*it);
                auto & kids = parts[v];
                std::sort(kids.begin(), kids.end());
                std::string s = "(";
                for (auto & k : kids)
                    s += k;
                s += ")";
                kids.clear();
                kids.shrink_to_fit();
                if (*it != root)
                    parts[static_cast<std::size_t>(parent[v])].push_back(std::move(s));
                else
                    code[v] = std::move(s);
            }
            return code[static_cast<std::size_t>(root)];
        }
    }

    /// Canonical form of the free tree (root ignored): the AHU encoding rooted
    /// at the center, or the smaller of the two encodings for a bicenter.
    inline auto canonical_form(const Tree & tree) -> std::string
    {
        std::string best;
        for (auto c : detail::tree_centers(tree)) {
            auto code = detail::encode_rooted(tree, c);
            if (best.empty() || code < best)
                best = std::move(code);
        }
        return best;
    }

    inline auto is_isomorphic(const Tree & a, const Tree & b) -> bool
    {
        return a.vertex_count() == b.vertex_count() && canonical_form(a) == canonical_form(b);
    }

    /// Text format: "n" on the first line, then n-1 lines "u v".
    inline void write_tree(std::ostream & out, const Tree & tree)
    {
        out << tree.vertex_count() << '\n';
        for (auto [u, v] : tree.edges())
            out << u << ' ' << v << '\n';
    }

    inline auto read_tree(std::istream & in) -> Tree
    {
        long n = 0;
        require(static_cast<bool>(in >> n), ErrorCode::InvalidTree, "tree file: missing vertex count");
        require(n >= 1 && n <= 10'000'000, ErrorCode::InvalidTree, "tree file: bad vertex count");
        Tree::EdgeList edges;
        for (long k = 0; k + 1 < n; ++k) {
            long u = 0, v = 0;
            require(static_cast<bool>(in >> u >> v), ErrorCode::InvalidTree,
                "tree file: expected " + std::to_string(n - 1) + " edges, got " + std::to_string(k));
            edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
        std::string extra;
        require(! (in >> extra), ErrorCode::InvalidTree, "tree file: trailing data");
        return {static_cast<int>(n), std::move(edges), 0};
    }

    inline auto tree_to_string(const Tree & tree) -> std::string
    {
        std::ostringstream out;
        write_tree(out, tree);
        return out.str();
    }
}
