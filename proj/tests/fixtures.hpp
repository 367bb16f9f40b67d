#pragma once

#include "ringel/rainbow.hpp"
#include "ringel/split.hpp"
#include "ringel/tree.hpp"

#include <functional>
#include <vector>

namespace fixtures
{
    using namespace ringel;

    /// Seven-vertex tree over Z_13 with colors 1..6: root 0 with children 1
    /// and 2, then 1-3, 2-4, 4-5, 4-6. Leaf 5 is the one forest leaf (star at
    /// 4) and lands on the image 6 of vertex 1.
    inline auto small_quasi_embedding() -> QuasiEmbedding
    {
        Tree tree(7, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {4, 5}, {4, 6}}, 0);
        Split split;
        split.tree = tree;
        split.in_t0 = {1, 1, 1, 1, 1, 0, 1};
        split.forest.stars.push_back({4, {5}});
        split.t0_to_tree = {0, 1, 2, 3, 4, 6};
        split.tree_to_t0 = {0, 1, 2, 3, 4, -1, 5};
        split.t0 = Tree(6, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {4, 5}}, 0);

        RainbowEmbedding emb{13, ColorSet(13, {6, 1, 4, 3, 5}), {0, 6, 1, 10, 4, 9}, {0, 6, 1, 4, 3, 5}};
        StarForestImage f1{{4}, {2}, {6}};
        return compose_quasi_embedding(split, emb, f1, ColorSet(13, {1, 2, 3, 4, 5, 6}));
    }

    /// Every labeled tree on n >= 3 vertices, by decoding all Pruefer sequences.
    inline void for_each_labeled_tree(int n, const std::function<void(const Tree &)> & visit)
    {
        std::vector<int> code(static_cast<std::size_t>(n - 2), 0);
        while (true) {
            std::vector<int> degree(static_cast<std::size_t>(n), 1);
            for (auto c : code)
                ++degree[static_cast<std::size_t>(c)];
            Tree::EdgeList edges;
            for (auto c : code) {
                int leaf = 0;
                while (degree[static_cast<std::size_t>(leaf)] != 1)
                    ++leaf;
                edges.emplace_back(leaf, c);
                --degree[static_cast<std::size_t>(leaf)];
                --degree[static_cast<std::size_t>(c)];
            }
            std::vector<int> rest;
            for (int v = 0; v < n; ++v)
                if (degree[static_cast<std::size_t>(v)] == 1)
                    rest.push_back(v);
            edges.emplace_back(rest[0], rest[1]);
            visit(Tree(n, edges, 0));
            std::size_t k = 0;
            while (k < code.size() && ++code[k] == n)
                code[k++] = 0;
            if (k == code.size())
                return;
        }
    }
}
