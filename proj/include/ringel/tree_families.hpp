#pragma once

#include "ringel/tree.hpp"

#include <vector>

namespace ringel::families
{
    inline auto path(int edges) -> Tree
    {
        Tree::EdgeList e;
        for (int v = 0; v < edges; ++v)
            e.emplace_back(v, v + 1);
        return {edges + 1, e, 0};
    }

    /// K_{1,m} with the center at vertex 0.
    inline auto star(int edges) -> Tree
    {
        Tree::EdgeList e;
        for (int v = 1; v <= edges; ++v)
            e.emplace_back(0, v);
        return {edges + 1, e, 0};
    }

    /// Path with `handle` edges and `bristles` leaves hung on its far end.
    inline auto broom(int handle, int bristles) -> Tree
    {
        Tree::EdgeList e;
        for (int v = 0; v < handle; ++v)
            e.emplace_back(v, v + 1);
        int next = handle + 1;
        for (int k = 0; k < bristles; ++k)
            e.emplace_back(handle, next++);
        return {next, e, 0};
    }

    /// Spine path of `legs.size()` vertices; spine vertex k carries legs[k] leaves.
    inline auto caterpillar(const std::vector<int> & legs) -> Tree
    {
        Tree::EdgeList e;
        auto spine = static_cast<int>(legs.size());
        for (int v = 0; v + 1 < spine; ++v)
            e.emplace_back(v, v + 1);
        int next = spine;
        for (int v = 0; v < spine; ++v)
            for (int k = 0; k < legs[static_cast<std::size_t>(v)]; ++k)
                e.emplace_back(v, next++);
        return {next, e, 0};
    }

    /// Center 0 with one path of each given length.
    inline auto spider(const std::vector<int> & leg_lengths) -> Tree
    {
        Tree::EdgeList e;
        int next = 1;
        for (auto len : leg_lengths) {
            int prev = 0;
            for (int k = 0; k < len; ++k) {
                e.emplace_back(prev, next);
                prev = next++;
            }
        }
        return {next, e, 0};
    }
}
