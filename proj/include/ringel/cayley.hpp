#pragma once

#include "ringel/error.hpp"
#include "ringel/group.hpp"

#include <algorithm>
#include <compare>
#include <set>
#include <vector>

namespace ringel
{
    /// Directed arc tail -> head in a Cayley digraph. The color is head - tail,
    /// so it is implied by the endpoints and never stored separately.
    template <typename Vertex>
    struct Arc
    {
        Vertex tail{};
        Vertex head{};

        friend auto operator<=>(const Arc &, const Arc &) = default;
    };

    template <typename Group>
    auto color_of(const Group & group, const Arc<typename Group::Element> & arc) -> typename Group::Element
    {
        return group.add(arc.head, group.neg(arc.tail));
    }

    template <typename Group>
    class CayleyDigraph
    {
    public:
        using Vertex = typename Group::Element;

        CayleyDigraph(Group group, std::vector<Vertex> generators) :
            _group(std::move(group)),
            _generators(std::move(generators))
        {
            for (const auto & v : _group.elements())
                for (const auto & s : _generators)
                    _arcs.push_back({v, _group.add(v, s)});
            std::sort(_arcs.begin(), _arcs.end());
        }

        auto group() const -> const Group & { return _group; }
        auto generators() const -> const std::vector<Vertex> & { return _generators; }
        /// Sorted lexicographically by (tail, head).
        auto arcs() const -> const std::vector<Arc<Vertex>> & { return _arcs; }

        auto contains(const Arc<Vertex> & arc) const -> bool
        {
            return std::binary_search(_arcs.begin(), _arcs.end(), arc);
        }

        auto out_degree(const Vertex & v) const -> std::size_t
        {
            return static_cast<std::size_t>(std::count_if(_arcs.begin(), _arcs.end(),
                [&](const auto & a) { return a.tail == v; }));
        }

        /// Undirected simple edges {u, v}, u < v, sorted.
        auto underlying_edges() const -> std::vector<std::pair<Vertex, Vertex>>
        {
            std::set<std::pair<Vertex, Vertex>> edges;
            for (const auto & a : _arcs)
                edges.insert(std::minmax(a.tail, a.head));
            return {edges.begin(), edges.end()};
        }

    private:
        Group _group;
        std::vector<Vertex> _generators;
        std::vector<Arc<Vertex>> _arcs;
    };

    inline auto build_cayley(const CyclicGroup & group, const ColorSet & colors) -> CayleyDigraph<CyclicGroup>
    {
        require(colors.p() == group.p(), ErrorCode::InvalidArgument, "color set and group disagree on p");
        return {group, colors.elements()};
    }

    /// Cay(Z_p x Z_r, S x Z_r).
    inline auto build_cayley(const ProductGroup & group, const ColorSet & colors) -> CayleyDigraph<ProductGroup>
    {
        require(colors.p() == group.p(), ErrorCode::InvalidArgument, "color set and group disagree on p");
        std::vector<ProductVertex> lifted;
        for (auto s : colors.elements())
            for (int d = 0; d < group.r(); ++d)
                lifted.push_back({s, d});
        return {group, std::move(lifted)};
    }

    /// K_{r,r}^{(x,y)}: every arc ((x,i),(y,j)).
    inline auto blow_up_arc(const Arc<int> & arc, int r) -> std::vector<Arc<ProductVertex>>
    {
        require(arc.tail != arc.head, ErrorCode::InvalidArgument, "cannot blow up a loop");
        require(r >= 1, ErrorCode::InvalidArgument, "blow-up factor r must be positive");
        std::vector<Arc<ProductVertex>> result;
        result.reserve(static_cast<std::size_t>(r * r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                result.push_back({{arc.tail, i}, {arc.head, j}});
        return result;
    }

    template <typename Group>
    auto translate(const Group & group, const std::vector<Arc<typename Group::Element>> & arcs,
        const typename Group::Element & g) -> std::vector<Arc<typename Group::Element>>
    {
        std::vector<Arc<typename Group::Element>> result;
        result.reserve(arcs.size());
        for (const auto & a : arcs)
            result.push_back({group.add(a.tail, g), group.add(a.head, g)});
        return result;
    }

    /// True iff no two arcs share a color.
    template <typename Group>
    auto is_rainbow(const Group & group, const std::vector<Arc<typename Group::Element>> & arcs) -> bool
    {
        std::vector<typename Group::Element> colors;
        colors.reserve(arcs.size());
        for (const auto & a : arcs)
            colors.push_back(color_of(group, a));
        std::sort(colors.begin(), colors.end());
        return std::adjacent_find(colors.begin(), colors.end()) == colors.end();
    }
}
