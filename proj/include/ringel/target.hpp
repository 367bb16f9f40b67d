#pragma once

#include "ringel/error.hpp"
#include "ringel/group.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ringel
{
    /// Vertex of a target graph: a blow-up vertex (x, i), an apex alpha:k, or a
    /// plain integer vertex of K_n (used after the K_{4m+2} \ M relabeling).
    struct Vertex
    {
        enum class Kind : int { Product = 0, Apex = 1, Plain = 2 };

        Kind kind = Kind::Product;
        int a = 0;
        int b = 0;

        static auto product(int x, int layer) -> Vertex { return {Kind::Product, x, layer}; }
        static auto product(ProductVertex v) -> Vertex { return {Kind::Product, v.x, v.layer}; }
        static auto apex(int k) -> Vertex { return {Kind::Apex, k, 0}; }
        static auto plain(int n) -> Vertex { return {Kind::Plain, n, 0}; }

        auto to_string() const -> std::string
        {
            switch (kind) {
                case Kind::Product: return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
                case Kind::Apex: return "alpha:" + std::to_string(a);
                case Kind::Plain: return std::to_string(a);
            }
            return "?";
        }

        friend auto operator<=>(const Vertex &, const Vertex &) = default;
    };

    using Edge = std::pair<Vertex, Vertex>;

    inline auto make_edge(const Vertex & u, const Vertex & v) -> Edge
    {
        return u < v ? Edge{u, v} : Edge{v, u};
    }

    enum class TargetKind
    {
        BlowupComplete,
        MatchingComplement,
        NearComplete,
        CliqueComplement,
    };

    inline auto to_string(TargetKind kind) -> std::string
    {
        switch (kind) {
            case TargetKind::BlowupComplete: return "blowup";
            case TargetKind::MatchingComplement: return "matching-complement";
            case TargetKind::NearComplete: return "near-complete";
            case TargetKind::CliqueComplement: return "clique-complement";
        }
        return "?";
    }

    inline auto parse_target_kind(const std::string & name) -> std::optional<TargetKind>
    {
        for (auto kind : {TargetKind::BlowupComplete, TargetKind::MatchingComplement, TargetKind::NearComplete,
                 TargetKind::CliqueComplement})
            if (to_string(kind) == name)
                return kind;
        return std::nullopt;
    }

    /// Number of apex vertices adjoined for the given kind and blow-up factor.
    inline auto apex_count(TargetKind kind, int r) -> int
    {
        switch (kind) {
            case TargetKind::NearComplete: return 2;
            case TargetKind::CliqueComplement: return (r + 1) / 2;
            default: return 0;
        }
    }

    struct TargetGraph
    {
        TargetKind kind = TargetKind::BlowupComplete;
        int p = 0;
        int r = 0;
        std::vector<Vertex> vertices;
        /// Sorted, each edge stored with its smaller endpoint first.
        std::vector<Edge> edges;

        auto contains(const Edge & e) const -> bool { return std::binary_search(edges.begin(), edges.end(), e); }
        auto apexes() const -> int { return apex_count(kind, r); }
    };

    inline void validate_target_parameters(TargetKind kind, int p, int r)
    {
        require(is_prime(p) && p >= 3, ErrorCode::NotPrime, "p must be prime (got " + std::to_string(p) + ")");
        switch (kind) {
            case TargetKind::BlowupComplete:
                require(r >= 1, ErrorCode::InvalidArgument, "blow-up needs r >= 1");
                break;
            case TargetKind::MatchingComplement:
                require(r == 2, ErrorCode::InvalidArgument, "matching complement is the r = 2 blow-up");
                break;
            case TargetKind::NearComplete:
                require(r == 3, ErrorCode::InvalidArgument, "near-complete target needs r = 3");
                break;
            case TargetKind::CliqueComplement:
                require(r >= 3 && r % 2 == 1, ErrorCode::InvalidArgument, "clique complement needs odd r >= 3");
                break;
        }
    }

    /// Explicit vertex and edge sets. Adjacency rule: two vertices are joined
    /// unless they share a coclique (blow-up kinds), form a matching pair
    /// {2x, 2x+1}, or are both apexes.
    inline auto build_target(TargetKind kind, int p, int r) -> TargetGraph
    {
        validate_target_parameters(kind, p, r);
        TargetGraph g{kind, p, r, {}, {}};

        if (kind == TargetKind::MatchingComplement) {
            for (int v = 0; v < 2 * p; ++v)
                g.vertices.push_back(Vertex::plain(v));
            for (int u = 0; u < 2 * p; ++u)
                for (int v = u + 1; v < 2 * p; ++v)
                    if (u / 2 != v / 2)
                        g.edges.push_back(make_edge(Vertex::plain(u), Vertex::plain(v)));
            std::sort(g.edges.begin(), g.edges.end());
            return g;
        }

        for (int x = 0; x < p; ++x)
            for (int i = 0; i < r; ++i)
                g.vertices.push_back(Vertex::product(x, i));
        auto apexes = apex_count(kind, r);
        for (int k = 0; k < apexes; ++k)
            g.vertices.push_back(Vertex::apex(k));

        bool cocliques_filled = kind == TargetKind::NearComplete || kind == TargetKind::CliqueComplement;
        for (std::size_t s = 0; s < g.vertices.size(); ++s)
            for (std::size_t t = s + 1; t < g.vertices.size(); ++t) {
                const auto & u = g.vertices[s];
                const auto & v = g.vertices[t];
                bool adjacent = false;
                if (u.kind == Vertex::Kind::Apex && v.kind == Vertex::Kind::Apex)
                    adjacent = false;
                else if (u.kind == Vertex::Kind::Apex || v.kind == Vertex::Kind::Apex)
                    adjacent = true;
                else
                    adjacent = u.a != v.a || cocliques_filled;
                if (adjacent)
                    g.edges.push_back(make_edge(u, v));
            }
        std::sort(g.edges.begin(), g.edges.end());
        return g;
    }

    /// Closed-form edge counts, kept separate from build_target so tests can
    /// compare the enumeration against them.
    inline auto expected_edge_count(TargetKind kind, long p, long r) -> long
    {
        switch (kind) {
            case TargetKind::BlowupComplete: return r * r * p * (p - 1) / 2;
            case TargetKind::MatchingComplement: return 2 * p * (2 * p - 1) / 2 - p;
            case TargetKind::NearComplete: {
                long n = 3 * p + 2;
                return n * (n - 1) / 2 - 1;
            }
            case TargetKind::CliqueComplement: {
                long t = (r + 1) / 2;
                long n = r * p + t;
                return n * (n - 1) / 2 - t * (t - 1) / 2;
            }
        }
        return 0;
    }
}
