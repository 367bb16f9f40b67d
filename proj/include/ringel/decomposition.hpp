#pragma once

#include "ringel/cayley.hpp"
#include "ringel/target.hpp"
#include "ringel/tree.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ringel
{
    struct Copy
    {
        int label = 0;
        std::vector<Arc<Vertex>> arcs;  ///< sorted

        friend auto operator==(const Copy &, const Copy &) -> bool = default;
    };

    /// Edge-disjoint copies of `tree` covering the target named by (kind, p, r).
    /// The target itself is not stored: it is a pure function of its parameters.
    struct Decomposition
    {
        TargetKind kind = TargetKind::BlowupComplete;
        int p = 0;
        int r = 0;
        Tree tree;
        std::string canonical;
        std::vector<Copy> copies;
        std::uint64_t seed = 0;
        std::map<std::string, std::int64_t> stats;  ///< counters only; no timings

        auto edge_count() const -> long
        {
            long total = 0;
            for (const auto & c : copies)
                total += static_cast<long>(c.arcs.size());
            return total;
        }

        friend auto operator==(const Decomposition & a, const Decomposition & b) -> bool
        {
            return a.kind == b.kind && a.p == b.p && a.r == b.r && a.tree.vertex_count() == b.tree.vertex_count()
                && a.tree.edges() == b.tree.edges() && a.canonical == b.canonical && a.copies == b.copies
                && a.seed == b.seed && a.stats == b.stats;
        }
    };
}
