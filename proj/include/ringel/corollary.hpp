#pragma once

#include "ringel/blowup.hpp"
#include "ringel/decomposition.hpp"
#include "ringel/error.hpp"
#include "ringel/matching.hpp"
#include "ringel/seed.hpp"
#include "ringel/target.hpp"
#include "ringel/tree.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ringel
{
    /// K_{4m+2} minus the perfect matching {2x, 2x+1}: the r = 2 blow-up with
    /// (x, i) renamed to 2x + i.
    inline auto decompose_matching_complement(const Tree & tree, int p, std::uint64_t seed, const BlowupOptions & options = {})
        -> Decomposition
    {
        auto d = decompose_blowup(tree, p, 2, seed, options);
        d.kind = TargetKind::MatchingComplement;
        for (auto & copy : d.copies) {
            for (auto & a : copy.arcs) {
                a.tail = Vertex::plain(2 * a.tail.a + a.tail.b);
                a.head = Vertex::plain(2 * a.head.a + a.head.b);
            }
            std::sort(copy.arcs.begin(), copy.arcs.end());
        }
        return d;
    }

    struct Tournament
    {
        int r = 0;
        std::vector<Arc<int>> arcs;  ///< sorted

        auto has_arc(int u, int v) const -> bool { return std::binary_search(arcs.begin(), arcs.end(), Arc<int>{u, v}); }

        auto out_neighbors(int u) const -> std::vector<int>
        {
            std::vector<int> result;
            for (const auto & a : arcs)
                if (a.tail == u)
                    result.push_back(a.head);
            return result;
        }

        auto is_regular() const -> bool
        {
            for (int u = 0; u < r; ++u) {
                if (static_cast<int>(out_neighbors(u).size()) != (r - 1) / 2)
                    return false;
                for (int v = u + 1; v < r; ++v)
                    if (has_arc(u, v) == has_arc(v, u))
                        return false;
            }
            return true;
        }

        friend auto operator==(const Tournament &, const Tournament &) -> bool = default;
    };

    /// Circulant tournament u -> u + d (mod r), d = 1..(r-1)/2.
    inline auto regular_tournament(int r) -> Tournament
    {
        require(r >= 3 && r % 2 == 1, ErrorCode::InvalidArgument, "regular tournaments need odd r >= 3");
        Tournament t{r, {}};
        for (int u = 0; u < r; ++u)
            for (int d = 1; d <= (r - 1) / 2; ++d)
                t.arcs.push_back({u, (u + d) % r});
        std::sort(t.arcs.begin(), t.arcs.end());
        return t;
    }

    inline constexpr std::size_t max_tournament_relabelings = 5040;

    /// Distinct vertex relabelings of the circulant tournament: the circulant
    /// and its reverse first, then the rest in lexicographic permutation order.
    inline auto tournament_relabelings(int r, std::size_t limit = max_tournament_relabelings) -> std::vector<Tournament>
    {
        auto base = regular_tournament(r);
        std::vector<Tournament> result{base};
        Tournament reverse{r, {}};
        for (const auto & a : base.arcs)
            reverse.arcs.push_back({a.head, a.tail});
        std::sort(reverse.arcs.begin(), reverse.arcs.end());
        std::set<std::vector<Arc<int>>> seen{base.arcs, reverse.arcs};
        result.push_back(reverse);

        std::vector<int> perm(static_cast<std::size_t>(r));
        std::iota(perm.begin(), perm.end(), 0);
        while (result.size() < limit && std::next_permutation(perm.begin(), perm.end())) {
            Tournament t{r, {}};
            for (const auto & a : base.arcs)
                t.arcs.push_back({perm[static_cast<std::size_t>(a.tail)], perm[static_cast<std::size_t>(a.head)]});
            std::sort(t.arcs.begin(), t.arcs.end());
            if (seen.insert(t.arcs).second)
                result.push_back(std::move(t));
        }
        return result;
    }

    /// Target of the single extra arc of one copy: apex k, or the coclique
    /// vertex at layer `layer` through a tournament arc.
    struct ExtraArc
    {
        bool apex = false;
        int index = 0;

        friend auto operator<=>(const ExtraArc &, const ExtraArc &) = default;
    };

    struct LeafAssignment
    {
        std::size_t tournament_index = 0;
        Tournament tournament;
        std::vector<ExtraArc> extra;  ///< per copy index (label - 1)
    };

    /// Per coclique layer a, give each copy whose attachment vertex sits at
    /// layer a one extra arc: an apex arc or a tournament arc a -> b. A copy may
    /// not take a -> b when b is already one of its vertices (blocked[label]).
    /// Tournaments are tried in order; the first one admitting a perfect
    /// matching at every layer wins.
    inline auto leaf_assignment_search(const std::vector<std::vector<int>> & rows, const std::vector<int> & blocked,
        const std::vector<Tournament> & tournaments, int apexes) -> std::optional<LeafAssignment>
    {
        auto layers = static_cast<int>(rows.size());
        for (std::size_t t = 0; t < tournaments.size(); ++t) {
            const auto & tour = tournaments[t];
            require(tour.r == layers, ErrorCode::InvalidArgument, "tournament size differs from layer count");
            LeafAssignment result{t, tour, std::vector<ExtraArc>(blocked.size())};
            bool ok = true;
            for (int a = 0; a < layers && ok; ++a) {
                std::vector<ExtraArc> slots;
                for (int k = 0; k < apexes; ++k)
                    slots.push_back({true, k});
                for (auto b : tour.out_neighbors(a))
                    slots.push_back({false, b});
                const auto & labels = rows[static_cast<std::size_t>(a)];
                require(labels.size() == slots.size(), ErrorCode::InvalidArgument,
                    "layer " + std::to_string(a) + " has " + std::to_string(labels.size()) + " copies but "
                        + std::to_string(slots.size()) + " extra arcs");
                BipartiteMatcher matcher(static_cast<int>(labels.size()), static_cast<int>(slots.size()));
                for (std::size_t q = 0; q < labels.size(); ++q)
                    for (std::size_t s = 0; s < slots.size(); ++s)
                        if (slots[s].apex || slots[s].index != blocked[static_cast<std::size_t>(labels[q])])
                            matcher.add_candidate(static_cast<int>(q), static_cast<int>(s));
                auto match = matcher.solve();
                ok = matcher.is_perfect(match);
                if (ok)
                    for (std::size_t q = 0; q < labels.size(); ++q)
                        result.extra[static_cast<std::size_t>(labels[q])] = slots[static_cast<std::size_t>(match[q])];
            }
            if (ok)
                return result;
        }
        return std::nullopt;
    }

    /// The leaf whose removal leaves the most leaves; ties go to the smallest id.
    inline auto choose_deleted_leaf(const Tree & tree) -> int
    {
        require(tree.edge_count() >= 2, ErrorCode::InvalidTree, "need a tree with at least 2 edges");
        auto base = leaf_count(tree);
        int best = -1, best_count = -1;
        for (int z = 0; z < tree.vertex_count(); ++z) {
            if (! tree.is_leaf(z))
                continue;
            auto y = tree.neighbors(z).front();
            // y becomes a leaf iff it had degree 2.
            auto count = base - 1 + (tree.degree(y) == 2 ? 1 : 0);
            if (count > best_count) {
                best = z;
                best_count = count;
            }
        }
        return best;
    }

    struct LeafDeletion
    {
        Tree reduced;  ///< T - z with ids above z shifted down by one
        int z = 0;     ///< deleted leaf (id in T)
        int y = 0;     ///< its neighbor (id in the reduced tree)
    };

    inline auto delete_leaf(const Tree & tree, int z) -> LeafDeletion
    {
        require(tree.is_leaf(z), ErrorCode::InvalidArgument, "vertex " + std::to_string(z) + " is not a leaf");
        auto shift = [z](int v) { return v > z ? v - 1 : v; };
        Tree::EdgeList edges;
        for (auto [u, v] : tree.edges())
            if (u != z && v != z)
                edges.emplace_back(shift(u), shift(v));
        return {Tree(tree.vertex_count() - 1, std::move(edges), 0), z, shift(tree.neighbors(z).front())};
    }

    /// K_{rp+t} minus the clique on t = (r+1)/2 apexes, r odd: decompose T - z
    /// over the blow-up, add every base -> apex arc and a regular tournament in
    /// each coclique, and hang one extra arc on each copy at its image of y.
    /// The assignment depends only on the copy's layer of y, so one solution
    /// serves all p translates.
    inline auto decompose_clique_complement(const Tree & tree, int p, int r, std::uint64_t seed,
        const BlowupOptions & options = {}, TargetKind kind = TargetKind::CliqueComplement) -> Decomposition
    {
        validate_target_parameters(kind, p, r);
        require(r >= 3 && r % 2 == 1, ErrorCode::InvalidArgument, "clique complement needs odd r >= 3");
        auto m = (p - 1) / 2;
        require(tree.edge_count() == m + 1, ErrorCode::InvalidArgument,
            "tree must have m + 1 = " + std::to_string(m + 1) + " edges, got " + std::to_string(tree.edge_count()));
        auto deletion = delete_leaf(tree, choose_deleted_leaf(tree));
        auto apexes = (r + 1) / 2;
        auto tournaments = tournament_relabelings(r);

        std::string last_failure;
        for (int attempt = 0; attempt <= options.restarts; ++attempt) {
            auto attempt_seed = attempt == 0 ? seed : derive_seed(seed, Stage::LeafAssignment, static_cast<std::uint64_t>(attempt));
            auto construction = build_blowup_family(deletion.reduced, p, r, attempt_seed, options);
            const auto & family = construction.family;
            auto y = deletion.y;
            auto partner = construction.h.partner(y);

            std::vector<std::vector<int>> rows(static_cast<std::size_t>(r));
            std::vector<int> blocked(static_cast<std::size_t>(family.size()), -1);
            for (int index = 0; index < family.size(); ++index) {
                rows[static_cast<std::size_t>(family.layer_of(index, y))].push_back(index);
                if (partner)
                    blocked[static_cast<std::size_t>(index)] = family.layer_of(index, *partner);
            }
            auto assignment = leaf_assignment_search(rows, blocked, tournaments, apexes);
            if (! assignment) {
                last_failure = "no extra-arc assignment over " + std::to_string(tournaments.size()) + " tournaments";
                continue;
            }

            Decomposition d{kind, p, r, tree, canonical_form(tree), translate_family(family, options.jobs), attempt_seed, {}};
            auto n = family.size();
            for (auto & copy : d.copies) {
                auto x = (copy.label - 1) / n;
                auto index = (copy.label - 1) % n;
                auto from = Vertex::product(mod(family.image[static_cast<std::size_t>(y)] + x, p), family.layer_of(index, y));
                const auto & e = assignment->extra[static_cast<std::size_t>(index)];
                copy.arcs.push_back({from, e.apex ? Vertex::apex(e.index) : Vertex::product(from.a, e.index)});
                std::sort(copy.arcs.begin(), copy.arcs.end());
            }
            d.seed = seed;
            record_stats(d, construction);
            d.stats["assignment_attempts"] = attempt + 1;
            d.stats["tournament_index"] = static_cast<std::int64_t>(assignment->tournament_index);
            d.stats["deleted_leaf"] = deletion.z;
            return d;
        }
        fail(ErrorCode::SearchExhausted, "extra-arc assignment failed after " + std::to_string(options.restarts + 1)
                + " attempts: " + last_failure);
    }

    /// K_{3p+2} minus one edge: the r = 3 clique complement with apexes alpha, beta.
    inline auto decompose_near_complete(const Tree & tree, int p, std::uint64_t seed, const BlowupOptions & options = {})
        -> Decomposition
    {
        return decompose_clique_complement(tree, p, 3, seed, options, TargetKind::NearComplete);
    }
}
