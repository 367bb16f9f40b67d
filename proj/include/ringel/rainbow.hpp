#pragma once

#include "ringel/cayley.hpp"
#include "ringel/error.hpp"
#include "ringel/group.hpp"
#include "ringel/seed.hpp"
#include "ringel/split.hpp"
#include "ringel/tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace ringel
{
    /// Rainbow embedding of a rooted tree into Cay(Z_p, S0). The root goes to 0
    /// and every arc points away from the root; arc_color[v] is the color of the
    /// arc parent(v) -> v (0 for the root).
    struct RainbowEmbedding
    {
        int p = 0;
        ColorSet s0{3};
        std::vector<int> image;
        std::vector<int> arc_color;
    };

    /// Regime in which a rainbow embedding provably exists: p > 10 and
    /// k < 3(p-1)/10.
    inline auto in_guaranteed_embedding_regime(int p, int k) -> bool
    {
        return p > 10 && 10 * k < 3 * (p - 1);
    }

    inline auto is_valid_rainbow_embedding(const Tree & tree, const RainbowEmbedding & emb) -> bool
    {
        auto n = tree.vertex_count();
        if (static_cast<int>(emb.image.size()) != n || static_cast<int>(emb.arc_color.size()) != n)
            return false;
        if (emb.image[static_cast<std::size_t>(tree.root())] != 0)
            return false;
        std::vector<char> used_vertex(static_cast<std::size_t>(emb.p), 0), used_pair(static_cast<std::size_t>(emb.p), 0);
        for (int v = 0; v < n; ++v) {
            auto x = emb.image[static_cast<std::size_t>(v)];
            if (x < 0 || x >= emb.p || used_vertex[static_cast<std::size_t>(x)])
                return false;
            used_vertex[static_cast<std::size_t>(x)] = 1;
            if (v == tree.root())
                continue;
            auto s = emb.arc_color[static_cast<std::size_t>(v)];
            if (mod(x - emb.image[static_cast<std::size_t>(tree.parent(v))], emb.p) != s || ! emb.s0.contains(s))
                return false;
            auto key = std::min(s, emb.p - s);
            if (used_pair[static_cast<std::size_t>(key)])
                return false;
            used_pair[static_cast<std::size_t>(key)] = 1;
        }
        return static_cast<int>(emb.s0.size()) == tree.edge_count();
    }

    namespace detail
    {
        /// One backtracking run over arc colors in peeling order. Returns
        /// nullopt if the node budget runs out or the space is exhausted.
        inline auto embed_tree_attempt(const Tree & tree, int p, std::uint64_t seed, long budget)
            -> std::optional<RainbowEmbedding>
        {
            const auto & order = tree.bfs_order();
            auto k = tree.edge_count();
            std::vector<std::vector<int>> candidates(static_cast<std::size_t>(k + 1));
            for (int t = 1; t <= k; ++t)
                candidates[static_cast<std::size_t>(t)] = shuffled_range(1, p, derive_seed(seed, Stage::TreeEmbedding, static_cast<std::uint64_t>(t)));

            std::vector<int> image(static_cast<std::size_t>(tree.vertex_count()), -1);
            std::vector<int> color(static_cast<std::size_t>(tree.vertex_count()), 0);
            std::vector<char> used_vertex(static_cast<std::size_t>(p), 0), used_pair(static_cast<std::size_t>(p), 0);
            std::vector<std::size_t> cursor(static_cast<std::size_t>(k + 1), 0);
            image[static_cast<std::size_t>(tree.root())] = 0;
            used_vertex[0] = 1;

            int t = 1;
            long nodes = 0;
            while (t >= 1 && t <= k) {
                auto v = order[static_cast<std::size_t>(t)];
                auto base = image[static_cast<std::size_t>(tree.parent(v))];
                auto & pos = cursor[static_cast<std::size_t>(t)];
                const auto & values = candidates[static_cast<std::size_t>(t)];
                bool placed = false;
                while (pos < values.size()) {
                    auto s = values[pos++];
                    auto x = mod(base + s, p);
                    auto key = std::min(s, p - s);
                    if (used_pair[static_cast<std::size_t>(key)] || used_vertex[static_cast<std::size_t>(x)])
                        continue;
                    if (++nodes > budget)
                        return std::nullopt;
                    used_pair[static_cast<std::size_t>(key)] = 1;
                    used_vertex[static_cast<std::size_t>(x)] = 1;
                    image[static_cast<std::size_t>(v)] = x;
                    color[static_cast<std::size_t>(v)] = s;
                    placed = true;
                    break;
                }
                if (placed) {
                    ++t;
                    if (t <= k)
                        cursor[static_cast<std::size_t>(t)] = 0;
                    continue;
                }
                --t;
                if (t >= 1) {
                    auto u = order[static_cast<std::size_t>(t)];
                    auto s = color[static_cast<std::size_t>(u)];
                    used_pair[static_cast<std::size_t>(std::min(s, p - s))] = 0;
                    used_vertex[static_cast<std::size_t>(image[static_cast<std::size_t>(u)])] = 0;
                    image[static_cast<std::size_t>(u)] = -1;
                }
            }
            if (t < 1)
                return std::nullopt;

            RainbowEmbedding emb{p, ColorSet(p), image, color};
            for (std::size_t q = 1; q < order.size(); ++q)
                emb.s0.add(color[static_cast<std::size_t>(order[q])]);
            return emb;
        }
    }

    inline constexpr int embedding_restarts = 64;

    /// Rainbow embedding of `tree` (rooted at its root) in Cay(Z_p, S0) with
    /// |S0| = number of edges. Each arc color a_i avoids +-a_j of earlier arcs
    /// and every vertex image is new.
    inline auto embed_tree_rainbow(const Tree & tree, int p, std::uint64_t seed) -> RainbowEmbedding
    {
        require(p >= 3 && is_prime(p), ErrorCode::NotPrime, "p must be prime (got " + std::to_string(p) + ")");
        auto k = tree.edge_count();
        require(2 * k <= p - 1, ErrorCode::RegimeViolation,
            "a tree with " + std::to_string(k) + " edges cannot be rainbow in Z_" + std::to_string(p));
        for (int attempt = 0; attempt < embedding_restarts; ++attempt) {
            auto budget = attempt + 1 == embedding_restarts ? 50'000'000L : 200'000L;
            if (auto emb = detail::embed_tree_attempt(tree, p, derive_seed(seed, Stage::Restart, static_cast<std::uint64_t>(attempt)), budget))
                return *emb;
        }
        fail(ErrorCode::SearchExhausted,
            "no rainbow embedding found for k=" + std::to_string(k) + " in Z_" + std::to_string(p)
                + (in_guaranteed_embedding_regime(p, k) ? "" : " (outside the regime p > 10, k < 3(p-1)/10)"));
    }

    namespace detail
    {
        /// Positions sharing an a-value are interchangeable, so the search
        /// assigns each b-value to an a-class instead: class c takes exactly
        /// capacity[c] b-values and the sums a_c + b_j stay pairwise distinct.
        class DistinctSumsSearch
        {
        public:
            DistinctSumsSearch(std::vector<int> class_value, std::vector<int> capacity, std::vector<int> b, int p) :
                _value(std::move(class_value)),
                _capacity(std::move(capacity)),
                _b(std::move(b)),
                _p(p),
                _owner(_b.size(), -1),
                _used_sum(static_cast<std::size_t>(p), 0)
            {
            }

            /// Class per b-index, or nullopt once `budget` nodes are spent.
            auto run(std::uint64_t seed, long budget) -> std::optional<std::vector<int>>
            {
                _rng.seed(seed);
                _nodes = 0;
                _budget = budget;
                std::fill(_owner.begin(), _owner.end(), -1);
                std::fill(_used_sum.begin(), _used_sum.end(), 0);
                _remaining = _capacity;
                if (descend(static_cast<int>(_b.size())))
                    return _owner;
                return std::nullopt;
            }

        private:
            auto sum(std::size_t c, std::size_t j) const -> std::size_t
            {
                return static_cast<std::size_t>(mod(_value[c] + _b[j], _p));
            }

            auto open(std::size_t c, std::size_t j) const -> bool { return _remaining[c] > 0 && ! _used_sum[sum(c, j)]; }

            auto descend(int unassigned) -> bool
            {
                if (unassigned == 0)
                    return true;
                if (++_nodes > _budget)
                    return false;
                // Every class must still be able to fill its remaining slots.
                for (std::size_t c = 0; c < _value.size(); ++c) {
                    if (_remaining[c] == 0)
                        continue;
                    int room = 0;
                    for (std::size_t j = 0; j < _b.size(); ++j)
                        room += _owner[j] < 0 && ! _used_sum[sum(c, j)] ? 1 : 0;
                    if (room < _remaining[c])
                        return false;
                }
                // Most constrained b-value first.
                std::size_t pick = _b.size();
                int best = std::numeric_limits<int>::max();
                for (std::size_t j = 0; j < _b.size(); ++j) {
                    if (_owner[j] >= 0)
                        continue;
                    int options = 0;
                    for (std::size_t c = 0; c < _value.size(); ++c)
                        options += open(c, j) ? 1 : 0;
                    if (options < best) {
                        best = options;
                        pick = j;
                    }
                }
                if (best == 0)
                    return false;
                std::vector<std::size_t> choices;
                for (std::size_t c = 0; c < _value.size(); ++c)
                    if (open(c, pick))
                        choices.push_back(c);
                for (std::size_t i = choices.size(); i > 1; --i)
                    std::swap(choices[i - 1], choices[uniform_below(_rng, i)]);
                for (auto c : choices) {
                    _owner[pick] = static_cast<int>(c);
                    _used_sum[sum(c, pick)] = 1;
                    --_remaining[c];
                    if (descend(unassigned - 1))
                        return true;
                    ++_remaining[c];
                    _used_sum[sum(c, pick)] = 0;
                    _owner[pick] = -1;
                    if (_nodes > _budget)
                        return false;
                }
                return false;
            }

            std::vector<int> _value, _capacity, _b;
            int _p;
            std::vector<int> _owner, _remaining;
            std::vector<char> _used_sum;
            Rng _rng;
            long _nodes = 0, _budget = 0;
        };

        inline constexpr int distinct_sums_restarts = 48;
    }

    /// sigma with a_i + b_sigma(i) pairwise distinct in Z_p. Restarts double
    /// the node budget, so the last attempts are effectively exhaustive.
    inline auto distinct_sums_permutation(const std::vector<int> & a, const std::vector<int> & b, int p, std::uint64_t seed)
        -> std::vector<int>
    {
        auto k = static_cast<int>(a.size());
        require(static_cast<int>(b.size()) == k, ErrorCode::InvalidArgument, "sequences a and b differ in length");
        require(k < p, ErrorCode::InvalidArgument, "distinct sums need k < p");
        std::vector<int> residues;
        for (auto v : b)
            residues.push_back(mod(v, p));
        {
            auto sorted = residues;
            std::sort(sorted.begin(), sorted.end());
            require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), ErrorCode::InvalidArgument,
                "b must consist of distinct residues");
        }

        std::vector<int> class_value, capacity;
        std::vector<std::vector<int>> members;
        for (int i = 0; i < k; ++i) {
            auto v = mod(a[static_cast<std::size_t>(i)], p);
            auto it = std::find(class_value.begin(), class_value.end(), v);
            auto c = static_cast<std::size_t>(it - class_value.begin());
            if (it == class_value.end()) {
                class_value.push_back(v);
                capacity.push_back(0);
                members.emplace_back();
            }
            ++capacity[c];
            members[c].push_back(i);
        }

        detail::DistinctSumsSearch search(class_value, capacity, residues, p);
        long budget = 1000;
        for (int attempt = 0; attempt < detail::distinct_sums_restarts; ++attempt, budget = std::min(budget * 2, 1L << 40)) {
            auto owner = search.run(derive_seed(seed, Stage::DistinctSums, static_cast<std::uint64_t>(attempt)), budget);
            if (! owner)
                continue;
            std::vector<int> sigma(static_cast<std::size_t>(k), -1);
            std::vector<std::size_t> next(members.size(), 0);
            for (int j = 0; j < k; ++j) {
                auto c = static_cast<std::size_t>((*owner)[static_cast<std::size_t>(j)]);
                sigma[static_cast<std::size_t>(members[c][next[c]++])] = j;
            }
            return sigma;
        }
        fail(ErrorCode::SearchExhausted, "no distinct-sums permutation found (k must be < p)");
    }

    /// Images of the star-forest leaves, flattened star by star in forest order.
    struct StarForestImage
    {
        std::vector<int> center_image;  ///< per star
        std::vector<int> leaf_color;    ///< per leaf
        std::vector<int> leaf_image;    ///< per leaf
    };

    /// Rainbow edge-injective homomorphism of the star forest: every color of
    /// `colors` is used once and all leaf images center + color are distinct.
    inline auto embed_star_forest(const StarForest & forest, const std::vector<int> & centers_image,
        const ColorSet & colors, int p, std::uint64_t seed) -> StarForestImage
    {
        require(centers_image.size() == forest.stars.size(), ErrorCode::InvalidArgument,
            "one center image per star is required");
        require(static_cast<int>(colors.size()) == forest.edge_count(), ErrorCode::InvalidArgument,
            "color count " + std::to_string(colors.size()) + " does not match forest edge count "
                + std::to_string(forest.edge_count()));
        {
            auto sorted = centers_image;
            std::sort(sorted.begin(), sorted.end());
            require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), ErrorCode::InvalidArgument,
                "center images must be distinct");
        }
        std::vector<int> a;
        for (std::size_t s = 0; s < forest.stars.size(); ++s)
            a.insert(a.end(), forest.stars[s].leaves.size(), centers_image[s]);
        const auto & b = colors.elements();
        StarForestImage result{centers_image, {}, {}};
        if (a.empty())
            return result;
        auto sigma = distinct_sums_permutation(a, b, p, seed);
        for (std::size_t j = 0; j < a.size(); ++j) {
            auto s = b[static_cast<std::size_t>(sigma[j])];
            result.leaf_color.push_back(s);
            result.leaf_image.push_back(mod(a[j] + s, p));
        }
        return result;
    }

    /// Extend S0 to a complete antisymmetric set of size (p-1)/2 by choosing one
    /// element (by seeded coin flip) from each pair {s, -s} that S0 misses.
    inline auto complete_colors(const ColorSet & s0, std::uint64_t seed) -> ColorSet
    {
        auto p = s0.p();
        ColorSet full(p, s0.elements());
        Rng rng(derive_seed(seed, Stage::ColorCompletion));
        for (int s = 1; 2 * s < p; ++s) {
            auto flip = rng() & 1U;
            if (s0.contains(s) || s0.contains(p - s))
                continue;
            full.add(flip ? p - s : s);
        }
        return full;
    }

    /// A T0 vertex w whose image y also receives the image of a forest leaf.
    struct Conflict
    {
        int y = 0;       ///< shared image in Z_p
        int x = 0;       ///< image of the T0 parent of w
        int z = 0;       ///< image of the star center whose leaf lands on y
        int w = 0;       ///< T0 vertex (tree id)
        int parent = 0;  ///< T0 parent of w (tree id)
        int leaf = 0;    ///< forest leaf (tree id)
        int center = 0;  ///< its star center (tree id)

        friend auto operator==(const Conflict &, const Conflict &) -> bool = default;
    };

    /// H = f0(T0) (+) f1(F), recorded vertex-wise on the original tree so that
    /// lifts can walk it; image[v] is the Z_p vertex of tree vertex v.
    struct QuasiEmbedding
    {
        int p = 0;
        Split split;
        ColorSet colors{3};
        std::vector<int> image;
        std::vector<int> arc_color;  ///< color of parent(v) -> v, 0 for the root
        std::vector<Conflict> conflicts;
        /// Forest leaf whose image is 0 = f0(x0), if any. The root has no T0
        /// parent, so this collision is tracked apart from the in-degree-2 conflicts.
        std::optional<int> root_hit;

        auto tree() const -> const Tree & { return split.tree; }

        /// Arcs of H, sorted.
        auto arcs() const -> std::vector<Arc<int>>
        {
            std::vector<Arc<int>> result;
            for (int v = 0; v < tree().vertex_count(); ++v)
                if (v != tree().root())
                    result.push_back({image[static_cast<std::size_t>(tree().parent(v))], image[static_cast<std::size_t>(v)]});
            std::sort(result.begin(), result.end());
            return result;
        }

        auto in_degree(int y) const -> int
        {
            int d = 0;
            for (const auto & a : arcs())
                d += a.head == y;
            return d;
        }

        /// Tree vertices sharing an image with v (other than v itself).
        auto partner(int v) const -> std::optional<int>
        {
            for (int u = 0; u < tree().vertex_count(); ++u)
                if (u != v && image[static_cast<std::size_t>(u)] == image[static_cast<std::size_t>(v)])
                    return u;
            return std::nullopt;
        }
    };

    inline auto compose_quasi_embedding(const Split & split, const RainbowEmbedding & emb, const StarForestImage & f1,
        const ColorSet & colors) -> QuasiEmbedding
    {
        auto p = emb.p;
        const auto & tree = split.tree;
        auto n = tree.vertex_count();
        require(f1.center_image.size() == split.forest.stars.size(), ErrorCode::InvalidArgument, "star count mismatch");

        QuasiEmbedding h{p, split, colors, std::vector<int>(static_cast<std::size_t>(n), -1),
            std::vector<int>(static_cast<std::size_t>(n), 0), {}, std::nullopt};
        for (int c = 0; c < split.t0.vertex_count(); ++c) {
            auto v = split.t0_to_tree[static_cast<std::size_t>(c)];
            h.image[static_cast<std::size_t>(v)] = emb.image[static_cast<std::size_t>(c)];
            h.arc_color[static_cast<std::size_t>(v)] = emb.arc_color[static_cast<std::size_t>(c)];
        }

        std::vector<char> seen_color(static_cast<std::size_t>(p), 0);
        for (auto s : emb.s0.elements())
            seen_color[static_cast<std::size_t>(s)] = 1;
        std::size_t flat = 0;
        for (std::size_t s = 0; s < split.forest.stars.size(); ++s) {
            const auto & star = split.forest.stars[s];
            require(f1.center_image[s] == h.image[static_cast<std::size_t>(star.center)], ErrorCode::InvalidArgument,
                "star center image disagrees with the tree embedding");
            for (auto leaf : star.leaves) {
                auto color = f1.leaf_color[flat];
                require(! seen_color[static_cast<std::size_t>(color)], ErrorCode::InvalidArgument,
                    "color " + std::to_string(color) + " used twice");
                seen_color[static_cast<std::size_t>(color)] = 1;
                h.image[static_cast<std::size_t>(leaf)] = f1.leaf_image[flat];
                h.arc_color[static_cast<std::size_t>(leaf)] = color;
                ++flat;
            }
        }
        for (int v = 0; v < n; ++v)
            if (v != tree.root())
                require(colors.contains(h.arc_color[static_cast<std::size_t>(v)]), ErrorCode::InvalidArgument,
                    "arc color outside S");

        std::vector<int> t0_at(static_cast<std::size_t>(p), -1);
        for (auto v : split.t0_to_tree)
            t0_at[static_cast<std::size_t>(h.image[static_cast<std::size_t>(v)])] = v;
        for (const auto & star : split.forest.stars)
            for (auto leaf : star.leaves) {
                auto y = h.image[static_cast<std::size_t>(leaf)];
                auto w = t0_at[static_cast<std::size_t>(y)];
                if (w < 0)
                    continue;
                if (w == tree.root()) {
                    h.root_hit = leaf;
                    continue;
                }
                auto parent = tree.parent(w);
                h.conflicts.push_back({y, h.image[static_cast<std::size_t>(parent)],
                    h.image[static_cast<std::size_t>(star.center)], w, parent, leaf, star.center});
            }
        std::sort(h.conflicts.begin(), h.conflicts.end(), [&](const Conflict & c1, const Conflict & c2) {
            return tree.depth(c1.w) != tree.depth(c2.w) ? tree.depth(c1.w) < tree.depth(c2.w)
                : std::find(tree.bfs_order().begin(), tree.bfs_order().end(), c1.w)
                    < std::find(tree.bfs_order().begin(), tree.bfs_order().end(), c2.w);
        });
        return h;
    }
}
