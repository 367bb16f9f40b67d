#pragma once

#include "ringel/cayley.hpp"
#include "ringel/decomposition.hpp"
#include "ringel/error.hpp"
#include "ringel/group.hpp"
#include "ringel/matching.hpp"
#include "ringel/rainbow.hpp"
#include "ringel/seed.hpp"
#include "ringel/split.hpp"
#include "ringel/target.hpp"
#include "ringel/tree.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace ringel
{
    /// The r^2 lifts of H into Z_p x Z_r, stored as a layer table: copy `index`
    /// sends tree vertex v to (image[v], layer[index][v]). Index i + r*j is the
    /// lift with parameters (i, j) and carries label (i+1) + r*j.
    struct LabeledCopyFamily
    {
        int p = 0;
        int r = 0;
        Tree tree;
        std::vector<int> image;
        std::vector<std::vector<int>> layer;

        auto size() const -> int { return r * r; }

        static auto label_of(int i, int j, int r) -> int { return (i + 1) + r * j; }

        auto layer_of(int index, int v) const -> int
        {
            return layer[static_cast<std::size_t>(index)][static_cast<std::size_t>(v)];
        }

        auto vertex(int index, int v) const -> ProductVertex
        {
            return {image[static_cast<std::size_t>(v)], layer_of(index, v)};
        }

        /// Arcs of one copy, parent to child, in breadth-first order of the tree.
        auto arcs(int index) const -> std::vector<Arc<ProductVertex>>
        {
            std::vector<Arc<ProductVertex>> result;
            for (auto v : tree.bfs_order())
                if (v != tree.root())
                    result.push_back({vertex(index, tree.parent(v)), vertex(index, v)});
            return result;
        }

        /// The blown-up arc of parent(v) -> v is covered once: index -> (layer of
        /// parent, layer of v) is a bijection onto Z_r x Z_r.
        auto arc_is_consistent(int v) const -> bool
        {
            auto u = tree.parent(v);
            std::vector<char> seen(static_cast<std::size_t>(r * r), 0);
            for (int index = 0; index < size(); ++index) {
                auto key = static_cast<std::size_t>(layer_of(index, u) * r + layer_of(index, v));
                if (seen[key])
                    return false;
                seen[key] = 1;
            }
            return true;
        }

        auto is_consistent() const -> bool
        {
            for (int v = 0; v < tree.vertex_count(); ++v)
                if (v != tree.root() && ! arc_is_consistent(v))
                    return false;
            return true;
        }

        /// Copy `index` is a tree isomorphic to T iff its vertex map is injective.
        auto copy_is_tree(int index) const -> bool
        {
            std::set<ProductVertex> seen;
            for (int v = 0; v < tree.vertex_count(); ++v)
                if (! seen.insert(vertex(index, v)).second)
                    return false;
            return true;
        }
    };

    inline auto initial_family(const QuasiEmbedding & h, int r) -> LabeledCopyFamily
    {
        require(r >= 1, ErrorCode::InvalidArgument, "r must be positive");
        const auto & tree = h.tree();
        LabeledCopyFamily family{h.p, r, tree, h.image, {}};
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i) {
                std::vector<int> layers(static_cast<std::size_t>(tree.vertex_count()));
                for (int v = 0; v < tree.vertex_count(); ++v)
                    layers[static_cast<std::size_t>(v)] = mod(i + j * tree.depth(v), r);
                family.layer.push_back(std::move(layers));
            }
        return family;
    }

    /// f_ij(H): the root goes to (0, i) and an arc of color s is lifted to color
    /// (s, j). Arcs are listed parent to child in breadth-first order.
    inline auto lift_copy(const QuasiEmbedding & h, int i, int j, int r) -> std::vector<Arc<ProductVertex>>
    {
        require(i >= 0 && i < r && j >= 0 && j < r, ErrorCode::InvalidArgument, "lift parameters out of range");
        const auto & tree = h.tree();
        std::vector<ProductVertex> at(static_cast<std::size_t>(tree.vertex_count()));
        std::vector<Arc<ProductVertex>> result;
        at[static_cast<std::size_t>(tree.root())] = {h.image[static_cast<std::size_t>(tree.root())], i};
        for (auto v : tree.bfs_order()) {
            if (v == tree.root())
                continue;
            auto from = at[static_cast<std::size_t>(tree.parent(v))];
            auto s = h.arc_color[static_cast<std::size_t>(v)];
            ProductVertex to{mod(from.x + s, h.p), mod(from.layer + j, r)};
            at[static_cast<std::size_t>(v)] = to;
            result.push_back({from, to});
        }
        return result;
    }

    /// Labels on the two in-arcs of a conflicted vertex y. Row b holds copies
    /// placing y at layer b; column a of mx holds copies placing the tree parent
    /// at layer a, and column c of mz those placing the star center at layer c.
    struct ConflictMatrixPair
    {
        int r = 0;
        Conflict conflict;
        std::vector<std::vector<int>> mx;
        std::vector<std::vector<int>> mz;

        friend auto operator==(const ConflictMatrixPair &, const ConflictMatrixPair &) -> bool = default;
    };

    namespace detail
    {
        inline void check_label_matrix(const std::vector<std::vector<int>> & m, int r, const char * name)
        {
            require(static_cast<int>(m.size()) == r, ErrorCode::InconsistentFamily, std::string(name) + " has wrong row count");
            std::vector<char> seen(static_cast<std::size_t>(r * r + 1), 0);
            for (const auto & row : m) {
                require(static_cast<int>(row.size()) == r, ErrorCode::InconsistentFamily,
                    std::string(name) + " has wrong column count");
                for (auto label : row) {
                    require(label >= 1 && label <= r * r && ! seen[static_cast<std::size_t>(label)],
                        ErrorCode::InconsistentFamily, std::string(name) + " must hold every label exactly once");
                    seen[static_cast<std::size_t>(label)] = 1;
                }
            }
        }
    }

    /// Every row of (mx | mz) has 2r distinct entries.
    inline auto rows_are_distinct(const ConflictMatrixPair & m) -> bool
    {
        for (int b = 0; b < m.r; ++b) {
            std::set<int> row(m.mx[static_cast<std::size_t>(b)].begin(), m.mx[static_cast<std::size_t>(b)].end());
            row.insert(m.mz[static_cast<std::size_t>(b)].begin(), m.mz[static_cast<std::size_t>(b)].end());
            if (static_cast<int>(row.size()) != 2 * m.r)
                return false;
        }
        return true;
    }

    /// Each column of `after` is a permutation of the same column of `before`.
    inline auto columns_preserved(const std::vector<std::vector<int>> & before, const std::vector<std::vector<int>> & after)
        -> bool
    {
        if (before.size() != after.size())
            return false;
        auto r = before.size();
        for (std::size_t a = 0; a < r; ++a) {
            std::vector<int> x, y;
            for (std::size_t b = 0; b < r; ++b) {
                x.push_back(before[b][a]);
                y.push_back(after[b][a]);
            }
            std::sort(x.begin(), x.end());
            std::sort(y.begin(), y.end());
            if (x != y)
                return false;
        }
        return true;
    }

    inline auto conflict_matrices(const LabeledCopyFamily & family, const Conflict & c) -> ConflictMatrixPair
    {
        const auto & tree = family.tree;
        auto img = [&](int v) { return family.image[static_cast<std::size_t>(v)]; };
        require(img(c.w) == c.y && img(c.leaf) == c.y && tree.parent(c.w) == c.parent && tree.parent(c.leaf) == c.center
                && c.w != c.leaf,
            ErrorCode::InvalidArgument, "vertex " + std::to_string(c.y) + " does not have in-degree 2");
        auto r = family.r;
        ConflictMatrixPair m{r, c, std::vector<std::vector<int>>(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0)),
            std::vector<std::vector<int>>(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0))};
        for (int index = 0; index < family.size(); ++index) {
            auto & cx = m.mx[static_cast<std::size_t>(family.layer_of(index, c.w))][static_cast<std::size_t>(family.layer_of(index, c.parent))];
            auto & cz = m.mz[static_cast<std::size_t>(family.layer_of(index, c.leaf))][static_cast<std::size_t>(family.layer_of(index, c.center))];
            require(cx == 0 && cz == 0, ErrorCode::InconsistentFamily,
                "two copies share a blown-up arc into " + std::to_string(c.y));
            cx = index + 1;
            cz = index + 1;
        }
        return m;
    }

    /// Permute entries within columns so that no row of (mx | mz) repeats a
    /// label. Each label joins its mx column to its mz column; this r-regular
    /// bipartite multigraph splits into r perfect matchings P_0..P_{r-1}, and
    /// labels of P_k move to row k of mx and row k+1 of mz.
    inline auto hall_repair(const ConflictMatrixPair & m) -> ConflictMatrixPair
    {
        auto r = m.r;
        require(r >= 2, ErrorCode::InvalidArgument, "repair needs r >= 2");
        detail::check_label_matrix(m.mx, r, "M_x");
        detail::check_label_matrix(m.mz, r, "M_z");
        if (rows_are_distinct(m))
            return m;

        auto labels = r * r;
        std::vector<int> col_x(static_cast<std::size_t>(labels + 1)), col_z(static_cast<std::size_t>(labels + 1));
        for (int b = 0; b < r; ++b)
            for (int a = 0; a < r; ++a) {
                col_x[static_cast<std::size_t>(m.mx[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])] = a;
                col_z[static_cast<std::size_t>(m.mz[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])] = a;
            }

        ConflictMatrixPair out = m;
        std::vector<char> used(static_cast<std::size_t>(labels + 1), 0);
        for (int k = 0; k < r; ++k) {
            BipartiteMatcher matcher(r, r);
            for (int a = 0; a < r; ++a) {
                std::vector<char> offered(static_cast<std::size_t>(r), 0);
                for (int label = 1; label <= labels; ++label)
                    if (! used[static_cast<std::size_t>(label)] && col_x[static_cast<std::size_t>(label)] == a
                        && ! offered[static_cast<std::size_t>(col_z[static_cast<std::size_t>(label)])]) {
                        offered[static_cast<std::size_t>(col_z[static_cast<std::size_t>(label)])] = 1;
                        matcher.add_candidate(a, col_z[static_cast<std::size_t>(label)]);
                    }
            }
            auto match = matcher.solve();
            require(matcher.is_perfect(match), ErrorCode::InconsistentFamily, "label multigraph is not regular");
            for (int a = 0; a < r; ++a) {
                auto c = match[static_cast<std::size_t>(a)];
                int chosen = 0;
                for (int label = 1; label <= labels && chosen == 0; ++label)
                    if (! used[static_cast<std::size_t>(label)] && col_x[static_cast<std::size_t>(label)] == a
                        && col_z[static_cast<std::size_t>(label)] == c)
                        chosen = label;
                used[static_cast<std::size_t>(chosen)] = 1;
                out.mx[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] = chosen;
                out.mz[static_cast<std::size_t>((k + 1) % r)][static_cast<std::size_t>(c)] = chosen;
            }
        }
        return out;
    }

    struct ReassignOutcome
    {
        LabeledCopyFamily family;
        /// False if keeping every child's layer leaves some out-arc of y doubly
        /// covered; `family` is then only valid on the in-arcs.
        bool bijective = true;
        int failing_child = -1;
    };

    /// Move each copy's image of w and of the colliding leaf to the rows chosen
    /// by the repair. Arcs leaving w keep their destination layer, so only their
    /// source moves; the outcome records whether they still form a bijection.
    inline auto reassign_outgoing(LabeledCopyFamily family, const ConflictMatrixPair & repaired) -> ReassignOutcome
    {
        const auto & c = repaired.conflict;
        auto r = family.r;
        detail::check_label_matrix(repaired.mx, r, "M_x");
        detail::check_label_matrix(repaired.mz, r, "M_z");
        for (int b = 0; b < r; ++b)
            for (int a = 0; a < r; ++a) {
                auto lx = repaired.mx[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] - 1;
                auto lz = repaired.mz[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] - 1;
                require(family.layer_of(lx, c.parent) == a && family.layer_of(lz, c.center) == a,
                    ErrorCode::InconsistentFamily, "label missing at " + std::to_string(c.y));
                family.layer[static_cast<std::size_t>(lx)][static_cast<std::size_t>(c.w)] = b;
                family.layer[static_cast<std::size_t>(lz)][static_cast<std::size_t>(c.leaf)] = b;
            }
        ReassignOutcome outcome{std::move(family), true, -1};
        for (auto child : outcome.family.tree.children(c.w))
            if (! outcome.family.arc_is_consistent(child)) {
                outcome.bijective = false;
                outcome.failing_child = child;
                break;
            }
        return outcome;
    }

    namespace detail
    {
        /// Backtracking over new layers of w (one per copy) such that every arc
        /// at w stays a bijection, followed by a matching for the leaf layers
        /// that avoids w's layer copy by copy. Only w and the leaf change.
        class CollisionSearch
        {
        public:
            CollisionSearch(const LabeledCopyFamily & family, int w, int leaf, std::uint64_t seed, long node_limit) :
                _family(family),
                _w(w),
                _leaf(leaf),
                _center(family.tree.parent(leaf)),
                _r(family.r),
                _n(family.size()),
                _node_limit(node_limit)
            {
                const auto & tree = family.tree;
                _has_parent = w != tree.root();
                for (auto child : tree.children(w))
                    _children.push_back(child);
                _used_parent.assign(static_cast<std::size_t>(_r * _r), 0);
                _used_child.assign(_children.size(), std::vector<char>(static_cast<std::size_t>(_r * _r), 0));
                _z_count.assign(static_cast<std::size_t>(_r * _r), 0);
                _row_count.assign(static_cast<std::size_t>(_r), 0);
                _rows.assign(static_cast<std::size_t>(_n), -1);
                for (int index = 0; index < _n; ++index)
                    _order.push_back(shuffled_range(0, _r, derive_seed(seed, Stage::Repair, static_cast<std::uint64_t>(index))));
            }

            auto run() -> std::optional<LabeledCopyFamily>
            {
                if (! descend(0))
                    return std::nullopt;
                return _result;
            }

            auto nodes() const -> long { return _nodes; }

        private:
            auto key(int index, int v, int row) const -> std::size_t
            {
                return static_cast<std::size_t>(_family.layer_of(index, v) * _r + row);
            }

            auto allowed(int index, int row) const -> bool
            {
                if (_has_parent && _used_parent[key(index, _family.tree.parent(_w), row)])
                    return false;
                for (std::size_t c = 0; c < _children.size(); ++c)
                    if (_used_child[c][key(index, _children[c], row)])
                        return false;
                // All r copies of one center column on the same row leave the
                // leaf no free layer in that column.
                if (_z_count[key(index, _center, row)] + 1 >= _r && _r > 1)
                    return false;
                return _row_count[static_cast<std::size_t>(row)] < _r;
            }

            void place(int index, int row, int delta)
            {
                if (_has_parent)
                    _used_parent[key(index, _family.tree.parent(_w), row)] = static_cast<char>(delta > 0);
                for (std::size_t c = 0; c < _children.size(); ++c)
                    _used_child[c][key(index, _children[c], row)] = static_cast<char>(delta > 0);
                _z_count[key(index, _center, row)] += delta;
                _row_count[static_cast<std::size_t>(row)] += delta;
                _rows[static_cast<std::size_t>(index)] = delta > 0 ? row : -1;
            }

            auto descend(int index) -> bool
            {
                if (index == _n)
                    return finish();
                for (auto row : _order[static_cast<std::size_t>(index)]) {
                    if (! allowed(index, row))
                        continue;
                    if (++_nodes > _node_limit)
                        return false;
                    place(index, row, +1);
                    if (descend(index + 1))
                        return true;
                    place(index, row, -1);
                    if (_nodes > _node_limit)
                        return false;
                }
                return false;
            }

            auto finish() -> bool
            {
                LabeledCopyFamily family = _family;
                for (int index = 0; index < _n; ++index)
                    family.layer[static_cast<std::size_t>(index)][static_cast<std::size_t>(_w)] = _rows[static_cast<std::size_t>(index)];
                for (int column = 0; column < _r; ++column) {
                    std::vector<int> members;
                    for (int index = 0; index < _n; ++index)
                        if (_family.layer_of(index, _center) == column)
                            members.push_back(index);
                    BipartiteMatcher matcher(static_cast<int>(members.size()), _r);
                    for (std::size_t q = 0; q < members.size(); ++q)
                        for (int row = 0; row < _r; ++row)
                            if (row != _rows[static_cast<std::size_t>(members[q])])
                                matcher.add_candidate(static_cast<int>(q), row);
                    auto match = matcher.solve();
                    if (! matcher.is_perfect(match))
                        return false;
                    for (std::size_t q = 0; q < members.size(); ++q)
                        family.layer[static_cast<std::size_t>(members[q])][static_cast<std::size_t>(_leaf)] = match[q];
                }
                _result = std::move(family);
                return true;
            }

            const LabeledCopyFamily & _family;
            int _w, _leaf, _center, _r, _n;
            long _node_limit;
            long _nodes = 0;
            bool _has_parent = false;
            std::vector<int> _children;
            std::vector<char> _used_parent;
            std::vector<std::vector<char>> _used_child;
            std::vector<int> _z_count;
            std::vector<int> _row_count;
            std::vector<int> _rows;
            std::vector<std::vector<int>> _order;
            std::optional<LabeledCopyFamily> _result;
        };
    }

    /// Constrained search for the layers of w and of the colliding leaf when the
    /// destination-preserving reassignment is not a bijection.
    inline auto search_collision_repair(const LabeledCopyFamily & family, int w, int leaf, std::uint64_t seed,
        long node_limit) -> std::optional<LabeledCopyFamily>
    {
        require(family.r >= 2, ErrorCode::InvalidArgument, "repair needs r >= 2");
        return detail::CollisionSearch(family, w, leaf, seed, node_limit).run();
    }

    struct RepairStats
    {
        int conflicts = 0;
        int already_valid = 0;
        int fallback_searches = 0;
        int root_hits = 0;
    };

    inline constexpr long default_search_nodes = 200'000;

    /// hall_repair followed by reassign_outgoing, falling back to the
    /// constrained search if the reassignment is not a bijection.
    inline auto repair_conflict(const LabeledCopyFamily & family, const Conflict & c, std::uint64_t seed,
        RepairStats & stats, long node_limit = default_search_nodes) -> LabeledCopyFamily
    {
        ++stats.conflicts;
        auto m = conflict_matrices(family, c);
        if (rows_are_distinct(m)) {
            ++stats.already_valid;
            return family;
        }
        auto outcome = reassign_outgoing(family, hall_repair(m));
        if (outcome.bijective)
            return std::move(outcome.family);
        ++stats.fallback_searches;
        auto found = search_collision_repair(family, c.w, c.leaf, seed, node_limit);
        require(found.has_value(), ErrorCode::SearchExhausted,
            "no layer assignment separates vertex " + std::to_string(c.w) + " from leaf " + std::to_string(c.leaf));
        return std::move(*found);
    }

    /// A forest leaf landing on the root image 0 shares it with the root, which
    /// has no tree parent; only the search applies.
    inline auto repair_root_hit(const LabeledCopyFamily & family, int leaf, std::uint64_t seed, RepairStats & stats,
        long node_limit = default_search_nodes) -> LabeledCopyFamily
    {
        ++stats.root_hits;
        auto root = family.tree.root();
        bool clash = false;
        for (int index = 0; index < family.size() && ! clash; ++index)
            clash = family.layer_of(index, root) == family.layer_of(index, leaf);
        if (! clash)
            return family;
        ++stats.fallback_searches;
        auto found = search_collision_repair(family, root, leaf, seed, node_limit);
        require(found.has_value(), ErrorCode::SearchExhausted, "no layer assignment separates the root from leaf "
                + std::to_string(leaf));
        return std::move(*found);
    }

    struct BlowupOptions
    {
        bool best_effort = false;
        int restarts = 32;
        int jobs = 1;
        long search_nodes = default_search_nodes;
    };

    /// Everything the corollary builders need beyond the finished copies.
    struct BlowupConstruction
    {
        QuasiEmbedding h;
        LabeledCopyFamily family;
        RepairStats stats;
        int attempt = 0;
    };

    inline void validate_blowup_input(const Tree & tree, int p, int r, bool best_effort)
    {
        require(p >= 3 && is_prime(p), ErrorCode::NotPrime, "p must be prime (got " + std::to_string(p) + ")");
        auto m = (p - 1) / 2;
        require(tree.edge_count() == m, ErrorCode::InvalidArgument,
            "tree must have m = (p-1)/2 = " + std::to_string(m) + " edges, got " + std::to_string(tree.edge_count()));
        require(m >= 2, ErrorCode::InvalidArgument, "p must be at least 5");
        require(r >= 1, ErrorCode::InvalidArgument, "r must be positive");
        if (best_effort)
            return;
        require(p > 10, ErrorCode::RegimeViolation, "p must exceed 10 (use best-effort to relax)");
        require(r >= 2, ErrorCode::RegimeViolation, "r must be at least 2 (use best-effort to allow r = 1)");
        require(leaf_count(tree) >= forest_leaf_target(m), ErrorCode::RegimeViolation,
            "tree has " + std::to_string(leaf_count(tree)) + " leaves, needs at least " + std::to_string(forest_leaf_target(m)));
    }

    namespace detail
    {
        inline auto best_effort_split(const Tree & tree, int target) -> Split
        {
            for (auto count = std::min(target, leaf_count(tree) - 1); count >= 0; --count) {
                try {
                    return strip_leaves(tree, count);
                }
                catch (const Error & e) {
                    if (e.code() != ErrorCode::RegimeViolation)
                        throw;
                }
            }
            fail(ErrorCode::RegimeViolation, "no admissible leaf split");
        }

        inline auto build_quasi_embedding(const Split & split, int p, std::uint64_t seed) -> QuasiEmbedding
        {
            auto emb = embed_tree_rainbow(split.t0, p, derive_seed(seed, Stage::TreeEmbedding));
            auto colors = complete_colors(emb.s0, seed);
            ColorSet forest_colors(p);
            for (auto s : colors.elements())
                if (! emb.s0.contains(s))
                    forest_colors.add(s);
            std::vector<int> centers;
            for (const auto & star : split.forest.stars)
                centers.push_back(emb.image[static_cast<std::size_t>(split.tree_to_t0[static_cast<std::size_t>(star.center)])]);
            // Use only as many forest colors as there are forest edges.
            ColorSet used(p);
            for (int q = 0; q < split.forest.edge_count(); ++q)
                used.add(forest_colors.elements()[static_cast<std::size_t>(q)]);
            auto f1 = embed_star_forest(split.forest, centers, used, p, derive_seed(seed, Stage::StarForest));
            return compose_quasi_embedding(split, emb, f1, colors);
        }
    }

    /// Lift, repair and check the r^2 copies of T on Z_p x Z_r. Repairs that
    /// exhaust their search restart the whole attempt from a derived seed.
    inline auto build_blowup_family(const Tree & tree, int p, int r, std::uint64_t seed, const BlowupOptions & options = {})
        -> BlowupConstruction
    {
        validate_blowup_input(tree, p, r, options.best_effort);
        auto m = (p - 1) / 2;
        auto split = options.best_effort ? detail::best_effort_split(tree, forest_leaf_target(m))
                                         : strip_leaves(tree, forest_leaf_target(m));

        std::string last_failure;
        for (int attempt = 0; attempt <= options.restarts; ++attempt) {
            auto attempt_seed = attempt == 0 ? seed : derive_seed(seed, Stage::Restart, static_cast<std::uint64_t>(attempt));
            auto h = detail::build_quasi_embedding(split, p, attempt_seed);
            auto family = initial_family(h, r);
            RepairStats stats;
            if (r == 1) {
                require(h.conflicts.empty() && ! h.root_hit, ErrorCode::SearchExhausted,
                    "r = 1 requires a conflict-free quasi-embedding, found "
                        + std::to_string(h.conflicts.size() + (h.root_hit ? 1U : 0U)) + " collisions");
            }
            else {
                try {
                    auto repair_seed = derive_seed(attempt_seed, Stage::Repair);
                    if (h.root_hit)
                        family = repair_root_hit(family, *h.root_hit, repair_seed, stats, options.search_nodes);
                    for (const auto & c : h.conflicts)
                        family = repair_conflict(family, c, derive_seed(repair_seed, Stage::Repair, static_cast<std::uint64_t>(c.w)),
                            stats, options.search_nodes);
                }
                catch (const Error & e) {
                    if (e.code() != ErrorCode::SearchExhausted)
                        throw;
                    last_failure = e.what();
                    continue;
                }
            }
            require(family.is_consistent(), ErrorCode::InconsistentFamily, "repaired copies overlap");
            for (int index = 0; index < family.size(); ++index)
                require(family.copy_is_tree(index), ErrorCode::InconsistentFamily,
                    "copy " + std::to_string(index + 1) + " is not a tree after repair");
            return {std::move(h), std::move(family), stats, attempt};
        }
        fail(ErrorCode::SearchExhausted, "repair failed after " + std::to_string(options.restarts + 1) + " attempts: " + last_failure);
    }

    /// Close the family under the translations (x, 0), x in Z_p. Copy label
    /// x * r^2 + (family label) numbers translates consecutively.
    inline auto translate_family(const LabeledCopyFamily & family, int jobs = 1) -> std::vector<Copy>
    {
        auto n = family.size();
        std::vector<Copy> copies(static_cast<std::size_t>(family.p * n));
        auto base = std::vector<std::vector<Arc<ProductVertex>>>();
        for (int index = 0; index < n; ++index)
            base.push_back(family.arcs(index));
        auto fill = [&](int x) {
            for (int index = 0; index < n; ++index) {
                auto & copy = copies[static_cast<std::size_t>(x * n + index)];
                copy.label = x * n + index + 1;
                for (const auto & a : base[static_cast<std::size_t>(index)])
                    copy.arcs.push_back({Vertex::product(mod(a.tail.x + x, family.p), a.tail.layer),
                        Vertex::product(mod(a.head.x + x, family.p), a.head.layer)});
                std::sort(copy.arcs.begin(), copy.arcs.end());
            }
        };
        jobs = std::clamp(jobs, 1, family.p);
        if (jobs == 1) {
            for (int x = 0; x < family.p; ++x)
                fill(x);
            return copies;
        }
        std::vector<std::thread> workers;
        for (int t = 0; t < jobs; ++t)
            workers.emplace_back([&, t]() {
                for (int x = t; x < family.p; x += jobs)
                    fill(x);
            });
        for (auto & w : workers)
            w.join();
        return copies;
    }

    inline void record_stats(Decomposition & d, const BlowupConstruction & c)
    {
        d.stats["attempts"] = c.attempt + 1;
        d.stats["conflicts"] = c.stats.conflicts;
        d.stats["conflicts_already_valid"] = c.stats.already_valid;
        d.stats["fallback_searches"] = c.stats.fallback_searches;
        d.stats["root_hits"] = c.stats.root_hits;
        d.stats["forest_edges"] = c.h.split.forest.edge_count();
    }

    /// Decomposition of K_p(r) into r^2 p copies of T.
    inline auto decompose_blowup(const Tree & tree, int p, int r, std::uint64_t seed, const BlowupOptions & options = {})
        -> Decomposition
    {
        auto construction = build_blowup_family(tree, p, r, seed, options);
        Decomposition d{TargetKind::BlowupComplete, p, r, tree, canonical_form(tree), translate_family(construction.family, options.jobs), seed, {}};
        record_stats(d, construction);
        return d;
    }
}
