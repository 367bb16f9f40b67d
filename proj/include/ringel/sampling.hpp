#pragma once

#include "ringel/error.hpp"
#include "ringel/seed.hpp"
#include "ringel/tree.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

namespace ringel
{
    using BigInt = boost::multiprecision::cpp_int;

    /// Uniform random labeled tree on m+1 vertices, decoded from a random
    /// Pruefer sequence of length m-1.
    inline auto sample_labeled_tree(int m, std::uint64_t seed) -> Tree
    {
        require(m >= 1, ErrorCode::InvalidArgument, "m must be at least 1");
        auto n = m + 1;
        Rng rng(seed);
        std::vector<int> code(static_cast<std::size_t>(n - 2));
        for (auto & c : code)
            c = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));

        std::vector<int> degree(static_cast<std::size_t>(n), 1);
        for (auto c : code)
            ++degree[static_cast<std::size_t>(c)];
        std::set<int> leaves;
        for (int v = 0; v < n; ++v)
            if (degree[static_cast<std::size_t>(v)] == 1)
                leaves.insert(v);
        Tree::EdgeList edges;
        for (auto c : code) {
            auto leaf = *leaves.begin();
            leaves.erase(leaves.begin());
            edges.emplace_back(leaf, c);
            if (--degree[static_cast<std::size_t>(c)] == 1)
                leaves.insert(c);
        }
        auto u = *leaves.begin();
        auto v = *std::next(leaves.begin());
        edges.emplace_back(u, v);
        return {n, std::move(edges), 0};
    }

    /// Exact counts used by the unlabeled sampler for trees on n vertices:
    /// rooted trees a(1..n), rooted forests F(0..n) and forests whose trees have
    /// at most `branch_limit` = floor((n-1)/2) vertices.
    struct FreeTreeTables
    {
        int n = 0;
        int branch_limit = 0;
        std::vector<BigInt> rooted;            ///< rooted[d] = a(d)
        std::vector<BigInt> weighted_rooted;   ///< d * a(d)
        std::vector<BigInt> forests;           ///< forests[k], unrestricted
        std::vector<BigInt> limited_forests;   ///< forests[k] with tree sizes <= branch_limit
        BigInt centroidal;                     ///< free trees with a single centroid
        BigInt bicentroidal;                   ///< free trees with two centroids

        explicit FreeTreeTables(int vertices) :
            n(vertices),
            branch_limit((vertices - 1) / 2)
        {
            auto size = static_cast<std::size_t>(n + 1);
            rooted.assign(size, 0);
            weighted_rooted.assign(size, 0);
            forests.assign(size, 0);
            forests[0] = 1;
            for (int k = 1; k <= n; ++k) {
                rooted[static_cast<std::size_t>(k)] = forests[static_cast<std::size_t>(k - 1)];
                weighted_rooted[static_cast<std::size_t>(k)] = k * rooted[static_cast<std::size_t>(k)];
                forests[static_cast<std::size_t>(k)] = forest_sum(k, k, forests) / k;
            }
            limited_forests.assign(size, 0);
            limited_forests[0] = 1;
            for (int k = 1; k <= n; ++k)
                limited_forests[static_cast<std::size_t>(k)] = forest_sum(k, branch_limit, limited_forests) / k;

            centroidal = limited_forests[static_cast<std::size_t>(n - 1)];
            if (n % 2 == 0) {
                const auto & half = rooted[static_cast<std::size_t>(n / 2)];
                bicentroidal = half * (half + 1) / 2;
            }
        }

        auto free_tree_count() const -> BigInt { return centroidal + bicentroidal; }

        /// sum over d <= limit, j >= 1, jd <= k of d a(d) table[k - jd]  (= k * table[k]).
        auto forest_sum(int k, int limit, const std::vector<BigInt> & table) const -> BigInt
        {
            BigInt total = 0;
            for (int d = 1; d <= std::min(k, limit); ++d)
                for (int j = 1; j * d <= k; ++j)
                    total += weighted_rooted[static_cast<std::size_t>(d)] * table[static_cast<std::size_t>(k - j * d)];
            return total;
        }
    };

    namespace detail
    {
        inline auto free_tree_tables(int n) -> std::shared_ptr<const FreeTreeTables>
        {
            static std::mutex lock;
            static std::map<int, std::shared_ptr<const FreeTreeTables>> cache;
            std::lock_guard guard(lock);
            auto & slot = cache[n];
            if (! slot)
                slot = std::make_shared<const FreeTreeTables>(n);
            return slot;
        }

        inline auto uniform_big(Rng & rng, const BigInt & bound) -> BigInt
        {
            auto bits = msb(bound) + 1;
            while (true) {
                BigInt x = 0;
                for (unsigned got = 0; got < bits; got += 64)
                    x = (x << 64) | BigInt(rng());
                x &= (BigInt(1) << bits) - 1;
                if (x < bound)
                    return x;
            }
        }

        /// Parent arrays with local ids; vertex 0 is the root (parent -1).
        class RootedTreeSampler
        {
        public:
            RootedTreeSampler(const FreeTreeTables & tables, Rng & rng) :
                _tables(tables),
                _rng(rng)
            {
            }

            auto rooted(int size) -> std::vector<int>
            {
                std::vector<int> parents{-1};
                forest(size - 1, size - 1, _tables.forests, parents, 0);
                return parents;
            }

            /// Append a uniform forest on `size` vertices (trees of at most
            /// `limit` vertices, counted by `table`) below `attach`.
            void forest(int size, int limit, const std::vector<BigInt> & table, std::vector<int> & parents, int attach)
            {
                while (size > 0) {
                    auto target = uniform_big(_rng, size * table[static_cast<std::size_t>(size)]);
                    int pick_d = 0, pick_j = 0;
                    for (int d = std::min(size, limit); d >= 1 && pick_d == 0; --d)
                        for (int j = 1; j * d <= size; ++j) {
                            auto w = _tables.weighted_rooted[static_cast<std::size_t>(d)]
                                * table[static_cast<std::size_t>(size - j * d)];
                            if (target < w) {
                                pick_d = d;
                                pick_j = j;
                                break;
                            }
                            target -= w;
                        }
                    auto sub = rooted(pick_d);
                    for (int copy = 0; copy < pick_j; ++copy) {
                        auto offset = static_cast<int>(parents.size());
                        for (auto p : sub)
                            parents.push_back(p < 0 ? attach : p + offset);
                    }
                    size -= pick_j * pick_d;
                }
            }

        private:
            const FreeTreeTables & _tables;
            Rng & _rng;
        };

        inline auto tree_from_parents(const std::vector<int> & parents) -> Tree
        {
            Tree::EdgeList edges;
            for (std::size_t v = 1; v < parents.size(); ++v)
                edges.emplace_back(parents[v], static_cast<int>(v));
            return {static_cast<int>(parents.size()), std::move(edges), 0};
        }
    }

    /// Uniform random tree among the isomorphism classes of free trees with m
    /// edges (centroid decomposition over exact rooted-tree counts).
    inline auto sample_unlabeled_tree(int m, std::uint64_t seed) -> Tree
    {
        require(m >= 1, ErrorCode::InvalidArgument, "m must be at least 1");
        auto n = m + 1;
        auto tables = detail::free_tree_tables(n);
        Rng rng(seed);
        detail::RootedTreeSampler sampler(*tables, rng);

        auto pick = detail::uniform_big(rng, tables->free_tree_count());
        if (pick < tables->centroidal) {
            std::vector<int> parents{-1};
            sampler.forest(n - 1, tables->branch_limit, tables->limited_forests, parents, 0);
            return detail::tree_from_parents(parents);
        }

        // Two centroids: an unordered pair (with repetition) of rooted trees on
        // n/2 vertices joined at their roots. Diagonal pairs carry weight
        // A / (A(A+1)/2); off-diagonal pairs are drawn as ordered distinct pairs.
        const auto & halves = tables->rooted[static_cast<std::size_t>(n / 2)];
        auto diagonal = detail::uniform_big(rng, halves + 1) < 2;
        auto left = sampler.rooted(n / 2);
        auto right = left;
        if (! diagonal) {
            auto left_code = detail::encode_rooted(detail::tree_from_parents(left), 0);
            do
                right = sampler.rooted(n / 2);
            while (detail::encode_rooted(detail::tree_from_parents(right), 0) == left_code);
        }
        auto parents = left;
        auto offset = static_cast<int>(parents.size());
        for (auto p : right)
            parents.push_back(p < 0 ? 0 : p + offset);
        return detail::tree_from_parents(parents);
    }
}
