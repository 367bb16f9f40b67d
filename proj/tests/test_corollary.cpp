#include "ringel/certificate.hpp"
#include "ringel/corollary.hpp"
#include "ringel/sampling.hpp"
#include "ringel/tree_families.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace ringel;

namespace
{
    auto sampled_tree(int m, std::uint64_t seed) -> Tree
    {
        while (true) {
            auto t = sample_unlabeled_tree(m, seed++);
            if (leaf_count(t) >= forest_leaf_target(m))
                return t;
        }
    }

    /// Independent edge count for K_{rp+t} minus a t-clique: every pair not
    /// inside the apex set, and for the near-complete target also not the
    /// alpha-beta pair, appears exactly once.
    auto covers_once(const Decomposition & d, long expected_edges) -> bool
    {
        std::map<std::pair<Vertex, Vertex>, int> seen;
        for (const auto & c : d.copies)
            for (const auto & a : c.arcs) {
                if (a.tail.kind == Vertex::Kind::Apex && a.head.kind == Vertex::Kind::Apex)
                    return false;
                if (a.tail.kind == Vertex::Kind::Product && a.head.kind == Vertex::Kind::Product
                    && a.tail.a == a.head.a && a.tail.b == a.head.b)
                    return false;
                if (++seen[make_edge(a.tail, a.head)] > 1)
                    return false;
            }
        return static_cast<long>(seen.size()) == expected_edges;
    }
}

TEST(Tournament, CirculantIsRegular)
{
    for (int r : {3, 5, 7, 9}) {
        auto t = regular_tournament(r);
        EXPECT_TRUE(t.is_regular());
        EXPECT_EQ(static_cast<int>(t.arcs.size()), r * (r - 1) / 2);
    }
    EXPECT_THROW(regular_tournament(4), Error);
    EXPECT_THROW(regular_tournament(1), Error);
}

TEST(Tournament, RelabelingsAreDistinctAndRegular)
{
    // Labeled regular tournaments on 3 vertices: the two directed triangles.
    EXPECT_EQ(tournament_relabelings(3).size(), 2U);
    // On 5 vertices the circulant has automorphism group Z_5, giving 5!/5 = 24 relabelings.
    auto five = tournament_relabelings(5);
    EXPECT_EQ(five.size(), 24U);
    std::set<std::vector<Arc<int>>> distinct;
    for (const auto & t : five) {
        EXPECT_TRUE(t.is_regular());
        distinct.insert(t.arcs);
    }
    EXPECT_EQ(distinct.size(), five.size());
    EXPECT_EQ(tournament_relabelings(7, 100).size(), 100U);
}

TEST(LeafAssignment, PerfectMatchingPerLayer)
{
    // r = 3, two apexes: each layer has three copies and slots {alpha, beta, a+1}.
    std::vector<std::vector<int>> rows{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
    std::vector<int> blocked(9, -1);
    blocked[0] = 1;  // copy 0 already owns layer 1 next to its y image
    auto found = leaf_assignment_search(rows, blocked, tournament_relabelings(3), 2);
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(found->tournament_index, 0U);
    std::map<int, std::multiset<ExtraArc>> per_layer;
    for (int a = 0; a < 3; ++a)
        for (auto label : rows[static_cast<std::size_t>(a)]) {
            const auto & e = found->extra[static_cast<std::size_t>(label)];
            per_layer[a].insert(e);
            if (! e.apex) {
                EXPECT_TRUE(found->tournament.has_arc(a, e.index));
                EXPECT_NE(e.index, blocked[static_cast<std::size_t>(label)]);
            }
        }
    for (const auto & [a, slots] : per_layer)
        EXPECT_EQ(std::set<ExtraArc>(slots.begin(), slots.end()).size(), 3U);
}

TEST(LeafAssignment, FallsBackToReverseTournament)
{
    // Every layer-0 copy already owns layer 1, so the circulant's 0 -> 1 is unusable.
    std::vector<std::vector<int>> rows{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
    std::vector<int> blocked{1, 1, 1, -1, -1, -1, -1, -1, -1};
    auto found = leaf_assignment_search(rows, blocked, tournament_relabelings(3), 2);
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(found->tournament_index, 1U);
    EXPECT_TRUE(found->tournament.has_arc(0, 2));
}

TEST(LeafAssignment, ReportsImpossible)
{
    // Layer 0 blocks 0 -> 1 and layer 1 blocks 1 -> 0: neither triangle fits.
    std::vector<std::vector<int>> rows{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
    std::vector<int> blocked{1, 1, 1, 0, 0, 0, -1, -1, -1};
    auto tours = tournament_relabelings(3);
    EXPECT_FALSE(leaf_assignment_search(rows, blocked, tours, 2).has_value());
    std::vector<std::vector<int>> wrong_size{{0, 1}, {3, 4, 5, 2}, {6, 7, 8}};
    EXPECT_THROW(leaf_assignment_search(wrong_size, blocked, tours, 2), Error);
}

TEST(LeafDeletion, ChoosesLeafPreservingMostLeaves)
{
    // Center 0 with leaves 1, 2 and a leg 0 - 3 - 4. Deleting 4 turns 3 into a
    // leaf (3 leaves remain); deleting 1 or 2 leaves only 2.
    Tree tree(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}}, 0);
    EXPECT_EQ(choose_deleted_leaf(tree), 4);
    auto deletion = delete_leaf(tree, 4);
    EXPECT_EQ(deletion.y, 3);
    EXPECT_EQ(leaf_count(deletion.reduced), 3);

    // Ties go to the smallest id, and ids above z shift down.
    auto star = families::star(4);
    EXPECT_EQ(choose_deleted_leaf(star), 1);
    auto shifted = delete_leaf(Tree(4, {{1, 0}, {1, 2}, {1, 3}}, 1), 0);
    EXPECT_EQ(shifted.y, 0);
    EXPECT_EQ(shifted.reduced.degree(0), 2);
    EXPECT_THROW(delete_leaf(tree, 0), Error);
}

TEST(MatchingComplement, ExampleAndNoMatchingEdges)
{
    auto d = decompose_matching_complement(families::broom(2, 3), 11, 3);
    EXPECT_EQ(d.copies.size(), 44U);
    EXPECT_EQ(d.edge_count(), 220);
    for (const auto & c : d.copies)
        for (const auto & a : c.arcs) {
            EXPECT_EQ(a.tail.kind, Vertex::Kind::Plain);
            EXPECT_NE(a.tail.a / 2, a.head.a / 2);
        }
    // K_22 minus a perfect matching has 231 - 11 = 220 edges.
    EXPECT_TRUE(covers_once(d, 220));
    EXPECT_TRUE(verify_decomposition(d).pass);
}

TEST(NearComplete, ExampleAndMissingEdge)
{
    auto tree = sampled_tree(6, 4);
    auto d = decompose_near_complete(tree, 11, 4);
    EXPECT_EQ(d.copies.size(), 99U);
    EXPECT_EQ(d.edge_count(), 594);
    // K_35 has 595 edges; only alpha-beta is absent.
    EXPECT_TRUE(covers_once(d, 594));
    EXPECT_TRUE(verify_decomposition(d).pass);
}

TEST(NearComplete, ManyTreesAndSeeds)
{
    for (int p : {11, 13, 17})
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto m = (p - 1) / 2;
            auto d = decompose_near_complete(sampled_tree(m + 1, seed * 13 + static_cast<std::uint64_t>(p)), p, seed);
            auto report = verify_decomposition(d);
            ASSERT_TRUE(report.pass) << report.counterexample;
            EXPECT_EQ(d.edge_count(), 9L * p * (m + 1));
        }
}

TEST(CliqueComplement, FiveLayers)
{
    auto d = decompose_clique_complement(sampled_tree(6, 9), 11, 5, 2);
    EXPECT_EQ(d.copies.size(), 275U);
    EXPECT_EQ(d.edge_count(), 1650);
    // K_58 minus K_3: 1653 - 3.
    EXPECT_TRUE(covers_once(d, 1650));
    EXPECT_TRUE(verify_decomposition(d).pass);
}

TEST(CliqueComplement, InputErrors)
{
    auto tree = sampled_tree(6, 4);
    EXPECT_THROW(decompose_clique_complement(tree, 11, 4, 1), Error);
    EXPECT_THROW(decompose_clique_complement(tree, 11, 1, 1), Error);
    EXPECT_THROW(decompose_near_complete(families::star(5), 11, 1), Error);
    EXPECT_THROW(decompose_near_complete(tree, 15, 1), Error);
}
